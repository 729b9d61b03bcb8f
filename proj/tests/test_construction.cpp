#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "core/construction.hpp"
#include "core/lll.hpp"

using namespace qmv;

namespace {

word V(std::initializer_list<int> elems) {
  word w = 0;
  for (int e : elems) w |= word{1} << (e - 1);
  return w;
}

LayerFamily random_family(std::mt19937_64& rng, unsigned n, unsigned k) {
  std::vector<word> members;
  for (word m : enumerate_layer(n, k).members)
    if (rng() & 1) members.push_back(m);
  return make_layer_family(n, k, std::move(members));
}

LayerFamily full_layer(unsigned n, unsigned k) { return enumerate_layer(n, k); }

}  // namespace

TEST_CASE("property (3): stated cases") {
  // k < g: no (A,B) pair exists, any family passes
  CHECK(check_property_are(full_layer(6, 1), 3).holds);
  CHECK(check_property_are(make_layer_family(6, 1, {}), 3).holds);

  // the single block of n=6,k=3 is fully covered by the full layer
  PropertyCheck full = check_property_are(full_layer(6, 3), 3);
  CHECK_FALSE(full.holds);
  REQUIRE(full.violation.has_value());
  CHECK(full.violation->a == 0);
  CHECK(full.violation->b == full_mask(6));

  // removing any single set leaves an escape for the unique block
  LayerFamily almost = full_layer(6, 3);
  almost.members.erase(almost.members.begin() + 7);
  CHECK(check_property_are(almost, 3).holds);

  // n=7: every block (A={}, |B|=6) keeps a 3-set avoiding element 1
  std::vector<word> with1;
  for (word m : enumerate_layer(7, 3).members)
    if (m & 1) with1.push_back(m);
  CHECK(check_property_are(make_layer_family(7, 3, std::move(with1)), 3).holds);

  CHECK_THROWS_AS(check_property_are(full_layer(6, 3), 2), Error);
}

TEST_CASE("property (2): stated cases and the exhaustive mode") {
  CHECK(check_property_era(make_layer_family(6, 3, {}), 3, EraMode::Exhaustive).holds);

  PropertyCheck full = check_property_era(full_layer(6, 3), 3, EraMode::Exhaustive);
  CHECK_FALSE(full.holds);
  REQUIRE(full.violation.has_value());
  CHECK(full.violation->a == 0);
  CHECK(full.violation->b == full_mask(6));

  LayerFamily almost = full_layer(6, 3);
  almost.members.pop_back();
  CHECK(check_property_era(almost, 3, EraMode::Exhaustive).holds);
  CHECK(check_property_era(almost, 3, EraMode::ViaAre).holds);

  CHECK_THROWS_AS(check_property_era(full_layer(6, 3), 2), Error);
  LayerFamily big{15, 7, {}};
  CHECK_THROWS_AS(check_property_era(big, 3, EraMode::Exhaustive), Error);  // budget
}

TEST_CASE("properties (2) and (3) agree (randomized, several n and k)") {
  std::mt19937_64 rng(51);
  for (unsigned n = 6; n <= 8; ++n)
    for (unsigned k = 3; k + 3 <= n; ++k)
      for (int t = 0; t < 150; ++t) {
        LayerFamily fam = random_family(rng, n, k);
        PropertyCheck are = check_property_are(fam, 3);
        PropertyCheck era = check_property_era(fam, 3, EraMode::Exhaustive);
        CHECK(are.holds == era.holds);
      }
}

TEST_CASE("both classes satisfy (3) iff no block is monochromatic") {
  // exhaustive at n=6, k=3 (single block = the whole layer)
  LayerFamily layer = enumerate_layer(6, 3);
  for (std::uint32_t mask = 0;; ++mask) {
    std::vector<word> c1, c2;
    for (unsigned i = 0; i < 20; ++i)
      (mask & (1u << i) ? c1 : c2).push_back(layer.members[i]);
    bool both_pass = check_property_are(LayerFamily{6, 3, c1}, 3).holds &&
                     check_property_are(LayerFamily{6, 3, c2}, 3).holds;
    bool no_mono_block = mask != 0 && mask != (1u << 20) - 1;
    CHECK(both_pass == no_mono_block);
    if (mask == (1u << 20) - 1) break;
  }

  // randomized at n=7, k=3 (seven blocks)
  std::mt19937_64 rng(73);
  std::vector<Block> blocks = enumerate_blocks(7, 3, 3);
  LayerFamily layer7 = enumerate_layer(7, 3);
  for (int t = 0; t < 3000; ++t) {
    std::vector<std::uint8_t> colors(layer7.members.size());
    for (auto& c : colors) c = static_cast<std::uint8_t>(1 + (rng() & 1));
    bool any_mono = false;
    for (const Block& b : blocks) {
      LayerFamily mid = interval_middle_sets(VertexSet{b.a, 7}, VertexSet{b.b, 7}, 3);
      std::uint8_t first = colors[colex_rank(mid.members[0])];
      bool mono = true;
      for (word m : mid.members)
        if (colors[colex_rank(m)] != first) {
          mono = false;
          break;
        }
      if (mono) {
        any_mono = true;
        break;
      }
    }
    bool both_pass = true;
    for (unsigned i = 1; i <= 2 && both_pass; ++i) {
      std::vector<word> cls;
      for (std::size_t r = 0; r < colors.size(); ++r)
        if (colors[r] == i) cls.push_back(layer7.members[r]);
      both_pass = check_property_are(LayerFamily{7, 3, cls}, 3).holds;
    }
    CHECK(both_pass == !any_mono);
  }
}

TEST_CASE("block counting matches the closed form") {
  for (unsigned n = 6; n <= 10; ++n)
    for (unsigned k = 3; k + 3 <= n; ++k) {
      PropertyCheck chk = check_property_are(make_layer_family(n, k, {}), 3);
      CHECK(chk.pairs_checked == binomial(n, k - 3) * binomial(n - (k - 3), 6));
    }
}

TEST_CASE("assemble_lambda_union: stated cases") {
  // single family at one layer
  std::mt19937_64 rng(57);
  LayerFamily f7 = random_family(rng, 8, 7);
  std::map<unsigned, LayerFamily> single{{7u, f7}};
  CHECK(assemble_lambda_union(single, 3, 1) == f7.members);

  // empty map
  CHECK(assemble_lambda_union({}, 3, 2).empty());

  // residue mismatch
  std::map<unsigned, LayerFamily> wrong{{2u, random_family(rng, 8, 2)}};
  CHECK_THROWS_AS(assemble_lambda_union(wrong, 3, 1), Error);

  // property (2) violated at a middle layer
  std::map<unsigned, LayerFamily> bad{{4u, full_layer(8, 4)}};
  CHECK_THROWS_AS(assemble_lambda_union(bad, 3, 1), Error);

  // n=8, lambda=1, layers {1,4,7}: resampled middle layer, random boundary
  for (int t = 0; t < 10; ++t) {
    MtResult mt = moser_tardos_layer_coloring(8, 4, 3, rng());
    std::vector<word> class1;
    for (std::size_t r = 0; r < mt.coloring.colors.size(); ++r)
      if (mt.coloring.colors[r] == 1) class1.push_back(colex_unrank(r, 4));
    std::map<unsigned, LayerFamily> fams;
    fams.emplace(1u, random_family(rng, 8, 1));
    fams.emplace(4u, make_layer_family(8, 4, std::move(class1)));
    fams.emplace(7u, random_family(rng, 8, 7));
    std::vector<word> m = assemble_lambda_union(fams, 3, 1);
    CHECK(is_mutual_visibility_set(8, m).is_mutual_visibility);
  }
}

TEST_CASE("assemble_cube_coloring: stated cases") {
  // n=2, g=3, q=1: one class per residue, each class a single layer
  std::map<unsigned, LayerColoring> layers;
  for (unsigned k = 0; k <= 2; ++k)
    layers.emplace(k, make_layer_coloring(2, k, 1,
                                          std::vector<std::uint8_t>(binomial(2, k), 1)));
  CubeColoring q2 = assemble_cube_coloring(layers, 3);
  CHECK(q2.class_ids_used() == std::vector<unsigned>{1, 2, 3});
  CHECK(q2.class_of(0) == 1);
  CHECK(q2.class_of(V({1})) == 2);
  CHECK(q2.class_of(V({2})) == 2);
  CHECK(q2.class_of(V({1, 2})) == 3);
  ColoringCheck verified = verify_cube_coloring(q2);
  CHECK(verified.ok);

  // missing layer
  layers.erase(1);
  CHECK_THROWS_AS(assemble_cube_coloring(layers, 3), Error);

  // a middle-layer class violating (3) is rejected: all of layer 3 in class 1
  std::map<unsigned, LayerColoring> bad;
  for (unsigned k = 0; k <= 6; ++k) {
    std::vector<std::uint8_t> colors(binomial(6, k), 1);
    if (k == 6) colors.front() = 2;  // keep q=2 plausible elsewhere
    bad.emplace(k, make_layer_coloring(6, k, 2, std::move(colors)));
  }
  CHECK_THROWS_AS(assemble_cube_coloring(bad, 3), Error);
}

TEST_CASE("boundary layers colored with one class are accepted") {
  // n=6, g=3: only middle layer is k=3; boundary layers all single-class
  std::map<unsigned, LayerColoring> layers;
  for (unsigned k = 0; k <= 6; ++k) {
    if (k == 3) {
      MtResult mt = moser_tardos_layer_coloring(6, 3, 3, 5);
      layers.emplace(k, mt.coloring);
    } else {
      layers.emplace(k, make_layer_coloring(6, k, 2,
                                            std::vector<std::uint8_t>(binomial(6, k), 1)));
    }
  }
  CubeColoring c = assemble_cube_coloring(layers, 3);
  CHECK(c.class_ids_used().size() <= 6);
  CHECK(verify_cube_coloring(c).ok);
}

TEST_CASE("verify_cube_coloring: the 1-class coloring of Q_2 fails on the diagonal") {
  CubeColoring one{2, 1, 1, {1, 1, 1, 1}};
  ColoringCheck chk = verify_cube_coloring(one);
  CHECK_FALSE(chk.ok);
  REQUIRE(chk.classes.size() == 1);
  REQUIRE(chk.classes[0].witness.has_value());
  CHECK(chk.classes[0].witness->u == 0);
  CHECK(chk.classes[0].witness->v == V({1, 2}));

  CubeColoring big{11, 1, 1, std::vector<std::uint16_t>(2048, 1)};
  CHECK_THROWS_AS(verify_cube_coloring(big), Error);  // budget
  }

TEST_CASE("build_cube_coloring end to end: at most g*q classes and verifiable") {
  for (unsigned n : {2u, 6u, 8u}) {
    CubeBuild build = build_cube_coloring(n, 3, 2, 1, {}, 2);
    CHECK(build.coloring.class_ids_used().size() <= 6);
    CHECK(build.layers.size() == n + 1);
    ColoringCheck chk = verify_cube_coloring(build.coloring, 2);
    CHECK(chk.ok);
  }
  // n=2: every layer is boundary, one class per residue
  CubeBuild tiny = build_cube_coloring(2, 3, 2, 1, {}, 1);
  CHECK(tiny.coloring.class_ids_used().size() == 3);
  CHECK_THROWS_AS(build_cube_coloring(6, 3, 3, 1, {}, 1), Error);  // only q=2 construction
  CHECK_THROWS_AS(build_cube_coloring(6, 2, 2, 1, {}, 1), Error);  // g >= 3
}

TEST_CASE("build_cube_coloring is deterministic and seed-sensitive") {
  CubeBuild a = build_cube_coloring(8, 3, 2, 42, {}, 1);
  CubeBuild b = build_cube_coloring(8, 3, 2, 42, {}, 4);
  CHECK(a.coloring.classes == b.coloring.classes);
  CubeBuild c = build_cube_coloring(8, 3, 2, 43, {}, 1);
  CHECK(a.coloring.classes != c.coloring.classes);
}
