#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>

#include "core/hypercube.hpp"

using namespace qmv;

namespace {

word V(std::initializer_list<int> elems) {
  word w = 0;
  for (int e : elems) w |= word{1} << (e - 1);
  return w;
}

}  // namespace

TEST_CASE("distance matches symmetric difference size") {
  CHECK(distance(make_vertex(0, 3), make_vertex(0, 3)) == 0);
  CHECK(distance(make_vertex(V({1}), 3), make_vertex(V({2}), 3)) == 2);
  CHECK(distance(make_vertex(V({1, 2}), 3), make_vertex(V({2, 3}), 3)) == 2);
  CHECK_THROWS_AS(distance(make_vertex(0, 3), make_vertex(0, 4)), Error);
}

TEST_CASE("distance is a metric (exhaustive n=4, sampled n=6)") {
  for (unsigned n : {4u, 6u}) {
    const word all = full_mask(n);
    for (word a = 0; a <= all; ++a)
      for (word b = 0; b <= all; ++b) {
        unsigned d = distance(make_vertex(a, n), make_vertex(b, n));
        CHECK(d == distance(make_vertex(b, n), make_vertex(a, n)));
        CHECK((d == 0) == (a == b));
      }
    std::mt19937_64 rng(7);
    for (int t = 0; t < 20000; ++t) {
      word a = rng() & all, b = rng() & all, c = rng() & all;
      unsigned ab = distance(make_vertex(a, n), make_vertex(b, n));
      unsigned bc = distance(make_vertex(b, n), make_vertex(c, n));
      unsigned ac = distance(make_vertex(a, n), make_vertex(c, n));
      CHECK(ac <= ab + bc);
    }
  }
}

TEST_CASE("enumerate_layer produces colex order and exact counts") {
  LayerFamily l30 = enumerate_layer(3, 0);
  CHECK(l30.members == std::vector<word>{0});

  LayerFamily l32 = enumerate_layer(3, 2);
  CHECK(l32.members == std::vector<word>{V({1, 2}), V({1, 3}), V({2, 3})});

  CHECK(enumerate_layer(4, 2).members.size() == 6);

  for (unsigned n = 1; n <= 10; ++n)
    for (unsigned k = 0; k <= n; ++k) {
      LayerFamily fam = enumerate_layer(n, k);
      CHECK(fam.members.size() == binomial(n, k));
      for (std::size_t i = 0; i < fam.members.size(); ++i) {
        CHECK(popcount(fam.members[i]) == k);
        if (i) CHECK(fam.members[i - 1] < fam.members[i]);
      }
    }

  CHECK_THROWS_AS(enumerate_layer(3, 4), Error);
  CHECK_THROWS_AS(enumerate_layer(31, 2), Error);
  CHECK_NOTHROW(enumerate_layer(31, 2, /*unsafe=*/true));
}

TEST_CASE("interval_middle_sets examples") {
  LayerFamily m = interval_middle_sets(make_vertex(0, 2), make_vertex(V({1, 2}), 2), 1);
  CHECK(m.members == std::vector<word>{V({1}), V({2})});

  // g=3 block width: C(6,3) = 20 middle sets between the empty set and [6]
  LayerFamily mid = interval_middle_sets(make_vertex(0, 6), make_vertex(full_mask(6), 6), 3);
  CHECK(mid.members.size() == 20);

  LayerFamily sup = interval_middle_sets(make_vertex(V({1}), 3), make_vertex(V({1, 2, 3}), 3), 2);
  CHECK(sup.members == std::vector<word>{V({1, 2}), V({1, 3})});

  CHECK_THROWS_AS(interval_middle_sets(make_vertex(V({1}), 3), make_vertex(V({2, 3}), 3), 2),
                  Error);
  CHECK_THROWS_AS(interval_middle_sets(make_vertex(V({1}), 3), make_vertex(V({1, 2}), 3), 0),
                  Error);
}

TEST_CASE("interval_middle_sets count formula (exhaustive n<=8)") {
  const unsigned n = 8;
  for (word a = 0; a <= full_mask(n); ++a) {
    // supersets b of a
    word comp = full_mask(n) & ~a;
    word extra = 0;
    for (;;) {
      word b = a | extra;
      for (unsigned k = popcount(a); k <= popcount(b); ++k) {
        LayerFamily m = interval_middle_sets(make_vertex(a, n), make_vertex(b, n), k);
        CHECK(m.members.size() == binomial(popcount(b) - popcount(a), k - popcount(a)));
      }
      if (extra == comp) break;
      extra = (extra - comp) & comp;
    }
  }
}

TEST_CASE("subcube_layer examples and containment") {
  Subcube s1 = make_subcube(0, V({1, 2}), 2);
  CHECK(subcube_layer(s1, 1).members == std::vector<word>{V({1}), V({2})});

  Subcube s2 = make_subcube(V({3}), V({1, 2}), 3);
  CHECK(subcube_layer(s2, 2).members == std::vector<word>{V({1, 3}), V({2, 3})});

  Subcube s3 = make_subcube(0, full_mask(4), 4);
  CHECK(subcube_layer(s3, 2).members.size() == 6);

  CHECK_THROWS_AS(subcube_layer(s2, 0), Error);
  CHECK_THROWS_AS(subcube_layer(s2, 4), Error);
  CHECK_THROWS_AS(make_subcube(V({1}), V({1, 2}), 3), Error);  // base and free overlap

  // every subcube layer sits inside the global layer; union covers 2^dim
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    unsigned n = 3 + static_cast<unsigned>(rng() % 6);
    word free = rng() & full_mask(n);
    word base = rng() & full_mask(n) & ~free;
    Subcube sub{base, free, n};
    std::uint64_t total = 0;
    for (unsigned k = sub.min_layer(); k <= sub.max_layer(); ++k) {
      LayerFamily sl = subcube_layer(sub, k);
      LayerFamily gl = enumerate_layer(n, k);
      for (word v : sl.members)
        CHECK(std::binary_search(gl.members.begin(), gl.members.end(), v));
      total += sl.members.size();
    }
    CHECK(total == (word{1} << sub.dim()));
  }
}

TEST_CASE("colex rank and unrank invert each other") {
  for (unsigned n = 1; n <= 12; ++n)
    for (unsigned k = 0; k <= n; ++k) {
      LayerFamily fam = enumerate_layer(n, k);
      for (std::size_t r = 0; r < fam.members.size(); ++r) {
        CHECK(colex_rank(fam.members[r]) == r);
        CHECK(colex_unrank(r, k) == fam.members[r]);
      }
    }
}

TEST_CASE("vertex text forms") {
  CHECK(vertex_elements(0) == "{}");
  CHECK(vertex_elements(V({1, 3, 4})) == "{1,3,4}");
  CHECK(vertex_hex(V({1, 3, 4})) == "0xd");
  CHECK(parse_vertex("0xd") == V({1, 3, 4}));
  CHECK(parse_vertex("{1,3,4}") == V({1, 3, 4}));
  CHECK(parse_vertex("{}") == 0);
  CHECK(parse_vertex("0x0") == 0);
  CHECK(parse_vertex(" {2, 5} ") == V({2, 5}));

  CHECK_THROWS_AS(parse_vertex(""), Error);
  CHECK_THROWS_AS(parse_vertex("0x"), Error);
  CHECK_THROWS_AS(parse_vertex("0xg"), Error);
  CHECK_THROWS_AS(parse_vertex("{1,1}"), Error);
  CHECK_THROWS_AS(parse_vertex("{0}"), Error);
  CHECK_THROWS_AS(parse_vertex("{65}"), Error);
  CHECK_THROWS_AS(parse_vertex("elephant"), Error);

  std::mt19937_64 rng(3);
  for (int t = 0; t < 2000; ++t) {
    word w = rng();
    CHECK(parse_vertex(vertex_hex(w)) == w);
    CHECK(parse_vertex(vertex_elements(w)) == w);
  }
}

TEST_CASE("intervals validate containment and know their size") {
  Interval iv = make_interval(make_vertex(V({1}), 4), make_vertex(V({1, 3, 4}), 4));
  CHECK(iv.size() == 4);
  CHECK(make_interval(make_vertex(0, 4), make_vertex(full_mask(4), 4)).size() == 16);
  CHECK_THROWS_AS(make_interval(make_vertex(V({2}), 4), make_vertex(V({1, 3}), 4)), Error);
  CHECK_THROWS_AS(make_interval(make_vertex(0, 3), make_vertex(0, 4)), Error);
}

TEST_CASE("vertex validation") {
  CHECK_THROWS_AS(make_vertex(V({5}), 4), Error);
  CHECK_NOTHROW(make_vertex(V({4}), 4));
  CHECK_THROWS_AS(make_vertex(0, 0), Error);
  CHECK_THROWS_AS(make_vertex(0, 65), Error);
}
