#include "core/construction.hpp"

#include <algorithm>

#include "core/lll.hpp"
#include "core/parallel.hpp"

namespace qmv {

LayerColoring make_layer_coloring(unsigned n, unsigned k, unsigned q,
                                  std::vector<std::uint8_t> colors) {
  require(n >= 1 && n <= budgets::kMaterializeDim, ErrorCode::InvalidArgument,
          "layer coloring dimension must be in [1," + std::to_string(budgets::kMaterializeDim) +
              "]");
  require(k <= n, ErrorCode::InvalidArgument, "layer index exceeds dimension");
  require(q >= 1 && q <= 200, ErrorCode::InvalidArgument, "color count out of range");
  require(colors.size() == binomial(n, k), ErrorCode::InvalidArgument,
          "layer coloring must assign all " + std::to_string(binomial(n, k)) + " members");
  for (std::uint8_t c : colors)
    require(c >= 1 && c <= q, ErrorCode::InvalidArgument, "color id out of [1,q]");
  return LayerColoring{n, k, q, std::move(colors)};
}

std::vector<unsigned> CubeColoring::class_ids_used() const {
  std::vector<unsigned> ids(classes.begin(), classes.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

CubeColoring make_cube_coloring(unsigned n, unsigned g, unsigned q,
                                std::vector<std::uint16_t> classes) {
  require(n >= 1 && n <= budgets::kMaterializeDim, ErrorCode::InvalidArgument,
          "cube coloring dimension must be in [1," + std::to_string(budgets::kMaterializeDim) +
              "]");
  require(classes.size() == (std::size_t{1} << n), ErrorCode::InvalidArgument,
          "cube coloring must assign all 2^n vertices");
  for (std::uint16_t c : classes)
    require(c >= 1, ErrorCode::InvalidArgument, "class ids are 1-based");
  return CubeColoring{n, g, q, std::move(classes)};
}

namespace {

// Membership bitmap over colex ranks of one layer.
std::vector<bool> family_bitmap(const LayerFamily& family) {
  std::vector<bool> present(binomial(family.n, family.k), false);
  for (word m : family.members) present[colex_rank(m)] = true;
  return present;
}

// Does some k-set outside `present` lie between lo and hi?
bool escape_exists(word lo, word hi, unsigned k, const std::vector<bool>& present) {
  word free = hi & ~lo;
  unsigned pick = k - popcount(lo);
  if (pick == 0) return !present[colex_rank(lo)];
  word s = (word{1} << pick) - 1;
  const word last = s << (popcount(free) - pick);
  for (;;) {
    word t = lo | deposit_bits(s, free);
    if (!present[colex_rank(t)]) return true;
    if (s == last) break;
    s = next_same_popcount(s);
  }
  return false;
}

}  // namespace

PropertyCheck check_property_are(const LayerFamily& family, unsigned g) {
  require(g >= 3, ErrorCode::InvalidArgument, "gap parameter g must be >= 3");
  const unsigned n = family.n, k = family.k;
  PropertyCheck out;
  if (k < g || k + g > n) return out;  // no (A,B) pair exists

  const std::vector<bool> present = family_bitmap(family);
  LayerFamily lows = enumerate_layer(n, k - g);
  for (word a : lows.members) {
    word comp = full_mask(n) & ~a;
    // B = a | D over 2g-subsets D of the complement, colex order.
    word s = (word{1} << (2 * g)) - 1;
    const word last = s << (popcount(comp) - 2 * g);
    for (;;) {
      word b = a | deposit_bits(s, comp);
      ++out.pairs_checked;
      if (!escape_exists(a, b, k, present)) {
        out.holds = false;
        out.violation = PairViolation{a, b};
        return out;
      }
      if (s == last) break;
      s = next_same_popcount(s);
    }
  }
  return out;
}

PropertyCheck check_property_era(const LayerFamily& family, unsigned g, EraMode mode,
                                 bool unsafe) {
  require(g >= 3, ErrorCode::InvalidArgument, "gap parameter g must be >= 3");
  if (mode == EraMode::ViaAre) {
    // Equivalent per-layer form; a violation of (3) is literally a violating
    // (A,B) for (2) as well since A&B = A and A|B = B there.
    return check_property_are(family, g);
  }
  const unsigned n = family.n, k = family.k;
  require(unsafe || n <= budgets::kEraExhaustiveDim, ErrorCode::Budget,
          "exhaustive property check capped at n <= " +
              std::to_string(budgets::kEraExhaustiveDim) + " (pass unsafe to override)");
  PropertyCheck out;
  if (k < g || k + g > n) return out;

  const std::vector<bool> present = family_bitmap(family);
  const word all = full_mask(n);
  std::vector<word> as, bs;
  for (word v = 0;; ++v) {
    if (popcount(v) + g <= k) as.push_back(v);
    if (popcount(v) >= k + g) bs.push_back(v);
    if (v == all) break;
  }
  for (word a : as)
    for (word b : bs) {
      ++out.pairs_checked;
      if (!escape_exists(a & b, a | b, k, present)) {
        out.holds = false;
        out.violation = PairViolation{a, b};
        return out;
      }
    }
  return out;
}

std::vector<word> assemble_lambda_union(const std::map<unsigned, LayerFamily>& families,
                                        unsigned g, unsigned lambda) {
  require(g >= 3, ErrorCode::InvalidArgument, "gap parameter g must be >= 3");
  require(lambda >= 1 && lambda <= g, ErrorCode::InvalidArgument,
          "lambda must lie in [1,g] (residue 0 is written lambda = g)");
  std::vector<word> out;
  for (const auto& [k, family] : families) {
    require(k == family.k, ErrorCode::InvalidArgument, "family keyed under the wrong layer");
    require(k % g == lambda % g, ErrorCode::InvalidArgument,
            "layer " + std::to_string(k) + " is not congruent to lambda=" +
                std::to_string(lambda) + " (mod " + std::to_string(g) + ")");
    PropertyCheck chk = check_property_era(family, g);
    require(chk.holds, ErrorCode::InvalidArgument,
            "family at layer " + std::to_string(k) + " violates property (2)");
    out.insert(out.end(), family.members.begin(), family.members.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CubeColoring assemble_cube_coloring(const std::map<unsigned, LayerColoring>& layers, unsigned g) {
  require(g >= 3, ErrorCode::InvalidArgument, "gap parameter g must be >= 3");
  require(!layers.empty(), ErrorCode::InvalidArgument, "no layer colorings supplied");
  const unsigned n = layers.begin()->second.n;
  const unsigned q = layers.begin()->second.q;
  for (unsigned k = 0; k <= n; ++k) {
    auto it = layers.find(k);
    require(it != layers.end(), ErrorCode::InvalidArgument,
            "missing layer coloring for k=" + std::to_string(k));
    require(it->second.n == n && it->second.q == q && it->second.k == k,
            ErrorCode::InvalidArgument, "inconsistent layer coloring parameters");
  }
  require(layers.size() == n + 1, ErrorCode::InvalidArgument, "unexpected extra layer colorings");

  // Every class of every layer must satisfy (3); boundary layers pass
  // vacuously whatever their coloring.
  for (const auto& [k, coloring] : layers) {
    for (unsigned i = 1; i <= q; ++i) {
      std::vector<word> members;
      for (std::size_t r = 0; r < coloring.colors.size(); ++r)
        if (coloring.colors[r] == i) members.push_back(colex_unrank(r, k));
      PropertyCheck chk = check_property_are(make_layer_family(n, k, std::move(members)), g);
      require(chk.holds, ErrorCode::InvalidArgument,
              "class " + std::to_string(i) + " of layer " + std::to_string(k) +
                  " violates property (3)");
    }
  }

  std::vector<std::uint16_t> classes(std::size_t{1} << n, 0);
  for (const auto& [k, coloring] : layers) {
    for (std::size_t r = 0; r < coloring.colors.size(); ++r) {
      word v = colex_unrank(r, k);
      classes[v] = static_cast<std::uint16_t>((k % g) * q + coloring.colors[r]);
    }
  }
  CubeColoring out{n, g, q, std::move(classes)};
  require(out.class_ids_used().size() <= std::size_t{g} * q, ErrorCode::Internal,
          "assembled coloring uses more than g*q classes");
  return out;
}

ColoringCheck verify_cube_coloring(const CubeColoring& c, unsigned jobs, bool unsafe) {
  require(c.classes.size() == (std::size_t{1} << c.n), ErrorCode::InvalidArgument,
          "cube coloring does not cover 2^n vertices");
  require(unsafe || c.n <= budgets::kVerifyDim, ErrorCode::Budget,
          "full verification capped at n <= " + std::to_string(budgets::kVerifyDim) +
              " (pass unsafe to override)");
  std::map<unsigned, std::vector<word>> by_class;
  for (word v = 0; v < c.classes.size(); ++v) {
    require(c.classes[v] >= 1, ErrorCode::InvalidArgument,
            "vertex " + vertex_hex(v) + " has no class assigned");
    by_class[c.classes[v]].push_back(v);
  }
  ColoringCheck out;
  for (const auto& [id, members] : by_class) {
    SetCheck chk = is_mutual_visibility_set(c.n, members, jobs, unsafe);
    ClassVerdict verdict{id, members.size(), chk.is_mutual_visibility, chk.witness};
    if (!verdict.ok) out.ok = false;
    out.classes.push_back(std::move(verdict));
  }
  return out;
}

CubeBuild build_cube_coloring(unsigned n, unsigned g, unsigned q, std::uint64_t seed,
                              std::optional<std::uint64_t> max_rounds, unsigned jobs,
                              bool unsafe) {
  require(g >= 3, ErrorCode::InvalidArgument, "gap parameter g must be >= 3");
  require(q == 2, ErrorCode::InvalidArgument,
          "layer construction supports q = 2 (general q is accepted only for "
          "externally supplied colorings)");
  require(n >= 1 && n <= budgets::kMaterializeDim, ErrorCode::InvalidArgument,
          "cube construction dimension must be in [1," +
              std::to_string(budgets::kMaterializeDim) + "]");

  std::vector<LayerColoring> colorings(n + 1);
  std::vector<LayerBuildReport> reports(n + 1);
  std::vector<std::exception_ptr> errors(n + 1);
  parallel_for(n + 1, jobs, [&](std::uint64_t k64) {
    unsigned k = static_cast<unsigned>(k64);
    try {
      LayerBuildReport rep;
      rep.k = k;
      if (k < g || k + g > n) {
        rep.boundary = true;
        colorings[k] = LayerColoring{
            n, k, q, std::vector<std::uint8_t>(binomial(n, k), std::uint8_t{1})};
      } else {
        LllReport lll = lll_parameters(n, k, g);
        rep.blocks = lll.block_count;
        rep.p_log2 = lll.p_log2;
        rep.p = lll.p;
        rep.d = lll.d;
        rep.criterion = lll.criterion;
        rep.satisfied = lll.satisfied;
        MtResult mt = moser_tardos_layer_coloring(n, k, g, seed, max_rounds, unsafe);
        rep.rounds = mt.rounds;
        rep.resamples = mt.resamples;
        colorings[k] = std::move(mt.coloring);
      }
      reports[k] = rep;
    } catch (...) {
      errors[k] = std::current_exception();
    }
  });
  for (unsigned k = 0; k <= n; ++k)
    if (errors[k]) std::rethrow_exception(errors[k]);

  std::map<unsigned, LayerColoring> by_layer;
  for (unsigned k = 0; k <= n; ++k) by_layer.emplace(k, std::move(colorings[k]));
  CubeBuild out;
  out.coloring = assemble_cube_coloring(by_layer, g);
  out.layers = std::move(reports);
  return out;
}

}  // namespace qmv
