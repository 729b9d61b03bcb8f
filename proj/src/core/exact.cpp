#include "core/exact.hpp"

#include <algorithm>

namespace qmv {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

inline void fnv_mix(std::uint64_t& h, std::uint64_t v) {
  h = (h ^ v) * kFnvPrime;
}

std::vector<word> vertices_by_layer(unsigned n) {
  std::vector<word> verts;
  verts.reserve(std::size_t{1} << n);
  for (word v = 0; v < (word{1} << n); ++v) verts.push_back(v);
  std::stable_sort(verts.begin(), verts.end(),
                   [](word a, word b) { return popcount(a) != popcount(b)
                                            ? popcount(a) < popcount(b)
                                            : a < b; });
  return verts;
}

// Incremental feasibility: set `members` is mutually visible; may `v` join?
// Checks every pair involving v plus every existing pair whose open interval
// gains v as a potential blocker.
bool can_join(unsigned n, const std::vector<word>& members, word v, bool unsafe) {
  std::vector<word> grown = members;
  grown.push_back(v);
  ObstacleSet obst{n, grown};
  for (word u : members) {
    if (!visible(VertexSet{u, n}, VertexSet{v, n}, obst, unsafe)) return false;
  }
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      word u = members[i], w = members[j];
      if (v == u || v == w) continue;
      if (subset_of(u & w, v) && subset_of(v, u | w)) {
        if (!visible(VertexSet{u, n}, VertexSet{w, n}, obst, unsafe)) return false;
      }
    }
  return true;
}

struct MuSearch {
  unsigned n;
  std::vector<word> verts;
  std::uint64_t node_budget;  // 0 = unlimited
  bool unsafe;

  std::vector<word> chosen;
  std::vector<word> best;
  std::uint64_t nodes = 0;
  std::uint64_t hash = kFnvOffset;
  bool exhausted = true;

  void dfs(std::size_t idx) {
    if (node_budget && nodes >= node_budget) {
      exhausted = false;
      return;
    }
    ++nodes;
    fnv_mix(hash, (std::uint64_t{idx} << 8) | chosen.size());
    if (chosen.size() + (verts.size() - idx) <= best.size()) return;  // bound
    if (idx == verts.size()) return;
    word v = verts[idx];
    if (can_join(n, chosen, v, unsafe)) {
      chosen.push_back(v);
      if (chosen.size() > best.size()) {
        best = chosen;
        fnv_mix(hash, 0xbe57ULL);
      }
      dfs(idx + 1);
      chosen.pop_back();
    }
    dfs(idx + 1);
  }
};

}  // namespace

MuResult max_mutual_visibility(unsigned n, std::uint64_t node_budget, bool unsafe) {
  require(n >= 1, ErrorCode::InvalidArgument, "dimension must be >= 1");
  require(unsafe || n <= budgets::kHeuristicMuDim, ErrorCode::Budget,
          "mu solver capped at n <= " + std::to_string(budgets::kHeuristicMuDim) +
              " (pass unsafe to override)");
  require(n <= 14, ErrorCode::Budget, "mu solver cannot search 2^n vertices at this n");

  const bool exact_mode = n <= budgets::kExactMuDim;
  MuSearch search{n, vertices_by_layer(n),
                  exact_mode ? 0 : (node_budget ? node_budget : 1'000'000), unsafe,
                  {}, {}, 0, kFnvOffset, true};
  search.dfs(0);

  MuResult out;
  out.n = n;
  out.mu = static_cast<unsigned>(search.best.size());
  out.witness = search.best;
  std::sort(out.witness.begin(), out.witness.end());
  out.certified = search.exhausted;
  out.nodes = search.nodes;
  out.trace_hash = search.hash;
  return out;
}

namespace {

struct ChiSearch {
  unsigned n;
  unsigned max_classes;
  std::vector<word> verts;
  bool unsafe;

  std::vector<std::vector<word>> classes;  // members per class id (1-based)
  std::vector<std::uint16_t> assignment;   // per vertex word
  std::uint64_t nodes = 0;
  std::uint64_t hash = kFnvOffset;

  bool dfs(std::size_t idx, unsigned used) {
    ++nodes;
    fnv_mix(hash, (std::uint64_t{idx} << 8) | used);
    if (idx == verts.size()) return true;
    word v = verts[idx];
    unsigned limit = std::min(used + 1, max_classes);
    for (unsigned cid = 1; cid <= limit; ++cid) {
      if (can_join(n, classes[cid], v, unsafe)) {
        classes[cid].push_back(v);
        assignment[v] = static_cast<std::uint16_t>(cid);
        if (dfs(idx + 1, std::max(used, cid))) return true;
        classes[cid].pop_back();
        assignment[v] = 0;
      }
    }
    return false;
  }
};

}  // namespace

unsigned trivial_lower_bound(unsigned n, std::uint64_t mu) {
  require(mu >= 1, ErrorCode::InvalidArgument, "mu must be >= 1");
  require(n >= 1 && n <= 62, ErrorCode::InvalidArgument, "dimension out of range");
  std::uint64_t total = std::uint64_t{1} << n;
  return static_cast<unsigned>((total + mu - 1) / mu);
}

ChiMuResult exact_chi_mu(unsigned n, bool unsafe) {
  require(n >= 1, ErrorCode::InvalidArgument, "dimension must be >= 1");
  require(unsafe || n <= budgets::kExactChiDim, ErrorCode::Budget,
          "chi solver capped at n <= " + std::to_string(budgets::kExactChiDim) +
              " (pass unsafe to override)");
  require(n <= 8, ErrorCode::Budget, "chi solver cannot handle 2^n vertices at this n");

  MuResult mu = max_mutual_visibility(n, 0, unsafe);

  ChiMuResult out;
  out.n = n;
  // The counting bound certifies class counts below it only when mu itself
  // was certified by an exhausted search.
  out.lower_bound = mu.certified ? trivial_lower_bound(n, mu.mu) : 1;
  out.nodes = mu.nodes;
  out.trace_hash = mu.trace_hash;

  const std::size_t total = std::size_t{1} << n;
  for (unsigned c = std::max(1u, out.lower_bound);; ++c) {
    require(c <= total, ErrorCode::Internal, "chi search exceeded the trivial class bound");
    ChiSearch search{n, c, vertices_by_layer(n), unsafe,
                     std::vector<std::vector<word>>(c + 1),
                     std::vector<std::uint16_t>(total, 0), 0, kFnvOffset};
    bool found = search.dfs(0, 0);
    out.nodes += search.nodes;
    fnv_mix(out.trace_hash, search.hash);
    if (found) {
      out.chi = c;
      out.partition = CubeColoring{n, 1, c, std::move(search.assignment)};
      out.certified = true;
      return out;
    }
  }
}

std::optional<RamseyWitness> ramsey_witness_search(const LayerColoring& coloring, unsigned s,
                                                   bool unsafe) {
  const unsigned m = coloring.n, k = coloring.k;
  require(k >= 1 && k <= s && s <= m, ErrorCode::InvalidArgument,
          "ramsey search requires 1 <= k <= s <= m");
  require(unsafe || (m <= budgets::kRamseyGround && k <= budgets::kRamseyUniformity &&
                     s <= budgets::kRamseyTarget),
          ErrorCode::Budget,
          "ramsey search budget: m <= " + std::to_string(budgets::kRamseyGround) + ", k <= " +
              std::to_string(budgets::kRamseyUniformity) + ", s <= " +
              std::to_string(budgets::kRamseyTarget) + " (pass unsafe to override)");

  word set = (word{1} << s) - 1;
  const word last = set << (m - s);
  for (;;) {
    unsigned color = 0;
    bool mono = true;
    // k-subsets of `set`
    word t = (word{1} << k) - 1;
    const word tlast = t << (s - k);
    for (;;) {
      unsigned c = coloring.colors[colex_rank(deposit_bits(t, set))];
      if (color == 0)
        color = c;
      else if (c != color) {
        mono = false;
        break;
      }
      if (t == tlast) break;
      t = next_same_popcount(t);
    }
    if (mono) return RamseyWitness{m, k, coloring.q, s, set, color};
    if (set == last) break;
    set = next_same_popcount(set);
  }
  return std::nullopt;
}

std::string lower_bound_tower_expression(unsigned q) {
  require(q >= 1 && q <= 100, ErrorCode::InvalidArgument, "color count out of range");
  std::string expr = "r_2(";
  for (unsigned k = 3; k <= 2 * q; ++k) expr += "r_" + std::to_string(k) + "(";
  expr += std::to_string(2 * q);
  expr += std::string(2 * q - 1, ')');
  return std::to_string(q) + " * " + expr;
}

std::optional<MonoLayerSubcube> monochromatic_layer_subcube_search(const CubeColoring& c,
                                                                   unsigned d, bool unsafe) {
  require(c.classes.size() == (std::size_t{1} << c.n), ErrorCode::InvalidArgument,
          "cube coloring does not cover 2^n vertices");
  require(d <= c.n, ErrorCode::InvalidArgument, "subcube dimension exceeds n");
  require(unsafe || (c.n <= budgets::kMonoSearchDim && d <= budgets::kMonoSubcubeDim),
          ErrorCode::Budget,
          "monochromatic-layer search budget: n <= " + std::to_string(budgets::kMonoSearchDim) +
              ", d <= " + std::to_string(budgets::kMonoSubcubeDim) +
              " (pass unsafe to override)");
  const unsigned n = c.n;
  word free = (word{1} << d) - 1;
  const word free_last = d == 0 ? 0 : free << (n - d);
  for (;;) {
    word comp = full_mask(n) & ~free;
    word base = 0;
    for (;;) {
      Subcube sub{base, free, n};
      std::vector<unsigned> per_layer;
      bool all_mono = true;
      for (unsigned t = sub.min_layer(); t <= sub.max_layer() && all_mono; ++t) {
        LayerFamily layer = subcube_layer(sub, t);
        unsigned cls = c.classes[layer.members.front()];
        for (word v : layer.members)
          if (c.classes[v] != cls) {
            all_mono = false;
            break;
          }
        if (all_mono) per_layer.push_back(cls);
      }
      if (all_mono) return MonoLayerSubcube{sub, std::move(per_layer)};
      if (base == comp) break;
      base = (base - comp) & comp;
    }
    if (free == free_last) break;
    free = next_same_popcount(free);
  }
  return std::nullopt;
}

std::optional<PigeonholeResult> pigeonhole_three_layers(const Subcube& sub,
                                                        const CubeColoring& c) {
  require(sub.n == c.n, ErrorCode::InvalidArgument, "subcube and coloring dimension mismatch");
  require(c.classes.size() == (std::size_t{1} << c.n), ErrorCode::InvalidArgument,
          "cube coloring does not cover 2^n vertices");
  std::vector<unsigned> layer_class;
  for (unsigned t = sub.min_layer(); t <= sub.max_layer(); ++t) {
    LayerFamily layer = subcube_layer(sub, t);
    unsigned cls = c.classes[layer.members.front()];
    for (word v : layer.members)
      require(c.classes[v] == cls, ErrorCode::InvalidArgument,
              "pigeonhole precondition violated: layer " + std::to_string(t) +
                  " of the subcube is not monochromatic");
    layer_class.push_back(cls);
  }
  std::map<unsigned, std::vector<unsigned>> owned;
  for (unsigned i = 0; i < layer_class.size(); ++i) {
    auto& v = owned[layer_class[i]];
    v.push_back(sub.min_layer() + i);
    if (v.size() == 3) return PigeonholeResult{layer_class[i], {v[0], v[1], v[2]}};
  }
  return std::nullopt;
}

}  // namespace qmv
