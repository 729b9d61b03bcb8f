#include "core/visibility.hpp"

#include <algorithm>
#include <unordered_set>

#include "core/parallel.hpp"

namespace qmv {

ObstacleSet make_obstacle_set(unsigned n, std::vector<word> members) {
  require(n >= 1 && n <= budgets::kWordDim, ErrorCode::InvalidArgument,
          "dimension must be in [1,64]");
  for (word m : members)
    require(subset_of(m, full_mask(n)), ErrorCode::InvalidArgument,
            "obstacle " + vertex_hex(m) + " outside ground set [" + std::to_string(n) + "]");
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return ObstacleSet{n, std::move(members)};
}

namespace {

// Obstacles strictly inside the open interval (a,b); endpoints excluded.
std::vector<word> interior_obstacles(word a, word b, const std::vector<word>& obstacles) {
  word lo = a & b, hi = a | b;
  std::vector<word> out;
  for (word o : obstacles)
    if (o != a && o != b && subset_of(lo, o) && subset_of(o, hi)) out.push_back(o);
  return out;
}

struct DpResult {
  bool visible = false;
  std::vector<word> path;
};

// Reachability over subsets of diff = a xor b, compact-indexed. States are
// visited in increasing numeric order, so every predecessor X^{x} of X has
// already been settled.
DpResult interval_dp(word a, word b, const std::vector<word>& interior, bool want_path) {
  word diff = a ^ b;
  unsigned d = popcount(diff);
  std::unordered_set<word> blocked(interior.begin(), interior.end());
  std::vector<bool> reach(word{1} << d, false);
  reach[0] = true;
  const word full = (word{1} << d) - 1;
  for (word x = 1; x <= full; ++x) {
    if (x != full && blocked.count(a ^ deposit_bits(x, diff))) continue;
    word rest = x;
    bool ok = false;
    while (rest) {
      word bit = rest & (~rest + 1);
      if (reach[x ^ bit]) {
        ok = true;
        break;
      }
      rest &= rest - 1;
    }
    reach[x] = ok;
  }
  DpResult res;
  res.visible = reach[full];
  if (res.visible && want_path) {
    std::vector<word> rev;
    word x = full;
    rev.push_back(b);
    while (x) {
      word rest = x;
      while (rest) {
        word bit = rest & (~rest + 1);
        if (reach[x ^ bit]) {
          x ^= bit;
          rev.push_back(a ^ deposit_bits(x, diff));
          break;
        }
        rest &= rest - 1;
      }
    }
    res.path.assign(rev.rbegin(), rev.rend());
  }
  return res;
}

std::vector<word> ascending_path(word a, word b) {
  std::vector<word> path{a};
  word diff = a ^ b;
  word v = a;
  while (diff) {
    word bit = diff & (~diff + 1);
    v ^= bit;
    path.push_back(v);
    diff &= diff - 1;
  }
  return path;
}

VisibilityCertificate check_pair(word a, word b, unsigned n, const std::vector<word>& obstacles,
                                 bool want_path, bool unsafe) {
  VisibilityCertificate cert;
  cert.u = a;
  cert.v = b;
  cert.obstacle_count = obstacles.size();
  if (a == b) {
    cert.visible = true;
    if (want_path) cert.path = {a};
    return cert;
  }
  std::vector<word> interior = interior_obstacles(a, b, obstacles);
  cert.interior_obstacles = interior.size();
  if (interior.empty()) {
    // Every monotone path works; no DP needed regardless of distance.
    cert.visible = true;
    if (want_path) cert.path = ascending_path(a, b);
    return cert;
  }
  unsigned d = popcount(a ^ b);
  require(unsafe || d <= budgets::kVisibilityDelta, ErrorCode::Budget,
          "visibility DP cap exceeded: |a xor b| = " + std::to_string(d) + " > " +
              std::to_string(budgets::kVisibilityDelta) + " (pass unsafe to override)");
  require(d < 63, ErrorCode::Budget, "visibility DP state space does not fit in memory");
  DpResult dp = interval_dp(a, b, interior, want_path);
  cert.visible = dp.visible;
  cert.path = std::move(dp.path);
  (void)n;
  return cert;
}

}  // namespace

bool visible(const VertexSet& a, const VertexSet& b, const ObstacleSet& obstacles, bool unsafe) {
  require(a.n == b.n && a.n == obstacles.n, ErrorCode::InvalidArgument,
          "visible: dimension mismatch");
  return check_pair(a.bits, b.bits, a.n, obstacles.members, false, unsafe).visible;
}

VisibilityCertificate visible_with_certificate(const VertexSet& a, const VertexSet& b,
                                               const ObstacleSet& obstacles, bool unsafe) {
  require(a.n == b.n && a.n == obstacles.n, ErrorCode::InvalidArgument,
          "visible: dimension mismatch");
  return check_pair(a.bits, b.bits, a.n, obstacles.members, true, unsafe);
}

SetCheck is_mutual_visibility_set(unsigned n, const std::vector<word>& members, unsigned jobs,
                                  bool unsafe) {
  require(n >= 1 && n <= budgets::kWordDim, ErrorCode::InvalidArgument,
          "dimension must be in [1,64]");
  std::vector<word> verts = members;
  for (word v : verts)
    require(subset_of(v, full_mask(n)), ErrorCode::InvalidArgument,
            "vertex " + vertex_hex(v) + " outside ground set [" + std::to_string(n) + "]");
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());

  SetCheck out;
  const std::uint64_t m = verts.size();
  if (m <= 1) return out;
  const std::uint64_t pairs = m * (m - 1) / 2;
  out.pairs_checked = pairs;

  // Pair t -> (i,j), i<j, enumerated with u=verts[i] as the major key so the
  // first failure matches the documented canonical order.
  auto pair_fails = [&](std::uint64_t t) {
    // Invert t = i*(m-1) - i*(i+1)/2 + j - 1 by scanning rows; rows shrink,
    // so locate i first.
    std::uint64_t i = 0, skipped = 0;
    while (skipped + (m - 1 - i) <= t) {
      skipped += m - 1 - i;
      ++i;
    }
    std::uint64_t j = i + 1 + (t - skipped);
    return !check_pair(verts[i], verts[j], n, verts, false, unsafe).visible;
  };

  std::uint64_t bad = first_failure(pairs, jobs, pair_fails);
  if (bad == pairs) return out;
  std::uint64_t i = 0, skipped = 0;
  while (skipped + (m - 1 - i) <= bad) {
    skipped += m - 1 - i;
    ++i;
  }
  std::uint64_t j = i + 1 + (bad - skipped);
  out.is_mutual_visibility = false;
  out.witness = NonVisibilityWitness{verts[i], verts[j]};
  return out;
}

std::optional<ThreeLayerWitness> three_layer_obstruction(unsigned n, const std::vector<word>& m,
                                                         const Subcube& sub) {
  require(sub.n == n, ErrorCode::InvalidArgument, "subcube dimension mismatch");
  require(sub.dim() >= 2, ErrorCode::InvalidArgument,
          "three_layer_obstruction requires subcube dimension >= 2");
  std::unordered_set<word> in_m(m.begin(), m.end());
  std::array<unsigned, 3> found{};
  unsigned count = 0;
  for (unsigned t = sub.min_layer(); t <= sub.max_layer() && count < 3; ++t) {
    LayerFamily layer = subcube_layer(sub, t);
    bool all = true;
    for (word v : layer.members)
      if (!in_m.count(v)) {
        all = false;
        break;
      }
    if (all) found[count++] = t;
  }
  if (count < 3) return std::nullopt;
  return ThreeLayerWitness{sub, found, -1};
}

std::optional<ThreeLayerWitness> find_three_layer_obstruction(unsigned n,
                                                              const std::vector<word>& m,
                                                              unsigned max_dim, bool unsafe) {
  require(n >= 2 && n <= budgets::kWordDim, ErrorCode::InvalidArgument,
          "dimension must be in [2,64]");
  require(max_dim >= 2, ErrorCode::InvalidArgument, "max_dim must be >= 2");
  require(unsafe || (n <= budgets::kObstructionDim && max_dim <= budgets::kObstructionSubcube),
          ErrorCode::Budget,
          "obstruction search budget: n <= " + std::to_string(budgets::kObstructionDim) +
              ", max_dim <= " + std::to_string(budgets::kObstructionSubcube) +
              " (pass unsafe to override)");
  unsigned dmax = std::min(max_dim, n);
  std::unordered_set<word> in_m(m.begin(), m.end());
  for (unsigned d = 2; d <= dmax; ++d) {
    word free = (word{1} << d) - 1;
    const word free_last = free << (n - d);
    for (;;) {
      word comp = full_mask(n) & ~free;
      // subsets of comp in increasing numeric order
      word base = 0;
      for (;;) {
        Subcube sub{base, free, n};
        unsigned count = 0;
        std::array<unsigned, 3> layers{};
        unsigned remaining = d + 1;
        for (unsigned t = sub.min_layer(); t <= sub.max_layer() && count < 3; ++t, --remaining) {
          if (count + remaining < 3) break;
          LayerFamily layer = subcube_layer(sub, t);
          bool all = true;
          for (word v : layer.members)
            if (!in_m.count(v)) {
              all = false;
              break;
            }
          if (all) layers[count++] = t;
        }
        if (count >= 3) return ThreeLayerWitness{sub, layers, -1};
        if (base == comp) break;
        base = (base - comp) & comp;
      }
      if (free == free_last) break;
      free = next_same_popcount(free);
    }
  }
  return std::nullopt;
}

}  // namespace qmv
