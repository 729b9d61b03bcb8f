#pragma once

// Exact geodesic visibility in Q_n. Two vertices see each other iff some
// monotone path between them (each step toggling one element of a xor b)
// has no internal vertex in the obstacle set. Computed by reachability DP
// over the 2^|a xor b| interval sublattice, never by path enumeration.

#include <array>
#include <optional>
#include <vector>

#include "core/hypercube.hpp"

namespace qmv {

struct ObstacleSet {
  unsigned n = 0;
  std::vector<word> members;
};

ObstacleSet make_obstacle_set(unsigned n, std::vector<word> members);

struct VisibilityCertificate {
  word u = 0;
  word v = 0;
  bool visible = false;
  std::uint64_t obstacle_count = 0;          // size of the obstacle set as given
  std::uint64_t interior_obstacles = 0;      // obstacles strictly inside the interval
  std::vector<word> path;                    // one witnessing geodesic when visible
};

// Endpoints are never treated as obstacles: callers may pass the whole set M
// and the checker ignores {a,b} itself.
bool visible(const VertexSet& a, const VertexSet& b, const ObstacleSet& obstacles,
             bool unsafe = false);
VisibilityCertificate visible_with_certificate(const VertexSet& a, const VertexSet& b,
                                               const ObstacleSet& obstacles,
                                               bool unsafe = false);

struct NonVisibilityWitness {
  word u = 0;
  word v = 0;
};

struct SetCheck {
  bool is_mutual_visibility = true;
  std::optional<NonVisibilityWitness> witness;  // first failing pair, canonical order
  std::uint64_t pairs_checked = 0;
};

// Checks every unordered pair; the witness is the first failing pair when
// pairs (u,v), u<v, are ordered by u then v (vertices compared in colex,
// i.e. numeric, order).
SetCheck is_mutual_visibility_set(unsigned n, const std::vector<word>& members,
                                  unsigned jobs = 1, bool unsafe = false);

struct ThreeLayerWitness {
  Subcube subcube;
  std::array<unsigned, 3> layers{};  // global layer indices i < j < k
  int class_id = -1;                 // set when the set under test is a color class
};

// The three smallest global layers of `sub` fully contained in `m`, if at
// least three such layers exist. Requires dim(sub) >= 2.
std::optional<ThreeLayerWitness> three_layer_obstruction(unsigned n,
                                                         const std::vector<word>& m,
                                                         const Subcube& sub);

// Scans all interval subcubes of dimension 2..max_dim in canonical order
// (dimension, then free set, then base) and returns the first witness.
std::optional<ThreeLayerWitness> find_three_layer_obstruction(unsigned n,
                                                              const std::vector<word>& m,
                                                              unsigned max_dim,
                                                              bool unsafe = false);

}  // namespace qmv
