#pragma once

// Desk-scale exact solvers for mu(Q_n) and chi_mu(Q_n), plus the lower-bound
// machinery: monochromatic-set witness search in colored k-subset hypergraphs
// and monochromatic-layer subcube search inside colored cubes.

#include <optional>
#include <vector>

#include "core/construction.hpp"
#include "core/hypercube.hpp"
#include "core/visibility.hpp"

namespace qmv {

struct MuResult {
  unsigned n = 0;
  unsigned mu = 0;
  std::vector<word> witness;
  bool certified = false;  // true iff the branch-and-bound search exhausted
  std::uint64_t nodes = 0;
  std::uint64_t trace_hash = 0;  // FNV chain over search events, not a proof
};

// Exact (search exhausts) for n <= 4; larger n run a node-budgeted
// branch-and-bound that reports the best set found. node_budget = 0 selects
// the default; exact runs ignore the budget.
MuResult max_mutual_visibility(unsigned n, std::uint64_t node_budget = 0, bool unsafe = false);

struct ChiMuResult {
  unsigned n = 0;
  unsigned chi = 0;
  CubeColoring partition;  // chi classes, ids 1..chi in first-use order
  bool certified = false;
  unsigned lower_bound = 0;  // ceil(2^n / mu), certified via the mu solver
  std::uint64_t nodes = 0;
  std::uint64_t trace_hash = 0;
};

// Iterative deepening on the class count, starting from the counting lower
// bound; the empty set is pinned to class 1 and classes enter in first-use
// order.
ChiMuResult exact_chi_mu(unsigned n, bool unsafe = false);

// ceil(2^n / mu).
unsigned trivial_lower_bound(unsigned n, std::uint64_t mu);

struct RamseyWitness {
  unsigned m = 0;  // ground set size
  unsigned k = 0;  // uniformity
  unsigned q = 0;  // colors in the input coloring
  unsigned s = 0;  // target set size
  word mono_set = 0;
  unsigned color = 0;
};

// First s-subset of [m] (colex order) whose k-subsets are monochromatic
// under the given coloring of C([m],k); the coloring is carried as a
// LayerColoring with n = m.
std::optional<RamseyWitness> ramsey_witness_search(const LayerColoring& coloring, unsigned s,
                                                   bool unsafe = false);

// The dimension threshold behind the lower-bound argument, as a symbolic
// composition of hypergraph Ramsey numbers: "q * r_2(r_3(...r_2q(2q)...))".
// These values are tower-sized and are never evaluated.
std::string lower_bound_tower_expression(unsigned q);

struct MonoLayerSubcube {
  Subcube sub;
  std::vector<unsigned> layer_classes;  // class id per layer, ascending weight
};

// First interval subcube of dimension d (canonical order) each of whose
// d+1 layers is monochromatic under c.
std::optional<MonoLayerSubcube> monochromatic_layer_subcube_search(const CubeColoring& c,
                                                                   unsigned d,
                                                                   bool unsafe = false);

struct PigeonholeResult {
  unsigned class_id = 0;
  std::array<unsigned, 3> layers{};
};

// Requires every layer of sub monochromatic under c; returns the first class
// that owns three layers (scanning weights upward), with those three layers.
std::optional<PigeonholeResult> pigeonhole_three_layers(const Subcube& sub,
                                                        const CubeColoring& c);

}  // namespace qmv
