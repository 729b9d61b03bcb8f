#pragma once

// Layer-coloring machinery: the cross-layer escape property (2) and its
// per-layer form (3), residue-class union assembly, and assembly of a full
// cube coloring with at most g*q classes from per-layer colorings.

#include <map>
#include <optional>
#include <vector>

#include "core/hypercube.hpp"
#include "core/visibility.hpp"

namespace qmv {

// colors[colex_rank(member)] in 1..q, one entry per k-subset of [n].
struct LayerColoring {
  unsigned n = 0;
  unsigned k = 0;
  unsigned q = 0;
  std::vector<std::uint8_t> colors;
};

LayerColoring make_layer_coloring(unsigned n, unsigned k, unsigned q,
                                  std::vector<std::uint8_t> colors);

// classes[vertex_word] >= 1 for every vertex of Q_n. For colorings built by
// assemble_cube_coloring the id encodes (layer residue, layer color) as
// (k mod g)*q + color, so at most g*q distinct ids occur.
struct CubeColoring {
  unsigned n = 0;
  unsigned g = 0;
  unsigned q = 0;
  std::vector<std::uint16_t> classes;

  unsigned class_of(word v) const { return classes[v]; }
  std::vector<unsigned> class_ids_used() const;
};

CubeColoring make_cube_coloring(unsigned n, unsigned g, unsigned q,
                                std::vector<std::uint16_t> classes);

struct PairViolation {
  word a = 0;
  word b = 0;
};

struct PropertyCheck {
  bool holds = true;
  std::optional<PairViolation> violation;  // first violating pair, canonical order
  std::uint64_t pairs_checked = 0;
};

enum class EraMode {
  ViaAre,      // use the per-layer form (3); equivalent and vastly cheaper
  Exhaustive,  // quantify over all A,B in 2^[n] literally
};

// Property (2): for all A,B with |A|+g <= k <= |B|-g there is a k-set T
// outside the family with A&B <= T <= A|B.
PropertyCheck check_property_era(const LayerFamily& family, unsigned g,
                                 EraMode mode = EraMode::ViaAre, bool unsafe = false);

// Property (3): for every A in C([n],k-g), B in C([n],k+g) with A <= B some
// k-set T outside the family has A <= T <= B. Vacuous when k<g or k>n-g.
PropertyCheck check_property_are(const LayerFamily& family, unsigned g);

// Union of families over layers congruent to lambda (mod g), lambda in [1,g]
// (residue 0 is written lambda = g). Every family must satisfy property (2).
std::vector<word> assemble_lambda_union(const std::map<unsigned, LayerFamily>& families,
                                        unsigned g, unsigned lambda);

// Requires a coloring for every layer 0..n whose every class satisfies (3).
// Vertex v gets class id (|v| mod g)*q + color(v).
CubeColoring assemble_cube_coloring(const std::map<unsigned, LayerColoring>& layers, unsigned g);

struct ClassVerdict {
  unsigned class_id = 0;
  std::uint64_t size = 0;
  bool ok = true;
  std::optional<NonVisibilityWitness> witness;
};

struct ColoringCheck {
  bool ok = true;
  std::vector<ClassVerdict> classes;  // ascending class id, every class reported
};

// Full pairwise verification that every class is a mutual-visibility set.
ColoringCheck verify_cube_coloring(const CubeColoring& c, unsigned jobs = 1,
                                   bool unsafe = false);

struct LayerBuildReport {
  unsigned k = 0;
  bool boundary = false;
  // Filled for middle layers only.
  std::uint64_t rounds = 0;
  std::uint64_t resamples = 0;
  std::uint64_t blocks = 0;
  long long p_log2 = 0;
  double p = 0.0;
  std::uint64_t d = 0;
  double criterion = 0.0;
  bool satisfied = false;
};

struct CubeBuild {
  CubeColoring coloring;
  std::vector<LayerBuildReport> layers;
};

// End-to-end pipeline: boundary layers single-class, middle layers colored by
// resampling, then assembled. Deterministic given (n,g,seed).
CubeBuild build_cube_coloring(unsigned n, unsigned g, unsigned q, std::uint64_t seed,
                              std::optional<std::uint64_t> max_rounds, unsigned jobs,
                              bool unsafe = false);

}  // namespace qmv
