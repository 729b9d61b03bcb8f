#pragma once

// Bad-event blocks, symmetric local-lemma arithmetic, and the resampling
// loop that produces per-layer 2-colorings in which no block is
// monochromatic (equivalently: both classes satisfy property (3)).

#include <cstdint>
#include <optional>
#include <vector>

#include "core/construction.hpp"
#include "core/hypercube.hpp"

namespace qmv {

// A pair a <= b with |a| = k-g, |b| = k+g; its C(2g,g) middle k-sets carry
// one bad event: "all middle sets share a color".
struct Block {
  word a = 0;
  word b = 0;
};

// All C(n,k-g)*C(n-(k-g),2g) blocks in canonical order (a ascending, then
// b ascending over supersets). Empty when k < g or k > n-g.
std::vector<Block> enumerate_blocks(unsigned n, unsigned k, unsigned g);

struct LllReport {
  unsigned n = 0, k = 0, g = 0;
  long long p_log2 = 0;     // exact: p = 2^(1 - C(2g,g))
  double p = 0.0;           // may underflow to 0 for large g; p_log2 stays exact
  std::uint64_t d = 0;      // C(2g,g)*C(k,g)*C(n-k,g)
  double criterion = 0.0;   // e*p*(d+1)
  bool satisfied = false;   // criterion <= 1
  std::uint64_t block_count = 0;
};

LllReport lll_parameters(unsigned n, unsigned k, unsigned g);

struct MtResult {
  LayerColoring coloring;
  bool boundary = false;
  std::uint64_t rounds = 0;     // violation scans that found a block
  std::uint64_t resamples = 0;  // middle sets re-randomized in total
};

// Deterministic given (n,k,g,seed): one derived generator per layer. Runs
// even when the sufficient criterion fails; throws Convergence once
// max_rounds resampling rounds are exhausted. Callers that pass no cap get
// the default 1000 * block_count.
MtResult moser_tardos_layer_coloring(unsigned n, unsigned k, unsigned g, std::uint64_t seed,
                                     std::optional<std::uint64_t> max_rounds = std::nullopt,
                                     bool unsafe = false);

// Per-layer stream derivation for the master seed (splitmix64 of seed xor k).
std::uint64_t layer_stream_seed(std::uint64_t master, unsigned k);

}  // namespace qmv
