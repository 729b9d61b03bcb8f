#pragma once

// Subset-lattice foundations: vertices of Q_n as 64-bit words, layers,
// intervals and interval subcubes, colexicographic enumeration and ranking.
//
// Ground-set element i (1-based) lives at bit i-1. For equal-cardinality
// sets colexicographic order coincides with numeric order on the words, so
// "canonical order" below always means ascending word value.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "core/errors.hpp"

namespace qmv {

using word = std::uint64_t;

namespace budgets {
constexpr unsigned kWordDim = 64;         // hard cap, word width
constexpr unsigned kMaterializeDim = 30;  // full-layer / full-cube materialization
constexpr unsigned kVisibilityDelta = 24; // visibility DP state cap on |a xor b|
constexpr unsigned kObstructionDim = 14;  // subcube obstruction search
constexpr unsigned kObstructionSubcube = 6;
constexpr unsigned kEraExhaustiveDim = 14;
constexpr unsigned kVerifyDim = 10;       // full pairwise coloring verification
constexpr unsigned kExactMuDim = 4;
constexpr unsigned kHeuristicMuDim = 7;
constexpr unsigned kExactChiDim = 4;
constexpr unsigned kRamseyGround = 20;
constexpr unsigned kRamseyUniformity = 3;
constexpr unsigned kRamseyTarget = 5;
constexpr unsigned kMonoSearchDim = 12;
constexpr unsigned kMonoSubcubeDim = 6;
}  // namespace budgets

inline word full_mask(unsigned n) {
  return n >= 64 ? ~word{0} : ((word{1} << n) - 1);
}

inline unsigned popcount(word w) { return static_cast<unsigned>(__builtin_popcountll(w)); }

inline bool subset_of(word a, word b) { return (a & ~b) == 0; }

// Place the low bits of `compact` into the set positions of `mask`,
// preserving order (portable pdep).
inline word deposit_bits(word compact, word mask) {
  word out = 0;
  while (mask) {
    word low = mask & (~mask + 1);
    if (compact & 1) out |= low;
    compact >>= 1;
    mask &= mask - 1;
  }
  return out;
}

// Gosper's hack: next word with the same popcount, numerically larger.
inline word next_same_popcount(word v) {
  word c = v & (~v + 1);
  word r = v + c;
  return r | (((v ^ r) >> 2) / c);
}

// Binomial coefficients up to C(64,32); all values fit in uint64.
std::uint64_t binomial(unsigned n, unsigned k);

// Rank of a k-set within colex order of all k-subsets (combinatorial number
// system), and its inverse.
std::uint64_t colex_rank(word member);
word colex_unrank(std::uint64_t rank, unsigned k);

struct VertexSet {
  word bits = 0;
  unsigned n = 0;

  unsigned layer() const { return popcount(bits); }
  bool operator==(const VertexSet&) const = default;
};

VertexSet make_vertex(word bits, unsigned n);

struct Interval {
  VertexSet low;
  VertexSet high;

  std::uint64_t size() const { return word{1} << popcount(high.bits ^ low.bits); }
};

Interval make_interval(const VertexSet& low, const VertexSet& high);

// Interval copy {base | S : S subset of free} of Q_|free| inside Q_n.
struct Subcube {
  word base = 0;
  word free = 0;
  unsigned n = 0;

  unsigned dim() const { return popcount(free); }
  unsigned min_layer() const { return popcount(base); }
  unsigned max_layer() const { return popcount(base) + popcount(free); }
  bool operator==(const Subcube&) const = default;
};

Subcube make_subcube(word base, word free, unsigned n);

struct LayerFamily {
  unsigned n = 0;
  unsigned k = 0;
  std::vector<word> members;  // ascending == colex order, all of popcount k
};

// Validates that `members` are distinct k-sets within [n]; sorts them.
LayerFamily make_layer_family(unsigned n, unsigned k, std::vector<word> members);

unsigned distance(const VertexSet& a, const VertexSet& b);

// All C(n,k) k-subsets of [n] in colex order.
LayerFamily enumerate_layer(unsigned n, unsigned k, bool unsafe = false);

// All T with a <= T <= b and |T| = k; requires a <= b and |a| <= k <= |b|.
LayerFamily interval_middle_sets(const VertexSet& a, const VertexSet& b, unsigned k);

// Vertices of the subcube with global cardinality k.
LayerFamily subcube_layer(const Subcube& q, unsigned k);

// Textual forms: "{1,3,4}" (human) and lowercase hex "0xd" (machine).
std::string vertex_elements(word bits);
std::string vertex_hex(word bits);
// Parses either form; throws Io on malformed text.
word parse_vertex(const std::string& text);

}  // namespace qmv
