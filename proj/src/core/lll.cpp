#include "core/lll.hpp"

#include <cmath>
#include <random>

namespace qmv {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, const char* what) {
  unsigned __int128 r = static_cast<unsigned __int128>(a) * b;
  require(r <= ~std::uint64_t{0}, ErrorCode::Budget,
          std::string(what) + " overflows 64 bits at these parameters");
  return static_cast<std::uint64_t>(r);
}

}  // namespace

std::uint64_t layer_stream_seed(std::uint64_t master, unsigned k) {
  // splitmix64 finalizer over (master xor odd-constant*k)
  std::uint64_t z = master ^ (0x9e3779b97f4a7c15ULL * (k + 1));
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<Block> enumerate_blocks(unsigned n, unsigned k, unsigned g) {
  require(g >= 1, ErrorCode::InvalidArgument, "gap parameter must be >= 1");
  require(k <= n && n <= budgets::kMaterializeDim, ErrorCode::InvalidArgument,
          "block enumeration requires k <= n <= " + std::to_string(budgets::kMaterializeDim));
  std::vector<Block> out;
  if (k < g || k + g > n) return out;  // boundary layer: no pairs exist
  std::uint64_t total =
      checked_mul(binomial(n, k - g), binomial(n - (k - g), 2 * g), "block count");
  out.reserve(total);
  LayerFamily lows = enumerate_layer(n, k - g);
  for (word a : lows.members) {
    word comp = full_mask(n) & ~a;
    word s = (word{1} << (2 * g)) - 1;
    const word last = s << (popcount(comp) - 2 * g);
    for (;;) {
      out.push_back(Block{a, a | deposit_bits(s, comp)});
      if (s == last) break;
      s = next_same_popcount(s);
    }
  }
  return out;
}

LllReport lll_parameters(unsigned n, unsigned k, unsigned g) {
  require(g >= 3, ErrorCode::InvalidArgument, "gap parameter g must be >= 3");
  require(2 * g <= 64, ErrorCode::InvalidArgument, "gap parameter too large for exact binomials");
  require(n <= budgets::kWordDim, ErrorCode::InvalidArgument, "dimension must be <= 64");
  require(g <= k && k + g <= n, ErrorCode::InvalidArgument,
          "lll_parameters requires g <= k <= n-g");
  LllReport rep;
  rep.n = n;
  rep.k = k;
  rep.g = g;
  const std::uint64_t middles = binomial(2 * g, g);
  rep.p_log2 = 1 - static_cast<long long>(middles);
  rep.p = std::exp2(static_cast<double>(rep.p_log2));
  rep.d = checked_mul(middles, checked_mul(binomial(k, g), binomial(n - k, g), "dependency bound"),
                      "dependency bound");
  if (rep.p > 0.0) {
    rep.criterion = std::exp(1.0) * rep.p * (static_cast<double>(rep.d) + 1.0);
  } else {
    // log-space fallback once p underflows double range
    double log2crit = std::log2(std::exp(1.0)) + static_cast<double>(rep.p_log2) +
                      std::log2(static_cast<double>(rep.d) + 1.0);
    rep.criterion = std::exp2(log2crit);
  }
  rep.satisfied = rep.criterion <= 1.0;
  rep.block_count =
      checked_mul(binomial(n, k - g), binomial(n - (k - g), 2 * g), "block count");
  return rep;
}

namespace {

// Scans blocks in canonical order without materializing them; returns the
// first block whose C(2g,g) middle sets all carry one color.
struct BlockScanner {
  unsigned n, k, g;
  std::vector<word> lows;

  bool find_monochromatic(const std::vector<std::uint8_t>& colors, Block* out) const {
    for (word a : lows) {
      word comp = full_mask(n) & ~a;
      word s = (word{1} << (2 * g)) - 1;
      const word last = s << (popcount(comp) - 2 * g);
      for (;;) {
        word free = deposit_bits(s, comp);
        if (monochromatic(a, free, colors)) {
          *out = Block{a, a | free};
          return true;
        }
        if (s == last) break;
        s = next_same_popcount(s);
      }
    }
    return false;
  }

  bool monochromatic(word a, word free, const std::vector<std::uint8_t>& colors) const {
    word s = (word{1} << g) - 1;
    const word last = s << g;
    std::uint8_t first = 0;
    for (;;) {
      std::uint8_t c = colors[colex_rank(a | deposit_bits(s, free))];
      if (first == 0)
        first = c;
      else if (c != first)
        return false;
      if (s == last) break;
      s = next_same_popcount(s);
    }
    return true;
  }
};

}  // namespace

MtResult moser_tardos_layer_coloring(unsigned n, unsigned k, unsigned g, std::uint64_t seed,
                                     std::optional<std::uint64_t> max_rounds, bool unsafe) {
  require(g >= 3, ErrorCode::InvalidArgument, "gap parameter g must be >= 3");
  require(k <= n, ErrorCode::InvalidArgument, "layer index exceeds dimension");
  require(unsafe || n <= budgets::kMaterializeDim, ErrorCode::Budget,
          "layer materialization capped at n <= " + std::to_string(budgets::kMaterializeDim));

  MtResult out;
  const std::uint64_t size = binomial(n, k);
  if (k < g || k + g > n) {
    // No blocks exist; one color suffices.
    out.coloring = LayerColoring{n, k, 2, std::vector<std::uint8_t>(size, std::uint8_t{1})};
    out.boundary = true;
    return out;
  }

  std::mt19937_64 rng(layer_stream_seed(seed, k));
  auto draw = [&rng]() { return static_cast<std::uint8_t>(1 + (rng() & 1)); };

  std::vector<std::uint8_t> colors(size);
  for (auto& c : colors) c = draw();

  BlockScanner scanner{n, k, g, enumerate_layer(n, k - g).members};
  const std::uint64_t block_count =
      checked_mul(binomial(n, k - g), binomial(n - (k - g), 2 * g), "block count");
  const std::uint64_t round_cap =
      max_rounds ? *max_rounds : checked_mul(1000, block_count, "max_rounds");

  Block bad;
  while (scanner.find_monochromatic(colors, &bad)) {
    if (out.rounds >= round_cap)
      fail(ErrorCode::Convergence,
           "lll-not-converged: layer k=" + std::to_string(k) + " still has a monochromatic "
           "block after " + std::to_string(round_cap) + " resampling rounds");
    ++out.rounds;
    // Re-randomize exactly the C(2g,g) middle sets of the violated block.
    word free = bad.b & ~bad.a;
    word s = (word{1} << g) - 1;
    const word last = s << g;
    for (;;) {
      colors[colex_rank(bad.a | deposit_bits(s, free))] = draw();
      ++out.resamples;
      if (s == last) break;
      s = next_same_popcount(s);
    }
  }

  out.coloring = LayerColoring{n, k, 2, std::move(colors)};

  // Convergence means no monochromatic block, which is exactly property (3)
  // for both classes; re-check to guard the invariant.
  for (unsigned i = 1; i <= 2; ++i) {
    std::vector<word> members;
    for (std::size_t r = 0; r < out.coloring.colors.size(); ++r)
      if (out.coloring.colors[r] == i) members.push_back(colex_unrank(r, k));
    PropertyCheck chk = check_property_are(make_layer_family(n, k, std::move(members)), g);
    require(chk.holds, ErrorCode::Internal, "resampled class violates property (3)");
  }
  return out;
}

}  // namespace qmv
