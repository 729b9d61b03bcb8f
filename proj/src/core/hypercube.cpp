#include "core/hypercube.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace qmv {

namespace {

struct BinomialTable {
  std::array<std::array<std::uint64_t, 65>, 65> c{};
  BinomialTable() {
    for (unsigned n = 0; n <= 64; ++n) {
      c[n][0] = 1;
      for (unsigned k = 1; k <= n; ++k)
        c[n][k] = c[n - 1][k - 1] + (k <= n - 1 ? c[n - 1][k] : 0);
    }
  }
};

const BinomialTable& table() {
  static const BinomialTable t;
  return t;
}

}  // namespace

std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n || n > 64) return 0;
  return table().c[n][k];
}

std::uint64_t colex_rank(word member) {
  std::uint64_t r = 0;
  unsigned i = 1;
  while (member) {
    unsigned p = static_cast<unsigned>(__builtin_ctzll(member));
    r += binomial(p, i);
    member &= member - 1;
    ++i;
  }
  return r;
}

word colex_unrank(std::uint64_t rank, unsigned k) {
  word out = 0;
  for (unsigned i = k; i >= 1; --i) {
    unsigned p = i - 1;
    while (p + 1 <= 64 && binomial(p + 1, i) <= rank) ++p;
    out |= word{1} << p;
    rank -= binomial(p, i);
  }
  return out;
}

VertexSet make_vertex(word bits, unsigned n) {
  require(n >= 1 && n <= budgets::kWordDim, ErrorCode::InvalidArgument,
          "dimension must be in [1,64], got " + std::to_string(n));
  require(subset_of(bits, full_mask(n)), ErrorCode::InvalidArgument,
          "vertex " + vertex_hex(bits) + " has bits beyond dimension " + std::to_string(n));
  return VertexSet{bits, n};
}

Interval make_interval(const VertexSet& low, const VertexSet& high) {
  require(low.n == high.n, ErrorCode::InvalidArgument, "interval endpoints disagree on dimension");
  require(subset_of(low.bits, high.bits), ErrorCode::InvalidArgument,
          "interval requires low <= high");
  return Interval{low, high};
}

Subcube make_subcube(word base, word free, unsigned n) {
  require(n >= 1 && n <= budgets::kWordDim, ErrorCode::InvalidArgument,
          "dimension must be in [1,64]");
  require(subset_of(base | free, full_mask(n)), ErrorCode::InvalidArgument,
          "subcube exceeds dimension " + std::to_string(n));
  require((base & free) == 0, ErrorCode::InvalidArgument, "subcube base and free sets overlap");
  return Subcube{base, free, n};
}

LayerFamily make_layer_family(unsigned n, unsigned k, std::vector<word> members) {
  require(n >= 1 && n <= budgets::kWordDim, ErrorCode::InvalidArgument,
          "dimension must be in [1,64]");
  require(k <= n, ErrorCode::InvalidArgument, "layer index exceeds dimension");
  std::sort(members.begin(), members.end());
  for (std::size_t i = 0; i < members.size(); ++i) {
    require(subset_of(members[i], full_mask(n)), ErrorCode::InvalidArgument,
            "family member outside ground set");
    require(popcount(members[i]) == k, ErrorCode::InvalidArgument,
            "family member " + vertex_hex(members[i]) + " is not a " + std::to_string(k) + "-set");
    require(i == 0 || members[i] != members[i - 1], ErrorCode::InvalidArgument,
            "duplicate family member");
  }
  return LayerFamily{n, k, std::move(members)};
}

unsigned distance(const VertexSet& a, const VertexSet& b) {
  require(a.n == b.n, ErrorCode::InvalidArgument,
          "distance: dimension mismatch (" + std::to_string(a.n) + " vs " + std::to_string(b.n) + ")");
  return popcount(a.bits ^ b.bits);
}

LayerFamily enumerate_layer(unsigned n, unsigned k, bool unsafe) {
  require(n >= 1 && n <= budgets::kWordDim, ErrorCode::InvalidArgument,
          "dimension must be in [1,64]");
  require(k <= n, ErrorCode::InvalidArgument,
          "layer index " + std::to_string(k) + " out of range for n=" + std::to_string(n));
  require(unsafe || n <= budgets::kMaterializeDim, ErrorCode::Budget,
          "n=" + std::to_string(n) + " too large for layer materialization (cap " +
              std::to_string(budgets::kMaterializeDim) + "; pass unsafe to override)");
  LayerFamily out;
  out.n = n;
  out.k = k;
  out.members.reserve(binomial(n, k));
  if (k == 0) {
    out.members.push_back(0);
    return out;
  }
  word v = (word{1} << k) - 1;
  word last = v << (n - k);
  for (;;) {
    out.members.push_back(v);
    if (v == last) break;
    v = next_same_popcount(v);
  }
  return out;
}

LayerFamily interval_middle_sets(const VertexSet& a, const VertexSet& b, unsigned k) {
  Interval iv = make_interval(a, b);
  unsigned la = iv.low.layer(), lb = iv.high.layer();
  require(la <= k && k <= lb, ErrorCode::InvalidArgument,
          "middle layer " + std::to_string(k) + " outside [" + std::to_string(la) + "," +
              std::to_string(lb) + "]");
  word free = iv.high.bits ^ iv.low.bits;
  unsigned pick = k - la;
  LayerFamily out;
  out.n = a.n;
  out.k = k;
  out.members.reserve(binomial(lb - la, pick));
  if (pick == 0) {
    out.members.push_back(iv.low.bits);
    return out;
  }
  word s = (word{1} << pick) - 1;
  word sl = s << (lb - la - pick);
  for (;;) {
    out.members.push_back(iv.low.bits | deposit_bits(s, free));
    if (s == sl) break;
    s = next_same_popcount(s);
  }
  return out;
}

LayerFamily subcube_layer(const Subcube& q, unsigned k) {
  require(q.min_layer() <= k && k <= q.max_layer(), ErrorCode::InvalidArgument,
          "layer " + std::to_string(k) + " outside subcube weight range [" +
              std::to_string(q.min_layer()) + "," + std::to_string(q.max_layer()) + "]");
  VertexSet lo{q.base, q.n};
  VertexSet hi{q.base | q.free, q.n};
  return interval_middle_sets(lo, hi, k);
}

std::string vertex_elements(word bits) {
  std::string out = "{";
  bool first = true;
  while (bits) {
    unsigned p = static_cast<unsigned>(__builtin_ctzll(bits));
    if (!first) out += ',';
    out += std::to_string(p + 1);
    first = false;
    bits &= bits - 1;
  }
  out += '}';
  return out;
}

std::string vertex_hex(word bits) {
  std::ostringstream os;
  os << "0x" << std::hex << bits;
  return os.str();
}

word parse_vertex(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  require(!s.empty(), ErrorCode::Io, "empty vertex text");
  if (s.rfind("0x", 0) == 0 || s.rfind("0X", 0) == 0) {
    require(s.size() > 2, ErrorCode::Io, "malformed hex vertex '" + text + "'");
    word v = 0;
    for (std::size_t i = 2; i < s.size(); ++i) {
      char c = static_cast<char>(std::tolower(static_cast<unsigned char>(s[i])));
      int digit;
      if (c >= '0' && c <= '9') digit = c - '0';
      else if (c >= 'a' && c <= 'f') digit = 10 + (c - 'a');
      else fail(ErrorCode::Io, "malformed hex vertex '" + text + "'");
      require(!(v >> 60), ErrorCode::Io, "hex vertex overflows 64 bits: '" + text + "'");
      v = (v << 4) | static_cast<word>(digit);
    }
    return v;
  }
  if (s.front() == '{' && s.back() == '}') {
    word v = 0;
    std::string body = s.substr(1, s.size() - 2);
    if (body.empty()) return 0;
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      require(!tok.empty(), ErrorCode::Io, "malformed element list '" + text + "'");
      for (char c : tok)
        require(std::isdigit(static_cast<unsigned char>(c)), ErrorCode::Io,
                "malformed element list '" + text + "'");
      unsigned long e = std::stoul(tok);
      require(e >= 1 && e <= 64, ErrorCode::Io,
              "element " + tok + " out of [1,64] in '" + text + "'");
      word bit = word{1} << (e - 1);
      require(!(v & bit), ErrorCode::Io, "repeated element " + tok + " in '" + text + "'");
      v |= bit;
    }
    return v;
  }
  fail(ErrorCode::Io, "unrecognized vertex syntax '" + text + "' (want 0x.. or {i,j,..})");
}

}  // namespace qmv
