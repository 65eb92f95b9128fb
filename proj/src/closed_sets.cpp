#include "wlab/closed_sets.hpp"

#include <numeric>
#include <stdexcept>

namespace wlab {

namespace {

constexpr std::size_t kMaxDyadicDepth = 62;

std::string bits(const Word& w) {
  if (w.empty()) return "e";
  std::string s;
  for (Digit d : w) s += d < 10 ? std::string(1, static_cast<char>('0' + d)) : "(" + std::to_string(d) + ")";
  return s;
}

bool is_prefix_of(const Word& w, const NameStream& x) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (x.digit(i) != w[i]) return false;
  return true;
}

std::uint64_t coprime_count(std::uint64_t q) {
  std::uint64_t c = 0;
  for (std::uint64_t p = 1; p < q; ++p)
    if (std::gcd(p, q) == 1) ++c;
  return c;
}

}  // namespace

std::optional<std::uint64_t> NatSet::least() const {
  if (!cofinite) {
    if (elems.empty()) return std::nullopt;
    return *elems.begin();
  }
  std::uint64_t n = 0;
  while (elems.count(n)) ++n;
  return n;
}

bool CylinderUnion::contains(const NameStream& x) const {
  for (const auto& w : cylinders)
    if (is_prefix_of(w, x)) return true;
  return points.count(x) > 0;
}

Rational CylinderUnion::measure() const {
  Rational m(0);
  for (const auto& w : cylinders) {
    if (w.size() > kMaxDyadicDepth) throw std::length_error("cylinder too deep for exact measure");
    m += Rational(1, std::int64_t{1} << w.size());
  }
  return m;
}

bool BaireSet::contains(const NameStream& x) const {
  for (const auto& w : removed)
    if (is_prefix_of(w, x)) return false;
  return true;
}

bool IntervalSet::contains(const Rational& x) const {
  for (const auto& p : parts)
    if (p.lo <= x && x <= p.hi) return true;
  return false;
}

std::string to_string(const ClosedSet& s) {
  struct V {
    std::string operator()(const NatSet& n) const {
      std::string body;
      for (auto e : n.elems) body += (body.empty() ? "" : ",") + std::to_string(e);
      return n.cofinite ? (n.elems.empty() ? "N" : "N\\{" + body + "}") : "{" + body + "}";
    }
    std::string operator()(const CylinderUnion& c) const {
      std::string body;
      for (const auto& w : c.cylinders) body += (body.empty() ? "" : ",") + bits(w);
      std::string out = "cyl{" + body + "}";
      for (const auto& x : c.points) out += "+{" + x.to_string() + "}";
      return out;
    }
    std::string operator()(const BaireSet& b) const {
      if (b.removed.empty()) return "NN";
      std::string body;
      for (const auto& w : b.removed) body += (body.empty() ? "" : ",") + bits(w);
      return "NN\\cyl{" + body + "}";
    }
    std::string operator()(const IntervalSet& iv) const {
      if (iv.parts.empty()) return "{}";
      std::string out;
      for (const auto& p : iv.parts)
        out += (out.empty() ? "" : "u") + ("[" + wlab::to_string(p.lo) + "," + wlab::to_string(p.hi) + "]");
      return out;
    }
  };
  return std::visit(V{}, s);
}

bool closed_set_empty(const ClosedSet& s) {
  return std::visit([](const auto& x) { return x.empty(); }, s);
}

BallCode BallCode::decode(std::uint64_t code) {
  auto [c, rest] = unpair_index(code);
  auto [i, k] = unpair_index(rest);
  return {c, i, k};
}

std::uint64_t BallCode::encode() const { return pair_index(center, pair_index(num, den_minus_one)); }

Rational BallCode::radius() const {
  if (num > static_cast<std::uint64_t>(INT64_MAX) || den_minus_one >= static_cast<std::uint64_t>(INT64_MAX))
    throw std::overflow_error("ball radius out of range");
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den_minus_one + 1));
}

BallCode BallCode::parse(std::string_view text) {
  auto colon = text.find(':');
  auto slash = text.find('/');
  if (colon == std::string_view::npos || slash == std::string_view::npos || slash < colon)
    throw std::invalid_argument("ball code must look like 'center:num/den'");
  Word c = parse_word(text.substr(0, colon));
  Word i = parse_word(text.substr(colon + 1, slash - colon - 1));
  Word d = parse_word(text.substr(slash + 1));
  if (c.size() != 1 || i.size() != 1 || d.size() != 1 || d[0] == 0)
    throw std::invalid_argument("bad ball code '" + std::string(text) + "'");
  return {c[0], i[0], d[0] - 1};
}

std::string BallCode::to_string() const {
  return std::to_string(center) + ":" + std::to_string(num) + "/" + std::to_string(den_minus_one + 1);
}

Word cantor_center(std::uint64_t n, std::size_t length) {
  // Binary expansion of n+1 without its leading 1, then zeros.
  unsigned __int128 v = static_cast<unsigned __int128>(n) + 1;
  Word w;
  int top = 127;
  while (!((v >> top) & 1)) --top;
  for (int b = top - 1; b >= 0; --b) w.push_back(static_cast<Digit>((v >> b) & 1));
  w.resize(length, 0);
  return w;
}

std::uint64_t cantor_index(const Word& w) {
  if (w.size() > 63) throw std::overflow_error("binary word too long to index");
  unsigned __int128 v = 1;
  for (Digit d : w) {
    if (d > 1) throw std::invalid_argument("non-binary digit in Cantor word");
    v = (v << 1) | d;
  }
  return static_cast<std::uint64_t>(v - 1);
}

// Words are written as Elias gamma codes of (digit+1), concatenated, behind a
// leading 1 marker; n+1 is that bit string. Every index denotes a word (a
// truncated trailing code is dropped), so the enumeration is onto but not
// injective, and it stays short for words of small digits.
Word baire_word(std::uint64_t n) {
  unsigned __int128 v = static_cast<unsigned __int128>(n) + 1;
  int top = 127;
  while (!((v >> top) & 1)) --top;
  std::vector<int> b;
  for (int i = top - 1; i >= 0; --i) b.push_back(static_cast<int>((v >> i) & 1));
  Word w;
  std::size_t i = 0;
  while (i < b.size()) {
    std::size_t z = 0;
    while (i + z < b.size() && b[i + z] == 0) ++z;
    if (i + 2 * z + 1 > b.size()) break;
    std::uint64_t x = 0;
    for (std::size_t j = 0; j <= z; ++j) x = (x << 1) | static_cast<std::uint64_t>(b[i + z + j]);
    w.push_back(x - 1);
    i += 2 * z + 1;
  }
  return w;
}

std::uint64_t baire_index(const Word& w) {
  unsigned __int128 v = 1;
  int used = 0;
  for (Digit a : w) {
    if (a == UINT64_MAX) throw std::overflow_error("digit too large to index");
    std::uint64_t x = a + 1;
    int len = 63 - __builtin_clzll(x);
    used += 2 * len + 1;
    if (used > 63) throw std::overflow_error("Baire word too long to index");
    v <<= len;
    v = (v << (len + 1)) | x;
  }
  return static_cast<std::uint64_t>(v - 1);
}

Rational interval_point(std::uint64_t n) {
  if (n < 2) return Rational(static_cast<std::int64_t>(n));
  n -= 2;
  for (std::uint64_t q = 2;; ++q) {
    for (std::uint64_t p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      if (n == 0) return Rational(static_cast<std::int64_t>(p), static_cast<std::int64_t>(q));
      --n;
    }
  }
}

std::uint64_t interval_index(const Rational& x) {
  if (x < Rational(0) || x > Rational(1)) throw std::domain_error("rational outside [0,1]");
  if (x.denominator() == 1) return static_cast<std::uint64_t>(x.numerator());
  auto q = static_cast<std::uint64_t>(x.denominator());
  auto p = static_cast<std::uint64_t>(x.numerator());
  std::uint64_t idx = 2;
  for (std::uint64_t d = 2; d < q; ++d) idx += coprime_count(d);
  for (std::uint64_t a = 1; a < p; ++a)
    if (std::gcd(a, q) == 1) ++idx;
  return idx;
}

}  // namespace wlab
