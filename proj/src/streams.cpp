#include "wlab/streams.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "wlab/family.hpp"

namespace wlab {

namespace {

constexpr std::size_t kSearchBound = 1u << 20;

bool is_power_of(const Word& v, std::size_t d) {
  for (std::size_t i = d; i < v.size(); ++i)
    if (v[i] != v[i - d]) return false;
  return true;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

std::string word_to_string(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(w[i]);
  }
  return out;
}

Word parse_word(std::string_view text) {
  Word w;
  std::string t = trim(text);
  if (t.empty()) return w;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = t.find(',', pos);
    std::string tok = trim(std::string_view(t).substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
    Digit d = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), d);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
      throw std::invalid_argument("bad digit '" + tok + "' at offset " + std::to_string(pos));
    w.push_back(d);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return w;
}

void canonicalize(Word& u, Word& v) {
  if (v.empty()) throw std::invalid_argument("empty period");
  const std::size_t n = v.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d == 0 && is_power_of(v, d)) {
      v.resize(d);
      break;
    }
  }
  while (!u.empty() && u.back() == v.back()) {
    u.pop_back();
    std::rotate(v.rbegin(), v.rbegin() + 1, v.rend());
  }
}

NameStream::NameStream() : period_{0} {}

NameStream NameStream::periodic(Word prefix, Word period) {
  canonicalize(prefix, period);
  NameStream s;
  s.prefix_ = std::move(prefix);
  s.period_ = std::move(period);
  return s;
}

NameStream NameStream::constant(Digit d) { return periodic({}, {d}); }

NameStream NameStream::generated(Generator g) {
  NameStream s;
  s.period_.clear();
  s.gen_ = std::move(g);
  return s;
}

NameStream NameStream::tabulate(const std::function<Digit(std::size_t)>& f,
                                std::size_t prefix_len, std::size_t period_len) {
  Word u, v;
  for (std::size_t i = 0; i < prefix_len; ++i) u.push_back(f(i));
  for (std::size_t i = 0; i < period_len; ++i) v.push_back(f(prefix_len + i));
  return periodic(std::move(u), std::move(v));
}

NameStream NameStream::parse(std::string_view literal) {
  auto semi = literal.find(';');
  if (semi == std::string_view::npos)
    throw std::invalid_argument("stream literal needs 'prefix;period': " + std::string(literal));
  if (literal.find(';', semi + 1) != std::string_view::npos)
    throw std::invalid_argument("stream literal has more than one ';' at offset " +
                                std::to_string(literal.find(';', semi + 1)));
  Word u = parse_word(literal.substr(0, semi));
  Word v = parse_word(literal.substr(semi + 1));
  if (v.empty()) throw std::invalid_argument("stream literal has empty period at offset " + std::to_string(semi + 1));
  return periodic(std::move(u), std::move(v));
}

Digit NameStream::digit(std::size_t i) const {
  if (gen_) return gen_(i);
  if (i < prefix_.size()) return prefix_[i];
  return period_[(i - prefix_.size()) % period_.size()];
}

Word NameStream::take(std::size_t n) const {
  Word w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = digit(i);
  return w;
}

bool NameStream::period_all_zero() const {
  if (gen_) throw std::logic_error("period of a generated stream");
  return std::all_of(period_.begin(), period_.end(), [](Digit d) { return d == 0; });
}

NameStream NameStream::with_family(std::shared_ptr<const Family> f) const {
  NameStream s = *this;
  s.family_ = std::move(f);
  return s;
}

bool NameStream::infinitely_many_zeros() const {
  if (!gen_) return std::find(period_.begin(), period_.end(), 0) != period_.end();
  if (!zero_recurrence_) throw std::logic_error("zero recurrence of a generated stream is unknown");
  return *zero_recurrence_;
}

NameStream NameStream::with_zero_recurrence(bool infinite) const {
  NameStream s = *this;
  s.zero_recurrence_ = infinite;
  return s;
}

std::string NameStream::to_string() const {
  if (gen_) return family_ ? "tuple(" + family_->to_string() + ")" : "<generated>";
  return word_to_string(prefix_) + ";" + word_to_string(period_);
}

bool NameStream::operator==(const NameStream& o) const {
  if (gen_ || o.gen_) throw std::logic_error("equality of generated streams is undecidable");
  return prefix_ == o.prefix_ && period_ == o.period_;
}

bool NameStream::operator<(const NameStream& o) const {
  if (gen_ || o.gen_) throw std::logic_error("ordering of generated streams");
  if (prefix_ != o.prefix_) return prefix_ < o.prefix_;
  return period_ < o.period_;
}

Word minus_one(const Word& w) {
  Word out;
  for (Digit d : w)
    if (d) out.push_back(d - 1);
  return out;
}

Word plus_one_embed(const Word& w) {
  Word out(w);
  for (Digit& d : out) ++d;
  return out;
}

MinusOneResult minus_one(const NameStream& p) {
  MinusOneResult r;
  if (p.is_ep()) {
    if (p.period_all_zero()) {
      r.kind = MinusOneResult::Kind::finite;
      r.word = minus_one(p.prefix());
      return r;
    }
    r.kind = MinusOneResult::Kind::infinite;
    r.stream = NameStream::periodic(minus_one(p.prefix()), minus_one(p.period()));
    return r;
  }
  // Lazy: digit i is the (i+1)-th nonzero digit of p, minus one.
  struct Cache {
    std::mutex m;
    Word out;
    std::size_t scanned = 0;
  };
  auto cache = std::make_shared<Cache>();
  r.kind = MinusOneResult::Kind::infinite;
  r.stream = NameStream::generated([p, cache](std::size_t i) -> Digit {
    std::lock_guard lock(cache->m);
    std::size_t misses = 0;
    while (cache->out.size() <= i) {
      Digit d = p.digit(cache->scanned++);
      if (d) {
        cache->out.push_back(d - 1);
        misses = 0;
      } else if (++misses > kSearchBound) {
        throw std::runtime_error("no further non-zero digit within search bound");
      }
    }
    return cache->out[i];
  });
  return r;
}

NameStream plus_one_embed(const NameStream& q) {
  if (q.is_ep()) return NameStream::periodic(plus_one_embed(q.prefix()), plus_one_embed(q.period()));
  return NameStream::generated([q](std::size_t i) { return q.digit(i) + 1; });
}

NameStream pair(const NameStream& p, const NameStream& q) {
  auto f = [&](std::size_t i) { return i % 2 ? q.digit(i / 2) : p.digit(i / 2); };
  if (p.is_ep() && q.is_ep()) {
    std::size_t pre = 2 * std::max(p.prefix().size(), q.prefix().size());
    std::size_t per = 2 * std::lcm(p.period().size(), q.period().size());
    return NameStream::tabulate(f, pre, per);
  }
  return NameStream::generated([p, q](std::size_t i) { return i % 2 ? q.digit(i / 2) : p.digit(i / 2); });
}

NameStream project_left(const NameStream& s) {
  if (s.is_ep())
    return NameStream::tabulate([&](std::size_t i) { return s.digit(2 * i); }, (s.prefix().size() + 1) / 2,
                                s.period().size());
  return NameStream::generated([s](std::size_t i) { return s.digit(2 * i); });
}

NameStream project_right(const NameStream& s) {
  if (s.is_ep())
    return NameStream::tabulate([&](std::size_t i) { return s.digit(2 * i + 1); }, (s.prefix().size() + 1) / 2,
                                s.period().size());
  return NameStream::generated([s](std::size_t i) { return s.digit(2 * i + 1); });
}

std::uint64_t pair_index(std::uint64_t i, std::uint64_t j) {
  unsigned __int128 s = static_cast<unsigned __int128>(i) + j;
  unsigned __int128 r = s * (s + 1) / 2 + j;
  if (r > UINT64_MAX) throw std::overflow_error("pair index overflow");
  return static_cast<std::uint64_t>(r);
}

std::pair<std::uint64_t, std::uint64_t> unpair_index(std::uint64_t n) {
  auto tri = [](unsigned __int128 w) { return w * (w + 1) / 2; };
  unsigned __int128 w = static_cast<unsigned __int128>((std::sqrt(8.0L * n + 1) - 1) / 2);
  while (tri(w) > n) --w;
  while (tri(w + 1) <= n) ++w;
  std::uint64_t j = static_cast<std::uint64_t>(n - tri(w));
  return {static_cast<std::uint64_t>(w) - j, j};
}

NameStream tuple_infinite(const Family& ps) {
  auto f = std::make_shared<const Family>(ps);
  if (auto c = f->constant_digit()) return NameStream::constant(*c).with_family(f);
  return NameStream::generated([f](std::size_t n) {
           auto [i, j] = unpair_index(n);
           return f->entry(i, j);
         })
      .with_family(f);
}

NameStream project_component(const NameStream& s, std::uint64_t i) {
  if (s.family()) return s.family()->component(i);
  if (s.is_ep() && s.prefix().empty() && s.period().size() == 1) return s;
  return NameStream::generated([s, i](std::size_t j) { return s.digit(pair_index(i, j)); });
}

}  // namespace wlab
