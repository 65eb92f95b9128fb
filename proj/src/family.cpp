#include "wlab/family.hpp"

#include <algorithm>
#include <stdexcept>

namespace wlab {

namespace {

constexpr unsigned __int128 kMaterializeBound = 10'000'000;

PumpedComponent fold_head(PumpedComponent c) {
  if (!c.pump.empty() || c.head.empty()) return c;
  Word u = c.head;
  u.insert(u.end(), c.tail.prefix().begin(), c.tail.prefix().end());
  c.tail = NameStream::periodic(std::move(u), c.tail.period());
  c.head.clear();
  return c;
}

PumpedComponent parse_component(std::string_view text) {
  PumpedComponent c;
  auto lt = text.find('<');
  if (lt == std::string_view::npos) {
    c.tail = NameStream::parse(text);
    return c;
  }
  auto gt = text.find('>', lt);
  if (gt == std::string_view::npos) throw std::invalid_argument("unterminated pump in '" + std::string(text) + "'");
  c.head = parse_word(text.substr(0, lt));
  c.pump = parse_word(text.substr(lt + 1, gt - lt - 1));
  c.tail = NameStream::parse(text.substr(gt + 1));
  return fold_head(std::move(c));
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    auto k = s.find(sep, pos);
    out.push_back(s.substr(pos, k == std::string_view::npos ? std::string_view::npos : k - pos));
    if (k == std::string_view::npos) break;
    pos = k + 1;
  }
  return out;
}

std::string component_string(const PumpedComponent& c) {
  if (c.pump.empty()) return c.tail.to_string();
  return word_to_string(c.head) + "<" + word_to_string(c.pump) + ">" + c.tail.to_string();
}

bool all_equal(const Word& w, Digit d) {
  for (Digit x : w)
    if (x != d) return false;
  return true;
}

}  // namespace

NameStream PumpedComponent::at(std::uint64_t t) const {
  if (pump.empty()) {
    if (head.empty()) return tail;
    return fold_head(*this).tail;
  }
  if (static_cast<unsigned __int128>(t) * pump.size() > kMaterializeBound)
    throw std::length_error("family component too long to materialize");
  Word u = head;
  for (std::uint64_t k = 0; k < t; ++k) u.insert(u.end(), pump.begin(), pump.end());
  u.insert(u.end(), tail.prefix().begin(), tail.prefix().end());
  return NameStream::periodic(std::move(u), tail.period());
}

Digit PumpedComponent::digit(std::uint64_t t, std::uint64_t j) const {
  if (j < head.size()) return head[j];
  unsigned __int128 rest = j - head.size();
  unsigned __int128 pumped = static_cast<unsigned __int128>(t) * pump.size();
  if (rest < pumped) return pump[static_cast<std::size_t>(rest % pump.size())];
  return tail.digit(static_cast<std::size_t>(rest - pumped));
}

NameStream PumpedComponent::limit() const {
  if (!pump.empty()) return NameStream::periodic(head, pump);
  return at(0);
}

bool PumpedComponent::operator==(const PumpedComponent& o) const {
  return head == o.head && pump == o.pump && tail == o.tail;
}

Family::Family() : period_{PumpedComponent{{}, {}, NameStream::constant(0)}} {}

Family::Family(std::vector<NameStream> prefix, std::vector<PumpedComponent> period)
    : prefix_(std::move(prefix)), period_(std::move(period)) {
  if (period_.empty()) throw std::invalid_argument("family needs at least one repeating component");
  for (const auto& s : prefix_)
    if (!s.is_ep()) throw std::invalid_argument("family components must be eventually periodic");
  for (auto& c : period_) {
    if (!c.tail.is_ep()) throw std::invalid_argument("family components must be eventually periodic");
    c = fold_head(std::move(c));
  }
}

namespace {

bool word_has(const Word& w, Digit d) { return std::find(w.begin(), w.end(), d) != w.end(); }
bool stream_has(const NameStream& s, Digit d) { return word_has(s.prefix(), d) || word_has(s.period(), d); }

Word map_word(const Word& w, Digit (*f)(Digit)) {
  Word out;
  out.reserve(w.size());
  for (Digit x : w) out.push_back(f(x));
  return out;
}

NameStream map_stream(const NameStream& s, Digit (*f)(Digit)) {
  return NameStream::periodic(map_word(s.prefix(), f), map_word(s.period(), f));
}

}  // namespace

bool Family::has_digit(Digit d) const {
  for (const auto& s : prefix_)
    if (stream_has(s, d)) return true;
  for (const auto& c : period_)
    if (word_has(c.head, d) || word_has(c.pump, d) || stream_has(c.tail, d)) return true;
  return false;
}

Family Family::map_digits(Digit (*f)(Digit)) const {
  std::vector<NameStream> prefix;
  for (const auto& s : prefix_) prefix.push_back(map_stream(s, f));
  std::vector<PumpedComponent> period;
  for (const auto& c : period_) period.push_back({map_word(c.head, f), map_word(c.pump, f), map_stream(c.tail, f)});
  return Family(std::move(prefix), std::move(period));
}

Family Family::constant(const NameStream& s) { return Family({}, {PumpedComponent{{}, {}, s}}); }

Family Family::eventually(std::vector<NameStream> prefix, std::vector<NameStream> period) {
  std::vector<PumpedComponent> comps;
  for (auto& s : period) comps.push_back(PumpedComponent{{}, {}, std::move(s)});
  return Family(std::move(prefix), std::move(comps));
}

Family Family::parse(std::string_view literal) {
  std::vector<std::string_view> lead, rep;
  auto at = literal.find('@');
  if (at != std::string_view::npos) {
    if (literal.find('@', at + 1) != std::string_view::npos)
      throw std::invalid_argument("family literal has more than one '@'");
    if (at > 0) lead = split(literal.substr(0, at), '|');
    rep = split(literal.substr(at + 1), '|');
  } else {
    lead = split(literal, '|');
    rep.push_back(lead.back());
    lead.pop_back();
  }
  std::vector<NameStream> prefix;
  for (auto part : lead) {
    if (part.find('<') != std::string_view::npos)
      throw std::invalid_argument("pumped components are only allowed after '@'");
    prefix.push_back(NameStream::parse(part));
  }
  std::vector<PumpedComponent> period;
  for (auto part : rep) period.push_back(parse_component(part));
  return Family(std::move(prefix), std::move(period));
}

NameStream Family::component(std::uint64_t i) const {
  if (i < prefix_.size()) return prefix_[i];
  std::uint64_t k = i - prefix_.size();
  return period_[k % period_.size()].at(k / period_.size());
}

Digit Family::entry(std::uint64_t i, std::uint64_t j) const {
  if (i < prefix_.size()) return prefix_[i].digit(j);
  std::uint64_t k = i - prefix_.size();
  return period_[k % period_.size()].digit(k / period_.size(), j);
}

std::optional<NameStream> Family::limit() const {
  NameStream first = period_.front().limit();
  for (std::size_t r = 1; r < period_.size(); ++r)
    if (!(period_[r].limit() == first)) return std::nullopt;
  return first;
}

std::optional<Digit> Family::constant_digit() const {
  auto single = [](const NameStream& s) -> std::optional<Digit> {
    if (s.prefix().empty() && s.period().size() == 1) return s.period()[0];
    return std::nullopt;
  };
  auto c = single(period_.front().tail);
  if (!c) return std::nullopt;
  for (const auto& s : prefix_)
    if (single(s) != c) return std::nullopt;
  for (const auto& p : period_)
    if (single(p.tail) != c || !all_equal(p.head, *c) || !all_equal(p.pump, *c)) return std::nullopt;
  return c;
}

std::string Family::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < prefix_.size(); ++i) {
    if (i) out += '|';
    out += prefix_[i].to_string();
  }
  out += '@';
  for (std::size_t i = 0; i < period_.size(); ++i) {
    if (i) out += '|';
    out += component_string(period_[i]);
  }
  return out;
}

bool Family::operator==(const Family& o) const { return prefix_ == o.prefix_ && period_ == o.period_; }

}  // namespace wlab
