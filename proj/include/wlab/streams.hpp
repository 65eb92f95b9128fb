#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wlab {

using Digit = std::uint64_t;
using Word = std::vector<Digit>;

class Family;

std::string word_to_string(const Word& w);
Word parse_word(std::string_view text);

// Element of Baire space. Either u.v^omega in canonical form (primitive
// period, prefix not ending in the period's last digit) or a digit
// generator for step-bounded experiments.
class NameStream {
 public:
  using Generator = std::function<Digit(std::size_t)>;

  NameStream();  // the constant zero stream
  static NameStream periodic(Word prefix, Word period);
  static NameStream constant(Digit d);
  static NameStream generated(Generator g);
  // Builds the EP stream i -> f(i) from a known prefix/period bound.
  static NameStream tabulate(const std::function<Digit(std::size_t)>& f,
                             std::size_t prefix_len, std::size_t period_len);
  // "2,0,4,1;0" denotes (2,0,4,1)(0)^omega.
  static NameStream parse(std::string_view literal);

  Digit digit(std::size_t i) const;
  Word take(std::size_t n) const;

  bool is_ep() const { return !gen_; }
  const Word& prefix() const { return prefix_; }
  const Word& period() const { return period_; }
  std::size_t description_size() const { return prefix_.size() + period_.size(); }
  bool period_all_zero() const;

  // Tupled families keep their finite description for exact limits.
  const std::shared_ptr<const Family>& family() const { return family_; }
  NameStream with_family(std::shared_ptr<const Family> f) const;

  // Whether 0 occurs infinitely often. Decided from the period for EP
  // streams; generated streams need a certificate from an exact analysis.
  bool infinitely_many_zeros() const;
  NameStream with_zero_recurrence(bool infinite) const;

  std::string to_string() const;

  // Equality is only defined on EP streams; throws std::logic_error otherwise.
  bool operator==(const NameStream& other) const;
  bool operator<(const NameStream& other) const;

 private:
  Word prefix_;
  Word period_;
  Generator gen_;
  std::shared_ptr<const Family> family_;
  std::optional<bool> zero_recurrence_;
};

void canonicalize(Word& prefix, Word& period);

struct MinusOneResult {
  enum class Kind { finite, infinite };
  Kind kind = Kind::finite;
  Word word;
  NameStream stream;
  bool is_finite() const { return kind == Kind::finite; }
};

// Concatenation of p(i)-1 over all i, zeros contributing nothing.
MinusOneResult minus_one(const NameStream& p);
Word minus_one(const Word& w);
NameStream plus_one_embed(const NameStream& q);
Word plus_one_embed(const Word& w);

// Interleaving: result(2n)=p(n), result(2n+1)=q(n).
NameStream pair(const NameStream& p, const NameStream& q);
NameStream project_left(const NameStream& s);
NameStream project_right(const NameStream& s);

// Cantor pairing on N^2.
std::uint64_t pair_index(std::uint64_t i, std::uint64_t j);
std::pair<std::uint64_t, std::uint64_t> unpair_index(std::uint64_t n);

// result(<i,j>) = ps(i)(j).
NameStream tuple_infinite(const Family& ps);
NameStream project_component(const NameStream& s, std::uint64_t i);

}  // namespace wlab
