#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wlab::lattice {

// bar = completion, tot = totalization T, jump = postfix ', hat = parallelization,
// star = finite parallelization, times = product x, compose = compositional product *.
enum class Op { atom, bar, tot, jump, hat, star, times, compose, join, meet };

struct Term {
  Op op = Op::atom;
  std::string name;  // atoms only
  std::vector<Term> args;

  std::size_t depth() const;
  bool is_bar() const { return op == Op::bar; }
};

bool operator==(const Term& a, const Term& b);
std::strong_ordering operator<=>(const Term& a, const Term& b);

Term atom(std::string name);
Term bar(Term t);  // collapses bar(bar(t))
Term tot(Term t);
Term jump(Term t);
Term hat(Term t);
Term star(Term t);
Term times(Term a, Term b);
Term compose(Term a, Term b);
Term join(Term a, Term b);
Term meet(Term a, Term b);

// bar(bar(t)) -> bar(t) everywhere.
Term canonical(const Term& t);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

class AtomTable {
 public:
  AtomTable();  // the fixed table
  void declare(const std::string& name, const std::string& pretty = "");
  bool contains(const std::string& name) const { return pretty_.count(name) > 0; }
  const std::string& pretty(const std::string& name) const;
  std::vector<std::string> names() const;
  bool is_builtin(const std::string& name) const { return builtin_.count(name) > 0; }

 private:
  std::map<std::string, std::string> pretty_;
  std::set<std::string> builtin_;
};

// Grammar, loosest first:  t |_| t, t |^| t  <  t * t  <  t x t  <  postfix '
// Primaries: ATOM, bar(t), T(t), hat(t), star(t), (t).
Term parse_term(std::string_view text, const AtomTable& atoms);
// Parses the longest term starting at pos; pos is advanced past it and any
// trailing blanks. Used by the line formats, where terms sit side by side.
Term parse_term_prefix(std::string_view text, std::size_t& pos, const AtomTable& atoms);

std::string print_term(const Term& t);
// Unicode label for diagrams.
std::string pretty_term(const Term& t, const AtomTable& atoms);

}  // namespace wlab::lattice
