#include "wlab/lattice/term.hpp"

#include <algorithm>
#include <cctype>

namespace wlab::lattice {

std::size_t Term::depth() const {
  std::size_t d = 0;
  for (const auto& a : args) d = std::max(d, a.depth());
  return d + 1;
}

bool operator==(const Term& a, const Term& b) { return a.op == b.op && a.name == b.name && a.args == b.args; }

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (auto c = a.op <=> b.op; c != 0) return c;
  if (auto c = a.name <=> b.name; c != 0) return c;
  return std::lexicographical_compare_three_way(a.args.begin(), a.args.end(), b.args.begin(), b.args.end());
}

namespace {

Term unary(Op op, Term t) {
  Term r;
  r.op = op;
  r.args.push_back(std::move(t));
  return r;
}

Term binary(Op op, Term a, Term b) {
  Term r;
  r.op = op;
  r.args.push_back(std::move(a));
  r.args.push_back(std::move(b));
  return r;
}

}  // namespace

Term atom(std::string name) {
  Term t;
  t.name = std::move(name);
  return t;
}
Term bar(Term t) { return t.is_bar() ? t : unary(Op::bar, std::move(t)); }
Term tot(Term t) { return unary(Op::tot, std::move(t)); }
Term jump(Term t) { return unary(Op::jump, std::move(t)); }
Term hat(Term t) { return unary(Op::hat, std::move(t)); }
Term star(Term t) { return unary(Op::star, std::move(t)); }
Term times(Term a, Term b) { return binary(Op::times, std::move(a), std::move(b)); }
Term compose(Term a, Term b) { return binary(Op::compose, std::move(a), std::move(b)); }
Term join(Term a, Term b) { return binary(Op::join, std::move(a), std::move(b)); }
Term meet(Term a, Term b) { return binary(Op::meet, std::move(a), std::move(b)); }

Term canonical(const Term& t) {
  Term r = t;
  for (auto& a : r.args) a = canonical(a);
  if (r.op == Op::bar && r.args[0].is_bar()) return r.args[0];
  return r;
}

// Atom table ---------------------------------------------------------------

AtomTable::AtomTable() {
  const std::pair<const char*, const char*> fixed[] = {
      {"C_0", "C₀"},        {"C_1", "C₁"},          {"C_2", "C₂"},        {"C_3", "C₃"},
      {"C_4", "C₄"},        {"C_5", "C₅"},          {"C_N", "C_ℕ"},       {"K_N", "K_ℕ"},
      {"C_2N", "C_{2^ℕ}"},  {"PC_2N", "PC_{2^ℕ}"},  {"PCC_01", "PCC_[0,1]"}, {"ConC_01", "ConC_[0,1]"},
      {"C_R", "C_ℝ"},       {"PC_R", "PC_ℝ"},       {"C_NN", "C_{ℕ^ℕ}"},  {"LPO", "LPO"},
      {"LPO_S", "LPO_𝕊"},   {"lim", "lim"},         {"Low", "Low"},       {"Low_2", "Low₂"},
      {"SORT", "SORT"},     {"WBWT_2", "WBWT₂"},    {"BWT_2", "BWT₂"},    {"J", "J"},
      {"J_inv", "J⁻¹"},     {"INF", "INF"},         {"INF_S", "INF_𝕊"},   {"NEG", "NEG"},
      {"WFT", "WFT"},       {"WFT_S", "WFT_𝕊"},     {"id", "id"},
  };
  for (const auto& [n, p] : fixed) {
    pretty_[n] = p;
    builtin_.insert(n);
  }
}

void AtomTable::declare(const std::string& name, const std::string& pretty) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0])) || name == "x" || name == "bar" ||
      name == "T" || name == "hat" || name == "star")
    throw std::invalid_argument("bad atom name '" + name + "'");
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') throw std::invalid_argument("bad atom name '" + name + "'");
  pretty_[name] = pretty.empty() ? name : pretty;
}

const std::string& AtomTable::pretty(const std::string& name) const {
  auto it = pretty_.find(name);
  if (it == pretty_.end()) throw std::out_of_range("unknown atom '" + name + "'");
  return it->second;
}

std::vector<std::string> AtomTable::names() const {
  std::vector<std::string> out;
  for (const auto& [n, p] : pretty_) out.push_back(n);
  return out;
}

// Parser ---------------------------------------------------------------------

namespace {

class Parser {
 public:
  Parser(std::string_view s, std::size_t pos, const AtomTable& atoms) : s_(s), pos_(pos), atoms_(atoms) {}

  Term lattice() {
    Term t = product();
    for (;;) {
      skip();
      if (at("|_|")) {
        pos_ += 3;
        t = join(std::move(t), product());
      } else if (at("|^|")) {
        pos_ += 3;
        t = meet(std::move(t), product());
      } else {
        return t;
      }
    }
  }

  std::size_t pos() {
    skip();
    return pos_;
  }

 private:
  Term product() {
    Term t = cross();
    for (;;) {
      skip();
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        t = compose(std::move(t), cross());
      } else {
        return t;
      }
    }
  }

  Term cross() {
    Term t = postfix();
    for (;;) {
      skip();
      std::size_t save = pos_;
      if (ident() == "x") {
        t = times(std::move(t), postfix());
      } else {
        pos_ = save;
        return t;
      }
    }
  }

  Term postfix() {
    Term t = primary();
    while (pos_ < s_.size() && s_[pos_] == '\'') {
      ++pos_;
      t = jump(std::move(t));
    }
    return t;
  }

  Term primary() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of term", pos_);
    if (s_[pos_] == '(') {
      ++pos_;
      Term t = lattice();
      expect(')');
      return t;
    }
    std::size_t start = pos_;
    std::string id = ident();
    if (id.empty()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    if (id == "bar" || id == "T" || id == "hat" || id == "star") {
      skip();
      expect('(');
      Term inner = lattice();
      expect(')');
      if (id == "bar") return bar(std::move(inner));
      if (id == "T") return tot(std::move(inner));
      if (id == "hat") return hat(std::move(inner));
      return star(std::move(inner));
    }
    if (id == "x") throw ParseError("operator x where a term was expected", start);
    if (!atoms_.contains(id)) throw ParseError("unknown atom '" + id + "'", start);
    return atom(id);
  }

  std::string ident() {
    std::size_t start = pos_;
    if (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    }
    return std::string(s_.substr(start, pos_ - start));
  }

  void expect(char c) {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != c) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  bool at(std::string_view tok) const { return s_.substr(pos_, tok.size()) == tok; }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::string_view s_;
  std::size_t pos_;
  const AtomTable& atoms_;
};

int precedence(Op op) {
  switch (op) {
    case Op::join:
    case Op::meet:
      return 1;
    case Op::compose:
      return 2;
    case Op::times:
      return 3;
    default:
      return 4;
  }
}

const char* infix(Op op) {
  switch (op) {
    case Op::join:
      return " |_| ";
    case Op::meet:
      return " |^| ";
    case Op::compose:
      return " * ";
    default:
      return " x ";
  }
}

const char* function_name(Op op) {
  switch (op) {
    case Op::bar:
      return "bar";
    case Op::tot:
      return "T";
    case Op::hat:
      return "hat";
    default:
      return "star";
  }
}

std::string print_at(const Term& t, int min_prec, const AtomTable* atoms) {
  std::string s;
  switch (t.op) {
    case Op::atom:
      return atoms ? atoms->pretty(t.name) : t.name;
    case Op::jump:
      s = print_at(t.args[0], 4, atoms) + (atoms ? "′" : "'");
      break;
    case Op::bar:
    case Op::tot:
    case Op::hat:
    case Op::star:
      s = std::string(function_name(t.op)) + "(" + print_at(t.args[0], 0, atoms) + ")";
      break;
    default: {
      int p = precedence(t.op);
      s = print_at(t.args[0], p, atoms) + infix(t.op) + print_at(t.args[1], p + 1, atoms);
      if (p < min_prec) s = "(" + s + ")";
      return s;
    }
  }
  return s;
}

}  // namespace

Term parse_term_prefix(std::string_view text, std::size_t& pos, const AtomTable& atoms) {
  Parser p(text, pos, atoms);
  Term t = p.lattice();
  pos = p.pos();
  return canonical(t);
}

Term parse_term(std::string_view text, const AtomTable& atoms) {
  std::size_t pos = 0;
  Term t = parse_term_prefix(text, pos, atoms);
  if (pos != text.size()) throw ParseError("trailing input", pos);
  return t;
}

std::string print_term(const Term& t) { return print_at(t, 0, nullptr); }

std::string pretty_term(const Term& t, const AtomTable& atoms) { return print_at(t, 0, &atoms); }

}  // namespace wlab::lattice
