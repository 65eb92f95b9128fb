#include "wlab/lattice/kb.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace wlab::lattice {

namespace {

const char* const kPredNames[kPredCount] = {
    "complete", "strongly_complete", "co_complete", "strongly_co_complete", "co_total", "strongly_co_total",
    "diverse",  "single_valued_nonconstant", "pointed", "idempotent", "cylinder", "total_fractal",
};

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// Splits `body ; "citation"`.
std::pair<std::string, std::string> split_citation(const std::string& line, const std::string& source, int n) {
  std::size_t semi = line.find(';');
  if (semi == std::string::npos) throw KbError(source, n, "missing '; \"citation\"'");
  std::string cite = trim(line.substr(semi + 1));
  if (cite.size() < 2 || cite.front() != '"' || cite.back() != '"')
    throw KbError(source, n, "citation must be a quoted string");
  cite = cite.substr(1, cite.size() - 2);
  if (cite.empty()) throw KbError(source, n, "empty citation");
  return {line.substr(0, semi), cite};
}

Term term_at(const std::string& text, std::size_t& pos, const AtomTable& atoms, const std::string& source, int n) {
  try {
    return parse_term_prefix(text, pos, atoms);
  } catch (const ParseError& e) {
    throw KbError(source, n, e.what());
  }
}

std::string word_at(const std::string& text, std::size_t& pos) {
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  std::size_t start = pos;
  while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  return text.substr(start, pos - start);
}

}  // namespace

std::string order_name(Order o) {
  switch (o) {
    case Order::W:
      return "W";
    case Order::SW:
      return "SW";
    case Order::TW:
      return "TW";
    default:
      return "STW";
  }
}

std::optional<Order> parse_order(std::string_view s) {
  for (Order o : kOrders)
    if (order_name(o) == s) return o;
  return std::nullopt;
}

std::string pred_name(Pred p) { return kPredNames[static_cast<int>(p)]; }

std::optional<Pred> parse_pred(std::string_view s) {
  for (int i = 0; i < kPredCount; ++i)
    if (s == kPredNames[i]) return static_cast<Pred>(i);
  return std::nullopt;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

KnowledgeBase parse_kb(const std::string& text, const std::string& source) {
  KnowledgeBase kb;
  std::istringstream in(text);
  std::string raw;
  int n = 0;
  while (std::getline(in, raw)) {
    ++n;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    std::size_t pos = 0;
    std::string head = word_at(line, pos);
    if (head == "atom") {
      std::string name = word_at(line, pos);
      std::string pretty = trim(line.substr(pos));
      if (name.empty()) throw KbError(source, n, "atom line without a name");
      if (kb.atoms.contains(name)) throw KbError(source, n, "atom '" + name + "' declared twice");
      try {
        kb.atoms.declare(name, pretty);
      } catch (const std::invalid_argument& e) {
        throw KbError(source, n, e.what());
      }
      kb.declared.push_back(name);
    } else if (head == "pos" || head == "neg") {
      auto [body, cite] = split_citation(line, source, n);
      std::string ord = word_at(body, pos);
      auto o = parse_order(ord);
      if (!o) throw KbError(source, n, "unknown order '" + ord + "'");
      Fact f;
      f.positive = head == "pos";
      f.order = *o;
      f.lhs = term_at(body, pos, kb.atoms, source, n);
      f.rhs = term_at(body, pos, kb.atoms, source, n);
      if (pos != body.size()) throw KbError(source, n, "unexpected text after the right-hand term");
      f.citation = cite;
      f.line = n;
      kb.facts.push_back(std::move(f));
    } else if (head == "pred") {
      auto [body, cite] = split_citation(line, source, n);
      std::string name = word_at(body, pos);
      PredFact p;
      if (name.rfind("not_", 0) == 0) {
        p.positive = false;
        name = name.substr(4);
      }
      auto pr = parse_pred(name);
      if (!pr) throw KbError(source, n, "unknown predicate '" + name + "'");
      p.pred = *pr;
      p.term = term_at(body, pos, kb.atoms, source, n);
      if (pos != body.size()) throw KbError(source, n, "unexpected text after the term");
      p.citation = cite;
      p.line = n;
      kb.preds.push_back(std::move(p));
    } else {
      throw KbError(source, n, "unknown line kind '" + head + "'");
    }
  }
  return kb;
}

KnowledgeBase load_kb(const std::string& path) { return parse_kb(read_file(path), path); }

std::string format_kb(const KnowledgeBase& kb) {
  std::ostringstream out;
  for (const auto& a : kb.declared) {
    out << "atom " << a;
    if (kb.atoms.pretty(a) != a) out << ' ' << kb.atoms.pretty(a);
    out << '\n';
  }
  for (const auto& f : kb.facts)
    out << (f.positive ? "pos " : "neg ") << order_name(f.order) << ' ' << print_term(f.lhs) << ' '
        << print_term(f.rhs) << " ; \"" << f.citation << "\"\n";
  for (const auto& p : kb.preds)
    out << "pred " << (p.positive ? "" : "not_") << pred_name(p.pred) << ' ' << print_term(p.term) << " ; \""
        << p.citation << "\"\n";
  return out.str();
}

void save_kb(const KnowledgeBase& kb, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << format_kb(kb);
  if (!out) throw std::runtime_error("cannot write " + path);
}

Statement parse_statement(const std::string& text, const AtomTable& atoms) {
  std::size_t pos = 0;
  Statement s;
  s.lhs = parse_term_prefix(text, pos, atoms);
  if (text.compare(pos, 1, "!") == 0) {
    s.positive = false;
    ++pos;
  }
  if (text.compare(pos, 2, "<=") != 0) throw ParseError("expected <=W, <=SW, <=TW or <=STW", pos);
  pos += 2;
  std::size_t start = pos;
  while (pos < text.size() && std::isupper(static_cast<unsigned char>(text[pos]))) ++pos;
  auto o = parse_order(text.substr(start, pos - start));
  if (!o) throw ParseError("unknown order '" + text.substr(start, pos - start) + "'", start);
  s.order = *o;
  s.rhs = parse_term_prefix(text, pos, atoms);
  if (pos != text.size()) throw ParseError("trailing input", pos);
  return s;
}

std::string print_statement(bool positive, Order o, const Term& lhs, const Term& rhs) {
  return print_term(lhs) + (positive ? " <=" : " !<=") + order_name(o) + " " + print_term(rhs);
}

Diagram parse_diagram(const std::string& text, const AtomTable& atoms, const std::string& source) {
  Diagram d;
  std::istringstream in(text);
  std::string raw;
  int n = 0;
  while (std::getline(in, raw)) {
    ++n;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    std::size_t pos = 0;
    std::string head = word_at(line, pos);
    if (head == "node" || head == "box") {
      std::string rest = trim(line.substr(pos));
      std::size_t p = 0;
      Term t = term_at(rest, p, atoms, source, n);
      if (p != rest.size()) throw KbError(source, n, "unexpected text after the term");
      (head == "node" ? d.nodes : d.boxed).push_back(std::move(t));
    } else if (head == "arrow" || head == "curved") {
      std::string rest = line.substr(pos);
      std::size_t arrow = rest.find("->");
      if (arrow == std::string::npos) throw KbError(source, n, "missing '->'");
      std::string a = trim(rest.substr(0, arrow)), b = trim(rest.substr(arrow + 2));
      std::size_t pa = 0, pb = 0;
      Diagram::Arrow ar;
      ar.from = term_at(a, pa, atoms, source, n);
      ar.to = term_at(b, pb, atoms, source, n);
      if (pa != a.size() || pb != b.size()) throw KbError(source, n, "malformed arrow");
      ar.curved = head == "curved";
      ar.line = n;
      d.arrows.push_back(std::move(ar));
    } else {
      throw KbError(source, n, "unknown line kind '" + head + "'");
    }
  }
  for (const auto& a : d.arrows) {
    bool from = false, to = false;
    for (const auto& v : d.nodes) {
      from = from || v == a.from;
      to = to || v == a.to;
    }
    if (!from || !to) throw KbError(source, a.line, "arrow between undeclared nodes");
  }
  return d;
}

Diagram load_diagram(const std::string& path, const AtomTable& atoms) {
  return parse_diagram(read_file(path), atoms, path);
}

}  // namespace wlab::lattice
