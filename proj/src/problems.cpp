#include "wlab/problems.hpp"

#include <algorithm>
#include <stdexcept>

namespace wlab {

namespace {

NameStream pad_with_zeros(const NameStream& q) { return pair(NameStream::constant(0), q); }

NameStream encode_layers(const Representation& rep, std::size_t k, const Point& y) {
  if (k == 0) {
    switch (rep.base().kind) {
      case Space::Kind::naturals:
      case Space::Kind::finite:
      case Space::Kind::sierpinski: return NameStream::constant(y.as_natural());
      case Space::Kind::cantor:
      case Space::Kind::baire: return y.as_stream();
      case Space::Kind::unit_interval: return NameStream::constant(interval_index(y.as_rational()));
      case Space::Kind::closed_sets: throw std::invalid_argument("no canonical names for closed-set outputs");
    }
  }
  switch (rep.layers()[k - 1]) {
    case Representation::Layer::completion:
      if (y.is_bottom() && std::get<Bottom>(y.value).level ==
                               static_cast<int>(std::count(rep.layers().begin(), rep.layers().begin() + k,
                                                           Representation::Layer::completion)))
        return NameStream::constant(0);
      return plus_one_embed(encode_layers(rep, k - 1, y));
    case Representation::Layer::precompletion: return plus_one_embed(encode_layers(rep, k - 1, y));
    case Representation::Layer::jump: return encode_layers(rep, k - 1, y);
  }
  return {};
}

// Alternative names of the same output point under a plain base representation.
std::vector<NameStream> base_variants(const Representation& rep, const Point& y) {
  std::vector<NameStream> out{encode_layers(rep, rep.layers().size(), y)};
  if (!rep.layers().empty()) return out;
  switch (rep.base().kind) {
    case Space::Kind::naturals:
    case Space::Kind::finite: out.push_back(NameStream::periodic({y.as_natural(), 5, 2}, {0})); break;
    case Space::Kind::sierpinski:
      if (y.as_natural() == 1) out.push_back(NameStream::periodic({0, 0, 0, 2}, {0}));
      break;
    case Space::Kind::unit_interval:
      out.push_back(NameStream::periodic({interval_index(y.as_rational())}, {1, 2}));
      break;
    default: break;
  }
  return out;
}

class BasicProblem final : public Problem {
 public:
  explicit BasicProblem(ProblemSpec s) : s_(std::move(s)) {}
  std::string name() const override { return s_.name; }
  Representation input() const override { return s_.input; }
  Representation output() const override { return s_.output; }
  bool in_domain(const Point& x) const override { return s_.domain(x); }
  bool accepts(const Point& x, const Point& y) const override { return s_.accepts(x, y); }
  Point solve(const Point& x) const override {
    if (!s_.domain(x)) throw std::domain_error(s_.name + ": input outside the domain");
    return s_.solve(x);
  }
  Point default_output() const override { return s_.default_output; }
  std::vector<NameStream> sample_answers(const Point& x, Rng& rng) const override {
    std::vector<NameStream> out;
    std::vector<Point> points{solve(x)};
    if (s_.alternatives)
      for (auto& p : s_.alternatives(x, rng)) points.push_back(std::move(p));
    for (const auto& p : points) {
      if (!s_.accepts(x, p)) throw std::logic_error(s_.name + ": alternative answer is not valid");
      for (auto& n : base_variants(s_.output, p)) out.push_back(std::move(n));
    }
    return out;
  }

 private:
  ProblemSpec s_;
};

int own_level(const Representation& r) { return r.completion_levels(); }

bool is_bottom_at(const Point& p, int level) {
  return p.is_bottom() && std::get<Bottom>(p.value).level == level;
}

class CompletedProblem final : public Problem {
 public:
  explicit CompletedProblem(ProblemPtr f) : f_(std::move(f)) {}
  std::string name() const override { return "bar(" + f_->name() + ")"; }
  Representation input() const override { return f_->input().completion(); }
  Representation output() const override { return f_->output().completion(); }
  bool in_domain(const Point&) const override { return true; }
  bool accepts(const Point& x, const Point& y) const override {
    if (off_domain(x)) return true;
    return !is_bottom_at(y, own_level(output())) && f_->accepts(x, y);
  }
  Point solve(const Point& x) const override {
    if (off_domain(x)) return default_output();
    return f_->solve(x);
  }
  Point default_output() const override { return Point::bottom(own_level(output())); }
  std::vector<NameStream> sample_answers(const Point& x, Rng& rng) const override {
    std::vector<NameStream> out;
    if (off_domain(x)) {
      out.push_back(NameStream::constant(0));
      out.push_back(NameStream::periodic({0, 3, 0, 1}, {0}));
      out.push_back(plus_one_embed(f_->encode(f_->default_output())));
      return out;
    }
    for (const auto& q : f_->sample_answers(x, rng)) {
      NameStream lifted = plus_one_embed(q);
      out.push_back(lifted);
      out.push_back(pad_with_zeros(lifted));
      if (lifted.is_ep()) {
        Word late{0, 0, 0};
        late.insert(late.end(), lifted.prefix().begin(), lifted.prefix().end());
        out.push_back(NameStream::periodic(late, lifted.period()));
      }
    }
    return out;
  }
  const ProblemPtr& base() const { return f_; }

 private:
  bool off_domain(const Point& x) const { return is_bottom_at(x, own_level(input())) || !f_->in_domain(x); }
  ProblemPtr f_;
};

class TotalizedProblem final : public Problem {
 public:
  explicit TotalizedProblem(ProblemPtr f) : f_(std::move(f)) {}
  std::string name() const override { return "T(" + f_->name() + ")"; }
  Representation input() const override { return f_->input(); }
  Representation output() const override { return f_->output(); }
  bool in_domain(const Point&) const override { return true; }
  bool accepts(const Point& x, const Point& y) const override {
    return !f_->in_domain(x) || f_->accepts(x, y);
  }
  Point solve(const Point& x) const override { return f_->in_domain(x) ? f_->solve(x) : f_->default_output(); }
  Point default_output() const override { return f_->default_output(); }
  std::vector<NameStream> sample_answers(const Point& x, Rng& rng) const override {
    if (f_->in_domain(x)) return f_->sample_answers(x, rng);
    return base_variants(output(), f_->default_output());
  }

 private:
  ProblemPtr f_;
};

class JumpedProblem final : public Problem {
 public:
  JumpedProblem(ProblemPtr f, std::string name) : f_(std::move(f)), name_(std::move(name)) {}
  std::string name() const override { return name_.empty() ? f_->name() + "'" : name_; }
  Representation input() const override { return f_->input().jump(); }
  Representation output() const override { return f_->output(); }
  bool in_domain(const Point& x) const override { return f_->in_domain(x); }
  bool accepts(const Point& x, const Point& y) const override { return f_->accepts(x, y); }
  Point solve(const Point& x) const override { return f_->solve(x); }
  Point default_output() const override { return f_->default_output(); }
  NameStream encode(const Point& y) const override { return f_->encode(y); }
  std::vector<NameStream> sample_answers(const Point& x, Rng& rng) const override {
    return f_->sample_answers(x, rng);
  }

 private:
  ProblemPtr f_;
  std::string name_;
};

}  // namespace

NameStream Problem::encode(const Point& y) const {
  Representation rep = output();
  return encode_layers(rep, rep.layers().size(), y);
}

std::vector<NameStream> Problem::sample_answers(const Point& x, Rng&) const {
  return base_variants(output(), solve(x));
}

Verdict Problem::check_membership(const NameStream& x, const NameStream& y) const {
  Observation xo = decode_input(x);
  if (!xo.is_point()) throw std::domain_error(name() + ": not a name of an input point (" + xo.reason + ")");
  Observation yo = decode_output(y);
  if (!yo.is_point())
    throw std::invalid_argument(name() + ": output name does not denote a point of " + output().name() + " (" +
                                yo.reason + ")");
  return accepts(xo.point, yo.point) ? Verdict::accept : Verdict::reject;
}

NameStream Problem::solve_name(const NameStream& x) const {
  Observation xo = decode_input(x);
  if (!xo.is_point()) throw std::domain_error(name() + ": not a name of an input point (" + xo.reason + ")");
  return encode(solve(xo.point));
}

ProblemPtr make_problem(ProblemSpec spec) { return std::make_shared<BasicProblem>(std::move(spec)); }
ProblemPtr completion(ProblemPtr f) { return std::make_shared<CompletedProblem>(std::move(f)); }
ProblemPtr totalization(ProblemPtr f) { return std::make_shared<TotalizedProblem>(std::move(f)); }
ProblemPtr jump(ProblemPtr f) { return std::make_shared<JumpedProblem>(std::move(f), ""); }
ProblemPtr named_jump(ProblemPtr f, std::string name) {
  return std::make_shared<JumpedProblem>(std::move(f), std::move(name));
}

Variant variant_of(const ProblemPtr& p) {
  if (dynamic_cast<const CompletedProblem*>(p.get())) return Variant::completion;
  if (dynamic_cast<const TotalizedProblem*>(p.get())) return Variant::totalization;
  if (dynamic_cast<const JumpedProblem*>(p.get())) return Variant::jump;
  return Variant::plain;
}

}  // namespace wlab
