#pragma once

#include <functional>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "wlab/sampling.hpp"
#include "wlab/spaces.hpp"

namespace wlab {

enum class Verdict { accept, reject };

// A multivalued map on points. Names enter through the input and output
// representations; everything else is exact on decoded points.
class Problem {
 public:
  virtual ~Problem() = default;

  virtual std::string name() const = 0;
  virtual Representation input() const = 0;
  virtual Representation output() const = 0;

  virtual bool in_domain(const Point& x) const = 0;
  virtual bool accepts(const Point& x, const Point& y) const = 0;
  // Least valid answer; throws std::domain_error outside the domain.
  virtual Point solve(const Point& x) const = 0;
  // Some point of the output space, used off the domain of totalizations.
  virtual Point default_output() const = 0;

  // Canonical output name of y.
  virtual NameStream encode(const Point& y) const;
  // Valid answer names chosen to stress post-processors: non-least
  // answers, padded names, late commitments.
  virtual std::vector<NameStream> sample_answers(const Point& x, Rng& rng) const;

  Observation decode_input(const NameStream& x) const { return input().decode(x); }
  Observation decode_output(const NameStream& y) const { return output().decode(y); }
  Verdict check_membership(const NameStream& x, const NameStream& y) const;
  NameStream solve_name(const NameStream& x) const;
};

using ProblemPtr = std::shared_ptr<const Problem>;

// Problem assembled from plain functions; the catalog is built from these.
struct ProblemSpec {
  std::string name;
  Representation input;
  Representation output;
  std::function<bool(const Point&)> domain;
  std::function<bool(const Point&, const Point&)> accepts;
  std::function<Point(const Point&)> solve;
  Point default_output;
  // Extra valid answers beyond the canonical one (points of the output).
  std::function<std::vector<Point>(const Point&, Rng&)> alternatives;
};

ProblemPtr make_problem(ProblemSpec spec);

ProblemPtr completion(ProblemPtr f);
ProblemPtr totalization(ProblemPtr f);
ProblemPtr jump(ProblemPtr f);
// Jump with its own display name, e.g. lim for the jump of id on Baire space.
ProblemPtr named_jump(ProblemPtr f, std::string name);

enum class Variant { plain, totalization, completion, jump };
Variant variant_of(const ProblemPtr& p);

// Catalog ----------------------------------------------------------------

ProblemPtr lpo(bool sierpinski_output = false);
ProblemPtr inf(bool sierpinski_output = false);
ProblemPtr limit_baire();
ProblemPtr limit_naturals();
ProblemPtr sort_problem();
ProblemPtr wbwt2();
ProblemPtr bwt2();
ProblemPtr neg();
ProblemPtr choice_finite(std::uint64_t n);
ProblemPtr choice_naturals(bool range_coding = false);
ProblemPtr compact_choice_naturals();
ProblemPtr choice_cantor(bool positive = false);
ProblemPtr choice_interval(bool positive = false);  // connected choice on [0,1]
ProblemPtr choice_baire();
ProblemPtr wft(bool sierpinski_output = false);
ProblemPtr identity(const Space& s);

std::vector<ProblemPtr> catalog();
// Names as in the catalog, with bar(...), T(...) and postfix '.
ProblemPtr parse_problem(std::string_view text);

std::set<Digit> cluster_points(const NameStream& p);

}  // namespace wlab
