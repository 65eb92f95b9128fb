#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "wlab/closed_sets.hpp"
#include "wlab/rational.hpp"
#include "wlab/streams.hpp"

namespace wlab {

struct Space {
  enum class Kind { finite, naturals, sierpinski, cantor, baire, unit_interval, closed_sets };

  Kind kind = Kind::naturals;
  std::uint64_t n = 0;                  // size for finite(n)
  std::shared_ptr<const Space> inner;   // for closed_sets
  bool range_coding = false;            // A_-(N) as N minus range(p-1)

  static Space finite(std::uint64_t n);
  static Space naturals();
  static Space sierpinski();
  static Space cantor();
  static Space baire();
  static Space unit_interval();
  static Space closed_sets_of(const Space& base, bool range_coding = false);
  // N, 2N, NN, S, I, fin(k), A-(X), A-(N;range)
  static Space parse(std::string_view name);

  std::string name() const;
  bool is_base() const { return kind != Kind::closed_sets; }
  bool compact() const;
  bool operator==(const Space& o) const;
};

// Bottom of a completed space; nested completions count outward from 1.
struct Bottom {
  int level = 1;
  bool operator==(const Bottom&) const = default;
};

struct Point {
  std::variant<std::uint64_t, Bottom, NameStream, Rational, ClosedSet> value;

  static Point natural(std::uint64_t n) { return Point{n}; }
  static Point bottom(int level = 1) { return Point{Bottom{level}}; }
  static Point stream(NameStream s) { return Point{std::move(s)}; }
  static Point rational(Rational r) { return Point{r}; }
  static Point set(ClosedSet s) { return Point{std::move(s)}; }

  bool is_bottom() const { return std::holds_alternative<Bottom>(value); }
  bool is_natural() const { return std::holds_alternative<std::uint64_t>(value); }
  std::uint64_t as_natural() const { return std::get<std::uint64_t>(value); }
  const NameStream& as_stream() const { return std::get<NameStream>(value); }
  const Rational& as_rational() const { return std::get<Rational>(value); }
  const ClosedSet& as_set() const { return std::get<ClosedSet>(value); }

  std::string to_string() const;
  bool operator==(const Point& o) const { return value == o.value; }
};

struct Observation {
  enum class Status { pending, point, undefined };
  Status status = Status::pending;
  Point point;
  std::string reason;

  static Observation pending() { return {}; }
  static Observation of(Point p) { return {Status::point, std::move(p), {}}; }
  static Observation undefined(std::string why) { return {Status::undefined, {}, std::move(why)}; }
  bool committed() const { return status != Status::pending; }
  bool is_point() const { return status == Status::point; }
  std::string to_string() const;
};

class Representation {
 public:
  enum class Layer { precompletion, completion, jump };

  explicit Representation(Space base);

  Representation precompletion() const;
  Representation completion() const;
  Representation jump() const;

  // Observation from the first `depth` digits; exact for EP names once
  // depth reaches certificate_depth(p). Below that only determined values
  // are committed, which under a completion is just an inner failure.
  // Names outside the domain of a partial representation may commit a
  // value that the exact decoding later rejects.
  Observation decode(const NameStream& p, std::size_t depth) const;
  // Exact decoding of an EP name (or a tupled family name for jumps).
  Observation decode(const NameStream& p) const;
  static std::size_t certificate_depth(const NameStream& p);

  const Space& base() const { return base_; }
  const std::vector<Layer>& layers() const { return layers_; }
  bool total() const;
  bool precomplete() const;
  int completion_levels() const;
  bool has_jump() const;
  std::string name() const;

 private:
  Observation exact(std::size_t k, const NameStream& p) const;
  Observation from_prefix(std::size_t k, const Word& w) const;

  Space base_;
  std::vector<Layer> layers_;  // innermost first
};

Representation make_space(const Space& s);
Point jump_decode(const Representation& r, const NameStream& p);

struct Ball {
  enum class Kind { naturals, cylinder, interval };
  Kind kind = Kind::naturals;
  bool empty = false;
  NatSet naturals;     // discrete spaces
  Word cylinder;       // Cantor and Baire space
  Rational lo, hi;     // open interval (lo,hi), intersected with [0,1] on use

  std::string to_string() const;
};

Ball ball_semantics(const Space& base, std::uint64_t code);
bool ball_contains(const Ball& b, const Point& x);

ClosedSet complement_of_balls(const Space& base, const std::vector<std::uint64_t>& codes);
std::vector<std::uint64_t> distinct_codes(const NameStream& enumeration);
ClosedSet set_members(const Space& base, const NameStream& enumeration);
bool covers_space(const Space& base, const std::vector<std::uint64_t>& codes);
std::pair<Rational, Rational> interval_bounds(const std::vector<std::uint64_t>& codes);
// Measure of the complement of the first `stage` distinct balls.
Rational measure_upper(const NameStream& enumeration, std::size_t stage);

// Ball-code builders.
std::uint64_t natural_ball(std::uint64_t n);
std::uint64_t cantor_cylinder_ball(const Word& w);
std::uint64_t baire_cylinder_ball(const Word& w);
std::uint64_t interval_ball(const Rational& center, const Rational& radius);
std::uint64_t left_interval_ball(const Rational& l);   // [0,l)
std::uint64_t right_interval_ball(const Rational& r);  // (r,1]

// Range coding of A_-(N): digit 0 excludes nothing, digit n+1 excludes n.
NatSet range_members(const NameStream& p);
NameStream range_to_balls(const NameStream& p);
NameStream balls_to_range(const NameStream& p);

}  // namespace wlab
