#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "wlab/rational.hpp"
#include "wlab/streams.hpp"

namespace wlab {

// Subset of N: a finite set, or (cofinite) N minus a finite set.
struct NatSet {
  bool cofinite = false;
  std::set<std::uint64_t> elems;

  bool contains(std::uint64_t n) const { return cofinite != (elems.count(n) > 0); }
  bool empty() const { return !cofinite && elems.empty(); }
  std::optional<std::uint64_t> least() const;
  bool operator==(const NatSet&) const = default;
};

// Closed subset of Cantor space: the maximal cylinders inside it, plus
// finitely many isolated EP points (only produced by exact analyses of
// infinite enumerations; finite ball unions always leave clopen sets).
struct CylinderUnion {
  std::set<Word> cylinders;
  std::set<NameStream> points;

  bool contains(const NameStream& x) const;
  bool empty() const { return cylinders.empty() && points.empty(); }
  Rational measure() const;
  bool operator==(const CylinderUnion&) const = default;
};

// Closed subset of Baire space: complement of the cylinders of an antichain.
struct BaireSet {
  std::set<Word> removed;

  bool contains(const NameStream& x) const;
  bool empty() const { return removed.count(Word{}) > 0; }
  bool operator==(const BaireSet&) const = default;
};

struct ClosedInterval {
  Rational lo, hi;
  bool operator==(const ClosedInterval&) const = default;
};

// Finite union of disjoint, non-touching closed intervals inside [0,1].
struct IntervalSet {
  std::vector<ClosedInterval> parts;

  bool contains(const Rational& x) const;
  bool empty() const { return parts.empty(); }
  bool operator==(const IntervalSet&) const = default;
};

using ClosedSet = std::variant<NatSet, CylinderUnion, BaireSet, IntervalSet>;
std::string to_string(const ClosedSet& s);
bool closed_set_empty(const ClosedSet& s);

// <n,<i,k>> denotes B(alpha(n), i/(k+1)).
struct BallCode {
  std::uint64_t center = 0;
  std::uint64_t num = 0;
  std::uint64_t den_minus_one = 0;

  static BallCode decode(std::uint64_t code);
  std::uint64_t encode() const;
  Rational radius() const;
  // "c:i/d" with d = k+1, e.g. "5:1/1".
  static BallCode parse(std::string_view text);
  std::string to_string() const;
};

// Dense enumerations alpha of the base spaces.
Word cantor_center(std::uint64_t n, std::size_t length);
std::uint64_t cantor_index(const Word& w);
Word baire_word(std::uint64_t n);
std::uint64_t baire_index(const Word& w);
Rational interval_point(std::uint64_t n);
std::uint64_t interval_index(const Rational& x);

}  // namespace wlab
