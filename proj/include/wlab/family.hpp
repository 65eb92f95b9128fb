#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wlab/streams.hpp"

namespace wlab {

// Component head . pump^t . tail for the t-th visit of its residue class.
// With an empty pump every visit yields the same stream.
struct PumpedComponent {
  Word head;
  Word pump;
  NameStream tail;

  NameStream at(std::uint64_t t) const;
  Digit digit(std::uint64_t t, std::uint64_t j) const;
  NameStream limit() const;
  bool operator==(const PumpedComponent& o) const;
};

// Finitely described sequence (p_0, p_1, ...) of EP streams: a list of
// leading components followed by m residue classes that repeat forever.
class Family {
 public:
  Family();
  Family(std::vector<NameStream> prefix, std::vector<PumpedComponent> period);
  static Family constant(const NameStream& s);
  static Family eventually(std::vector<NameStream> prefix, std::vector<NameStream> period);
  // "a|b@c|d": a,b lead, c,d repeat. Without '@' the last component
  // repeats. A component is a stream literal or "head<pump>tail".
  static Family parse(std::string_view literal);

  NameStream component(std::uint64_t i) const;
  Digit entry(std::uint64_t i, std::uint64_t j) const;

  // Pointwise limit, or nothing if the residue classes disagree.
  std::optional<NameStream> limit() const;
  std::optional<Digit> constant_digit() const;
  bool has_digit(Digit d) const;
  // Componentwise digit map; f must send EP streams to EP streams digitwise.
  Family map_digits(Digit (*f)(Digit)) const;

  const std::vector<NameStream>& leading() const { return prefix_; }
  const std::vector<PumpedComponent>& repeating() const { return period_; }

  std::string to_string() const;
  bool operator==(const Family& o) const;

 private:
  std::vector<NameStream> prefix_;
  std::vector<PumpedComponent> period_;
};

}  // namespace wlab
