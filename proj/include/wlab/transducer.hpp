#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <string>

#include "wlab/family.hpp"
#include "wlab/streams.hpp"

namespace wlab {

// Output marker of a mind-change machine: discard everything emitted so far.
inline constexpr Digit kReset = std::numeric_limits<Digit>::max();

// Finite-delay stream transducer: reads one digit, emits zero or more.
class Machine {
 public:
  virtual ~Machine() = default;
  virtual std::string name() const = 0;
  virtual void feed(Digit d, Word& out) = 0;
  virtual std::unique_ptr<Machine> clone() const = 0;
  // Complete description of the internal state; equal keys mean equal futures.
  virtual std::string state_key() const = 0;
};

using MachinePtr = std::unique_ptr<Machine>;

// Output produced while reading the first `steps` digits of p.
Word run(const Machine& m, const NameStream& p, std::size_t steps);

struct RunResult {
  enum class Kind { infinite, finite, no_certificate };
  Kind kind = Kind::no_certificate;
  NameStream output;         // kind == infinite
  Word finite_output;        // kind == finite: the whole output
  std::size_t periods_used = 0;
  bool resets_diverge = false;  // a reset occurs inside the detected loop
};

// Exact output on an EP input: runs until the state recurs at the start of an
// input period. A loop that emits nothing certifies finite output.
RunResult run_ep(const Machine& m, const NameStream& p, std::size_t max_periods = 4096);

// Mind-change reading of a raw output: the part after the last reset.
struct Committed {
  Word digits;
  std::size_t resets = 0;
};
Committed after_last_reset(const Word& raw);

MachinePtr identity_machine();
MachinePtr digit_map_machine(std::string name, std::function<Digit(Digit)> f);
// second after first.
MachinePtr compose(MachinePtr first, MachinePtr second);
// p |-> <p, t(p)>.
MachinePtr pair_with_id(MachinePtr t);
// <p, q> |-> <s(p), t(q)>.
MachinePtr juxtapose(MachinePtr s, MachinePtr t);
// Sabotage used by mutation checks: flips bit 0 of every emitted digit.
MachinePtr flip_output_bit(MachinePtr m);
Digit flip_bit0(Digit d);
NameStream flip_bit0(const NameStream& s);

// Limit-computable map: stage s reads a prefix and outputs a guess; the
// answer is the limit of the guesses.
class LimitMachine {
 public:
  virtual ~LimitMachine() = default;
  virtual std::string name() const = 0;
  virtual NameStream stage(const Word& prefix) const = 0;
  // Exact sequence of guesses on an EP input, as a family.
  virtual Family stage_family(const NameStream& p) const = 0;
};

using LimitMachinePtr = std::shared_ptr<const LimitMachine>;

}  // namespace wlab
