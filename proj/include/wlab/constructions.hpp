#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wlab/problems.hpp"
#include "wlab/transducer.hpp"

namespace wlab {

// Exact output of a construction on one input: a name, and optionally the
// point it denotes when the name is not EP and cannot be decoded directly.
struct Exact {
  NameStream name;
  std::optional<Point> point;
};

struct Construction {
  std::string name;
  Representation input{Space::naturals()};
  Representation output{Space::naturals()};
  std::function<MachinePtr()> make;
  std::function<Exact(const NameStream&)> exact;  // empty: use run_ep
  std::size_t check_depth = 64;                    // digits compared against the machine
};

// Output bit 0 flipped in both the machine and its exact semantics.
Construction sabotaged(const Construction& c);

// Finite-state maps -------------------------------------------------------

MachinePtr minus_one_machine();
// bar(bar X) -> bar X: p - 1, padding with zeros while the content is delayed.
Construction retraction_double_completion(const Space& x);
Construction compactness_expand();    // p -> 1^{p(0)+1} 0 1^{p(1)+1} 0 ...
Construction compactness_compress();  // 0^k0 1^{n0+1} 0^{k1+1} 1^{n1+1} ... -> n0 n1 ...
// T C_X -> C_X on A_-(X): drop any ball that would empty the set.
Construction choice_retraction_cantor();
Construction choice_retraction_finite(std::uint64_t n);
Construction conc_retraction_interval();
// bar(A_-(X))' -> bar(A_-(X)'): every padding digit 0 becomes the empty ball.
Construction jump_choice_zero_replace(const Space& x);
Construction identity_construction(const Representation& r);

// Reductions around the infinity problem --------------------------------

Construction inf_to_lpojump();
Construction lpojump_to_inf();
Construction inf_to_neg();

// Mind-change machines -----------------------------------------------------

// bar N -> N: 0 until the first non-zero digit d, then d-1.
MachinePtr retraction_Nbar();
// Realizers of C_N in range coding with completed input and output:
// commit the least unexcluded value, reset when it is excluded.
MachinePtr cn_fmc_solver();
// Waits for a few input digits before committing, and again after each reset.
MachinePtr cn_fmc_solver_lazy();
// Commits one past the largest excluded value.
MachinePtr cn_fmc_solver_cautious();
// Emits padding forever.
MachinePtr never_committing_machine();

// Limit machines -----------------------------------------------------------

LimitMachinePtr retraction_Bairebar();
LimitMachinePtr sort_machine();
// Stage s guesses q with q(k) = 1 iff the measure bound after s balls is below 2^-k,
// so that NEG = LPO(lim q).
LimitMachinePtr neg_via_measure();

// Witness pairs ------------------------------------------------------------

struct WitnessPair {
  std::string name;
  ProblemPtr f, g;
  Construction K, H;
  bool strong = true;  // H reads only the answer; otherwise <input, answer>
  std::function<std::vector<NameStream>(Rng&)> samples;
};

WitnessPair wbwt_to_barCN();
std::vector<WitnessPair> witness_pairs();
WitnessPair witness_pair(const std::string& name);

// Projection -----------------------------------------------------------------

// Reads the tupled sequence (p_i) and enumerates balls whose complement B
// has first projection equal to the set of cluster points of (p_i).
class ProjectLiftMachine final : public Machine {
 public:
  struct Node {
    Word letters;  // first projection of word
    Word word;     // the node as a word of paired digits
    std::map<Digit, std::size_t> children;  // letter -> node index
    std::set<Digit> seen;                   // letters of arrivals that stopped here
    std::uint64_t birth = 0;                // stage at which the node was opened
    Digit pointer = 0;                      // slots below are enumerated or open
  };

  ProjectLiftMachine();
  std::string name() const override { return "project_lift"; }
  void feed(Digit d, Word& out) override;
  MachinePtr clone() const override { return std::make_unique<ProjectLiftMachine>(*this); }
  std::string state_key() const override;

  const std::vector<Node>& nodes() const { return nodes_; }
  std::uint64_t stage() const { return stage_; }

 private:
  bool try_arrival();
  void enumerate(Word& out);
  std::optional<Digit> entry(std::uint64_t i, std::uint64_t j) const;

  std::vector<Node> nodes_;
  Word read_;
  std::uint64_t stage_ = 0;       // arrivals processed
  std::size_t cursor_ = 0;        // node reached by the current arrival
  std::uint64_t depth_ = 0;       // its depth
};

struct ProjectionCheck {
  bool ok = false;
  std::set<Word> expected;  // length-depth prefixes of cluster points
  std::set<Word> found;
  std::string detail;
};

// Runs project_lift on the tupled family and compares the first projection
// of the coded set with the cluster points, on prefixes of length depth.
ProjectionCheck check_project_lift(const Family& ps, std::size_t depth = 4,
                                   const std::function<MachinePtr()>& make = nullptr);

// Library listing ----------------------------------------------------------

struct LibraryEntry {
  std::string name;
  std::string kind;  // transducer, mind-change, limit, witness
  std::string summary;
};
std::vector<LibraryEntry> library();

// Decoding helpers shared with tests.
Family inf_to_lpojump_family(const NameStream& p);
// Index of the first search target of lpojump_to_inf that never succeeds.
std::optional<std::uint64_t> lpojump_stall(const Family& ps);

}  // namespace wlab
