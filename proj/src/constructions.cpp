#include "wlab/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "wlab/sampling.hpp"

namespace wlab {

namespace {

Representation rep(const Space& s) { return make_space(s); }
Representation sets_rep(const Space& s, bool range = false) { return rep(Space::closed_sets_of(s, range)); }

std::uint64_t zeros(const Word& w) { return static_cast<std::uint64_t>(std::count(w.begin(), w.end(), 0)); }

Word ones(std::uint64_t n) { return Word(n, 1); }

Word slice(const Word& w, std::size_t n) { return Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(n)); }

Exact exact_by_run_ep(const Construction& c, const NameStream& x) {
  RunResult r = run_ep(*c.make(), x);
  if (r.kind == RunResult::Kind::infinite) return {r.output, std::nullopt};
  if (r.kind == RunResult::Kind::finite)
    throw std::runtime_error(c.name + ": finite output " + word_to_string(r.finite_output));
  throw std::runtime_error(c.name + ": no periodicity certificate");
}

// Digits of m on x, computed on demand and shared between copies of the stream.
NameStream simulated(const Machine& m, const NameStream& x) {
  struct State {
    MachinePtr m;
    NameStream in;
    Word out;
    std::size_t fed = 0;
  };
  auto st = std::make_shared<State>(State{m.clone(), x, {}, 0});
  return NameStream::generated([st](std::size_t i) {
    while (st->out.size() <= i) {
      if (st->fed > 64 * (i + 1) + 100000) throw std::runtime_error(st->m->name() + ": output stalls");
      st->m->feed(st->in.digit(st->fed++), st->out);
    }
    return st->out[i];
  });
}

// Maps --------------------------------------------------------------------

class MinusOne final : public Machine {
 public:
  std::string name() const override { return "minus_one"; }
  void feed(Digit d, Word& out) override {
    if (d) out.push_back(d - 1);
  }
  MachinePtr clone() const override { return std::make_unique<MinusOne>(); }
  std::string state_key() const override { return ""; }
};

// Emits p(i)-1 for non-zero digits; a slack counter inserts a padding zero
// whenever the input has been silent for too long.
class SlackRetraction final : public Machine {
 public:
  std::string name() const override { return "retraction_double_completion"; }
  void feed(Digit d, Word& out) override {
    --slack_;
    if (d > 0) {
      out.push_back(d - 1);
      slack_ += 2;
    } else if (slack_ < 0) {
      out.push_back(0);
      slack_ += 2;
    }
    slack_ = std::min(slack_, 8);
  }
  MachinePtr clone() const override { return std::make_unique<SlackRetraction>(*this); }
  std::string state_key() const override { return std::to_string(slack_); }

 private:
  int slack_ = 2;
};

class Expand final : public Machine {
 public:
  std::string name() const override { return "compactness_expand"; }
  void feed(Digit d, Word& out) override {
    if (d == kReset) throw std::overflow_error("digit too large to expand");
    out.insert(out.end(), d + 1, 1);
    out.push_back(0);
  }
  MachinePtr clone() const override { return std::make_unique<Expand>(); }
  std::string state_key() const override { return ""; }
};

class Compress final : public Machine {
 public:
  std::string name() const override { return "compactness_compress"; }
  void feed(Digit d, Word& out) override {
    if (d > 1) throw std::invalid_argument("compactness_compress reads binary streams");
    if (d == 1) {
      ++run_;
    } else if (run_ > 0) {
      out.push_back(run_ - 1);
      run_ = 0;
    }
  }
  MachinePtr clone() const override { return std::make_unique<Compress>(*this); }
  std::string state_key() const override { return std::to_string(run_); }

 private:
  std::uint64_t run_ = 0;
};

// Passes balls on unless they would leave the empty set.
class EmptinessGuard final : public Machine {
 public:
  EmptinessGuard(std::string name, Space base) : name_(std::move(name)), base_(std::move(base)) {}
  std::string name() const override { return name_; }
  void feed(Digit d, Word& out) override {
    std::vector<std::uint64_t> next = kept_;
    next.push_back(d);
    ClosedSet s = complement_of_balls(base_, next);
    if (closed_set_empty(s)) {
      out.push_back(0);
      return;
    }
    std::string k = to_string(s);
    if (k != key_) {
      kept_ = std::move(next);
      key_ = std::move(k);
    }
    out.push_back(d);
  }
  MachinePtr clone() const override { return std::make_unique<EmptinessGuard>(*this); }
  std::string state_key() const override { return key_; }

 private:
  std::string name_;
  Space base_;
  std::vector<std::uint64_t> kept_;
  std::string key_;
};

// Lists [0,l) and (r,1] for the current endpoint bounds while l <= r.
class IntervalGuard final : public Machine {
 public:
  std::string name() const override { return "conc_retraction_interval"; }
  void feed(Digit d, Word& out) override {
    if (!frozen_ && codes_.insert(d).second) {
      auto [l, r] = interval_bounds(std::vector<std::uint64_t>(codes_.begin(), codes_.end()));
      if (l <= r) {
        l_ = l;
        r_ = r;
      } else {
        frozen_ = true;
      }
    }
    out.push_back(left_interval_ball(l_));
    out.push_back(right_interval_ball(r_));
  }
  MachinePtr clone() const override { return std::make_unique<IntervalGuard>(*this); }
  std::string state_key() const override {
    std::string k = frozen_ ? "F" : "L";
    k += to_string(l_) + "," + to_string(r_);
    if (!frozen_)
      for (auto c : codes_) k += ";" + std::to_string(c);
    return k;
  }

 private:
  std::set<std::uint64_t> codes_;
  Rational l_{0}, r_{1};
  bool frozen_ = false;
};

Digit zero_to_one(Digit d) { return d == 0 ? 1 : d; }

// Infinity problem ---------------------------------------------------------

// Emits position <n,k> of the tupled output once p(0..n) is known.
class InfToLpoJump final : public Machine {
 public:
  std::string name() const override { return "inf_to_lpojump"; }
  void feed(Digit d, Word& out) override {
    zeros_upto_.push_back((zeros_upto_.empty() ? 0 : zeros_upto_.back()) + (d == 0 ? 1 : 0));
    for (;;) {
      auto [n, k] = unpair_index(next_);
      if (n >= zeros_upto_.size()) break;
      out.push_back(zeros_upto_[n] < k ? 0 : 1);
      ++next_;
    }
  }
  MachinePtr clone() const override { return std::make_unique<InfToLpoJump>(*this); }
  std::string state_key() const override {
    std::string k = std::to_string(next_);
    for (auto z : zeros_upto_) k += "," + std::to_string(z);
    return k;
  }

 private:
  std::vector<std::uint64_t> zeros_upto_;
  std::uint64_t next_ = 0;
};

// Works through targets <n,k> in order; a target succeeds when some p_i with
// i >= k has p_i(n) != 0, and each success writes a 0.
class LpoJumpToInf final : public Machine {
 public:
  std::string name() const override { return "lpojump_to_inf"; }
  void feed(Digit d, Word& out) override {
    read_.push_back(d);
    for (;;) {
      std::uint64_t n = unpair_index(target_).first;
      std::uint64_t pos = pair_index(candidate_, n);
      if (pos >= read_.size()) break;
      if (read_[pos] != 0) {
        out.push_back(0);
        ++target_;
        candidate_ = unpair_index(target_).second;
      } else {
        ++candidate_;
      }
    }
    out.push_back(1);
  }
  MachinePtr clone() const override { return std::make_unique<LpoJumpToInf>(*this); }
  std::string state_key() const override {
    return std::to_string(target_) + "/" + std::to_string(candidate_) + "/" + word_to_string(read_);
  }

 private:
  Word read_;
  std::uint64_t target_ = 0;
  std::uint64_t candidate_ = 0;
};

class InfToNeg final : public Machine {
 public:
  std::string name() const override { return "inf_to_neg"; }
  void feed(Digit d, Word& out) override {
    if (d != 0) {
      out.push_back(0);
      return;
    }
    Word w = ones(seen_);
    w.push_back(0);
    out.push_back(cantor_cylinder_ball(w));
    ++seen_;
  }
  MachinePtr clone() const override { return std::make_unique<InfToNeg>(*this); }
  std::string state_key() const override { return std::to_string(seen_); }

 private:
  std::uint64_t seen_ = 0;
};

// Weak Bolzano-Weierstrass ---------------------------------------------------

// The n-th zero of p excludes n; ones carry no information.
class WbwtK final : public Machine {
 public:
  std::string name() const override { return "wbwt_to_barCN.K"; }
  void feed(Digit d, Word& out) override {
    if (d == 0) {
      out.push_back(zeros_ + 2);
      ++zeros_;
    } else {
      out.push_back(1);
    }
  }
  MachinePtr clone() const override { return std::make_unique<WbwtK>(*this); }
  std::string state_key() const override { return std::to_string(zeros_); }

 private:
  std::uint64_t zeros_ = 0;
};

// Reads <p, y>. Writes 0 until y commits to n, then 1 while p has shown at
// most n zeros and 0 afterwards.
class WbwtH final : public Machine {
 public:
  std::string name() const override { return "wbwt_to_barCN.H"; }
  void feed(Digit d, Word& out) override {
    if (!odd_) {
      p_ = d;
      odd_ = true;
      return;
    }
    odd_ = false;
    if (p_ == 0 && !(committed_ && zeros_ > *committed_)) ++zeros_;
    if (!committed_ && d != 0) committed_ = d - 1;
    out.push_back(committed_ && zeros_ <= *committed_ ? 1 : 0);
  }
  MachinePtr clone() const override { return std::make_unique<WbwtH>(*this); }
  std::string state_key() const override {
    return std::string(odd_ ? "o" : "e") + std::to_string(p_) + "/" + std::to_string(zeros_) + "/" +
           (committed_ ? std::to_string(*committed_) : "-");
  }

 private:
  bool odd_ = false;
  Digit p_ = 0;
  std::uint64_t zeros_ = 0;
  std::optional<std::uint64_t> committed_;
};

// Mind changes ---------------------------------------------------------------

class NbarRetraction final : public Machine {
 public:
  std::string name() const override { return "retraction_Nbar"; }
  void feed(Digit d, Word& out) override {
    if (!value_ && d != 0) {
      if (emitted_) out.push_back(kReset);
      value_ = d - 1;
    }
    out.push_back(value_ ? *value_ : 0);
    emitted_ = true;
  }
  MachinePtr clone() const override { return std::make_unique<NbarRetraction>(*this); }
  std::string state_key() const override {
    return std::string(emitted_ ? "e" : "-") + (value_ ? std::to_string(*value_) : "?");
  }

 private:
  bool emitted_ = false;
  std::optional<Digit> value_;
};

// Range-coded input under a completion: 0 pads, 1 carries nothing, n+2
// excludes n. Output under a completion: 0 pads, n+1 names n.
class FmcSolver final : public Machine {
 public:
  enum class Style { least, lazy, cautious };
  explicit FmcSolver(Style s) : style_(s) {}
  std::string name() const override {
    switch (style_) {
      case Style::least: return "cn_fmc_solver";
      case Style::lazy: return "cn_fmc_solver_lazy";
      case Style::cautious: return "cn_fmc_solver_cautious";
    }
    return "?";
  }
  void feed(Digit d, Word& out) override {
    if (d >= 2) excluded_.insert(d - 2);
    if (value_ && excluded_.count(*value_)) {
      out.push_back(kReset);
      value_.reset();
      wait_ = style_ == Style::lazy ? 2 : 0;
    }
    if (!value_) {
      if (wait_ > 0) {
        --wait_;
        out.push_back(0);
        return;
      }
      value_ = choose();
    }
    out.push_back(*value_ + 1);
  }
  MachinePtr clone() const override { return std::make_unique<FmcSolver>(*this); }
  std::string state_key() const override {
    std::string k = std::to_string(wait_) + "/" + (value_ ? std::to_string(*value_) : "-");
    for (auto e : excluded_) k += "," + std::to_string(e);
    return k;
  }

 private:
  std::uint64_t choose() const {
    std::uint64_t n = 0;
    if (style_ == Style::cautious && !excluded_.empty()) n = *excluded_.rbegin() + 1;
    while (excluded_.count(n)) ++n;
    return n;
  }
  Style style_;
  std::set<std::uint64_t> excluded_;
  std::optional<std::uint64_t> value_;
  int wait_ = 3;
};

class Silent final : public Machine {
 public:
  std::string name() const override { return "never_commits"; }
  void feed(Digit, Word& out) override { out.push_back(0); }
  MachinePtr clone() const override { return std::make_unique<Silent>(); }
  std::string state_key() const override { return ""; }
};

// Limit machines -------------------------------------------------------------

class BairebarLimit final : public LimitMachine {
 public:
  std::string name() const override { return "retraction_Bairebar"; }
  NameStream stage(const Word& w) const override { return NameStream::periodic(minus_one(w), {0}); }
  Family stage_family(const NameStream& p) const override {
    if (!p.is_ep()) throw std::invalid_argument("stage_family needs an EP input");
    const Word &u = p.prefix(), &v = p.period();
    std::vector<NameStream> lead;
    for (std::size_t s = 0; s < u.size(); ++s) lead.push_back(stage(slice(u, s)));
    std::vector<PumpedComponent> rep;
    for (std::size_t r = 0; r < v.size(); ++r)
      rep.push_back({minus_one(u), minus_one(v), NameStream::periodic(minus_one(slice(v, r)), {0})});
    return Family(lead, rep);
  }
};

class SortLimit final : public LimitMachine {
 public:
  std::string name() const override { return "sort_machine"; }
  NameStream stage(const Word& w) const override { return NameStream::periodic(Word(zeros(w), 0), {1}); }
  Family stage_family(const NameStream& p) const override {
    if (!p.is_ep()) throw std::invalid_argument("stage_family needs an EP input");
    const Word &u = p.prefix(), &v = p.period();
    std::vector<NameStream> lead;
    for (std::size_t s = 0; s < u.size(); ++s) lead.push_back(stage(slice(u, s)));
    std::vector<PumpedComponent> rep;
    for (std::size_t r = 0; r < v.size(); ++r)
      rep.push_back({Word(zeros(u) + zeros(slice(v, r)), 0), Word(zeros(v), 0), NameStream::constant(1)});
    return Family(lead, rep);
  }
};

class NegLimit final : public LimitMachine {
 public:
  std::string name() const override { return "neg_via_measure"; }
  NameStream stage(const Word& w) const override {
    std::vector<std::uint64_t> codes;
    for (Digit d : w)
      if (std::find(codes.begin(), codes.end(), d) == codes.end()) codes.push_back(d);
    Rational m = std::get<CylinderUnion>(complement_of_balls(Space::cantor(), codes)).measure();
    if (m == Rational(0)) return NameStream::constant(1);
    std::size_t a = 0;
    while (m < Rational(1, std::int64_t{1} << (a + 1))) ++a;
    // q(k) = 1 iff m < 2^-k; k = 0 always holds unless m = 1.
    std::size_t lead = m == Rational(1) ? 0 : a + 1;
    return NameStream::periodic(ones(lead), {0});
  }
  Family stage_family(const NameStream& p) const override {
    if (!p.is_ep()) throw std::invalid_argument("stage_family needs an EP input");
    Word uv = p.prefix();
    uv.insert(uv.end(), p.period().begin(), p.period().end());
    std::vector<NameStream> lead;
    for (std::size_t s = 0; s < uv.size(); ++s) lead.push_back(stage(slice(uv, s)));
    return Family(lead, {PumpedComponent{{}, {}, stage(uv)}});
  }
};

// Witness samples ------------------------------------------------------------

std::vector<NameStream> binary_streams(std::size_t n) { return all_ep_streams(2, n); }

std::vector<NameStream> random_names(const Representation& r, std::size_t count, Rng& rng) {
  std::vector<NameStream> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_name(r, rng));
  return out;
}

}  // namespace

// Constructions ---------------------------------------------------------------

Construction sabotaged(const Construction& c) {
  Construction s = c;
  s.name = "sabotaged(" + c.name + ")";
  auto make = c.make;
  s.make = [make] { return flip_output_bit(make()); };
  s.exact = [c](const NameStream& x) {
    Exact e = c.exact ? c.exact(x) : exact_by_run_ep(c, x);
    return Exact{flip_bit0(e.name), std::nullopt};
  };
  return s;
}

MachinePtr minus_one_machine() { return std::make_unique<MinusOne>(); }

Construction retraction_double_completion(const Space& x) {
  Construction c{"retraction_double_completion", rep(x).completion().completion(), rep(x).completion(),
                 [] { return MachinePtr(std::make_unique<SlackRetraction>()); }, nullptr};
  return c;
}

Construction compactness_expand() {
  return {"compactness_expand", rep(Space::baire()), rep(Space::cantor()),
          [] { return MachinePtr(std::make_unique<Expand>()); }, nullptr};
}

Construction compactness_compress() {
  return {"compactness_compress", rep(Space::cantor()), rep(Space::baire()),
          [] { return MachinePtr(std::make_unique<Compress>()); }, nullptr};
}

Construction choice_retraction_cantor() {
  return {"choice_retraction_cantor", sets_rep(Space::cantor()), sets_rep(Space::cantor()),
          [] { return MachinePtr(std::make_unique<EmptinessGuard>("choice_retraction_cantor", Space::cantor())); },
          nullptr};
}

Construction choice_retraction_finite(std::uint64_t n) {
  Space s = Space::finite(n);
  return {"choice_retraction_finite", sets_rep(s), sets_rep(s),
          [s] { return MachinePtr(std::make_unique<EmptinessGuard>("choice_retraction_finite", s)); }, nullptr};
}

Construction conc_retraction_interval() {
  return {"conc_retraction_interval", sets_rep(Space::unit_interval()), sets_rep(Space::unit_interval()),
          [] { return MachinePtr(std::make_unique<IntervalGuard>()); }, nullptr};
}

Construction jump_choice_zero_replace(const Space& x) {
  Representation sets = sets_rep(x);
  Construction c{"jump_choice_zero_replace", sets.completion().jump(), sets.jump().completion(),
                 [] { return digit_map_machine("jump_choice_zero_replace", zero_to_one); }, nullptr};
  c.exact = [](const NameStream& p) {
    if (p.is_ep()) {
      Word u = p.prefix(), v = p.period();
      for (auto& d : u) d = zero_to_one(d);
      for (auto& d : v) d = zero_to_one(d);
      return Exact{NameStream::periodic(u, v), std::nullopt};
    }
    if (!p.family()) throw std::invalid_argument("jump_choice_zero_replace needs a tupled family");
    return Exact{tuple_infinite(p.family()->map_digits(zero_to_one)), std::nullopt};
  };
  return c;
}

Construction identity_construction(const Representation& r) {
  Construction c{"id", r, r, [] { return identity_machine(); }, nullptr};
  c.exact = [](const NameStream& p) { return Exact{p, std::nullopt}; };
  return c;
}

Family inf_to_lpojump_family(const NameStream& p) {
  if (!p.is_ep()) throw std::invalid_argument("inf_to_lpojump needs an EP input");
  const Word &u = p.prefix(), &v = p.period();
  std::vector<NameStream> lead;
  for (std::size_t n = 0; n < u.size(); ++n) lead.push_back(NameStream::periodic(ones(zeros(slice(u, n + 1)) + 1), {0}));
  std::vector<PumpedComponent> rep_;
  for (std::size_t r = 0; r < v.size(); ++r)
    rep_.push_back({ones(zeros(u) + zeros(slice(v, r + 1)) + 1), ones(zeros(v)), NameStream::constant(0)});
  return Family(lead, rep_);
}

Construction inf_to_lpojump() {
  Construction c{"inf_to_lpojump", rep(Space::baire()), rep(Space::baire()).jump(),
                 [] { return MachinePtr(std::make_unique<InfToLpoJump>()); }, nullptr};
  c.exact = [](const NameStream& p) { return Exact{tuple_infinite(inf_to_lpojump_family(p)), std::nullopt}; };
  return c;
}

std::optional<std::uint64_t> lpojump_stall(const Family& ps) {
  const auto& lead = ps.leading();
  const auto& rep_ = ps.repeating();
  const std::uint64_t L = lead.size(), m = rep_.size();
  if (m == 0) throw std::invalid_argument("family without repeating components");
  // Eventual digit of residue r at position n, and the visits before it settles.
  auto eventual = [](const PumpedComponent& c, std::uint64_t n) -> std::pair<Digit, std::uint64_t> {
    if (c.pump.empty()) return {c.digit(0, n), 0};
    std::uint64_t settle = n < c.head.size() ? 0 : (n - c.head.size()) / c.pump.size() + 1;
    Digit d = n < c.head.size() ? c.head[n] : c.pump[(n - c.head.size()) % c.pump.size()];
    return {d, settle};
  };
  std::uint64_t horizon = 0, period = 1;
  for (const auto& c : rep_) {
    NameStream lim = c.limit();
    horizon = std::max<std::uint64_t>(horizon, lim.prefix().size());
    period = std::lcm(period, static_cast<std::uint64_t>(lim.period().size()));
    if (period > 100000) throw std::length_error("family too irregular for the stall analysis");
  }
  std::optional<std::uint64_t> best;
  for (std::uint64_t n = 0; n < horizon + period; ++n) {
    if (best && pair_index(n, 0) > *best) break;
    bool infinite = false;
    std::optional<std::uint64_t> last;
    for (std::uint64_t i = 0; i < L; ++i)
      if (lead[i].digit(n) != 0) last = i;
    for (std::uint64_t r = 0; r < m && !infinite; ++r) {
      auto [d, settle] = eventual(rep_[r], n);
      if (d != 0) {
        infinite = true;
        break;
      }
      for (std::uint64_t t = 0; t < settle; ++t)
        if (rep_[r].digit(t, n) != 0) last = std::max(last.value_or(0), L + r + m * t);
    }
    if (infinite) continue;
    std::uint64_t k = last ? *last + 1 : 0;
    std::uint64_t c = pair_index(n, k);
    if (!best || c < *best) best = c;
  }
  return best;
}

Construction lpojump_to_inf() {
  Construction c{"lpojump_to_inf", rep(Space::baire()).jump(), rep(Space::baire()),
                 [] { return MachinePtr(std::make_unique<LpoJumpToInf>()); }, nullptr};
  c.exact = [](const NameStream& p) {
    if (!p.family()) throw std::invalid_argument("lpojump_to_inf needs a tupled family");
    bool recurring = !lpojump_stall(*p.family()).has_value();
    NameStream out = simulated(LpoJumpToInf(), p).with_zero_recurrence(recurring);
    return Exact{out, Point::stream(out)};
  };
  c.check_depth = 200;
  return c;
}

Construction inf_to_neg() {
  Construction c{"inf_to_neg", rep(Space::baire()), sets_rep(Space::cantor()),
                 [] { return MachinePtr(std::make_unique<InfToNeg>()); }, nullptr};
  c.exact = [](const NameStream& p) {
    if (!p.is_ep()) throw std::invalid_argument("inf_to_neg needs an EP input");
    if (zeros(p.period()) > 0) {
      CylinderUnion a;
      a.points.insert(NameStream::constant(1));
      return Exact{simulated(InfToNeg(), p), Point::set(a)};
    }
    RunResult r = run_ep(InfToNeg(), p);
    CylinderUnion a;
    a.cylinders.insert(ones(zeros(p.prefix())));
    return Exact{r.output, Point::set(a)};
  };
  // The k-th removed cylinder has depth k+1 and its ball code needs about
  // 4k bits, so the machine is only compared on the first 16 digits.
  c.check_depth = 16;
  return c;
}

MachinePtr retraction_Nbar() { return std::make_unique<NbarRetraction>(); }
MachinePtr cn_fmc_solver() { return std::make_unique<FmcSolver>(FmcSolver::Style::least); }
MachinePtr cn_fmc_solver_lazy() { return std::make_unique<FmcSolver>(FmcSolver::Style::lazy); }
MachinePtr cn_fmc_solver_cautious() { return std::make_unique<FmcSolver>(FmcSolver::Style::cautious); }
MachinePtr never_committing_machine() { return std::make_unique<Silent>(); }

LimitMachinePtr retraction_Bairebar() { return std::make_shared<BairebarLimit>(); }
LimitMachinePtr sort_machine() { return std::make_shared<SortLimit>(); }
LimitMachinePtr neg_via_measure() { return std::make_shared<NegLimit>(); }

WitnessPair wbwt_to_barCN() {
  WitnessPair w;
  w.name = "wbwt_to_barCN";
  w.f = wbwt2();
  w.g = completion(choice_naturals(true));
  w.strong = false;
  w.K = {"wbwt_to_barCN.K", rep(Space::cantor()), w.g->input(),
         [] { return MachinePtr(std::make_unique<WbwtK>()); }, nullptr};
  w.K.exact = [](const NameStream& p) {
    if (!p.is_ep()) throw std::invalid_argument("wbwt_to_barCN needs an EP input");
    if (zeros(p.period()) > 0) return Exact{simulated(WbwtK(), p), Point::set(NatSet{})};
    NatSet s{true, {}};
    for (std::uint64_t i = 0; i < zeros(p.prefix()); ++i) s.elems.insert(i);
    return Exact{run_ep(WbwtK(), p).output, Point::set(s)};
  };
  w.H = {"wbwt_to_barCN.H", rep(Space::baire()), rep(Space::cantor()),
         [] { return MachinePtr(std::make_unique<WbwtH>()); }, nullptr};
  w.H.exact = [](const NameStream& py) {
    NameStream p = project_left(py), y = project_right(py);
    if (!p.is_ep() || !y.is_ep()) throw std::invalid_argument("wbwt_to_barCN.H needs EP inputs");
    std::optional<std::size_t> c;
    for (std::size_t t = 0; t < y.description_size(); ++t)
      if (y.digit(t) != 0) {
        c = t;
        break;
      }
    if (!c) return Exact{NameStream::constant(0), std::nullopt};
    std::uint64_t n = y.digit(*c) - 1;
    // Output at t >= c is 1 while zeros(p[0..t]) <= n.
    Word head(*c, 0);
    std::uint64_t z = zeros(slice(p.take(*c + 1), *c + 1));
    std::size_t t = *c;
    const std::size_t limit = p.prefix().size() + *c + 1 + (p.period().size() * (n + 2));
    while (z <= n && t < limit) {
      head.push_back(1);
      ++t;
      if (p.digit(t) == 0) ++z;
    }
    if (z <= n) return Exact{NameStream::periodic(head, {1}), std::nullopt};
    return Exact{NameStream::periodic(head, {0}), std::nullopt};
  };
  w.samples = [](Rng&) { return binary_streams(10); };
  return w;
}

namespace {

WitnessPair retraction_pair(std::string name, ProblemPtr g, Construction k, Representation answers,
                            std::function<std::vector<NameStream>(Rng&)> samples) {
  WitnessPair w;
  w.name = std::move(name);
  w.f = totalization(g);
  w.g = std::move(g);
  w.K = std::move(k);
  w.H = identity_construction(std::move(answers));
  w.strong = true;
  w.samples = std::move(samples);
  return w;
}

std::vector<NameStream> ball_lists(const Space& base, std::size_t count, Rng& rng) {
  std::vector<NameStream> out;
  for (std::size_t i = 0; i < count; ++i) {
    Word u(rng() % 6), v(1 + rng() % 2);
    for (auto& d : u) d = random_ball(base, rng);
    for (auto& d : v) d = rng() % 3 == 0 ? random_ball(base, rng) : 0;
    out.push_back(NameStream::periodic(u, v));
  }
  return out;
}

std::vector<NameStream> interval_lists() {
  // Names of [a,b] with denominators up to 8, plus unions that empty the set.
  std::vector<Rational> pts;
  for (std::int64_t q = 1; q <= 8; ++q)
    for (std::int64_t p = 0; p <= q; ++p) pts.push_back(Rational(p, q));
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<NameStream> out;
  for (std::size_t i = 0; i < pts.size(); i += 3)
    for (std::size_t j = i; j < pts.size(); j += 4) {
      out.push_back(NameStream::periodic({left_interval_ball(pts[i]), right_interval_ball(pts[j])}, {0}));
      if (j > i) out.push_back(NameStream::periodic({right_interval_ball(pts[j]), left_interval_ball(pts[i])}, {0}));
    }
  out.push_back(NameStream::periodic({left_interval_ball(Rational(1, 2)), right_interval_ball(Rational(1, 4))}, {0}));
  out.push_back(NameStream::periodic({interval_ball(Rational(1, 2), Rational(1))}, {0}));
  return out;
}

}  // namespace

std::vector<WitnessPair> witness_pairs() {
  std::vector<WitnessPair> out;
  Representation bin = rep(Space::finite(2));
  {
    WitnessPair w{"inf_to_lpojump", inf(), jump(lpo()), inf_to_lpojump(), identity_construction(bin), true,
                  [](Rng&) { return binary_streams(8); }};
    out.push_back(w);
  }
  {
    WitnessPair w{"lpojump_to_inf", jump(lpo()), inf(), lpojump_to_inf(), identity_construction(bin), true,
                  [](Rng&) {
                    std::vector<NameStream> s;
                    for (const auto& p : binary_streams(8)) s.push_back(tuple_infinite(inf_to_lpojump_family(p)));
                    return s;
                  }};
    out.push_back(w);
  }
  {
    WitnessPair w{"inf_to_neg", inf(), neg(), inf_to_neg(), identity_construction(bin), true,
                  [](Rng&) { return binary_streams(8); }};
    out.push_back(w);
  }
  out.push_back(wbwt_to_barCN());
  out.push_back(retraction_pair("choice_retraction_cantor", choice_cantor(), choice_retraction_cantor(),
                                rep(Space::cantor()),
                                [](Rng& rng) { return ball_lists(Space::cantor(), 150, rng); }));
  out.push_back(retraction_pair("choice_retraction_finite", choice_finite(3), choice_retraction_finite(3),
                                rep(Space::finite(3)),
                                [](Rng& rng) { return ball_lists(Space::finite(3), 150, rng); }));
  out.push_back(retraction_pair("conc_retraction_interval", choice_interval(), conc_retraction_interval(),
                                rep(Space::unit_interval()), [](Rng&) { return interval_lists(); }));
  {
    ProblemPtr cn = choice_naturals();
    Construction k = jump_choice_zero_replace(Space::naturals());
    WitnessPair w{"jump_choice_zero_replace", jump(completion(cn)), completion(jump(cn)), k,
                  identity_construction(rep(Space::naturals()).completion()), true, nullptr};
    Representation in = k.input;
    w.samples = [in](Rng& rng) {
      std::vector<NameStream> s;
      for (auto& x : random_names(in, 150, rng))
        if (in.decode(x).is_point()) s.push_back(std::move(x));
      return s;
    };
    out.push_back(w);
  }
  return out;
}

WitnessPair witness_pair(const std::string& name) {
  for (auto& w : witness_pairs())
    if (w.name == name) return w;
  throw std::invalid_argument("unknown witness pair '" + name + "'");
}

// Projection -----------------------------------------------------------------

ProjectLiftMachine::ProjectLiftMachine() { nodes_.push_back(Node{}); }

std::optional<Digit> ProjectLiftMachine::entry(std::uint64_t i, std::uint64_t j) const {
  std::uint64_t pos = pair_index(i, j);
  if (pos >= read_.size()) return std::nullopt;
  return read_[pos];
}

bool ProjectLiftMachine::try_arrival() {
  for (;;) {
    auto a = entry(stage_, depth_);
    if (!a) return false;
    auto it = nodes_[cursor_].children.find(*a);
    if (it != nodes_[cursor_].children.end()) {
      cursor_ = it->second;
      ++depth_;
      continue;
    }
    if (nodes_[cursor_].seen.count(*a)) {
      // A second arrival leaves through this letter: open it with a slot
      // that has not been enumerated yet.
      Node child;
      child.letters = nodes_[cursor_].letters;
      child.letters.push_back(*a);
      std::uint64_t k = 0;
      while (pair_index(*a, k) < nodes_[cursor_].pointer) ++k;
      child.word = nodes_[cursor_].word;
      child.word.push_back(pair_index(*a, k));
      child.birth = stage_ + 1;
      nodes_.push_back(std::move(child));
      nodes_[cursor_].children[*a] = nodes_.size() - 1;
    } else {
      nodes_[cursor_].seen.insert(*a);
    }
    break;
  }
  ++stage_;
  cursor_ = 0;
  depth_ = 0;
  return true;
}

void ProjectLiftMachine::enumerate(Word& out) {
  for (auto& nd : nodes_) {
    std::uint64_t age = stage_ - nd.birth;
    auto target = static_cast<Digit>(std::sqrt(static_cast<double>(age)));
    while ((target + 1) * (target + 1) <= age) ++target;
    std::set<Digit> open;
    for (const auto& [a, idx] : nd.children) open.insert(nodes_[idx].word.back());
    while (nd.pointer < target) {
      Digit x = nd.pointer++;
      if (open.count(x)) continue;
      Word w = nd.word;
      w.push_back(x);
      out.push_back(baire_cylinder_ball(w));
    }
  }
}

void ProjectLiftMachine::feed(Digit d, Word& out) {
  read_.push_back(d);
  std::size_t before = out.size();
  while (try_arrival()) enumerate(out);
  if (out.size() == before) out.push_back(0);
}

std::string ProjectLiftMachine::state_key() const {
  std::string k = word_to_string(read_) + "|" + std::to_string(stage_) + "|" + std::to_string(cursor_) + "|" +
                  std::to_string(depth_);
  for (const auto& nd : nodes_) {
    k += "|" + word_to_string(nd.word) + "@" + std::to_string(nd.birth) + "/" + std::to_string(nd.pointer) + "s";
    for (auto s : nd.seen) k += std::to_string(s) + ",";
  }
  return k;
}

ProjectionCheck check_project_lift(const Family& ps, std::size_t depth, const std::function<MachinePtr()>& make) {
  ProjectionCheck res;
  const std::uint64_t L = ps.leading().size(), m = ps.repeating().size();
  for (const auto& c : ps.repeating()) res.expected.insert(c.limit().take(depth));
  // Last arrival whose component does not start with a cluster prefix.
  std::optional<std::uint64_t> last_stray;
  for (std::uint64_t i = 0; i < L; ++i)
    if (!res.expected.count(ps.component(i).take(depth))) last_stray = i;
  for (std::uint64_t r = 0; r < m; ++r) {
    const auto& c = ps.repeating()[r];
    if (c.pump.empty()) continue;
    for (std::uint64_t t = 0; c.head.size() + t * c.pump.size() < depth; ++t)
      if (!res.expected.count(c.at(t).take(depth))) last_stray = std::max(last_stray.value_or(0), L + r + m * t);
  }
  const std::uint64_t quiet = last_stray ? *last_stray + 2 : 0;  // births after this come from cluster arrivals

  MachinePtr machine = make ? make() : std::make_unique<ProjectLiftMachine>();
  auto* lift = dynamic_cast<ProjectLiftMachine*>(machine.get());
  ProjectLiftMachine probe;  // unsabotaged twin, for the tree structure
  NameStream input = tuple_infinite(ps);
  Word out;
  auto deep_prefixes = [&](const ProjectLiftMachine& pm) {
    std::set<Word> f;
    for (const auto& nd : pm.nodes())
      if (nd.letters.size() > depth && nd.birth > quiet) f.insert(slice(nd.letters, depth));
    return f;
  };
  try {
    const std::size_t max_steps = 400000;
    std::size_t step = 0;
    for (; step < max_steps; ++step) {
      Digit d = input.digit(step);
      machine->feed(d, out);
      if (lift == nullptr) {
        Word scratch;
        probe.feed(d, scratch);
      }
      const ProjectLiftMachine& pm = lift ? *lift : probe;
      if (pm.stage() > quiet + 2 * m && deep_prefixes(pm) == res.expected) break;
    }
    const ProjectLiftMachine& pm = lift ? *lift : probe;
    res.found = deep_prefixes(pm);
    if (step == max_steps) res.detail = "cluster prefixes did not deepen within the step bound; ";

    // The enumerated balls are exactly the closed-off children of open nodes.
    std::map<Word, std::size_t> index;
    for (std::size_t i = 0; i < pm.nodes().size(); ++i) index[pm.nodes()[i].word] = i;
    std::set<Word> listed;
    for (Digit code : out) {
      Ball b = ball_semantics(Space::baire(), code);
      if (b.empty) continue;
      Word parent = b.cylinder;
      if (parent.empty()) {
        res.detail += "a ball removes the whole space; ";
        continue;
      }
      Digit x = parent.back();
      parent.pop_back();
      auto it = index.find(parent);
      bool ok = it != index.end() && x < pm.nodes()[it->second].pointer;
      if (ok)
        for (const auto& [a, idx] : pm.nodes()[it->second].children)
          if (pm.nodes()[idx].word.back() == x) ok = false;
      if (!ok) res.detail += "ball " + word_to_string(b.cylinder) + " does not close a child of an open node; ";
      listed.insert(b.cylinder);
    }
    for (const auto& nd : pm.nodes()) {
      std::set<Digit> open;
      for (const auto& [a, idx] : nd.children) open.insert(pm.nodes()[idx].word.back());
      for (Digit x = 0; x < nd.pointer; ++x) {
        Word w = nd.word;
        w.push_back(x);
        if (!open.count(x) && !listed.count(w)) res.detail += "slot " + word_to_string(w) + " never closed; ";
      }
    }
  } catch (const std::exception& e) {
    res.detail += std::string("run aborted: ") + e.what() + "; ";
  }
  if (res.found != res.expected) res.detail += "projection differs from the cluster points; ";
  res.ok = res.detail.empty();
  return res;
}

// Listing ----------------------------------------------------------------------

std::vector<LibraryEntry> library() {
  return {
      {"minus_one", "transducer", "p -> p-1"},
      {"retraction_double_completion", "transducer", "bar(bar X) -> bar X, p-1 with padding zeros"},
      {"compactness_expand", "transducer", "p -> 1^{p(0)+1} 0 1^{p(1)+1} 0 ..."},
      {"compactness_compress", "transducer", "block lengths of ones, minus one"},
      {"retraction_Nbar", "mind-change", "bar N -> N, 0 until the first non-zero digit"},
      {"retraction_Bairebar", "limit", "bar NN -> NN, stage s guesses (p[0..s)-1) 0^w"},
      {"inf_to_lpojump", "transducer", "INF <=sW LPO', component n is 1^{zeros(p[0..n])+1} 0^w"},
      {"lpojump_to_inf", "transducer", "LPO' <=sW INF, one 0 per successful search target"},
      {"inf_to_neg", "transducer", "INF <=sW NEG, the k-th zero removes 1^k 0"},
      {"neg_via_measure", "limit", "NEG = LPO o lim, q(k) = 1 iff measure bound < 2^-k"},
      {"wbwt_to_barCN", "witness", "WBWT2 <=W bar(C_N): zeros exclude values, H watches p"},
      {"choice_retraction_cantor", "transducer", "T C_2N <=sW C_2N, drop balls that would empty the set"},
      {"choice_retraction_finite", "transducer", "T C_n <=sW C_n, same scheme"},
      {"conc_retraction_interval", "transducer", "T ConC_I <=sW ConC_I, freeze the last consistent interval"},
      {"jump_choice_zero_replace", "transducer", "bar(C_N)' <=sW bar(C_N'), padding becomes the empty ball"},
      {"project_lift", "transducer", "sequence (p_i) -> closed B with first projection the cluster points"},
      {"sort_machine", "limit", "SORT, stage s guesses 0^{zeros(p[0..s))} 1^w"},
      {"cn_fmc_solver", "mind-change", "C_N in range coding, least unexcluded value"},
      {"cn_fmc_solver_lazy", "mind-change", "as cn_fmc_solver, waiting before each commitment"},
      {"cn_fmc_solver_cautious", "mind-change", "as cn_fmc_solver, one past the largest exclusion"},
  };
}

}  // namespace wlab
