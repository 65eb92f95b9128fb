#include "wlab/transducer.hpp"

#include <deque>
#include <map>
#include <stdexcept>

namespace wlab {

namespace {

std::string word_key(const std::deque<Digit>& w) {
  std::string s = std::to_string(w.size()) + ":";
  for (Digit d : w) s += std::to_string(d) + ",";
  return s;
}

class Identity final : public Machine {
 public:
  std::string name() const override { return "id"; }
  void feed(Digit d, Word& out) override { out.push_back(d); }
  MachinePtr clone() const override { return std::make_unique<Identity>(); }
  std::string state_key() const override { return ""; }
};

class DigitMap final : public Machine {
 public:
  DigitMap(std::string name, std::function<Digit(Digit)> f) : name_(std::move(name)), f_(std::move(f)) {}
  std::string name() const override { return name_; }
  void feed(Digit d, Word& out) override { out.push_back(f_(d)); }
  MachinePtr clone() const override { return std::make_unique<DigitMap>(*this); }
  std::string state_key() const override { return ""; }

 private:
  std::string name_;
  std::function<Digit(Digit)> f_;
};

class Composite final : public Machine {
 public:
  Composite(MachinePtr a, MachinePtr b) : a_(std::move(a)), b_(std::move(b)) {}
  std::string name() const override { return b_->name() + " o " + a_->name(); }
  void feed(Digit d, Word& out) override {
    Word mid;
    a_->feed(d, mid);
    for (Digit x : mid) b_->feed(x, out);
  }
  MachinePtr clone() const override { return std::make_unique<Composite>(a_->clone(), b_->clone()); }
  std::string state_key() const override {
    std::string ka = a_->state_key();
    return std::to_string(ka.size()) + "#" + ka + b_->state_key();
  }

 private:
  MachinePtr a_, b_;
};

// Interleaves two output queues, always emitting left then right.
struct Interleaver {
  std::deque<Digit> left, right;
  void drain(Word& out) {
    while (!left.empty() && !right.empty()) {
      out.push_back(left.front());
      out.push_back(right.front());
      left.pop_front();
      right.pop_front();
    }
  }
  std::string key() const { return word_key(left) + word_key(right); }
};

class PairWithId final : public Machine {
 public:
  explicit PairWithId(MachinePtr t) : t_(std::move(t)) {}
  std::string name() const override { return "<id," + t_->name() + ">"; }
  void feed(Digit d, Word& out) override {
    q_.left.push_back(d);
    Word o;
    t_->feed(d, o);
    q_.right.insert(q_.right.end(), o.begin(), o.end());
    q_.drain(out);
  }
  MachinePtr clone() const override {
    auto c = std::make_unique<PairWithId>(t_->clone());
    c->q_ = q_;
    return c;
  }
  std::string state_key() const override { return q_.key() + t_->state_key(); }

 private:
  MachinePtr t_;
  Interleaver q_;
};

class Juxtaposition final : public Machine {
 public:
  Juxtaposition(MachinePtr s, MachinePtr t) : s_(std::move(s)), t_(std::move(t)) {}
  std::string name() const override { return s_->name() + " x " + t_->name(); }
  void feed(Digit d, Word& out) override {
    Word o;
    (odd_ ? t_ : s_)->feed(d, o);
    auto& q = odd_ ? q_.right : q_.left;
    q.insert(q.end(), o.begin(), o.end());
    odd_ = !odd_;
    q_.drain(out);
  }
  MachinePtr clone() const override {
    auto c = std::make_unique<Juxtaposition>(s_->clone(), t_->clone());
    c->q_ = q_;
    c->odd_ = odd_;
    return c;
  }
  std::string state_key() const override {
    std::string ks = s_->state_key();
    return (odd_ ? "1" : "0") + q_.key() + std::to_string(ks.size()) + "#" + ks + t_->state_key();
  }

 private:
  MachinePtr s_, t_;
  Interleaver q_;
  bool odd_ = false;
};

class BitFlip final : public Machine {
 public:
  explicit BitFlip(MachinePtr m) : m_(std::move(m)) {}
  std::string name() const override { return "flip(" + m_->name() + ")"; }
  void feed(Digit d, Word& out) override {
    Word o;
    m_->feed(d, o);
    for (Digit x : o) out.push_back(flip_bit0(x));
  }
  MachinePtr clone() const override { return std::make_unique<BitFlip>(m_->clone()); }
  std::string state_key() const override { return m_->state_key(); }

 private:
  MachinePtr m_;
};

}  // namespace

Word run(const Machine& m, const NameStream& p, std::size_t steps) {
  MachinePtr c = m.clone();
  Word out;
  for (std::size_t i = 0; i < steps; ++i) c->feed(p.digit(i), out);
  return out;
}

RunResult run_ep(const Machine& m, const NameStream& p, std::size_t max_periods) {
  if (!p.is_ep()) throw std::invalid_argument("run_ep needs an eventually periodic input");
  MachinePtr c = m.clone();
  Word out;
  for (Digit d : p.prefix()) c->feed(d, out);
  std::map<std::string, std::pair<std::size_t, std::size_t>> seen;  // key -> (period, output length)
  RunResult r;
  for (std::size_t k = 0; k <= max_periods; ++k) {
    auto [it, fresh] = seen.emplace(c->state_key(), std::make_pair(k, out.size()));
    if (!fresh) {
      std::size_t start = it->second.second;
      Word loop(out.begin() + static_cast<std::ptrdiff_t>(start), out.end());
      r.periods_used = k;
      if (loop.empty()) {
        r.kind = RunResult::Kind::finite;
        r.finite_output = out;
        return r;
      }
      for (Digit d : loop)
        if (d == kReset) r.resets_diverge = true;
      r.kind = RunResult::Kind::infinite;
      r.output = NameStream::periodic(Word(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(start)), loop);
      return r;
    }
    for (Digit d : p.period()) c->feed(d, out);
  }
  r.periods_used = max_periods;
  return r;
}

Committed after_last_reset(const Word& raw) {
  Committed c;
  for (Digit d : raw) {
    if (d == kReset) {
      c.digits.clear();
      ++c.resets;
    } else {
      c.digits.push_back(d);
    }
  }
  return c;
}

MachinePtr identity_machine() { return std::make_unique<Identity>(); }
MachinePtr digit_map_machine(std::string name, std::function<Digit(Digit)> f) {
  return std::make_unique<DigitMap>(std::move(name), std::move(f));
}
MachinePtr compose(MachinePtr first, MachinePtr second) {
  return std::make_unique<Composite>(std::move(first), std::move(second));
}
MachinePtr pair_with_id(MachinePtr t) { return std::make_unique<PairWithId>(std::move(t)); }
MachinePtr juxtapose(MachinePtr s, MachinePtr t) { return std::make_unique<Juxtaposition>(std::move(s), std::move(t)); }
MachinePtr flip_output_bit(MachinePtr m) { return std::make_unique<BitFlip>(std::move(m)); }

Digit flip_bit0(Digit d) { return d == kReset ? d : d ^ 1; }

NameStream flip_bit0(const NameStream& s) {
  Digit (*f)(Digit) = flip_bit0;
  if (s.is_ep()) {
    Word u = s.prefix(), v = s.period();
    for (auto& d : u) d = f(d);
    for (auto& d : v) d = f(d);
    return NameStream::periodic(u, v);
  }
  NameStream g = NameStream::generated([s, f](std::size_t i) { return f(s.digit(i)); });
  if (s.family()) g = g.with_family(std::make_shared<const Family>(s.family()->map_digits(f)));
  return g;
}

}  // namespace wlab
