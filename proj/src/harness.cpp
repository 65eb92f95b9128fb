#include "wlab/harness.hpp"

#include <stdexcept>

namespace wlab {

namespace {

std::string show(const NameStream& s) {
  if (s.is_ep()) return s.to_string();
  std::string out = s.to_string();
  if (out == "<generated>") out = word_to_string(s.take(16)) + "...";
  return out;
}

// Decoded point of an exact output under r.
Observation point_of(const Exact& e, const Representation& r) {
  if (e.point) return Observation::of(*e.point);
  return r.decode(e.name);
}

}  // namespace

Exact evaluate(const Construction& c, const NameStream& x) {
  Exact e;
  if (c.exact) {
    e = c.exact(x);
  } else {
    RunResult r = run_ep(*c.make(), x);
    if (r.kind == RunResult::Kind::finite)
      throw std::runtime_error(c.name + " stops writing after " + word_to_string(r.finite_output));
    if (r.kind != RunResult::Kind::infinite) throw std::runtime_error(c.name + ": no periodicity certificate");
    e.name = r.output;
  }
  MachinePtr m = c.make();
  Word out;
  for (std::size_t i = 0; out.size() < c.check_depth; ++i) {
    if (i > 64 * c.check_depth + 100000) throw std::runtime_error(c.name + ": machine output stalls");
    m->feed(x.digit(i), out);
  }
  for (std::size_t i = 0; i < c.check_depth; ++i)
    if (out[i] != e.name.digit(i))
      throw std::runtime_error(c.name + ": machine and exact output differ at digit " + std::to_string(i));
  return e;
}

nlohmann::json ReductionReport::to_json(bool include_passing) const {
  nlohmann::json j;
  j["reduction"] = reduction;
  j["witness"] = witness;
  j["samples"] = inputs;
  nlohmann::json list = nlohmann::json::array();
  for (const auto& e : entries) {
    if (!include_passing && e.pass && !e.flagged) continue;
    nlohmann::json s;
    s["input"] = e.input;
    s["K-output"] = e.k_output;
    s["G-answer"] = e.g_answer;
    s["H-output"] = e.h_output;
    s["verdict"] = e.pass ? "pass" : "fail";
    if (e.flagged) s["flag"] = "K output outside dom(g)";
    if (!e.reason.empty()) s["reason"] = e.reason;
    list.push_back(std::move(s));
  }
  j["per-sample"] = std::move(list);
  j["summary"] = {{"checks", entries.size()},
                  {"passed", passed},
                  {"failed", failed},
                  {"flagged", flagged},
                  {"note", "answers come from the canonical solver and an adversarial sampler; "
                           "a clean report does not prove the reduction"}};
  return j;
}

ReductionReport verify_reduction(const WitnessPair& w, const std::vector<NameStream>& samples, Rng& rng) {
  ReductionReport rep;
  rep.reduction = w.f->name() + (w.strong ? " <=sW " : " <=W ") + w.g->name();
  rep.witness = w.name + " (K=" + w.K.name + ", H=" + w.H.name + ")";
  auto record = [&](SampleReport s) {
    if (s.pass)
      ++rep.passed;
    else
      ++rep.failed;
    if (s.flagged) ++rep.flagged;
    rep.entries.push_back(std::move(s));
  };
  for (const auto& x : samples) {
    ++rep.inputs;
    SampleReport base;
    base.input = show(x);
    Observation xo = w.f->decode_input(x);
    if (!xo.is_point()) {
      base.reason = "sample does not name an input of " + w.f->name() + ": " + xo.reason;
      record(base);
      continue;
    }
    const bool in_f = w.f->in_domain(xo.point);
    try {
      Exact k = evaluate(w.K, x);
      base.k_output = show(k.name);
      Observation ko = point_of(k, w.g->input());
      std::vector<NameStream> answers;
      if (!ko.is_point() || !w.g->in_domain(ko.point)) {
        base.flagged = !in_f;
        base.pass = !in_f;
        base.reason = "K output outside dom(" + w.g->name() + ")" + (ko.is_point() ? "" : ": " + ko.reason);
        record(base);
        continue;
      }
      answers.push_back(w.g->encode(w.g->solve(ko.point)));
      for (auto& a : w.g->sample_answers(ko.point, rng)) answers.push_back(std::move(a));
      for (const auto& y : answers) {
        SampleReport s = base;
        s.g_answer = show(y);
        try {
          Observation yo = w.g->decode_output(y);
          if (!yo.is_point() || !w.g->accepts(ko.point, yo.point))
            throw std::logic_error("answer sampler produced an invalid answer");
          NameStream h_in = w.strong ? y : pair(x, y);
          Exact h = evaluate(w.H, h_in);
          s.h_output = show(h.name);
          if (!in_f) {
            s.pass = true;
          } else {
            Observation ho = point_of(h, w.f->output());
            if (!ho.is_point()) {
              s.reason = "H output names no point: " + ho.reason;
            } else if (!w.f->accepts(xo.point, ho.point)) {
              s.reason = "H output " + ho.point.to_string() + " is not a solution";
            } else {
              s.pass = true;
            }
          }
        } catch (const std::exception& e) {
          s.pass = false;
          s.reason = e.what();
        }
        record(std::move(s));
      }
    } catch (const std::exception& e) {
      base.pass = false;
      base.reason = e.what();
      record(base);
    }
  }
  return rep;
}

}  // namespace wlab
