#include "wlab/sampling.hpp"

#include <set>
#include <stdexcept>

#include "wlab/family.hpp"

namespace wlab {

namespace {

std::uint64_t below(Rng& rng, std::uint64_t n) { return n == 0 ? 0 : rng() % n; }
bool chance(Rng& rng, int percent) { return static_cast<int>(rng() % 100) < percent; }

Rational small_rational(Rng& rng) {
  std::int64_t den = 1 + static_cast<std::int64_t>(below(rng, 8));
  return Rational(static_cast<std::int64_t>(below(rng, static_cast<std::uint64_t>(den) + 1)), den);
}

NameStream base_name(const Space& s, Rng& rng) {
  auto with_head = [&](Digit head, Digit max_tail) {
    NameStream tail = random_ep(rng, max_tail, 3, 2);
    Word u{head};
    Word rest = tail.prefix();
    u.insert(u.end(), rest.begin(), rest.end());
    return NameStream::periodic(u, tail.period());
  };
  switch (s.kind) {
    case Space::Kind::naturals: return with_head(below(rng, 10), 6);
    case Space::Kind::finite:
      if (s.n == 0) throw std::invalid_argument("fin(0) has no names");
      return with_head(below(rng, s.n), 6);
    case Space::Kind::sierpinski:
      return chance(rng, 40) ? NameStream::constant(0) : random_ep(rng, 2);
    case Space::Kind::cantor: return random_ep(rng, 1, 6, 4);
    case Space::Kind::baire: return random_ep(rng, 4);
    case Space::Kind::unit_interval: return with_head(interval_index(small_rational(rng)), 3);
    case Space::Kind::closed_sets: {
      if (s.range_coding) return random_ep(rng, 9, 5, 3);
      Word u(below(rng, 5)), v(1 + below(rng, 2));
      for (auto& d : u) d = random_ball(*s.inner, rng);
      for (auto& d : v) d = chance(rng, 50) ? 0 : random_ball(*s.inner, rng);
      return NameStream::periodic(u, v);
    }
  }
  return {};
}

NameStream layered_name(const Representation& r, std::size_t k, Rng& rng);

Representation prefix_of(const Representation& r, std::size_t k) {
  Representation out(r.base());
  for (std::size_t i = 0; i < k; ++i) {
    switch (r.layers()[i]) {
      case Representation::Layer::precompletion: out = out.precompletion(); break;
      case Representation::Layer::completion: out = out.completion(); break;
      case Representation::Layer::jump: out = out.jump(); break;
    }
  }
  return out;
}

NameStream layered_name(const Representation& r, std::size_t k, Rng& rng) {
  if (k == 0) return base_name(r.base(), rng);
  switch (r.layers()[k - 1]) {
    case Representation::Layer::jump: {
      if (prefix_of(r, k - 1).has_jump()) throw std::invalid_argument("nested jumps have no sampled names");
      std::vector<NameStream> lead;
      for (std::uint64_t i = below(rng, 4); i > 0; --i) lead.push_back(layered_name(r, k - 1, rng));
      std::vector<NameStream> rep{layered_name(r, k - 1, rng)};
      if (chance(rng, 10)) rep.push_back(layered_name(r, k - 1, rng));
      return tuple_infinite(Family::eventually(std::move(lead), std::move(rep)));
    }
    case Representation::Layer::completion:
      if (chance(rng, 15)) {
        Word u(below(rng, 4));
        for (auto& d : u) d = below(rng, 4);
        return NameStream::periodic(u, {0});
      }
      [[fallthrough]];
    case Representation::Layer::precompletion: {
      NameStream q = layered_name(r, k - 1, rng);
      if (!q.is_ep()) return plus_one_embed(q);
      NameStream lifted = plus_one_embed(q);
      switch (below(rng, 3)) {
        case 0: return lifted;
        case 1: return pair(NameStream::constant(0), lifted);
        default: {
          Word u(1 + below(rng, 3), 0);
          u.insert(u.end(), lifted.prefix().begin(), lifted.prefix().end());
          return NameStream::periodic(u, lifted.period());
        }
      }
    }
  }
  return {};
}

}  // namespace

NameStream random_ep(Rng& rng, Digit max_digit, std::size_t max_prefix, std::size_t max_period) {
  Word u(below(rng, max_prefix)), v(1 + below(rng, max_period));
  for (auto& d : u) d = below(rng, max_digit + 1);
  for (auto& d : v) d = below(rng, max_digit + 1);
  return NameStream::periodic(u, v);
}

std::uint64_t random_ball(const Space& base, Rng& rng) {
  if (chance(rng, 20)) return BallCode{below(rng, 20), 0, below(rng, 5)}.encode();
  switch (base.kind) {
    case Space::Kind::naturals: return natural_ball(below(rng, 8));
    case Space::Kind::finite: return natural_ball(below(rng, base.n));
    case Space::Kind::cantor: {
      Word w(1 + below(rng, 3));
      for (auto& d : w) d = below(rng, 2);
      return cantor_cylinder_ball(w);
    }
    case Space::Kind::baire: {
      Word w(1 + below(rng, 2));
      for (auto& d : w) d = below(rng, 3);
      return baire_cylinder_ball(w);
    }
    case Space::Kind::unit_interval:
      return interval_ball(small_rational(rng), Rational(static_cast<std::int64_t>(1 + below(rng, 4)), 16));
    default: throw std::invalid_argument("no balls in " + base.name());
  }
}

std::vector<NameStream> all_ep_streams(Digit alphabet, std::size_t max_size) {
  std::set<NameStream> seen;
  std::vector<NameStream> out;
  for (std::size_t total = 1; total <= max_size; ++total) {
    for (std::size_t plen = 0; plen < total; ++plen) {
      std::size_t n = total;
      std::uint64_t count = 1;
      for (std::size_t i = 0; i < n; ++i) count *= alphabet;
      for (std::uint64_t code = 0; code < count; ++code) {
        Word u(plen), v(total - plen);
        std::uint64_t c = code;
        for (auto& d : u) d = c % alphabet, c /= alphabet;
        for (auto& d : v) d = c % alphabet, c /= alphabet;
        NameStream s = NameStream::periodic(u, v);
        if (seen.insert(s).second) out.push_back(s);
      }
    }
  }
  return out;
}

NameStream random_name(const Representation& r, Rng& rng) { return layered_name(r, r.layers().size(), rng); }

}  // namespace wlab
