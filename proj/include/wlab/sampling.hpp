#pragma once

#include <random>
#include <vector>

#include "wlab/spaces.hpp"

namespace wlab {

using Rng = std::mt19937_64;

// Random EP stream with digits <= max_digit, prefix < max_prefix, period in [1, max_period].
NameStream random_ep(Rng& rng, Digit max_digit, std::size_t max_prefix = 5, std::size_t max_period = 4);

// Every EP stream over {0..alphabet-1} with |u|+|v| <= max_size, each once.
std::vector<NameStream> all_ep_streams(Digit alphabet, std::size_t max_size);

// Random name under r: EP for plain layers, a tupled family for a jump.
// Completed representations get some names of bottom and some padded names.
NameStream random_name(const Representation& r, Rng& rng);

// Random ball code meaningful for the base space (empty balls included).
std::uint64_t random_ball(const Space& base, Rng& rng);

}  // namespace wlab
