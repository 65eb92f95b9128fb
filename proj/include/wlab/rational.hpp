#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace wlab {

// 64-bit numerators/denominators are ample at desk scale; depth-dependent
// quantities (dyadic measures) guard their own ranges.
using Rational = boost::rational<std::int64_t>;

std::string to_string(const Rational& r);
// Accepts "a/b", integers and finite decimals such as "0.55" or "-0.1".
Rational parse_rational(std::string_view text);

}  // namespace wlab
