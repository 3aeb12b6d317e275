#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "ilpdp/wide.hpp"

namespace ilpdp {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

Wide to_wide(const BigInt& v);
BigInt to_big(Wide v);

Wide floor_to_wide(const Rational& r);
Wide ceil_to_wide(const Rational& r);

/// Accepts "p", "-p" or "p/q" with q > 0.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

}  // namespace ilpdp
