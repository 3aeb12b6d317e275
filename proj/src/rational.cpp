#include "ilpdp/rational.hpp"

namespace ilpdp {

namespace {
const BigInt& wide_max_big() {
  static const BigInt v = [] {
    BigInt r = 1;
    r <<= 127;
    return r - 1;
  }();
  return v;
}
}  // namespace

Wide to_wide(const BigInt& v) {
  if (v > wide_max_big() || v < -wide_max_big() - 1)
    throw CapacityError("value " + v.str() + " does not fit in 128 bits");
  return parse_wide(v.str());
}

BigInt to_big(Wide v) { return BigInt(to_string(v)); }

Wide floor_to_wide(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  BigInt q = num / den;
  if (num % den != 0 && num < 0) q -= 1;
  return to_wide(q);
}

Wide ceil_to_wide(const Rational& r) { return -floor_to_wide(-r); }

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(to_big(parse_wide(text)));
  const Wide num = parse_wide(text.substr(0, slash));
  const Wide den = parse_wide(text.substr(slash + 1));
  if (den <= 0) throw std::invalid_argument("rational '" + std::string(text) + "' needs a positive denominator");
  return Rational(to_big(num), to_big(den));
}

std::string to_string(const Rational& r) {
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" + den.str();
}

}  // namespace ilpdp
