#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ilpdp {

/// Signed 128-bit integer used for table values, bounds and witnesses.
using Wide = __int128;

inline constexpr Wide kWideMax = std::numeric_limits<Wide>::max();
inline constexpr Wide kWideMin = std::numeric_limits<Wide>::min();

/// Raised whenever a computation would leave the representable range or a
/// configured memory/enumeration budget.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

inline Wide checked_add(Wide a, Wide b) {
  Wide r;
  if (__builtin_add_overflow(a, b, &r)) throw CapacityError("integer overflow in addition");
  return r;
}

inline Wide checked_sub(Wide a, Wide b) {
  Wide r;
  if (__builtin_sub_overflow(a, b, &r)) throw CapacityError("integer overflow in subtraction");
  return r;
}

inline Wide checked_mul(Wide a, Wide b) {
  Wide r;
  if (__builtin_mul_overflow(a, b, &r)) throw CapacityError("integer overflow in multiplication");
  return r;
}

inline Wide checked_pow(Wide base, unsigned exp) {
  Wide r = 1;
  for (unsigned i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

inline Wide wide_abs(Wide a) {
  if (a == kWideMin) throw CapacityError("integer overflow in abs");
  return a < 0 ? -a : a;
}

/// Floor division toward negative infinity.
inline Wide floor_div(Wide a, Wide b) {
  Wide q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Wide ceil_div(Wide a, Wide b) { return -floor_div(-a, b); }

/// floor(a / 2^shift) for any shift >= 0.
inline std::int64_t floor_shift(std::int64_t a, std::int64_t shift) {
  if (shift >= 63) return a < 0 ? -1 : 0;
  return a >> shift;  // arithmetic shift rounds toward -inf
}

std::string to_string(Wide v);

/// Parses an optionally signed decimal integer; throws std::invalid_argument
/// on malformed text and CapacityError if the value does not fit.
Wide parse_wide(std::string_view text);

inline std::int64_t narrow_to_int64(Wide v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw CapacityError("value " + to_string(v) + " does not fit in 64 bits");
  return static_cast<std::int64_t>(v);
}

}  // namespace ilpdp
