#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "ilpdp/wide.hpp"

namespace ilpdp {

/// Element of the (max,+) semiring: a Wide value or the -inf sentinel.
/// Arithmetic is checked; the sentinel never takes part in integer math.
class MaxPlus {
 public:
  constexpr MaxPlus() = default;
  explicit MaxPlus(Wide v) : v_(v) {
    if (v == kWideMin) throw CapacityError("value collides with the -inf sentinel");
  }
  static constexpr MaxPlus neg_inf() { return MaxPlus(); }

  bool finite() const { return v_ != kWideMin; }
  /// Throws std::logic_error on -inf.
  Wide value() const;

  friend MaxPlus operator+(MaxPlus a, MaxPlus b) {
    if (!a.finite() || !b.finite()) return MaxPlus();
    return MaxPlus(checked_add(a.v_, b.v_));
  }
  friend bool operator==(MaxPlus, MaxPlus) = default;
  friend std::strong_ordering operator<=>(MaxPlus a, MaxPlus b) { return a.v_ <=> b.v_; }

 private:
  Wide v_ = kWideMin;
};

using MaxPlusSeq = std::vector<MaxPlus>;
using BoolSeq = std::vector<std::uint8_t>;

/// t_k = max_{i+j=k} r_i + s_j, naive. Throws std::invalid_argument on empty input.
MaxPlusSeq maxplus_conv(const MaxPlusSeq& r, const MaxPlusSeq& s);

/// Exact (+,*) product of nonnegative sequences. Uses a three-prime NTT with
/// CRT reconstruction, or schoolbook for short inputs. Throws CapacityError if
/// a coefficient could exceed the CRT range.
std::vector<Wide> exact_integer_conv(const std::vector<std::int64_t>& r, const std::vector<std::int64_t>& s);

/// t_k = OR_{i+j=k} (r_i AND s_j), via a single-prime NTT and thresholding.
BoolSeq boolean_conv(const BoolSeq& r, const BoolSeq& s);

namespace detail {
/// Schoolbook convolution for small or test inputs.
std::vector<Wide> schoolbook_conv(const std::vector<std::int64_t>& r, const std::vector<std::int64_t>& s);
/// Cyclic-free NTT product modulo one of the supported primes.
std::vector<std::uint32_t> ntt_multiply(const std::vector<std::uint32_t>& r, const std::vector<std::uint32_t>& s,
                                        std::uint32_t prime);
inline constexpr std::uint32_t kPrimes[3] = {998244353u, 167772161u, 469762049u};
}  // namespace detail

}  // namespace ilpdp
