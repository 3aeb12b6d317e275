#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "ilpdp/instance.hpp"
#include "ilpdp/rational.hpp"

namespace ilpdp {

enum class BoundProvenance { Spencer, BeckFiala, UserSupplied, Exact };

std::string_view to_string(BoundProvenance p);

/// Certified upper bound H >= herdisc(A).
struct HerdiscBound {
  Rational value;
  BoundProvenance provenance = BoundProvenance::Spencer;
  /// Set when a supplied value was raised to the Delta/2 floor.
  std::optional<std::string> warning;
};

/// ceil(6 * sqrt(m) * Delta).
HerdiscBound spencer_bound(const IlpInstance& inst);
/// Largest column l1 norm.
HerdiscBound beck_fiala_bound(const IlpInstance& inst);
/// For a single row, herdisc(A) = Delta/2 exactly: signing entries greedily
/// keeps every partial sum within [-Delta, Delta].
std::optional<HerdiscBound> single_row_bound(const IlpInstance& inst);

/// The override when given (clamped to Delta/2), otherwise the best bound
/// available from the cheap certificates above.
HerdiscBound choose_H(const IlpInstance& inst, const std::optional<Rational>& override_value = std::nullopt);

inline constexpr std::size_t kExactHerdiscMaxCols = 16;

/// Exponential enumeration over column subsets and colorings; test oracle.
/// Throws std::invalid_argument for n > 16.
HerdiscBound exact_herdisc(const IlpInstance& inst);

/// Searches 0 <= z <= x for a balanced split with
/// ceil(|x|/6) <= |z| <= floor(5|x|/6) and ||A(z - x/2)||_inf <= 2H.
/// Requires 1 < |x|_1 <= 20 and prod(x_i + 1) <= 1e6.
bool split_witness_exists(const IlpInstance& inst, std::span<const std::int64_t> x, const Rational& H);

}  // namespace ilpdp
