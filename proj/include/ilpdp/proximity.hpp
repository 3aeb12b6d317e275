#pragma once

#include <cstdint>
#include <vector>

#include "ilpdp/dp_solver.hpp"
#include "ilpdp/instance.hpp"
#include "ilpdp/rational.hpp"

namespace ilpdp {

enum class LpStatus { Optimal, Infeasible, Unbounded };

/// Optimal basic solution of max{c x : A x = b, x >= 0} over the rationals.
struct FractionalVertex {
  std::vector<Rational> x_star;
  /// Columns with nonzero value, ascending.
  std::vector<std::size_t> basis;
  LpStatus lp_status = LpStatus::Infeasible;
  Rational value;
};

struct ProximityReduction {
  std::vector<Wide> ell;
  IlpInstance reduced;
};

/// Upper limit on the number of column subsets lp_vertex_optimum may visit.
inline constexpr std::uint64_t kBasisEnumerationBudget = 5'000'000;

/// Enumerates column subsets of size <= m (and <= m+1 for extreme rays) in
/// exact arithmetic. Ties go to the lexicographically smallest basis.
/// Throws CapacityError when the enumeration exceeds the budget.
FractionalVertex lp_vertex_optimum(const IlpInstance& inst, std::uint64_t budget = kBasisEnumerationBudget);

/// m (2 m Delta + 1)^m.
Wide proximity_distance(std::size_t m, std::int64_t delta);

/// ell_i = max(0, ceil(x*_i) - m (2 m Delta + 1)^m) and b - A ell.
/// Throws std::logic_error if ||b - A ell||_inf exceeds Delta m^2 (2 m Delta + 1)^m.
ProximityReduction proximity_reduce(const IlpInstance& inst, const FractionalVertex& v);

/// Stats describe the DP run on the reduced instance.
Solution solve_with_proximity(const IlpInstance& inst, const SolveOptions& options = {}, SolveStats* stats = nullptr);

}  // namespace ilpdp
