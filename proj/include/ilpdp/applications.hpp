#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ilpdp/dp_solver.hpp"
#include "ilpdp/proximity.hpp"
#include "ilpdp/rational.hpp"
#include "ilpdp/reductions.hpp"

namespace ilpdp {

struct KnapsackResult {
  /// Empty when an Equality instance has no exact fill.
  std::optional<Wide> value;
  /// One entry per item (the AtMost slack is not reported).
  std::vector<Wide> x;
};

/// Max-efficiency item at C / w_i (lowest index on ties), proximity shift,
/// then the DP on the small remainder.
KnapsackResult solve_unbounded_knapsack(const KnapsackInstance& k, const SolveOptions& options = {});

/// Feasibility of an exact fill (AtMost is always feasible). The witness
/// covers the items only.
Solution solve_unbounded_subset_sum(const KnapsackInstance& k, const SolveOptions& options = {});

/// Table over capacities 0..C. Throws CapacityError above kKnapsackTableLimit.
std::optional<std::int64_t> knapsack_dp_oracle(const KnapsackInstance& k);

inline constexpr std::int64_t kKnapsackTableLimit = std::int64_t{1} << 28;

struct SchedulingInstance {
  std::vector<std::int64_t> p;
  std::int64_t M = 1;
  Rational eps{1, 4};
};

struct Schedule {
  /// machines[i] lists job indices on machine i, ascending.
  std::vector<std::vector<std::size_t>> machines;
  std::int64_t makespan = 0;
};

/// Configuration counts above this abort schedule_decide_tau.
inline constexpr std::size_t kMaxConfigurations = 200'000;

/// Either a schedule of makespan at most (1 + eps) tau, or nullopt, which
/// certifies that no schedule of makespan at most tau exists.
std::optional<Schedule> schedule_decide_tau(const SchedulingInstance& inst, std::int64_t tau,
                                            const SolveOptions& options = {});

/// Binary search over tau_j = ceil(LB (1 + eps)^j) capped at sum p.
Schedule schedule_dual_approx(const SchedulingInstance& inst, const SolveOptions& options = {});

/// "M eps_num eps_den" then one processing time per line.
SchedulingInstance parse_scheduling(std::string_view text);

std::int64_t makespan_of(const SchedulingInstance& inst, const Schedule& s);

}  // namespace ilpdp
