#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ilpdp/convolution.hpp"
#include "ilpdp/discrepancy.hpp"
#include "ilpdp/instance.hpp"
#include "ilpdp/rational.hpp"

namespace ilpdp {

enum class Strategy { Naive, Conv, Auto };
enum class MergeMode { MaxPlus, Boolean };
enum class RadiusRule { Uniform, RowAdaptive, Auto };

std::string_view to_string(Strategy s);
/// Accepts "naive", "conv" and "auto"; throws std::invalid_argument otherwise.
Strategy parse_strategy(std::string_view text);

inline constexpr std::uint64_t kDefaultBudgetBytes = std::uint64_t{2} << 30;

struct SolveOptions {
  std::optional<Rational> H;
  Strategy strategy = Strategy::Auto;
  RadiusRule radius_rule = RadiusRule::Uniform;
  /// Rows whose entries share a sign confine every partial right-hand side
  /// to [0, b_k] (or [b_k, 0]); boxes are intersected with that interval.
  bool clip_sign_rows = true;
  /// Use floor(|b_k| / min_j |A_kj|) from strictly signed rows as an extra l1 cap.
  bool structural_l1 = true;
  /// Copy a level forward when its two predecessors have identical boxes and tables.
  bool fixpoint_shortcut = true;
  std::uint64_t budget_bytes = kDefaultBudgetBytes;
};

/// Centers are floor(b / 2^(K-i)); level boxes are center +- radius, possibly
/// clipped by sign rows. All coordinates are absolute right-hand sides.
struct LevelPlan {
  std::int64_t K = 0;
  std::vector<std::vector<std::int64_t>> centers;
  std::vector<std::int64_t> radii;
  std::vector<std::vector<std::int64_t>> lo;
  std::vector<std::vector<std::int64_t>> hi;
};

inline constexpr std::int64_t kZeroMarker = -1;
/// Backpointer left open by the convolution merge; see resolve_back.
inline constexpr std::int64_t kUnresolved = -2;

/// One DP stage. Only finite cells are stored, sorted lexicographically by
/// coordinate; every other cell of the box is -inf.
struct Level {
  std::size_t index = 0;
  std::size_t dims = 0;
  std::vector<std::int64_t> center;
  std::vector<std::int64_t> lo;
  std::vector<std::int64_t> hi;
  std::vector<std::int64_t> coords;
  std::vector<MaxPlus> values;
  /// Level 0: column index or kZeroMarker. Otherwise: index of b'' in the previous level.
  std::vector<std::int64_t> back;

  std::size_t size() const { return values.size(); }
  std::span<const std::int64_t> point(std::size_t k) const { return {coords.data() + k * dims, dims}; }
  bool empty_box() const;
  bool in_box(std::span<const std::int64_t> p) const;
  std::uint64_t cell_count() const;
  std::optional<std::size_t> find(std::span<const std::int64_t> p) const;
  MaxPlus value_at(std::span<const std::int64_t> p) const;
  /// Lookup by offset from the center.
  MaxPlus value_at_offset(std::span<const std::int64_t> delta) const;
  std::size_t bytes() const;
};

struct LevelStats {
  std::size_t index = 0;
  std::uint64_t cells = 0;
  std::size_t finite = 0;
  Strategy kernel = Strategy::Naive;
  bool copied = false;
  double seconds = 0;
};

struct SolveStats {
  HerdiscBound H;
  std::vector<std::int64_t> radii;
  std::int64_t K = 0;
  BigInt l1_cap = 0;
  std::size_t normalized_cols = 0;
  Strategy strategy = Strategy::Auto;
  bool feasibility_fallback = false;
  double normalize_seconds = 0;
  double plan_seconds = 0;
  double merge_seconds = 0;
  double unbounded_seconds = 0;
  double reconstruct_seconds = 0;
  double total_seconds = 0;
  std::vector<LevelStats> levels;
  std::uint64_t peak_bytes = 0;
};

/// n^2 (m (Delta + ||b||_inf))^(2m+1). Throws CapacityError when it exceeds 128 bits.
Wide l1_norm_bound(const IlpInstance& inst);
BigInt l1_norm_bound_big(const IlpInstance& inst);
/// The same bound for right-hand side 0: n^2 (m (Delta + 1))^(2m+1).
BigInt l1_norm_bound_zero_rhs(const IlpInstance& inst);
/// min over rows with all entries of one strict sign of floor(|b_k| / min_j |A_kj|).
std::optional<BigInt> structural_l1_bound(const IlpInstance& inst);

/// ceil(4H) + 2.
std::int64_t uniform_radius(const Rational& H);
/// R_k = 4 H' Delta_k + 2 with H' = ceil(6 sqrt(m)); zero rows use `fallback`
/// (the uniform radius of choose_H when absent).
std::vector<std::int64_t> row_adaptive_radii(const IlpInstance& inst, std::optional<std::int64_t> fallback = std::nullopt);

LevelPlan plan_levels(const IlpInstance& inst, std::span<const std::int64_t> radii, const BigInt& l1_cap,
                      bool clip_sign_rows = false);
LevelPlan plan_levels(const IlpInstance& inst, const Rational& H, const BigInt& l1_cap, bool clip_sign_rows = false);

Level init_level0(const IlpInstance& inst, const LevelPlan& plan);
/// Builds level i from level i-1 by enumerating split pairs.
Level merge_naive(const Level& prev, const LevelPlan& plan, std::size_t i);
/// Same table via one self-convolution of the mixed-radix encoding of prev.
/// Backpointers are left as kUnresolved. Throws CapacityError when the
/// encoded sequence is too long.
Level merge_convolution(const Level& prev, const LevelPlan& plan, std::size_t i, MergeMode mode);

/// sum_k stride_k (R_k + 1 + p_k - center_k) with base_k = 4 R_k + 3, dimension 0 least significant.
std::uint64_t conv_position(std::span<const std::int64_t> p, std::span<const std::int64_t> center,
                            std::span<const std::int64_t> radii);

/// Runs levels 0..K. `stop` is consulted after each level; returning true
/// ends the run early.
std::vector<Level> build_levels(const IlpInstance& inst, const LevelPlan& plan, MergeMode mode, Strategy strategy,
                                std::uint64_t budget_bytes = kDefaultBudgetBytes, SolveStats* stats = nullptr,
                                const std::function<bool(const Level&)>& stop = {}, bool fixpoint_shortcut = true);

/// Index of b'' in level i-1 for cell idx of level i; probes candidates in
/// lexicographic order when the backpointer is unresolved.
std::size_t resolve_back(const std::vector<Level>& levels, std::size_t i, std::size_t idx);

/// Witness for cell idx of level i, verified against A x = point and c x = value.
std::vector<Wide> reconstruct(const IlpInstance& inst, const std::vector<Level>& levels, std::size_t i,
                              std::size_t idx);

Solution solve(const IlpInstance& inst, const SolveOptions& options = {}, SolveStats* stats = nullptr);
/// True iff max{c x : A x = 0, x >= 0} is positive.
bool detect_unbounded(const IlpInstance& inst, const SolveOptions& options = {}, SolveStats* stats = nullptr);
Solution feasible(const IlpInstance& inst, const SolveOptions& options = {}, SolveStats* stats = nullptr);
/// Binary search on tau over feasibility of (c, -1; A, 0) (x, s) = (tau, b).
/// The instance must be bounded.
Solution optimize_via_feasibility(const IlpInstance& inst, const SolveOptions& options = {});

}  // namespace ilpdp
