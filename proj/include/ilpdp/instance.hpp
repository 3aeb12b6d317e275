#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ilpdp/wide.hpp"

namespace ilpdp {

/// max{ c^T x : A x = b, x integral and nonnegative } with A of size m x n.
///
/// Pure feasibility instances carry an all-zero objective and
/// `feasibility_only() == true`.
class IlpInstance {
 public:
  /// `a` is row-major. Throws std::invalid_argument on inconsistent sizes.
  IlpInstance(std::size_t rows, std::size_t cols, std::vector<std::int64_t> a, std::vector<std::int64_t> b,
              std::optional<std::vector<std::int64_t>> c);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::int64_t a(std::size_t row, std::size_t col) const { return a_[row * cols_ + col]; }
  std::span<const std::int64_t> matrix() const { return a_; }
  std::span<const std::int64_t> rhs() const { return b_; }
  std::span<const std::int64_t> objective() const { return c_; }
  bool feasibility_only() const { return feasibility_only_; }

  std::vector<std::int64_t> column(std::size_t col) const;

  /// Same matrix and objective, different right-hand side.
  IlpInstance with_rhs(std::vector<std::int64_t> b) const;
  /// Same constraints with the objective dropped.
  IlpInstance without_objective() const;

  bool operator==(const IlpInstance&) const = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::int64_t> a_;
  std::vector<std::int64_t> b_;
  std::vector<std::int64_t> c_;
  bool feasibility_only_;
};

struct NormalizedInstance {
  IlpInstance inner;
  /// origin_map[k] is the original index of kept column k.
  std::vector<std::size_t> origin_map;
  std::size_t original_cols = 0;
};

enum class Status { Optimal, Feasible, Infeasible, Unbounded };

std::string_view to_string(Status s);

struct Solution {
  Status status = Status::Infeasible;
  std::optional<std::vector<Wide>> x;
  std::optional<Wide> value;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

IlpInstance parse_instance(std::string_view text);
std::string format_instance(const IlpInstance& inst);

/// Drops duplicate columns, keeping per distinct column the copy with the
/// largest objective coefficient (lowest original index on ties).
NormalizedInstance normalize(const IlpInstance& inst);

/// Maps a solution of the normalized instance back to the original columns.
std::vector<Wide> lift(const NormalizedInstance& norm, std::span<const Wide> x);

std::int64_t max_abs_entry(const IlpInstance& inst);
std::int64_t rhs_inf_norm(const IlpInstance& inst);

std::vector<Wide> apply_matrix(const IlpInstance& inst, std::span<const Wide> x);
Wide objective_value(const IlpInstance& inst, std::span<const Wide> x);
/// A x = b and x >= 0.
bool satisfies(const IlpInstance& inst, std::span<const Wide> x);

}  // namespace ilpdp
