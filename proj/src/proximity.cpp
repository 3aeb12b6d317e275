#include "ilpdp/proximity.hpp"

#include <optional>
#include <stdexcept>

namespace ilpdp {

namespace {

/// Solves A_S y = b for the columns S. Returns the unique solution when A_S
/// has full column rank and the system is consistent.
std::optional<std::vector<Rational>> solve_columns(const IlpInstance& inst, const std::vector<std::size_t>& cols) {
  const std::size_t m = inst.rows();
  const std::size_t k = cols.size();
  std::vector<std::vector<Rational>> M(m, std::vector<Rational>(k + 1));
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t t = 0; t < k; ++t) M[r][t] = inst.a(r, cols[t]);
    M[r][k] = inst.rhs()[r];
  }
  std::size_t row = 0;
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t pivot = row;
    while (pivot < m && M[pivot][col] == 0) ++pivot;
    if (pivot == m) return std::nullopt;  // dependent columns
    std::swap(M[row], M[pivot]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == row || M[r][col] == 0) continue;
      const Rational f = M[r][col] / M[row][col];
      for (std::size_t t = col; t <= k; ++t) M[r][t] -= f * M[row][t];
    }
    ++row;
  }
  for (std::size_t r = row; r < m; ++r)
    if (M[r][k] != 0) return std::nullopt;
  std::vector<Rational> y(k);
  for (std::size_t t = 0; t < k; ++t) y[t] = M[t][k] / M[t][t];
  return y;
}

/// If the columns S have a one-dimensional kernel, returns a generator.
std::optional<std::vector<Rational>> kernel_line(const IlpInstance& inst, const std::vector<std::size_t>& cols) {
  const std::size_t m = inst.rows();
  const std::size_t k = cols.size();
  std::vector<std::vector<Rational>> M(m, std::vector<Rational>(k));
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t t = 0; t < k; ++t) M[r][t] = inst.a(r, cols[t]);
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  std::optional<std::size_t> free_col;
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t pivot = row;
    while (pivot < m && M[pivot][col] == 0) ++pivot;
    if (pivot == m) {
      if (free_col) return std::nullopt;
      free_col = col;
      continue;
    }
    std::swap(M[row], M[pivot]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == row || M[r][col] == 0) continue;
      const Rational f = M[r][col] / M[row][col];
      for (std::size_t t = col; t < k; ++t) M[r][t] -= f * M[row][t];
    }
    pivot_cols.push_back(col);
    ++row;
  }
  if (!free_col) return std::nullopt;
  std::vector<Rational> d(k, 0);
  d[*free_col] = 1;
  for (std::size_t p = 0; p < pivot_cols.size(); ++p) d[pivot_cols[p]] = -M[p][*free_col] / M[p][pivot_cols[p]];
  return d;
}

template <class F>
void for_each_subset(std::size_t n, std::size_t size, F&& f) {
  std::vector<std::size_t> idx(size);
  for (std::size_t t = 0; t < size; ++t) idx[t] = t;
  if (size > n) return;
  while (true) {
    f(idx);
    std::size_t t = size;
    while (t > 0 && idx[t - 1] == n - size + t - 1) --t;
    if (t == 0) return;
    ++idx[t - 1];
    for (std::size_t u = t; u < size; ++u) idx[u] = idx[u - 1] + 1;
  }
}

BigInt binomial(std::size_t n, std::size_t k) {
  BigInt r = 1;
  for (std::size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace

FractionalVertex lp_vertex_optimum(const IlpInstance& inst, std::uint64_t budget) {
  const std::size_t m = inst.rows();
  const std::size_t n = inst.cols();
  BigInt work = 0;
  for (std::size_t s = 0; s <= std::min(m + 1, n); ++s) work += binomial(n, s);
  if (work > budget)
    throw CapacityError("basis enumeration needs " + work.str() + " subsets (budget " + std::to_string(budget) +
                        "); use the plain DP path");

  FractionalVertex best;
  std::optional<std::vector<std::size_t>> best_cols;
  for (std::size_t s = 0; s <= std::min(m, n); ++s) {
    for_each_subset(n, s, [&](const std::vector<std::size_t>& cols) {
      auto y = solve_columns(inst, cols);
      if (!y) return;
      for (const auto& v : *y)
        if (v < 0) return;
      Rational value = 0;
      for (std::size_t t = 0; t < cols.size(); ++t) value += inst.objective()[cols[t]] * (*y)[t];
      if (best_cols && (value < best.value || (value == best.value && !(cols < *best_cols)))) return;
      best.value = value;
      best.x_star.assign(n, 0);
      for (std::size_t t = 0; t < cols.size(); ++t) best.x_star[cols[t]] = (*y)[t];
      best_cols = cols;
    });
  }
  if (!best_cols) {
    best.lp_status = LpStatus::Infeasible;
    best.x_star.clear();
    return best;
  }
  for (std::size_t j = 0; j < n; ++j)
    if (best.x_star[j] != 0) best.basis.push_back(j);
  best.lp_status = LpStatus::Optimal;

  // Extreme rays of {d >= 0 : A d = 0} have supports with a one-dimensional kernel.
  bool unbounded = false;
  for (std::size_t s = 1; s <= std::min(m + 1, n) && !unbounded; ++s) {
    for_each_subset(n, s, [&](const std::vector<std::size_t>& cols) {
      if (unbounded) return;
      auto d = kernel_line(inst, cols);
      if (!d) return;
      bool pos = true, neg = true;
      for (const auto& v : *d) {
        pos &= v > 0;
        neg &= v < 0;
      }
      if (!pos && !neg) return;
      Rational gain = 0;
      for (std::size_t t = 0; t < cols.size(); ++t) gain += inst.objective()[cols[t]] * (*d)[t];
      if (neg) gain = -gain;
      if (gain > 0) unbounded = true;
    });
  }
  if (unbounded) best.lp_status = LpStatus::Unbounded;
  return best;
}

Wide proximity_distance(std::size_t m, std::int64_t delta) {
  const Wide mm = static_cast<Wide>(m);
  return checked_mul(mm, checked_pow(checked_add(checked_mul(checked_mul(2, mm), delta), 1), static_cast<unsigned>(m)));
}

ProximityReduction proximity_reduce(const IlpInstance& inst, const FractionalVertex& v) {
  if (v.lp_status != LpStatus::Optimal) throw std::invalid_argument("proximity_reduce needs an optimal LP vertex");
  if (v.x_star.size() != inst.cols()) throw std::invalid_argument("vertex length does not match n");
  const std::size_t m = inst.rows();
  const std::int64_t delta = max_abs_entry(inst);
  const Wide dist = proximity_distance(m, delta);
  std::vector<Wide> ell(inst.cols(), 0);
  for (std::size_t j = 0; j < inst.cols(); ++j) ell[j] = std::max<Wide>(0, checked_sub(ceil_to_wide(v.x_star[j]), dist));
  const auto shift = apply_matrix(inst, ell);
  const Wide limit = checked_mul(checked_mul(delta, static_cast<Wide>(m)), dist);
  std::vector<std::int64_t> b(m);
  for (std::size_t r = 0; r < m; ++r) {
    const Wide rest = checked_sub(inst.rhs()[r], shift[r]);
    if (wide_abs(rest) > limit)
      throw std::logic_error("proximity bound violated: |b - A ell| = " + to_string(wide_abs(rest)) + " > " +
                             to_string(limit));
    b[r] = narrow_to_int64(rest);
  }
  return {std::move(ell), inst.with_rhs(std::move(b))};
}

Solution solve_with_proximity(const IlpInstance& inst, const SolveOptions& options, SolveStats* stats) {
  const FractionalVertex v = lp_vertex_optimum(inst);
  if (v.lp_status == LpStatus::Infeasible) return {Status::Infeasible, std::nullopt, std::nullopt};
  // A fractional ray says nothing about integral unboundedness.
  if (v.lp_status == LpStatus::Unbounded) return solve(inst, options, stats);
  const ProximityReduction red = proximity_reduce(inst, v);
  Solution sol = solve(red.reduced, options, stats);
  if (sol.status != Status::Optimal) return sol;
  for (std::size_t j = 0; j < inst.cols(); ++j) (*sol.x)[j] = checked_add((*sol.x)[j], red.ell[j]);
  sol.value = objective_value(inst, *sol.x);
  if (!satisfies(inst, *sol.x)) throw std::logic_error("shifted witness failed verification");
  return sol;
}

}  // namespace ilpdp
