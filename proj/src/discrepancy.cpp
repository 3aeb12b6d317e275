#include "ilpdp/discrepancy.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

namespace ilpdp {

std::string_view to_string(BoundProvenance p) {
  switch (p) {
    case BoundProvenance::Spencer: return "spencer";
    case BoundProvenance::BeckFiala: return "beck-fiala";
    case BoundProvenance::UserSupplied: return "user";
    case BoundProvenance::Exact: return "exact";
  }
  return "unknown";
}

HerdiscBound spencer_bound(const IlpInstance& inst) {
  // Smallest integer t with t^2 >= 36 m Delta^2.
  const BigInt delta = max_abs_entry(inst);
  const BigInt target = 36 * BigInt(inst.rows()) * delta * delta;
  BigInt t = boost::multiprecision::sqrt(target);
  if (t * t < target) t += 1;
  return {Rational(t), BoundProvenance::Spencer, std::nullopt};
}

HerdiscBound beck_fiala_bound(const IlpInstance& inst) {
  Wide best = 0;
  for (std::size_t j = 0; j < inst.cols(); ++j) {
    Wide norm = 0;
    for (std::size_t r = 0; r < inst.rows(); ++r) norm = checked_add(norm, wide_abs(inst.a(r, j)));
    best = std::max(best, norm);
  }
  return {Rational(to_big(best)), BoundProvenance::BeckFiala, std::nullopt};
}

std::optional<HerdiscBound> single_row_bound(const IlpInstance& inst) {
  if (inst.rows() != 1) return std::nullopt;
  return HerdiscBound{Rational(BigInt(max_abs_entry(inst)), BigInt(2)), BoundProvenance::Exact, std::nullopt};
}

HerdiscBound choose_H(const IlpInstance& inst, const std::optional<Rational>& override_value) {
  const Rational floor_value(BigInt(max_abs_entry(inst)), BigInt(2));
  if (override_value) {
    HerdiscBound out{*override_value, BoundProvenance::UserSupplied, std::nullopt};
    if (inst.cols() > 0 && out.value < floor_value) {
      out.warning = "supplied H=" + to_string(out.value) + " is below Delta/2; raised to " + to_string(floor_value);
      out.value = floor_value;
    }
    return out;
  }
  if (auto exact = single_row_bound(inst)) return *exact;
  HerdiscBound spencer = spencer_bound(inst);
  HerdiscBound bf = beck_fiala_bound(inst);
  HerdiscBound best = bf.value <= spencer.value ? bf : spencer;
  if (best.value < floor_value) best.value = floor_value;
  return best;
}

HerdiscBound exact_herdisc(const IlpInstance& inst) {
  const std::size_t n = inst.cols();
  const std::size_t m = inst.rows();
  if (n > kExactHerdiscMaxCols) throw std::invalid_argument("exact_herdisc supports at most 16 columns");
  const std::size_t subsets = std::size_t{1} << n;
  // sums[mask * m + r] = sum of row r over the columns in mask.
  std::vector<std::int64_t> sums(subsets * m, 0);
  for (std::size_t mask = 1; mask < subsets; ++mask) {
    const std::size_t low = static_cast<std::size_t>(__builtin_ctzll(mask));
    const std::size_t rest = mask & (mask - 1);
    for (std::size_t r = 0; r < m; ++r) sums[mask * m + r] = sums[rest * m + r] + inst.a(r, low);
  }
  // 2 * A(z - 1_I / 2) = 2 A z - A 1_I, so work with doubled values.
  std::int64_t worst_doubled = 0;
  for (std::size_t set = 1; set < subsets; ++set) {
    std::int64_t best_doubled = std::numeric_limits<std::int64_t>::max();
    for (std::size_t z = set;; z = (z - 1) & set) {
      std::int64_t norm = 0;
      for (std::size_t r = 0; r < m && norm < best_doubled; ++r) {
        const std::int64_t v = 2 * sums[z * m + r] - sums[set * m + r];
        norm = std::max(norm, v < 0 ? -v : v);
      }
      best_doubled = std::min(best_doubled, norm);
      if (z == 0 || best_doubled == 0) break;
    }
    worst_doubled = std::max(worst_doubled, best_doubled);
  }
  return {Rational(BigInt(worst_doubled), BigInt(2)), BoundProvenance::Exact, std::nullopt};
}

bool split_witness_exists(const IlpInstance& inst, std::span<const std::int64_t> x, const Rational& H) {
  if (x.size() != inst.cols()) throw std::invalid_argument("x length does not match n");
  std::int64_t l1 = 0;
  double combos = 1;
  for (auto v : x) {
    if (v < 0) throw std::invalid_argument("x must be nonnegative");
    l1 += v;
    combos *= static_cast<double>(v + 1);
  }
  if (l1 <= 1 || l1 > 20 || combos > 1e6)
    throw std::invalid_argument("split_witness_exists requires 1 < |x|_1 <= 20 and prod(x_i+1) <= 1e6");

  const std::int64_t lo = (l1 + 5) / 6;
  const std::int64_t hi = (5 * l1) / 6;
  // ||A(2z - x)||_inf <= 4H
  const Rational limit = 4 * H;
  const std::size_t n = x.size();
  const std::size_t m = inst.rows();
  std::vector<std::int64_t> z(n, 0);
  while (true) {
    std::int64_t size = 0;
    for (auto v : z) size += v;
    if (size >= lo && size <= hi) {
      std::int64_t norm = 0;
      for (std::size_t r = 0; r < m; ++r) {
        std::int64_t v = 0;
        for (std::size_t j = 0; j < n; ++j) v += inst.a(r, j) * (2 * z[j] - x[j]);
        norm = std::max(norm, v < 0 ? -v : v);
      }
      if (Rational(norm) <= limit) return true;
    }
    std::size_t k = 0;
    while (k < n && z[k] == x[k]) z[k++] = 0;
    if (k == n) return false;
    ++z[k];
  }
}

}  // namespace ilpdp
