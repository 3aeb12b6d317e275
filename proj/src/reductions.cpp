#include "ilpdp/reductions.hpp"

#include <bit>
#include <stdexcept>

namespace ilpdp {

namespace {

/// r^m compared against C without overflow: -1, 0 or 1.
int compare_power(std::int64_t r, unsigned m, std::int64_t C) {
  Wide acc = 1;
  for (unsigned i = 0; i < m; ++i) {
    acc *= r;
    if (acc > C) return 1;
  }
  return acc == C ? 0 : -1;
}

unsigned bits_for(std::uint64_t v) { return static_cast<unsigned>(std::bit_width(v)); }

}  // namespace

std::int64_t integer_root(std::int64_t C, unsigned m) {
  if (C < 0) throw std::invalid_argument("integer_root needs C >= 0");
  if (m == 0) throw std::invalid_argument("integer_root needs m >= 1");
  std::int64_t lo = 0, hi = C;  // lo^m <= C always holds
  if (m >= 2 && hi > (std::int64_t{1} << 32)) hi = std::int64_t{1} << 32;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo + 1) / 2;
    if (compare_power(mid, m, C) <= 0)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

IlpInstance uks_to_ilp1(const KnapsackInstance& k) {
  if (k.w.size() != k.p.size()) throw std::invalid_argument("knapsack weights and profits differ in length");
  if (k.C < 0) throw std::invalid_argument("knapsack capacity must be nonnegative");
  for (auto w : k.w)
    if (w <= 0) throw std::invalid_argument("knapsack weights must be positive");
  for (auto p : k.p)
    if (p < 0) throw std::invalid_argument("knapsack profits must be nonnegative");
  std::vector<std::int64_t> a = k.w;
  std::vector<std::int64_t> c = k.p;
  if (k.mode == KnapsackMode::AtMost) {
    a.push_back(1);
    c.push_back(0);
  }
  const std::size_t n = a.size();
  return IlpInstance(1, n, std::move(a), {k.C}, std::move(c));
}

IlpInstance digit_split(const IlpInstance& inst1, unsigned m) {
  if (inst1.rows() != 1) throw std::invalid_argument("digit_split needs a single-row instance");
  if (m == 0) throw std::invalid_argument("digit_split needs m >= 1");
  const std::int64_t C = inst1.rhs()[0];
  if (C < 0) throw std::invalid_argument("digit_split needs a nonnegative right-hand side");
  for (auto v : inst1.matrix())
    if (v < 0) throw std::invalid_argument("digit_split needs nonnegative coefficients");
  if (m == 1) return inst1;

  const std::int64_t delta = integer_root(C, m) + 1;
  const Wide limit = checked_pow(delta, m);
  auto digits = [&](std::int64_t v) {
    if (v >= limit)
      throw std::invalid_argument("coefficient " + std::to_string(v) + " needs more than " + std::to_string(m) +
                                  " base-" + std::to_string(delta) + " digits");
    std::vector<std::int64_t> d(m);
    for (unsigned l = 0; l < m; ++l) {
      d[l] = v % delta;
      v /= delta;
    }
    return d;
  };

  const std::size_t n = inst1.cols();
  const std::size_t cols = n + m - 1;
  std::vector<std::int64_t> a(m * cols, 0);
  for (std::size_t j = 0; j < n; ++j) {
    const auto d = digits(inst1.a(0, j));
    for (unsigned l = 0; l < m; ++l) a[l * cols + j] = d[l];
  }
  // Carry y_l (column n + l - 1) leaves row l-1 with weight -Delta and enters row l with +1.
  for (unsigned l = 1; l < m; ++l) {
    a[(l - 1) * cols + n + l - 1] = -delta;
    a[l * cols + n + l - 1] = 1;
  }
  std::vector<std::int64_t> b = digits(C);
  std::optional<std::vector<std::int64_t>> c;
  if (!inst1.feasibility_only()) {
    c.emplace(inst1.objective().begin(), inst1.objective().end());
    c->resize(cols, 0);
  }
  return IlpInstance(m, cols, std::move(a), std::move(b), std::move(c));
}

IlpInstance uks_to_ilpm(const KnapsackInstance& k, unsigned m) { return digit_split(uks_to_ilp1(k), m); }

KSumLayout ksum_layout(std::int64_t T, std::size_t k) {
  KSumLayout l;
  l.value_bits = bits_for(static_cast<std::uint64_t>(T)) + 1;  // ceil(log2(T+1)) = bit_width(T)
  l.buffer_bits = bits_for(static_cast<std::uint64_t>(k)) + 1;
  l.marker_shift = l.value_bits + l.buffer_bits;
  l.marker_bits = static_cast<unsigned>(k) + 1;
  l.count_shift = l.marker_shift + l.marker_bits + l.buffer_bits;
  l.total_bits = l.count_shift + l.buffer_bits;
  return l;
}

KSumEncoding ksum_to_ilp(const KSumInstance& ks) {
  const std::size_t k = ks.sets.size();
  if (k < 2) throw std::invalid_argument("k-SUM needs at least two sets");
  if (ks.T < 1) throw std::invalid_argument("k-SUM target must be positive");
  const KSumLayout layout = ksum_layout(ks.T, k);
  if (layout.total_bits > 62)
    throw CapacityError("packed k-SUM target needs " + std::to_string(layout.total_bits) + " bits");

  std::vector<std::int64_t> a;
  std::vector<std::pair<std::size_t, std::int64_t>> columns;
  for (std::size_t i = 0; i < k; ++i) {
    for (auto z : ks.sets[i]) {
      if (z < 0) throw std::invalid_argument("k-SUM elements must be nonnegative");
      if (z > ks.T) continue;
      a.push_back((std::int64_t{1} << layout.count_shift) + (std::int64_t{1} << (layout.marker_shift + i)) + z);
      columns.emplace_back(i, z);
    }
  }
  const std::int64_t target = static_cast<std::int64_t>(k) * (std::int64_t{1} << layout.count_shift) +
                              ((std::int64_t{1} << k) - 1) * (std::int64_t{1} << layout.marker_shift) + ks.T;
  const std::size_t n = a.size();
  KSumEncoding enc{IlpInstance(1, n, std::move(a), {target}, std::nullopt), layout, target, k, std::move(columns), 1};
  return enc;
}

KSumEncoding ksum_to_ilpm(const KSumInstance& ks, unsigned m) {
  KSumEncoding enc = ksum_to_ilp(ks);
  enc.ilp = digit_split(enc.ilp, m);
  enc.rows = m;
  return enc;
}

std::optional<std::vector<std::int64_t>> decode_ksum_witness(const KSumEncoding& enc, std::span<const Wide> x) {
  if (x.size() < enc.columns.size()) throw std::invalid_argument("witness shorter than the element columns");
  std::vector<std::optional<std::int64_t>> picked(enc.k);
  for (std::size_t j = 0; j < enc.columns.size(); ++j) {
    if (x[j] == 0) continue;
    const auto [set, value] = enc.columns[j];
    if (x[j] != 1 || picked[set]) return std::nullopt;
    picked[set] = value;
  }
  std::vector<std::int64_t> out;
  for (const auto& p : picked) {
    if (!p) return std::nullopt;
    out.push_back(*p);
  }
  return out;
}

}  // namespace ilpdp
