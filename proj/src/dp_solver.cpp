#include "ilpdp/dp_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace ilpdp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

constexpr std::int64_t kCoordLimit = std::int64_t{1} << 61;
constexpr std::uint64_t kCellLimit = std::uint64_t{1} << 62;
constexpr std::uint64_t kDenseCells = std::uint64_t{1} << 20;
constexpr std::uint64_t kMaxPlusConvLength = std::uint64_t{1} << 22;
constexpr std::uint64_t kBooleanConvLength = std::uint64_t{1} << 22;

class Budget {
 public:
  explicit Budget(std::uint64_t limit) : limit_(limit) {}
  void charge(std::uint64_t bytes, const char* what) {
    if (bytes > limit_ || used_ > limit_ - bytes)
      throw CapacityError(std::string("memory budget exceeded while allocating ") + what + ": needs about " +
                          std::to_string(used_ + bytes) + " bytes, budget " + std::to_string(limit_));
    used_ += bytes;
    peak_ = std::max(peak_, used_);
  }
  void release(std::uint64_t bytes) { used_ -= std::min(used_, bytes); }
  std::uint64_t peak() const { return peak_; }

 private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
  std::uint64_t peak_ = 0;
};

BigInt big_pow(BigInt base, unsigned exp) {
  BigInt r = 1;
  for (unsigned i = 0; i < exp; ++i) r *= base;
  return r;
}

/// Smallest K >= 0 with (6/5)^K >= cap.
std::int64_t levels_for_cap(const BigInt& cap) {
  BigInt lhs = 1, rhs = cap;
  std::int64_t k = 0;
  while (lhs < rhs) {
    lhs *= 6;
    rhs *= 5;
    ++k;
  }
  return k;
}

/// Smallest K >= 0 with 2^K >= v + 1.
std::int64_t levels_for_rhs(std::int64_t v) {
  std::int64_t k = 0;
  while (k < 63 && (std::int64_t{1} << k) <= v) ++k;
  return k;
}

Level empty_level(const LevelPlan& plan, std::size_t i) {
  Level out;
  out.index = i;
  out.dims = plan.radii.size();
  out.center = plan.centers[i];
  out.lo = plan.lo[i];
  out.hi = plan.hi[i];
  return out;
}

std::vector<std::uint64_t> dense_strides(const Level& L) {
  std::vector<std::uint64_t> strides(L.dims, 1);
  for (std::size_t k = L.dims; k-- > 1;)
    strides[k - 1] = strides[k] * static_cast<std::uint64_t>(L.hi[k] - L.lo[k] + 1);
  return strides;
}

/// Best candidate per output cell, keyed by dense lexicographic cell index.
class Accumulator {
 public:
  Accumulator(std::uint64_t cells, Budget& budget) : budget_(budget) {
    dense_ = cells <= kDenseCells;
    if (dense_) {
      bytes_ = cells * (sizeof(MaxPlus) + sizeof(std::int64_t));
      budget_.charge(bytes_, "merge scratch");
      values_.assign(cells, MaxPlus::neg_inf());
      backs_.assign(cells, kZeroMarker);
    }
  }
  ~Accumulator() { budget_.release(bytes_); }
  Accumulator(const Accumulator&) = delete;
  Accumulator& operator=(const Accumulator&) = delete;

  void offer(std::uint64_t key, MaxPlus v, std::int64_t back) {
    if (dense_) {
      if (v > values_[key]) {
        values_[key] = v;
        backs_[key] = back;
      }
      return;
    }
    auto [it, inserted] = sparse_.try_emplace(key, v, back);
    if (!inserted && v > it->second.first) it->second = {v, back};
  }

  void emit(Level& out) {
    const auto strides = dense_strides(out);
    auto push = [&](std::uint64_t key, MaxPlus v, std::int64_t back) {
      for (std::size_t k = 0; k < out.dims; ++k) {
        const std::uint64_t extent = static_cast<std::uint64_t>(out.hi[k] - out.lo[k] + 1);
        out.coords.push_back(out.lo[k] + static_cast<std::int64_t>((key / strides[k]) % extent));
      }
      out.values.push_back(v);
      out.back.push_back(back);
    };
    if (dense_) {
      for (std::uint64_t key = 0; key < values_.size(); ++key)
        if (values_[key].finite()) push(key, values_[key], backs_[key]);
      return;
    }
    std::vector<std::uint64_t> keys;
    keys.reserve(sparse_.size());
    for (const auto& [key, entry] : sparse_) keys.push_back(key);
    std::sort(keys.begin(), keys.end());
    for (auto key : keys) push(key, sparse_[key].first, sparse_[key].second);
  }

 private:
  Budget& budget_;
  bool dense_ = false;
  std::uint64_t bytes_ = 0;
  std::vector<MaxPlus> values_;
  std::vector<std::int64_t> backs_;
  std::unordered_map<std::uint64_t, std::pair<MaxPlus, std::int64_t>> sparse_;
};

/// Calls f(k) for every stored cell k in [begin, end) whose coordinates lie in
/// the box [rlo, rhi]. Cells in [begin, end) must agree on dimensions < dim.
template <class F>
void for_each_in_range(const Level& L, std::size_t begin, std::size_t end, std::size_t dim, const std::int64_t* rlo,
                       const std::int64_t* rhi, F&& f) {
  const std::size_t m = L.dims;
  const std::int64_t* c = L.coords.data();
  auto coord = [&](std::size_t k) { return c[k * m + dim]; };
  std::size_t lo = begin, hi = end;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (coord(mid) < rlo[dim])
      lo = mid + 1;
    else
      hi = mid;
  }
  if (dim + 1 == m) {
    for (std::size_t k = lo; k < end && coord(k) <= rhi[dim]; ++k) f(k);
    return;
  }
  std::size_t k = lo;
  while (k < end) {
    const std::int64_t v = coord(k);
    if (v > rhi[dim]) break;
    std::size_t g_lo = k + 1, g_hi = end;
    while (g_lo < g_hi) {
      const std::size_t mid = g_lo + (g_hi - g_lo) / 2;
      if (coord(mid) <= v)
        g_lo = mid + 1;
      else
        g_hi = mid;
    }
    for_each_in_range(L, k, g_lo, dim + 1, rlo, rhi, f);
    k = g_lo;
  }
}

Level merge_naive_impl(const Level& prev, const LevelPlan& plan, std::size_t i, Budget& budget) {
  Level out = empty_level(plan, i);
  if (prev.size() == 0 || out.empty_box()) return out;
  const std::size_t m = out.dims;
  const auto strides = dense_strides(out);
  Accumulator acc(out.cell_count(), budget);
  std::vector<std::int64_t> rlo(m), rhi(m);
  // Pairs are visited with a <= a'; the smaller index is the tie-breaking b''.
  for (std::size_t a = 0; a < prev.size(); ++a) {
    const auto pa = prev.point(a);
    bool empty = false;
    for (std::size_t k = 0; k < m; ++k) {
      rlo[k] = std::max(out.lo[k] - pa[k], prev.lo[k]);
      rhi[k] = std::min(out.hi[k] - pa[k], prev.hi[k]);
      empty |= rlo[k] > rhi[k];
    }
    if (empty) continue;
    const MaxPlus va = prev.values[a];
    for_each_in_range(prev, a, prev.size(), 0, rlo.data(), rhi.data(), [&](std::size_t b) {
      const auto pb = prev.point(b);
      std::uint64_t key = 0;
      for (std::size_t k = 0; k < m; ++k) key += static_cast<std::uint64_t>(pa[k] + pb[k] - out.lo[k]) * strides[k];
      acc.offer(key, va + prev.values[b], static_cast<std::int64_t>(a));
    });
  }
  acc.emit(out);
  return out;
}

std::uint64_t conv_sequence_length(std::span<const std::int64_t> radii) {
  // Largest digit of an input cell is 2R+1.
  std::uint64_t stride = 1, last = 0;
  for (auto r : radii) {
    const std::uint64_t base = 4 * static_cast<std::uint64_t>(r) + 3;
    last += stride * (2 * static_cast<std::uint64_t>(r) + 1);
    if (stride > kCellLimit / base) return kCellLimit;
    stride *= base;
  }
  return last + 1;
}

Level merge_convolution_impl(const Level& prev, const LevelPlan& plan, std::size_t i, MergeMode mode,
                             Budget& budget) {
  Level out = empty_level(plan, i);
  if (prev.size() == 0 || out.empty_box()) return out;
  const std::size_t m = out.dims;
  const std::uint64_t len = conv_sequence_length(plan.radii);
  const std::uint64_t limit = mode == MergeMode::Boolean ? kBooleanConvLength : kMaxPlusConvLength;
  if (len > limit) throw CapacityError("encoded sequence of length " + std::to_string(len) + " is too long");

  std::vector<std::int64_t> doubled(m), shifted(m);
  for (std::size_t k = 0; k < m; ++k) doubled[k] = 2 * prev.center[k];
  auto out_position = [&](std::span<const std::int64_t> p) {
    for (std::size_t k = 0; k < m; ++k) shifted[k] = p[k] + plan.radii[k] + 1;
    return conv_position(shifted, doubled, plan.radii);
  };
  // Visit output cells in lexicographic order.
  std::vector<std::int64_t> cell(out.lo);
  auto next_cell = [&] {
    for (std::size_t k = m; k-- > 0;) {
      if (cell[k] < out.hi[k]) {
        ++cell[k];
        return true;
      }
      cell[k] = out.lo[k];
    }
    return false;
  };
  auto push = [&](MaxPlus v) {
    out.coords.insert(out.coords.end(), cell.begin(), cell.end());
    out.values.push_back(v);
    out.back.push_back(kUnresolved);
  };

  if (mode == MergeMode::Boolean) {
    const std::uint64_t bytes = len * 3 * sizeof(std::uint32_t) * 4;
    budget.charge(bytes, "boolean convolution");
    BoolSeq seq(len, 0);
    for (std::size_t a = 0; a < prev.size(); ++a) seq[conv_position(prev.point(a), prev.center, plan.radii)] = 1;
    const BoolSeq t = boolean_conv(seq, seq);
    do {
      if (t[out_position(cell)]) push(MaxPlus(0));
    } while (next_cell());
    budget.release(bytes);
  } else {
    const std::uint64_t bytes = len * 3 * sizeof(MaxPlus);
    budget.charge(bytes, "max-plus convolution");
    MaxPlusSeq seq(len);
    for (std::size_t a = 0; a < prev.size(); ++a)
      seq[conv_position(prev.point(a), prev.center, plan.radii)] = prev.values[a];
    const MaxPlusSeq t = maxplus_conv(seq, seq);
    do {
      const MaxPlus v = t[out_position(cell)];
      if (v.finite()) push(v);
    } while (next_cell());
    budget.release(bytes);
  }
  return out;
}

/// Upper estimate of the pairs merge_naive will visit.
double naive_pair_estimate(const Level& prev, const Level& out) {
  double pairs = 0;
  const std::size_t m = prev.dims;
  for (std::size_t a = 0; a < prev.size(); ++a) {
    const std::int64_t x = prev.coords[a * m];
    const std::int64_t lo = std::max(out.lo[0] - x, prev.lo[0]);
    const std::int64_t hi = std::min(out.hi[0] - x, prev.hi[0]);
    if (lo > hi) continue;
    auto first = [&](std::int64_t v) {
      std::size_t l = a, h = prev.size();
      while (l < h) {
        const std::size_t mid = l + (h - l) / 2;
        if (prev.coords[mid * m] < v)
          l = mid + 1;
        else
          h = mid;
      }
      return l;
    };
    pairs += static_cast<double>(first(hi + 1) - first(lo));
  }
  return pairs;
}

bool boolean_conv_is_cheaper(const Level& prev, const Level& out, const LevelPlan& plan) {
  const std::uint64_t len = conv_sequence_length(plan.radii);
  if (len > kBooleanConvLength) return false;
  double n = 1;
  while (n < 2.0 * static_cast<double>(len)) n *= 2;
  const double conv_cost = n * std::log2(n);
  return conv_cost < naive_pair_estimate(prev, out);
}

bool same_table(const Level& a, const Level& b) { return a.coords == b.coords && a.values == b.values; }

std::vector<Level> build_levels_impl(const IlpInstance& inst, const LevelPlan& plan, MergeMode mode,
                                     Strategy strategy, Budget& budget, SolveStats* stats,
                                     const std::function<bool(const Level&)>& stop, bool fixpoint_shortcut) {
  std::vector<Level> levels;
  levels.reserve(static_cast<std::size_t>(plan.K) + 1);
  auto record = [&](const Level& L, Strategy kernel, bool copied, Clock::time_point start) {
    budget.charge(L.bytes(), "level table");
    if (stats)
      stats->levels.push_back({L.index, L.cell_count(), L.size(), kernel, copied, seconds_since(start)});
  };
  auto start = Clock::now();
  levels.push_back(init_level0(inst, plan));
  record(levels.back(), Strategy::Naive, false, start);
  if (stop && stop(levels.back())) return levels;

  for (std::size_t i = 1; i <= static_cast<std::size_t>(plan.K); ++i) {
    start = Clock::now();
    const Level& prev = levels[i - 1];
    if (fixpoint_shortcut && i >= 2 && plan.lo[i] == prev.lo && plan.hi[i] == prev.hi &&
        same_table(prev, levels[i - 2])) {
      Level copy = prev;
      copy.index = i;
      copy.center = plan.centers[i];
      levels.push_back(std::move(copy));
      record(levels.back(), Strategy::Naive, true, start);
      if (stop && stop(levels.back())) break;
      continue;
    }
    Strategy kernel = strategy;
    if (strategy == Strategy::Auto) {
      // Pair enumeration beats a max-plus convolution whenever both are
      // quadratic in the finite cells, so only the boolean kernel competes.
      kernel = Strategy::Naive;
      if (mode == MergeMode::Boolean) {
        const Level probe = empty_level(plan, i);
        if (!probe.empty_box() && boolean_conv_is_cheaper(prev, probe, plan)) kernel = Strategy::Conv;
      }
    }
    if (kernel == Strategy::Conv) {
      try {
        levels.push_back(merge_convolution_impl(prev, plan, i, mode, budget));
      } catch (const CapacityError&) {
        kernel = Strategy::Naive;
      }
    }
    if (kernel == Strategy::Naive) levels.push_back(merge_naive_impl(levels[i - 1], plan, i, budget));
    record(levels.back(), kernel, false, start);
    if (stop && stop(levels.back())) break;
  }
  return levels;
}

BigInt effective_cap(const IlpInstance& inst, bool structural) {
  BigInt cap = l1_norm_bound_big(inst);
  if (structural)
    if (auto s = structural_l1_bound(inst)) cap = std::min(cap, *s);
  return cap;
}

BigInt cell_product(std::span<const std::int64_t> radii) {
  BigInt p = 1;
  for (auto r : radii) p *= 2 * BigInt(r) + 1;
  return p;
}

std::vector<std::int64_t> choose_radii(const IlpInstance& inst, const SolveOptions& opt, HerdiscBound& H) {
  H = choose_H(inst, opt.H);
  std::vector<std::int64_t> uniform(inst.rows(), uniform_radius(H.value));
  if (opt.radius_rule == RadiusRule::Uniform) return uniform;
  auto adaptive = row_adaptive_radii(inst, uniform[0]);
  if (opt.radius_rule == RadiusRule::RowAdaptive) return adaptive;
  return cell_product(adaptive) < cell_product(uniform) ? adaptive : uniform;
}

std::vector<std::int64_t> rhs_vector(const IlpInstance& inst) { return {inst.rhs().begin(), inst.rhs().end()}; }

Solution empty_instance_solution(const NormalizedInstance& norm, Status success) {
  for (auto v : norm.inner.rhs())
    if (v != 0) return {Status::Infeasible, std::nullopt, std::nullopt};
  Solution s{success, std::vector<Wide>(norm.original_cols, 0), std::nullopt};
  if (success == Status::Optimal) s.value = 0;
  return s;
}

bool zero_value_positive(const Level& L) {
  const std::vector<std::int64_t> zero(L.dims, 0);
  const MaxPlus v = L.value_at(zero);
  return v.finite() && v.value() > 0;
}

}  // namespace

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::Naive: return "naive";
    case Strategy::Conv: return "conv";
    case Strategy::Auto: return "auto";
  }
  return "unknown";
}

Strategy parse_strategy(std::string_view text) {
  if (text == "naive") return Strategy::Naive;
  if (text == "conv") return Strategy::Conv;
  if (text == "auto") return Strategy::Auto;
  throw std::invalid_argument("unknown strategy '" + std::string(text) + "'");
}

bool Level::empty_box() const {
  for (std::size_t k = 0; k < dims; ++k)
    if (lo[k] > hi[k]) return true;
  return false;
}

bool Level::in_box(std::span<const std::int64_t> p) const {
  for (std::size_t k = 0; k < dims; ++k)
    if (p[k] < lo[k] || p[k] > hi[k]) return false;
  return true;
}

std::uint64_t Level::cell_count() const {
  if (empty_box()) return 0;
  std::uint64_t cells = 1;
  for (std::size_t k = 0; k < dims; ++k) cells *= static_cast<std::uint64_t>(hi[k] - lo[k] + 1);
  return cells;
}

std::optional<std::size_t> Level::find(std::span<const std::int64_t> p) const {
  if (!in_box(p)) return std::nullopt;
  std::size_t lo_idx = 0, hi_idx = size();
  while (lo_idx < hi_idx) {
    const std::size_t mid = lo_idx + (hi_idx - lo_idx) / 2;
    const auto q = point(mid);
    if (std::lexicographical_compare(q.begin(), q.end(), p.begin(), p.end()))
      lo_idx = mid + 1;
    else
      hi_idx = mid;
  }
  if (lo_idx < size() && std::equal(p.begin(), p.end(), point(lo_idx).begin())) return lo_idx;
  return std::nullopt;
}

MaxPlus Level::value_at(std::span<const std::int64_t> p) const {
  auto k = find(p);
  return k ? values[*k] : MaxPlus::neg_inf();
}

MaxPlus Level::value_at_offset(std::span<const std::int64_t> delta) const {
  std::vector<std::int64_t> p(dims);
  for (std::size_t k = 0; k < dims; ++k) p[k] = center[k] + delta[k];
  return value_at(p);
}

std::size_t Level::bytes() const {
  return coords.size() * sizeof(std::int64_t) + values.size() * sizeof(MaxPlus) + back.size() * sizeof(std::int64_t);
}

BigInt l1_norm_bound_big(const IlpInstance& inst) {
  const BigInt n = inst.cols();
  const BigInt m = inst.rows();
  const BigInt base = m * (BigInt(max_abs_entry(inst)) + rhs_inf_norm(inst));
  return n * n * big_pow(base, static_cast<unsigned>(2 * inst.rows() + 1));
}

Wide l1_norm_bound(const IlpInstance& inst) {
  const BigInt v = l1_norm_bound_big(inst);
  try {
    return to_wide(v);
  } catch (const CapacityError&) {
    throw CapacityError("instance too large: l1 bound " + v.str() + " exceeds 128-bit capacity");
  }
}

BigInt l1_norm_bound_zero_rhs(const IlpInstance& inst) {
  const BigInt n = inst.cols();
  const BigInt m = inst.rows();
  return n * n * big_pow(m * (BigInt(max_abs_entry(inst)) + 1), static_cast<unsigned>(2 * inst.rows() + 1));
}

std::optional<BigInt> structural_l1_bound(const IlpInstance& inst) {
  if (inst.cols() == 0) return BigInt(0);
  std::optional<BigInt> best;
  for (std::size_t r = 0; r < inst.rows(); ++r) {
    bool positive = true, negative = true;
    std::int64_t min_abs = std::numeric_limits<std::int64_t>::max();
    for (std::size_t j = 0; j < inst.cols(); ++j) {
      const std::int64_t v = inst.a(r, j);
      positive &= v > 0;
      negative &= v < 0;
      min_abs = std::min(min_abs, v < 0 ? -v : v);
    }
    if (!positive && !negative) continue;
    const std::int64_t b = inst.rhs()[r];
    // A wrong-signed right-hand side admits no solution, so any bound holds.
    const BigInt bound = (positive ? b < 0 : b > 0) ? BigInt(0) : BigInt(b < 0 ? -BigInt(b) : BigInt(b)) / min_abs;
    if (!best || bound < *best) best = bound;
  }
  return best;
}

std::int64_t uniform_radius(const Rational& H) {
  const Wide r = checked_add(ceil_to_wide(4 * H), 2);
  if (r > kCoordLimit) throw CapacityError("radius " + to_string(r) + " exceeds coordinate capacity");
  return static_cast<std::int64_t>(r);
}

std::vector<std::int64_t> row_adaptive_radii(const IlpInstance& inst, std::optional<std::int64_t> fallback) {
  const BigInt target = 36 * BigInt(inst.rows());
  BigInt h = boost::multiprecision::sqrt(target);
  if (h * h < target) h += 1;
  const std::int64_t h_prime = h.convert_to<std::int64_t>();
  std::vector<std::int64_t> radii(inst.rows());
  for (std::size_t r = 0; r < inst.rows(); ++r) {
    std::int64_t delta = 0;
    for (std::size_t j = 0; j < inst.cols(); ++j) delta = std::max(delta, inst.a(r, j) < 0 ? -inst.a(r, j) : inst.a(r, j));
    if (delta == 0) {
      radii[r] = fallback ? *fallback : uniform_radius(choose_H(inst).value);
      continue;
    }
    const Wide v = checked_add(checked_mul(checked_mul(4, h_prime), delta), 2);
    if (v > kCoordLimit) throw CapacityError("row radius exceeds coordinate capacity");
    radii[r] = static_cast<std::int64_t>(v);
  }
  return radii;
}

LevelPlan plan_levels(const IlpInstance& inst, std::span<const std::int64_t> radii, const BigInt& l1_cap,
                      bool clip_sign_rows) {
  const std::size_t m = inst.rows();
  if (radii.size() != m) throw std::invalid_argument("one radius per row expected");
  LevelPlan plan;
  plan.radii.assign(radii.begin(), radii.end());
  plan.K = std::max<std::int64_t>({levels_for_cap(l1_cap), levels_for_rhs(rhs_inf_norm(inst)), 1});

  BigInt cells = cell_product(radii);
  if (cells > BigInt(kCellLimit)) {
    const BigInt bytes = cells * (plan.K + 1) * (8 * m + sizeof(MaxPlus) + 8);
    throw CapacityError("level box of " + cells.str() + " cells exceeds capacity; a dense plan would need about " +
                        bytes.str() + " bytes");
  }

  std::vector<std::int64_t> clip_lo(m, std::numeric_limits<std::int64_t>::min());
  std::vector<std::int64_t> clip_hi(m, std::numeric_limits<std::int64_t>::max());
  if (clip_sign_rows) {
    for (std::size_t r = 0; r < m; ++r) {
      bool nonneg = true, nonpos = true;
      for (std::size_t j = 0; j < inst.cols(); ++j) {
        nonneg &= inst.a(r, j) >= 0;
        nonpos &= inst.a(r, j) <= 0;
      }
      const std::int64_t b = inst.rhs()[r];
      if (nonneg) {
        clip_lo[r] = std::max<std::int64_t>(clip_lo[r], 0);
        clip_hi[r] = std::min(clip_hi[r], b);
      }
      if (nonpos) {
        clip_lo[r] = std::max(clip_lo[r], b);
        clip_hi[r] = std::min<std::int64_t>(clip_hi[r], 0);
      }
    }
  }

  for (std::int64_t i = 0; i <= plan.K; ++i) {
    std::vector<std::int64_t> c(m), lo(m), hi(m);
    for (std::size_t r = 0; r < m; ++r) {
      c[r] = floor_shift(inst.rhs()[r], plan.K - i);
      if (c[r] > kCoordLimit - radii[r] || c[r] < -kCoordLimit + radii[r])
        throw CapacityError("level box exceeds coordinate capacity");
      lo[r] = std::max(c[r] - radii[r], clip_lo[r]);
      hi[r] = std::min(c[r] + radii[r], clip_hi[r]);
    }
    plan.centers.push_back(std::move(c));
    plan.lo.push_back(std::move(lo));
    plan.hi.push_back(std::move(hi));
  }
  return plan;
}

LevelPlan plan_levels(const IlpInstance& inst, const Rational& H, const BigInt& l1_cap, bool clip_sign_rows) {
  const std::vector<std::int64_t> radii(inst.rows(), uniform_radius(H));
  return plan_levels(inst, radii, l1_cap, clip_sign_rows);
}

Level init_level0(const IlpInstance& inst, const LevelPlan& plan) {
  Level out = empty_level(plan, 0);
  std::map<std::vector<std::int64_t>, std::pair<MaxPlus, std::int64_t>> cells;
  const std::vector<std::int64_t> zero(out.dims, 0);
  if (out.in_box(zero)) cells[zero] = {MaxPlus(0), kZeroMarker};
  for (std::size_t j = 0; j < inst.cols(); ++j) {
    auto col = inst.column(j);
    if (!out.in_box(col)) continue;
    const MaxPlus v(inst.objective()[j]);
    auto [it, inserted] = cells.try_emplace(col, v, static_cast<std::int64_t>(j));
    if (!inserted && v > it->second.first) it->second = {v, static_cast<std::int64_t>(j)};
  }
  for (const auto& [p, entry] : cells) {
    out.coords.insert(out.coords.end(), p.begin(), p.end());
    out.values.push_back(entry.first);
    out.back.push_back(entry.second);
  }
  return out;
}

Level merge_naive(const Level& prev, const LevelPlan& plan, std::size_t i) {
  Budget unlimited(std::numeric_limits<std::uint64_t>::max());
  return merge_naive_impl(prev, plan, i, unlimited);
}

Level merge_convolution(const Level& prev, const LevelPlan& plan, std::size_t i, MergeMode mode) {
  Budget unlimited(std::numeric_limits<std::uint64_t>::max());
  return merge_convolution_impl(prev, plan, i, mode, unlimited);
}

std::uint64_t conv_position(std::span<const std::int64_t> p, std::span<const std::int64_t> center,
                            std::span<const std::int64_t> radii) {
  std::uint64_t pos = 0, stride = 1;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const std::int64_t digit = radii[k] + 1 + p[k] - center[k];
    const std::int64_t base = 4 * radii[k] + 3;
    if (digit < 0 || digit >= base) throw std::out_of_range("point outside the encodable window");
    pos += stride * static_cast<std::uint64_t>(digit);
    stride *= static_cast<std::uint64_t>(base);
  }
  return pos;
}

std::vector<Level> build_levels(const IlpInstance& inst, const LevelPlan& plan, MergeMode mode, Strategy strategy,
                                std::uint64_t budget_bytes, SolveStats* stats,
                                const std::function<bool(const Level&)>& stop, bool fixpoint_shortcut) {
  Budget budget(budget_bytes);
  auto levels = build_levels_impl(inst, plan, mode, strategy, budget, stats, stop, fixpoint_shortcut);
  if (stats) stats->peak_bytes = std::max(stats->peak_bytes, budget.peak());
  return levels;
}

std::size_t resolve_back(const std::vector<Level>& levels, std::size_t i, std::size_t idx) {
  const Level& cur = levels.at(i);
  if (i == 0) throw std::invalid_argument("level 0 has no split backpointers");
  const std::int64_t back = cur.back.at(idx);
  if (back >= 0) return static_cast<std::size_t>(back);
  if (back != kUnresolved) throw std::logic_error("corrupt backpointer");
  const Level& prev = levels[i - 1];
  const auto p = cur.point(idx);
  const MaxPlus v = cur.values[idx];
  std::vector<std::int64_t> rest(cur.dims);
  for (std::size_t a = 0; a < prev.size(); ++a) {
    const auto pa = prev.point(a);
    for (std::size_t k = 0; k < cur.dims; ++k) rest[k] = p[k] - pa[k];
    auto b = prev.find(rest);
    if (b && prev.values[a] + prev.values[*b] == v) return a;
  }
  throw std::logic_error("no split reproduces the merged value");
}

std::vector<Wide> reconstruct(const IlpInstance& inst, const std::vector<Level>& levels, std::size_t i,
                              std::size_t idx) {
  const Level& top = levels.at(i);
  if (idx >= top.size()) throw std::out_of_range("cell index out of range");
  std::vector<Wide> need(top.size(), 0);
  need[idx] = 1;
  std::vector<std::int64_t> rest(top.dims);
  for (std::size_t lv = i; lv > 0; --lv) {
    const Level& cur = levels[lv];
    const Level& prev = levels[lv - 1];
    std::vector<Wide> below(prev.size(), 0);
    for (std::size_t k = 0; k < cur.size(); ++k) {
      if (need[k] == 0) continue;
      const auto p = cur.point(k);
      // A zero cell of value 0 is witnessed by x = 0.
      if (std::all_of(p.begin(), p.end(), [](std::int64_t v) { return v == 0; }) && cur.values[k] == MaxPlus(0))
        continue;
      const std::size_t a = resolve_back(levels, lv, k);
      const auto pa = prev.point(a);
      for (std::size_t d = 0; d < cur.dims; ++d) rest[d] = p[d] - pa[d];
      auto b = prev.find(rest);
      if (!b) throw std::logic_error("broken backpointer chain at level " + std::to_string(lv));
      below[a] = checked_add(below[a], need[k]);
      below[*b] = checked_add(below[*b], need[k]);
    }
    need = std::move(below);
  }
  std::vector<Wide> x(inst.cols(), 0);
  const Level& base = levels[0];
  for (std::size_t k = 0; k < base.size(); ++k) {
    if (need[k] == 0 || base.back[k] == kZeroMarker) continue;
    const auto col = static_cast<std::size_t>(base.back[k]);
    x[col] = checked_add(x[col], need[k]);
  }
  const auto ax = apply_matrix(inst, x);
  const auto target = top.point(idx);
  for (std::size_t r = 0; r < inst.rows(); ++r)
    if (ax[r] != target[r]) throw std::logic_error("reconstructed witness violates A x = b'");
  if (!inst.feasibility_only() && MaxPlus(objective_value(inst, x)) != top.values[idx])
    throw std::logic_error("reconstructed witness does not attain the table value");
  return x;
}

bool detect_unbounded(const IlpInstance& inst, const SolveOptions& options, SolveStats* stats) {
  if (inst.feasibility_only()) return false;
  const IlpInstance zero = inst.with_rhs(std::vector<std::int64_t>(inst.rows(), 0));
  HerdiscBound H;
  const auto radii = choose_radii(zero, options, H);
  BigInt cap = l1_norm_bound_zero_rhs(zero);
  if (options.structural_l1)
    if (auto s = structural_l1_bound(zero)) cap = std::min(cap, *s);
  const LevelPlan plan = plan_levels(zero, radii, cap, options.clip_sign_rows);
  bool found = false;
  // value(i, 0) never decreases in i, so the first positive value settles it.
  auto stop = [&](const Level& L) { return found = zero_value_positive(L); };
  build_levels(zero, plan, MergeMode::MaxPlus, options.strategy, options.budget_bytes, stats, stop,
               options.fixpoint_shortcut);
  return found;
}

Solution solve(const IlpInstance& inst, const SolveOptions& options, SolveStats* stats) {
  const auto total_start = Clock::now();
  SolveStats local;
  SolveStats& st = stats ? *stats : local;
  st.strategy = options.strategy;

  auto phase = Clock::now();
  const NormalizedInstance norm = normalize(inst);
  const IlpInstance& in = norm.inner;
  st.normalize_seconds = seconds_since(phase);
  st.normalized_cols = in.cols();
  if (in.cols() == 0) {
    st.total_seconds = seconds_since(total_start);
    return empty_instance_solution(norm, Status::Optimal);
  }

  phase = Clock::now();
  const auto radii = choose_radii(in, options, st.H);
  st.radii = radii;
  st.l1_cap = effective_cap(in, options.structural_l1);
  const LevelPlan plan = plan_levels(in, radii, st.l1_cap, options.clip_sign_rows);
  st.K = plan.K;
  st.plan_seconds = seconds_since(phase);

  phase = Clock::now();
  std::vector<Level> levels;
  std::optional<CapacityError> overflow;
  try {
    levels = build_levels(in, plan, MergeMode::MaxPlus, options.strategy, options.budget_bytes, &st, {},
                          options.fixpoint_shortcut);
  } catch (const CapacityError& e) {
    // Values may overflow only through long positive cycles; settle
    // feasibility first and let the unboundedness pass decide.
    overflow = e;
    st.feasibility_fallback = true;
    st.levels.clear();
    levels = build_levels(in.without_objective(), plan, MergeMode::Boolean, options.strategy, options.budget_bytes,
                          &st, {}, options.fixpoint_shortcut);
  }
  st.merge_seconds = seconds_since(phase);

  const auto target = levels.back().find(rhs_vector(in));
  if (!target) {
    st.total_seconds = seconds_since(total_start);
    return {Status::Infeasible, std::nullopt, std::nullopt};
  }

  phase = Clock::now();
  const bool unbounded = detect_unbounded(in, options, nullptr);
  st.unbounded_seconds = seconds_since(phase);
  if (unbounded) {
    st.total_seconds = seconds_since(total_start);
    return {Status::Unbounded, std::nullopt, std::nullopt};
  }
  if (overflow) throw *overflow;

  phase = Clock::now();
  const auto x = reconstruct(in, levels, levels.size() - 1, *target);
  st.reconstruct_seconds = seconds_since(phase);
  Solution out{Status::Optimal, lift(norm, x), levels.back().values[*target].value()};
  if (!satisfies(inst, *out.x) || objective_value(inst, *out.x) != *out.value)
    throw std::logic_error("lifted witness failed verification");
  st.total_seconds = seconds_since(total_start);
  return out;
}

Solution feasible(const IlpInstance& inst, const SolveOptions& options, SolveStats* stats) {
  const auto total_start = Clock::now();
  SolveStats local;
  SolveStats& st = stats ? *stats : local;
  st.strategy = options.strategy;

  auto phase = Clock::now();
  const NormalizedInstance norm = normalize(inst.without_objective());
  const IlpInstance& in = norm.inner;
  st.normalize_seconds = seconds_since(phase);
  st.normalized_cols = in.cols();
  if (in.cols() == 0) {
    st.total_seconds = seconds_since(total_start);
    return empty_instance_solution(norm, Status::Feasible);
  }

  phase = Clock::now();
  const auto radii = choose_radii(in, options, st.H);
  st.radii = radii;
  st.l1_cap = effective_cap(in, options.structural_l1);
  const LevelPlan plan = plan_levels(in, radii, st.l1_cap, options.clip_sign_rows);
  st.K = plan.K;
  st.plan_seconds = seconds_since(phase);

  phase = Clock::now();
  const auto levels = build_levels(in, plan, MergeMode::Boolean, options.strategy, options.budget_bytes, &st, {},
                                   options.fixpoint_shortcut);
  st.merge_seconds = seconds_since(phase);
  const auto target = levels.back().find(rhs_vector(in));
  if (!target) {
    st.total_seconds = seconds_since(total_start);
    return {Status::Infeasible, std::nullopt, std::nullopt};
  }
  phase = Clock::now();
  const auto x = reconstruct(in, levels, levels.size() - 1, *target);
  st.reconstruct_seconds = seconds_since(phase);
  Solution out{Status::Feasible, lift(norm, x), std::nullopt};
  if (!satisfies(inst, *out.x)) throw std::logic_error("lifted witness failed verification");
  st.total_seconds = seconds_since(total_start);
  return out;
}

Solution optimize_via_feasibility(const IlpInstance& inst, const SolveOptions& options) {
  const NormalizedInstance norm = normalize(inst);
  const IlpInstance& in = norm.inner;
  const std::size_t m = in.rows();
  const std::size_t n = in.cols();
  if (n == 0) return empty_instance_solution(norm, Status::Optimal);

  const BigInt bound = effective_cap(in, options.structural_l1);
  std::int64_t cmax = 0;
  for (auto v : in.objective()) cmax = std::max(cmax, v < 0 ? -v : v);
  const BigInt tau_big = bound * cmax;
  if (tau_big > BigInt(std::numeric_limits<std::int64_t>::max() / 2))
    throw CapacityError("objective range " + tau_big.str() + " exceeds 64-bit right-hand side capacity");
  const std::int64_t tau_max = tau_big.convert_to<std::int64_t>();
  // ||x||_1 <= bound and the slack is at most c x - tau <= 2 cmax bound.
  const BigInt aug_cap = bound + 2 * tau_big;

  std::vector<std::int64_t> a((m + 1) * (n + 1), 0);
  for (std::size_t j = 0; j < n; ++j) a[j] = in.objective()[j];
  a[n] = -1;
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t j = 0; j < n; ++j) a[(r + 1) * (n + 1) + j] = in.a(r, j);

  SolveOptions aug_options = options;
  if (aug_options.radius_rule == RadiusRule::Uniform && !options.H) aug_options.radius_rule = RadiusRule::Auto;
  aug_options.H.reset();

  auto attempt = [&](std::int64_t tau) -> std::optional<std::vector<Wide>> {
    std::vector<std::int64_t> b(m + 1);
    b[0] = tau;
    for (std::size_t r = 0; r < m; ++r) b[r + 1] = in.rhs()[r];
    const IlpInstance aug(m + 1, n + 1, a, std::move(b), std::nullopt);
    HerdiscBound H;
    const auto radii = choose_radii(aug, aug_options, H);
    const LevelPlan plan = plan_levels(aug, radii, aug_cap, aug_options.clip_sign_rows);
    const auto levels = build_levels(aug, plan, MergeMode::Boolean, aug_options.strategy, aug_options.budget_bytes,
                                     nullptr, {}, aug_options.fixpoint_shortcut);
    const auto target = levels.back().find(rhs_vector(aug));
    if (!target) return std::nullopt;
    auto x = reconstruct(aug, levels, levels.size() - 1, *target);
    x.pop_back();
    return x;
  };

  std::int64_t hi = tau_max;
  auto best = attempt(-tau_max);
  if (!best) return {Status::Infeasible, std::nullopt, std::nullopt};
  // Every tau up to a witness value is feasible, so jump straight to it.
  std::int64_t lo = static_cast<std::int64_t>(std::min<Wide>(objective_value(in, *best), hi));
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo + 1) / 2;
    if (auto x = attempt(mid)) {
      const Wide value = objective_value(in, *x);
      lo = static_cast<std::int64_t>(std::min<Wide>(value, hi));
      best = std::move(x);
    } else {
      hi = mid - 1;
    }
  }
  Solution out{Status::Optimal, lift(norm, *best), objective_value(in, *best)};
  if (!satisfies(inst, *out.x)) throw std::logic_error("lifted witness failed verification");
  return out;
}

}  // namespace ilpdp
