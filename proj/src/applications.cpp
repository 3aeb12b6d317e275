#include "ilpdp/applications.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ilpdp {

namespace {

/// Index of the item with the largest p_i / w_i, lowest index on ties.
std::size_t most_efficient(const IlpInstance& inst) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < inst.cols(); ++j) {
    const Wide lhs = static_cast<Wide>(inst.objective()[j]) * inst.a(0, best);
    const Wide rhs = static_cast<Wide>(inst.objective()[best]) * inst.a(0, j);
    if (lhs > rhs) best = j;
  }
  return best;
}

FractionalVertex single_item_vertex(const IlpInstance& inst, std::size_t item) {
  FractionalVertex v;
  v.x_star.assign(inst.cols(), 0);
  v.x_star[item] = Rational(inst.rhs()[0], inst.a(0, item));
  if (inst.rhs()[0] != 0) v.basis = {item};
  v.lp_status = LpStatus::Optimal;
  v.value = v.x_star[item] * inst.objective()[item];
  return v;
}

}  // namespace

KnapsackResult solve_unbounded_knapsack(const KnapsackInstance& k, const SolveOptions& options) {
  const IlpInstance inst = uks_to_ilp1(k);
  KnapsackResult out;
  if (inst.cols() == 0) {
    if (k.C == 0) out.value = 0;
    return out;
  }
  const ProximityReduction red = proximity_reduce(inst, single_item_vertex(inst, most_efficient(inst)));
  const Solution sol = solve(red.reduced, options);
  if (sol.status == Status::Infeasible) return out;
  if (sol.status != Status::Optimal) throw std::logic_error("knapsack instance reported unbounded");
  std::vector<Wide> x(inst.cols());
  for (std::size_t j = 0; j < inst.cols(); ++j) x[j] = checked_add((*sol.x)[j], red.ell[j]);
  if (!satisfies(inst, x)) throw std::logic_error("knapsack witness failed verification");
  out.value = objective_value(inst, x);
  x.resize(k.w.size());
  out.x = std::move(x);
  return out;
}

Solution solve_unbounded_subset_sum(const KnapsackInstance& k, const SolveOptions& options) {
  const IlpInstance inst = uks_to_ilp1(k).without_objective();
  if (inst.cols() == 0) {
    if (k.C == 0) return {Status::Feasible, std::vector<Wide>{}, Wide{0}};
    return {Status::Infeasible, std::nullopt, std::nullopt};
  }
  const ProximityReduction red = proximity_reduce(inst, single_item_vertex(inst, 0));
  Solution sol = feasible(red.reduced, options);
  if (sol.status != Status::Feasible) return sol;
  for (std::size_t j = 0; j < inst.cols(); ++j) (*sol.x)[j] = checked_add((*sol.x)[j], red.ell[j]);
  if (!satisfies(inst, *sol.x)) throw std::logic_error("subset-sum witness failed verification");
  sol.x->resize(k.w.size());
  sol.value = 0;
  return sol;
}

std::optional<std::int64_t> knapsack_dp_oracle(const KnapsackInstance& k) {
  if (k.C > kKnapsackTableLimit) throw CapacityError("knapsack table of " + std::to_string(k.C) + " cells exceeds the limit");
  if (k.w.size() != k.p.size()) throw std::invalid_argument("knapsack weights and profits differ in length");
  const bool exact = k.mode == KnapsackMode::Equality;
  std::vector<std::optional<std::int64_t>> table(static_cast<std::size_t>(k.C) + 1);
  table[0] = 0;
  for (std::int64_t cap = 1; cap <= k.C; ++cap) {
    auto& cell = table[cap];
    if (!exact) cell = table[cap - 1];
    for (std::size_t i = 0; i < k.w.size(); ++i) {
      if (k.w[i] > cap || !table[cap - k.w[i]]) continue;
      const std::int64_t v = *table[cap - k.w[i]] + k.p[i];
      if (!cell || v > *cell) cell = v;
    }
  }
  return table[k.C];
}

namespace {

void validate(const SchedulingInstance& inst) {
  if (inst.M < 1) throw std::invalid_argument("scheduling needs at least one machine");
  if (inst.eps <= 0 || inst.eps > 1) throw std::invalid_argument("eps must lie in (0, 1]");
  for (auto p : inst.p)
    if (p < 1) throw std::invalid_argument("processing times must be positive");
}

std::vector<std::int64_t> loads_of(const SchedulingInstance& inst, const Schedule& s) {
  std::vector<std::int64_t> load(s.machines.size(), 0);
  for (std::size_t i = 0; i < s.machines.size(); ++i)
    for (auto j : s.machines[i]) load[i] += inst.p[j];
  return load;
}

/// Moves single jobs off a most loaded machine while that lowers its load
/// below the current maximum. Never increases the makespan.
void improve_by_moves(const SchedulingInstance& inst, Schedule& s) {
  auto load = loads_of(inst, s);
  while (true) {
    const std::size_t top = std::max_element(load.begin(), load.end()) - load.begin();
    const std::size_t low = std::min_element(load.begin(), load.end()) - load.begin();
    auto& jobs = s.machines[top];
    bool moved = false;
    for (std::size_t t = 0; t < jobs.size(); ++t) {
      const std::int64_t p = inst.p[jobs[t]];
      if (load[low] + p < load[top]) {
        s.machines[low].push_back(jobs[t]);
        jobs.erase(jobs.begin() + t);
        load[top] -= p;
        load[low] += p;
        moved = true;
        break;
      }
    }
    if (!moved) return;
  }
}

}  // namespace

std::int64_t makespan_of(const SchedulingInstance& inst, const Schedule& s) {
  const auto load = loads_of(inst, s);
  return load.empty() ? 0 : *std::max_element(load.begin(), load.end());
}

std::optional<Schedule> schedule_decide_tau(const SchedulingInstance& inst, std::int64_t tau,
                                            const SolveOptions& options) {
  validate(inst);
  const std::int64_t total = std::accumulate(inst.p.begin(), inst.p.end(), std::int64_t{0});
  for (auto p : inst.p)
    if (p > tau) return std::nullopt;
  if (static_cast<Wide>(inst.M) * tau < total) return std::nullopt;

  const Rational eps = inst.eps;
  const Rational small_limit = eps * tau;
  const Rational cap = (1 + eps) * tau;

  // Grid eps tau (1+eps)^i for i up to the first value reaching tau.
  std::vector<Rational> grid{small_limit};
  while (grid.back() < tau) grid.push_back(grid.back() * (1 + eps));

  std::vector<std::size_t> small;
  std::vector<std::vector<std::size_t>> by_class(grid.size());
  for (std::size_t j = 0; j < inst.p.size(); ++j) {
    if (inst.p[j] <= small_limit) {
      small.push_back(j);
      continue;
    }
    const std::size_t i = std::lower_bound(grid.begin(), grid.end(), Rational(inst.p[j])) - grid.begin();
    by_class[i].push_back(j);
  }
  std::vector<std::size_t> classes;
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (!by_class[i].empty()) classes.push_back(i);

  // Every multiplicity vector whose rounded load fits under (1+eps) tau.
  std::vector<std::vector<std::int64_t>> configs;
  std::vector<std::int64_t> current(classes.size(), 0);
  auto enumerate = [&](auto&& self, std::size_t t, const Rational& used) -> void {
    if (t == classes.size()) {
      if (configs.size() >= kMaxConfigurations)
        throw CapacityError("more than " + std::to_string(kMaxConfigurations) +
                            " machine configurations; try a larger eps");
      configs.push_back(current);
      return;
    }
    const Rational& size = grid[classes[t]];
    Rational load = used;
    for (std::int64_t c = 0; c <= static_cast<std::int64_t>(by_class[classes[t]].size()); ++c) {
      if (load > cap) break;
      current[t] = c;
      self(self, t + 1, load);
      load += size;
    }
    current[t] = 0;
  };
  enumerate(enumerate, 0, Rational(0));

  const std::size_t rows = classes.size() + 1;
  const std::size_t cols = configs.size();
  std::vector<std::int64_t> a(rows * cols, 0);
  for (std::size_t c = 0; c < cols; ++c) {
    a[c] = 1;
    for (std::size_t t = 0; t < classes.size(); ++t) a[(t + 1) * cols + c] = configs[c][t];
  }
  std::vector<std::int64_t> b{inst.M};
  for (auto i : classes) b.push_back(static_cast<std::int64_t>(by_class[i].size()));
  const IlpInstance ilp(rows, cols, std::move(a), std::move(b), std::nullopt);
  const Solution sol = feasible(ilp, options);
  if (sol.status != Status::Feasible) return std::nullopt;

  Schedule s;
  s.machines.resize(static_cast<std::size_t>(inst.M));
  std::vector<std::size_t> next(classes.size(), 0);
  std::size_t machine = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    for (Wide copy = 0; copy < (*sol.x)[c]; ++copy, ++machine) {
      for (std::size_t t = 0; t < classes.size(); ++t)
        for (std::int64_t u = 0; u < configs[c][t]; ++u) s.machines[machine].push_back(by_class[classes[t]][next[t]++]);
    }
  }

  std::stable_sort(small.begin(), small.end(), [&](std::size_t x, std::size_t y) { return inst.p[x] > inst.p[y]; });
  auto load = loads_of(inst, s);
  for (auto j : small) {
    const std::size_t low = std::min_element(load.begin(), load.end()) - load.begin();
    s.machines[low].push_back(j);
    load[low] += inst.p[j];
  }
  improve_by_moves(inst, s);
  for (auto& jobs : s.machines) std::sort(jobs.begin(), jobs.end());
  s.makespan = makespan_of(inst, s);
  if (Rational(s.makespan) > cap) throw std::logic_error("schedule exceeds (1 + eps) tau");
  return s;
}

Schedule schedule_dual_approx(const SchedulingInstance& inst, const SolveOptions& options) {
  validate(inst);
  if (inst.p.empty()) return {std::vector<std::vector<std::size_t>>(static_cast<std::size_t>(inst.M)), 0};
  const std::int64_t total = std::accumulate(inst.p.begin(), inst.p.end(), std::int64_t{0});
  const std::int64_t lb = std::max<std::int64_t>((total + inst.M - 1) / inst.M, *std::max_element(inst.p.begin(), inst.p.end()));

  std::vector<std::int64_t> grid;
  Rational t = lb;
  while (true) {
    const std::int64_t v = std::min<std::int64_t>(narrow_to_int64(ceil_to_wide(t)), total);
    if (grid.empty() || v > grid.back()) grid.push_back(v);
    if (v >= total) break;
    t *= 1 + inst.eps;
  }

  std::optional<Schedule> best = schedule_decide_tau(inst, grid.back(), options);
  if (!best) throw std::logic_error("decision procedure failed at tau = sum p");
  std::ptrdiff_t lo = -1, hi = static_cast<std::ptrdiff_t>(grid.size()) - 1;
  while (hi - lo > 1) {
    const std::ptrdiff_t mid = lo + (hi - lo) / 2;
    if (auto s = schedule_decide_tau(inst, grid[mid], options)) {
      hi = mid;
      best = std::move(s);
    } else {
      lo = mid;
    }
  }
  return *best;
}

SchedulingInstance parse_scheduling(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::pair<std::size_t, std::string>> tokens;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream words(line);
    std::string w;
    while (words >> w) tokens.emplace_back(line_no, w);
  }
  auto number = [&](std::size_t i) {
    const auto& [ln, tok] = tokens[i];
    std::int64_t v = 0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
      throw ParseError(ln, "malformed integer '" + tok + "'");
    return v;
  };
  if (tokens.size() < 3) throw ParseError(line_no, "expected header 'M eps_num eps_den'");
  SchedulingInstance inst;
  inst.M = number(0);
  const std::int64_t num = number(1), den = number(2);
  if (den <= 0) throw ParseError(tokens[2].first, "eps denominator must be positive");
  inst.eps = Rational(num, den);
  for (std::size_t i = 3; i < tokens.size(); ++i) {
    inst.p.push_back(number(i));
    if (inst.p.back() < 1) throw ParseError(tokens[i].first, "processing times must be positive");
  }
  if (inst.M < 1) throw ParseError(tokens[0].first, "machine count must be positive");
  if (inst.eps <= 0 || inst.eps > 1) throw ParseError(tokens[1].first, "eps must lie in (0, 1]");
  return inst;
}

}  // namespace ilpdp
