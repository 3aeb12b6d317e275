// ilpdp command-line front end: solve, feasible, gen, bench, schedule.
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "ilpdp/applications.hpp"
#include "ilpdp/discrepancy.hpp"
#include "ilpdp/dp_solver.hpp"
#include "ilpdp/proximity.hpp"
#include "ilpdp/reductions.hpp"
#include "ilpdp/report.hpp"

namespace {

using namespace ilpdp;

// sysexits.h values
constexpr int kExitUsage = 64;
constexpr int kExitDataErr = 65;
constexpr int kExitNoInput = 66;
constexpr int kExitCapacity = 69;
constexpr int kExitSoftware = 70;

struct MissingFile : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingFile("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

struct SolverFlags {
  std::string H;
  std::string strategy = "auto";
  std::string proximity = "off";
  std::string radius = "uniform";
  bool json = false;
  std::uint64_t budget = kDefaultBudgetBytes;
};

void add_solver_flags(CLI::App* cmd, SolverFlags& f) {
  cmd->add_option("--H", f.H, "herdisc bound to use, as a rational such as 9/2");
  cmd->add_option("--strategy", f.strategy, "merge kernel")->check(CLI::IsMember({"naive", "conv", "auto"}));
  cmd->add_option("--proximity", f.proximity, "shift b by an LP vertex first")->check(CLI::IsMember({"on", "off"}));
  cmd->add_option("--radius", f.radius, "box radius rule")->check(CLI::IsMember({"uniform", "rows", "auto"}));
  cmd->add_flag("--json", f.json, "print a JSON report");
  cmd->add_option("--budget-bytes", f.budget, "memory budget for the DP tables");
}

SolveOptions options_from(const SolverFlags& f) {
  SolveOptions o;
  if (!f.H.empty()) o.H = parse_rational(f.H);
  o.strategy = parse_strategy(f.strategy);
  o.radius_rule = f.radius == "rows" ? RadiusRule::RowAdaptive : f.radius == "auto" ? RadiusRule::Auto : RadiusRule::Uniform;
  o.budget_bytes = f.budget;
  return o;
}

int run_solve(const std::string& command, const std::string& path, const SolverFlags& flags) {
  const double start = std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
  IlpInstance inst = parse_instance(read_file(path));
  const bool feas = command == "feasible";
  if (feas) inst = inst.without_objective();
  const SolveOptions opts = options_from(flags);
  SolveStats stats;
  Solution sol;
  if (flags.proximity == "on")
    sol = solve_with_proximity(inst, opts, &stats);
  else
    sol = feas ? feasible(inst, opts, &stats) : solve(inst, opts, &stats);
  if (feas && sol.status == Status::Optimal) sol.status = Status::Feasible;
  RunReport r = make_report(command, sol, stats);
  r.proximity = flags.proximity == "on";
  const double end = std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
  r.total_seconds = std::max(r.total_seconds, end - start);
  std::cout << (flags.json ? report_to_json(r) + "\n" : report_to_text(r));
  return exit_code(sol.status);
}

std::vector<std::int64_t> random_vector(std::mt19937_64& rng, std::size_t n, std::int64_t lo, std::int64_t hi) {
  std::uniform_int_distribution<std::int64_t> d(lo, hi);
  std::vector<std::int64_t> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

struct GenFlags {
  std::uint64_t seed = 1;
  std::string out = "-";
  std::int64_t C = 100;
  std::size_t n = 5;
  std::int64_t max_w = 20;
  std::int64_t max_p = 20;
  std::vector<std::int64_t> weights;
  std::vector<std::int64_t> profits;
  std::string mode = "eq";
  unsigned m = 2;
  std::size_t k = 3;
  std::size_t set_size = 5;
  std::int64_t T = 50;
  std::int64_t delta = 5;
  std::int64_t max_x = 5;
  bool positive_row = false;
};

KnapsackInstance knapsack_from(const GenFlags& g) {
  std::mt19937_64 rng(g.seed);
  KnapsackInstance k;
  k.C = g.C;
  k.mode = g.mode == "atmost" ? KnapsackMode::AtMost : KnapsackMode::Equality;
  k.w = g.weights.empty() ? random_vector(rng, g.n, 1, g.max_w) : g.weights;
  k.p = g.profits.empty() ? random_vector(rng, k.w.size(), 0, g.max_p) : g.profits;
  if (k.p.size() != k.w.size()) throw CLI::ValidationError("--profits", "needs one profit per weight");
  return k;
}

KSumInstance ksum_from(std::uint64_t seed, std::size_t k, std::size_t size, std::int64_t T) {
  std::mt19937_64 rng(seed);
  KSumInstance ks{T, {}};
  for (std::size_t i = 0; i < k; ++i) ks.sets.push_back(random_vector(rng, size, 0, T));
  return ks;
}

/// Entries in [-delta, delta] (first row in [1, delta] with --positive-row),
/// b = A x for a random x in [0, max_x]^n, objective in [-delta, delta].
IlpInstance random_instance(std::uint64_t seed, std::size_t m, std::size_t n, std::int64_t delta, std::int64_t max_x,
                            bool positive_row) {
  std::mt19937_64 rng(seed);
  auto a = random_vector(rng, m * n, -delta, delta);
  if (positive_row) {
    const auto first = random_vector(rng, n, 1, delta);
    std::copy(first.begin(), first.end(), a.begin());
  }
  const auto x = random_vector(rng, n, 0, max_x);
  std::vector<std::int64_t> b(m, 0);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t j = 0; j < n; ++j) b[r] += a[r * n + j] * x[j];
  auto c = random_vector(rng, n, -delta, delta);
  return IlpInstance(m, n, std::move(a), std::move(b), std::move(c));
}

struct BenchRow {
  std::string family;
  std::size_t m;
  std::int64_t delta;
  std::int64_t b_inf;
  std::string strategy;
  double seconds;
  std::uint64_t cells;
  std::int64_t levels;
};

BenchRow bench_one(const std::string& family, const IlpInstance& inst, bool feas, Strategy s, int repeats) {
  std::vector<double> times;
  SolveStats last;
  SolveOptions opts;
  opts.strategy = s;
  for (int r = 0; r < repeats; ++r) {
    SolveStats stats;
    const auto t0 = std::chrono::steady_clock::now();
    feas ? feasible(inst, opts, &stats) : solve(inst, opts, &stats);
    times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    last = std::move(stats);
  }
  std::nth_element(times.begin(), times.begin() + times.size() / 2, times.end());
  std::uint64_t cells = 0;
  for (const auto& L : last.levels) cells += L.finite;
  return {family, inst.rows(), max_abs_entry(inst), rhs_inf_norm(inst), std::string(to_string(s)),
          times[times.size() / 2], cells, last.K};
}

std::vector<std::int64_t> parse_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoll(item));
  return out;
}

int run_bench(const std::string& families, const std::string& sizes, int repeats, std::uint64_t seed,
              const std::string& out) {
  std::ostringstream csv;
  csv << "family,m,delta,b_inf,strategy,seconds,table_cells,levels\n";
  const auto size_list = parse_list(sizes);
  auto want = [&](const std::string& f) { return families == "all" || families.find(f) != std::string::npos; };
  const Strategy strategies[] = {Strategy::Naive, Strategy::Conv, Strategy::Auto};
  auto emit = [&](const BenchRow& r) {
    csv << r.family << ',' << r.m << ',' << r.delta << ',' << r.b_inf << ',' << r.strategy << ',' << r.seconds << ','
        << r.cells << ',' << r.levels << '\n';
  };
  for (auto size : size_list) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(size));
    if (want("uks1")) {
      const KnapsackInstance k{size, random_vector(rng, 8, 1, 50), random_vector(rng, 8, 0, 50), KnapsackMode::AtMost};
      for (auto s : strategies) emit(bench_one("uks1", uks_to_ilp1(k), false, s, repeats));
    }
    if (want("subset")) {
      const KnapsackInstance k{size, random_vector(rng, 8, 1, 50), std::vector<std::int64_t>(8, 0), KnapsackMode::Equality};
      for (auto s : strategies) emit(bench_one("subset", uks_to_ilp1(k).without_objective(), true, s, repeats));
    }
    if (want("uks2")) {
      // Weights in [Delta, 3 Delta) keep every high digit positive, so the
      // second row is strictly signed.
      const std::int64_t base = integer_root(size, 2) + 1;
      const KnapsackInstance k{size, random_vector(rng, 6, base, 3 * base - 1), random_vector(rng, 6, 0, 50),
                               KnapsackMode::Equality};
      for (auto s : strategies) emit(bench_one("uks2", uks_to_ilpm(k, 2), false, s, repeats));
    }
    if (want("ksum")) {
      const auto enc = ksum_to_ilp(ksum_from(seed + static_cast<std::uint64_t>(size), 3, 10, size));
      for (auto s : strategies) emit(bench_one("ksum", enc.ilp, true, s, repeats));
    }
    if (want("random")) {
      const auto inst = random_instance(seed + static_cast<std::uint64_t>(size), 2, 5, 4, size, true);
      for (auto s : strategies) emit(bench_one("random", inst, false, s, repeats));
    }
  }
  write_output(out, csv.str());
  return 0;
}

std::string schedule_json(const SchedulingInstance& inst, const Schedule& s) {
  nlohmann::json j;
  j["makespan"] = s.makespan;
  j["eps"] = to_string(inst.eps);
  nlohmann::json machines = nlohmann::json::object();
  for (std::size_t i = 0; i < s.machines.size(); ++i) machines[std::to_string(i)] = s.machines[i];
  j["machines"] = machines;
  return j.dump(2) + "\n";
}

int run(int argc, char** argv) {
  CLI::App app{"Exact pseudo-polynomial solver for max{c x : A x = b, x >= 0 integral}"};
  app.require_subcommand(1);

  SolverFlags solve_flags, feas_flags;
  std::string solve_path, feas_path;
  auto* solve_cmd = app.add_subcommand("solve", "optimize an instance file");
  solve_cmd->add_option("file", solve_path, "instance file")->required();
  add_solver_flags(solve_cmd, solve_flags);
  auto* feas_cmd = app.add_subcommand("feasible", "decide feasibility of an instance file");
  feas_cmd->add_option("file", feas_path, "instance file")->required();
  add_solver_flags(feas_cmd, feas_flags);

  GenFlags g;
  auto* gen = app.add_subcommand("gen", "write a generated instance");
  gen->require_subcommand(1);
  auto common = [&](CLI::App* c) {
    c->add_option("--seed", g.seed, "random seed");
    c->add_option("--out", g.out, "output path, - for stdout");
  };
  auto knap = [&](CLI::App* c) {
    c->add_option("--C", g.C, "capacity")->check(CLI::NonNegativeNumber);
    c->add_option("--n", g.n, "random item count");
    c->add_option("--max-weight", g.max_w)->check(CLI::PositiveNumber);
    c->add_option("--max-profit", g.max_p)->check(CLI::NonNegativeNumber);
    c->add_option("--weights", g.weights, "explicit weights")->delimiter(',');
    c->add_option("--profits", g.profits, "explicit profits")->delimiter(',');
    c->add_option("--mode", g.mode)->check(CLI::IsMember({"eq", "atmost"}));
  };
  auto* gen_uks1 = gen->add_subcommand("uks1", "single-row unbounded knapsack");
  common(gen_uks1);
  knap(gen_uks1);
  auto* gen_uksm = gen->add_subcommand("uksm", "knapsack split into m digit rows");
  common(gen_uksm);
  knap(gen_uksm);
  gen_uksm->add_option("--m", g.m, "rows")->check(CLI::PositiveNumber);
  auto* gen_ksum = gen->add_subcommand("ksum", "bit-packed k-SUM feasibility instance");
  common(gen_ksum);
  gen_ksum->add_option("--k", g.k)->check(CLI::Range(2, 16));
  gen_ksum->add_option("--size", g.set_size, "elements per set");
  gen_ksum->add_option("--T", g.T, "target")->check(CLI::PositiveNumber);
  unsigned ksum_m = 1;
  gen_ksum->add_option("--m", ksum_m, "rows after digit splitting")->check(CLI::PositiveNumber);
  auto* gen_random = gen->add_subcommand("random", "random instance with a planted solution");
  common(gen_random);
  std::size_t rand_m = 2;
  gen_random->add_option("--m", rand_m, "rows")->check(CLI::PositiveNumber);
  gen_random->add_option("--n", g.n, "columns");
  gen_random->add_option("--delta", g.delta, "largest entry")->check(CLI::PositiveNumber);
  gen_random->add_option("--max-x", g.max_x, "largest planted entry")->check(CLI::NonNegativeNumber);
  gen_random->add_flag("--positive-row", g.positive_row, "first row strictly positive (bounded instance)");

  std::string bench_families = "uks1,subset,ksum,random", bench_sizes = "1000,10000,100000", bench_out = "-";
  int bench_repeats = 3;
  std::uint64_t bench_seed = 1;
  auto* bench = app.add_subcommand("bench", "timing table as CSV");
  bench->add_option("--family", bench_families, "comma list of uks1,subset,uks2,ksum,random or all; uks2 grows like (sqrt C)^4, keep its sizes small");
  bench->add_option("--sizes", bench_sizes, "comma list of right-hand-side scales");
  bench->add_option("--repeats", bench_repeats)->check(CLI::PositiveNumber);
  bench->add_option("--seed", bench_seed);
  bench->add_option("--out", bench_out);

  std::string sched_path;
  bool sched_json = false;
  auto* sched = app.add_subcommand("schedule", "identical-machine scheduling by dual approximation");
  sched->add_option("file", sched_path, "\"M eps_num eps_den\" then one processing time per line")->required();
  sched->add_flag("--json", sched_json, "print JSON (the default output is also JSON)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*solve_cmd) return run_solve("solve", solve_path, solve_flags);
    if (*feas_cmd) return run_solve("feasible", feas_path, feas_flags);
    if (*gen_uks1) {
      write_output(g.out, format_instance(uks_to_ilp1(knapsack_from(g))));
      return 0;
    }
    if (*gen_uksm) {
      write_output(g.out, format_instance(uks_to_ilpm(knapsack_from(g), g.m)));
      return 0;
    }
    if (*gen_ksum) {
      const auto enc = ksum_to_ilpm(ksum_from(g.seed, g.k, g.set_size, g.T), ksum_m);
      write_output(g.out, format_instance(enc.ilp));
      return 0;
    }
    if (*gen_random) {
      write_output(g.out, format_instance(random_instance(g.seed, rand_m, g.n, g.delta, g.max_x, g.positive_row)));
      return 0;
    }
    if (*bench) return run_bench(bench_families, bench_sizes, bench_repeats, bench_seed, bench_out);
    if (*sched) {
      const auto inst = parse_scheduling(read_file(sched_path));
      std::cout << schedule_json(inst, schedule_dual_approx(inst));
      return 0;
    }
  } catch (const MissingFile& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNoInput;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDataErr;
  } catch (const CapacityError& e) {
    std::cerr << "capacity exceeded: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitSoftware;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
