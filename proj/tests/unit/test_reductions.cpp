#include "doctest.h"

#include <map>
#include <random>
#include <set>

#include "ilpdp/dp_solver.hpp"
#include "ilpdp/reductions.hpp"
#include "../oracles.hpp"

using namespace ilpdp;

namespace {

using Vec = std::vector<std::int64_t>;

IlpInstance make(std::size_t m, std::size_t n, Vec a, Vec b, std::optional<Vec> c) {
  return IlpInstance(m, n, std::move(a), std::move(b), std::move(c));
}

/// Feasible x-projections of a split instance with ||x||_1 <= bound. The
/// carries are determined by x, so we solve for them row by row.
std::map<Vec, std::int64_t> split_projections(const IlpInstance& split, std::size_t n, std::int64_t bound) {
  std::map<Vec, std::int64_t> out;
  const std::size_t m = split.rows();
  oracle::for_each_bounded(n, bound, [&](const Vec& x) {
    std::int64_t carry_in = 0;  // y_l entering row l
    Vec y;
    for (std::size_t l = 0; l < m; ++l) {
      std::int64_t lhs = carry_in;
      for (std::size_t j = 0; j < n; ++j) lhs += split.a(l, j) * x[j];
      const std::int64_t rest = lhs - split.rhs()[l];
      if (l + 1 == m) {
        if (rest != 0) return;
        break;
      }
      const std::int64_t delta = -split.a(l, n + l);
      if (rest < 0 || rest % delta != 0) return;
      carry_in = rest / delta;
      y.push_back(carry_in);
    }
    std::int64_t value = 0;
    for (std::size_t j = 0; j < n; ++j) value += split.objective()[j] * x[j];
    out[x] = value;
  });
  return out;
}

}  // namespace

TEST_CASE("integer_root") {
  CHECK(integer_root(100, 2) == 10);
  CHECK(integer_root(101, 2) == 10);
  CHECK(integer_root(0, 3) == 0);
  CHECK(integer_root(99, 2) == 9);
  CHECK(integer_root(std::int64_t{1} << 40, 1) == std::int64_t{1} << 40);
  CHECK(integer_root(std::numeric_limits<std::int64_t>::max(), 2) == 3037000499);
  CHECK(integer_root(27, 3) == 3);
  CHECK(integer_root(26, 3) == 2);
}

TEST_CASE("uks_to_ilp1") {
  const auto inst = uks_to_ilp1({7, {2, 3}, {3, 4}, KnapsackMode::Equality});
  CHECK(inst == make(1, 2, {2, 3}, {7}, Vec{3, 4}));
  const auto slack = uks_to_ilp1({7, {2, 3}, {3, 4}, KnapsackMode::AtMost});
  CHECK(slack == make(1, 3, {2, 3, 1}, {7}, Vec{3, 4, 0}));
  const auto empty = uks_to_ilp1({0, {}, {}, KnapsackMode::Equality});
  CHECK(empty.cols() == 0);
  CHECK(solve(empty).status == Status::Optimal);
  CHECK(solve(uks_to_ilp1({3, {}, {}, KnapsackMode::Equality})).status == Status::Infeasible);
}

TEST_CASE("digit_split examples") {
  const auto split13 = digit_split(make(1, 1, {5}, {13}, Vec{1}), 2);
  CHECK(split13.rhs()[0] == 1);
  CHECK(split13.rhs()[1] == 3);
  CHECK(split13.a(0, 0) == 1);
  CHECK(split13.a(1, 0) == 1);
  CHECK(split13.a(0, 1) == -4);

  const auto one = make(1, 2, {2, 3}, {7}, Vec{3, 4});
  CHECK(digit_split(one, 1) == one);

  const auto two = uks_to_ilpm({7, {2, 3}, {3, 4}, KnapsackMode::Equality}, 2);
  CHECK(two == make(2, 3, {2, 0, -3, 0, 1, 1}, {1, 2}, Vec{3, 4, 0}));
  const auto a = solve(one), b = solve(two);
  CHECK(a.value == 10);
  CHECK(b.value == a.value);

  CHECK_THROWS_AS(digit_split(make(1, 1, {-1}, {3}, std::nullopt), 2), std::invalid_argument);
  CHECK_THROWS_AS(digit_split(make(1, 1, {50}, {7}, std::nullopt), 2), std::invalid_argument);
}

TEST_CASE("digit_split preserves feasible sets and optima") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 3;
    const unsigned m = 2 + rng() % 2;
    std::uniform_int_distribution<std::int64_t> w(1, 9), p(0, 6), cap(0, 40);
    Vec a(n), c(n);
    for (auto& v : a) v = w(rng);
    for (auto& v : c) v = p(rng);
    const std::int64_t C = cap(rng);
    Vec kept_a, kept_c;
    const std::int64_t delta = integer_root(C, m) + 1;
    Wide lim = 1;
    for (unsigned i = 0; i < m; ++i) lim *= delta;
    for (std::size_t j = 0; j < n; ++j)
      if (a[j] < lim) {
        kept_a.push_back(a[j]);
        kept_c.push_back(c[j]);
      }
    if (kept_a.empty()) continue;
    const std::size_t k = kept_a.size();
    const auto one = make(1, k, kept_a, {C}, kept_c);
    const auto split = digit_split(one, m);

    // Both directions: x feasible for the single row iff some carries complete it.
    std::map<Vec, std::int64_t> direct;
    oracle::for_each_bounded(k, 6, [&](const Vec& x) {
      if (oracle::times(one, x)[0] == C) direct[x] = oracle::dot(one.objective(), x);
    });
    CHECK(split_projections(split, k, 6) == direct);

    const auto s1 = solve(one), sm = solve(split);
    CHECK(s1.status == sm.status);
    CHECK(s1.value == sm.value);
    if (sm.status == Status::Optimal) {
      for (std::size_t l = k; l < split.cols(); ++l) CHECK((*sm.x)[l] >= 0);
    }
  }
}

TEST_CASE("ksum layout and packing") {
  const KSumInstance ks{4, {{1, 2}, {2}}};
  const auto enc = ksum_to_ilp(ks);
  const auto& L = enc.layout;
  CHECK(L.value_bits == 4);
  CHECK(L.buffer_bits == 3);
  CHECK(L.marker_bits == 3);
  CHECK(enc.packed_target < (std::int64_t{1} << (3 * L.buffer_bits + L.marker_bits + L.value_bits)));
  CHECK(enc.ilp.rows() == 1);
  CHECK(enc.ilp.cols() == 3);
  CHECK(enc.ilp.feasibility_only());

  auto sol = feasible(enc.ilp);
  REQUIRE(sol.status == Status::Feasible);
  CHECK(decode_ksum_witness(enc, *sol.x) == Vec{2, 2});

  CHECK(feasible(ksum_to_ilp({3, {{1}, {1}}}).ilp).status == Status::Infeasible);
  CHECK(ksum_to_ilpm(ks, 1).ilp == enc.ilp);
  CHECK(feasible(ksum_to_ilpm(ks, 2).ilp).status == Status::Feasible);
  CHECK(feasible(ksum_to_ilpm({3, {{1}, {1}}}, 2).ilp).status == Status::Infeasible);

  // Elements above T are dropped.
  CHECK(ksum_to_ilp({4, {{1, 9}, {3}}}).ilp.cols() == 2);
  CHECK_THROWS_AS(ksum_to_ilp({4, {{1}}}), std::invalid_argument);
}

TEST_CASE("ksum encodings agree with brute force") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t k = 2 + rng() % 2;
    std::uniform_int_distribution<std::int64_t> tgt(1, 60);
    const std::int64_t T = tgt(rng);
    std::uniform_int_distribution<std::int64_t> elem(0, T + 5);
    KSumInstance ks{T, std::vector<Vec>(k)};
    for (auto& Z : ks.sets) {
      const std::size_t size = 1 + rng() % 6;
      for (std::size_t i = 0; i < size; ++i) Z.push_back(elem(rng));
    }
    const bool expect = oracle::ksum_exists(T, ks.sets);
    for (unsigned m : {1u, 2u}) {
      const auto enc = ksum_to_ilpm(ks, m);
      const auto sol = feasible(enc.ilp);
      CHECK((sol.status == Status::Feasible) == expect);
      if (sol.status == Status::Feasible) {
        const auto tuple = decode_ksum_witness(enc, *sol.x);
        REQUIRE(tuple.has_value());
        std::int64_t sum = 0;
        for (std::size_t i = 0; i < k; ++i) {
          sum += (*tuple)[i];
          CHECK(std::find(ks.sets[i].begin(), ks.sets[i].end(), (*tuple)[i]) != ks.sets[i].end());
        }
        CHECK(sum == T);
      }
    }
  }
}
