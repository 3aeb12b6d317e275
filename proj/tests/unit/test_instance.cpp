#include "doctest.h"

#include <random>

#include "ilpdp/instance.hpp"
#include "../oracles.hpp"

using namespace ilpdp;

TEST_CASE("parse a complete instance") {
  const auto inst = parse_instance("1 2\n2 3\n7\n3 4\n");
  CHECK(inst.rows() == 1);
  CHECK(inst.cols() == 2);
  CHECK(inst.a(0, 0) == 2);
  CHECK(inst.a(0, 1) == 3);
  CHECK(inst.rhs()[0] == 7);
  CHECK(inst.objective()[1] == 4);
  CHECK_FALSE(inst.feasibility_only());
}

TEST_CASE("short right-hand side is a dimension mismatch with its line number") {
  try {
    parse_instance("2 1\n1\n-1\n0\n5\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
    CHECK(std::string(e.what()).find("dimension mismatch") != std::string::npos);
  }
}

TEST_CASE("two-row file with a full right-hand side and objective parses") {
  const auto inst = parse_instance("2 1\n1\n-1\n0 0\n5\n");
  CHECK(inst.rows() == 2);
  CHECK(inst.objective()[0] == 5);
}

TEST_CASE("parse rejects empty, malformed and oversized input") {
  CHECK_THROWS_AS(parse_instance(""), ParseError);
  CHECK_THROWS_AS(parse_instance("1 1\n2\nx\n"), ParseError);
  try {
    parse_instance("1 1\n99999999999999999999\n1\n");
    FAIL("expected overflow");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_instance("1 1\n1\n1\n1\n1\n"), ParseError);
}

TEST_CASE("comments are skipped and a missing objective means feasibility") {
  const auto inst = parse_instance("# header\n1 2\n# row\n2 3\n7\n");
  CHECK(inst.feasibility_only());
  CHECK(inst.objective()[0] == 0);
  CHECK(parse_instance(format_instance(inst)) == inst);
}

TEST_CASE("normalize keeps the best copy of each column") {
  {
    IlpInstance inst(1, 2, {1, 1}, {0}, std::vector<std::int64_t>{3, 5});
    const auto norm = normalize(inst);
    CHECK(norm.origin_map == std::vector<std::size_t>{1});
  }
  {
    IlpInstance inst(1, 2, {1, 2}, {0}, std::vector<std::int64_t>{3, 5});
    CHECK(normalize(inst).origin_map == std::vector<std::size_t>{0, 1});
  }
  {
    IlpInstance inst(2, 2, {0, 0, 1, 1}, {0, 0}, std::vector<std::int64_t>{4, 4});
    CHECK(normalize(inst).origin_map == std::vector<std::size_t>{0});
  }
}

TEST_CASE("max_abs_entry") {
  CHECK(max_abs_entry(IlpInstance(2, 2, {2, -5, 1, 0}, {0, 0}, std::nullopt)) == 5);
  CHECK(max_abs_entry(IlpInstance(1, 1, {0}, {0}, std::nullopt)) == 0);
  CHECK(max_abs_entry(IlpInstance(1, 0, {}, {0}, std::nullopt)) == 0);
}

TEST_CASE("normalize is idempotent and preserves optima on small instances") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> entry(-1, 1), obj(-3, 3);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t m = 1 + trial % 2, n = 2 + trial % 4;
    std::vector<std::int64_t> a(m * n), c(n);
    for (auto& v : a) v = entry(rng);
    for (auto& v : c) v = obj(rng);
    IlpInstance inst(m, n, a, std::vector<std::int64_t>(m, 0), c);
    const auto norm = normalize(inst);
    CHECK(normalize(norm.inner).inner.cols() == norm.inner.cols());

    const auto orig = oracle::best_by_rhs(inst, 4);
    const auto reduced = oracle::best_by_rhs(norm.inner, 4);
    CHECK(orig.size() == reduced.size());
    for (const auto& [b, v] : orig) {
      REQUIRE(reduced.count(b));
      CHECK(reduced.at(b) == v);
    }
    std::vector<Wide> x(norm.inner.cols(), 1);
    const auto lifted = lift(norm, x);
    CHECK(lifted.size() == n);
    CHECK(apply_matrix(inst, lifted) == apply_matrix(norm.inner, x));
    CHECK(objective_value(inst, lifted) == objective_value(norm.inner, x));
  }
}
