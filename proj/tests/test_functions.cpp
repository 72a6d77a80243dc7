// Copyright 2026 the regvar-lab authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "regvar/errors.hpp"
#include "regvar/functions.hpp"

using namespace regvar;

TEST_CASE("builtin corpus evaluates the documented forms") {
  const auto f = FunctionSpec::parse("pow_slowvar(1.7, log2)");
  const double x = 1000.0;
  CHECK(f(x) == doctest::Approx(std::pow(x, 1.7) * std::pow(std::log(x), 2)));

  CHECK(FunctionSpec::parse("pow_slowvar(0, log)")(std::exp(2.0)) == doctest::Approx(2.0));
  CHECK(FunctionSpec::parse("const(3.5)")(123.0) == 3.5);
  CHECK(FunctionSpec::parse("sin_osc")(0.0) == doctest::Approx(2.0));
  CHECK(FunctionSpec::parse("affine_phi(3, 0.5)")(10.0) == doctest::Approx(8.0));
  CHECK(FunctionSpec::parse("sqrt_phi")(49.0) == doctest::Approx(7.0));
  CHECK(FunctionSpec::parse("shifted_pow(2.5)")(1.0) == doctest::Approx(std::pow(2.0, 2.5)));
  CHECK(FunctionSpec::parse("const_plus_inv(2)")(4.0) == doctest::Approx(2.25));
  CHECK(FunctionSpec::parse("const_plus_exp_decay(1)")(0.0) == doctest::Approx(2.0));
  CHECK(FunctionSpec::parse("scaled(3, pow_slowvar(1, one))")(5.0) == doctest::Approx(15.0));
  CHECK(FunctionSpec::parse("inv(const(4))")(1.0) == doctest::Approx(0.25));
  // a_n = 3 n^{-1.7} / (log n)^2 as a composable spec
  const auto a = FunctionSpec::parse("scaled(3, inv(pow_slowvar(1.7, log2)))");
  CHECK(a(100.0) == doctest::Approx(3.0 / (std::pow(100.0, 1.7) * std::pow(std::log(100.0), 2))));
}

TEST_CASE("builtin domain errors") {
  CHECK_THROWS_AS(FunctionSpec::parse("pow_slowvar(1, log)")(0.5), EvalError);
  CHECK_THROWS_AS(FunctionSpec::parse("pow_slowvar(1, loglog)")(2.0), EvalError);
  CHECK_THROWS_AS(FunctionSpec::parse("sqrt_phi")(-1.0), EvalError);
  CHECK_THROWS_AS(FunctionSpec::parse("const_plus_inv(2)")(0.0), EvalError);
  CHECK_THROWS_AS(FunctionSpec::parse("nonsense(1)"), ConfigError);
  CHECK_THROWS_AS(FunctionSpec::parse("const(1, 2)"), ConfigError);
  CHECK_THROWS_AS(FunctionSpec::parse("const(abc)"), ConfigError);
  CHECK_THROWS_AS(FunctionSpec::parse("pow_slowvar(1, weird)"), ConfigError);
}

TEST_CASE("spiked: deterministic seeded placement at roughly the nominal rate") {
  const auto f = FunctionSpec::parse("spiked(const(2), 0.01, 100)", 42);
  const auto g = FunctionSpec::parse("spiked(const(2), 0.01, 100)", 42);
  const auto h = FunctionSpec::parse("spiked(const(2), 0.01, 100)", 43);
  int spikes_f = 0, spikes_h = 0;
  bool seeds_differ = false;
  for (int i = 0; i < 100000; ++i) {
    const double x = 1.0 + i * 0.001;
    const double vf = f(x);
    CHECK(vf == g(x));  // same seed, same function
    if (vf == 100.0) ++spikes_f;
    if (h(x) == 100.0) ++spikes_h;
    if (vf != h(x)) seeds_differ = true;
  }
  CHECK(spikes_f > 700);
  CHECK(spikes_f < 1300);
  CHECK(spikes_h > 700);
  CHECK(seeds_differ);
}

TEST_CASE("tabulated interpolation and range errors") {
  const auto f = FunctionSpec::tabulated("tab", {{1.0, 10.0}, {2.0, 20.0}, {4.0, 30.0}});
  CHECK(f(1.0) == 10.0);
  CHECK(f(1.5) == doctest::Approx(15.0));
  CHECK(f(3.0) == doctest::Approx(25.0));
  CHECK(f(4.0) == 30.0);
  CHECK_THROWS_AS(f(0.5), EvalError);
  CHECK_THROWS_AS(f(4.5), EvalError);
  CHECK_THROWS_AS(FunctionSpec::tabulated("bad", {{2.0, 1.0}, {1.0, 2.0}}), EvalError);
}

TEST_CASE("CSV round trip is exact and malformed rows are hard errors") {
  const std::string path = "test_roundtrip.csv";
  std::vector<std::pair<double, double>> rows;
  for (int i = 0; i < 50; ++i) {
    const double x = 1.0 + i * 0.37;
    rows.emplace_back(x, std::sin(x) * 1e10 + 1.0 / 3.0);
  }
  write_xy_csv(path, rows);
  const auto back = read_xy_csv(path);
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(back[i].first == rows[i].first);    // %.17g round-trips doubles
    CHECK(back[i].second == rows[i].second);
  }
  std::remove(path.c_str());

  const std::string bad = "test_bad.csv";
  {
    FILE* fp = std::fopen(bad.c_str(), "w");
    std::fputs("x,value\n1.0,2.0\noops\n", fp);
    std::fclose(fp);
  }
  CHECK_THROWS_AS(read_xy_csv(bad), PipelineError);
  std::remove(bad.c_str());

  const std::string unsorted = "test_unsorted.csv";
  {
    FILE* fp = std::fopen(unsorted.c_str(), "w");
    std::fputs("x,value\n2.0,1.0\n1.0,1.0\n", fp);
    std::fclose(fp);
  }
  CHECK_THROWS_AS(read_xy_csv(unsorted), PipelineError);
  std::remove(unsorted.c_str());
}
