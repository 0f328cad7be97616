#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ntlab/arith_families.hpp"
#include "ntlab/errors.hpp"
#include "ntlab/verify_lab.hpp"
#include "oracles.hpp"

using namespace ntlab;

namespace {

FunctionTable constant_table(std::uint64_t N, double c) {
  return tabulate("const", N, [c](std::uint64_t) { return cplx(c); });
}

bool all_equal(const std::vector<double>& xs, double v) {
  for (double x : xs) {
    if (x != v) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("verify_lab") {

TEST_CASE("minimal constant bisection") {
  CHECK(minimal_constant([](double) { return true; }) == 2.0);
  CHECK(std::isinf(minimal_constant([](double) { return false; })));
  const double c = minimal_constant([](double C) { return C >= 7.31; });
  CHECK(c >= 7.31);
  CHECK(c - 1e-3 < 7.31);
}

TEST_CASE("V1") {
  const std::uint64_t N = 1'000'000;
  const SpfTable spf = build_spf(N + 100);
  const PrimeList primes = primes_from(spf);
  const auto grid = condition_grid(static_cast<double>(N));
  CHECK(grid.size() == 40);

  const auto tau2 = check_V1(family_table({FamilyId::tau_alpha, Alpha(2.0)}, spf.limit(), spf), primes, grid);
  CHECK(all_equal(tau2.implied_constant, 2.0));
  CHECK(tau2.bounded);
  CHECK(all_equal(check_V1(constant_table(spf.limit(), 1.0), primes, grid).implied_constant, 1.0));

  const auto s = tabulate("sfrak", spf.limit(), [&](std::uint64_t n) { return cplx(sfrak(n, spf)); });
  const auto rep = check_V1(s, primes, grid);
  CHECK(rep.implied_constant.back() == 2.0);
}

TEST_CASE("V2") {
  const std::uint64_t N = 1'000'000;
  const SpfTable spf = build_spf(N);
  const auto grid = condition_grid(static_cast<double>(N));
  CHECK(all_equal(check_V2(constant_table(N, 1.0), grid).implied_constant, 2.0));
  CHECK(all_equal(check_V2(sieve_classical(Classical::mu, spf), grid).implied_constant, 2.0));

  const FunctionTable tau = sieve_classical(Classical::tau, spf);
  const ConditionReport r = check_V2(tau, grid);
  CHECK(r.finite());
  CHECK(r.bounded);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid[i], s = r.statistic[i], C = r.implied_constant[i];
    const double lx = std::log(x);
    CHECK(s <= C * x * std::pow(lx, C) * (1 + 1e-12));
    if (C > 2.0) CHECK(s > (C - 1e-3) * x * std::pow(lx, C - 1e-3));
  }
  // Raw statistic against a direct sum of tau(n)^2.
  double direct = 0.0;
  for (std::uint64_t n = 1; n <= static_cast<std::uint64_t>(grid[5]); ++n) {
    const double t = static_cast<double>(oracle::divisor_count(n));
    direct += t * t;
  }
  CHECK(r.statistic[5] == direct);
}

TEST_CASE("V3") {
  const std::uint64_t N = 1'000'000;
  const SpfTable spf = build_spf(N + 1000);
  const PrimeList primes = primes_from(spf);
  const auto grid = condition_grid(static_cast<double>(N));

  const ConditionReport flat = check_V3(constant_table(spf.limit(), 3.0), primes, grid);
  CHECK(all_equal(flat.statistic, 0.0));
  CHECK(all_equal(flat.implied_constant, 2.0));

  const auto slow = tabulate("v", spf.limit(), [](std::uint64_t n) {
    return cplx(2.0 + 1.0 / std::log(std::log(static_cast<double>(n) + 4.0)));
  });
  const ConditionReport r = check_V3(slow, primes, grid);
  CHECK(r.bounded);
  // Monotone on primes, so the variation telescopes.
  const double first = slow[2].real();
  std::uint64_t next = 0;
  for (auto p : primes.primes) {
    if (static_cast<double>(p) > grid.back()) {
      next = p;
      break;
    }
  }
  CHECK(r.statistic.back() == doctest::Approx(first - slow[next].real()).epsilon(1e-12));

  const auto s = tabulate("sfrak", spf.limit(), [&](std::uint64_t n) { return cplx(sfrak(n, spf)); });
  const ConditionReport rs = check_V3(s, primes, grid);
  CHECK(rs.bounded);
  CHECK(rs.statistic.back() - rs.statistic[30] < 1e-3);
  CHECK_THROWS_AS(check_V3(s, primes, std::vector<double>{1e3, 2e6}), DomainError);
}

TEST_CASE("V with kappa") {
  const std::uint64_t N = 1'000'000;
  const SpfTable spf = build_spf(N);
  const auto grid = condition_grid(static_cast<double>(N));
  const ConditionReport ones = check_V_kappa(constant_table(N, 1.0), 1.0, grid);
  // Harmonic sum: (log x + gamma) / log x.
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double lx = std::log(std::floor(grid[i]));
    CHECK(ones.implied_constant[i] * std::log(grid[i]) ==
          doctest::Approx(lx + std::numbers::egamma + 0.5 / std::floor(grid[i])).epsilon(1e-6));
  }
  CHECK(ones.bounded);

  // Square-free harmonic sum grows like (6/pi^2) log x.
  const FunctionTable mu = sieve_classical(Classical::mu, spf);
  const ConditionReport sq = check_V_kappa(mu, 1.0, grid);
  const std::size_t a = 30, b = grid.size() - 1;
  const double growth = (sq.statistic[b] - sq.statistic[a]) / (std::log(grid[b]) - std::log(grid[a]));
  CHECK(growth == doctest::Approx(6.0 / (std::numbers::pi * std::numbers::pi)).epsilon(1e-2));

  for (const Alpha& al : {Alpha(1.0), Alpha(2.0), Alpha(-1.0), Alpha(0.5), Alpha(0.0, 1.0)}) {
    const FunctionTable t = family_table({FamilyId::tau_alpha, al}, N, spf);
    const ConditionReport r = check_V_kappa(t, std::abs(al.value()), grid);
    CHECK(r.bounded);
  }
  const ConditionReport l1 = check_L1_linear(constant_table(N, 1.0), 0.0, grid);
  CHECK(l1.implied_constant.back() == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(check_L1_log(constant_table(N, 1.0), 1.0, grid).condition == Condition::L1_log);
}

TEST_CASE("smooth numbers") {
  const SpfTable spf = build_spf(100000);
  std::uint64_t brute = 0;
  for (std::uint64_t n = 1; n <= 100; ++n) brute += oracle::largest_factor(n) <= 5;
  CHECK(smooth_count(100, 5, spf) == brute);
  CHECK(smooth_count(1000, 1000, spf) == 1000);
  CHECK(smooth_count(1000, 1, spf) == 1);

  const LargestPrimeFactorTable lpf(spf);
  for (std::uint64_t n = 1; n <= 5000; ++n) REQUIRE(lpf(n) == oracle::largest_factor(n));
  std::uint64_t prev_x = 0;
  for (double x = 100; x <= 100000; x *= 1.7) {
    const auto c = smooth_count(x, 30, lpf);
    CHECK(c >= prev_x);
    prev_x = c;
    std::uint64_t prev_y = 0;
    for (double y = 2; y <= x; y *= 2.3) {
      const auto cy = smooth_count(x, y, lpf);
      CHECK(cy >= prev_y);
      prev_y = cy;
    }
  }
  CHECK_THROWS_AS(smooth_count(200000, 5, spf), DomainError);
}

TEST_CASE("de Bruijn gate") {
  const SpfTable spf = build_spf(10'000'000);
  const LargestPrimeFactorTable lpf(spf);
  auto gate = [](double x, double y) {
    const double lx = std::log(x);
    return lx * lx <= y && y <= std::exp(lx / std::log(lx));
  };
  const DeBruijnCheck low = de_bruijn_check(1e6, 50.0, lpf);
  CHECK_FALSE(low.in_range);
  CHECK_FALSE(low.asserted);

  const DeBruijnCheck mid = de_bruijn_check(1e6, 250.0, lpf);
  CHECK(mid.in_range == gate(1e6, 250.0));
  CHECK(mid.asserted == mid.in_range);

  const DeBruijnCheck d = de_bruijn_check(1e7, 300.0, lpf);
  CHECK(d.in_range == gate(1e7, 300.0));
  CHECK(d.in_range);
  CHECK(d.count == smooth_count(1e7, 300.0, spf));
  CHECK(d.holds);
  CHECK(static_cast<double>(d.count) <= d.bound);

  const DeBruijnCheck small = de_bruijn_check(1e4, 90.0, lpf);
  CHECK(small.in_range == gate(1e4, 90.0));
  CHECK_FALSE(small.asserted);
}

}
