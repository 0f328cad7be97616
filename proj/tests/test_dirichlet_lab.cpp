#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ntlab/dirichlet_lab.hpp"
#include "ntlab/error_lab.hpp"
#include "ntlab/errors.hpp"
#include "oracles.hpp"

using namespace ntlab;

namespace {

constexpr double kPi = std::numbers::pi;

// b = tau_{-a} * v with v(n) = n (mu * a)(n), built from sieved tables.
FunctionTable b_from_tables(const FamilySpec& spec, std::uint64_t N, const SpfTable& spf) {
  const FunctionTable a = family_table(spec, N, spf);
  const FunctionTable mu = sieve_classical(Classical::mu, spf);
  FunctionTable mu_n(N, "mu");
  for (std::uint64_t n = 1; n <= N; ++n) mu_n[n] = mu[n];
  FunctionTable v = dirichlet_convolve(mu_n, a);
  for (std::uint64_t n = 1; n <= N; ++n) v[n] *= static_cast<double>(n);
  const FunctionTable tau_neg = family_table({FamilyId::tau_alpha, Alpha(-spec.alpha.value())}, N, spf);
  return dirichlet_convolve(tau_neg, v);
}

}  // namespace

TEST_SUITE("dirichlet_lab") {

TEST_CASE("zeta and reciprocal gamma") {
  CHECK(zeta_real(2.0) == doctest::Approx(kPi * kPi / 6.0).epsilon(1e-14));
  CHECK(zeta_real(4.0) == doctest::Approx(std::pow(kPi, 4) / 90.0).epsilon(1e-14));
  CHECK(zeta_real(3.0) == doctest::Approx(1.2020569031595942854).epsilon(1e-13));
  CHECK(zeta_real(1.5) == doctest::Approx(2.6123753486854883433).epsilon(1e-13));
  CHECK_THROWS_AS(zeta_real(1.0), DomainError);

  CHECK(std::abs(reciprocal_gamma(0.5) - 1.0 / std::sqrt(kPi)) < 1e-13);
  CHECK(std::abs(reciprocal_gamma(3.0) - 0.5) < 1e-13);
  CHECK(std::abs(reciprocal_gamma(0.0)) < 1e-13);
  CHECK(std::abs(reciprocal_gamma(-2.0)) < 1e-13);
  CHECK(std::abs(reciprocal_gamma({1.0, 1.0}) - cplx(1.83074439659052469424, 0.56960764103668180603)) < 1e-12);
  CHECK(std::abs(reciprocal_gamma({-0.5, 0.25}) - cplx(-0.36296641473882587105, 0.0040846552439082411502)) <
        1e-12);
}

TEST_CASE("local factors of v") {
  const LocalFactor sop = local_factor_of_family({FamilyId::sigma_over_phi, Alpha(2.0)}, 3, 6);
  CHECK(sop.coeffs[0] == cplx(1.0));
  CHECK(sop.coeffs[1].real() / 3.0 == doctest::Approx(4.0 / 2.0 - 1.0).epsilon(1e-14));
  for (std::uint64_t p : {2, 5, 101, 7919}) {
    const LocalFactor lf = local_factor_of_family({FamilyId::phi_ratio, Alpha(1.0)}, p, 4);
    const double pd = static_cast<double>(p);
    CHECK(lf.coeffs[0] == cplx(1.0));
    CHECK(lf.coeffs[1].real() / pd == doctest::Approx(1.0 / (pd - 1.0)).epsilon(1e-14));
    CHECK(std::abs(lf.coeffs[2]) < 1e-12);
  }
  CHECK_THROWS_AS(local_factor_of_family({FamilyId::phi_ratio, Alpha(1.0)}, 91, 4), DomainError);
}

TEST_CASE("local factors of b") {
  const Alpha two(2.0);
  const LocalFactor b = b_local_factor({FamilyId::sigma_over_phi, two}, two, 101, 6);
  CHECK(std::abs(b.coeffs[1]) <= 10.0 / 101.0);
  // v(p) - alpha by direct arithmetic: v(p) = p ((p+1)/(p-1) - 1).
  CHECK(b.coeffs[1].real() == doctest::Approx(101.0 * (102.0 / 100.0 - 1.0) - 2.0).epsilon(1e-12));

  const Alpha a(0.5, 1.5);
  const LocalFactor t = b_local_factor({FamilyId::tau_alpha, a}, a, 13, 8);
  CHECK(t.coeffs[0] == cplx(1.0));
  for (int nu = 1; nu <= 8; ++nu) CHECK(std::abs(t.coeffs[nu]) < 1e-14);

  for (std::uint64_t p : {2, 3, 5, 101}) {
    const LocalFactor r = b_local_factor({FamilyId::phi_raw, Alpha(1.0)}, Alpha(-1.0), p, 5);
    for (int nu = 1; nu <= 5; ++nu) CHECK(std::abs(r.coeffs[nu]) < 1e-14);
  }
}

TEST_CASE("local factors reproduce sieved b on [1, 10^4]") {
  const std::uint64_t N = 10000;
  const SpfTable spf = build_spf(N);
  for (const FamilySpec& spec : {FamilySpec{FamilyId::phi_ratio, Alpha(1.0)},
                                 FamilySpec{FamilyId::sigma_ratio, Alpha(-1.0)},
                                 FamilySpec{FamilyId::sigma_over_phi, Alpha(2.0)},
                                 FamilySpec{FamilyId::sigma_ratio, Alpha(0.5, 1.0)}}) {
    const FunctionTable sieved = b_from_tables(spec, N, spf);
    double worst = 0.0;
    for (std::uint64_t n = 1; n <= N; ++n) {
      cplx prod = 1.0;
      for (auto [p, e] : oracle::factor(n)) prod *= b_local_factor(spec, spec.alpha, p, std::max(e, 2)).coeffs[e];
      worst = std::max(worst, std::abs(prod - sieved[n]) / std::max(1.0, std::abs(sieved[n])));
    }
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("euler products") {
  const Alpha a(0.5, -1.0);
  const EulerProduct trivial = euler_product({FamilyId::tau_alpha, a}, a, 2.0, 1000);
  CHECK(std::abs(trivial.value - 1.0) < 1e-15);

  const FamilySpec phi1{FamilyId::phi_ratio, Alpha(1.0)};
  const EulerProduct lo = euler_product(phi1, Alpha(1.0), 2.0, 1'000'000);
  const EulerProduct hi = euler_product(phi1, Alpha(1.0), 2.0, 10'000'000);
  CHECK(std::abs(lo.value - hi.value) <= 1e-8);
  CHECK(std::abs(lo.value - hi.value) <= lo.tail);

  for (const FamilySpec& spec : {FamilySpec{FamilyId::sigma_ratio, Alpha(-1.0)},
                                 FamilySpec{FamilyId::singular, Alpha(1.0)},
                                 FamilySpec{FamilyId::sigma_over_phi, Alpha(0.0, 1.0)}}) {
    for (double s : {0.9, 2.0}) {
      const EulerProduct p1 = euler_product(spec, spec.alpha, s, 100'000);
      const EulerProduct p2 = euler_product(spec, spec.alpha, s, 200'000);
      CHECK(std::abs(p2.value - p1.value) <= p1.tail);
    }
  }
  CHECK_THROWS_AS(euler_product(phi1, Alpha(1.0), 0.7, 1000), DomainError);
  CHECK_THROWS_AS(euler_product(phi1, Alpha(1.0), 2.0, 999), DomainError);
}

TEST_CASE("Dirichlet series partial sums converge to zeta(2)^alpha") {
  const std::uint64_t N = 1'000'000;
  const SpfTable spf = build_spf(N);
  for (const Alpha& a : {Alpha(1.0), Alpha(-1.0), Alpha(2.0), Alpha(0.5), Alpha(0.0, 1.0)}) {
    cplx acc = 0.0;
    for (std::uint64_t n = N; n >= 1; --n) acc += tau_alpha(n, a, spf) / (static_cast<double>(n) * n);
    CHECK(std::abs(acc - std::pow(cplx(kPi * kPi / 6.0), a.value())) <= 1e-3);
  }
}

TEST_CASE("fit recovers synthetic coefficients") {
  const auto xs = profile_grid(1e6);
  for (const Alpha& a : {Alpha(1.5), Alpha(0.7, 0.4), Alpha(2.0), Alpha(-0.5, 1.0)}) {
    MainTermCoeffs truth;
    truth.alpha = a;
    truth.linear = {1.25, -0.5};
    for (int r = 0; r <= log_power_count(a); ++r) truth.logpoly.push_back({0.3 * (r + 1), -0.2 * r});
    const bool integral = log_power_count(a) >= 0 && a.im() == 0.0 && a.re() == std::floor(a.re());
    truth.constant = integral ? cplx{} : cplx(-0.75, 0.1);
    std::vector<cplx> ys;
    for (double x : xs) ys.push_back(truth.evaluate(x));
    const MainTermCoeffs fit = fit_main_term_coeffs(xs, ys, a);
    CHECK(std::abs(fit.linear - truth.linear) <= 1e-8 * std::abs(truth.linear));
    REQUIRE(fit.logpoly.size() == truth.logpoly.size());
    for (std::size_t r = 0; r < fit.logpoly.size(); ++r) {
      CHECK(std::abs(fit.logpoly[r] - truth.logpoly[r]) <= 1e-8 * std::abs(truth.logpoly[r]));
    }
    CHECK(std::abs(fit.constant - truth.constant) <= 1e-8 * std::max(1.0, std::abs(truth.constant)));
  }
  const std::vector<double> few = {1e3, 1e4, 1e5};
  const std::vector<cplx> ys(3, 1.0);
  CHECK_THROWS_AS(fit_main_term_coeffs(few, ys, Alpha(1.0)), UsageError);
}

TEST_CASE("ill-conditioned fits are rejected") {
  std::vector<double> xs(20, 5000.0);
  std::vector<cplx> ys(20, 1.0);
  try {
    fit_main_term_coeffs(xs, ys, Alpha(0.5));
    FAIL("expected IllConditionedError");
  } catch (const IllConditionedError& e) {
    CHECK(e.condition_number() > kMaxConditionNumber);
  }
}

TEST_CASE("alpha = 0 reduces to counting integers") {
  const FamilySpec spec{FamilyId::sigma_ratio, Alpha(0.0)};
  const MainTermCoeffs sd = selberg_delange_coeffs(spec, Alpha(0.0));
  CHECK(std::abs(sd.linear - 1.0) < 1e-12);
  REQUIRE(sd.logpoly.size() == 1);
  CHECK(std::abs(sd.logpoly[0] + 0.5) < 1e-10);

  // floor(x) at non-integer abscissas: the mean of -psi - 1/2 is -1/2.
  std::vector<double> xs;
  std::vector<cplx> ys;
  for (int k = 0; k < 400; ++k) {
    const double x = 1000.0 * std::pow(1.02, k) + 0.618033988749895 * k;
    xs.push_back(x);
    ys.push_back(std::floor(x));
  }
  const MainTermCoeffs fit = fit_main_term_coeffs(xs, ys, Alpha(0.0));
  CHECK(std::abs(fit.linear - 1.0) < 1e-6);
  CHECK(fit.logpoly[0].real() == doctest::Approx(-0.5).epsilon(0.05));
}

TEST_CASE("linear coefficients") {
  CHECK(linear_coefficient_oracle({FamilyId::phi_raw, Alpha(1.0)}, 10000).real() ==
        doctest::Approx(6.0 / (kPi * kPi)).epsilon(1e-14));
  CHECK(std::abs(linear_coefficient_oracle({FamilyId::sigma_ratio, Alpha(1.0)}, 1'000'000) - kPi * kPi / 6.0) <
        1e-9);
  const MainTermCoeffs sd = selberg_delange_coeffs({FamilyId::phi_ratio, Alpha(1.0)}, Alpha(1.0));
  CHECK(sd.linear.real() == doctest::Approx(1.94359643681914).epsilon(1e-10));
  CHECK_THROWS_AS(selberg_delange_coeffs({FamilyId::phi_ratio, Alpha(-1.0)}, Alpha(-1.0)), DomainError);
  CHECK(main_term_coeffs({FamilyId::phi_ratio, Alpha(2.0)}, Alpha(2.0), MainTermMethod::selberg_delange).R() == 2);
  CHECK(parse_main_term_method("fit") == MainTermMethod::fit);
  CHECK_THROWS_AS(parse_main_term_method("guess"), UsageError);
}

TEST_CASE("phi(n)/n summatory fit gives 1/zeta(2)") {
  const SpfTable spf = build_spf(1'000'000);
  const FamilySpec spec{FamilyId::phi_raw, Alpha(1.0)};
  const auto exact = summatory_model(spec, profile_grid(1e6), spf);
  const MainTermCoeffs c = fit_main_term(exact, natural_alpha(spec));
  CHECK(c.linear.real() == doctest::Approx(6.0 / (kPi * kPi)).epsilon(1e-6));
}

TEST_CASE("fit and Selberg-Delange agree on A_0 for phi_ratio, alpha = 1") {
  const SpfTable spf = build_spf(10'000'000);
  const FamilySpec spec{FamilyId::phi_ratio, Alpha(1.0)};
  const auto exact = summatory_model(spec, profile_grid(1e7), spf);
  const MainTermCoeffs fit = fit_main_term(exact, spec.alpha);
  const MainTermCoeffs sd = selberg_delange_coeffs(spec, spec.alpha);
  CHECK(std::abs(fit.logpoly[0] - sd.logpoly[0]) <= 0.02 * std::abs(sd.logpoly[0]));
  CHECK(std::abs(fit.linear - sd.linear) <= 1e-6 * std::abs(sd.linear));
}

}
