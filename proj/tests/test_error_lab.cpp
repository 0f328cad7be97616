#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ntlab/error_lab.hpp"
#include "ntlab/errors.hpp"
#include "ntlab/parallel.hpp"
#include "ntlab/report.hpp"
#include "oracles.hpp"

using namespace ntlab;

TEST_SUITE("error_lab") {

TEST_CASE("summatory values at x = 10") {
  const SpfTable spf = build_spf(1000);
  const std::vector<double> ten = {10.0};
  std::uint64_t phi_sum = 0;
  for (std::uint64_t n = 1; n <= 10; ++n) phi_sum += oracle::totient(n);
  CHECK(phi_sum == 32);
  CHECK(summatory_exact({FamilyId::phi_raw, Alpha(1.0)}, ten, spf)[0].second == cplx(32.0));

  const auto sing = summatory_exact({FamilyId::singular, Alpha(1.0)}, ten, spf);
  CHECK(sing[0].second.real() ==
        doctest::Approx(twin_prime_constant() * (1.0 + 1.0 + 2.0 + 1.0 + 4.0 / 3.0)).epsilon(1e-14));

  const std::vector<double> xs = {1.0, 7.5, 10.0, 999.9};
  const auto zero = summatory_exact({FamilyId::sigma_ratio, Alpha(0.0)}, xs, spf);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(zero[i].second == cplx(std::floor(xs[i])));

  const std::vector<double> bad = {10.0, 5.0};
  CHECK_THROWS_AS(summatory_exact({FamilyId::phi_raw, Alpha(1.0)}, bad, spf), UsageError);
  const std::vector<double> beyond = {2000.0};
  CHECK_THROWS_AS(summatory_exact({FamilyId::phi_raw, Alpha(1.0)}, beyond, spf), DomainError);
}

TEST_CASE("Walfisz error at x = 10") {
  const SpfTable spf = build_spf(1000);
  double brute = 0.0;
  for (std::uint64_t n = 1; n <= 10; ++n) brute += static_cast<double>(oracle::totient(n));
  const double e10 = brute - 300.0 / (std::numbers::pi * std::numbers::pi);
  const std::vector<std::pair<double, cplx>> sample = {{10.0, summatory_exact({FamilyId::phi_raw, Alpha(1.0)},
                                                                               std::vector<double>{10.0}, spf)[0]
                                                                  .second}};
  const ErrorProfile p = error_profile_from_samples({FamilyId::phi_raw, Alpha(1.0)}, sample, nullptr);
  CHECK(p.samples[0].error.real() == doctest::Approx(e10).epsilon(1e-13));
  CHECK(std::round(p.samples[0].error.real() * 1e4) == 16036.0);
}

TEST_CASE("prefix consistency on random splits") {
  const SpfTable spf = build_spf(200000);
  std::mt19937_64 rng(99);
  for (const FamilySpec& spec : {FamilySpec{FamilyId::phi_ratio, Alpha(0.5, 1.0)},
                                 FamilySpec{FamilyId::singular, Alpha(1.0)}}) {
    for (int k = 0; k < 5; ++k) {
      const double x1 = 1.0 + static_cast<double>(rng() % 100000);
      const double x2 = x1 + static_cast<double>(rng() % 100000);
      const auto s = summatory_exact(spec, std::vector<double>{x1, x2}, spf);
      cplx mid{};
      for (std::uint64_t n = static_cast<std::uint64_t>(x1) + 1; n <= static_cast<std::uint64_t>(x2); ++n) {
        if (spec.id != FamilyId::singular || n % 2 == 0) mid += family_value(spec, n, spf);
      }
      CHECK(std::abs(s[1].second - (s[0].second + mid)) <= 1e-9 * std::abs(s[1].second));
    }
  }
}

TEST_CASE("parallel summation does not depend on the thread count") {
  const SpfTable spf = build_spf(1'000'000);
  const FamilySpec spec{FamilyId::sigma_ratio, Alpha(0.0, 1.0)};
  const auto grid = profile_grid(1e6);
  set_thread_count(1);
  const auto a = summatory_exact(spec, grid, spf);
  set_thread_count(4);
  const auto b = summatory_exact(spec, grid, spf);
  set_thread_count(1);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].second == b[i].second);
}

TEST_CASE("sigma_ratio alpha = 0 residuals form a sawtooth band") {
  const SpfTable spf = build_spf(1'000'000);
  const FamilySpec spec{FamilyId::sigma_ratio, Alpha(0.0)};
  std::vector<double> xs;
  for (int k = 0; k < 60; ++k) xs.push_back(1000.0 * std::pow(1.12, k) + 0.37 * k);
  const auto exact = summatory_exact(spec, xs, spf);
  const MainTermCoeffs c = fit_main_term(exact, spec.alpha);
  const ErrorProfile p = error_profile_from_samples(spec, exact, &c);
  for (const auto& s : p.samples) {
    CHECK(s.error == s.exact - s.main);
    CHECK(s.error.real() >= -1.0);
    CHECK(s.error.real() <= 1.0);
  }
}

TEST_CASE("profiles and envelopes") {
  const SpfTable spf = build_spf(1'000'000);
  const ErrorProfile w = walfisz_phi_experiment(1e6, spf);
  CHECK(w.samples.size() == 40);
  for (std::size_t i = 0; i < w.samples.size(); ++i) {
    CHECK(std::isfinite(w.ratio(i, &Envelopes::mertens)));
    CHECK(w.ratio(i, &Envelopes::mertens) > 0.0);
    CHECK(w.envelopes[i].walfisz > 0.0);
    CHECK(w.envelopes[i].liu > 0.0);
    CHECK(w.envelopes[i].bp > 0.0);
  }
  const Envelopes e = envelopes_at(1e6, 1.5);
  const double lx = std::log(1e6), llx = std::log(lx);
  CHECK(e.mertens == doctest::Approx(1e6 * lx));
  CHECK(e.walfisz == doctest::Approx(1e6 * std::pow(lx, 2.0 / 3) * std::pow(llx, 4.0 / 3)));
  CHECK(e.liu == doctest::Approx(1e6 * std::pow(lx, 2.0 / 3) * std::pow(llx, 1.0 / 3)));
  CHECK(e.bp == doctest::Approx(std::pow(lx, 1.0) * std::pow(llx, 0.5)));

  const FamilySpec spec{FamilyId::phi_ratio, Alpha(1.0)};
  const auto exact = summatory_exact(spec, profile_grid(1e6), spf);
  const MainTermCoeffs c = fit_main_term(exact, spec.alpha);
  const ErrorProfile p = error_profile(spec, 1e6, c, spf);
  CHECK(p.max_mertens_ratio < w.max_mertens_ratio);

  const FamilySpec imag{FamilyId::sigma_ratio, Alpha(0.0, 1.0)};
  const auto ex_i = summatory_exact(imag, profile_grid(1e6), spf);
  const MainTermCoeffs ci = fit_main_term(ex_i, imag.alpha);
  const ErrorProfile pi = error_profile_from_samples(imag, ex_i, &ci);
  for (const auto& s : pi.samples) CHECK(std::isfinite(std::abs(s.error)));
}

TEST_CASE("Mertens ratio scan") {
  const FunctionTable phi = sieve_classical(Classical::phi, 20000);
  double brute = 0.0, s = 0.0;
  for (std::uint64_t n = 1; n <= 20000; ++n) {
    s += phi[n].real();
    if (n >= 1000) {
      const double x = static_cast<double>(n);
      brute = std::max(brute, std::abs(s - 3.0 * x * x / (std::numbers::pi * std::numbers::pi)) / (x * std::log(x)));
    }
  }
  CHECK(mertens_ratio_sup(phi, 1000, 20000) == brute);
  CHECK_THROWS_AS(mertens_ratio_sup(phi, 1000, 30000), DomainError);
}

TEST_CASE("profile CSV layout") {
  const SpfTable spf = build_spf(100000);
  const ErrorProfile w = walfisz_phi_experiment(1e5, spf);
  const CsvTable t = profile_csv({w});
  CHECK(t.rows() == 40);
  const std::string text = t.str();
  CHECK(text.rfind("family,alpha_re,alpha_im,x,exact_re,exact_im,main_re,main_im,err_abs,env_mertens,env_walfisz,"
                   "env_liu,env_bp,ratio_mertens,ratio_walfisz,ratio_liu,ratio_bp\n",
                   0) == 0);
  CHECK(profile_svg(w).find("<svg") != std::string::npos);
}

}
