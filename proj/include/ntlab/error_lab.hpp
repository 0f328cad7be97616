#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ntlab/arith_families.hpp"
#include "ntlab/dirichlet_lab.hpp"
#include "ntlab/sieve_core.hpp"

namespace ntlab {

struct SummatorySample {
  double x = 0.0;
  cplx exact;
  cplx main;
  cplx error;  // exact - main
};

struct Envelopes {
  double mertens;  // x log x
  double walfisz;  // x (log x)^{2/3} (log log x)^{4/3}
  double liu;      // x (log x)^{2/3} (log log x)^{1/3}
  double bp;       // (log x)^{2|a|/3} (log log x)^{|a|/3}
};

Envelopes envelopes_at(double x, double alpha_modulus);

struct ErrorProfile {
  FamilySpec family;
  std::vector<SummatorySample> samples;
  std::vector<Envelopes> envelopes;
  double max_mertens_ratio = 0.0;
  double max_liu_ratio = 0.0;
  double liu_slope = 0.0;  // log-log slope of |E| / liu envelope

  double ratio(std::size_t i, double Envelopes::*env) const {
    return std::abs(samples[i].error) / (envelopes[i].*env);
  }
};

// Prefix sums at each checkpoint; for the singular family only even n contribute.
// Checkpoints must be ascending; floor(x) is the summation limit.
std::vector<std::pair<double, cplx>> summatory_exact(const FamilySpec& spec, std::span<const double> checkpoints,
                                                     const SpfTable& table);

// Prefix sums of the coefficients a(n) modelled in dirichlet_lab: phi(n)/n for
// phi_raw, the family values otherwise.
std::vector<std::pair<double, cplx>> summatory_model(const FamilySpec& spec, std::span<const double> checkpoints,
                                                     const SpfTable& table);

// 40 geometric checkpoints from 10^3 to x_max.
std::vector<double> profile_grid(double x_max, int count = 40);

// phi_raw uses the main term 3 x^2 / pi^2 and ignores `coeffs`.
ErrorProfile error_profile(const FamilySpec& spec, double x_max, const MainTermCoeffs& coeffs,
                           const SpfTable& table);
ErrorProfile error_profile_from_samples(const FamilySpec& spec,
                                        std::span<const std::pair<double, cplx>> exact,
                                        const MainTermCoeffs* coeffs);

MainTermCoeffs fit_main_term(std::span<const std::pair<double, cplx>> samples, const Alpha& a);

// E(x) = sum_{n <= x} phi(n) - 3 x^2 / pi^2.
double walfisz_main_term(double x);
ErrorProfile walfisz_phi_experiment(double x_max, const SpfTable& table);

// max over integers n in [lo, hi] of |E(n)| / (n log n), streamed from a phi table.
double mertens_ratio_sup(const FunctionTable& phi, std::uint64_t lo, std::uint64_t hi);

}  // namespace ntlab
