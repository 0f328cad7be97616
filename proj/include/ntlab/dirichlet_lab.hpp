#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ntlab/arith_families.hpp"
#include "ntlab/numeric.hpp"

namespace ntlab {

// Local Dirichlet polynomial sum_{nu <= K} coeffs[nu] p^{-nu s} with coeffs[0] = 1.
// Coefficients are the unnormalized values g(p^nu) of the multiplicative function.
struct LocalFactor {
  std::uint64_t prime = 0;
  std::vector<cplx> coeffs;

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
  cplx evaluate(double s) const;
};

// Riemann zeta on the real axis, s > 1, by Euler-Maclaurin summation.
double zeta_real(double s);

// 1 / Gamma(z), entire; Lanczos with reflection for Re z < 1/2.
cplx reciprocal_gamma(cplx z);

// The exponent the family pairs with in zeta(s) zeta(s+1)^alpha f(s+1):
// spec.alpha for the four ratio families and tau_alpha, -1 for phi_raw.
Alpha natural_alpha(const FamilySpec& spec);

// Value at p^nu of the multiplicative function a(n) whose summatory function the
// family studies: (sigma/n)^a, (n/phi)^a, (sigma/phi)^{a/2}, s(n)^a, phi(n)/n.
cplx family_prime_power(const FamilySpec& spec, std::uint64_t p, int nu);

// Local factor of v, where a = 1 * (v(n)/n); for tau_alpha, v = tau_alpha itself.
LocalFactor local_factor_of_family(const FamilySpec& spec, std::uint64_t p, int order);

// Local factor of b = tau_{-a} * v.
LocalFactor b_local_factor(const FamilySpec& spec, const Alpha& a, std::uint64_t p, int order);

struct EulerProduct {
  cplx value;
  double tail;  // heuristic size of the omitted primes p > p_max
  std::uint64_t p_max;
  std::uint64_t primes_used;
};

// f(s) = prod_{p <= p_max} (local b factor at s); requires s >= 0.75, p_max >= 1000.
EulerProduct euler_product(const FamilySpec& spec, const Alpha& a, double s, std::uint64_t p_max);

// Taylor coefficients of f(1 + t) at t = 0 up to the given order.
std::vector<cplx> euler_product_taylor(const FamilySpec& spec, const Alpha& a, int order,
                                       std::uint64_t p_max);

enum class MainTermMethod { fit, selberg_delange };
MainTermMethod parse_main_term_method(std::string_view name);
std::string_view to_string(MainTermMethod m);

// A x + sum_{r=0}^{R} A_r (log x)^{alpha - r} + constant.
struct MainTermCoeffs {
  Alpha alpha;
  MainTermMethod method = MainTermMethod::fit;
  cplx linear;
  std::vector<cplx> logpoly;  // A_0..A_R; empty when Re alpha < 0
  cplx constant;              // free constant, absent (0) when some alpha - r vanishes
  double condition_number = 0.0;
  double residual_rms = 0.0;
  double tail = 0.0;

  int R() const { return static_cast<int>(logpoly.size()) - 1; }
  cplx evaluate(double x) const;
};

// floor(Re alpha) when Re alpha >= 0, else -1.
int log_power_count(const Alpha& a);

inline constexpr double kMaxConditionNumber = 1e12;
inline constexpr std::uint64_t kDefaultEulerCutoff = 1'000'000;

// Unweighted least squares on {x} u {(log x)^{alpha-r}} u {1}, with the design
// columns normalized before the SVD.
MainTermCoeffs fit_main_term_coeffs(std::span<const double> xs, std::span<const cplx> ys,
                                    const Alpha& a);

// Linear coefficient zeta(2)^a f(2); A_r = h_r / Gamma(a + 1 - r) with h_r the
// Taylor coefficients at t = 0 of zeta(t) (t zeta(1+t))^a f(1+t).
MainTermCoeffs selberg_delange_coeffs(const FamilySpec& spec, const Alpha& a,
                                      std::uint64_t p_max = kDefaultEulerCutoff);

// Dispatcher: `fit` needs the (x, exact) samples; `selberg_delange` ignores them.
MainTermCoeffs main_term_coeffs(const FamilySpec& spec, const Alpha& a, MainTermMethod method,
                                std::span<const double> xs = {}, std::span<const cplx> ys = {});

// zeta(2)^a f(2), times S_2^a / 2 for the singular family (even-n sum over n <= x).
cplx linear_coefficient_oracle(const FamilySpec& spec, std::uint64_t p_max, double* tail = nullptr);

}  // namespace ntlab
