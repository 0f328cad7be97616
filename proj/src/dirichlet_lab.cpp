#include "ntlab/dirichlet_lab.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "ntlab/errors.hpp"
#include "ntlab/parallel.hpp"
#include "ntlab/sieve_core.hpp"

namespace ntlab {

namespace {

using Series = std::vector<cplx>;

// Stieltjes constants gamma_0..gamma_8.
constexpr std::array<double, 9> kStieltjes = {
    0.57721566490153286061,    -0.072815845483676724861,  -0.0096903631928723184845,
    0.0020538344203033458662,  0.0023253700654673000575,  0.00079332381730106270175,
    -0.00023876934543019960987, -0.00052728956705775104607, -0.0003521233538030395096};

// Taylor coefficients zeta^{(k)}(0) / k!, k = 0..8.
constexpr std::array<double, 9> kZetaAtZero = {
    -0.5, -0.91893853320467274178, -1.0031782279542924256, -1.000785194477042408,
    -0.99987929950057116496, -1.000001940896320456, -1.0000013011460139596,
    -0.99999983138417361078, -1.0000000057646759799};

constexpr int kMaxSeriesOrder = 8;

Series series_mul(const Series& a, const Series& b, std::size_t n) {
  Series c(n, cplx{});
  for (std::size_t i = 0; i < std::min(n, a.size()); ++i) {
    for (std::size_t j = 0; i + j < n && j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

// log of a series with constant term 1.
Series series_log1(const Series& b) {
  Series c(b.size(), cplx{});
  for (std::size_t k = 1; k < b.size(); ++k) {
    cplx acc = b[k];
    for (std::size_t j = 1; j < k; ++j) acc -= static_cast<double>(j) / static_cast<double>(k) * c[j] * b[k - j];
    c[k] = acc;
  }
  return c;
}

Series series_exp(const Series& c) {
  Series e(c.size(), cplx{});
  if (c.empty()) return e;
  e[0] = std::exp(c[0]);
  for (std::size_t k = 1; k < c.size(); ++k) {
    cplx acc{};
    for (std::size_t j = 1; j <= k; ++j) acc += static_cast<double>(j) * c[j] * e[k - j];
    e[k] = acc / static_cast<double>(k);
  }
  return e;
}

cplx expm1c(cplx z) {
  const double x = z.real();
  const double y = z.imag();
  const double sh = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * sh * sh, std::exp(x) * std::sin(y)};
}

// Exponent of the real base for the family: a(p^nu) = base_nu^exponent.
cplx family_exponent(const FamilySpec& spec) {
  if (spec.id == FamilyId::sigma_over_phi) return spec.alpha.value() / 2.0;
  return spec.alpha.value();
}

// log(base_nu) - log(base_{nu-1}) for the ratio families, nu >= 1.
double log_base_increment(FamilyId id, std::uint64_t p, int nu) {
  const double pd = static_cast<double>(p);
  auto geometric = [&](int m) {
    double s = 1.0, t = 1.0;
    for (int k = 0; k < m; ++k) {
      t /= pd;
      s += t;
    }
    return s;
  };
  switch (id) {
    case FamilyId::sigma_ratio: return std::log1p(std::pow(pd, -nu) / geometric(nu - 1));
    case FamilyId::phi_ratio: return nu == 1 ? -std::log1p(-1.0 / pd) : 0.0;
    case FamilyId::sigma_over_phi:
      if (nu == 1) return std::log1p(1.0 / pd) - std::log1p(-1.0 / pd);
      return std::log1p(std::pow(pd, -nu) / geometric(nu - 1));
    case FamilyId::singular:
      if (p == 2 || nu > 1) return 0.0;
      return -std::log1p(-1.0 / (pd - 1.0));
    case FamilyId::tau_alpha:
    case FamilyId::phi_raw: break;
  }
  return 0.0;
}

LocalFactor v_factor_unchecked(const FamilySpec& spec, std::uint64_t p, int order) {
  LocalFactor lf{p, Series(order + 1, cplx{})};
  lf.coeffs[0] = 1.0;
  if (spec.id == FamilyId::tau_alpha) {
    for (int nu = 1; nu <= order; ++nu) lf.coeffs[nu] = tau_alpha_prime_power(spec.alpha.value(), nu);
    return lf;
  }
  if (spec.id == FamilyId::phi_raw) {
    // phi(n)/n = (mu * (v/n)) with v = mu.
    if (order >= 1) lf.coeffs[1] = -1.0;
    return lf;
  }
  // v(p^nu) = p^nu (a(p^nu) - a(p^{nu-1})) = p^nu a(p^{nu-1}) expm1(e * dlog).
  const cplx e = family_exponent(spec);
  double log_base = 0.0;
  double pnu = 1.0;
  for (int nu = 1; nu <= order; ++nu) {
    pnu *= static_cast<double>(p);
    const double inc = log_base_increment(spec.id, p, nu);
    lf.coeffs[nu] = pnu * std::exp(e * log_base) * expm1c(e * inc);
    log_base += inc;
  }
  return lf;
}

LocalFactor b_factor_unchecked(const FamilySpec& spec, cplx a, std::uint64_t p, int order) {
  const LocalFactor v = v_factor_unchecked(spec, p, order);
  LocalFactor b{p, Series(order + 1, cplx{})};
  Series tau_neg(order + 1);
  for (int k = 0; k <= order; ++k) tau_neg[k] = tau_alpha_prime_power(-a, k);
  for (int nu = 0; nu <= order; ++nu) {
    cplx acc{};
    for (int k = 0; k <= nu; ++k) acc += tau_neg[k] * v.coeffs[nu - k];
    b.coeffs[nu] = acc;
  }
  return b;
}

// Order so that p^{-order * s} is below double resolution.
int truncation_order(std::uint64_t p, double s) {
  const double need = 39.2 / (s * std::log(static_cast<double>(p)));
  return std::clamp(static_cast<int>(std::ceil(need)) + 1, 2, 64);
}

void require_prime(std::uint64_t p) {
  if (!is_prime_u64(p)) throw DomainError("local factor requested at non-prime " + std::to_string(p));
}

void require_order(int order) {
  if (order < 2 || order > 64) throw DomainError("local factor order must be in [2, 64]");
}

}  // namespace

cplx LocalFactor::evaluate(double s) const {
  const double x = std::pow(static_cast<double>(prime), -s);
  cplx acc{};
  for (int nu = order(); nu >= 0; --nu) acc = acc * x + coeffs[nu];
  return acc;
}

double zeta_real(double s) {
  if (!(s > 1.0)) throw DomainError("zeta_real requires s > 1");
  if (s > 60.0) return 1.0 + std::pow(2.0, -s) + std::pow(3.0, -s);
  constexpr int kN = 20;
  constexpr std::array<double, 10> kB2k = {1.0 / 6,          -1.0 / 30,        1.0 / 42,
                                          -1.0 / 30,         5.0 / 66,         -691.0 / 2730,
                                          7.0 / 6,           -3617.0 / 510,    43867.0 / 798,
                                          -174611.0 / 330};
  CompensatedSum acc;
  for (int n = kN - 1; n >= 1; --n) acc.add(std::pow(static_cast<double>(n), -s));
  const double N = kN;
  acc.add(std::pow(N, 1.0 - s) / (s - 1.0));
  acc.add(0.5 * std::pow(N, -s));
  // B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
  double rising = s;  // s (s+1) ... (s + 2k - 2)
  double fact = 2.0;  // (2k)!
  double npow = std::pow(N, -s - 1.0);
  for (int k = 1; k <= 10; ++k) {
    acc.add(kB2k[k - 1] / fact * rising * npow);
    rising *= (s + 2 * k - 1) * (s + 2 * k);
    fact *= (2.0 * k + 1) * (2.0 * k + 2);
    npow /= N * N;
  }
  return acc.value();
}

cplx reciprocal_gamma(cplx z) {
  constexpr double kPi = std::numbers::pi;
  if (z.real() < 0.5) {
    // 1/Gamma(z) = Gamma(1 - z) sin(pi z) / pi
    return std::sin(kPi * z) / (kPi * reciprocal_gamma(1.0 - z));
  }
  constexpr std::array<double, 9> kLanczos = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  const cplx x = z - 1.0;
  cplx acc = kLanczos[0];
  for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (x + static_cast<double>(i));
  const cplx t = x + 7.5;
  const cplx log_gamma = 0.5 * std::log(2.0 * kPi) + (x + 0.5) * std::log(t) - t + std::log(acc);
  return std::exp(-log_gamma);
}

Alpha natural_alpha(const FamilySpec& spec) {
  if (spec.id == FamilyId::phi_raw) return Alpha(-1.0);
  return spec.alpha;
}

cplx family_prime_power(const FamilySpec& spec, std::uint64_t p, int nu) {
  if (nu == 0) return 1.0;
  switch (spec.id) {
    case FamilyId::tau_alpha: return tau_alpha_prime_power(spec.alpha.value(), nu);
    case FamilyId::phi_raw: return 1.0 - 1.0 / static_cast<double>(p);
    default: break;
  }
  double log_base = 0.0;
  for (int k = 1; k <= nu; ++k) log_base += log_base_increment(spec.id, p, k);
  return std::exp(family_exponent(spec) * log_base);
}

LocalFactor local_factor_of_family(const FamilySpec& spec, std::uint64_t p, int order) {
  require_prime(p);
  require_order(order);
  return v_factor_unchecked(spec, p, order);
}

LocalFactor b_local_factor(const FamilySpec& spec, const Alpha& a, std::uint64_t p, int order) {
  require_prime(p);
  require_order(order);
  return b_factor_unchecked(spec, a.value(), p, order);
}

EulerProduct euler_product(const FamilySpec& spec, const Alpha& a, double s, std::uint64_t p_max) {
  if (!(s >= 0.75)) throw DomainError("euler_product requires s >= 0.75");
  if (p_max < 1000) throw DomainError("euler_product requires p_max >= 1000");
  const PrimeList primes = build_primes(p_max);
  const std::size_t n = primes.primes.size();
  constexpr std::size_t kBlock = 1 << 14;
  const std::size_t n_blocks = (n + kBlock - 1) / kBlock;
  std::vector<cplx> block_products(n_blocks, 1.0);
  std::vector<double> block_b1(n_blocks, 0.0), block_b2(n_blocks, 0.0);
  const double half = static_cast<double>(p_max) / 2.0;
  parallel_chunks(n_blocks, [&](std::size_t blk) {
    cplx prod = 1.0;
    const std::size_t lo = blk * kBlock;
    const std::size_t hi = std::min(n, lo + kBlock);
    for (std::size_t i = lo; i < hi; ++i) {
      const std::uint64_t p = primes.primes[i];
      const LocalFactor b = b_factor_unchecked(spec, a.value(), p, truncation_order(p, s));
      prod *= b.evaluate(s);
      if (static_cast<double>(p) > half) {
        block_b1[blk] = std::max(block_b1[blk], std::abs(b.coeffs[1]) * static_cast<double>(p));
        block_b2[blk] = std::max(block_b2[blk], std::abs(b.coeffs[2]));
      }
    }
    block_products[blk] = prod;
  });
  cplx value = 1.0;
  double beta1 = 0.0, beta2 = 0.0;
  for (std::size_t blk = 0; blk < n_blocks; ++blk) {
    value *= block_products[blk];
    beta1 = std::max(beta1, block_b1[blk]);
    beta2 = std::max(beta2, block_b2[blk]);
  }
  // sum_{p > P} p^{-sigma} ~ P^{1-sigma} / ((sigma - 1) log P)
  const double P = static_cast<double>(p_max);
  auto prime_tail = [&](double sigma) { return std::pow(P, 1.0 - sigma) / ((sigma - 1.0) * std::log(P)); };
  const double tail = 2.0 * std::abs(value) * (beta1 * prime_tail(s + 1.0) + beta2 * prime_tail(2.0 * s));
  return {value, tail, p_max, n};
}

std::vector<cplx> euler_product_taylor(const FamilySpec& spec, const Alpha& a, int order,
                                       std::uint64_t p_max) {
  if (order < 0 || order > kMaxSeriesOrder) throw DomainError("Taylor order out of range");
  const std::size_t len = static_cast<std::size_t>(order) + 1;
  const PrimeList primes = build_primes(p_max);
  const std::size_t n = primes.primes.size();
  constexpr std::size_t kBlock = 1 << 14;
  const std::size_t n_blocks = (n + kBlock - 1) / kBlock;
  std::vector<Series> blocks(n_blocks);
  parallel_chunks(n_blocks, [&](std::size_t blk) {
    Series prod(len, cplx{});
    prod[0] = 1.0;
    const std::size_t lo = blk * kBlock;
    const std::size_t hi = std::min(n, lo + kBlock);
    for (std::size_t i = lo; i < hi; ++i) {
      const std::uint64_t p = primes.primes[i];
      const double lp = std::log(static_cast<double>(p));
      const LocalFactor b = b_factor_unchecked(spec, a.value(), p, truncation_order(p, 1.0) + 2);
      // [t^k] sum_nu b_nu p^{-nu} exp(-nu t log p)
      Series local(len, cplx{});
      double pnu = 1.0;
      for (int nu = 0; nu <= b.order(); ++nu) {
        double term = 1.0;
        for (std::size_t k = 0; k < len; ++k) {
          local[k] += b.coeffs[nu] * pnu * term;
          term *= -nu * lp / static_cast<double>(k + 1);
        }
        pnu /= static_cast<double>(p);
      }
      prod = series_mul(prod, local, len);
    }
    blocks[blk] = std::move(prod);
  });
  Series total(len, cplx{});
  total[0] = 1.0;
  for (const auto& blk : blocks) total = series_mul(total, blk, len);
  return total;
}

MainTermMethod parse_main_term_method(std::string_view name) {
  if (name == "fit") return MainTermMethod::fit;
  if (name == "selberg_delange") return MainTermMethod::selberg_delange;
  throw UsageError("unknown main-term method '" + std::string(name) + "'");
}

std::string_view to_string(MainTermMethod m) {
  return m == MainTermMethod::fit ? "fit" : "selberg_delange";
}

int log_power_count(const Alpha& a) {
  if (a.re() < 0.0) return -1;
  return static_cast<int>(std::floor(a.re()));
}

cplx MainTermCoeffs::evaluate(double x) const {
  cplx acc = linear * x + constant;
  const double ll = std::log(std::log(x));
  for (std::size_t r = 0; r < logpoly.size(); ++r) {
    acc += logpoly[r] * std::exp((alpha.value() - static_cast<double>(r)) * ll);
  }
  return acc;
}

namespace {

bool is_zero_exponent(cplx e) { return std::abs(e) < 1e-14; }

}  // namespace

MainTermCoeffs fit_main_term_coeffs(std::span<const double> xs, std::span<const cplx> ys,
                                    const Alpha& a) {
  if (xs.size() != ys.size()) throw UsageError("fit: sample arrays differ in length");
  const int R = log_power_count(a);
  bool constant_in_logpoly = false;
  for (int r = 0; r <= R; ++r) {
    if (is_zero_exponent(a.value() - static_cast<double>(r))) constant_in_logpoly = true;
  }
  const int n_basis = 1 + (R + 1) + (constant_in_logpoly ? 0 : 1);
  if (static_cast<int>(xs.size()) < n_basis + 5) {
    throw UsageError("fit: need at least " + std::to_string(n_basis + 5) + " samples");
  }
  const Eigen::Index m = static_cast<Eigen::Index>(xs.size());
  Eigen::MatrixXcd B(m, n_basis);
  Eigen::VectorXcd y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double x = xs[i];
    if (!(x > 1.0)) throw DomainError("fit: sample abscissas must exceed 1");
    const double ll = std::log(std::log(x));
    B(i, 0) = x;
    for (int r = 0; r <= R; ++r) B(i, 1 + r) = std::exp((a.value() - static_cast<double>(r)) * ll);
    if (!constant_in_logpoly) B(i, n_basis - 1) = 1.0;
    y(i) = ys[i];
  }
  Eigen::VectorXd scale(n_basis);
  for (int j = 0; j < n_basis; ++j) {
    scale(j) = B.col(j).norm();
    if (scale(j) == 0.0) scale(j) = 1.0;
    B.col(j) /= scale(j);
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(B, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cond = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
  if (!(cond <= kMaxConditionNumber)) {
    throw IllConditionedError("main-term fit is ill-conditioned", cond);
  }
  Eigen::VectorXcd c = svd.solve(y);
  const Eigen::VectorXcd resid = B * c - y;
  for (int j = 0; j < n_basis; ++j) c(j) /= scale(j);

  MainTermCoeffs out;
  out.alpha = a;
  out.method = MainTermMethod::fit;
  out.linear = c(0);
  for (int r = 0; r <= R; ++r) out.logpoly.push_back(c(1 + r));
  out.constant = constant_in_logpoly ? cplx{} : c(n_basis - 1);
  out.condition_number = cond;
  out.residual_rms = resid.norm() / std::sqrt(static_cast<double>(m));
  return out;
}

cplx linear_coefficient_oracle(const FamilySpec& spec, std::uint64_t p_max, double* tail) {
  const Alpha a = natural_alpha(spec);
  const EulerProduct ep = euler_product(spec, a, 2.0, p_max);
  cplx value = std::exp(a.value() * std::log(zeta_real(2.0))) * ep.value;
  double t = ep.tail * std::abs(std::exp(a.value() * std::log(zeta_real(2.0))));
  if (spec.id == FamilyId::singular) {
    const cplx factor = std::exp(spec.alpha.value() * std::log(twin_prime_constant())) / 2.0;
    value *= factor;
    t *= std::abs(factor);
  }
  if (tail) *tail = t;
  return value;
}

MainTermCoeffs selberg_delange_coeffs(const FamilySpec& spec, const Alpha& a, std::uint64_t p_max) {
  if (a.re() < 0.0) throw DomainError("selberg_delange requires Re alpha >= 0");
  const int R = log_power_count(a);
  if (R > kMaxSeriesOrder) throw DomainError("selberg_delange supports Re alpha < 9");
  const std::size_t len = static_cast<std::size_t>(R) + 1;
  const cplx alpha = a.value();

  // t zeta(1 + t) = 1 + sum_n (-1)^n gamma_n t^{n+1} / n!
  Series tz(len, cplx{});
  tz[0] = 1.0;
  double fact = 1.0;
  for (std::size_t n = 0; n + 1 < len; ++n) {
    if (n > 0) fact *= static_cast<double>(n);
    tz[n + 1] = ((n % 2) ? -1.0 : 1.0) * kStieltjes[n] / fact;
  }
  Series tz_pow = series_log1(tz);
  for (auto& c : tz_pow) c *= alpha;
  tz_pow = series_exp(tz_pow);
  Series zeta0(kZetaAtZero.begin(), kZetaAtZero.begin() + static_cast<std::ptrdiff_t>(len));
  const Series f = euler_product_taylor(spec, a, R, p_max);
  const Series h = series_mul(series_mul(zeta0, tz_pow, len), f, len);

  MainTermCoeffs out;
  out.alpha = a;
  out.method = MainTermMethod::selberg_delange;
  const EulerProduct ep = euler_product(spec, a, 2.0, p_max);
  out.linear = std::exp(alpha * std::log(zeta_real(2.0))) * ep.value;
  const double tail = ep.tail;
  for (std::size_t r = 0; r < len; ++r) {
    out.logpoly.push_back(h[r] * reciprocal_gamma(alpha + 1.0 - static_cast<double>(r)));
  }
  if (spec.id == FamilyId::singular) {
    // S_2^a sum_{m <= x/2} s(m)^a: rescale and re-expand (log(x/2))^{a-r} in powers of log x.
    const cplx s2a = std::exp(spec.alpha.value() * std::log(twin_prime_constant()));
    out.linear *= s2a / 2.0;
    std::vector<cplx> expanded(len, cplx{});
    const double l2 = std::log(2.0);
    for (std::size_t r = 0; r < len; ++r) {
      cplx binom = 1.0;
      const cplx beta = alpha - static_cast<double>(r);
      double l2pow = 1.0;
      for (std::size_t l = 0; r + l < len; ++l) {
        const double sign = (l % 2) ? -1.0 : 1.0;
        expanded[r + l] += s2a * out.logpoly[r] * sign * binom * l2pow;
        binom *= (beta - static_cast<double>(l)) / static_cast<double>(l + 1);
        l2pow *= l2;
      }
    }
    out.logpoly = std::move(expanded);
  }
  out.constant = 0.0;
  out.tail = tail;
  return out;
}

MainTermCoeffs main_term_coeffs(const FamilySpec& spec, const Alpha& a, MainTermMethod method,
                                std::span<const double> xs, std::span<const cplx> ys) {
  if (method == MainTermMethod::selberg_delange) return selberg_delange_coeffs(spec, a);
  MainTermCoeffs out = fit_main_term_coeffs(xs, ys, a);
  double tail = 0.0;
  (void)linear_coefficient_oracle(spec, kDefaultEulerCutoff, &tail);
  out.tail = tail;
  return out;
}

}  // namespace ntlab
