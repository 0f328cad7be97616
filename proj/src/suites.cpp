#include "ntlab/suites.hpp"

#include <algorithm>
#include <cmath>

#include "ntlab/errors.hpp"
#include "ntlab/psi_tools.hpp"
#include "ntlab/verify_lab.hpp"

namespace ntlab {

bool SuiteResult::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const SuiteCheck& c) { return c.pass; });
}

CsvTable SuiteResult::csv() const {
  CsvTable t({"check", "statistic", "threshold", "pass"});
  for (const auto& c : checks) {
    t.add_row({c.name, format_double(c.statistic), format_double(c.threshold), c.pass ? "1" : "0"});
  }
  return t;
}

CsvTable SuiteResult::failures_csv() const {
  CsvTable t({"check", "statistic", "threshold", "pass"});
  for (const auto& c : checks) {
    if (!c.pass) t.add_row({c.name, format_double(c.statistic), format_double(c.threshold), "0"});
  }
  return t;
}

std::vector<SumWindow> kusmin_windows(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<SumWindow> out;
  while (static_cast<int>(out.size()) < count) {
    const double P = std::pow(10.0, 1.0 + 4.0 * uniform01(rng));
    const double P1 = P * (1.05 + 0.95 * uniform01(rng));
    const double Q = std::min(1e10, P * P * (0.01 + 0.98 * uniform01(rng)));
    const SumWindow w{P, std::min(P1, 2.0 * P), std::max(Q, 4.0)};
    if (kusmin_landau_check(w)) out.push_back(w);
  }
  return out;
}

std::vector<SumWindow> partition_windows(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<SumWindow> out;
  while (static_cast<int>(out.size()) < count) {
    const double P = std::pow(10.0, 3.0 + 2.0 * uniform01(rng)) / 2.0;
    const double P1 = P * (1.1 + 0.9 * uniform01(rng));
    const double Q = P * std::pow(10.0, 4.0 * uniform01(rng));
    const SumWindow w{P, std::min(P1, 2.0 * P), Q};
    try {
      smooth_rough_threshold(w);
      out.push_back(w);
    } catch (const DomainError&) {
    }
  }
  return out;
}

namespace {

SuiteCheck at_most(std::string name, double stat, double threshold) {
  return {std::move(name), stat, threshold, stat <= threshold};
}

double relative(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

SuiteResult suite_vaughan(const SuiteOptions&) {
  SuiteResult r{"vaughan", {}};
  const std::uint64_t n_top = 20000;
  const SpfTable spf = build_spf(n_top);
  const FunctionTable mu = sieve_classical(Classical::mu, spf);
  const FunctionTable lambda = sieve_classical(Classical::lambda, spf);
  for (double z : {10.0, 50.0}) {
    const VaughanTerms t = vaughan_terms(10000, z, mu, lambda);
    double worst = 0.0;
    for (std::uint64_t n = static_cast<std::uint64_t>(z) + 1; n <= 10000; ++n) {
      const double ln = lambda[n].real();
      worst = std::max(worst, std::abs(t.combined(n) - ln) / std::max(1.0, ln));
    }
    r.checks.push_back(at_most("identity_z" + format_double(z), worst, 1e-9));
  }
  for (double P : {1e3, 1e4}) {
    for (double Q : {1e6, 1e9}) {
      const VaughanSplit s = vaughan_sum_split({P, 2 * P, Q}, mu, lambda);
      const double direct = std::abs(s.direct);
      const double err = std::abs(s.reconstructed() - s.direct);
      const double stat = direct > 1e-6 ? err / direct : err;
      r.checks.push_back(at_most("split_P" + format_double(P) + "_Q" + format_double(Q), stat,
                                 direct > 1e-6 ? 1e-8 : 1e-10));
    }
  }
  const VaughanCoefficients c = vaughan_coefficients(10000, 10.0, mu, lambda);
  const FunctionTable tau = sieve_classical(Classical::tau, spf);
  double c2_excess = 0.0, c3_excess = 0.0;
  for (std::uint64_t u = 1; u <= 10000; ++u) {
    c2_excess = std::max(c2_excess, std::abs(c.c2[u]) - std::log(static_cast<double>(u)));
    c3_excess = std::max(c3_excess, std::abs(c.c3[u]) - tau[u].real());
  }
  r.checks.push_back(at_most("c2_le_log", c2_excess, 1e-12));
  r.checks.push_back(at_most("c3_le_tau", c3_excess, 0.0));
  return r;
}

SuiteResult suite_vaaler(const SuiteOptions& opt) {
  SuiteResult r{"vaaler", {}};
  for (int N : {5, 10, 50}) {
    const VaalerApprox v = vaaler_build(N);
    double coeff = 0.0;
    for (int h = -N; h <= N; ++h) {
      if (h != 0) coeff = std::max(coeff, std::abs(v.coeff(h)) * 2.0 * std::numbers::pi * std::abs(h));
    }
    double excess = -INFINITY, imag = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const double x = i / 10000.0;
      const cplx value = v.evaluate_complex(x);
      excess = std::max(excess, std::abs(psi(x) - value.real()) - v.majorant(x));
      imag = std::max(imag, std::abs(value.imag()));
    }
    const std::string tag = "_N" + std::to_string(N);
    r.checks.push_back(at_most("coefficient_bound" + tag, coeff, 1.0));
    r.checks.push_back(at_most("majorant_excess" + tag, excess, 1e-12));
    r.checks.push_back(at_most("imaginary_part" + tag, imag, 1e-12));
  }
  std::mt19937_64 rng(opt.seed);
  const SpfTable spf = build_spf(1 << 14);
  const FunctionTable mu = sieve_classical(Classical::mu, spf);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double P = 10.0 + 4000.0 * uniform01(rng);
    const SumWindow w{P, P * (1.1 + 0.9 * uniform01(rng)), 4.0 + 1e6 * uniform01(rng)};
    const double H = 1.0 + 30.0 * uniform01(rng);
    worst = std::max(worst, vaaler_transfer_check(mu, w.Q, w, H).ratio);
  }
  r.checks.push_back(at_most("transfer_ratio", worst, kVaalerTransferConstant));
  return r;
}

SuiteResult suite_kusmin(const SuiteOptions& opt) {
  SuiteResult r{"kusmin", {}};
  double worst = 0.0;
  for (const SumWindow& w : kusmin_windows(opt.seed, 100)) {
    const ExpSumRecord rec = exp_sum_direct(w);
    worst = std::max(worst, std::abs(rec.value) / rec.bounds.at("kusmin_landau"));
  }
  r.checks.push_back(at_most("max_abs_over_bound", worst, 1.0));
  return r;
}

SuiteResult suite_conditions(const SuiteOptions& opt) {
  SuiteResult r{"conditions", {}};
  std::vector<Alpha> alphas = opt.alphas;
  if (alphas.empty()) alphas = {Alpha(1.0), Alpha(2.0), Alpha(-1.0), Alpha(0.5), Alpha(0.0, 1.0)};
  const std::uint64_t x_max = std::max<std::uint64_t>(opt.limit, 2000);
  const SpfTable spf = build_spf(x_max + 1000);
  const PrimeList primes = primes_from(spf);
  const auto grid = condition_grid(static_cast<double>(x_max));
  for (const Alpha& a : alphas) {
    const FunctionTable v = family_table({FamilyId::tau_alpha, a}, spf.limit(), spf);
    const std::string tag = "_alpha" + format_alpha(a);
    const std::vector<ConditionReport> reports = {check_V1(v, primes, grid), check_V2(v, grid),
                                                  check_V3(v, primes, grid),
                                                  check_V_kappa(v, std::abs(a.value()), grid)};
    for (const auto& rep : reports) {
      r.checks.push_back({std::string(to_string(rep.condition)) + "_slope" + tag, rep.slope, kBoundedSlope,
                          rep.bounded});
    }
  }
  return r;
}

SuiteResult suite_tau(const SuiteOptions& opt) {
  SuiteResult r{"tau", {}};
  const std::uint64_t n_exact = std::min<std::uint64_t>(100000, std::max<std::uint64_t>(opt.limit, 10000));
  const SpfTable spf = build_spf(std::max<std::uint64_t>(n_exact, 1'000'000));
  const FunctionTable mu = sieve_classical(Classical::mu, spf);
  const FunctionTable tau = sieve_classical(Classical::tau, spf);
  std::uint64_t mismatches = 0;
  for (std::uint64_t n = 1; n <= n_exact; ++n) {
    mismatches += tau_alpha(n, Alpha(-1.0), spf) != mu[n];
    mismatches += tau_alpha(n, Alpha(2.0), spf) != tau[n];
  }
  r.checks.push_back(at_most("tau_minus1_mu_tau2_tau_mismatches", static_cast<double>(mismatches), 0.0));

  const std::uint64_t n_conv = 10000;
  const std::vector<Alpha> exponents = {Alpha(1.0), Alpha(-1.0), Alpha(0.5), Alpha(0.0, 1.0)};
  std::vector<std::pair<Alpha, Alpha>> pairs;
  for (const Alpha& a : exponents) {
    for (const Alpha& b : exponents) pairs.emplace_back(a, b);
  }
  for (const auto& [a, b] : pairs) {
    const FunctionTable ta = family_table({FamilyId::tau_alpha, a}, n_conv, spf);
    const FunctionTable tb = family_table({FamilyId::tau_alpha, b}, n_conv, spf);
    const FunctionTable conv = dirichlet_convolve(ta, tb);
    const Alpha sum(a.value() + b.value());
    double worst = 0.0;
    for (std::uint64_t n = 1; n <= n_conv; ++n) worst = std::max(worst, relative(conv[n], tau_alpha(n, sum, spf)));
    r.checks.push_back(at_most("convolution_" + format_alpha(a) + "_" + format_alpha(b), worst, 1e-9));
  }
  for (const Alpha& a : {Alpha(1.0), Alpha(-1.0), Alpha(2.0), Alpha(0.5), Alpha(0.0, 1.0)}) {
    CompensatedComplexSum acc;
    for (std::uint64_t n = 1'000'000; n >= 1; --n) {
      const double nd = static_cast<double>(n);
      acc.add(tau_alpha(n, a, spf) / (nd * nd));
    }
    const cplx target = real_pow(std::numbers::pi * std::numbers::pi / 6.0, a.value());
    r.checks.push_back(at_most("dirichlet_series_" + format_alpha(a), std::abs(acc.value() - target), 1e-3));
  }
  return r;
}

SuiteResult suite_partition(const SuiteOptions& opt) {
  SuiteResult r{"partition", {}};
  const SpfTable spf = build_spf(200000);
  const FunctionTable mu = sieve_classical(Classical::mu, spf);
  const FunctionTable ones = tabulate("one", spf.limit(), [](std::uint64_t) { return cplx(1.0); });
  double worst_split = 0.0, worst_sigma1 = 0.0, worst_tuple = 0.0;
  std::uint64_t count_gap = 0;
  for (const SumWindow& w : partition_windows(opt.seed, 20)) {
    for (const FunctionTable* v : {&mu, &ones}) {
      const ExpSumRecord direct = exp_sum_direct(w, v);
      const SmoothRoughSplit s = smooth_rough_split(w, *v, spf);
      const Sigma1Reassembly re = sigma1_reassembly(w, *v, spf);
      const double scale = std::max(1e-300, std::abs(direct.value));
      worst_split = std::max(worst_split, std::abs(s.sigma1 + s.sigma2 - direct.value) / scale);
      worst_sigma1 = std::max(worst_sigma1, std::abs(re.total() - s.sigma1) / scale);
      count_gap += (s.n_sigma1 + s.n_sigma2 != direct.n_terms);
      for (int nu = 1; nu <= 3; ++nu) {
        const SquarefreeRoughSum sq = squarefree_rough_sum(w, s.z, nu, *v, spf);
        worst_tuple = std::max(worst_tuple, relative(sq.tuple_sum, sq.direct));
        const auto& d = sq.diagnostics;
        std::uint64_t cells = d.type2;
        for (auto c : d.type1) cells += c;
        std::uint64_t cells2 = 0;
        for (auto c : d.type2_r) cells2 += c;
        count_gap += (cells != d.P_size) + (cells2 != d.type2) + (d.Q_size != sq.n_terms * std::tgamma(nu + 1));
      }
    }
  }
  r.checks.push_back(at_most("smooth_rough_reconstruction", worst_split, 1e-9));
  r.checks.push_back(at_most("sigma1_reassembly", worst_sigma1, 1e-9));
  r.checks.push_back(at_most("squarefree_tuple_path", worst_tuple, 1e-9));
  r.checks.push_back(at_most("partition_count_mismatches", static_cast<double>(count_gap), 0.0));
  return r;
}

}  // namespace

SuiteResult run_suite(std::string_view name, const SuiteOptions& options) {
  if (name == "vaughan") return suite_vaughan(options);
  if (name == "vaaler") return suite_vaaler(options);
  if (name == "kusmin") return suite_kusmin(options);
  if (name == "conditions") return suite_conditions(options);
  if (name == "tau") return suite_tau(options);
  if (name == "partition") return suite_partition(options);
  throw UsageError("unknown suite '" + std::string(name) + "'");
}

}  // namespace ntlab
