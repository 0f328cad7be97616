#include "ntlab/error_lab.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "ntlab/errors.hpp"
#include "ntlab/parallel.hpp"

namespace ntlab {

Envelopes envelopes_at(double x, double a) {
  const double lx = std::log(x);
  const double llx = std::log(lx);
  return {x * lx, x * std::pow(lx, 2.0 / 3.0) * std::pow(llx, 4.0 / 3.0),
          x * std::pow(lx, 2.0 / 3.0) * std::pow(llx, 1.0 / 3.0),
          std::pow(lx, 2.0 * a / 3.0) * std::pow(llx, a / 3.0)};
}

namespace {

std::vector<std::pair<double, cplx>> prefix_sums(const FamilySpec& spec, std::span<const double> checkpoints,
                                                 const SpfTable& table,
                                                 const std::function<cplx(std::uint64_t)>& value) {
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (!(checkpoints[i] >= 1.0)) throw DomainError("checkpoints must be >= 1");
    if (i > 0 && checkpoints[i] < checkpoints[i - 1]) throw UsageError("checkpoints must be ascending");
  }
  if (checkpoints.empty()) return {};
  const auto top = static_cast<std::uint64_t>(std::floor(checkpoints.back()));
  if (top > table.limit()) throw DomainError("checkpoint exceeds the sieve limit");
  if (spec.id == FamilyId::singular) twin_prime_constant();

  // Fixed chunks; each records its total and the partial sums at checkpoints inside it.
  constexpr std::uint64_t kChunk = 1 << 16;
  const std::size_t n_chunks = (top + kChunk - 1) / kChunk;
  std::vector<cplx> totals(n_chunks);
  std::vector<std::vector<std::pair<std::size_t, cplx>>> partials(n_chunks);
  std::vector<std::uint64_t> limits;
  for (double x : checkpoints) limits.push_back(static_cast<std::uint64_t>(std::floor(x)));
  const bool even_only = spec.id == FamilyId::singular;

  parallel_chunks(n_chunks, [&](std::size_t c) {
    const std::uint64_t lo = 1 + c * kChunk;
    const std::uint64_t hi = std::min(top, lo + kChunk - 1);
    auto k = static_cast<std::size_t>(std::lower_bound(limits.begin(), limits.end(), lo) - limits.begin());
    CompensatedComplexSum acc;
    for (std::uint64_t n = lo; n <= hi; ++n) {
      if (!even_only || n % 2 == 0) acc.add(value(n));
      for (; k < limits.size() && limits[k] == n; ++k) partials[c].emplace_back(k, acc.value());
    }
    totals[c] = acc.value();
  });

  std::vector<std::pair<double, cplx>> out(checkpoints.size());
  for (std::size_t k = 0; k < checkpoints.size(); ++k) out[k] = {checkpoints[k], 0.0};
  CompensatedComplexSum before;
  for (std::size_t c = 0; c < n_chunks; ++c) {
    for (const auto& [k, partial] : partials[c]) {
      CompensatedComplexSum s = before;
      s.add(partial);
      out[k].second = s.value();
    }
    before.add(totals[c]);
  }
  return out;
}

}  // namespace

std::vector<std::pair<double, cplx>> summatory_exact(const FamilySpec& spec, std::span<const double> checkpoints,
                                                     const SpfTable& table) {
  return prefix_sums(spec, checkpoints, table, [&](std::uint64_t n) { return family_value(spec, n, table); });
}

std::vector<std::pair<double, cplx>> summatory_model(const FamilySpec& spec, std::span<const double> checkpoints,
                                                     const SpfTable& table) {
  if (spec.id == FamilyId::phi_raw) {
    const FamilySpec ratio{FamilyId::phi_ratio, Alpha(-1.0)};
    return prefix_sums(spec, checkpoints, table, [&](std::uint64_t n) { return family_value(ratio, n, table); });
  }
  return summatory_exact(spec, checkpoints, table);
}

std::vector<double> profile_grid(double x_max, int count) {
  if (!(x_max > 1e3)) throw DomainError("profile grid requires x_max > 10^3");
  return geometric_grid(1e3, x_max, count);
}

double walfisz_main_term(double x) { return 3.0 * x * x / (std::numbers::pi * std::numbers::pi); }

ErrorProfile error_profile_from_samples(const FamilySpec& spec, std::span<const std::pair<double, cplx>> exact,
                                        const MainTermCoeffs* coeffs) {
  ErrorProfile prof;
  prof.family = spec;
  const double a_mod = std::abs(natural_alpha(spec).value());
  std::vector<double> xs, liu;
  for (const auto& [x, s] : exact) {
    SummatorySample smp;
    smp.x = x;
    smp.exact = s;
    if (spec.id == FamilyId::phi_raw) {
      smp.main = walfisz_main_term(std::floor(x));
    } else {
      if (!coeffs) throw UsageError("error_profile needs main-term coefficients for this family");
      smp.main = coeffs->evaluate(x);
    }
    smp.error = smp.exact - smp.main;
    prof.samples.push_back(smp);
    prof.envelopes.push_back(envelopes_at(x, a_mod));
    const std::size_t i = prof.samples.size() - 1;
    prof.max_mertens_ratio = std::max(prof.max_mertens_ratio, prof.ratio(i, &Envelopes::mertens));
    prof.max_liu_ratio = std::max(prof.max_liu_ratio, prof.ratio(i, &Envelopes::liu));
    xs.push_back(x);
    liu.push_back(prof.ratio(i, &Envelopes::liu));
  }
  prof.liu_slope = loglog_slope(xs, liu);
  return prof;
}

ErrorProfile error_profile(const FamilySpec& spec, double x_max, const MainTermCoeffs& coeffs,
                           const SpfTable& table) {
  const auto grid = profile_grid(x_max);
  const auto exact = summatory_exact(spec, grid, table);
  return error_profile_from_samples(spec, exact, &coeffs);
}

MainTermCoeffs fit_main_term(std::span<const std::pair<double, cplx>> samples, const Alpha& a) {
  std::vector<double> xs;
  std::vector<cplx> ys;
  for (const auto& [x, y] : samples) {
    xs.push_back(x);
    ys.push_back(y);
  }
  return fit_main_term_coeffs(xs, ys, a);
}

ErrorProfile walfisz_phi_experiment(double x_max, const SpfTable& table) {
  const FamilySpec spec{FamilyId::phi_raw, Alpha(1.0)};
  const auto exact = summatory_exact(spec, profile_grid(x_max), table);
  return error_profile_from_samples(spec, exact, nullptr);
}

double mertens_ratio_sup(const FunctionTable& phi, std::uint64_t lo, std::uint64_t hi) {
  if (lo < 2 || hi < lo) throw DomainError("mertens_ratio_sup requires 2 <= lo <= hi");
  if (hi > phi.limit()) throw DomainError("mertens_ratio_sup: table does not cover hi");
  // Partial sums of phi are integers below 2^53 in this range, so double sums are exact.
  double s = 0.0;
  double best = 0.0;
  for (std::uint64_t n = 1; n <= hi; ++n) {
    s += phi[n].real();
    if (n < lo) continue;
    const double x = static_cast<double>(n);
    best = std::max(best, std::abs(s - walfisz_main_term(x)) / (x * std::log(x)));
  }
  return best;
}

}  // namespace ntlab
