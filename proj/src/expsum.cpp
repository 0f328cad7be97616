#include "ntlab/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "ntlab/errors.hpp"
#include "ntlab/parallel.hpp"

namespace ntlab {

namespace {

constexpr std::uint64_t kChunk = 1 << 14;

std::uint64_t floor_u64(double x) { return static_cast<std::uint64_t>(std::floor(x)); }

void require_cover(const FunctionTable& t, std::uint64_t n, const char* what) {
  if (t.limit() < n) {
    throw DomainError(std::string(what) + " table does not cover " + std::to_string(n));
  }
}

void require_cover(const SpfTable& t, std::uint64_t n) {
  if (t.limit() < n) throw DomainError("sieve does not cover " + std::to_string(n));
}

// Chunked deterministic sum of term(n) over [lo, hi].
cplx chunked_sum(std::uint64_t lo, std::uint64_t hi, const std::function<cplx(std::uint64_t)>& term) {
  if (hi < lo) return {};
  const std::uint64_t count = hi - lo + 1;
  const std::size_t n_chunks = (count + kChunk - 1) / kChunk;
  std::vector<cplx> parts(n_chunks);
  parallel_chunks(n_chunks, [&](std::size_t c) {
    CompensatedComplexSum acc;
    const std::uint64_t a = lo + c * kChunk;
    const std::uint64_t b = std::min(hi, a + kChunk - 1);
    for (std::uint64_t n = a; n <= b; ++n) acc.add(term(n));
    parts[c] = acc.value();
  });
  return pairwise_sum(parts);
}

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

}  // namespace

void SumWindow::validate() const {
  if (!(std::isfinite(P) && std::isfinite(P_prime) && std::isfinite(Q))) {
    throw DomainError("window parameters must be finite");
  }
  if (!(P >= 4.0)) throw DomainError("window requires P >= 4");
  if (!(P < P_prime && P_prime <= 2.0 * P)) throw DomainError("window requires P < P' <= 2P");
  if (!(Q >= 4.0)) throw DomainError("window requires Q >= 4");
}

std::optional<KusminLandau> kusmin_landau_check(const SumWindow& w) {
  w.validate();
  const double hi = w.Q / (w.P * w.P);
  const double lo = w.Q / (w.P_prime * w.P_prime);
  if (!(hi < 1.0)) return std::nullopt;
  const double lambda = std::min(lo, 1.0 - hi);
  if (!(lambda > 0.0)) return std::nullopt;
  return KusminLandau{lambda, 1.0 / lambda + 1.0};
}

double walfisz_envelope(const SumWindow& w, double gamma) {
  w.validate();
  if (!(gamma > 0.0)) throw DomainError("walfisz_envelope requires gamma > 0");
  const double lp = std::log(w.P);
  const double lq = std::log(w.Q);
  return w.P * std::exp(-gamma * lp * lp * lp / (lq * lq)) + w.P * w.P / w.Q;
}

ExpSumRecord exp_sum_direct(const SumWindow& w, const FunctionTable* coeff) {
  w.validate();
  const std::uint64_t lo = w.first();
  const std::uint64_t hi = w.last();
  if (coeff) require_cover(*coeff, hi, "coefficient");
  ExpSumRecord rec;
  rec.window = w;
  rec.n_terms = w.size();
  if (coeff) {
    rec.value = chunked_sum(lo, hi, [&](std::uint64_t n) {
      const cplx c = (*coeff)[n];
      return c == cplx{} ? cplx{} : c * phase_q_over_n(w.Q, n);
    });
    CompensatedSum abs_sum;
    for (std::uint64_t n = lo; n <= hi; ++n) abs_sum.add(std::abs((*coeff)[n]));
    rec.bounds["trivial"] = abs_sum.value();
  } else {
    rec.value = chunked_sum(lo, hi, [&](std::uint64_t n) { return phase_q_over_n(w.Q, n); });
    rec.bounds["trivial"] = static_cast<double>(rec.n_terms);
    if (auto kl = kusmin_landau_check(w)) {
      rec.bounds["kusmin_landau"] = kl->bound;
      rec.regime_flags.insert("kusmin_landau");
    }
  }
  rec.bounds["walfisz_envelope"] = walfisz_envelope(w, 1.0);
  if (w.P > 4096.0 && w.P <= std::pow(w.Q, 2.0 / 3.0) / 2.0) rec.regime_flags.insert("karatsuba");
  return rec;
}

KaratsubaParams karatsuba_params(double P, double Q) {
  if (!(P > 4096.0)) throw RegimeError("karatsuba_params requires P > 2^12");
  if (!(Q >= 4.0)) throw RegimeError("karatsuba_params requires Q >= 4");
  if (!(P <= std::pow(Q, 2.0 / 3.0) / 2.0)) throw RegimeError("karatsuba_params requires P <= Q^(2/3)/2");
  const double lp = std::log(P);
  const double lq = std::log(Q);
  KaratsubaParams out;
  out.k = static_cast<int>(std::floor(26.0 * lq / lp + 1e-9));
  const double L = (2.0 / 3.0) * lq / lp;
  out.j_lo = 2.0 * L;
  out.j_hi = 4.0 * L;
  // Endpoints within 1e-9 of an integer are snapped to it.
  auto snapped_floor = [](double t) { return static_cast<int>(std::floor(t + 1e-9)); };
  for (int j = snapped_floor(out.j_lo) + 1; j <= snapped_floor(out.j_hi); ++j) {
    out.j_values.push_back(j);
  }
  out.r = static_cast<int>(out.j_values.size());
  out.check_c = 0 < out.c0 && out.c0 < 1 && 0 < out.c3 && out.c3 <= out.c2 && out.c2 < out.c1 && out.c1 < 1;
  out.check_rj = out.r >= 1 && out.c0 * out.k <= out.r && out.r <= out.k &&
                 out.j_values.front() >= 1 && out.j_values.back() <= out.k;

  // |f^{(j)}(x) / j!| = Q / x^{j+1}, decreasing in x; compare logarithms.
  auto log_deriv = [&](int j, double x) { return lq - (j + 1) * std::log(x); };
  const int k1 = out.k + 1;
  out.check_A = log_deriv(k1, P) <= -out.c1 * k1 * lp;
  out.check_B = !out.j_values.empty();
  for (int j : out.j_values) {
    const bool upper = log_deriv(j, P) <= -out.c3 * j * lp;
    const bool lower = log_deriv(j, 2.0 * P) >= -out.c2 * j * lp;
    out.check_B = out.check_B && upper && lower;
  }
  return out;
}

VaughanCoefficients vaughan_coefficients(std::uint64_t u_max, double z, const FunctionTable& mu,
                                         const FunctionTable& lambda) {
  if (!(z >= 2.0)) throw DomainError("Vaughan identity requires z >= 2");
  const std::uint64_t zi = floor_u64(z);
  require_cover(mu, std::max(u_max, zi), "mu");
  require_cover(lambda, std::min(u_max, zi), "Lambda");
  VaughanCoefficients out;
  out.z = z;
  out.c2.assign(u_max + 1, 0.0);
  out.c3.assign(u_max + 1, 0.0);
  for (std::uint64_t d = 1; d <= zi && d <= u_max; ++d) {
    const double md = mu[d].real();
    if (md == 0.0) continue;
    for (std::uint64_t m = 1; m <= zi && d * m <= u_max; ++m) out.c2[d * m] += md * lambda[m].real();
  }
  for (std::uint64_t d = zi + 1; d <= u_max; ++d) {
    const double md = mu[d].real();
    if (md == 0.0) continue;
    for (std::uint64_t u = d; u <= u_max; u += d) out.c3[u] += md;
  }
  return out;
}

VaughanTerms vaughan_terms(std::uint64_t n_max, double z, const FunctionTable& mu,
                           const FunctionTable& lambda) {
  if (!(z >= 2.0)) throw DomainError("Vaughan identity requires z >= 2");
  require_cover(mu, n_max, "mu");
  require_cover(lambda, n_max, "Lambda");
  const std::uint64_t zi = floor_u64(z);
  const VaughanCoefficients c = vaughan_coefficients(n_max, z, mu, lambda);
  VaughanTerms t;
  t.z = z;
  t.n_max = n_max;
  t.a1.assign(n_max + 1, 0.0);
  t.a2.assign(n_max + 1, 0.0);
  t.a3.assign(n_max + 1, 0.0);
  for (std::uint64_t u = 1; u <= zi && u <= n_max; ++u) {
    const double mu_u = mu[u].real();
    if (mu_u == 0.0) continue;
    for (std::uint64_t v = 1; u * v <= n_max; ++v) t.a1[u * v] += mu_u * std::log(static_cast<double>(v));
  }
  for (std::uint64_t u = 1; u <= n_max && u <= zi * zi; ++u) {
    if (c.c2[u] == 0.0) continue;
    for (std::uint64_t n = u; n <= n_max; n += u) t.a2[n] += c.c2[u];
  }
  for (std::uint64_t u = zi + 1; u * (zi + 1) <= n_max; ++u) {
    if (c.c3[u] == 0.0) continue;
    for (std::uint64_t v = zi + 1; u * v <= n_max; ++v) {
      const double lv = lambda[v].real();
      if (lv != 0.0) t.a3[u * v] += c.c3[u] * lv;
    }
  }
  return t;
}

namespace {

double default_vaughan_z(const SumWindow& w, std::optional<double> z) {
  const double zz = z.value_or(std::cbrt(w.P));
  if (!(zz >= 2.0)) throw DomainError("Vaughan identity requires z >= 2");
  if (!(zz < static_cast<double>(w.first()))) throw DomainError("Vaughan split requires z < n");
  return zz;
}

}  // namespace

VaughanSplit vaughan_sum_split(const SumWindow& w, const FunctionTable& mu, const FunctionTable& lambda,
                               std::optional<double> z_opt) {
  w.validate();
  const double z = default_vaughan_z(w, z_opt);
  const std::uint64_t a = w.first();
  const std::uint64_t b = w.last();
  require_cover(mu, b, "mu");
  require_cover(lambda, b, "Lambda");
  const std::uint64_t zi = floor_u64(z);
  const VaughanCoefficients c = vaughan_coefficients(b / (zi + 1) + 1, z, mu, lambda);
  VaughanSplit out;
  if (b < a) return out;

  auto phase = [&](std::uint64_t n) { return phase_q_over_n(w.Q, n); };
  CompensatedComplexSum s1, s2, s3, direct;
  for (std::uint64_t u = 1; u <= zi; ++u) {
    const double mu_u = mu[u].real();
    if (mu_u == 0.0) continue;
    for (std::uint64_t v = ceil_div(a, u); v <= b / u; ++v) {
      s1.add(mu_u * std::log(static_cast<double>(v)) * phase(u * v));
    }
  }
  for (std::uint64_t u = 1; u <= zi * zi && u < c.c2.size(); ++u) {
    if (c.c2[u] == 0.0) continue;
    for (std::uint64_t v = ceil_div(a, u); v <= b / u; ++v) s2.add(c.c2[u] * phase(u * v));
  }
  for (std::uint64_t u = zi + 1; u * (zi + 1) <= b; ++u) {
    if (c.c3[u] == 0.0) continue;
    for (std::uint64_t v = std::max(zi + 1, ceil_div(a, u)); v <= b / u; ++v) {
      const double lv = lambda[v].real();
      if (lv != 0.0) s3.add(c.c3[u] * lv * phase(u * v));
    }
  }
  for (std::uint64_t n = a; n <= b; ++n) {
    const double ln = lambda[n].real();
    if (ln != 0.0) direct.add(ln * phase(n));
  }
  out.S1 = s1.value();
  out.S2 = s2.value();
  out.S3 = s3.value();
  out.direct = direct.value();
  return out;
}

BilinearResult type2_bilinear(const FunctionTable& alpha, const FunctionTable& beta, const SumWindow& w,
                              double U, double U_prime, double V, double V_prime, double A) {
  w.validate();
  if (!(U > 0.0 && U < U_prime && U_prime <= 2.0 * U)) throw DomainError("type II requires U < U' <= 2U");
  if (!(V > 0.0 && V < V_prime && V_prime <= 2.0 * V)) throw DomainError("type II requires V < V' <= 2V");
  const std::uint64_t u_lo = floor_u64(U) + 1, u_hi = floor_u64(U_prime);
  const std::uint64_t v_lo = floor_u64(V) + 1, v_hi = floor_u64(V_prime);
  require_cover(alpha, u_hi, "alpha");
  require_cover(beta, v_hi, "beta");
  const std::uint64_t a = w.first();
  const std::uint64_t b = w.last();

  BilinearResult out;
  CompensatedSum na, nb;
  for (std::uint64_t u = u_lo; u <= u_hi; ++u) na.add(std::norm(alpha[u]));
  for (std::uint64_t v = v_lo; v <= v_hi; ++v) nb.add(std::norm(beta[v]));
  out.norm_a = std::sqrt(na.value());
  out.norm_b = std::sqrt(nb.value());

  CompensatedComplexSum acc;
  for (std::uint64_t u = u_lo; u <= u_hi; ++u) {
    const cplx au = alpha[u];
    const std::uint64_t lo = std::max(v_lo, ceil_div(a, u));
    const std::uint64_t hi = std::min(v_hi, b / u);
    for (std::uint64_t v = lo; v <= hi; ++v) {
      ++out.n_terms;
      if (au == cplx{}) continue;
      const cplx bv = beta[v];
      if (bv != cplx{}) acc.add(au * bv * phase_q_over_n(w.Q, u * v));
    }
  }
  out.value = acc.value();
  const double lq = std::log(w.Q);
  out.comparison = (std::sqrt(w.P) * std::pow(lq, -A) + w.P / std::sqrt(w.Q)) * out.norm_a * out.norm_b *
                   std::sqrt(lq);
  return out;
}

std::vector<DyadicCell> vaughan_s3_cells(const SumWindow& w, const FunctionTable& mu,
                                         const FunctionTable& lambda, std::optional<double> z_opt) {
  w.validate();
  const double z = default_vaughan_z(w, z_opt);
  const std::uint64_t b = w.last();
  const std::uint64_t zi = floor_u64(z);
  const std::uint64_t u_max = b / (zi + 1);
  const VaughanCoefficients c = vaughan_coefficients(u_max + 1, z, mu, lambda);
  std::vector<cplx> c3(c.c3.begin() + 1, c.c3.end());
  const FunctionTable c3_table("c3", std::move(c3));
  require_cover(lambda, b, "Lambda");

  // Cell [2^j, 2^{j+1}) as the real interval (max(z, 2^j - 1/2), 2^{j+1} - 1].
  auto cells_above = [&](std::uint64_t top) {
    std::vector<std::pair<double, double>> cells;
    for (int j = 0; (std::uint64_t{1} << j) <= top; ++j) {
      const double lo_edge = static_cast<double>(std::uint64_t{1} << j) - 0.5;
      const double hi_edge = static_cast<double>((std::uint64_t{1} << (j + 1)) - 1);
      if (hi_edge <= z) continue;
      const double lo = std::max(z, lo_edge);
      const double hi = std::min(hi_edge, static_cast<double>(top));
      if (lo < hi) cells.emplace_back(lo, hi);
    }
    return cells;
  };
  std::vector<DyadicCell> out;
  for (const auto& [U, U1] : cells_above(u_max)) {
    for (const auto& [V, V1] : cells_above(b / (zi + 1))) {
      if (U * V >= static_cast<double>(b) || U1 * V1 < static_cast<double>(w.first())) continue;
      const BilinearResult r = type2_bilinear(c3_table, lambda, w, U, U1, V, V1);
      out.push_back({U, U1, V, V1, r.value});
    }
  }
  return out;
}

PrimeExpSum exp_sum_primes(const SumWindow& w, PrimeWeight weight, const FunctionTable* v) {
  w.validate();
  const std::uint64_t lo = w.first();
  const std::uint64_t hi = w.last();
  if (weight == PrimeWeight::table) {
    if (!v) throw UsageError("exp_sum_primes: table weight requires a v table");
    require_cover(*v, hi, "v");
  }
  auto weight_of = [&](std::uint64_t p) -> cplx {
    switch (weight) {
      case PrimeWeight::log: return std::log(static_cast<double>(p));
      case PrimeWeight::unit: return 1.0;
      case PrimeWeight::table: return (*v)[p];
    }
    return 0.0;
  };

  PrimeExpSum out;
  CompensatedComplexSum direct, running, correction;
  CompensatedSum abs_sum;
  cplx prev_weight{};
  bool first = true;
  // Abel: sum_i w_i e_i = w_m T_m - sum_{i<m} (w_{i+1} - w_i) T_i.
  for_each_prime(lo - 1, hi, [&](std::uint64_t p) {
    const cplx wp = weight_of(p);
    const cplx e = phase_q_over_n(w.Q, p);
    if (!first) correction.add((wp - prev_weight) * running.value());
    running.add(e);
    direct.add(wp * e);
    abs_sum.add(std::abs(wp));
    prev_weight = wp;
    first = false;
    ++out.n_primes;
  });
  out.record.window = w;
  out.record.value = direct.value();
  out.record.n_terms = out.n_primes;
  out.record.bounds["trivial"] = abs_sum.value();
  out.abel_value = first ? cplx{} : prev_weight * running.value() - correction.value();
  return out;
}

namespace {

struct RoughRange {
  std::uint64_t lo, hi;  // integer range of q
  std::uint64_t scale;   // phase is e(Q / (scale * q))
  double P;              // real left end of the q window (for the P^{1/3} split)
};

SquarefreeRoughSum squarefree_rough_core(const RoughRange& rr, double Q, double z, int nu,
                                         const FunctionTable& v, const SpfTable& spf) {
  SquarefreeRoughSum out;
  out.diagnostics.type1.assign(static_cast<std::size_t>(nu), 0);
  out.diagnostics.type2_r.assign(static_cast<std::size_t>(std::max(0, nu - 2)), 0);
  if (rr.hi < rr.lo) return out;
  require_cover(spf, rr.hi);
  require_cover(v, rr.hi, "v");

  CompensatedComplexSum direct;
  for (std::uint64_t q = std::max<std::uint64_t>(rr.lo, 2); q <= rr.hi; ++q) {
    if (static_cast<double>(spf.spf(q)) <= z) continue;
    const auto f = factorize(q, spf);
    if (static_cast<int>(f.size()) != nu) continue;
    if (std::any_of(f.begin(), f.end(), [](const PrimePower& pp) { return pp.exponent > 1; })) continue;
    direct.add(v[q] * phase_q_over_n(Q, rr.scale * q));
    ++out.n_terms;
  }
  out.direct = direct.value();

  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = floor_u64(z) + 1; p <= rr.hi; ++p) {
    if (spf.is_prime(p)) primes.push_back(p);
  }
  if (primes.empty()) {
    out.tuple_sum = 0.0;
    return out;
  }
  const std::uint64_t pmin = primes.front();
  const double third = std::cbrt(rr.P);

  std::vector<std::uint64_t> tuple(static_cast<std::size_t>(nu));
  CompensatedComplexSum tuple_sum;
  std::function<void(int, std::uint64_t, cplx)> visit = [&](int depth, std::uint64_t prod, cplx wprod) {
    if (depth == nu) {
      if (prod < rr.lo) return;
      auto& d = out.diagnostics;
      ++d.P_size;
      bool distinct = true;
      for (int i = 0; i < nu && distinct; ++i) {
        for (int j = i + 1; j < nu; ++j) {
          if (tuple[i] == tuple[j]) {
            distinct = false;
            break;
          }
        }
      }
      if (distinct) {
        ++d.Q_size;
        tuple_sum.add(wprod * phase_q_over_n(Q, rr.scale * prod));
      }
      int first_big = -1;
      for (int i = 0; i < nu; ++i) {
        if (static_cast<double>(tuple[i]) > third) {
          first_big = i;
          break;
        }
      }
      if (first_big >= 0) {
        ++d.type1[first_big];
      } else {
        ++d.type2;
        double partial = 1.0;
        for (int i = 0; i < nu; ++i) {
          partial *= static_cast<double>(tuple[i]);
          if (partial > third) {
            if (i >= 1 && i <= nu - 2) ++d.type2_r[i - 1];
            break;
          }
        }
      }
      return;
    }
    // Remaining slots after this one need at least pmin each.
    std::uint64_t reserve = 1;
    for (int i = depth + 1; i < nu; ++i) {
      if (reserve > rr.hi / pmin) return;
      reserve *= pmin;
    }
    const std::uint64_t cap = rr.hi / prod / reserve;
    for (std::uint64_t p : primes) {
      if (p > cap) break;
      tuple[depth] = p;
      visit(depth + 1, prod * p, wprod * v[p]);
    }
  };
  visit(0, 1, 1.0);
  double fact = 1.0;
  for (int i = 2; i <= nu; ++i) fact *= i;
  out.tuple_sum = tuple_sum.value() / fact;
  out.diagnostics.P_minus_Q = out.diagnostics.P_size - out.diagnostics.Q_size;
  return out;
}

}  // namespace

SquarefreeRoughSum squarefree_rough_sum(const SumWindow& w, double z, int nu, const FunctionTable& v,
                                        const SpfTable& spf) {
  w.validate();
  if (!(z >= 4.0)) throw DomainError("squarefree_rough_sum requires z >= 4");
  if (nu < 1) throw DomainError("squarefree_rough_sum requires nu >= 1");
  return squarefree_rough_core({w.first(), w.last(), 1, w.P}, w.Q, z, nu, v, spf);
}

double smooth_rough_threshold(const SumWindow& w) {
  w.validate();
  const double llq = std::log(std::log(w.Q));
  const double z = llq > 0.0 ? std::exp(std::log(w.P) / (2.0 * llq)) : 0.0;
  if (!(z >= 4.0)) throw DomainError("smooth/rough threshold z = exp(log P / (2 log log Q)) is below 4");
  return z;
}

namespace {

// Largest divisor of n composed of primes <= z.
std::uint64_t smooth_part(std::uint64_t n, double z, const SpfTable& spf) {
  std::uint64_t m = 1;
  while (n > 1) {
    const std::uint64_t p = spf.spf(n);
    if (static_cast<double>(p) > z) {
      n /= p;
      continue;
    }
    m *= p;
    n /= p;
  }
  return m;
}

}  // namespace

SmoothRoughSplit smooth_rough_split(const SumWindow& w, const FunctionTable& v, const SpfTable& spf) {
  const double z = smooth_rough_threshold(w);
  const std::uint64_t lo = w.first(), hi = w.last();
  require_cover(spf, hi);
  require_cover(v, hi, "v");
  const double root = std::sqrt(w.P);
  SmoothRoughSplit out;
  out.z = z;
  CompensatedComplexSum s1, s2;
  for (std::uint64_t n = lo; n <= hi; ++n) {
    const std::uint64_t m = smooth_part(n, z, spf);
    const cplx term = v[n] * phase_q_over_n(w.Q, n);
    if (static_cast<double>(m) <= root) {
      s1.add(term);
      ++out.n_sigma1;
    } else {
      s2.add(term);
      ++out.n_sigma2;
    }
  }
  out.sigma1 = s1.value();
  out.sigma2 = s2.value();
  return out;
}

Sigma1Reassembly sigma1_reassembly(const SumWindow& w, const FunctionTable& v, const SpfTable& spf) {
  const double z = smooth_rough_threshold(w);
  const std::uint64_t lo = w.first(), hi = w.last();
  require_cover(spf, hi);
  require_cover(v, hi, "v");
  const std::uint64_t m_max = floor_u64(std::sqrt(w.P));
  const double log_z = std::log(z);

  Sigma1Reassembly out;
  CompensatedComplexSum sq, nonsq;
  for (std::uint64_t m = 1; m <= m_max; ++m) {
    if (m > 1 && static_cast<double>(spf.p_max(m)) > z) continue;
    const cplx vm = v[m];
    const RoughRange rr{ceil_div(lo, m), hi / m, m, w.P / static_cast<double>(m)};
    if (rr.hi < rr.lo) continue;
    // q = 1 is the empty product (nu = 0).
    cplx inner = rr.lo <= 1 ? v[1] * phase_q_over_n(w.Q, m) : cplx{};
    const int nu_max = static_cast<int>(std::floor(std::log(static_cast<double>(rr.hi)) / log_z)) + 1;
    for (int nu = 1; nu <= nu_max; ++nu) {
      inner += squarefree_rough_core(rr, w.Q, z, nu, v, spf).tuple_sum;
    }
    sq.add(vm * inner);
    CompensatedComplexSum rest;
    for (std::uint64_t q = std::max<std::uint64_t>(rr.lo, 2); q <= rr.hi; ++q) {
      if (static_cast<double>(spf.spf(q)) <= z) continue;
      const auto f = factorize(q, spf);
      if (std::none_of(f.begin(), f.end(), [](const PrimePower& pp) { return pp.exponent > 1; })) continue;
      rest.add(v[q] * phase_q_over_n(w.Q, m * q));
    }
    nonsq.add(vm * rest.value());
  }
  out.squarefree_part = sq.value();
  out.nonsquarefree_part = nonsq.value();
  return out;
}

}  // namespace ntlab
