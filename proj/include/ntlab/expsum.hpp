#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ntlab/numeric.hpp"
#include "ntlab/sieve_core.hpp"

namespace ntlab {

// Dyadic window (P, P'] with frequency Q: 4 <= P < P' <= 2P, Q >= 4.
struct SumWindow {
  double P = 4.0;
  double P_prime = 8.0;
  double Q = 4.0;

  void validate() const;  // throws DomainError
  // Integer range floor(P) + 1 .. floor(P').
  std::uint64_t first() const { return static_cast<std::uint64_t>(std::floor(P)) + 1; }
  std::uint64_t last() const { return static_cast<std::uint64_t>(std::floor(P_prime)); }
  std::uint64_t size() const { return last() >= first() ? last() - first() + 1 : 0; }
};

struct ExpSumRecord {
  SumWindow window;
  cplx value;
  std::uint64_t n_terms = 0;
  std::map<std::string, double> bounds;  // "trivial", "kusmin_landau", "walfisz_envelope"
  std::set<std::string> regime_flags;
};

// e(Q/n) with an fma-corrected reduction of Q/n modulo 1.
inline cplx phase_q_over_n(double Q, std::uint64_t n) {
  return unit_phase(Q, static_cast<double>(n));
}

// sum_{P < n <= P'} c(n) e(Q/n); c = 1 when coeff is null.
ExpSumRecord exp_sum_direct(const SumWindow& w, const FunctionTable* coeff = nullptr);

struct KusminLandau {
  double lambda;
  double bound;  // 1/lambda + 1
};

// Applicable when Q/P^2 < 1 for f(x) = Q/x on (P, P'].
std::optional<KusminLandau> kusmin_landau_check(const SumWindow& w);

// P exp(-gamma (log P)^3 / (log Q)^2) + P^2 / Q.
double walfisz_envelope(const SumWindow& w, double gamma = 1.0);

struct KaratsubaParams {
  int k = 0;
  double c0 = 1.0 / 39, c1 = 25.0 / 26, c2 = 23.0 / 24, c3 = 1.0 / 4;
  double j_lo = 0.0, j_hi = 0.0;  // the j range (j_lo, j_hi]
  std::vector<int> j_values;
  int r = 0;
  bool check_A = false;
  bool check_B = false;
  bool check_c = false;   // 0 < c0 < 1, 0 < c3 <= c2 < c1 < 1
  bool check_rj = false;  // c0 k <= r <= k and 1 <= j <= k
};

// Requires 2^12 < P <= Q^{2/3} / 2; throws RegimeError otherwise.
KaratsubaParams karatsuba_params(double P, double Q);

struct VaughanTerms {
  double z = 2.0;
  std::uint64_t n_max = 0;
  std::vector<double> a1, a2, a3;  // indexed by n, entry 0 unused

  double combined(std::uint64_t n) const { return a1[n] - a2[n] + a3[n]; }
};

// a1 - a2 + a3 = Lambda(n) for z < n <= n_max. mu and lambda must cover n_max.
VaughanTerms vaughan_terms(std::uint64_t n_max, double z, const FunctionTable& mu,
                           const FunctionTable& lambda);

struct VaughanCoefficients {
  double z = 2.0;
  std::vector<double> c2;  // c2(u) = sum_{dm = u, d, m <= z} mu(d) Lambda(m)
  std::vector<double> c3;  // c3(u) = sum_{dm = u, d > z} mu(d)
};

VaughanCoefficients vaughan_coefficients(std::uint64_t u_max, double z, const FunctionTable& mu,
                                         const FunctionTable& lambda);

struct VaughanSplit {
  cplx S1, S2, S3;
  cplx direct;  // sum Lambda(n) e(Q/n)

  cplx reconstructed() const { return S1 - S2 + S3; }
};

// z defaults to P^{1/3}. Tables must cover P'.
VaughanSplit vaughan_sum_split(const SumWindow& w, const FunctionTable& mu,
                               const FunctionTable& lambda, std::optional<double> z = {});

struct BilinearResult {
  cplx value;
  double norm_a = 0.0;
  double norm_b = 0.0;
  double comparison = 0.0;  // (P^{1/2} (log Q)^{-A} + P Q^{-1/2}) |A| |B| (log Q)^{1/2}
  std::uint64_t n_terms = 0;
};

// sum over P < uv <= P', U < u <= U', V < v <= V' of alpha(u) beta(v) e(Q/uv).
BilinearResult type2_bilinear(const FunctionTable& alpha, const FunctionTable& beta,
                              const SumWindow& w, double U, double U_prime, double V,
                              double V_prime, double A = 1.0);

struct DyadicCell {
  double U, U_prime, V, V_prime;
  cplx value;
};

// S3 of the Vaughan split dissected into cells u in [2^j, 2^{j+1}), v in [2^i, 2^{i+1})
// (intersected with u, v > z), lowest j first then lowest i.
std::vector<DyadicCell> vaughan_s3_cells(const SumWindow& w, const FunctionTable& mu,
                                         const FunctionTable& lambda, std::optional<double> z = {});

enum class PrimeWeight { log, unit, table };

struct PrimeExpSum {
  ExpSumRecord record;
  cplx abel_value;  // partial-summation evaluation
  std::uint64_t n_primes = 0;
};

// sum_{P < p <= P'} weight(p) e(Q/p); `v` is required for PrimeWeight::table.
PrimeExpSum exp_sum_primes(const SumWindow& w, PrimeWeight weight, const FunctionTable* v = nullptr);

struct PartitionDiagnostics {
  std::uint64_t P_size = 0;          // ordered tuples of primes > z with product in the window
  std::uint64_t Q_size = 0;          // those with distinct entries
  std::uint64_t P_minus_Q = 0;
  std::vector<std::uint64_t> type1;  // type1[r-1]: p_r > P^{1/3}, p_1..p_{r-1} <= P^{1/3}
  std::uint64_t type2 = 0;           // all p_i <= P^{1/3}
  std::vector<std::uint64_t> type2_r;  // type2_r[r-2] for r = 2..nu-1
};

struct SquarefreeRoughSum {
  cplx direct;      // over square-free q with p_min(q) > z and omega(q) = nu
  cplx tuple_sum;   // S(Q) / nu!
  std::uint64_t n_terms = 0;
  PartitionDiagnostics diagnostics;
};

SquarefreeRoughSum squarefree_rough_sum(const SumWindow& w, double z, int nu, const FunctionTable& v,
                                        const SpfTable& spf);

// z = exp(log P / (2 log log Q)); throws DomainError when z < 4.
double smooth_rough_threshold(const SumWindow& w);

struct SmoothRoughSplit {
  double z = 0.0;
  cplx sigma1, sigma2;
  std::uint64_t n_sigma1 = 0, n_sigma2 = 0;
};

// n = m q with p_max(m) <= z < p_min(q); sigma1 collects m <= P^{1/2}.
SmoothRoughSplit smooth_rough_split(const SumWindow& w, const FunctionTable& v, const SpfTable& spf);

struct Sigma1Reassembly {
  cplx squarefree_part;     // sum_m v(m) sum_nu (squarefree rough q with omega(q) = nu)
  cplx nonsquarefree_part;  // sum_m v(m) sum over rough q that are not square-free
  cplx total() const { return squarefree_part + nonsquarefree_part; }
};

// Rebuilds sigma1 from inner sums over rough q, the square-free part via
// squarefree_rough_sum on each window (P/m, P'/m].
Sigma1Reassembly sigma1_reassembly(const SumWindow& w, const FunctionTable& v, const SpfTable& spf);

}  // namespace ntlab
