#pragma once

#include <cstdint>
#include <vector>

#include "ntlab/expsum.hpp"
#include "ntlab/numeric.hpp"
#include "ntlab/sieve_core.hpp"

namespace ntlab {

// psi(x) = {x} - 1/2.
inline double psi(double x) { return (x - std::floor(x)) - 0.5; }

// psi(num / den) for den > 0, reducing num modulo den exactly first.
inline double psi_ratio(double num, double den) { return frac_ratio(num, den) - 0.5; }

// Trigonometric polynomial sum_{0 < |h| <= N} c(h) e(hx) approximating psi.
class VaalerApprox {
 public:
  static constexpr int kMaxDegree = 10'000;

  explicit VaalerApprox(int N);

  int degree() const { return N_; }
  // c(h) for 0 < |h| <= N; c(-h) = conj(c(h)).
  cplx coeff(int h) const;
  cplx evaluate_complex(double x) const;
  double evaluate(double x) const { return evaluate_complex(x).real(); }
  // (1 / (2(N+1))) sum_{|h| <= N} (1 - |h|/(N+1)) e(hx).
  double majorant(double x) const;

 private:
  int N_;
  std::vector<cplx> positive_;  // c(1..N)
};

VaalerApprox vaaler_build(int N);

// sum_{n <= y} v(n)/n psi(x/n); requires 4 <= y <= x and y <= v.limit.
cplx psi_weighted_sum(const FunctionTable& v, double x, double y);

struct VaalerTransferReport {
  int N = 0;
  double H = 0.0;
  double lhs = 0.0;        // |sum g(n) psi(x/n)| over the window
  double rhs = 0.0;        // sum_{0<|h|<=H} |S_g(h)| / |h| + (1/H) sum_{0<=h<=H} |S_G(h)|
  double ratio = 0.0;      // lhs / rhs (0 when both vanish)
  bool holds = false;      // lhs <= c_abs * rhs
};

inline constexpr double kVaalerTransferConstant = 4.0;

// g = v, G = |v| on the window's integers, x_n = x / n.
VaalerTransferReport vaaler_transfer_check(const FunctionTable& v, double x, const SumWindow& window,
                                           double H);

}  // namespace ntlab
