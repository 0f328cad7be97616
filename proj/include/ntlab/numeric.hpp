#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

namespace ntlab {

using cplx = std::complex<double>;

// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class CompensatedComplexSum {
 public:
  void add(cplx z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  cplx value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

// Fractional part of num/den for an integer-valued den > 0, using a fused
// multiply-add to recover the remainder num - k*den without cancellation.
inline double frac_ratio(double num, double den) {
  const double k = std::floor(num / den);
  double r = std::fma(-k, den, num);
  if (r < 0.0) r += den;
  if (r >= den) r -= den;
  double f = r / den;
  if (f >= 1.0) f = 0.0;
  return f;
}

// e(num/den) = exp(2 pi i num/den).
inline cplx unit_phase(double num, double den) {
  const double f = frac_ratio(num, den);
  const double t = 2.0 * std::numbers::pi * f;
  return {std::cos(t), std::sin(t)};
}

// e(x) for a real argument.
inline cplx unit_phase(double x) {
  const double f = x - std::floor(x);
  const double t = 2.0 * std::numbers::pi * f;
  return {std::cos(t), std::sin(t)};
}

// Pairwise reduction over a fixed partition, so the result only depends on
// the partition and never on the thread schedule.
inline cplx pairwise_sum(std::span<const cplx> parts) {
  if (parts.empty()) return {};
  if (parts.size() == 1) return parts[0];
  const std::size_t half = parts.size() / 2;
  return pairwise_sum(parts.first(half)) + pairwise_sum(parts.subspan(half));
}

// Least-squares slope of log(y) against log(x); points with y <= 0 are skipped.
double loglog_slope(std::span<const double> x, std::span<const double> y);

// Geometric grid of `count` points from lo to hi inclusive, rounded to integers.
std::vector<double> geometric_grid(double lo, double hi, int count);

}  // namespace ntlab
