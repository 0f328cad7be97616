#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ntlab/sieve_core.hpp"

namespace ntlab {

enum class Condition { V1, V2, V3, V, L1_linear, L1_log };
std::string_view to_string(Condition c);

// Per-grid-point implied constants for one hypothesis. `bounded` is a heuristic:
// the log-log slope of the constant curve is at most kBoundedSlope.
struct ConditionReport {
  Condition condition = Condition::V1;
  std::vector<double> grid;
  std::vector<double> statistic;         // the raw sum or maximum at x
  std::vector<double> implied_constant;  // minimal C, or the kappa-ratio for V / L1
  double slope = 0.0;
  bool bounded = false;
  bool finite() const;
};

inline constexpr double kBoundedSlope = 0.1;
inline constexpr double kMinImpliedConstant = 2.0;
inline constexpr double kMaxImpliedConstant = 1 << 20;
inline constexpr double kBisectionTolerance = 1e-3;

// Smallest C in [2, 2^20] (to within 1e-3) with holds(C); +inf when none.
// holds must be monotone in C.
double minimal_constant(const std::function<bool(double)>& holds);

// Grid of 40 geometric points in [10^3, x_max], rounded to integers.
std::vector<double> condition_grid(double x_max, int count = 40);

// max_{p <= x} |v(p)|.
ConditionReport check_V1(const FunctionTable& v, const PrimeList& primes, std::span<const double> grid);
// sum_{n <= x} |v(n)|^2 <= C x (log x)^C.
ConditionReport check_V2(const FunctionTable& v, std::span<const double> grid);
// sum_{p_n <= x} |v(p_{n+1}) - v(p_n)| <= C (log x)^C.
ConditionReport check_V3(const FunctionTable& v, const PrimeList& primes, std::span<const double> grid);
// sum_{n <= x} |v(n)| / n divided by (log x)^kappa.
ConditionReport check_V_kappa(const FunctionTable& v, double kappa, std::span<const double> grid);
// sum |v(n)| / (x (log x)^C) and sum |v(n)|/n / (log x)^C for a given exponent C.
ConditionReport check_L1_linear(const FunctionTable& v, double C, std::span<const double> grid);
ConditionReport check_L1_log(const FunctionTable& v, double C, std::span<const double> grid);

// Largest prime factor for 1 <= n <= limit with p_max(1) = 1.
class LargestPrimeFactorTable {
 public:
  explicit LargestPrimeFactorTable(const SpfTable& spf);
  std::uint64_t limit() const { return limit_; }
  std::uint32_t operator()(std::uint64_t n) const { return lpf_[n]; }

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> lpf_;
};

// psi(x, y) = #{n <= x : p_max(n) <= y}.
std::uint64_t smooth_count(double x, double y, const SpfTable& spf);
std::uint64_t smooth_count(double x, double y, const LargestPrimeFactorTable& lpf);

struct DeBruijnCheck {
  double x = 0.0, y = 0.0;
  std::uint64_t count = 0;
  double bound = 0.0;     // x exp(-u log u / 2), u = log x / log y
  bool in_range = false;  // (log x)^2 <= y <= exp(log x / log log x)
  bool asserted = false;  // in_range and x >= 10^6
  bool holds = true;      // count <= bound whenever asserted
};

inline constexpr double kDeBruijnThreshold = 1e6;

DeBruijnCheck de_bruijn_check(double x, double y, const LargestPrimeFactorTable& lpf);
DeBruijnCheck de_bruijn_check(double x, double y, const SpfTable& spf);

}  // namespace ntlab
