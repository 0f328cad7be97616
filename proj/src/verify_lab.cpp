#include "ntlab/verify_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ntlab/errors.hpp"
#include "ntlab/numeric.hpp"

namespace ntlab {

std::string_view to_string(Condition c) {
  switch (c) {
    case Condition::V1: return "V1";
    case Condition::V2: return "V2";
    case Condition::V3: return "V3";
    case Condition::V: return "V";
    case Condition::L1_linear: return "L1_linear";
    case Condition::L1_log: return "L1_log";
  }
  return "?";
}

bool ConditionReport::finite() const {
  return std::all_of(implied_constant.begin(), implied_constant.end(),
                     [](double c) { return std::isfinite(c) && c >= 0.0; });
}

double minimal_constant(const std::function<bool(double)>& holds) {
  double lo = kMinImpliedConstant;
  double hi = kMaxImpliedConstant;
  if (holds(lo)) return lo;
  if (!holds(hi)) return std::numeric_limits<double>::infinity();
  while (hi - lo > kBisectionTolerance) {
    const double mid = 0.5 * (lo + hi);
    (holds(mid) ? hi : lo) = mid;
  }
  return hi;
}

std::vector<double> condition_grid(double x_max, int count) {
  if (!(x_max > 1e3)) throw DomainError("condition grid requires x_max > 10^3");
  return geometric_grid(1e3, x_max, count);
}

namespace {

void require_grid(std::span<const double> grid, std::uint64_t limit) {
  if (grid.empty()) throw UsageError("empty grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 4.0)) throw DomainError("grid points must be >= 4");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw UsageError("grid must be strictly ascending");
  }
  if (static_cast<std::uint64_t>(std::floor(grid.back())) > limit) {
    throw DomainError("table does not cover the grid maximum");
  }
}

// Prefix sums of term(n) sampled at floor(grid[i]).
std::vector<double> prefix_at(std::span<const double> grid, const std::function<double(std::uint64_t)>& term) {
  std::vector<double> out;
  out.reserve(grid.size());
  CompensatedSum acc;
  std::uint64_t n = 1;
  for (double x : grid) {
    const auto top = static_cast<std::uint64_t>(std::floor(x));
    for (; n <= top; ++n) acc.add(term(n));
    out.push_back(acc.value());
  }
  return out;
}

void finish(ConditionReport& r) {
  r.slope = loglog_slope(r.grid, r.implied_constant);
  r.bounded = r.finite() && r.slope <= kBoundedSlope;
}

}  // namespace

ConditionReport check_V1(const FunctionTable& v, const PrimeList& primes, std::span<const double> grid) {
  require_grid(grid, std::min(v.limit(), primes.limit));
  ConditionReport r{Condition::V1, {grid.begin(), grid.end()}, {}, {}, 0.0, false};
  double best = 0.0;
  std::size_t i = 0;
  for (double x : grid) {
    for (; i < primes.primes.size() && static_cast<double>(primes.primes[i]) <= x; ++i) {
      best = std::max(best, std::abs(v[primes.primes[i]]));
    }
    r.statistic.push_back(best);
    r.implied_constant.push_back(best);
  }
  finish(r);
  return r;
}

ConditionReport check_V2(const FunctionTable& v, std::span<const double> grid) {
  require_grid(grid, v.limit());
  ConditionReport r{Condition::V2, {grid.begin(), grid.end()}, {}, {}, 0.0, false};
  r.statistic = prefix_at(grid, [&](std::uint64_t n) { return std::norm(v[n]); });
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid[i];
    const double s = r.statistic[i];
    const double lx = std::log(x), llx = std::log(lx);
    r.implied_constant.push_back(minimal_constant([&](double C) {
      return s <= 0.0 || std::log(s) <= std::log(C) + lx + C * llx;
    }));
  }
  finish(r);
  return r;
}

ConditionReport check_V3(const FunctionTable& v, const PrimeList& primes, std::span<const double> grid) {
  require_grid(grid, v.limit());
  const auto& ps = primes.primes;
  if (ps.empty() || static_cast<double>(ps.back()) <= grid.back()) {
    throw DomainError("check_V3 needs the prime following the grid maximum");
  }
  if (ps.back() > v.limit()) throw DomainError("check_V3: table does not cover the prime list");
  ConditionReport r{Condition::V3, {grid.begin(), grid.end()}, {}, {}, 0.0, false};
  CompensatedSum acc;
  std::size_t i = 0;
  for (double x : grid) {
    for (; i + 1 < ps.size() && static_cast<double>(ps[i]) <= x; ++i) acc.add(std::abs(v[ps[i + 1]] - v[ps[i]]));
    const double s = acc.value();
    const double llx = std::log(std::log(x));
    r.statistic.push_back(s);
    r.implied_constant.push_back(minimal_constant([&](double C) {
      return s <= 0.0 || std::log(s) <= std::log(C) + C * llx;
    }));
  }
  finish(r);
  return r;
}

ConditionReport check_V_kappa(const FunctionTable& v, double kappa, std::span<const double> grid) {
  require_grid(grid, v.limit());
  ConditionReport r{Condition::V, {grid.begin(), grid.end()}, {}, {}, 0.0, false};
  r.statistic = prefix_at(grid, [&](std::uint64_t n) { return std::abs(v[n]) / static_cast<double>(n); });
  for (std::size_t i = 0; i < grid.size(); ++i) {
    r.implied_constant.push_back(r.statistic[i] / std::pow(std::log(grid[i]), kappa));
  }
  finish(r);
  return r;
}

ConditionReport check_L1_linear(const FunctionTable& v, double C, std::span<const double> grid) {
  require_grid(grid, v.limit());
  ConditionReport r{Condition::L1_linear, {grid.begin(), grid.end()}, {}, {}, 0.0, false};
  r.statistic = prefix_at(grid, [&](std::uint64_t n) { return std::abs(v[n]); });
  for (std::size_t i = 0; i < grid.size(); ++i) {
    r.implied_constant.push_back(r.statistic[i] / (grid[i] * std::pow(std::log(grid[i]), C)));
  }
  finish(r);
  return r;
}

ConditionReport check_L1_log(const FunctionTable& v, double C, std::span<const double> grid) {
  ConditionReport r = check_V_kappa(v, C, grid);
  r.condition = Condition::L1_log;
  return r;
}

LargestPrimeFactorTable::LargestPrimeFactorTable(const SpfTable& spf)
    : limit_(spf.limit()), lpf_(spf.limit() + 1, 0) {
  if (limit_ >= 1) lpf_[1] = 1;
  for (std::uint64_t n = 2; n <= limit_; ++n) {
    const std::uint32_t p = static_cast<std::uint32_t>(spf.spf(n));
    lpf_[n] = std::max(p, lpf_[n / p]);
  }
}

namespace {

std::uint64_t checked_top(double x, std::uint64_t limit) {
  if (!(x >= 0.0)) throw DomainError("smooth_count requires x >= 0");
  const auto top = static_cast<std::uint64_t>(std::floor(x));
  if (top > limit) throw DomainError("smooth_count: x exceeds the sieve limit");
  return top;
}

}  // namespace

std::uint64_t smooth_count(double x, double y, const SpfTable& spf) {
  const std::uint64_t top = checked_top(x, spf.limit());
  std::uint64_t count = 0;
  for (std::uint64_t n = 1; n <= top; ++n) {
    if (static_cast<double>(spf.p_max(n)) <= y) ++count;
  }
  return count;
}

std::uint64_t smooth_count(double x, double y, const LargestPrimeFactorTable& lpf) {
  const std::uint64_t top = checked_top(x, lpf.limit());
  std::uint64_t count = 0;
  for (std::uint64_t n = 1; n <= top; ++n) count += static_cast<double>(lpf(n)) <= y;
  return count;
}

namespace {

DeBruijnCheck de_bruijn_frame(double x, double y) {
  DeBruijnCheck c;
  c.x = x;
  c.y = y;
  const double lx = std::log(x);
  if (x > std::exp(1.0) && y > 1.0) {
    const double u = lx / std::log(y);
    c.bound = x * std::exp(-0.5 * u * std::log(u));
    c.in_range = lx * lx <= y && y <= std::exp(lx / std::log(lx));
  } else {
    c.bound = x;
  }
  c.asserted = c.in_range && x >= kDeBruijnThreshold;
  return c;
}

}  // namespace

DeBruijnCheck de_bruijn_check(double x, double y, const LargestPrimeFactorTable& lpf) {
  DeBruijnCheck c = de_bruijn_frame(x, y);
  c.count = smooth_count(x, y, lpf);
  c.holds = !c.asserted || static_cast<double>(c.count) <= c.bound;
  return c;
}

DeBruijnCheck de_bruijn_check(double x, double y, const SpfTable& spf) {
  DeBruijnCheck c = de_bruijn_frame(x, y);
  c.count = smooth_count(x, y, spf);
  c.holds = !c.asserted || static_cast<double>(c.count) <= c.bound;
  return c;
}

}  // namespace ntlab
