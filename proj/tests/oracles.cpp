#include "oracles.hpp"

#include <cmath>
#include <numbers>

namespace oracle {

std::uint64_t smallest_factor(std::uint64_t n) {
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return d;
  }
  return n;
}

std::vector<std::pair<std::uint64_t, int>> factor(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool is_prime(std::uint64_t n) { return n >= 2 && smallest_factor(n) == n; }

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 1; d <= n; ++d) {
    if (n % d == 0) out.push_back(d);
  }
  return out;
}

int mobius(std::uint64_t n) {
  int s = 1;
  for (auto [p, e] : factor(n)) {
    if (e > 1) return 0;
    s = -s;
  }
  return s;
}

double mangoldt(std::uint64_t n) {
  const auto f = factor(n);
  return f.size() == 1 ? std::log(static_cast<double>(f[0].first)) : 0.0;
}

std::uint64_t totient(std::uint64_t n) {
  std::uint64_t c = 0;
  for (std::uint64_t k = 1; k <= n; ++k) {
    std::uint64_t a = n, b = k;
    while (b) {
      a %= b;
      std::swap(a, b);
    }
    c += (a == 1);
  }
  return c;
}

std::uint64_t sigma(std::uint64_t n) {
  std::uint64_t s = 0;
  for (auto d : divisors(n)) s += d;
  return s;
}

std::uint64_t divisor_count(std::uint64_t n) { return divisors(n).size(); }

std::uint64_t largest_factor(std::uint64_t n) {
  const auto f = factor(n);
  return f.empty() ? 1 : f.back().first;
}

std::complex<long double> phase(std::uint64_t num, std::uint64_t den) {
  const long double t = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(num % den) /
                        static_cast<long double>(den);
  return {std::cos(t), std::sin(t)};
}

}  // namespace oracle
