#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ntlab/numeric.hpp"

namespace ntlab {

inline constexpr std::uint64_t kDefaultSegmentLength = std::uint64_t{1} << 20;

// p_min(1) = +infinity by convention.
inline constexpr std::uint64_t kPminInfinity = std::numeric_limits<std::uint64_t>::max();

struct PrimePower {
  std::uint64_t prime;
  int exponent;
  bool operator==(const PrimePower&) const = default;
};

// Smallest prime factor for every 2 <= n <= limit.
class SpfTable {
 public:
  SpfTable() = default;
  SpfTable(std::uint64_t limit, std::vector<std::uint32_t> spf)
      : limit_(limit), spf_(std::move(spf)) {}

  std::uint64_t limit() const { return limit_; }
  // Requires 2 <= n <= limit.
  std::uint64_t spf(std::uint64_t n) const { return spf_[n]; }
  bool is_prime(std::uint64_t n) const { return n >= 2 && n <= limit_ && spf_[n] == n; }
  std::uint64_t p_min(std::uint64_t n) const;
  std::uint64_t p_max(std::uint64_t n) const;
  std::span<const std::uint32_t> raw() const { return spf_; }

 private:
  std::uint64_t limit_ = 0;
  std::vector<std::uint32_t> spf_;  // index 0 and 1 hold 0 and 1
};

struct PrimeList {
  std::uint64_t limit = 0;
  std::vector<std::uint64_t> primes;
};

// Deterministic Miller-Rabin for 64-bit integers.
bool is_prime_u64(std::uint64_t n);

SpfTable build_spf(std::uint64_t limit, std::uint64_t segment_length = kDefaultSegmentLength);

std::vector<PrimePower> factorize(std::uint64_t n, const SpfTable& table);

PrimeList primes_from(const SpfTable& table);
// Segmented Eratosthenes; memory O(sqrt(limit) + segment).
PrimeList build_primes(std::uint64_t limit, std::uint64_t segment_length = kDefaultSegmentLength);
// Streams primes in (lo, hi] in ascending order without materializing them.
void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::uint64_t)>& visit,
                    std::uint64_t segment_length = kDefaultSegmentLength);

// Values of an arithmetic function on [1..limit]; index with 1-based n.
class FunctionTable {
 public:
  FunctionTable() = default;
  FunctionTable(std::uint64_t limit, std::string label)
      : limit_(limit), label_(std::move(label)), values_(limit) {}
  FunctionTable(std::string label, std::vector<cplx> values)
      : limit_(values.size()), label_(std::move(label)), values_(std::move(values)) {}

  std::uint64_t limit() const { return limit_; }
  const std::string& label() const { return label_; }

  cplx operator[](std::uint64_t n) const { return values_[n - 1]; }
  cplx& operator[](std::uint64_t n) { return values_[n - 1]; }
  cplx at(std::uint64_t n) const;

  std::span<const cplx> values() const { return values_; }
  std::span<cplx> values() { return values_; }

  bool operator==(const FunctionTable&) const = default;

 private:
  std::uint64_t limit_ = 0;
  std::string label_;
  std::vector<cplx> values_;
};

enum class Classical { phi, sigma, mu, lambda, tau, omega, bigomega };

Classical parse_classical(std::string_view name);
std::string_view to_string(Classical f);

FunctionTable sieve_classical(Classical f, std::uint64_t limit);
FunctionTable sieve_classical(Classical f, const SpfTable& table);
FunctionTable sieve_classical(std::string_view name, std::uint64_t limit);

// Table of fn(n) for n in [1..limit].
FunctionTable tabulate(std::string label, std::uint64_t limit,
                       const std::function<cplx(std::uint64_t)>& fn);

FunctionTable dirichlet_convolve(const FunctionTable& f, const FunctionTable& g);

// Binary cache format: magic "NTFT", u32 version, u64 N, u32 label length,
// label bytes, N little-endian (re, im) doubles, u64 FNV-1a checksum.
void save_table(const FunctionTable& table, const std::filesystem::path& path);
FunctionTable load_table(const std::filesystem::path& path);

}  // namespace ntlab
