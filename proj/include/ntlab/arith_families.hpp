#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "ntlab/numeric.hpp"
#include "ntlab/sieve_core.hpp"

namespace ntlab {

// Complex exponent with |alpha| <= 64.
class Alpha {
 public:
  static constexpr double kMaxModulus = 64.0;
  Alpha() = default;
  Alpha(cplx value);  // NOLINT(google-explicit-constructor)
  Alpha(double re, double im = 0.0) : Alpha(cplx{re, im}) {}

  cplx value() const { return value_; }
  double re() const { return value_.real(); }
  double im() const { return value_.imag(); }

 private:
  cplx value_{1.0, 0.0};
};

enum class FamilyId { sigma_ratio, phi_ratio, sigma_over_phi, singular, tau_alpha, phi_raw };

struct FamilySpec {
  FamilyId id = FamilyId::phi_raw;
  Alpha alpha;
};

FamilyId parse_family_id(std::string_view name);
std::string_view to_string(FamilyId id);

// Grammar: <id>[:alpha=<re>[(+|-)<im>i]]; alpha defaults to 1.
FamilySpec parse_family_spec(std::string_view text);
Alpha parse_alpha(std::string_view text);
std::string to_string(const FamilySpec& spec);
std::string format_alpha(const Alpha& a);

// tau_alpha(p^nu) = prod_{l=1..nu} (alpha + l - 1) / l.
cplx tau_alpha_prime_power(cplx alpha, int nu);
cplx tau_alpha(std::uint64_t n, const Alpha& a, const SpfTable& table);

// s(n) = prod over odd p | n of (p-1)/(p-2).
double sfrak(std::uint64_t n, const SpfTable& table);
// S(n) = S_2 * s(n) for even n, 0 for odd n.
double Sfrak(std::uint64_t n, const SpfTable& table);

struct TwinPrimeConstant {
  double value;        // includes the tail correction beyond the cutoff
  double raw_product;  // 2 * prod_{2 < p <= cutoff} (1 - (p-1)^-2)
  double tail;         // |value - raw_product|, a heuristic size of the tail
  std::uint64_t cutoff;
};

TwinPrimeConstant twin_prime_constant(std::uint64_t cutoff);
// Cached S_2 with cutoff 10^8.
double twin_prime_constant();

// Positive real base whose alpha-th (or alpha/2-th) power the family takes;
// 0 marks the odd-n singular entries and is never exponentiated.
double family_base(FamilyId id, std::uint64_t n, const SpfTable& table);
cplx family_value(const FamilySpec& spec, std::uint64_t n, const SpfTable& table);
FunctionTable family_table(const FamilySpec& spec, std::uint64_t limit, const SpfTable& table);

// base^alpha on the principal branch for base > 0.
inline cplx real_pow(double base, cplx alpha) {
  if (alpha == cplx{}) return 1.0;
  return std::exp(alpha * std::log(base));
}

}  // namespace ntlab
