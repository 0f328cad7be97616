#include "ntlab/arith_families.hpp"

#include <charconv>
#include <cmath>
#include <mutex>

#include "ntlab/errors.hpp"

namespace ntlab {

Alpha::Alpha(cplx value) : value_(value) {
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    throw DomainError("alpha must be finite");
  }
  if (std::abs(value) > kMaxModulus) throw DomainError("|alpha| exceeds 64");
}

FamilyId parse_family_id(std::string_view name) {
  if (name == "sigma_ratio") return FamilyId::sigma_ratio;
  if (name == "phi_ratio") return FamilyId::phi_ratio;
  if (name == "sigma_over_phi") return FamilyId::sigma_over_phi;
  if (name == "singular") return FamilyId::singular;
  if (name == "tau_alpha") return FamilyId::tau_alpha;
  if (name == "phi_raw") return FamilyId::phi_raw;
  throw UsageError("unknown family '" + std::string(name) + "'");
}

std::string_view to_string(FamilyId id) {
  switch (id) {
    case FamilyId::sigma_ratio: return "sigma_ratio";
    case FamilyId::phi_ratio: return "phi_ratio";
    case FamilyId::sigma_over_phi: return "sigma_over_phi";
    case FamilyId::singular: return "singular";
    case FamilyId::tau_alpha: return "tau_alpha";
    case FamilyId::phi_raw: return "phi_raw";
  }
  return "?";
}

namespace {

double parse_real(std::string_view s, std::string_view whole) {
  double v = 0.0;
  const char* first = s.data();
  if (!s.empty() && s.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || first == s.data() + s.size()) {
    throw UsageError("malformed alpha '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

Alpha parse_alpha(std::string_view text) {
  if (text.empty()) throw UsageError("empty alpha");
  if (text.back() != 'i') return Alpha(parse_real(text, text), 0.0);
  // Split <re>(+|-)<im>i at the last sign that is not an exponent sign.
  const std::string_view body = text.substr(0, text.size() - 1);
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) {
    // Pure imaginary such as "2i" or "-0.5i"; a bare "i" means 1i.
    const double im = (body.empty() || body == "+") ? 1.0 : (body == "-" ? -1.0 : parse_real(body, text));
    return Alpha(0.0, im);
  }
  const double re = parse_real(body.substr(0, split), text);
  std::string_view ims = body.substr(split);
  double im = 0.0;
  if (ims == "+") im = 1.0;
  else if (ims == "-") im = -1.0;
  else im = parse_real(ims, text);
  return Alpha(re, im);
}

FamilySpec parse_family_spec(std::string_view text) {
  const auto colon = text.find(':');
  FamilySpec spec;
  spec.id = parse_family_id(text.substr(0, colon));
  if (colon == std::string_view::npos) return spec;
  const std::string_view rest = text.substr(colon + 1);
  constexpr std::string_view kKey = "alpha=";
  if (rest.substr(0, kKey.size()) != kKey) {
    throw UsageError("expected 'alpha=' in family spec '" + std::string(text) + "'");
  }
  spec.alpha = parse_alpha(rest.substr(kKey.size()));
  return spec;
}

std::string format_alpha(const Alpha& a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", a.re(), a.im());
  return buf;
}

std::string to_string(const FamilySpec& spec) {
  return std::string(to_string(spec.id)) + ":alpha=" + format_alpha(spec.alpha);
}

cplx tau_alpha_prime_power(cplx alpha, int nu) {
  cplx v = 1.0;
  for (int l = 1; l <= nu; ++l) v *= (alpha + static_cast<double>(l - 1)) / static_cast<double>(l);
  return v;
}

cplx tau_alpha(std::uint64_t n, const Alpha& a, const SpfTable& table) {
  if (n < 1 || n > table.limit()) throw DomainError("tau_alpha: n out of range");
  cplx v = 1.0;
  while (n > 1) {
    const std::uint64_t p = table.spf(n);
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    v *= tau_alpha_prime_power(a.value(), e);
  }
  return v;
}

double sfrak(std::uint64_t n, const SpfTable& table) {
  if (n < 1 || n > table.limit()) throw DomainError("sfrak: n out of range");
  double v = 1.0;
  while (n > 1) {
    const std::uint64_t p = table.spf(n);
    while (n % p == 0) n /= p;
    if (p > 2) v *= static_cast<double>(p - 1) / static_cast<double>(p - 2);
  }
  return v;
}

double Sfrak(std::uint64_t n, const SpfTable& table) {
  if (n < 1 || n > table.limit()) throw DomainError("Sfrak: n out of range");
  if (n % 2 == 1) return 0.0;
  return twin_prime_constant() * sfrak(n, table);
}

TwinPrimeConstant twin_prime_constant(std::uint64_t cutoff) {
  if (cutoff < 3) throw DomainError("twin_prime_constant: cutoff must be >= 3");
  CompensatedSum log_sum;
  for_each_prime(2, cutoff, [&](std::uint64_t p) {
    const double q = static_cast<double>(p - 1);
    log_sum.add(std::log1p(-1.0 / (q * q)));
  });
  const double raw = 2.0 * std::exp(log_sum.value());
  // sum_{p > P} log(1 - (p-1)^-2) ~ -int_P^inf dt / (t^2 log t) = -E1(log P).
  const double e1 = -std::expint(-std::log(static_cast<double>(cutoff)));
  const double value = raw * std::exp(-e1);
  return {value, raw, std::abs(value - raw), cutoff};
}

double twin_prime_constant() {
  static const double value = twin_prime_constant(100'000'000).value;
  return value;
}

double family_base(FamilyId id, std::uint64_t n, const SpfTable& table) {
  if (n < 1 || n > table.limit()) throw DomainError("family value: n out of range");
  if (id == FamilyId::tau_alpha) throw UsageError("tau_alpha has no real base");
  if (id == FamilyId::singular && n % 2 == 1) return 0.0;
  double base = 1.0;
  std::uint64_t m = n;
  while (m > 1) {
    const std::uint64_t p = table.spf(m);
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    const double pd = static_cast<double>(p);
    switch (id) {
      case FamilyId::sigma_ratio: {
        double s = 1.0, t = 1.0;
        for (int k = 0; k < e; ++k) {
          t /= pd;
          s += t;
        }
        base *= s;
        break;
      }
      case FamilyId::phi_ratio: base *= pd / (pd - 1.0); break;
      case FamilyId::sigma_over_phi: {
        double s = 1.0, t = 1.0;
        for (int k = 0; k < e; ++k) {
          t /= pd;
          s += t;
        }
        base *= s / (1.0 - 1.0 / pd);
        break;
      }
      case FamilyId::singular:
        if (p > 2) base *= (pd - 1.0) / (pd - 2.0);
        break;
      case FamilyId::phi_raw: base *= std::pow(pd, e - 1) * (pd - 1.0); break;
      case FamilyId::tau_alpha: break;
    }
  }
  if (id == FamilyId::singular) base *= twin_prime_constant();
  return base;
}

cplx family_value(const FamilySpec& spec, std::uint64_t n, const SpfTable& table) {
  switch (spec.id) {
    case FamilyId::tau_alpha: return tau_alpha(n, spec.alpha, table);
    case FamilyId::phi_raw: return family_base(FamilyId::phi_raw, n, table);
    case FamilyId::sigma_over_phi:
      return real_pow(family_base(spec.id, n, table), spec.alpha.value() / 2.0);
    case FamilyId::singular: {
      const double base = family_base(spec.id, n, table);
      if (base == 0.0) return 0.0;
      return real_pow(base, spec.alpha.value());
    }
    case FamilyId::sigma_ratio:
    case FamilyId::phi_ratio: return real_pow(family_base(spec.id, n, table), spec.alpha.value());
  }
  return 0.0;
}

FunctionTable family_table(const FamilySpec& spec, std::uint64_t limit, const SpfTable& table) {
  if (limit > table.limit()) throw DomainError("family_table: limit exceeds sieve");
  if (spec.id == FamilyId::singular) twin_prime_constant();  // initialize before workers start
  return tabulate(to_string(spec), limit,
                  [&](std::uint64_t n) { return family_value(spec, n, table); });
}

}  // namespace ntlab
