#include "ntlab/psi_tools.hpp"

#include <cmath>
#include <numbers>

#include "ntlab/errors.hpp"
#include "ntlab/parallel.hpp"

namespace ntlab {

namespace {

constexpr double kPi = std::numbers::pi;

// t (1 - t) pi cot(pi t) + t on (0, 1).
double vaaler_weight(double t) { return kPi * t * (1.0 - t) / std::tan(kPi * t) + t; }

}  // namespace

VaalerApprox::VaalerApprox(int N) : N_(N) {
  if (N < 1 || N > kMaxDegree) throw DomainError("Vaaler degree must lie in [1, 10^4]");
  positive_.reserve(static_cast<std::size_t>(N));
  for (int h = 1; h <= N; ++h) {
    const double t = static_cast<double>(h) / (N + 1);
    positive_.emplace_back(0.0, vaaler_weight(t) / (2.0 * kPi * h));
  }
}

cplx VaalerApprox::coeff(int h) const {
  if (h == 0 || h > N_ || h < -N_) throw DomainError("Vaaler coefficient index out of range");
  return h > 0 ? positive_[h - 1] : std::conj(positive_[-h - 1]);
}

cplx VaalerApprox::evaluate_complex(double x) const {
  CompensatedComplexSum acc;
  const double f = x - std::floor(x);
  for (int h = 1; h <= N_; ++h) {
    acc.add(positive_[h - 1] * unit_phase(h * f));
    acc.add(std::conj(positive_[h - 1]) * unit_phase(-h * f));
  }
  return acc.value();
}

double VaalerApprox::majorant(double x) const {
  const double f = x - std::floor(x);
  CompensatedSum acc;
  acc.add(1.0);
  for (int h = 1; h <= N_; ++h) {
    acc.add(2.0 * (1.0 - static_cast<double>(h) / (N_ + 1)) * std::cos(2.0 * kPi * (h * f - std::floor(h * f))));
  }
  return acc.value() / (2.0 * (N_ + 1));
}

VaalerApprox vaaler_build(int N) { return VaalerApprox(N); }

cplx psi_weighted_sum(const FunctionTable& v, double x, double y) {
  if (!(y >= 4.0 && y <= x)) throw DomainError("psi_weighted_sum requires 4 <= y <= x");
  const auto n_max = static_cast<std::uint64_t>(std::floor(y));
  if (n_max > v.limit()) throw DomainError("psi_weighted_sum: table does not cover y");
  constexpr std::uint64_t kChunk = 1 << 14;
  const std::size_t n_chunks = (n_max + kChunk - 1) / kChunk;
  std::vector<cplx> parts(n_chunks);
  parallel_chunks(n_chunks, [&](std::size_t c) {
    CompensatedComplexSum acc;
    const std::uint64_t lo = 1 + c * kChunk;
    const std::uint64_t hi = std::min(n_max, lo + kChunk - 1);
    for (std::uint64_t n = lo; n <= hi; ++n) {
      const cplx vn = v[n];
      if (vn == cplx{}) continue;
      const double nd = static_cast<double>(n);
      acc.add(vn / nd * psi_ratio(x, nd));
    }
    parts[c] = acc.value();
  });
  return pairwise_sum(parts);
}

VaalerTransferReport vaaler_transfer_check(const FunctionTable& v, double x, const SumWindow& window,
                                           double H) {
  window.validate();
  if (!(H >= 1.0)) throw DomainError("vaaler_transfer_check requires H >= 1");
  const std::uint64_t lo = window.first();
  const std::uint64_t hi = window.last();
  if (hi > v.limit()) throw DomainError("vaaler_transfer_check: table does not cover the window");
  VaalerTransferReport rep;
  rep.H = H;
  rep.N = static_cast<int>(std::floor(H));

  CompensatedComplexSum lhs;
  for (std::uint64_t n = lo; n <= hi; ++n) lhs.add(v[n] * psi_ratio(x, static_cast<double>(n)));
  rep.lhs = std::abs(lhs.value());

  // S(h) = sum g(n) e(h x / n); |S(-h)| for g uses conj(g), so evaluate both signs.
  CompensatedSum first, second;
  for (int h = 0; h <= rep.N; ++h) {
    CompensatedComplexSum sg_pos, sg_neg, sG;
    for (std::uint64_t n = lo; n <= hi; ++n) {
      const cplx e = unit_phase(static_cast<double>(h) * x, static_cast<double>(n));
      const cplx g = v[n];
      sg_pos.add(g * e);
      sg_neg.add(g * std::conj(e));
      sG.add(std::abs(g) * e);
    }
    if (h > 0) {
      first.add(std::abs(sg_pos.value()) / h);
      first.add(std::abs(sg_neg.value()) / h);
    }
    second.add(std::abs(sG.value()));
  }
  rep.rhs = first.value() + second.value() / H;
  rep.ratio = rep.rhs > 0.0 ? rep.lhs / rep.rhs : 0.0;
  rep.holds = rep.lhs <= kVaalerTransferConstant * rep.rhs;
  return rep;
}

}  // namespace ntlab
