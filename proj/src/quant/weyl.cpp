#include "greenlab/quant/weyl.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "greenlab/error.hpp"

namespace greenlab::quant {

namespace {

long mod(long a, long n) { return ((a % n) + n) % n; }

cplx root(long k, int N) {
  const double a = 2.0 * std::numbers::pi * static_cast<double>(mod(k, N)) / N;
  return {std::cos(a), std::sin(a)};
}

}  // namespace

FiniteWeylSystem::FiniteWeylSystem(int N) : N_(N) {
  if (N < 2) throw DomainError("finite Weyl system needs N >= 2");
}

ZN2 FiniteWeylSystem::reduce(ZN2 x) const {
  return {static_cast<int>(mod(x[0], N_)), static_cast<int>(mod(x[1], N_))};
}

cplx FiniteWeylSystem::half_phase(ZN2 x, ZN2 y) const {
  if (!exact()) throw DomainError("half symplectic form is defined for odd N only");
  const long h = (N_ + 1) / 2;
  const long w = static_cast<long>(x[0]) * y[1] - static_cast<long>(x[1]) * y[0];
  return root(-h * mod(w, N_), N_);
}

Mat FiniteWeylSystem::W(ZN2 x) const {
  const ZN2 r = reduce(x);
  const long a = r[0], b = r[1];
  const cplx p = phase(r);
  // (X^a Z^b) e_j = zeta^(b j) e_(j+a)
  Mat m = Mat::Zero(N_, N_);
  for (int j = 0; j < N_; ++j) m(mod(j + a, N_), j) = p * root(b * j, N_);
  return m;
}

cplx FiniteWeylSystem::phase(ZN2 x) const {
  const long a = x[0], b = x[1];
  if (exact()) return root(((N_ + 1) / 2) * mod(a * b, N_), N_);
  const double ang = std::numbers::pi * static_cast<double>(a * b) / N_;
  return {std::cos(ang), std::sin(ang)};
}

double FiniteWeylSystem::pair_defect(ZN2 x, ZN2 y) const {
  x = reduce(x);
  y = reduce(y);
  const ZN2 s = add(x, y);
  const cplx px = phase(x), py = phase(y), ps = phase(s), hp = half_phase(x, y);
  double worst = 0.0;
  // both sides map e_j to a multiple of e_(j+a+c); compare the multiples column by column
  for (long j = 0; j < N_; ++j) {
    const cplx lhs = py * root(y[1] * j, N_) * px * root(x[1] * (j + y[0]), N_);
    const cplx rhs = hp * ps * root(s[1] * j, N_);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

double FiniteWeylSystem::composition_defect(int samples, unsigned seed) const {
  double worst = 0.0;
  if (samples <= 0) {
    for (int a = 0; a < N_; ++a)
      for (int b = 0; b < N_; ++b)
        for (int c = 0; c < N_; ++c)
          for (int d = 0; d < N_; ++d) worst = std::max(worst, pair_defect({a, b}, {c, d}));
    return worst;
  }
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> U(0, N_ - 1);
  for (int k = 0; k < samples; ++k)
    worst = std::max(worst, pair_defect({U(rng), U(rng)}, {U(rng), U(rng)}));
  return worst;
}

double FiniteWeylSystem::unitarity_defect() const {
  double worst = 0.0;
  const Mat I = Mat::Identity(N_, N_);
  for (int a = 0; a < N_; ++a)
    for (int b = 0; b < N_; ++b) {
      const Mat w = W({a, b});
      worst = std::max(worst, (w.adjoint() * w - I).cwiseAbs().maxCoeff());
    }
  return worst;
}

int FiniteWeylSystem::flattened_rank() const {
  const int n2 = N_ * N_;
  Mat M(n2, n2);
  for (int a = 0; a < N_; ++a)
    for (int b = 0; b < N_; ++b) {
      const Mat w = W({a, b});
      M.col(a * N_ + b) = Eigen::Map<const Vec>(w.data(), n2);
    }
  Eigen::ColPivHouseholderQR<Mat> qr(M);
  qr.setThreshold(1e-10);
  return static_cast<int>(qr.rank());
}

double weyl_distance(const FiniteWeylSystem& sys, ZN2 x, ZN2 y) {
  return spectral_norm(sys.W(x) - sys.W(y));
}

}  // namespace greenlab::quant
