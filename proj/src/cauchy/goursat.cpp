#include "greenlab/cauchy/goursat.hpp"

#include <cmath>

#include "greenlab/error.hpp"

namespace greenlab::cauchy {

using geometry::Point;

GoursatKernel::GoursatKernel(const hadamard::ScalarOperator& P, Point x, double extent, int cells)
    : P_(P), x_(x), extent_(extent), du_(extent / cells), cells_(cells) {
  if (cells < 2 || !(extent > 0.0)) throw DomainError("GoursatKernel: need extent > 0 and cells >= 2");
  const auto& s = P_.space();
  s.require_in_window(x, "GoursatKernel base point");
  eta_x_ = s.conformal_time(x.t);
  const int n = cells + 1;
  // the cell centre of (i, j) sits at eta_x + (i + j + 1) du / 2
  std::vector<double> t_mid(2 * cells);
  for (int k = 0; k < 2 * cells; ++k) t_mid[k] = time_of(eta_x_ + 0.5 * (k + 1) * du_);
  F_.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int k = 0; k < n; ++k) F_[k] = F_[static_cast<std::size_t>(k) * n] = 0.5;
  for (int i = 0; i < cells; ++i) {
    for (int j = 0; j < cells; ++j) {
      const double t = t_mid[i + j];
      const double th = x.theta + 0.5 * (j - i) * du_;
      const double f = s.f(t);
      const double c = du_ * du_ * f * f * P_.b({t, s.wrap(th)}) / 16.0;
      const double a = F_[static_cast<std::size_t>(i + 1) * n + j];
      const double b = F_[static_cast<std::size_t>(i) * n + j + 1];
      const double d = F_[static_cast<std::size_t>(i) * n + j];
      F_[static_cast<std::size_t>(i + 1) * n + j + 1] = (a + b - d - c * (a + b + d)) / (1.0 + c);
    }
  }
}

double GoursatKernel::time_of(double eta) const {
  const auto& s = P_.space();
  double t = x_.t + (eta - eta_x_) * s.f(x_.t);
  for (int it = 0; it < 60; ++it) {
    if (!(t > s.t_min() && t < s.t_max())) throw WindowError("GoursatKernel: null extent leaves the time window");
    const double step = (s.conformal_time(t) - eta) * s.f(t);
    t -= step;
    if (std::abs(step) < 1e-14 * (1.0 + std::abs(t))) return t;
  }
  throw ConvergenceError("GoursatKernel: conformal time inversion did not converge");
}

Point GoursatKernel::point(int i, int j) const {
  const double u = i * du_, v = j * du_;
  return {time_of(eta_x_ + 0.5 * (u + v)), x_.theta + 0.5 * (v - u)};
}

double GoursatKernel::operator()(const Point& y) const {
  const auto& s = P_.space();
  const double deta = s.conformal_time(y.t) - eta_x_;
  const double dth = s.fiber_delta(x_.theta, y.theta);
  const double u = deta - dth, v = deta + dth;
  if (u < 0.0 || v < 0.0) return 0.0;
  if (u > extent_ || v > extent_) throw WindowError("GoursatKernel: point beyond the computed null extent");
  const int i = std::min(static_cast<int>(u / du_), cells_ - 1);
  const int j = std::min(static_cast<int>(v / du_), cells_ - 1);
  const double a = u / du_ - i, b = v / du_ - j;
  return (1 - a) * (1 - b) * node(i, j) + a * (1 - b) * node(i + 1, j) + (1 - a) * b * node(i, j + 1) +
         a * b * node(i + 1, j + 1);
}

}  // namespace greenlab::cauchy
