#pragma once

#include <vector>

#include "greenlab/hadamard/operator.hpp"

namespace greenlab::cauchy {

/// Advanced fundamental solution F(x, .) of P (support in J_+(x)) on a two-dimensional
/// warped model. The metric is f^2 (-d eta^2 + d theta^2), so f^2 P = 4 d_u d_v + f^2 b in
/// null coordinates u = d eta - d theta, v = d eta + d theta, and F solves the characteristic
/// problem F_uv = -(f^2 b / 4) F with F = 1/2 on both null rays from x. The box scheme
/// is second order and exact on the characteristics.
class GoursatKernel {
 public:
  GoursatKernel(const hadamard::ScalarOperator& P, geometry::Point x, double extent, int cells);

  double extent() const { return extent_; }
  int cells() const { return cells_; }
  double step() const { return du_; }
  const geometry::Point& base() const { return x_; }

  /// F at the node u = i du, v = j du.
  double node(int i, int j) const { return F_[static_cast<std::size_t>(i) * (cells_ + 1) + j]; }
  /// Spacetime point of the node (theta not wrapped).
  geometry::Point point(int i, int j) const;
  /// F(x, y) by bilinear interpolation; zero outside the future cone.
  double operator()(const geometry::Point& y) const;

 private:
  double time_of(double eta) const;

  hadamard::ScalarOperator P_;
  geometry::Point x_;
  double extent_, du_, eta_x_;
  int cells_;
  std::vector<double> F_;
};

}  // namespace greenlab::cauchy
