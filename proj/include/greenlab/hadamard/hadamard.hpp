#pragma once

#include <vector>

#include "greenlab/geometry/geodesic.hpp"
#include "greenlab/hadamard/operator.hpp"
#include "greenlab/parallel.hpp"

namespace greenlab::hadamard {

inline constexpr int kDefaultMaxOrder = 6;

struct HadamardOptions {
  double reach = 0.3;       // coordinate radius about x on which V_0..V_K are wanted
  double spacing = 0.05;    // node spacing h in t and theta
  int quad_nodes = 64;      // Gauss-Legendre nodes for the s-integral
  int steps = geometry::kDefaultSteps;
  int max_order = kDefaultMaxOrder;
  Backend backend = Backend::OpenMP;
};

/// V_0..V_K sampled along s -> exp_x(s v) for each direction, plus V_k(x, x).
struct HadamardSeries {
  geometry::Point x;
  std::vector<geometry::TangentVector> directions;
  std::vector<double> s;
  std::vector<std::vector<std::vector<double>>> values;  // [direction][k][sample]
  std::vector<double> diagonal;
};

/// Hadamard coefficients V_k(x, .) on a square node grid centred at x.
///
/// Each node y stores exp_x^{-1}(y), mu_x(y) and the ray points Phi(y, s_q) with
/// their densities. V_0 = mu^{-1/2}; V_k follows from the integral recursion with
/// P V_{k-1} formed by central differences on the grid and interpolated to the
/// ray points by 4x4 Lagrange interpolation. Each level loses about three rims of
/// nodes, so the grid half-width is reach + (3K + 3) h.
class HadamardExpansion {
 public:
  HadamardExpansion(ScalarOperator P, geometry::Point x, int K, HadamardOptions opt = {});

  int order() const { return K_; }
  const geometry::Point& base() const { return x_; }
  const ScalarOperator& op() const { return P_; }
  double spacing() const { return h_; }

  /// V_k(x, y), interpolated between nodes. Throws WindowError outside the valid set.
  double coefficient(int k, const geometry::Point& y) const;
  /// V_k(x, x) by the diagonal rule -(P V_{k-1})(x).
  double diagonal(int k) const;
  /// V_k(x, x) as the s -> 0 limit of the recursion values on the neighbouring nodes.
  double diagonal_limit(int k) const;
  /// Largest coordinate radius about x on which V_k is available at every node.
  double valid_radius(int k) const;

  /// sup over nodes within `radius` of |<grad Gamma, grad V_k> - (box Gamma/2 - 2 + 2k) V_k - 2k P V_{k-1}|.
  double transport_residual(int k, double radius) const;

  HadamardSeries series(const std::vector<geometry::TangentVector>& dirs, int samples) const;

  /// sum_{j < terms} V_j(x, y) C(2 + 2j, 2) Gamma(x, y)^j for y inside the future cone.
  double truncated(const geometry::Point& y, int terms) const;

 private:
  int index(int i, int j) const { return (i + M_) * n_ + (j + M_); }
  bool on_grid(int i, int j) const { return i >= -M_ && i <= M_ && j >= -M_ && j <= M_; }
  double at(const std::vector<double>& a, int i, int j) const;
  // Cubic Lagrange interpolation in grid units relative to x; NaN if a stencil node is invalid.
  double interpolate(const std::vector<double>& a, double u, double w) const;
  std::vector<double> apply_P(const std::vector<double>& v) const;
  void build_rays();
  void build_levels();

  ScalarOperator P_;
  geometry::Point x_;
  int K_;
  HadamardOptions opt_;
  double h_, half_width_ = 0.0;
  int M_, n_;
  std::vector<double> s_nodes_, s_weights_;
  std::vector<double> gamma_, mu_;   // per node
  std::vector<double> ray_u_, ray_w_, ray_sqrt_mu_;  // per node x quadrature node
  std::vector<std::vector<double>> V_, PV_;          // NaN marks unavailable nodes
};

HadamardSeries hadamard_coefficients(const ScalarOperator& P, const geometry::Point& x, int K,
                                     const std::vector<geometry::TangentVector>& dirs,
                                     int samples = 16, const HadamardOptions& opt = {});

double transport_residual(const HadamardExpansion& e, int k, double radius);

/// Builds an expansion whose grid reaches y and evaluates the truncated sum with
/// `N_plus_k` terms (n = 2).
double truncated_fundamental_solution(const ScalarOperator& P, const geometry::Point& x,
                                      const geometry::Point& y, int N_plus_k,
                                      HadamardOptions opt = {});

}  // namespace greenlab::hadamard
