#pragma once

#include <map>
#include <tuple>
#include <vector>

namespace greenlab::riesz {

/// Symbolic box^k of the bump h(s) = exp(-1/(1-s)), s = |y|^2/rho^2 (Euclidean),
/// on R^n with box = d_0^2 - sum_i d_i^2. Each term is
///   coef * q^m * s^a * u^b * h(s),   q = gamma(y) = y_0^2 - |y_hat|^2,  u = 1/(1-s).
/// For n = 1 the operator is d^2/dy^2, so box^k gives the 2k-th derivative.
class BumpBoxPowers {
 public:
  BumpBoxPowers(int n, double rho, int max_k);

  int dim() const { return n_; }
  int max_k() const { return static_cast<int>(levels_.size()) - 1; }
  std::size_t term_count(int k) const { return levels_.at(k).size(); }

  /// box^k h evaluated at y (relative to the bump center); 0 outside the unit ball.
  double eval(int k, const double* y) const;

 private:
  using Key = std::tuple<int, int, int>;  // (m, a, b)
  using Poly = std::map<Key, double>;
  static Poly d_ds(const Poly& g);
  Poly apply_box(const Poly& g) const;

  int n_;
  double rho_;
  std::vector<std::vector<std::pair<Key, double>>> levels_;
};

/// exp(-1/(1-s)) for s < 1, else 0.
double bump_profile(double s);

}  // namespace greenlab::riesz
