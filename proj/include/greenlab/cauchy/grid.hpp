#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "greenlab/geometry/spacetime.hpp"

namespace greenlab::cauchy {

/// Default Courant safety factor: dt <= c * dtheta * min f.
inline constexpr double kSafeCourant = 0.8;

/// Structured (t, theta) grid. Circle fibers are periodic with theta_j = j * period / N;
/// line and arc fibers carry Dirichlet walls at the first and last column.
class Grid {
 public:
  static std::shared_ptr<const Grid> periodic(geometry::Spacetime s, double t_a, double t_b, int nt,
                                              int ntheta, double courant_limit = kSafeCourant);
  static std::shared_ptr<const Grid> interval(geometry::Spacetime s, double t_a, double t_b,
                                              double theta_a, double theta_b, int nt, int ntheta,
                                              double courant_limit = kSafeCourant);

  const geometry::Spacetime& space() const { return space_; }
  int nt() const { return nt_; }
  int ntheta() const { return ntheta_; }
  double dt() const { return dt_; }
  double dtheta() const { return dtheta_; }
  double t_a() const { return t_a_; }
  double t_b() const { return t_b_; }
  double theta_a() const { return theta_a_; }
  double theta_b() const { return theta_b_; }
  bool is_periodic() const { return periodic_; }
  double courant() const { return courant_; }
  double courant_limit() const { return limit_; }

  double t(int i) const { return t_a_ + i * dt_; }
  double theta(int j) const { return theta_a_ + j * dtheta_; }
  geometry::Point point(int i, int j) const { return {t(i), theta(j)}; }
  std::size_t size() const { return static_cast<std::size_t>(nt_) * ntheta_; }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * ntheta_ + j; }
  /// Trapezoid weight of node (i, j) for integrals against dV = f dt dtheta.
  double volume_weight(int i, int j) const;
  /// Trapezoid weight of column j for slice integrals against dA = f dtheta (without f).
  double column_weight(int j) const;
  /// Index of the slice nearest to t.
  int row_of(double t) const;

 private:
  Grid(geometry::Spacetime s, double t_a, double t_b, double theta_a, double theta_b, int nt,
       int ntheta, bool periodic, double limit);

  geometry::Spacetime space_;
  double t_a_, t_b_, theta_a_, theta_b_;
  int nt_, ntheta_;
  bool periodic_;
  double dt_, dtheta_, courant_, limit_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Index box holding every entry above `rel` times the maximum. On periodic grids
/// the column range is the shortest covering arc, so j_hi may exceed ntheta - 1.
struct SupportBox {
  bool empty = true;
  int i_lo = 0, i_hi = -1;
  int j_lo = 0, j_hi = -1;
};

class GridSection {
 public:
  explicit GridSection(GridPtr grid);
  static GridSection sample(GridPtr grid, const std::function<double(const geometry::Point&)>& fn);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  double& operator()(int i, int j) { return values_[grid_->index(i, j)]; }
  double operator()(int i, int j) const { return values_[grid_->index(i, j)]; }
  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }
  const double* row(int i) const { return values_.data() + grid_->index(i, 0); }
  double* row(int i) { return values_.data() + grid_->index(i, 0); }

  double max_abs() const;
  SupportBox support(double rel = 1e-14) const;
  bool all_finite() const;

  GridSection& operator+=(const GridSection& o);
  GridSection& operator-=(const GridSection& o);
  GridSection& operator*=(double c);
  /// Pointwise product with a function of the point.
  GridSection multiplied(const std::function<double(const geometry::Point&)>& fn) const;

 private:
  void require_same_grid(const GridSection& o) const;
  GridPtr grid_;
  std::vector<double> values_;
};

GridSection operator+(GridSection a, const GridSection& b);
GridSection operator-(GridSection a, const GridSection& b);
GridSection operator*(double c, GridSection a);

/// Trapezoid integral of a * b against dV = f(t) dt dtheta.
double integrate(const GridSection& a, const GridSection& b);

}  // namespace greenlab::cauchy
