#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

namespace greenlab::geometry {

enum class FiberKind { Line, Circle, Arc };
enum class WarpKind { Constant, Cosh, Tabulated };

struct Point {
  double t = 0.0;
  double theta = 0.0;
};

/// Components in the coordinate basis (d/dt, d/dtheta) at `base`.
struct TangentVector {
  Point base;
  double dt = 0.0;
  double dtheta = 0.0;
};

/// Warped product -dt^2 + f(t)^2 dtheta^2 on a compute window I x S.
/// theta is arclength on the fiber, so a circle of radius R has period 2 pi R.
class Spacetime {
 public:
  static Spacetime minkowski(double t_min = -20.0, double t_max = 20.0);
  static Spacetime cylinder(double radius = 1.0, double t_min = -20.0, double t_max = 20.0);
  static Spacetime flrw_cosh(FiberKind fiber = FiberKind::Line, double radius = 1.0,
                             double t_min = -3.0, double t_max = 3.0);
  /// Arc [theta_a, theta_b] of a circle of radius R, flat warp.
  static Spacetime arc(double radius, double theta_a, double theta_b, double t_min = -20.0,
                       double t_max = 20.0);
  /// Warp sampled uniformly on [t_min, t_max] and interpolated by a cubic B-spline.
  static Spacetime tabulated(FiberKind fiber, double radius, double t_min, double t_max,
                             std::vector<double> samples);

  FiberKind fiber() const { return fiber_; }
  WarpKind warp() const { return warp_; }
  double radius() const { return radius_; }
  double t_min() const { return t_min_; }
  double t_max() const { return t_max_; }
  double arc_begin() const { return arc_a_; }
  double arc_end() const { return arc_b_; }
  bool flat() const { return warp_ == WarpKind::Constant; }
  std::string describe() const;

  double f(double t) const;
  double df(double t) const;
  double ddf(double t) const;
  double min_f() const;

  /// eta(t) = integral_0^t ds / f(s); null curves satisfy |dtheta| = d eta.
  double conformal_time(double t) const;

  /// Scalar curvature 2 f''/f of the model.
  double scal(const Point& p) const { return 2.0 * ddf(p.t) / f(p.t); }
  /// ric(v,v) = (scal/2) <v,v> in two dimensions.
  double ric(const TangentVector& v) const;
  double metric(const TangentVector& v, const TangentVector& w) const;

  /// Fiber period (0 if the fiber is not a circle).
  double period() const;
  double wrap(double theta) const;
  /// Signed displacement from `from` to `to` along the nearest lift.
  double fiber_delta(double from, double to) const;
  double fiber_distance(double a, double b) const;

  bool in_window(const Point& p) const;
  void require_in_window(const Point& p, const char* what) const;

  /// Coordinate radius of the region treated as geodesically starshaped about a point.
  double starshaped_radius() const { return starshaped_radius_; }
  Spacetime with_starshaped_radius(double r) const;

 private:
  Spacetime() = default;

  FiberKind fiber_ = FiberKind::Line;
  WarpKind warp_ = WarpKind::Constant;
  double radius_ = 1.0;
  double t_min_ = -20.0;
  double t_max_ = 20.0;
  double arc_a_ = 0.0;
  double arc_b_ = 0.0;
  double starshaped_radius_ = std::numeric_limits<double>::infinity();
  struct Table;
  std::shared_ptr<const Table> table_;
};

}  // namespace greenlab::geometry
