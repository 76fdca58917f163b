#include "greenlab/geometry/spacetime.hpp"

#include <algorithm>
#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "greenlab/error.hpp"
#include "greenlab/quadrature.hpp"

namespace greenlab::geometry {

struct Spacetime::Table {
  boost::math::interpolators::cardinal_cubic_b_spline<double> spline;
  std::vector<double> eta;  // conformal time on a fine uniform grid
  double t0 = 0.0;
  double h = 0.0;
  double eta_zero = 0.0;  // value of the cumulative table at t = 0 (or the clamp)
  double min_f = 0.0;
};

Spacetime Spacetime::minkowski(double t_min, double t_max) {
  Spacetime s;
  s.t_min_ = t_min;
  s.t_max_ = t_max;
  return s;
}

Spacetime Spacetime::cylinder(double radius, double t_min, double t_max) {
  if (!(radius > 0.0)) throw DomainError("cylinder radius must be positive");
  Spacetime s = minkowski(t_min, t_max);
  s.fiber_ = FiberKind::Circle;
  s.radius_ = radius;
  return s;
}

Spacetime Spacetime::flrw_cosh(FiberKind fiber, double radius, double t_min, double t_max) {
  if (fiber == FiberKind::Arc) throw DomainError("flrw_cosh: use a line or circle fiber");
  Spacetime s = minkowski(t_min, t_max);
  s.fiber_ = fiber;
  s.radius_ = radius;
  s.warp_ = WarpKind::Cosh;
  s.starshaped_radius_ = 1.5;
  return s;
}

Spacetime Spacetime::arc(double radius, double theta_a, double theta_b, double t_min,
                         double t_max) {
  if (!(theta_b > theta_a)) throw DomainError("arc: empty angular range");
  if (theta_b - theta_a >= 2.0 * std::numbers::pi * radius)
    throw DomainError("arc: range covers the whole circle");
  Spacetime s = minkowski(t_min, t_max);
  s.fiber_ = FiberKind::Arc;
  s.radius_ = radius;
  s.arc_a_ = theta_a;
  s.arc_b_ = theta_b;
  return s;
}

Spacetime Spacetime::tabulated(FiberKind fiber, double radius, double t_min, double t_max,
                               std::vector<double> samples) {
  if (samples.size() < 4) throw DomainError("tabulated warp needs at least 4 samples");
  if (std::any_of(samples.begin(), samples.end(), [](double v) { return !(v > 0.0); }))
    throw DomainError("tabulated warp must be positive");
  Spacetime s = minkowski(t_min, t_max);
  s.fiber_ = fiber;
  s.radius_ = radius;
  s.warp_ = WarpKind::Tabulated;
  s.starshaped_radius_ = 1.0;
  const double h = (t_max - t_min) / static_cast<double>(samples.size() - 1);
  auto table = std::make_shared<Table>(Table{
      boost::math::interpolators::cardinal_cubic_b_spline<double>(samples.begin(), samples.end(),
                                                                  t_min, h),
      {}, t_min, 0.0, 0.0, 0.0});
  const int fine = 4096;
  table->h = (t_max - t_min) / fine;
  table->eta.assign(fine + 1, 0.0);
  table->min_f = table->spline(t_min);
  for (int i = 0; i < fine; ++i) {
    const double a = t_min + i * table->h;
    const quad::Rule rule = quad::gauss_legendre(4, a, a + table->h);
    double acc = 0.0;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j)
      acc += rule.weights[j] / table->spline(rule.nodes[j]);
    table->eta[i + 1] = table->eta[i] + acc;
    table->min_f = std::min(table->min_f, table->spline(a + table->h));
  }
  if (!(table->min_f > 0.0)) throw DomainError("tabulated warp interpolant is not positive");
  const double tz = std::clamp(0.0, t_min, t_max);
  const double pos = (tz - t_min) / table->h;
  const int i0 = std::min(static_cast<int>(pos), fine - 1);
  table->eta_zero = table->eta[i0] + (pos - i0) * (table->eta[i0 + 1] - table->eta[i0]);
  s.table_ = table;
  return s;
}

std::string Spacetime::describe() const {
  std::ostringstream os;
  switch (warp_) {
    case WarpKind::Constant: os << "f=1"; break;
    case WarpKind::Cosh: os << "f=cosh"; break;
    case WarpKind::Tabulated: os << "f=table"; break;
  }
  switch (fiber_) {
    case FiberKind::Line: os << ", line"; break;
    case FiberKind::Circle: os << ", circle R=" << radius_; break;
    case FiberKind::Arc: os << ", arc [" << arc_a_ << "," << arc_b_ << "]"; break;
  }
  os << ", t in [" << t_min_ << "," << t_max_ << "]";
  return os.str();
}

double Spacetime::f(double t) const {
  switch (warp_) {
    case WarpKind::Constant: return 1.0;
    case WarpKind::Cosh: return std::cosh(t);
    case WarpKind::Tabulated: return table_->spline(t);
  }
  return 1.0;
}

double Spacetime::df(double t) const {
  switch (warp_) {
    case WarpKind::Constant: return 0.0;
    case WarpKind::Cosh: return std::sinh(t);
    case WarpKind::Tabulated: return table_->spline.prime(t);
  }
  return 0.0;
}

double Spacetime::ddf(double t) const {
  switch (warp_) {
    case WarpKind::Constant: return 0.0;
    case WarpKind::Cosh: return std::cosh(t);
    case WarpKind::Tabulated: return table_->spline.double_prime(t);
  }
  return 0.0;
}

double Spacetime::min_f() const {
  switch (warp_) {
    case WarpKind::Constant: return 1.0;
    case WarpKind::Cosh:
      if (t_min_ <= 0.0 && t_max_ >= 0.0) return 1.0;
      return std::min(std::cosh(t_min_), std::cosh(t_max_));
    case WarpKind::Tabulated: return table_->min_f;
  }
  return 1.0;
}

double Spacetime::conformal_time(double t) const {
  switch (warp_) {
    case WarpKind::Constant: return t;
    case WarpKind::Cosh: return 2.0 * std::atan(std::tanh(0.5 * t));
    case WarpKind::Tabulated: {
      const Table& tb = *table_;
      const double pos = (std::clamp(t, t_min_, t_max_) - t_min_) / tb.h;
      const int last = static_cast<int>(tb.eta.size()) - 2;
      const int i0 = std::clamp(static_cast<int>(pos), 0, last);
      const double a = t_min_ + i0 * tb.h;
      double acc = tb.eta[i0];
      const double tc = std::clamp(t, t_min_, t_max_);
      if (tc > a) {
        const quad::Rule rule = quad::gauss_legendre(4, a, tc);
        for (std::size_t j = 0; j < rule.nodes.size(); ++j)
          acc += rule.weights[j] / tb.spline(rule.nodes[j]);
      }
      return acc - tb.eta_zero;
    }
  }
  return t;
}

double Spacetime::metric(const TangentVector& v, const TangentVector& w) const {
  const double ft = f(v.base.t);
  return -v.dt * w.dt + ft * ft * v.dtheta * w.dtheta;
}

double Spacetime::ric(const TangentVector& v) const {
  return 0.5 * scal(v.base) * metric(v, v);
}

double Spacetime::period() const {
  return fiber_ == FiberKind::Circle ? 2.0 * std::numbers::pi * radius_ : 0.0;
}

double Spacetime::wrap(double theta) const {
  if (fiber_ != FiberKind::Circle) return theta;
  const double L = period();
  double r = std::fmod(theta, L);
  if (r < 0.0) r += L;
  return r;
}

double Spacetime::fiber_delta(double from, double to) const {
  double d = to - from;
  if (fiber_ != FiberKind::Circle) return d;
  const double L = period();
  d = std::remainder(d, L);
  return d;
}

double Spacetime::fiber_distance(double a, double b) const {
  return std::abs(fiber_delta(a, b));
}

bool Spacetime::in_window(const Point& p) const {
  if (!(p.t >= t_min_ && p.t <= t_max_)) return false;
  if (fiber_ == FiberKind::Arc && !(p.theta >= arc_a_ && p.theta <= arc_b_)) return false;
  return std::isfinite(p.theta);
}

void Spacetime::require_in_window(const Point& p, const char* what) const {
  if (!in_window(p)) {
    std::ostringstream os;
    os << what << ": point (" << p.t << ", " << p.theta << ") outside window " << describe();
    throw WindowError(os.str());
  }
}

Spacetime Spacetime::with_starshaped_radius(double r) const {
  if (!(r > 0.0)) throw DomainError("starshaped radius must be positive");
  Spacetime s = *this;
  s.starshaped_radius_ = r;
  return s;
}

}  // namespace greenlab::geometry
