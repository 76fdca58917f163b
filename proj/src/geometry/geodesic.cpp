#include "greenlab/geometry/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "greenlab/error.hpp"

namespace greenlab::geometry {

namespace {

// t, theta, t', theta', then two variation columns (dt, dtheta, dt', dtheta').
using State = std::array<double, 12>;

State rhs(const Spacetime& s, const State& y) {
  const double f = s.f(y[0]);
  const double fp = s.df(y[0]);
  const double fpp = s.ddf(y[0]);
  const double T = y[2];
  const double Th = y[3];
  State d{};
  d[0] = T;
  d[1] = Th;
  d[2] = -f * fp * Th * Th;
  d[3] = -2.0 * (fp / f) * T * Th;
  const double dlog = (f * fpp - fp * fp) / (f * f);
  for (int c = 0; c < 2; ++c) {
    const int o = 4 + 4 * c;
    const double a = y[o], A = y[o + 2], B = y[o + 3];
    d[o] = A;
    d[o + 1] = B;
    d[o + 2] = -(fp * fp + f * fpp) * Th * Th * a - 2.0 * f * fp * Th * B;
    d[o + 3] = -2.0 * dlog * T * Th * a - 2.0 * (fp / f) * (Th * A + T * B);
  }
  return d;
}

State initial(const TangentVector& v) {
  State y{};
  y[0] = v.base.t;
  y[1] = v.base.theta;
  y[2] = v.dt;
  y[3] = v.dtheta;
  y[6] = 1.0;   // d t' / d v^t
  y[11] = 1.0;  // d theta' / d v^theta
  return y;
}

void check_window(const Spacetime& s, const State& y) {
  Point p{y[0], y[1]};
  if (!std::isfinite(y[0]) || !std::isfinite(y[1])) throw WindowError("geodesic blew up");
  if (!s.in_window(p)) {
    std::ostringstream os;
    os << "geodesic left the compute window at (" << p.t << ", " << p.theta << ")";
    throw WindowError(os.str());
  }
}

template <class Visit>
void integrate(const Spacetime& s, const TangentVector& v, int steps, Visit&& visit) {
  if (steps < 1) throw DomainError("geodesic integration needs at least one step");
  const double h = 1.0 / steps;
  State y = initial(v);
  State dy = rhs(s, y);
  visit(0, y, dy);
  for (int i = 0; i < steps; ++i) {
    State k2, k3, k4, tmp;
    for (int j = 0; j < 12; ++j) tmp[j] = y[j] + 0.5 * h * dy[j];
    k2 = rhs(s, tmp);
    for (int j = 0; j < 12; ++j) tmp[j] = y[j] + 0.5 * h * k2[j];
    k3 = rhs(s, tmp);
    for (int j = 0; j < 12; ++j) tmp[j] = y[j] + h * k3[j];
    k4 = rhs(s, tmp);
    for (int j = 0; j < 12; ++j) y[j] += h / 6.0 * (dy[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    check_window(s, y);
    dy = rhs(s, y);
    visit(i + 1, y, dy);
  }
}

double mu_from(const Spacetime& s, double tp, double tq, double det, double scale2) {
  return s.f(tq) * std::abs(det) / (scale2 * s.f(tp));
}

}  // namespace

GeodesicFlow geodesic_flow(const Spacetime& s, const TangentVector& v, int steps) {
  s.require_in_window(v.base, "geodesic_flow");
  GeodesicFlow out;
  if (s.flat()) {
    out.end = {v.base.t + v.dt, v.base.theta + v.dtheta};
    State y{};
    y[0] = out.end.t;
    y[1] = out.end.theta;
    check_window(s, y);
    out.jacobian = {{{1.0, 0.0}, {0.0, 1.0}}};
    return out;
  }
  State last{};
  integrate(s, v, steps, [&](int, const State& y, const State&) { last = y; });
  out.end = {last[0], last[1]};
  out.jacobian = {{{last[4], last[8]}, {last[5], last[9]}}};
  return out;
}

Point exp_map(const Spacetime& s, const Point& p, const TangentVector& v, int steps) {
  TangentVector based = v;
  based.base = p;
  const GeodesicFlow flow = geodesic_flow(s, based, steps);
  return {flow.end.t, s.wrap(flow.end.theta)};
}

TangentVector exp_inverse(const Spacetime& s, const Point& p, const Point& q,
                          const ShootingOptions& opt) {
  s.require_in_window(p, "exp_inverse");
  s.require_in_window(q, "exp_inverse");
  const double dt = q.t - p.t;
  const double dth = s.fiber_delta(p.theta, q.theta);
  if (s.fiber() == FiberKind::Circle &&
      std::abs(dth) >= std::numbers::pi * s.radius() * (1.0 - 1e-14)) {
    throw AmbiguityError("exp_inverse: target lies on the cut locus of the circle fiber");
  }
  const double fp = s.f(p.t);
  if (std::hypot(dt, fp * dth) > s.starshaped_radius()) {
    throw DomainError("exp_inverse: target outside the starshaped radius");
  }
  TangentVector v{p, dt, dth};
  if (s.flat()) return v;

  const double target_t = q.t;
  const double target_th = p.theta + dth;
  const double tol = opt.tol * std::max(1.0, std::hypot(dt, dth));
  auto residual = [&](const GeodesicFlow& g) {
    return std::array<double, 2>{g.end.t - target_t, g.end.theta - target_th};
  };
  auto norm = [](const std::array<double, 2>& r) { return std::max(std::abs(r[0]), std::abs(r[1])); };

  GeodesicFlow g = geodesic_flow(s, v, opt.steps);
  auto r = residual(g);
  for (int it = 0; it < opt.max_iterations; ++it) {
    if (norm(r) <= tol) return v;
    const auto& J = g.jacobian;
    const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
    if (std::abs(det) < 1e-300) throw ConvergenceError("exp_inverse: singular Jacobian");
    const double d0 = -(J[1][1] * r[0] - J[0][1] * r[1]) / det;
    const double d1 = -(-J[1][0] * r[0] + J[0][0] * r[1]) / det;
    double lambda = 1.0;
    bool accepted = false;
    for (int half = 0; half < 30; ++half, lambda *= 0.5) {
      TangentVector trial{p, v.dt + lambda * d0, v.dtheta + lambda * d1};
      try {
        GeodesicFlow gt = geodesic_flow(s, trial, opt.steps);
        auto rt = residual(gt);
        if (norm(rt) < norm(r) || norm(rt) <= tol) {
          v = trial;
          g = gt;
          r = rt;
          accepted = true;
          break;
        }
      } catch (const WindowError&) {
      }
    }
    if (!accepted) break;
  }
  if (norm(r) <= tol) return v;
  throw ConvergenceError("exp_inverse: shooting did not converge");
}

double world_function(const Spacetime& s, const Point& p, const Point& q,
                      const ShootingOptions& opt) {
  const TangentVector v = exp_inverse(s, p, q, opt);
  return -s.metric(v, v);
}

double density_mu(const Spacetime& s, const Point& p, const Point& q,
                  const ShootingOptions& opt) {
  if (s.flat()) {
    s.require_in_window(p, "density_mu");
    s.require_in_window(q, "density_mu");
    return 1.0;
  }
  const TangentVector v = exp_inverse(s, p, q, opt);
  if (v.dt == 0.0 && v.dtheta == 0.0) return 1.0;
  const GeodesicFlow g = geodesic_flow(s, v, opt.steps);
  const auto& J = g.jacobian;
  return mu_from(s, p.t, g.end.t, J[0][0] * J[1][1] - J[0][1] * J[1][0], 1.0);
}

std::vector<RaySample> ray_samples(const Spacetime& s, const TangentVector& v,
                                   const std::vector<double>& fractions, int steps) {
  s.require_in_window(v.base, "ray_samples");
  std::vector<RaySample> out(fractions.size());
  if (s.flat()) {
    for (std::size_t i = 0; i < fractions.size(); ++i) {
      out[i].point = {v.base.t + fractions[i] * v.dt, v.base.theta + fractions[i] * v.dtheta};
      State y{};
      y[0] = out[i].point.t;
      y[1] = out[i].point.theta;
      check_window(s, y);
    }
    return out;
  }
  std::vector<State> ys(steps + 1), ds(steps + 1);
  integrate(s, v, steps, [&](int i, const State& y, const State& d) {
    ys[i] = y;
    ds[i] = d;
  });
  const double h = 1.0 / steps;
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    const double lam = fractions[i];
    if (!(lam > 0.0 && lam <= 1.0)) throw DomainError("ray_samples: fraction outside (0, 1]");
    const int k = std::min(static_cast<int>(lam / h), steps - 1);
    const double u = lam / h - k;
    // cubic Hermite on [k, k+1]
    const double h00 = (1 + 2 * u) * (1 - u) * (1 - u), h10 = u * (1 - u) * (1 - u);
    const double h01 = u * u * (3 - 2 * u), h11 = u * u * (u - 1);
    State y{};
    for (int j = 0; j < 12; ++j)
      y[j] = h00 * ys[k][j] + h10 * h * ds[k][j] + h01 * ys[k + 1][j] + h11 * h * ds[k + 1][j];
    out[i].point = {y[0], y[1]};
    const double det = y[4] * y[9] - y[8] * y[5];
    out[i].mu = mu_from(s, v.base.t, y[0], det, lam * lam);
  }
  return out;
}

}  // namespace greenlab::geometry
