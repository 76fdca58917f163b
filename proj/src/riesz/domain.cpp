#include "greenlab/riesz/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "greenlab/error.hpp"
#include "greenlab/geometry/geodesic.hpp"
#include "greenlab/quadrature.hpp"

namespace greenlab::riesz {

using geometry::Point;
using geometry::Spacetime;
using geometry::TangentVector;

DomainBump::DomainBump(const Spacetime& s, Point center, double radius, double amplitude,
                       Profile profile, int power)
    : space_(s), center_(center), radius_(radius), amplitude_(amplitude), profile_(profile),
      power_(power) {
  if (!(radius > 0.0)) throw DomainError("domain bump radius must be positive");
  if (power < 1) throw DomainError("polynomial bump power must be positive");
}

double DomainBump::value(const Point& p) const {
  const double dt = p.t - center_.t;
  const double dth = space_.fiber_delta(center_.theta, p.theta);
  const double sq = (dt * dt + dth * dth) / (radius_ * radius_);
  if (sq >= 1.0) return 0.0;
  if (profile_ == Profile::Exponential) return amplitude_ * bump_profile(sq);
  return amplitude_ * std::pow(1.0 - sq, power_);
}

CoordBox DomainBump::support() const {
  return {center_.t - radius_, center_.t + radius_, center_.theta - radius_,
          center_.theta + radius_};
}

namespace {

// (mu_x phi)(exp_x X) with X in an orthonormal frame at x: v^t = X0, v^theta = X1 / f(t_x).
struct Pullback {
  const Spacetime& s;
  Point x;
  const DomainFunction& phi;
  int steps;

  double operator()(const double* X) const {
    const TangentVector v{x, X[0], X[1] / s.f(x.t)};
    if (X[0] == 0.0 && X[1] == 0.0) return phi.value(x);
    try {
      // steps are calibrated per unit affine length
      const int n = std::max(16, static_cast<int>(std::ceil(steps * std::hypot(X[0], X[1]))));
      const geometry::GeodesicFlow g = geometry::geodesic_flow(s, v, n);
      const double val = phi.value({g.end.t, s.wrap(g.end.theta)});
      if (val == 0.0) return 0.0;
      const auto& J = g.jacobian;
      const double mu = s.f(g.end.t) * std::abs(J[0][0] * J[1][1] - J[0][1] * J[1][0]) / s.f(x.t);
      return mu * val;
    } catch (const WindowError&) {
      return 0.0;  // outside the compute window, hence outside supp phi
    }
  }
};

// Bounding box of exp_x^{-1}(supp phi) in the orthonormal frame at x.
std::pair<Interval, Interval> tangent_box(const Spacetime& s, const Point& x, const CoordBox& b) {
  double t0 = std::numeric_limits<double>::infinity(), t1 = -t0, x0 = t0, x1 = -t0;
  const int m = 32;
  auto visit = [&](double t, double th) {
    const TangentVector v = geometry::exp_inverse(s, x, {t, s.wrap(th)});
    const double X1 = v.dtheta * s.f(x.t);
    t0 = std::min(t0, v.dt);
    t1 = std::max(t1, v.dt);
    x0 = std::min(x0, X1);
    x1 = std::max(x1, X1);
  };
  for (int i = 0; i <= m; ++i) {
    const double u = static_cast<double>(i) / m;
    const double t = b.t_lo + u * (b.t_hi - b.t_lo);
    const double th = b.theta_lo + u * (b.theta_hi - b.theta_lo);
    visit(t, b.theta_lo);
    visit(t, b.theta_hi);
    visit(b.t_lo, th);
    visit(b.t_hi, th);
  }
  const double pad_t = 0.05 * (t1 - t0), pad_x = 0.05 * (x1 - x0);
  return {{t0 - pad_t, t1 + pad_t}, {x0 - pad_x, x1 + pad_x}};
}

}  // namespace

double riesz_domain_pair(const Spacetime& s, const Point& x, Sign sign, double alpha,
                         const DomainFunction& phi, int depth, const DomainPairOptions& opt) {
  s.require_in_window(x, "riesz_domain_pair");
  const auto [tb, xb] = tangent_box(s, x, phi.support());
  Pullback pb{s, x, phi, opt.steps};
  const double margin = 2.0 * depth * opt.fd_step;
  FiniteDifference psi(2, pb, {tb.lo - margin, tb.hi + margin}, {xb.lo - margin, xb.hi + margin},
                       opt.fd_step, std::max(depth, 0));
  PairOptions popt;
  popt.rule = PairOptions::Rule::Tensor;
  popt.nodes = opt.nodes;
  popt.grade = opt.grade;
  return riesz_pair({2, sign, alpha}, psi, depth, popt);
}

double riesz_domain_direct(const Spacetime& s, const Point& x, Sign sign, double alpha,
                           const DomainFunction& phi, const DomainPairOptions& opt) {
  if (!(alpha > 2.0)) throw DomainError("riesz_domain_direct: alpha must exceed n = 2");
  s.require_in_window(x, "riesz_domain_direct");
  const CoordBox b = phi.support();
  const double C = riesz_constant(alpha, 2);
  const double sg = sign == Sign::Plus ? 1.0 : -1.0;
  const double t_lo = sg > 0 ? std::max(x.t, b.t_lo) : b.t_lo;
  const double t_hi = sg > 0 ? b.t_hi : std::min(x.t, b.t_hi);
  if (!(t_hi > t_lo)) return 0.0;
  const double eta_x = s.conformal_time(x.t);
  // work with the lift of the support box nearest to x
  const double th_c = x.theta + s.fiber_delta(x.theta, 0.5 * (b.theta_lo + b.theta_hi));
  const double half = 0.5 * (b.theta_hi - b.theta_lo);

  const quad::Rule rt = quad::gauss_legendre(opt.nodes, t_lo, t_hi);
  double total = 0.0;
  for (std::size_t i = 0; i < rt.nodes.size(); ++i) {
    const double t = rt.nodes[i];
    const double reach = std::abs(s.conformal_time(t) - eta_x);
    if (reach <= 0.0) continue;
    // theta = x.theta + reach * xi, xi in [-1, 1] is the causal section of the slice
    const double lo = std::max(-1.0, (th_c - half - x.theta) / reach);
    const double hi = std::min(1.0, (th_c + half - x.theta) / reach);
    if (!(hi > lo)) continue;
    auto g = [&](double xi) {
      const Point q{t, s.wrap(x.theta + reach * xi)};
      const double val = phi.value(q);
      if (val == 0.0) return 0.0;
      const double G = geometry::world_function(s, x, q, {1e-12, 60, opt.steps});
      return G > 0.0 ? C * std::pow(G, 0.5 * (alpha - 2.0)) * val : 0.0;
    };
    // lo/hi at +-1 are the null boundary, where the integrand vanishes like a power
    const double inner = quad::graded_fixed(g, lo, hi, lo <= -1.0, hi >= 1.0, opt.grade, opt.nodes);
    total += rt.weights[i] * s.f(t) * reach * inner;
  }
  return total;
}

}  // namespace greenlab::riesz
