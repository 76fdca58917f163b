#include "greenlab/cauchy/green.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "greenlab/error.hpp"
#include "greenlab/geometry/causal.hpp"

namespace greenlab::cauchy {

using geometry::Point;
using geometry::Spacetime;

double symplectic_form(const DiscreteGreen& plus, const DiscreteGreen& minus,
                       const GridSection& phi, const GridSection& psi) {
  if (plus.sign() != GreenSign::Plus || minus.sign() != GreenSign::Minus)
    throw DomainError("symplectic_form: expects (G_+, G_-)");
  return integrate(plus.apply(phi) - minus.apply(phi), psi);
}

bool Region::contains(const Point& p) const {
  if (p.t < t_lo || p.t > t_hi) return false;
  return std::any_of(arcs.begin(), arcs.end(),
                     [&](const auto& a) { return p.theta >= a.first && p.theta <= a.second; });
}

void validate_causally_compatible(const Spacetime& s, const Region& omega, int samples) {
  if (omega.arcs.empty() || !(omega.t_hi > omega.t_lo))
    throw CompatibilityError("region is empty");
  struct Sample {
    Point p;
    std::size_t arc;
  };
  std::vector<Sample> pts;
  for (std::size_t a = 0; a < omega.arcs.size(); ++a) {
    const auto [lo, hi] = omega.arcs[a];
    if (!(hi > lo)) throw CompatibilityError("region arc with empty interior");
    if (s.period() > 0.0 && hi - lo >= s.period()) throw CompatibilityError("region arc wraps the circle");
    for (int i = 0; i < samples; ++i)
      for (int j = 0; j < samples; ++j) {
        const double t = omega.t_lo + (omega.t_hi - omega.t_lo) * (i + 0.5) / samples;
        const double th = lo + (hi - lo) * (j + 0.5) / samples;
        pts.push_back({{t, th}, a});
      }
  }
  for (const Sample& p : pts) {
    for (const Sample& q : pts) {
      if (q.p.t < p.p.t) continue;
      const bool ambient = geometry::causally_leq(s, {p.p.t, s.wrap(p.p.theta)}, {q.p.t, s.wrap(q.p.theta)});
      // inside one arc the causal curves of the region are those of the covering strip
      const bool intrinsic =
          p.arc == q.arc &&
          std::abs(q.p.theta - p.p.theta) <= s.conformal_time(q.p.t) - s.conformal_time(p.p.t) + 1e-12;
      if (ambient != intrinsic) {
        std::ostringstream os;
        os << "region is not causally compatible: (" << p.p.t << ", " << p.p.theta << ") and ("
           << q.p.t << ", " << q.p.theta << ") are causally related in the spacetime but not in the region";
        throw CompatibilityError(os.str());
      }
    }
  }
}

GridSection restrict_green(const DiscreteGreen& g, const Region& omega, const GridSection& phi) {
  validate_causally_compatible(g.grid().space(), omega);
  const Grid& grid = g.grid();
  for (int i = 0; i < grid.nt(); ++i)
    for (int j = 0; j < grid.ntheta(); ++j)
      if (phi(i, j) != 0.0 && !omega.contains(grid.point(i, j)))
        throw DomainError("restrict_green: argument is not supported in the region");
  GridSection u = g.apply(phi);
  for (int i = 0; i < grid.nt(); ++i)
    for (int j = 0; j < grid.ntheta(); ++j)
      if (!omega.contains(grid.point(i, j))) u(i, j) = 0.0;
  return u;
}

GridSection conformal_green(const DiscreteGreen& g, const std::function<double(const Point&)>& f_conf,
                            const GridSection& phi) {
  const Grid& grid = g.grid();
  double lo = INFINITY;
  for (int i = 0; i < grid.nt(); ++i)
    for (int j = 0; j < grid.ntheta(); ++j) lo = std::min(lo, f_conf(grid.point(i, j)));
  if (!(lo > 0.0)) throw DomainError("conformal_green: conformal factor must be positive");
  return g.apply(phi.multiplied(f_conf));
}

double Smoothstep::operator()(double t) const {
  const double x = std::clamp((t - a) / (b - a), 0.0, 1.0);
  return x * x * x * x * (35.0 + x * (-84.0 + x * (70.0 - 20.0 * x)));
}

double Smoothstep::d1(double t) const {
  const double x = (t - a) / (b - a);
  if (x <= 0.0 || x >= 1.0) return 0.0;
  const double y = x * (1.0 - x);
  return 140.0 * y * y * y / (b - a);
}

double Smoothstep::d2(double t) const {
  const double x = (t - a) / (b - a);
  if (x <= 0.0 || x >= 1.0) return 0.0;
  const double y = x * (1.0 - x);
  return 420.0 * y * y * (1.0 - 2.0 * x) / ((b - a) * (b - a));
}

TimeSliceSplit time_slice_decompose(const DiscreteGreen& plus, const DiscreteGreen& minus,
                                    const GridSection& phi, const Slab& slab) {
  if (plus.sign() != GreenSign::Plus || minus.sign() != GreenSign::Minus)
    throw DomainError("time_slice_decompose: expects (G_+, G_-)");
  const Grid& g = phi.grid();
  const auto& s = g.space();
  const SupportBox b = phi.support();
  if (b.empty || (g.t(b.i_lo) > slab.t_lo && g.t(b.i_hi) < slab.t_hi))
    return {phi, GridSection(phi.grid_ptr())};

  // one cell of clearance on each side; every transition happens in between
  const Smoothstep step{slab.t_lo + g.dt(), slab.t_hi - g.dt()};
  if ((step.b - step.a) / g.dt() < 8.0)
    throw DomainError("time_slice_decompose: slab too thin, the cut-off needs at least 8 cells");

  // f_+ = rho_+ = step, f_- = rho_- = 1 - step
  const GridSection fplus = phi.multiplied([&](const Point& p) { return step(p.t); });
  const GridSection fminus = phi - fplus;
  const GridSection u_plus = minus.apply(fplus);   // G_-(f_+ phi)
  const GridSection u_minus = plus.apply(fminus);  // G_+(f_- phi)

  TimeSliceSplit out{GridSection(phi.grid_ptr()), GridSection(phi.grid_ptr())};
  for (int i = 0; i < g.nt(); ++i) {
    const double t = g.t(i);
    const double r = step(t), r1 = step.d1(t), r2 = step.d2(t);
    const double damp = s.df(t) / s.f(t);
    for (int j = 0; j < g.ntheta(); ++j) {
      const double up = u_plus(i, j), um = u_minus(i, j);
      out.chi(i, j) = r * up + (1.0 - r) * um;
      if (r1 == 0.0 && r2 == 0.0) {
        out.psi(i, j) = (1.0 - r * r - (1.0 - r) * (1.0 - r)) * phi(i, j);
        continue;
      }
      auto dt_of = [&](const GridSection& u) {
        if (i == 0 || i == g.nt() - 1) throw WindowError("time_slice_decompose: slab touches the window edge");
        return (u(i + 1, j) - u(i - 1, j)) / (2.0 * g.dt());
      };
      // P(rho u) = rho P u + rho'' u + 2 rho' u_t + (f'/f) rho' u, and rho_- = 1 - rho_+
      const double comm_plus = r2 * up + 2.0 * r1 * dt_of(u_plus) + damp * r1 * up;
      const double comm_minus = -r2 * um - 2.0 * r1 * dt_of(u_minus) - damp * r1 * um;
      out.psi(i, j) = (1.0 - r * r - (1.0 - r) * (1.0 - r)) * phi(i, j) - comm_plus - comm_minus;
    }
  }
  return out;
}

}  // namespace greenlab::cauchy
