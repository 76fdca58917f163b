#include "greenlab/geometry/causal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "greenlab/error.hpp"
#include "greenlab/geometry/geodesic.hpp"

namespace greenlab::geometry {

namespace {

constexpr double kConeSlack = 1e-12;

double conformal_gap(const Spacetime& s, const Point& p, const Point& q) {
  return s.conformal_time(q.t) - s.conformal_time(p.t);
}

// Chained maximization of the length of causal polygons through fixed slices.
double chained_separation(const Spacetime& s, const Point& p, const Point& q,
                          const SeparationOptions& opt) {
  const double dth = s.fiber_delta(p.theta, q.theta);
  const int slices = std::max(opt.slices, 1);
  const int m = dth == 0.0 ? 1 : std::max(opt.fiber_samples, 2);
  auto theta_at = [&](int j) { return m == 1 ? 0.0 : dth * j / (m - 1); };
  auto step = [&](double t0, double th0, double t1, double th1) {
    const double ft = s.f(0.5 * (t0 + t1));
    const double g = (t1 - t0) * (t1 - t0) - ft * ft * (th1 - th0) * (th1 - th0);
    return g >= 0.0 ? std::sqrt(g) : -std::numeric_limits<double>::infinity();
  };
  const double ninf = -std::numeric_limits<double>::infinity();
  std::vector<double> best(m, ninf), next(m);
  const double h = (q.t - p.t) / (slices + 1);
  for (int j = 0; j < m; ++j) best[j] = step(p.t, 0.0, p.t + h, theta_at(j));
  for (int i = 1; i < slices; ++i) {
    const double t0 = p.t + i * h, t1 = t0 + h;
    for (int j = 0; j < m; ++j) {
      double b = ninf;
      for (int k = 0; k < m; ++k) {
        if (best[k] == ninf) continue;
        b = std::max(b, best[k] + step(t0, theta_at(k), t1, theta_at(j)));
      }
      next[j] = b;
    }
    best.swap(next);
  }
  double out = ninf;
  const double tl = p.t + slices * h;
  for (int k = 0; k < m; ++k) {
    if (best[k] == ninf) continue;
    out = std::max(out, best[k] + step(tl, theta_at(k), q.t, dth));
  }
  return std::max(out, 0.0);
}

}  // namespace

bool causally_leq(const Spacetime& s, const Point& p, const Point& q) {
  if (q.t < p.t) return false;
  const double d0 = s.fiber_distance(p.theta, q.theta);
  return d0 <= conformal_gap(s, p, q) + kConeSlack;
}

bool chronologically_less(const Spacetime& s, const Point& p, const Point& q) {
  if (q.t <= p.t) return false;
  return s.fiber_distance(p.theta, q.theta) < conformal_gap(s, p, q) - kConeSlack;
}

double time_separation(const Spacetime& s, const Point& p, const Point& q,
                       const SeparationOptions& opt) {
  if (!causally_leq(s, p, q)) return 0.0;
  if (q.t == p.t) return 0.0;
  try {
    const double g = world_function(s, p, q);
    return g > 0.0 ? std::sqrt(g) : 0.0;
  } catch (const Error&) {
  }
  return chained_separation(s, p, q, opt);
}

}  // namespace greenlab::geometry
