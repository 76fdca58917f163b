#pragma once

#include <array>
#include <vector>

#include "greenlab/geometry/spacetime.hpp"

namespace greenlab::geometry {

inline constexpr int kDefaultSteps = 512;

/// End point of the geodesic with initial velocity v after unit affine time,
/// together with d(end)/d(v) in coordinates.
struct GeodesicFlow {
  Point end;  // theta is not wrapped
  std::array<std::array<double, 2>, 2> jacobian{};
};

GeodesicFlow geodesic_flow(const Spacetime& s, const TangentVector& v, int steps = kDefaultSteps);

Point exp_map(const Spacetime& s, const Point& p, const TangentVector& v,
              int steps = kDefaultSteps);

struct ShootingOptions {
  double tol = 1e-12;
  int max_iterations = 60;
  int steps = kDefaultSteps;
};

TangentVector exp_inverse(const Spacetime& s, const Point& p, const Point& q,
                          const ShootingOptions& opt = {});

/// Gamma(p, q) = -<v, v> with v = exp_inverse(p, q); positive for timelike pairs.
double world_function(const Spacetime& s, const Point& p, const Point& q,
                      const ShootingOptions& opt = {});

/// mu_p(q): volume density of exp_p relative to orthonormal coordinates on T_pM.
double density_mu(const Spacetime& s, const Point& p, const Point& q,
                  const ShootingOptions& opt = {});

struct RaySample {
  Point point;  // exp_p(s v), theta not wrapped
  double mu = 1.0;
};

/// Samples exp_p(s v) and mu_p there for each s in `fractions` (all in (0, 1]),
/// from a single integration of the geodesic and its variational equation.
std::vector<RaySample> ray_samples(const Spacetime& s, const TangentVector& v,
                                   const std::vector<double>& fractions,
                                   int steps = kDefaultSteps);

}  // namespace greenlab::geometry
