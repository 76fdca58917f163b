#pragma once

#include "greenlab/geometry/spacetime.hpp"
#include "greenlab/riesz/riesz.hpp"

namespace greenlab::riesz {

struct CoordBox {
  double t_lo = 0.0, t_hi = 0.0;
  double theta_lo = 0.0, theta_hi = 0.0;
};

/// Compactly supported function on a model spacetime, supported in a coordinate box.
class DomainFunction {
 public:
  virtual ~DomainFunction() = default;
  virtual double value(const geometry::Point& p) const = 0;
  virtual CoordBox support() const = 0;
};

/// Bump of coordinate radius rho about `center` in (t, theta). The exponential
/// profile is smooth; the polynomial profile (1-s)^p has 2p-1 continuous
/// derivatives and tame derivative growth, which is what finite differences need.
class DomainBump final : public DomainFunction {
 public:
  enum class Profile { Exponential, Polynomial };
  DomainBump(const geometry::Spacetime& s, geometry::Point center, double radius,
             double amplitude = 1.0, Profile profile = Profile::Exponential, int power = 8);
  double value(const geometry::Point& p) const override;
  CoordBox support() const override;

 private:
  geometry::Spacetime space_;
  geometry::Point center_;
  double radius_, amplitude_;
  Profile profile_;
  int power_;
};

struct DomainPairOptions {
  int nodes = 48;          // tensor Gauss-Legendre nodes per direction
  double fd_step = 0.02;   // coarse finite-difference step for box^k in the tangent space
  int steps = 512;         // RK4 steps for each geodesic
  double grade = 3.0;
};

/// R^Omega(alpha, x)[phi] = R(alpha)[(mu_x phi) o exp_x], continued with depth k.
double riesz_domain_pair(const geometry::Spacetime& s, const geometry::Point& x, Sign sign,
                         double alpha, const DomainFunction& phi, int depth,
                         const DomainPairOptions& opt = {});

/// For alpha > 2: integral of C(alpha,2) Gamma_x^((alpha-2)/2) phi dV over J^Omega(x),
/// computed in (t, theta) coordinates.
double riesz_domain_direct(const geometry::Spacetime& s, const geometry::Point& x, Sign sign,
                           double alpha, const DomainFunction& phi,
                           const DomainPairOptions& opt = {});

}  // namespace greenlab::riesz
