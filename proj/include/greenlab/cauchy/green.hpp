#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "greenlab/cauchy/solver.hpp"

namespace greenlab::cauchy {

/// omega(phi, psi) = integral of (G_+ phi - G_- phi) psi dV.
double symplectic_form(const DiscreteGreen& plus, const DiscreteGreen& minus,
                       const GridSection& phi, const GridSection& psi);

/// Union of fiber arcs [lo, hi] (in the grid's theta coordinate) over a time interval.
struct Region {
  double t_lo = 0.0, t_hi = 0.0;
  std::vector<std::pair<double, double>> arcs;

  bool contains(const geometry::Point& p) const;
};

/// Compares the ambient causal relation with the one intrinsic to the region on a
/// sample of point pairs; throws CompatibilityError on the first disagreement.
void validate_causally_compatible(const geometry::Spacetime& s, const Region& omega,
                                  int samples = 16);

/// G_+ or G_- of the region: extend phi by zero, apply the ambient operator, restrict.
GridSection restrict_green(const DiscreteGreen& g, const Region& omega, const GridSection& phi);

/// G(f phi), a Green's operator of (1/f) P for a positive function f.
GridSection conformal_green(const DiscreteGreen& g,
                            const std::function<double(const geometry::Point&)>& f_conf,
                            const GridSection& phi);

struct Slab {
  double t_lo = 0.0, t_hi = 0.0;
};

struct TimeSliceSplit {
  GridSection psi, chi;  // phi = psi + P chi with psi supported in the slab
};

/// Splitting phi = psi + P chi with a septic smoothstep partition and cut-offs
/// across the slab. psi is assembled from the commutator [P, rho] in closed form,
/// so its support lies in the slab exactly.
TimeSliceSplit time_slice_decompose(const DiscreteGreen& plus, const DiscreteGreen& minus,
                                    const GridSection& phi, const Slab& slab);

/// 35x^4 - 84x^5 + 70x^6 - 20x^7 on [0, 1], clamped outside; with first and second derivatives.
/// Three continuous derivatives keep second differences of rho u second order.
struct Smoothstep {
  double a = 0.0, b = 1.0;
  double operator()(double t) const;
  double d1(double t) const;
  double d2(double t) const;
};

}  // namespace greenlab::cauchy
