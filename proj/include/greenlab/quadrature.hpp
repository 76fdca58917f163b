#pragma once

#include <cmath>
#include <functional>
#include <vector>

namespace greenlab::quad {

/// Gauss-Legendre rule mapped to [a, b].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

Rule gauss_legendre(int count, double a = 0.0, double b = 1.0);

struct AdaptiveOptions {
  double rel_tol = 1e-11;
  double abs_tol = 1e-15;
  unsigned max_depth = 18;
};

/// Adaptive Gauss-Kronrod (7/15) on [a, b]. Throws ConvergenceError if the
/// error estimate exceeds 100 * max(rel_tol * L1, abs_tol) after max_depth
/// bisections (L1 = integral of |f|).
double adaptive(const std::function<double(double)>& f, double a, double b,
                const AdaptiveOptions& opt = {});

/// Integral over [a, b] of a function that behaves like a power of the
/// distance to one or both endpoints. Substitutes x = end + (mid-end)*w^grade
/// on each half so the adaptive rule sees a smooth integrand.
double graded(const std::function<double(double)>& f, double a, double b, bool singular_a,
              bool singular_b, double grade, const AdaptiveOptions& opt = {});

/// Fixed-order counterpart of `graded`: Gauss-Legendre with `nodes` points on
/// each graded half (or on [a, b] when neither end is singular).
double graded_fixed(const std::function<double(double)>& f, double a, double b, bool singular_a,
                    bool singular_b, double grade, int nodes);

}  // namespace greenlab::quad
