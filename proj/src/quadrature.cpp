#include "greenlab/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <numbers>
#include <sstream>

#include "greenlab/error.hpp"

namespace greenlab::quad {

Rule gauss_legendre(int count, double a, double b) {
  if (count < 1) throw DomainError("gauss_legendre: count must be positive");
  Rule rule;
  rule.nodes.resize(count);
  rule.weights.resize(count);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  for (int i = 0; i < (count + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (count + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 1; j <= count; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p2) / j;
      }
      dp = count * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = mid - half * x;
    rule.nodes[count - 1 - i] = mid + half * x;
    rule.weights[i] = half * w;
    rule.weights[count - 1 - i] = half * w;
  }
  return rule;
}

double adaptive(const std::function<double(double)>& f, double a, double b,
                const AdaptiveOptions& opt) {
  if (a == b) return 0.0;
  double err = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, opt.max_depth, opt.rel_tol, &err, &l1);
  const double allowed = std::max(opt.rel_tol * l1, opt.abs_tol);
  if (!std::isfinite(value) || err > 100.0 * allowed) {
    std::ostringstream os;
    os << "adaptive quadrature did not converge (error estimate " << err << ", target " << allowed
       << ")";
    throw ConvergenceError(os.str());
  }
  return value;
}

double graded(const std::function<double(double)>& f, double a, double b, bool singular_a,
              bool singular_b, double grade, const AdaptiveOptions& opt) {
  if (a == b) return 0.0;
  auto from_end = [&](double end, double other) {
    // x = end + (other - end) * w^grade, w in [0, 1]
    const double span = other - end;
    return adaptive(
        [&](double w) {
          const double wg = std::pow(w, grade - 1.0);
          return f(end + span * wg * w) * grade * wg;
        },
        0.0, 1.0, opt) * span;
  };
  if (singular_a && singular_b) {
    const double mid = 0.5 * (a + b);
    return from_end(a, mid) - from_end(b, mid);
  }
  if (singular_a) return from_end(a, b);
  if (singular_b) return -from_end(b, a);
  return adaptive(f, a, b, opt);
}

double graded_fixed(const std::function<double(double)>& f, double a, double b, bool singular_a,
                    bool singular_b, double grade, int nodes) {
  if (a == b) return 0.0;
  if (!singular_a && !singular_b) {
    const Rule r = gauss_legendre(nodes, a, b);
    double acc = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) acc += r.weights[i] * f(r.nodes[i]);
    return acc;
  }
  const Rule r01 = gauss_legendre(nodes, 0.0, 1.0);
  auto from_end = [&](double end, double other) {
    const double span = other - end;
    double acc = 0.0;
    for (std::size_t i = 0; i < r01.nodes.size(); ++i) {
      const double w = r01.nodes[i];
      const double wg = std::pow(w, grade - 1.0);
      acc += r01.weights[i] * f(end + span * wg * w) * grade * wg;
    }
    return acc * span;
  };
  if (singular_a && singular_b) {
    const double mid = 0.5 * (a + b);
    return from_end(a, mid) - from_end(b, mid);
  }
  if (singular_a) return from_end(a, b);
  return -from_end(b, a);
}

}  // namespace greenlab::quad
