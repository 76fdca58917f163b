#include "greenlab/riesz/riesz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "greenlab/error.hpp"
#include "greenlab/quadrature.hpp"

namespace greenlab::riesz {

double reciprocal_gamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) return 0.0;
  const double g = std::tgamma(x);
  const double sign = g < 0.0 ? -1.0 : 1.0;
  return sign * std::exp(-std::lgamma(x));
}

double riesz_constant(double alpha, int n) {
  if (n < 1) throw DomainError("riesz_constant: dimension must be positive");
  const double log_part = (1.0 - alpha) * std::log(2.0) + 0.5 * (2.0 - n) * std::log(std::numbers::pi);
  return std::exp(log_part) * reciprocal_gamma(0.5 * alpha) *
         reciprocal_gamma(0.5 * (alpha - n) + 1.0);
}

double riesz_value(const RieszFamily& fam, const std::vector<double>& X) {
  if (!(fam.alpha > fam.n)) throw DomainError("riesz_value: pointwise values need alpha > n");
  if (static_cast<int>(X.size()) != fam.n) throw DomainError("riesz_value: dimension mismatch");
  const double t = X[0];
  if (fam.sign == Sign::Plus ? t < 0.0 : t > 0.0) return 0.0;
  double g = t * t;
  for (int i = 1; i < fam.n; ++i) g -= X[i] * X[i];
  if (g < 0.0) return 0.0;
  return riesz_constant(fam.alpha, fam.n) * std::pow(g, 0.5 * (fam.alpha - fam.n));
}

namespace {

// Integral of f over [a, b] where f may behave like a power of (1 - |x|) at x = +-1.
double cone_inner(const std::function<double(double)>& f, double a, double b,
                  const PairOptions& opt, const quad::AdaptiveOptions& aopt) {
  const bool sa = a <= -1.0, sb = b >= 1.0;
  if (opt.rule == PairOptions::Rule::Adaptive) return quad::graded(f, a, b, sa, sb, opt.grade, aopt);
  return quad::graded_fixed(f, a, b, sa, sb, opt.grade, opt.nodes);
}

double outer(const std::function<double(double)>& f, double a, double b, const PairOptions& opt,
             const quad::AdaptiveOptions& aopt) {
  if (!(b > a)) return 0.0;
  if (opt.rule == PairOptions::Rule::Adaptive) return quad::adaptive(f, a, b, aopt);
  return quad::graded_fixed(f, a, b, false, false, opt.grade, opt.nodes);
}

}  // namespace

double riesz_pair(const RieszFamily& fam, const TestFunction& phi, int depth,
                  const PairOptions& opt) {
  if (depth < 0) throw DomainError("riesz_pair: negative depth");
  if (phi.dim() != fam.n) throw DomainError("riesz_pair: dimension mismatch");
  const double a = fam.alpha + 2.0 * depth;
  if (!(a > fam.n)) throw DomainError("riesz_pair: alpha + 2k must exceed n");
  if (depth > phi.max_depth()) throw DomainError("riesz_pair: insufficient smoothness for depth");
  if (fam.n != 2 && fam.n != 3) throw DomainError("riesz_pair: quadrature implemented for n = 2, 3");

  const double C = riesz_constant(a, fam.n);
  const double beta = a - fam.n;
  const double s = fam.sign == Sign::Plus ? 1.0 : -1.0;
  const Interval ts = phi.time_support();
  const double tau_lo = std::max(0.0, s > 0 ? ts.lo : -ts.hi);
  const double tau_hi = s > 0 ? ts.hi : -ts.lo;
  if (!(tau_hi > tau_lo)) return 0.0;

  quad::AdaptiveOptions outer_opt{opt.rel_tol, 1e-15, 18};
  quad::AdaptiveOptions inner_opt{opt.rel_tol, 1e-17, 18};

  if (fam.n == 2) {
    auto inner = [&](double tau) {
      if (tau <= 0.0) return 0.0;
      const Interval sl = phi.slice(s * tau);
      if (sl.empty()) return 0.0;
      const double lo = std::max(-1.0, sl.lo / tau), hi = std::min(1.0, sl.hi / tau);
      if (!(hi > lo)) return 0.0;
      const double pre = C * std::pow(tau, beta + 1.0);
      auto g = [&](double xi) {
        const double X[2] = {s * tau, tau * xi};
        const double w = 1.0 - xi * xi;
        return w <= 0.0 ? 0.0 : std::pow(w, 0.5 * beta) * phi.box_power(depth, X);
      };
      return pre * cone_inner(g, lo, hi, opt, inner_opt);
    };
    return outer(inner, tau_lo, tau_hi, opt, outer_opt);
  }

  // n = 3: X = (s tau, tau r cos b, tau r sin b), dX = tau^2 r dr db dtau
  const int na = std::max(opt.angle_nodes, 4);
  auto inner = [&](double tau) {
    if (tau <= 0.0) return 0.0;
    const double pre = C * std::pow(tau, beta + 2.0);
    auto g = [&](double r) {
      const double w = 1.0 - r * r;
      if (w <= 0.0) return 0.0;
      double acc = 0.0;
      for (int j = 0; j < na; ++j) {
        const double b = 2.0 * std::numbers::pi * j / na;
        const double X[3] = {s * tau, tau * r * std::cos(b), tau * r * std::sin(b)};
        acc += phi.box_power(depth, X);
      }
      return std::pow(w, 0.5 * beta) * r * acc * (2.0 * std::numbers::pi / na);
    };
    return pre * cone_inner(g, 0.0, 1.0, opt, inner_opt);
  };
  return outer(inner, tau_lo, tau_hi, opt, outer_opt);
}

double riesz_radial_oracle(double alpha, const std::function<double(double)>& f,
                           Interval support) {
  if (!(alpha > 1.0)) throw DomainError("riesz_radial_oracle: alpha must exceed 1");
  const double lo = std::max(0.0, support.lo);
  if (!(support.hi > lo)) return 0.0;
  const double I = quad::adaptive([&](double r) { return std::pow(r, alpha - 1.0) * f(r); }, lo,
                                  support.hi, {1e-13, 1e-300, 20});
  return I * reciprocal_gamma(alpha);
}

}  // namespace greenlab::riesz
