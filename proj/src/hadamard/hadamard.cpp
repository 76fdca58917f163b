#include "greenlab/hadamard/hadamard.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "greenlab/error.hpp"
#include "greenlab/quadrature.hpp"
#include "greenlab/riesz/riesz.hpp"

namespace greenlab::hadamard {

using geometry::Point;
using geometry::TangentVector;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

HadamardExpansion::HadamardExpansion(ScalarOperator P, Point x, int K, HadamardOptions opt)
    : P_(std::move(P)), x_(x), K_(K), opt_(opt), h_(opt.spacing) {
  if (K < 0 || K > opt.max_order) throw DomainError("hadamard: order K outside [0, max_order]");
  if (!(opt.spacing > 0.0) || !(opt.reach > 0.0))
    throw DomainError("hadamard: grid needs positive spacing and reach");
  if (opt.quad_nodes < 2) throw DomainError("hadamard: at least two quadrature nodes");
  P_.space().require_in_window(x, "hadamard expansion base point");
  M_ = static_cast<int>(std::ceil(opt.reach / opt.spacing)) + 3 * K + 3;
  half_width_ = M_ * h_;
  n_ = 2 * M_ + 1;
  const quad::Rule r = quad::gauss_legendre(opt.quad_nodes, 0.0, 1.0);
  s_nodes_ = r.nodes;
  s_weights_ = r.weights;
  build_rays();
  build_levels();
}

void HadamardExpansion::build_rays() {
  const auto& s = P_.space();
  const int nq = static_cast<int>(s_nodes_.size());
  const int total = n_ * n_;
  gamma_.assign(total, kNaN);
  mu_.assign(total, kNaN);
  ray_u_.assign(static_cast<std::size_t>(total) * nq, 0.0);
  ray_w_.assign(ray_u_.size(), 0.0);
  ray_sqrt_mu_.assign(ray_u_.size(), 1.0);
  std::vector<double> fractions = s_nodes_;
  fractions.push_back(1.0);
  const double fx = s.f(x_.t);
  const double half_period = s.fiber() == geometry::FiberKind::Circle ? 0.5 * s.period() : 0.0;
  const bool par = opt_.backend == Backend::OpenMP;

  GREENLAB_OMP_FOR_DYNAMIC_IF(par)
  for (int node = 0; node < total; ++node) {
    const int i = node / n_ - M_, j = node % n_ - M_;
    if (std::hypot(i, j) * h_ > half_width_ + 1e-12) continue;
    if (half_period > 0.0 && std::abs(j * h_) >= half_period) continue;
    const Point y{x_.t + i * h_, s.wrap(x_.theta + j * h_)};
    if (!s.in_window(y)) continue;
    const std::size_t base = static_cast<std::size_t>(node) * nq;
    if (i == 0 && j == 0) {
      gamma_[node] = 0.0;
      mu_[node] = 1.0;
      continue;  // all ray points sit at x
    }
    try {
      const TangentVector v = geometry::exp_inverse(s, x_, y, {1e-12, 60, opt_.steps});
      const auto rays = geometry::ray_samples(s, v, fractions, opt_.steps);
      for (int q = 0; q < nq; ++q) {
        ray_u_[base + q] = (rays[q].point.t - x_.t) / h_;
        ray_w_[base + q] = (rays[q].point.theta - x_.theta) / h_;
        ray_sqrt_mu_[base + q] = std::sqrt(rays[q].mu);
      }
      gamma_[node] = v.dt * v.dt - fx * fx * v.dtheta * v.dtheta;
      mu_[node] = rays.back().mu;
    } catch (const Error&) {
      // outside the starshaped region or the window: the node stays unavailable
    }
  }
}

double HadamardExpansion::at(const std::vector<double>& a, int i, int j) const {
  return on_grid(i, j) ? a[index(i, j)] : kNaN;
}

double HadamardExpansion::interpolate(const std::vector<double>& a, double u, double w) const {
  const int i0 = static_cast<int>(std::floor(u)) - 1;
  const int j0 = static_cast<int>(std::floor(w)) - 1;
  if (!on_grid(i0, j0) || !on_grid(i0 + 3, j0 + 3)) return kNaN;
  double lu[4], lw[4];
  const double au = u - i0, aw = w - j0;
  for (int m = 0; m < 4; ++m) {
    double pu = 1.0, pw = 1.0;
    for (int l = 0; l < 4; ++l) {
      if (l == m) continue;
      pu *= (au - l) / (m - l);
      pw *= (aw - l) / (m - l);
    }
    lu[m] = pu;
    lw[m] = pw;
  }
  double acc = 0.0;
  for (int m = 0; m < 4; ++m) {
    double row = 0.0;
    for (int l = 0; l < 4; ++l) row += lw[l] * a[index(i0 + m, j0 + l)];
    acc += lu[m] * row;
  }
  return acc;  // NaN propagates from unavailable nodes
}

std::vector<double> HadamardExpansion::apply_P(const std::vector<double>& v) const {
  const auto& s = P_.space();
  std::vector<double> out(v.size(), kNaN);
  const bool par = opt_.backend == Backend::OpenMP;
  const int total = n_ * n_;
  GREENLAB_OMP_FOR_IF(par)
  for (int node = 0; node < total; ++node) {
    const int i = node / n_ - M_, j = node % n_ - M_;
    const double c = v[node];
    const double up = at(v, i + 1, j), um = at(v, i - 1, j);
    const double rp = at(v, i, j + 1), rm = at(v, i, j - 1);
    if (!std::isfinite(c + up + um + rp + rm)) continue;
    const Point p{x_.t + i * h_, s.wrap(x_.theta + j * h_)};
    const double f = s.f(p.t);
    const double utt = (up - 2 * c + um) / (h_ * h_);
    const double ut = (up - um) / (2 * h_);
    const double uxx = (rp - 2 * c + rm) / (h_ * h_);
    out[node] = utt + s.df(p.t) / f * ut - uxx / (f * f) + P_.b(p) * c;
  }
  return out;
}

void HadamardExpansion::build_levels() {
  const int total = n_ * n_;
  const int nq = static_cast<int>(s_nodes_.size());
  V_.assign(K_ + 1, std::vector<double>(total, kNaN));
  PV_.assign(K_ + 1, {});
  for (int node = 0; node < total; ++node)
    if (std::isfinite(mu_[node]) && mu_[node] > 0.0) V_[0][node] = 1.0 / std::sqrt(mu_[node]);
  const bool par = opt_.backend == Backend::OpenMP;
  for (int k = 1; k <= K_; ++k) {
    PV_[k - 1] = apply_P(V_[k - 1]);
    const std::vector<double>& pv = PV_[k - 1];
    std::vector<double>& out = V_[k];
    GREENLAB_OMP_FOR_IF(par)
    for (int node = 0; node < total; ++node) {
      if (!std::isfinite(V_[0][node])) continue;
      const std::size_t base = static_cast<std::size_t>(node) * nq;
      double acc = 0.0;
      for (int q = 0; q < nq; ++q) {
        const double val = interpolate(pv, ray_u_[base + q], ray_w_[base + q]);
        acc += s_weights_[q] * ray_sqrt_mu_[base + q] * std::pow(s_nodes_[q], k - 1) * val;
      }
      // V_0 = mu^{-1/2}, so the prefactor mu^{-1/2}(y) is V_0(y)
      out[node] = -k * V_[0][node] * acc;
    }
  }
  PV_[K_] = apply_P(V_[K_]);
}

double HadamardExpansion::coefficient(int k, const Point& y) const {
  if (k < 0 || k > K_) throw DomainError("hadamard: coefficient order outside [0, K]");
  const double u = (y.t - x_.t) / h_;
  const double w = P_.space().fiber_delta(x_.theta, y.theta) / h_;
  const double v = interpolate(V_[k], u, w);
  if (!std::isfinite(v)) throw WindowError("hadamard: point outside the region where V_k is available");
  return v;
}

double HadamardExpansion::diagonal(int k) const {
  if (k < 0 || k > K_) throw DomainError("hadamard: diagonal order outside [0, K]");
  if (k == 0) return V_[0][index(0, 0)];
  return -PV_[k - 1][index(0, 0)];
}

double HadamardExpansion::diagonal_limit(int k) const {
  if (k < 0 || k > K_) throw DomainError("hadamard: diagonal order outside [0, K]");
  const auto& v = V_[k];
  const double a1 = 0.25 * (at(v, 1, 0) + at(v, -1, 0) + at(v, 0, 1) + at(v, 0, -1));
  const double a2 = 0.25 * (at(v, 2, 0) + at(v, -2, 0) + at(v, 0, 2) + at(v, 0, -2));
  const double r = (4.0 * a1 - a2) / 3.0;
  if (!std::isfinite(r)) throw WindowError("hadamard: grid too small for the diagonal limit");
  return r;
}

double HadamardExpansion::valid_radius(int k) const {
  if (k < 0 || k > K_) throw DomainError("hadamard: order outside [0, K]");
  double bad = std::numeric_limits<double>::infinity();
  for (int i = -M_; i <= M_; ++i)
    for (int j = -M_; j <= M_; ++j)
      if (!std::isfinite(V_[k][index(i, j)])) bad = std::min(bad, std::hypot(i, j) * h_);
  double good = 0.0;
  for (int i = -M_; i <= M_; ++i)
    for (int j = -M_; j <= M_; ++j) {
      const double d = std::hypot(i, j) * h_;
      if (d < bad) good = std::max(good, d);
    }
  return good;
}

double HadamardExpansion::transport_residual(int k, double radius) const {
  if (k < 0 || k > K_) throw DomainError("transport_residual: order outside [0, K]");
  const auto& s = P_.space();
  const auto& g = gamma_;
  const auto& v = V_[k];
  double worst = 0.0;
  int used = 0;
  for (int i = -M_; i <= M_; ++i) {
    for (int j = -M_; j <= M_; ++j) {
      if (std::hypot(i, j) * h_ > radius + 1e-12) continue;
      const double gc = at(g, i, j), gtp = at(g, i + 1, j), gtm = at(g, i - 1, j);
      const double gxp = at(g, i, j + 1), gxm = at(g, i, j - 1);
      const double vc = at(v, i, j), vtp = at(v, i + 1, j), vtm = at(v, i - 1, j);
      const double vxp = at(v, i, j + 1), vxm = at(v, i, j - 1);
      const double rhs = k == 0 ? 0.0 : 2.0 * k * at(PV_[k - 1], i, j);
      if (!std::isfinite(gc + gtp + gtm + gxp + gxm + vc + vtp + vtm + vxp + vxm + rhs))
        throw WindowError("transport_residual: radius exceeds the region where V_k is available");
      const double t = x_.t + i * h_;
      const double f = s.f(t), fp = s.df(t);
      const double gt = (gtp - gtm) / (2 * h_), gx = (gxp - gxm) / (2 * h_);
      const double vt = (vtp - vtm) / (2 * h_), vx = (vxp - vxm) / (2 * h_);
      const double box_g = (gtp - 2 * gc + gtm) / (h_ * h_) + fp / f * gt -
                           (gxp - 2 * gc + gxm) / (h_ * h_ * f * f);
      const double grad_dot = -gt * vt + gx * vx / (f * f);
      const double lhs = grad_dot - (0.5 * box_g - 2.0 + 2.0 * k) * vc;
      worst = std::max(worst, std::abs(lhs - rhs));
      ++used;
    }
  }
  if (used == 0) throw DomainError("transport_residual: no nodes within the radius");
  return worst;
}

HadamardSeries HadamardExpansion::series(const std::vector<TangentVector>& dirs, int samples) const {
  if (samples < 1) throw DomainError("hadamard series: need at least one sample");
  HadamardSeries out;
  out.x = x_;
  out.directions = dirs;
  std::vector<double> fractions;
  out.s.push_back(0.0);
  for (int i = 1; i <= samples; ++i) {
    fractions.push_back(static_cast<double>(i) / samples);
    out.s.push_back(fractions.back());
  }
  for (int k = 0; k <= K_; ++k) out.diagonal.push_back(diagonal(k));
  for (const TangentVector& d : dirs) {
    const TangentVector v{x_, d.dt, d.dtheta};
    const auto rays = geometry::ray_samples(P_.space(), v, fractions, opt_.steps);
    std::vector<std::vector<double>> per_k(K_ + 1);
    for (int k = 0; k <= K_; ++k) {
      per_k[k].push_back(V_[k][index(0, 0)]);
      for (const auto& r : rays) {
        const double val = interpolate(V_[k], (r.point.t - x_.t) / h_, (r.point.theta - x_.theta) / h_);
        if (!std::isfinite(val))
          throw WindowError("hadamard series: direction leaves the region where V_k is available");
        per_k[k].push_back(val);
      }
    }
    out.values.push_back(std::move(per_k));
  }
  return out;
}

double HadamardExpansion::truncated(const Point& y, int terms) const {
  if (terms < 1 || terms - 1 > K_) throw DomainError("truncated: term count outside [1, K + 1]");
  const auto& s = P_.space();
  if (!(y.t > x_.t)) throw DomainError("truncated: y is not inside the future cone of x");
  // V_0 and Gamma directly from the geodesic to y; interpolating V_0 would dominate near the cone
  const TangentVector v = geometry::exp_inverse(s, x_, y, {1e-12, 60, opt_.steps});
  const double fx = s.f(x_.t);
  const double G = v.dt * v.dt - fx * fx * v.dtheta * v.dtheta;
  if (!(G > 0.0)) throw DomainError("truncated: y is not inside the future cone of x");
  const double mu = geometry::ray_samples(s, v, {1.0}, opt_.steps).back().mu;
  double sum = riesz::riesz_constant(2.0, 2) / std::sqrt(mu), Gj = G;
  for (int j = 1; j < terms; ++j) {
    sum += coefficient(j, y) * riesz::riesz_constant(2.0 + 2.0 * j, 2) * Gj;
    Gj *= G;
  }
  return sum;
}

HadamardSeries hadamard_coefficients(const ScalarOperator& P, const Point& x, int K,
                                     const std::vector<TangentVector>& dirs, int samples,
                                     const HadamardOptions& opt) {
  const HadamardExpansion e(P, x, K, opt);
  return e.series(dirs, samples);
}

double transport_residual(const HadamardExpansion& e, int k, double radius) {
  return e.transport_residual(k, radius);
}

double truncated_fundamental_solution(const ScalarOperator& P, const Point& x, const Point& y,
                                      int N_plus_k, HadamardOptions opt) {
  if (N_plus_k < 1) throw DomainError("truncated_fundamental_solution: need at least one term");
  const double reach = std::hypot(y.t - x.t, P.space().fiber_delta(x.theta, y.theta));
  opt.reach = std::max(opt.reach, reach + opt.spacing);
  opt.max_order = std::max(opt.max_order, N_plus_k - 1);
  const HadamardExpansion e(P, x, N_plus_k - 1, opt);
  return e.truncated(y, N_plus_k);
}

}  // namespace greenlab::hadamard
