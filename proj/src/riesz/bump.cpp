#include "greenlab/riesz/bump.hpp"

#include <cmath>

#include "greenlab/error.hpp"

namespace greenlab::riesz {

double bump_profile(double s) { return s < 1.0 ? std::exp(-1.0 / (1.0 - s)) : 0.0; }

BumpBoxPowers::BumpBoxPowers(int n, double rho, int max_k) : n_(n), rho_(rho) {
  if (n < 1) throw DomainError("bump dimension must be positive");
  if (!(rho > 0.0)) throw DomainError("bump radius must be positive");
  if (max_k < 0) throw DomainError("negative box power");
  Poly g{{{0, 0, 0}, 1.0}};
  for (int k = 0; k <= max_k; ++k) {
    levels_.emplace_back(g.begin(), g.end());
    if (k < max_k) g = apply_box(g);
  }
}

// d/ds (s^a u^b h) = a s^(a-1) u^b h + b s^a u^(b+1) h - s^a u^(b+2) h
BumpBoxPowers::Poly BumpBoxPowers::d_ds(const Poly& g) {
  Poly out;
  for (const auto& [key, c] : g) {
    const auto [m, a, b] = key;
    if (a > 0) out[{m, a - 1, b}] += c * a;
    if (b > 0) out[{m, a, b + 1}] += c * b;
    out[{m, a, b + 2}] -= c;
  }
  return out;
}

// box(q^m G) = q^(m-1)[m(2n+4m-4) G + 8 m s G'] + q^m [2(2-n)/rho^2 G'] + q^(m+1) [4/rho^4 G'']
BumpBoxPowers::Poly BumpBoxPowers::apply_box(const Poly& g) const {
  std::map<int, Poly> by_m;
  for (const auto& [key, c] : g) by_m[std::get<0>(key)][{0, std::get<1>(key), std::get<2>(key)}] += c;
  Poly out;
  const double r2 = rho_ * rho_;
  for (const auto& [m, G] : by_m) {
    const Poly G1 = d_ds(G);
    const Poly G2 = d_ds(G1);
    auto add = [&](const Poly& p, int mm, double scale, int extra_a) {
      if (scale == 0.0) return;
      for (const auto& [key, c] : p)
        out[{mm, std::get<1>(key) + extra_a, std::get<2>(key)}] += scale * c;
    };
    if (m > 0) {
      add(G, m - 1, m * (2.0 * n_ + 4.0 * m - 4.0), 0);
      add(G1, m - 1, 8.0 * m, 1);
    }
    add(G1, m, 2.0 * (2 - n_) / r2, 0);
    add(G2, m + 1, 4.0 / (r2 * r2), 0);
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0.0 ? out.erase(it) : std::next(it);
  return out;
}

double BumpBoxPowers::eval(int k, const double* y) const {
  if (k < 0 || k > max_k()) throw DomainError("box power beyond the precomputed depth");
  double e2 = 0.0, q = y[0] * y[0];
  for (int i = 0; i < n_; ++i) e2 += y[i] * y[i];
  for (int i = 1; i < n_; ++i) q -= y[i] * y[i];
  const double s = e2 / (rho_ * rho_);
  if (s >= 1.0) return 0.0;
  const double u = 1.0 / (1.0 - s);
  const double h = std::exp(-u);
  if (h == 0.0) return 0.0;  // u^b h underflows long before u^b could overflow
  double acc = 0.0;
  for (const auto& [key, c] : levels_[k]) {
    const auto [m, a, b] = key;
    double term = c * h;
    for (int i = 0; i < m; ++i) term *= q;
    for (int i = 0; i < a; ++i) term *= s;
    for (int i = 0; i < b; ++i) term *= u;
    acc += term;
  }
  return acc;
}

}  // namespace greenlab::riesz
