#include "greenlab/cauchy/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "greenlab/cauchy/kernels.hpp"
#include "greenlab/error.hpp"

namespace greenlab::cauchy {

using geometry::Point;

Stepper::Stepper(hadamard::ScalarOperator P, GridPtr grid, Backend backend)
    : P_(std::move(P)), grid_(std::move(grid)), backend_(backend) {
  const Grid& g = *grid_;
  const auto& s = g.space();
  const int nt = g.nt(), n = g.ntheta();
  f_.resize(nt);
  a_half_.resize(nt);
  for (int i = 0; i < nt; ++i) {
    f_[i] = s.f(g.t(i));
    a_half_[i] = s.f(g.t(i) + 0.5 * g.dt());
  }
  std::vector<double> c(static_cast<std::size_t>(nt) * n);
  for (int i = 0; i < nt; ++i)
    for (int j = 0; j < n; ++j) c[g.index(i, j)] = f_[i] * P_.b({g.t(i), s.wrap(g.theta(j))});
  const double dt2 = g.dt() * g.dt();
  m_.assign(static_cast<std::size_t>(nt - 1) * n, 0.0);
  for (int i = 0; i + 1 < nt; ++i)
    for (int j = 0; j < n; ++j) m_[g.index(i, j)] = 0.25 * dt2 * (c[g.index(i, j)] + c[g.index(i + 1, j)]);
}

void Stepper::forward(GridSection& u, const GridSection* src, int from, int to) const {
  const Grid& g = *grid_;
  if (from < 1 || to > g.nt() - 1) throw WindowError("Stepper::forward: rows outside the grid");
  const double dt2 = g.dt() * g.dt(), dth2 = g.dtheta() * g.dtheta();
  for (int i = from; i < to; ++i) {
    StepCoeffs c{a_half_[i], a_half_[i - 1], dt2 / (f_[i] * dth2), dt2 * f_[i]};
    StepRows r{u.row(i - 1), u.row(i), src ? src->row(i) : nullptr,
               m_.data() + g.index(i, 0), m_.data() + g.index(i - 1, 0), u.row(i + 1),
               g.ntheta(), g.is_periodic()};
    leapfrog_row(backend_, c, r);
  }
}

void Stepper::backward(GridSection& u, const GridSection* src, int from, int to) const {
  const Grid& g = *grid_;
  if (from > g.nt() - 2 || to < 0) throw WindowError("Stepper::backward: rows outside the grid");
  const double dt2 = g.dt() * g.dt(), dth2 = g.dtheta() * g.dtheta();
  for (int i = from; i > to; --i) {
    StepCoeffs c{a_half_[i - 1], a_half_[i], dt2 / (f_[i] * dth2), dt2 * f_[i]};
    StepRows r{u.row(i + 1), u.row(i), src ? src->row(i) : nullptr,
               m_.data() + g.index(i - 1, 0), m_.data() + g.index(i, 0), u.row(i - 1),
               g.ntheta(), g.is_periodic()};
    leapfrog_row(backend_, c, r);
  }
}

GridSection Stepper::scheme_operator(const GridSection& u) const {
  const Grid& g = *grid_;
  GridSection out(grid_);
  const int n = g.ntheta();
  const double dt2 = g.dt() * g.dt(), dth2 = g.dtheta() * g.dtheta();
  for (int i = 1; i + 1 < g.nt(); ++i) {
    for (int j = 0; j < n; ++j) {
      if (!g.is_periodic() && (j == 0 || j == n - 1)) continue;
      const int jl = j == 0 ? n - 1 : j - 1, jr = j == n - 1 ? 0 : j + 1;
      const double up = u(i + 1, j), uc = u(i, j), um = u(i - 1, j);
      const double lhs = a_half_[i] * (up - uc) - a_half_[i - 1] * (uc - um) -
                         dt2 / (f_[i] * dth2) * (u(i, jl) - 2 * uc + u(i, jr)) +
                         m_[g.index(i, j)] * up + m_[g.index(i - 1, j)] * um;
      out(i, j) = lhs / (dt2 * f_[i]);
    }
  }
  return out;
}

namespace {

// Conformal-time reach of anything sourced in [t_lo, t_hi] by the end of the window.
void check_fiber_room(const Grid& g, double t_lo, double t_hi, int j_lo, int j_hi, bool future,
                      bool past, const char* what) {
  if (g.is_periodic()) return;
  const auto& s = g.space();
  double reach = 0.0;
  if (future) reach = std::max(reach, s.conformal_time(g.t_b()) - s.conformal_time(t_lo));
  if (past) reach = std::max(reach, s.conformal_time(t_hi) - s.conformal_time(g.t_a()));
  const double lo = g.theta(j_lo) - reach, hi = g.theta(j_hi) + reach;
  if (lo <= g.theta(1) || hi >= g.theta(g.ntheta() - 2)) {
    std::ostringstream os;
    os << what << ": causal shadow [" << lo << ", " << hi << "] reaches the fiber walls of the grid";
    throw WindowError(os.str());
  }
}

}  // namespace

GridSection solve_cauchy(const hadamard::ScalarOperator& P, const GridSection& F,
                         const CauchyData& data, Backend backend) {
  const Grid& g = F.grid();
  const int n = g.ntheta(), i0 = data.slice;
  if (static_cast<int>(data.u0.size()) != n || static_cast<int>(data.u1.size()) != n)
    throw DomainError("solve_cauchy: Cauchy data length does not match the fiber samples");
  if (i0 < 0 || i0 >= g.nt()) throw WindowError("solve_cauchy: data slice outside the grid");

  if (!g.is_periodic()) {
    int j_lo = n, j_hi = -1;
    for (int j = 0; j < n; ++j)
      if (data.u0[j] != 0.0 || data.u1[j] != 0.0) j_lo = std::min(j_lo, j), j_hi = std::max(j_hi, j);
    double t_lo = g.t(i0), t_hi = g.t(i0);
    const SupportBox b = F.support();
    if (!b.empty) {
      j_lo = std::min(j_lo, b.j_lo);
      j_hi = std::max(j_hi, b.j_hi);
      t_lo = std::min(t_lo, g.t(b.i_lo));
      t_hi = std::max(t_hi, g.t(b.i_hi));
    }
    if (j_hi >= 0) check_fiber_room(g, t_lo, t_hi, j_lo, j_hi, true, true, "solve_cauchy");
  }

  const Stepper st(P, F.grid_ptr(), backend);
  GridSection u(F.grid_ptr());
  const auto& s = g.space();
  const double t0 = g.t(i0), f0 = s.f(t0), fp = s.df(t0), dt = g.dt();
  const double dth2 = g.dtheta() * g.dtheta();
  std::vector<double> utt(n);
  for (int j = 0; j < n; ++j) {
    u(i0, j) = data.u0[j];
    if (!g.is_periodic() && (j == 0 || j == n - 1)) continue;
    const int jl = j == 0 ? n - 1 : j - 1, jr = j == n - 1 ? 0 : j + 1;
    const double d2 = (data.u0[jl] - 2 * data.u0[j] + data.u0[jr]) / dth2;
    const double b = P.b({t0, s.wrap(g.theta(j))});
    utt[j] = F(i0, j) - fp / f0 * data.u1[j] + d2 / (f0 * f0) - b * data.u0[j];
  }
  // second-order Taylor start on the neighbouring slices
  if (i0 + 1 < g.nt()) {
    for (int j = 0; j < n; ++j) u(i0 + 1, j) = data.u0[j] + dt * data.u1[j] + 0.5 * dt * dt * utt[j];
    st.forward(u, &F, i0 + 1, g.nt() - 1);
  }
  if (i0 >= 1) {
    // keep row i0+1 from the Taylor start, overwritten only by the forward march above
    GridSection back(F.grid_ptr());
    for (int j = 0; j < n; ++j) {
      back(i0, j) = data.u0[j];
      back(i0 - 1, j) = data.u0[j] - dt * data.u1[j] + 0.5 * dt * dt * utt[j];
    }
    if (i0 - 1 >= 1) {
      // backward needs rows i0 and i0-1 as (from+1, from)
      st.backward(back, &F, i0 - 1, 0);
    }
    for (int i = 0; i < i0; ++i)
      for (int j = 0; j < n; ++j) u(i, j) = back(i, j);
  }
  return u;
}

DiscreteGreen::DiscreteGreen(hadamard::ScalarOperator P, GridPtr grid, GreenSign sign,
                             Backend backend)
    : stepper_(std::make_shared<const Stepper>(std::move(P), std::move(grid), backend)),
      sign_(sign) {}

DiscreteGreen::DiscreteGreen(std::shared_ptr<const Stepper> stepper, GreenSign sign)
    : stepper_(std::move(stepper)), sign_(sign) {}

GridSection DiscreteGreen::apply(const GridSection& phi) const {
  if (phi.grid_ptr() != stepper_->grid_ptr())
    throw DomainError("green_apply: section lives on a different grid");
  const Grid& g = grid();
  GridSection u(phi.grid_ptr());
  const SupportBox b = phi.support();
  if (b.empty) return u;
  constexpr int kGap = 4;
  if (sign_ == GreenSign::Plus) {
    const int start = b.i_lo - kGap;
    if (start < 1) throw WindowError("green_apply: window leaves no room below the support");
    check_fiber_room(g, g.t(b.i_lo), g.t(b.i_hi), b.j_lo, b.j_hi, true, false, "green_apply");
    stepper_->forward(u, &phi, start, g.nt() - 1);
  } else {
    const int start = b.i_hi + kGap;
    if (start > g.nt() - 2) throw WindowError("green_apply: window leaves no room above the support");
    check_fiber_room(g, g.t(b.i_lo), g.t(b.i_hi), b.j_lo, b.j_hi, false, true, "green_apply");
    stepper_->backward(u, &phi, start, 0);
  }
  return u;
}

GridSection apply_operator(const hadamard::ScalarOperator& P, const GridSection& u) {
  const Grid& g = u.grid();
  const auto& s = g.space();
  GridSection out(u.grid_ptr());
  const int n = g.ntheta();
  const double dt = g.dt(), dth = g.dtheta();
  for (int i = 1; i + 1 < g.nt(); ++i) {
    const double t = g.t(i), f = s.f(t), fp = s.df(t);
    for (int j = 0; j < n; ++j) {
      if (!g.is_periodic() && (j == 0 || j == n - 1)) continue;
      const int jl = j == 0 ? n - 1 : j - 1, jr = j == n - 1 ? 0 : j + 1;
      const double c = u(i, j);
      const double utt = (u(i + 1, j) - 2 * c + u(i - 1, j)) / (dt * dt);
      const double ut = (u(i + 1, j) - u(i - 1, j)) / (2 * dt);
      const double uxx = (u(i, jl) - 2 * c + u(i, jr)) / (dth * dth);
      out(i, j) = utt + fp / f * ut - uxx / (f * f) + P.b({t, s.wrap(g.theta(j))}) * c;
    }
  }
  return out;
}

double staggered_energy(const GridSection& u, double m2, int i) {
  const Grid& g = u.grid();
  if (!g.space().flat() || !g.is_periodic())
    throw DomainError("staggered_energy: needs a flat periodic grid");
  if (i < 0 || i + 1 >= g.nt()) throw WindowError("staggered_energy: slice outside the grid");
  const int n = g.ntheta();
  const double dt = g.dt(), dth = g.dtheta();
  double e = 0.0;
  for (int j = 0; j < n; ++j) {
    const int jr = (j + 1) % n;
    const double v = (u(i + 1, j) - u(i, j)) / dt;
    const double d0 = (u(i, jr) - u(i, j)) / dth, d1 = (u(i + 1, jr) - u(i + 1, j)) / dth;
    e += v * v + d0 * d1 + 0.5 * m2 * (u(i, j) * u(i, j) + u(i + 1, j) * u(i + 1, j));
  }
  return 0.5 * e * dth;
}

}  // namespace greenlab::cauchy
