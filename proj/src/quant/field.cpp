#include "greenlab/quant/field.hpp"

#include <cmath>
#include <iostream>
#include <numbers>

#include "greenlab/error.hpp"

namespace greenlab::quant {

using cauchy::DiscreteGreen;
using cauchy::GridSection;

SliceModes::SliceModes(cauchy::GridPtr grid, int slice, int d) : grid_(std::move(grid)), slice_(slice) {
  const cauchy::Grid& g = *grid_;
  if (!g.is_periodic()) throw DomainError("slice modes need a circle fiber");
  if (slice < 1 || slice > g.nt() - 2) throw DomainError("slice must have a row on either side");
  if (d < 1 || d % 2 == 0) throw DomainError("mode count must be odd");
  if (d >= g.ntheta()) throw DomainError("more modes than slice nodes");
  const int n = g.ntheta();
  const double ft = g.space().f(g.t(slice));
  weight_.resize(n);
  for (int j = 0; j < n; ++j) weight_(j) = g.column_weight(j) * ft;
  const double L = g.theta_b() - g.theta_a();
  Mat E(n, d);
  for (int c = 0; c < d; ++c) {
    const int k = (c + 1) / 2 * (c % 2 == 1 ? 1 : -1);
    for (int j = 0; j < n; ++j) {
      const double a = 2.0 * std::numbers::pi * k * (g.theta(j) - g.theta_a()) / L;
      E(j, c) = {std::cos(a), std::sin(a)};
    }
  }
  const Mat M = E.adjoint() * weight_.asDiagonal() * E;
  Eigen::LLT<Mat> llt(M);
  if (llt.info() != Eigen::Success) throw DomainError("slice modes are linearly dependent");
  basis_ = llt.matrixU().solve<Eigen::OnTheRight>(E);
}

cplx SliceModes::inner(const Vec& u, const Vec& v) const {
  return u.dot(weight_.asDiagonal() * v);
}

ModeVector SliceModes::project(const Vec& data) const {
  if (data.size() != grid_->ntheta()) throw DomainError("slice data has the wrong length");
  ModeVector mv;
  mv.coeffs = basis_.adjoint() * (weight_.asDiagonal() * data);
  const double total = inner(data, data).real();
  const double kept = mv.coeffs.squaredNorm();
  mv.discarded = total > 0.0 ? std::max(0.0, total - kept) / total : 0.0;
  return mv;
}

Vec slice_vector(const DiscreteGreen& plus, const DiscreteGreen& minus, int slice, const GridSection& f) {
  if (plus.sign() != cauchy::GreenSign::Plus || minus.sign() != cauchy::GreenSign::Minus)
    throw DomainError("slice_vector expects (G_+, G_-)");
  const GridSection u = plus(f) - minus(f);
  const cauchy::Grid& g = u.grid();
  if (slice < 1 || slice > g.nt() - 2) throw DomainError("slice must have a row on either side");
  Vec v(g.ntheta());
  for (int j = 0; j < g.ntheta(); ++j) {
    const double ut = (u(slice + 1, j) - u(slice - 1, j)) / (2.0 * g.dt());
    v(j) = cplx(-ut, u(slice, j));
  }
  return v;
}

ModeVector field_vector(const DiscreteGreen& plus, const DiscreteGreen& minus, const SliceModes& modes,
                        const GridSection& f) {
  ModeVector mv = modes.project(slice_vector(plus, minus, modes.slice(), f));
  if (mv.discarded > 0.01)
    std::clog << "warning: mode projection discards " << 100.0 * mv.discarded
              << "% of the slice norm (d = " << modes.dim() << ")\n";
  return mv;
}

FockOperator quantum_field(const TruncatedFock& F, const DiscreteGreen& plus, const DiscreteGreen& minus,
                           const SliceModes& modes, const GridSection& f) {
  if (F.ambient_dim() != modes.dim()) throw DomainError("Fock space and slice modes disagree");
  return segal(F, field_vector(plus, minus, modes, f).coeffs);
}

double field_commutator_defect(const TruncatedFock& F, const FockOperator& phi_f,
                               const FockOperator& phi_g, double omega) {
  if (phi_f.dim() != F.dim() || phi_g.dim() != F.dim()) throw DomainError("operators from another Fock space");
  Mat c = commutator(phi_f, phi_g).matrix();
  c.diagonal().array() -= cplx(0.0, omega);
  return restricted_norm(F, c, F.nmax() - 2);
}

int cyclic_rank(const TruncatedFock& F, const std::vector<FockOperator>& fields, int max_len, double tol) {
  // orthonormal basis Q of the span, grown one word length at a time
  std::vector<Vec> Q{F.vacuum()};
  std::vector<Vec> frontier = Q;
  auto absorb = [&](Vec v, std::vector<Vec>& added) {
    const double n0 = v.norm();
    if (n0 == 0.0) return;
    for (int pass = 0; pass < 2; ++pass)
      for (const Vec& q : Q) v -= q.dot(v) * q;
    if (v.norm() > tol * n0) {
      v.normalize();
      Q.push_back(v);
      added.push_back(v);
    }
  };
  for (int len = 1; len <= max_len && !frontier.empty(); ++len) {
    std::vector<Vec> added;
    for (const Vec& s : frontier)
      for (const FockOperator& phi : fields) {
        if (phi.dim() != F.dim()) throw DomainError("operators from another Fock space");
        absorb(phi * s, added);
        if (static_cast<int>(Q.size()) == F.dim()) return F.dim();
      }
    frontier = std::move(added);
  }
  return static_cast<int>(Q.size());
}

}  // namespace greenlab::quant
