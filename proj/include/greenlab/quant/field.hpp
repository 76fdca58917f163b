#pragma once

#include <vector>

#include "greenlab/cauchy/green.hpp"
#include "greenlab/quant/fock.hpp"

namespace greenlab::quant {

/// Coefficients of slice data in the retained modes, with the fraction of the
/// squared norm that the projection discards.
struct ModeVector {
  Vec coeffs;
  double discarded = 0.0;
};

/// Fourier modes exp(i k theta 2 pi / L), |k| <= (d-1)/2, on a slice of a periodic grid,
/// orthonormalized for (u, v)_Sigma = sum_j w_j f(t) conj(u_j) v_j.
class SliceModes {
 public:
  SliceModes(cauchy::GridPtr grid, int slice, int d);

  int dim() const { return static_cast<int>(basis_.cols()); }
  int slice() const { return slice_; }
  const cauchy::Grid& grid() const { return *grid_; }
  const Mat& basis() const { return basis_; }
  cplx inner(const Vec& u, const Vec& v) const;
  ModeVector project(const Vec& data) const;

 private:
  cauchy::GridPtr grid_;
  int slice_;
  Eigen::VectorXd weight_;
  Mat basis_;
};

/// Slice data i u - d_t u of u = G f = G_+ f - G_- f on the given row; d_t by central differences.
Vec slice_vector(const cauchy::DiscreteGreen& plus, const cauchy::DiscreteGreen& minus, int slice,
                 const cauchy::GridSection& f);

/// Mode coefficients of the one-particle vector of f. Writes a warning to std::clog when
/// the projection discards more than 1% of the squared norm.
ModeVector field_vector(const cauchy::DiscreteGreen& plus, const cauchy::DiscreteGreen& minus,
                        const SliceModes& modes, const cauchy::GridSection& f);

/// Phi_Sigma(f) = theta(i u|_Sigma - d_t u|_Sigma) on F, whose one-particle space is the
/// mode coordinate space of `modes`.
FockOperator quantum_field(const TruncatedFock& F, const cauchy::DiscreteGreen& plus,
                           const cauchy::DiscreteGreen& minus, const SliceModes& modes,
                           const cauchy::GridSection& f);

/// Norm of [phi_f, phi_g] - i omega id on the states of level <= nmax - 2.
double field_commutator_defect(const TruncatedFock& F, const FockOperator& phi_f,
                               const FockOperator& phi_g, double omega);

/// Rank of the span of all products of at most max_len fields applied to the vacuum.
int cyclic_rank(const TruncatedFock& F, const std::vector<FockOperator>& fields, int max_len,
                double tol = 1e-10);

}  // namespace greenlab::quant
