#pragma once

#include <memory>
#include <vector>

#include "greenlab/cauchy/grid.hpp"
#include "greenlab/hadamard/operator.hpp"
#include "greenlab/parallel.hpp"

namespace greenlab::cauchy {

/// u and its normal derivative d_t u on the slice with index `slice`.
struct CauchyData {
  int slice = 0;
  std::vector<double> u0, u1;
};

/// Leapfrog for P = box + b in the self-adjoint form
///   d_t(f d_t u) - d_theta(f^-1 d_theta u) + f b u = f F,
/// with the zero-order term averaged symmetrically over the outer slices. The
/// discrete operator is symmetric, so the forward and backward solves are exact
/// transposes of each other.
class Stepper {
 public:
  Stepper(hadamard::ScalarOperator P, GridPtr grid, Backend backend = Backend::OpenMP);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  const hadamard::ScalarOperator& op() const { return P_; }
  Backend backend() const { return backend_; }

  /// Rows from-1 and from are known; fills from+1 .. to.
  void forward(GridSection& u, const GridSection* src, int from, int to) const;
  /// Rows from+1 and from are known; fills from-1 down to `to`.
  void backward(GridSection& u, const GridSection* src, int from, int to) const;

  /// The scheme's own operator, so that forward/backward solves invert it exactly (interior rows).
  GridSection scheme_operator(const GridSection& u) const;

 private:
  hadamard::ScalarOperator P_;
  GridPtr grid_;
  Backend backend_;
  std::vector<double> f_, a_half_;  // f(t_i), f(t_i + dt/2)
  std::vector<double> m_;           // dt^2 (c_i + c_{i+1}) / 4, rows 0 .. nt-2
};

/// u with P u = F and the given Cauchy data, marched both ways from the slice.
GridSection solve_cauchy(const hadamard::ScalarOperator& P, const GridSection& F,
                         const CauchyData& data, Backend backend = Backend::OpenMP);

enum class GreenSign { Plus, Minus };

/// G_+ (support in the causal future) or G_- realized by the Cauchy solver with zero
/// data on a slice four cells beyond the support of the argument.
class DiscreteGreen {
 public:
  DiscreteGreen(hadamard::ScalarOperator P, GridPtr grid, GreenSign sign,
                Backend backend = Backend::OpenMP);
  DiscreteGreen(std::shared_ptr<const Stepper> stepper, GreenSign sign);

  GridSection apply(const GridSection& phi) const;
  GridSection operator()(const GridSection& phi) const { return apply(phi); }

  GreenSign sign() const { return sign_; }
  const Stepper& stepper() const { return *stepper_; }
  const std::shared_ptr<const Stepper>& stepper_ptr() const { return stepper_; }
  const Grid& grid() const { return stepper_->grid(); }
  const GridPtr& grid_ptr() const { return stepper_->grid_ptr(); }
  const hadamard::ScalarOperator& op() const { return stepper_->op(); }

 private:
  std::shared_ptr<const Stepper> stepper_;
  GreenSign sign_;
};

/// P u by second-order central differences of the non-conservative form
/// u_tt + (f'/f) u_t - u_thth / f^2 + b u; boundary rows and walls are set to zero.
GridSection apply_operator(const hadamard::ScalarOperator& P, const GridSection& u);

/// Energy of the leapfrog solution between slices i and i+1 for P = box + m2 on a
/// flat periodic grid; conserved by the scheme up to rounding.
double staggered_energy(const GridSection& u, double m2, int i);

}  // namespace greenlab::cauchy
