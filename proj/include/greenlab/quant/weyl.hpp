#pragma once

#include <array>

#include "greenlab/quant/fock.hpp"

namespace greenlab::quant {

using ZN2 = std::array<int, 2>;

/// Weyl system of (Z_N)^2 with omega(x, y) = (2 pi / N)(x1 y2 - x2 y1), realized by
/// clock and shift matrices on C^N: W(a, b) = zeta^(h a b) X^a Z^b with zeta = e^(2 pi i / N),
/// X e_j = e_(j+1), Z e_j = zeta^j e_j. For odd N, h = (N + 1) / 2 is the inverse of 2,
/// omega/2 is the bilinear form (2 pi h / N)(x1 y2 - x2 y1) and
/// W(x) W(y) = e^(-i omega(x,y)/2) W(x + y) holds exactly. For even N the phase e^(i pi a b / N)
/// is used instead; the operators stay unitary but the composition law holds up to sign.
class FiniteWeylSystem {
 public:
  explicit FiniteWeylSystem(int N);

  int modulus() const { return N_; }
  bool exact() const { return N_ % 2 == 1; }
  ZN2 reduce(ZN2 x) const;
  ZN2 add(ZN2 x, ZN2 y) const { return reduce({x[0] + y[0], x[1] + y[1]}); }
  /// e^(-i omega(x, y) / 2) with the half form above (odd N).
  cplx half_phase(ZN2 x, ZN2 y) const;

  Mat W(ZN2 x) const;
  /// max |W(x) W(y) - e^(-i omega/2) W(x+y)| for one pair, entrywise.
  double pair_defect(ZN2 x, ZN2 y) const;
  /// pair_defect over all pairs, or over `samples` random pairs when samples > 0.
  double composition_defect(int samples = 0, unsigned seed = 1) const;
  /// max |W(x)^* W(x) - I| over all x.
  double unitarity_defect() const;
  /// Numerical rank of the N^2 matrices W(x), flattened.
  int flattened_rank() const;

 private:
  cplx phase(ZN2 x) const;
  int N_;
};

/// Spectral norm of W(x) - W(y).
double weyl_distance(const FiniteWeylSystem& sys, ZN2 x, ZN2 y);

}  // namespace greenlab::quant
