#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace greenlab::quant {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

/// Symmetric Fock space over a d-dimensional one-particle space, truncated at total
/// occupation nmax. One-particle vectors are coordinate vectors in an ambient basis
/// with Hermitian Gram matrix; the Fock modes are an orthonormal frame of a subspace
/// of it (the whole ambient space by default). Inner products are antilinear in the
/// first argument.
class TruncatedFock {
 public:
  /// Ambient space C^d with the standard inner product, all d modes retained.
  TruncatedFock(int d, int nmax);
  /// Ambient Gram matrix `gram`, all modes retained.
  TruncatedFock(const Mat& gram, int nmax);
  /// Modes spanning the complex span of `vectors` (columns), orthonormal for `gram`.
  static TruncatedFock over_span(const Mat& gram, const Mat& vectors, int nmax,
                                 double rank_tol = 1e-12);

  int modes() const { return static_cast<int>(frame_.cols()); }
  int ambient_dim() const { return static_cast<int>(gram_.rows()); }
  int nmax() const { return nmax_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<int>& occupation(int index) const { return basis_[index]; }
  int level(int index) const { return levels_[index]; }
  /// Index of an occupation tuple, -1 if it is outside the truncation.
  int index_of(const std::vector<int>& occ) const;
  Vec vacuum() const;
  /// First index of level n (n = nmax + 1 gives dim()).
  int level_begin(int n) const { return level_start_[n]; }

  /// (v, w) = v^* gram w.
  cplx inner(const Vec& v, const Vec& w) const;
  double norm(const Vec& v) const { return std::sqrt(inner(v, v).real()); }
  /// Coefficients of v in the orthonormal mode frame; throws DomainError if v leaves the span.
  Vec mode_coefficients(const Vec& v) const;
  const Mat& gram() const { return gram_; }
  const Mat& frame() const { return frame_; }

 private:
  TruncatedFock(Mat gram, Mat frame, int nmax);
  void enumerate();

  Mat gram_, frame_;
  int nmax_;
  std::vector<std::vector<int>> basis_;
  std::vector<int> levels_;
  std::vector<int> level_start_;
  std::map<std::vector<int>, int> lookup_;
};

/// Dense operator on a truncated Fock space.
class FockOperator {
 public:
  FockOperator() = default;
  /// With hermitian = true the matrix is checked to be self-adjoint to `tol`.
  explicit FockOperator(Mat m, bool hermitian = false, double tol = 0.0);

  const Mat& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  bool hermitian() const { return hermitian_; }
  FockOperator adjoint() const;

  FockOperator operator*(const FockOperator& o) const { return FockOperator(m_ * o.m_); }
  FockOperator operator+(const FockOperator& o) const { return FockOperator(m_ + o.m_); }
  FockOperator operator-(const FockOperator& o) const { return FockOperator(m_ - o.m_); }
  Vec operator*(const Vec& v) const { return m_ * v; }

  /// Rows "row,col,re,im" of the nonzero entries, for auditing.
  void write_csv(const std::string& path) const;

 private:
  Mat m_;
  bool hermitian_ = false;
};

FockOperator operator*(cplx c, const FockOperator& a);
FockOperator commutator(const FockOperator& a, const FockOperator& b);
FockOperator identity(const TruncatedFock& F);

enum class Ladder { Create, Annihilate };

/// a^*(v) raises the total occupation and sends the top level to zero; a(v) is its adjoint.
FockOperator ladder(const TruncatedFock& F, const Vec& v, Ladder kind);
/// theta(v) = (a(v) + a^*(v)) / sqrt 2.
FockOperator segal(const TruncatedFock& F, const Vec& v);
/// W(v) = exp(i theta(v)); W(0) is the identity.
FockOperator weyl_exp(const TruncatedFock& F, const Vec& v);

/// Spectral norm of A restricted to the states of level <= max_level.
double restricted_norm(const TruncatedFock& F, const Mat& A, int max_level);
/// Spectral norm of A restricted to the states of level exactly n.
double level_norm(const TruncatedFock& F, const Mat& A, int n);
/// Largest singular value.
double spectral_norm(const Mat& A);

}  // namespace greenlab::quant
