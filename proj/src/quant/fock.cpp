#include "greenlab/quant/fock.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>

#include <unsupported/Eigen/MatrixFunctions>

#include "greenlab/error.hpp"

namespace greenlab::quant {

namespace {

Mat orthonormal_frame(const Mat& gram) {
  if (gram.rows() != gram.cols() || gram.rows() == 0)
    throw DomainError("one-particle Gram matrix must be square and nonempty");
  if ((gram - gram.adjoint()).norm() > 1e-12 * gram.norm())
    throw DomainError("one-particle Gram matrix is not Hermitian");
  Eigen::LLT<Mat> llt(gram);
  if (llt.info() != Eigen::Success) throw DomainError("one-particle Gram matrix is not positive definite");
  // E = L^{-*} satisfies E^* G E = I
  const Mat I = Mat::Identity(gram.rows(), gram.cols());
  return llt.matrixU().solve(I);
}

}  // namespace

TruncatedFock::TruncatedFock(int d, int nmax) : TruncatedFock(Mat::Identity(d, d), nmax) {}

TruncatedFock::TruncatedFock(const Mat& gram, int nmax)
    : TruncatedFock(gram, orthonormal_frame(gram), nmax) {}

TruncatedFock::TruncatedFock(Mat gram, Mat frame, int nmax)
    : gram_(std::move(gram)), frame_(std::move(frame)), nmax_(nmax) {
  if (nmax < 0) throw DomainError("nmax must be nonnegative");
  if (frame_.cols() < 1) throw DomainError("Fock space needs at least one mode");
  enumerate();
}

TruncatedFock TruncatedFock::over_span(const Mat& gram, const Mat& vectors, int nmax, double rank_tol) {
  orthonormal_frame(gram);  // validates gram
  if (vectors.rows() != gram.rows()) throw DomainError("over_span: dimension mismatch");
  const Mat M = vectors.adjoint() * gram * vectors;
  Eigen::SelfAdjointEigenSolver<Mat> es(M);
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double top = ev.size() ? ev.maxCoeff() : 0.0;
  std::vector<int> keep;
  for (int i = 0; i < ev.size(); ++i)
    if (ev(i) > rank_tol * top && ev(i) > 0.0) keep.push_back(i);
  if (keep.empty()) throw DomainError("over_span: the vectors span the zero space");
  Mat frame(gram.rows(), static_cast<int>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c)
    frame.col(c) = vectors * es.eigenvectors().col(keep[c]) / std::sqrt(ev(keep[c]));
  return TruncatedFock(gram, frame, nmax);
}

void TruncatedFock::enumerate() {
  const int d = modes();
  basis_.clear();
  levels_.clear();
  level_start_.assign(nmax_ + 2, 0);
  std::vector<int> occ(d, 0);
  // compositions of n into d parts, first mode descending
  auto fill = [&](auto&& self, int pos, int left) -> void {
    if (pos == d - 1) {
      occ[pos] = left;
      basis_.push_back(occ);
      return;
    }
    for (int k = left; k >= 0; --k) {
      occ[pos] = k;
      self(self, pos + 1, left - k);
    }
  };
  for (int n = 0; n <= nmax_; ++n) {
    level_start_[n] = static_cast<int>(basis_.size());
    fill(fill, 0, n);
    levels_.resize(basis_.size(), n);
  }
  level_start_[nmax_ + 1] = static_cast<int>(basis_.size());
  for (int i = 0; i < dim(); ++i) lookup_[basis_[i]] = i;
}

int TruncatedFock::index_of(const std::vector<int>& occ) const {
  const auto it = lookup_.find(occ);
  return it == lookup_.end() ? -1 : it->second;
}

Vec TruncatedFock::vacuum() const {
  Vec v = Vec::Zero(dim());
  v(0) = 1.0;
  return v;
}

cplx TruncatedFock::inner(const Vec& v, const Vec& w) const {
  if (v.size() != ambient_dim() || w.size() != ambient_dim())
    throw DomainError("one-particle vector has the wrong dimension");
  return v.dot(gram_ * w);  // Eigen's dot conjugates the first argument
}

Vec TruncatedFock::mode_coefficients(const Vec& v) const {
  if (v.size() != ambient_dim()) throw DomainError("one-particle vector has the wrong dimension");
  const Vec c = frame_.adjoint() * (gram_ * v);
  const Vec r = v - frame_ * c;
  const double nv = norm(v);
  if (std::sqrt(std::max(0.0, inner(r, r).real())) > 1e-10 * std::max(nv, 1e-300) && nv > 0.0)
    throw DomainError("one-particle vector lies outside the retained modes");
  return c;
}

FockOperator::FockOperator(Mat m, bool hermitian, double tol) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw DomainError("Fock operator matrix must be square");
  if (hermitian) {
    const double defect = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    if (defect > tol) throw DomainError("operator flagged Hermitian is not self-adjoint");
    hermitian_ = true;
  }
}

FockOperator FockOperator::adjoint() const {
  FockOperator a;
  a.m_ = m_.adjoint();
  a.hermitian_ = hermitian_;
  return a;
}

void FockOperator::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << "row,col,re,im\n" << std::setprecision(17);
  for (int j = 0; j < m_.cols(); ++j)
    for (int i = 0; i < m_.rows(); ++i)
      if (m_(i, j) != cplx(0.0))
        out << i << ',' << j << ',' << m_(i, j).real() << ',' << m_(i, j).imag() << '\n';
}

FockOperator operator*(cplx c, const FockOperator& a) { return FockOperator(c * a.matrix()); }

FockOperator commutator(const FockOperator& a, const FockOperator& b) {
  if (a.dim() != b.dim()) throw DomainError("commutator: dimension mismatch");
  return FockOperator(a.matrix() * b.matrix() - b.matrix() * a.matrix());
}

FockOperator identity(const TruncatedFock& F) { return FockOperator(Mat::Identity(F.dim(), F.dim()), true); }

FockOperator ladder(const TruncatedFock& F, const Vec& v, Ladder kind) {
  const Vec c = F.mode_coefficients(v);
  Mat m = Mat::Zero(F.dim(), F.dim());
  std::vector<int> occ;
  for (int s = 0; s < F.dim(); ++s) {
    if (F.level(s) >= F.nmax()) break;  // top level maps to zero
    for (int i = 0; i < F.modes(); ++i) {
      if (c(i) == cplx(0.0)) continue;
      occ = F.occupation(s);
      occ[i] += 1;
      m(F.index_of(occ), s) += c(i) * std::sqrt(static_cast<double>(occ[i]));
    }
  }
  if (kind == Ladder::Annihilate) m.adjointInPlace();
  return FockOperator(std::move(m));
}

FockOperator segal(const TruncatedFock& F, const Vec& v) {
  const Mat up = ladder(F, v, Ladder::Create).matrix();
  Mat th = (up + up.adjoint()) / std::sqrt(2.0);
  return FockOperator(std::move(th), true);
}

FockOperator weyl_exp(const TruncatedFock& F, const Vec& v) {
  if (v.isZero(0.0)) return identity(F);
  const Mat ith = cplx(0.0, 1.0) * segal(F, v).matrix();
  return FockOperator(ith.exp());
}

double spectral_norm(const Mat& A) {
  if (A.size() == 0) return 0.0;
  Eigen::BDCSVD<Mat> svd(A);
  return svd.singularValues()(0);
}

double restricted_norm(const TruncatedFock& F, const Mat& A, int max_level) {
  if (max_level < 0) return 0.0;
  const int n = std::min(max_level, F.nmax()) + 1;
  return spectral_norm(A.leftCols(F.level_begin(n)));
}

double level_norm(const TruncatedFock& F, const Mat& A, int n) {
  if (n < 0 || n > F.nmax()) throw DomainError("level_norm: level outside the truncation");
  const int b = F.level_begin(n), e = F.level_begin(n + 1);
  return spectral_norm(A.middleCols(b, e - b));
}

}  // namespace greenlab::quant
