#include "greenlab/cauchy/kernels.hpp"

namespace greenlab::cauchy {

namespace {

inline double update(const StepCoeffs& c, const StepRows& r, int j, double left, double right) {
  const double u = r.u[j], far = r.far[j];
  const double d2 = left - 2.0 * u + right;
  double rhs = c.a_near * u + c.a_far * (u - far) + c.spatial * d2 - r.m_far[j] * far;
  if (r.src) rhs += c.source * r.src[j];
  return rhs / (c.a_near + r.m_near[j]);
}

}  // namespace

void leapfrog_row_serial(const StepCoeffs& c, const StepRows& r) {
  const int n = r.n;
  if (r.periodic) {
    r.out[0] = update(c, r, 0, r.u[n - 1], r.u[1]);
    for (int j = 1; j < n - 1; ++j) r.out[j] = update(c, r, j, r.u[j - 1], r.u[j + 1]);
    r.out[n - 1] = update(c, r, n - 1, r.u[n - 2], r.u[0]);
  } else {
    r.out[0] = 0.0;
    for (int j = 1; j < n - 1; ++j) r.out[j] = update(c, r, j, r.u[j - 1], r.u[j + 1]);
    r.out[n - 1] = 0.0;
  }
}

void leapfrog_row_openmp(const StepCoeffs& c, const StepRows& r) {
  const int n = r.n;
  GREENLAB_OMP_PARALLEL_FOR
  for (int j = 1; j < n - 1; ++j) r.out[j] = update(c, r, j, r.u[j - 1], r.u[j + 1]);
  if (r.periodic) {
    r.out[0] = update(c, r, 0, r.u[n - 1], r.u[1]);
    r.out[n - 1] = update(c, r, n - 1, r.u[n - 2], r.u[0]);
  } else {
    r.out[0] = 0.0;
    r.out[n - 1] = 0.0;
  }
}

}  // namespace greenlab::cauchy
