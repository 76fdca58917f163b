#pragma once

#include "greenlab/parallel.hpp"

namespace greenlab::cauchy {

/// Scalars of one leapfrog update from slices (far, u) to `out`.
struct StepCoeffs {
  double a_near = 1.0;   // f at the half step between u and out
  double a_far = 1.0;    // f at the half step between far and u
  double spatial = 0.0;  // dt^2 / (f dtheta^2) on the current slice
  double source = 0.0;   // dt^2 f on the current slice
};

/// Arrays of one update; m_near / m_far hold dt^2 (c_u + c_out) / 4 and dt^2 (c_u + c_far) / 4
/// with c = f b, and src holds the right-hand side on the current slice (may be null).
struct StepRows {
  const double* far = nullptr;
  const double* u = nullptr;
  const double* src = nullptr;
  const double* m_near = nullptr;
  const double* m_far = nullptr;
  double* out = nullptr;
  int n = 0;
  bool periodic = true;
};

/// Reference implementation.
void leapfrog_row_serial(const StepCoeffs& c, const StepRows& r);
/// Same update with the fiber loop split across OpenMP threads.
void leapfrog_row_openmp(const StepCoeffs& c, const StepRows& r);

inline void leapfrog_row(Backend b, const StepCoeffs& c, const StepRows& r) {
  if (b == Backend::OpenMP) leapfrog_row_openmp(c, r);
  else leapfrog_row_serial(c, r);
}

}  // namespace greenlab::cauchy
