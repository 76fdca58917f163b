#pragma once

#include "greenlab/geometry/spacetime.hpp"

namespace greenlab::geometry {

/// p <= q: q lies in the causal future of p (reflexive).
bool causally_leq(const Spacetime& s, const Point& p, const Point& q);

/// Strict chronology p << q (q in the open timelike future of p).
bool chronologically_less(const Spacetime& s, const Point& p, const Point& q);

struct SeparationOptions {
  int slices = 32;           // intermediate slices for the chained maximization
  int fiber_samples = 129;   // fiber samples per slice
};

/// Lorentzian time separation tau(p, q); 0 unless p <= q.
double time_separation(const Spacetime& s, const Point& p, const Point& q,
                       const SeparationOptions& opt = {});

}  // namespace greenlab::geometry
