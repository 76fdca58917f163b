#include <cmath>

#include "doctest.h"
#include "greenlab/error.hpp"
#include "greenlab/geometry/spacetime.hpp"
#include "greenlab/hadamard/hadamard.hpp"

using namespace greenlab;
using namespace greenlab::hadamard;
using geometry::Point;
using geometry::Spacetime;

namespace {

// V_0 = 1, V_k = -k int_0^1 s^(k-1) m^2 V_{k-1} ds, closed by exact integration of s^(k-1)
double kg_oracle(double m2, int k) {
  double v = 1.0;
  for (int j = 1; j <= k; ++j) v = -j * (1.0 / j) * m2 * v;
  return v;
}

}  // namespace

TEST_CASE("Klein-Gordon coefficients on Minkowski space") {
  for (double m : {0.5, 1.0, 2.0}) {
    const auto P = ScalarOperator::klein_gordon(Spacetime::minkowski(), m);
    const HadamardExpansion e(P, {0.3, -0.2}, 4);
    for (int k = 0; k <= 4; ++k) {
      const double want = kg_oracle(m * m, k);
      const double scale = std::pow(m, 2 * k);
      for (Point y : {Point{0.3, -0.2}, Point{0.5, 0.0}, Point{0.2, -0.33}, Point{0.37, -0.11}})
        CHECK(std::abs(e.coefficient(k, y) - want) / scale <= 1e-6);
      CHECK(std::abs(e.diagonal(k) - want) / scale <= 1e-6);
    }
  }
  const auto P = ScalarOperator::klein_gordon(Spacetime::minkowski(), 1.0);
  const HadamardExpansion e(P, {0, 0}, 2);
  CHECK(e.transport_residual(1, 0.2) <= 1e-6);
  CHECK(e.transport_residual(2, 0.2) <= 1e-6);
  const auto ser = e.series({{{0, 0}, 0.3, 0.1}, {{0, 0}, 0.1, -0.25}}, 8);
  CHECK(ser.diagonal[0] == 1.0);
  for (const auto& dir : ser.values)
    for (double v : dir[1]) CHECK(v == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK_THROWS_AS(e.coefficient(2, {0.0, 0.59}), WindowError);
}

TEST_CASE("truncated fundamental solution partial sums") {
  const auto P = ScalarOperator::klein_gordon(Spacetime::minkowski(), 1.0);
  const Point x{0, 0}, y{1.0, 0.0};  // Gamma = 1
  CHECK(truncated_fundamental_solution(P, x, y, 1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(truncated_fundamental_solution(P, x, y, 2) == doctest::Approx(0.375).epsilon(1e-9));
  // 1/2 J_0(1) from its power series
  double j0 = 0.0, term = 1.0;
  for (int j = 0; j < 30; ++j) {
    j0 += term;
    term *= -0.25 / ((j + 1.0) * (j + 1.0));
  }
  CHECK(std::abs(truncated_fundamental_solution(P, x, y, 6) - 0.5 * j0) < 2e-6);
  const auto W = ScalarOperator::wave(Spacetime::minkowski());
  CHECK(truncated_fundamental_solution(W, x, {0.8, 0.3}, 3) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(truncated_fundamental_solution(P, x, {0.3, 0.8}, 2), DomainError);
}

TEST_CASE("curved coefficients on the cosh model") {
  const auto s = Spacetime::flrw_cosh();
  const Point x{0.2, 0.1};
  const auto P = ScalarOperator::wave(s);
  const HadamardExpansion e(P, x, 2);
  CHECK(e.diagonal(0) == 1.0);
  CHECK(std::abs(e.diagonal(1) - s.scal(x) / 6.0) <= 1e-3);
  CHECK(std::abs(e.diagonal_limit(1) - e.diagonal(1)) <= 1e-3);
  CHECK(std::abs(e.diagonal_limit(2) - e.diagonal(2)) <= 1e-3);
  const auto Q = ScalarOperator::klein_gordon(s, 0.7);
  const HadamardExpansion q(Q, x, 1);
  CHECK(std::abs(q.diagonal(1) - (s.scal(x) / 6.0 - 0.49)) <= 1e-3);

  // second-order decay of the transport defect
  HadamardOptions fine;
  fine.spacing = 0.025;
  const HadamardExpansion e2(P, x, 2, fine);
  for (int k : {0, 1, 2}) {
    const double r1 = e.transport_residual(k, 0.2), r2 = e2.transport_residual(k, 0.2);
    CHECK(r1 / r2 >= 3.5);
  }
  // two resolutions of the s-quadrature
  HadamardOptions coarse_q;
  coarse_q.quad_nodes = 32;
  const HadamardExpansion e3(P, x, 2, coarse_q);
  for (Point y : {Point{0.35, 0.2}, Point{0.1, 0.0}})
    for (int k : {1, 2}) CHECK(std::abs(e.coefficient(k, y) - e3.coefficient(k, y)) <= 1e-4);
}

TEST_CASE("serial and OpenMP builds agree") {
  const auto P = ScalarOperator::klein_gordon(Spacetime::flrw_cosh(), 0.7);
  HadamardOptions a, b;
  a.backend = Backend::Serial;
  b.backend = Backend::OpenMP;
  const HadamardExpansion es(P, {0.2, 0.1}, 2, a), eo(P, {0.2, 0.1}, 2, b);
  for (Point y : {Point{0.35, 0.2}, Point{0.1, 0.0}, Point{0.0, 0.25}})
    for (int k : {0, 1, 2}) CHECK(es.coefficient(k, y) == eo.coefficient(k, y));
}
