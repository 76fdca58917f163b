#include <cmath>
#include <memory>
#include <random>

#include "doctest.h"
#include "greenlab/error.hpp"
#include "greenlab/geometry/spacetime.hpp"
#include "greenlab/quadrature.hpp"
#include "greenlab/riesz/domain.hpp"
#include "greenlab/riesz/riesz.hpp"

using namespace greenlab;
using namespace greenlab::riesz;

TEST_CASE("riesz constant and pointwise values") {
  // C(4,2) = 2^-3 / (Gamma(2) Gamma(2)) from tgamma directly
  const double c42 = std::pow(2.0, -3.0) / (std::tgamma(2.0) * std::tgamma(2.0));
  CHECK(riesz_constant(4, 2) == doctest::Approx(c42).epsilon(1e-14));
  CHECK(riesz_value({2, Sign::Plus, 4.0}, {2.0, 1.0}) == doctest::Approx(0.375).epsilon(1e-14));
  CHECK(riesz_value({2, Sign::Plus, 4.0}, {1.0, 2.0}) == 0.0);
  CHECK(riesz_value({2, Sign::Plus, 4.0}, {-2.0, 1.0}) == 0.0);
  CHECK(riesz_value({2, Sign::Minus, 4.0}, {-2.0, 1.0}) == doctest::Approx(0.375));
  CHECK(riesz_value({2, Sign::Plus, 2.0 + 1e-9}, {1.0, 0.3}) == doctest::Approx(0.5).epsilon(1e-7));
  CHECK_THROWS_AS(riesz_value({2, Sign::Plus, 2.0}, {1.0, 0.0}), DomainError);
}

TEST_CASE("Legendre duplication through C(alpha, 1) = 1/Gamma(alpha)") {
  for (double a = 1.1; a <= 10.0; a += 0.05) {
    // (a/2-1)! ((a+1)/2-1)! = 2^(1-a) sqrt(pi) (a-1)!
    const double lhs = std::tgamma(a / 2) * std::tgamma((a + 1) / 2);
    const double rhs = std::pow(2.0, 1 - a) * std::sqrt(M_PI) * std::tgamma(a);
    CHECK(std::abs(lhs / rhs - 1.0) < 1e-12);
    CHECK(std::abs(riesz_constant(a, 1) * std::tgamma(a) - 1.0) < 1e-12);
  }
}

TEST_CASE("symbolic box of the bump matches finite differences") {
  const Bump b({0.2, -0.1}, 0.7);
  const double h = 1e-3;
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> U(-0.4, 0.4);
  for (int i = 0; i < 20; ++i) {
    const double X[2] = {0.2 + U(rng), -0.1 + U(rng)};
    auto v = [&](double dt, double dx) {
      const double Y[2] = {X[0] + dt, X[1] + dx};
      return b.value(Y);
    };
    const double fd = (v(h, 0) - 2 * v(0, 0) + v(-h, 0) - v(0, h) + 2 * v(0, 0) - v(0, -h)) / (h * h);
    CHECK(std::abs(b.box_power(1, X) - fd) < 1e-4 * (1 + std::abs(fd)));
    auto w = [&](double dt, double dx) {
      const double Y[2] = {X[0] + dt, X[1] + dx};
      return b.box_power(1, Y);
    };
    const double fd2 = (w(h, 0) - 2 * w(0, 0) + w(-h, 0) - w(0, h) + 2 * w(0, 0) - w(0, -h)) / (h * h);
    CHECK(std::abs(b.box_power(2, X) - fd2) < 1e-3 * (1 + std::abs(fd2)));
  }
  // n = 1 gives plain derivatives
  const Bump f({0.0}, 1.0);
  const double y = 0.3;
  const double d2 = f.box_power(1, &y);
  const double e = std::exp(-1.0 / (1.0 - y * y));
  // d^2/dy^2 exp(-1/(1-y^2)) in closed form
  const double g1 = -2 * y / std::pow(1 - y * y, 2);
  const double g2 = -(2 + 6 * y * y) / std::pow(1 - y * y, 3);
  CHECK(d2 == doctest::Approx(e * (g1 * g1 + g2)).epsilon(1e-12));
}

TEST_CASE("radial identity on product test functions") {
  const auto phi = std::make_shared<Product>(2, 1.5, 0.5, 2.5, 3.5);
  auto f = [&](double r) { return phi->f(r); };
  for (double a : {3.0, 4.0, 5.0}) {
    const double oracle = riesz_radial_oracle(a, f, phi->f_support());
    const double pair = riesz_pair({2, Sign::Plus, a}, *phi, 0);
    CHECK(std::abs(pair - oracle) <= 1e-6 * std::abs(oracle));
  }
  // alpha = 2 through one continuation step: int r f(r) dr
  const double rf = quad::adaptive([&](double r) { return r * f(r); }, 1.0, 2.0, {1e-13, 1e-300, 20});
  CHECK(std::abs(riesz_pair({2, Sign::Plus, 2.0}, *phi, 1) - rf) < 1e-6);
  // alpha = 3 oracle is half the second moment
  const double r2f = quad::adaptive([&](double r) { return r * r * f(r); }, 1.0, 2.0, {1e-13, 1e-300, 20});
  CHECK(riesz_radial_oracle(3.0, f, phi->f_support()) == doctest::Approx(0.5 * r2f).epsilon(1e-12));
  CHECK(riesz_radial_oracle(3.0, [](double) { return 0.0; }, {1.0, 2.0}) == 0.0);
  CHECK_THROWS_AS(riesz_radial_oracle(1.0, f, phi->f_support()), DomainError);

  // n = 3, alpha = 1: int f(r) dr
  const Product phi3(3, 1.5, 0.5, 2.5, 3.5);
  const double f0 = quad::adaptive(f, 1.0, 2.0, {1e-13, 1e-300, 20});
  CHECK(std::abs(riesz_pair({3, Sign::Plus, 1.0}, phi3, 2) - f0) < 1e-6);
}

TEST_CASE("delta recovery at alpha = 0") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> C(-0.2, 0.2), R(0.6, 1.0);
  for (int i = 0; i < 5; ++i) {
    const Bump b({C(rng), C(rng)}, R(rng));
    const double X0[2] = {0.0, 0.0};
    CHECK(std::abs(riesz_pair({2, Sign::Plus, 0.0}, b, 2) - b.value(X0)) <= 1e-4);
    CHECK(std::abs(riesz_pair({2, Sign::Minus, 0.0}, b, 2) - b.value(X0)) <= 1e-4);
  }
}

TEST_CASE("multiplication and d'Alembert identities, support, continuation") {
  auto phi = std::make_shared<Bump>(std::vector<double>{0.9, 0.2}, 0.6);
  const GammaWeighted gphi(phi);
  const BoxApplied bphi(phi, 1);
  for (double a : {3.0, 4.0, 5.0}) {
    const double lhs = riesz_pair({2, Sign::Plus, a}, gphi, 0);
    const double rhs = a * (a - 2 + 2) * riesz_pair({2, Sign::Plus, a + 2}, *phi, 0);
    CHECK(std::abs(lhs - rhs) <= 1e-5 * std::max(1.0, std::abs(rhs)));
    const double d = riesz_pair({2, Sign::Plus, a + 2}, bphi, 0);
    CHECK(std::abs(d - riesz_pair({2, Sign::Plus, a}, *phi, 0)) <= 1e-5);
    CHECK(std::abs(riesz_pair({2, Sign::Plus, a}, *phi, 1) - riesz_pair({2, Sign::Plus, a}, *phi, 0)) <= 1e-4);
  }
  const Bump outside({0.0, 2.0}, 0.5);
  CHECK(std::abs(riesz_pair({2, Sign::Plus, 3.0}, outside, 0)) < 1e-14);
  CHECK(std::abs(riesz_pair({2, Sign::Minus, 3.0}, *phi, 0)) < 1e-14);
  CHECK_THROWS_AS(riesz_pair({2, Sign::Plus, 0.0}, *phi, 1), DomainError);
  CHECK_THROWS_AS(riesz_pair({2, Sign::Plus, 0.0}, gphi, 2), DomainError);
}

TEST_CASE("finite-difference continuation on a polynomial bump") {
  auto poly = [](const double* X) {
    const double s = ((X[0] - 0.1) * (X[0] - 0.1) + (X[1] - 0.05) * (X[1] - 0.05)) / 0.64;
    return s < 1 ? std::pow(1 - s, 8) : 0.0;
  };
  const FiniteDifference fd(2, poly, {-0.7, 0.9}, {-0.75, 0.85}, 0.02, 2);
  PairOptions opt;
  opt.rule = PairOptions::Rule::Tensor;
  const double X0[2] = {0, 0};
  CHECK(std::abs(riesz_pair({2, Sign::Plus, 0.0}, fd, 2, opt) - poly(X0)) < 1e-5);
}

TEST_CASE("riesz distributions on a domain") {
  using geometry::Point;
  using geometry::Spacetime;
  // flat model: identical to the Minkowski pairing
  const auto mink = Spacetime::minkowski();
  const DomainBump db(mink, {0.9, 0.2}, 0.6);
  const Bump b({0.9, 0.2}, 0.6);
  CHECK(riesz_domain_pair(mink, {0, 0}, Sign::Plus, 3.0, db, 0, {64}) ==
        doctest::Approx(riesz_pair({2, Sign::Plus, 3.0}, b, 0)).epsilon(1e-7));

  const auto ds = Spacetime::flrw_cosh();
  const Point x{0.0, 0.0};
  const DomainBump poly(ds, {0.1, 0.05}, 0.8, 1.0, DomainBump::Profile::Polynomial, 8);
  CHECK(std::abs(riesz_domain_pair(ds, x, Sign::Plus, 0.0, poly, 2, {48, 0.02, 128}) - poly.value(x)) < 1e-4);

  const DomainBump smooth(ds, {0.8, 0.1}, 0.5);
  for (double a : {3.0, 4.0}) {
    const double tangent = riesz_domain_pair(ds, x, Sign::Plus, a, smooth, 0, {64});
    const double direct = riesz_domain_direct(ds, x, Sign::Plus, a, smooth, {64});
    CHECK(std::abs(tangent - direct) < 1e-5);
  }
}
