#pragma once

#include <functional>
#include <vector>

#include "greenlab/riesz/test_function.hpp"

namespace greenlab::riesz {

/// Plus: supported in the future cone J_+(0); Minus: in J_-(0).
enum class Sign { Plus, Minus };

struct RieszFamily {
  int n = 2;
  Sign sign = Sign::Plus;
  double alpha = 2.0;
};

/// C(alpha, n) = 2^(1-alpha) pi^((2-n)/2) / (Gamma(alpha/2) Gamma((alpha-n)/2 + 1)).
double riesz_constant(double alpha, int n);

/// 1/Gamma(x), zero at the poles.
double reciprocal_gamma(double x);

/// Pointwise value for alpha > n.
double riesz_value(const RieszFamily& fam, const std::vector<double>& X);

struct PairOptions {
  enum class Rule { Adaptive, Tensor };
  Rule rule = Rule::Adaptive;
  double rel_tol = 1e-9;
  int nodes = 48;        // per direction for the tensor rule
  double grade = 3.0;    // mesh grading toward the cone
  int angle_nodes = 32;  // periodic angle rule for n = 3
};

/// R(alpha)[phi] through R(alpha + 2k)[box^k phi]; requires alpha + 2k > n.
double riesz_pair(const RieszFamily& fam, const TestFunction& phi, int depth,
                  const PairOptions& opt = {});

/// (1/Gamma(alpha)) int_0^inf r^(alpha-1) f(r) dr over the given support, alpha > 1.
double riesz_radial_oracle(double alpha, const std::function<double(double)>& f, Interval support);

}  // namespace greenlab::riesz
