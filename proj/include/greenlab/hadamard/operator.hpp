#pragma once

#include <functional>
#include <string>

#include "greenlab/geometry/spacetime.hpp"

namespace greenlab::hadamard {

/// P = box + b on the trivial real line bundle, with box = -div grad, so that in
/// the warped models box u = u_tt + (f'/f) u_t - u_thth / f^2.
class ScalarOperator {
 public:
  enum class Kind { Mass2, ScalProp, Table };
  using Coefficient = std::function<double(const geometry::Point&)>;

  static ScalarOperator wave(geometry::Spacetime s);
  static ScalarOperator klein_gordon(geometry::Spacetime s, double mass);
  /// b = c * scal; c = 1/6 gives the conformally coupled operator.
  static ScalarOperator scal_prop(geometry::Spacetime s, double c);
  static ScalarOperator table(geometry::Spacetime s, Coefficient b, std::string label = "table");

  const geometry::Spacetime& space() const { return space_; }
  Kind kind() const { return kind_; }
  double b(const geometry::Point& p) const;
  /// True when b is a constant on the whole window.
  bool constant_b() const;
  double mass2() const { return param_; }
  std::string describe() const;

  /// P u at p by second-order central differences of step h; u takes (t, theta).
  double apply_fd(const std::function<double(double, double)>& u, const geometry::Point& p,
                  double h) const;

 private:
  ScalarOperator(geometry::Spacetime s, Kind k, double param, Coefficient table, std::string label)
      : space_(std::move(s)), kind_(k), param_(param), table_(std::move(table)),
        label_(std::move(label)) {}

  geometry::Spacetime space_;
  Kind kind_;
  double param_;
  Coefficient table_;
  std::string label_;
};

}  // namespace greenlab::hadamard
