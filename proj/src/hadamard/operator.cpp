#include "greenlab/hadamard/operator.hpp"

#include <sstream>

#include "greenlab/error.hpp"

namespace greenlab::hadamard {

using geometry::Point;
using geometry::Spacetime;

ScalarOperator ScalarOperator::wave(Spacetime s) {
  return ScalarOperator(std::move(s), Kind::Mass2, 0.0, {}, "");
}

ScalarOperator ScalarOperator::klein_gordon(Spacetime s, double mass) {
  return ScalarOperator(std::move(s), Kind::Mass2, mass * mass, {}, "");
}

ScalarOperator ScalarOperator::scal_prop(Spacetime s, double c) {
  return ScalarOperator(std::move(s), Kind::ScalProp, c, {}, "");
}

ScalarOperator ScalarOperator::table(Spacetime s, Coefficient b, std::string label) {
  if (!b) throw DomainError("ScalarOperator::table: empty coefficient");
  return ScalarOperator(std::move(s), Kind::Table, 0.0, std::move(b), std::move(label));
}

double ScalarOperator::b(const Point& p) const {
  switch (kind_) {
    case Kind::Mass2: return param_;
    case Kind::ScalProp: return param_ * space_.scal(p);
    case Kind::Table: return table_(p);
  }
  return 0.0;
}

bool ScalarOperator::constant_b() const {
  return kind_ == Kind::Mass2 || (kind_ == Kind::ScalProp && (space_.flat() || param_ == 0.0));
}

std::string ScalarOperator::describe() const {
  std::ostringstream os;
  os << "box + ";
  switch (kind_) {
    case Kind::Mass2: os << param_; break;
    case Kind::ScalProp: os << param_ << " scal"; break;
    case Kind::Table: os << label_; break;
  }
  os << " on " << space_.describe();
  return os.str();
}

double ScalarOperator::apply_fd(const std::function<double(double, double)>& u, const Point& p,
                                double h) const {
  const double c = u(p.t, p.theta);
  const double up = u(p.t + h, p.theta), um = u(p.t - h, p.theta);
  const double rp = u(p.t, p.theta + h), rm = u(p.t, p.theta - h);
  const double f = space_.f(p.t);
  const double utt = (up - 2 * c + um) / (h * h);
  const double ut = (up - um) / (2 * h);
  const double uxx = (rp - 2 * c + rm) / (h * h);
  return utt + space_.df(p.t) / f * ut - uxx / (f * f) + b(p) * c;
}

}  // namespace greenlab::hadamard
