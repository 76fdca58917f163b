#include "greenlab/cauchy/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "greenlab/error.hpp"

namespace greenlab::cauchy {

using geometry::FiberKind;
using geometry::Point;
using geometry::Spacetime;

GridPtr Grid::periodic(Spacetime s, double t_a, double t_b, int nt, int ntheta,
                       double courant_limit) {
  if (s.fiber() != FiberKind::Circle) throw DomainError("Grid::periodic needs a circle fiber");
  const double L = s.period();
  return GridPtr(new Grid(std::move(s), t_a, t_b, 0.0, L, nt, ntheta, true, courant_limit));
}

GridPtr Grid::interval(Spacetime s, double t_a, double t_b, double theta_a, double theta_b, int nt,
                       int ntheta, double courant_limit) {
  if (s.fiber() == FiberKind::Circle && theta_b - theta_a >= s.period())
    throw DomainError("Grid::interval: theta range covers the whole circle, use Grid::periodic");
  return GridPtr(
      new Grid(std::move(s), t_a, t_b, theta_a, theta_b, nt, ntheta, false, courant_limit));
}

Grid::Grid(Spacetime s, double t_a, double t_b, double theta_a, double theta_b, int nt, int ntheta,
           bool periodic, double limit)
    : space_(std::move(s)), t_a_(t_a), t_b_(t_b), theta_a_(theta_a), theta_b_(theta_b), nt_(nt),
      ntheta_(ntheta), periodic_(periodic), limit_(limit) {
  if (nt < 3 || ntheta < 3) throw DomainError("Grid: need at least 3 slices and 3 fiber samples");
  if (!(t_b > t_a) || !(theta_b > theta_a)) throw DomainError("Grid: empty window");
  if (!(limit > 0.0) || limit > 1.0) throw DomainError("Grid: Courant limit must lie in (0, 1]");
  if (!space_.in_window({t_a, space_.wrap(theta_a)}) || !space_.in_window({t_b, space_.wrap(theta_a)}))
    throw WindowError("Grid: time window exceeds the spacetime window");
  dt_ = (t_b - t_a) / (nt - 1);
  dtheta_ = periodic ? (theta_b - theta_a) / ntheta : (theta_b - theta_a) / (ntheta - 1);
  double fmin = space_.f(t_a);
  for (int i = 0; i < 2 * nt - 1; ++i) fmin = std::min(fmin, space_.f(t_a + 0.5 * i * dt_));
  courant_ = dt_ / (dtheta_ * fmin);
  if (courant_ > limit * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "Grid: Courant number " << courant_ << " exceeds the limit " << limit;
    throw CflError(os.str());
  }
}

double Grid::volume_weight(int i, int j) const {
  double w = space_.f(t(i)) * dt_ * dtheta_;
  if (i == 0 || i == nt_ - 1) w *= 0.5;
  return w * column_weight(j) / dtheta_;
}

double Grid::column_weight(int j) const {
  if (!periodic_ && (j == 0 || j == ntheta_ - 1)) return 0.5 * dtheta_;
  return dtheta_;
}

int Grid::row_of(double time) const {
  const long i = std::lround((time - t_a_) / dt_);
  return static_cast<int>(std::clamp<long>(i, 0, nt_ - 1));
}

GridSection::GridSection(GridPtr grid) : grid_(std::move(grid)), values_(grid_->size(), 0.0) {}

GridSection GridSection::sample(GridPtr grid, const std::function<double(const Point&)>& fn) {
  GridSection s(std::move(grid));
  const Grid& g = s.grid();
  for (int i = 0; i < g.nt(); ++i)
    for (int j = 0; j < g.ntheta(); ++j) s(i, j) = fn(g.point(i, j));
  if (!s.all_finite()) throw DomainError("GridSection::sample: non-finite value");
  return s;
}

double GridSection::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool GridSection::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

SupportBox GridSection::support(double rel) const {
  SupportBox b;
  const double m = max_abs();
  if (m == 0.0) return b;
  const double cut = rel * m;
  const Grid& g = *grid_;
  std::vector<char> col(g.ntheta(), 0);
  for (int i = 0; i < g.nt(); ++i) {
    for (int j = 0; j < g.ntheta(); ++j) {
      if (std::abs((*this)(i, j)) <= cut) continue;
      if (b.empty) b.i_lo = i;
      b.empty = false;
      b.i_hi = i;
      col[j] = 1;
    }
  }
  const int n = g.ntheta();
  if (!g.is_periodic()) {
    b.j_lo = static_cast<int>(std::find(col.begin(), col.end(), 1) - col.begin());
    b.j_hi = n - 1 - static_cast<int>(std::find(col.rbegin(), col.rend(), 1) - col.rbegin());
    return b;
  }
  // shortest covering arc: complement of the longest run of empty columns
  int best_len = 0, best_start = 0;
  for (int start = 0; start < n; ++start) {
    if (col[start] || col[(start + n - 1) % n] == 0) continue;
    int len = 0;
    while (len < n && !col[(start + len) % n]) ++len;
    if (len > best_len) best_len = len, best_start = start;
  }
  if (best_len == 0) {
    b.j_lo = 0;
    b.j_hi = n - 1;
  } else {
    b.j_lo = (best_start + best_len) % n;
    b.j_hi = b.j_lo + (n - best_len) - 1;
  }
  return b;
}

void GridSection::require_same_grid(const GridSection& o) const {
  if (o.grid_ != grid_) throw DomainError("GridSection: sections live on different grids");
}

GridSection& GridSection::operator+=(const GridSection& o) {
  require_same_grid(o);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += o.values_[k];
  return *this;
}

GridSection& GridSection::operator-=(const GridSection& o) {
  require_same_grid(o);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= o.values_[k];
  return *this;
}

GridSection& GridSection::operator*=(double c) {
  for (double& v : values_) v *= c;
  return *this;
}

GridSection GridSection::multiplied(const std::function<double(const Point&)>& fn) const {
  GridSection out(*this);
  const Grid& g = *grid_;
  for (int i = 0; i < g.nt(); ++i)
    for (int j = 0; j < g.ntheta(); ++j) out(i, j) *= fn(g.point(i, j));
  return out;
}

GridSection operator+(GridSection a, const GridSection& b) { return a += b; }
GridSection operator-(GridSection a, const GridSection& b) { return a -= b; }
GridSection operator*(double c, GridSection a) { return a *= c; }

double integrate(const GridSection& a, const GridSection& b) {
  if (a.grid_ptr() != b.grid_ptr()) throw DomainError("integrate: sections live on different grids");
  const Grid& g = a.grid();
  double acc = 0.0;
  for (int i = 0; i < g.nt(); ++i) {
    double row = 0.0;
    for (int j = 0; j < g.ntheta(); ++j) row += a(i, j) * b(i, j) * g.column_weight(j);
    double w = g.space().f(g.t(i)) * g.dt();
    if (i == 0 || i == g.nt() - 1) w *= 0.5;
    acc += w * row;
  }
  return acc;
}

}  // namespace greenlab::cauchy
