#include "greenlab/cauchy/section_io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "greenlab/error.hpp"
#include "json.hpp"

namespace greenlab::cauchy {

void write_section(const std::string& path, const GridSection& u) {
  const Grid& g = u.grid();
  std::ofstream csv(path);
  if (!csv) throw Error("write_section: cannot open " + path);
  csv << "t,theta,value\n" << std::setprecision(17);
  for (int i = 0; i < g.nt(); ++i)
    for (int j = 0; j < g.ntheta(); ++j) csv << g.t(i) << ',' << g.theta(j) << ',' << u(i, j) << '\n';

  const SupportBox b = u.support();
  nlohmann::json meta = {
      {"spacetime", g.space().describe()},
      {"t_a", g.t_a()},
      {"t_b", g.t_b()},
      {"theta_a", g.theta_a()},
      {"theta_b", g.theta_b()},
      {"nt", g.nt()},
      {"ntheta", g.ntheta()},
      {"periodic", g.is_periodic()},
      {"courant", g.courant()},
      {"support", b.empty ? nlohmann::json(nullptr)
                          : nlohmann::json{{"i_lo", b.i_lo}, {"i_hi", b.i_hi}, {"j_lo", b.j_lo}, {"j_hi", b.j_hi}}}};
  std::ofstream side(path + ".json");
  if (!side) throw Error("write_section: cannot open " + path + ".json");
  side << meta.dump(2) << '\n';
}

GridSection read_section(const std::string& path, GridPtr grid) {
  std::ifstream in(path);
  if (!in) throw Error("read_section: cannot open " + path);
  std::string line;
  std::getline(in, line);
  if (line != "t,theta,value") throw Error("read_section: unexpected header in " + path);
  GridSection u(grid);
  const Grid& g = *grid;
  std::size_t k = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (k >= g.size()) throw Error("read_section: more rows than grid nodes");
    std::istringstream row(line);
    std::string cell[3];
    for (auto& c : cell) std::getline(row, c, ',');
    const int i = static_cast<int>(k / g.ntheta()), j = static_cast<int>(k % g.ntheta());
    const double t = std::stod(cell[0]), th = std::stod(cell[1]);
    if (std::abs(t - g.t(i)) > 1e-9 * (1 + std::abs(t)) || std::abs(th - g.theta(j)) > 1e-9 * (1 + std::abs(th)))
      throw Error("read_section: node coordinates do not match the grid");
    u(i, j) = std::stod(cell[2]);
    ++k;
  }
  if (k != g.size()) throw Error("read_section: fewer rows than grid nodes");
  return u;
}

}  // namespace greenlab::cauchy
