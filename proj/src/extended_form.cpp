#include "otscuts/extended_form.hpp"

#include "otscuts/error.hpp"

namespace otscuts {

std::vector<std::string> ExtendedSystem::variable_names() const {
  std::vector<std::string> names{"dtheta"};
  for (LineIndex l : pair.cycle.lines) names.push_back("y_" + std::to_string(l));
  names.insert(names.end(), {"z_short", "z_long", "zeta"});
  return names;
}

const HalfSpace& ExtendedSystem::constraint(std::string_view label) const {
  for (const HalfSpace& h : constraints)
    if (h.label == label) return h;
  throw std::out_of_range("no extended row labelled '" + std::string(label) + "'");
}

HPolytope ExtendedSystem::polytope() const {
  HPolytope p(num_vars());
  for (const HalfSpace& h : constraints) p.rows.push_back(h);
  for (const HalfSpace& h : boxes) p.rows.push_back(h);
  return p;
}

ExtendedSystem build_extended(const CyclePathPair& pair, const Rational& M) {
  const Rational& w_short = pair.shorter.total_weight;
  const Rational& w_long = pair.longer.total_weight;
  if (M < w_long) throw InvalidBigM("big-M " + to_string(M) + " is below the longer path weight " + to_string(w_long));

  ExtendedSystem sys;
  sys.pair = pair;
  sys.M = M;
  const std::size_t n = sys.num_vars();
  auto row = [&] { return RatVector(n, Rational(0)); };
  auto pos = [&](LineIndex l) { return sys.y(*pair.cycle.position_of_line(l)); };

  auto link = [&](const Path& path, std::size_t z, const std::string& tag) {
    for (LineIndex l : path.lines) {
      RatVector a = row();  // z <= y_l
      a[z] = 1;
      a[pos(l)] = -1;
      sys.constraints.push_back({std::move(a), 0, "link_" + tag + "_" + std::to_string(l)});
    }
    RatVector a = row();  // sum y - z <= |path| - 1
    for (LineIndex l : path.lines) a[pos(l)] = 1;
    a[z] = -1;
    sys.constraints.push_back({std::move(a), Rational(static_cast<long>(path.size())) - 1, "link_" + tag + "_lower"});
  };
  link(pair.shorter, sys.z_short(), "short");
  link(pair.longer, sys.z_long(), "long");

  {
    RatVector a = row();  // zeta <= z_long
    a[sys.zeta()] = 1;
    a[sys.z_long()] = -1;
    sys.constraints.push_back({std::move(a), 0, "mccormick_long"});
    RatVector b = row();  // zeta <= 1 - z_short
    b[sys.zeta()] = 1;
    b[sys.z_short()] = 1;
    sys.constraints.push_back({std::move(b), 1, "mccormick_short"});
    RatVector c = row();  // zeta >= z_long - z_short
    c[sys.zeta()] = -1;
    c[sys.z_long()] = 1;
    c[sys.z_short()] = -1;
    sys.constraints.push_back({std::move(c), 0, "mccormick_lower"});
  }

  // |dtheta| <= w_short z_short + w_long zeta + M (1 - z_short - zeta)
  for (int sign : {1, -1}) {
    RatVector a = row();
    a[sys.dtheta()] = sign;
    a[sys.z_short()] = M - w_short;
    a[sys.zeta()] = M - w_long;
    sys.constraints.push_back({std::move(a), M, sign > 0 ? "angle_pos" : "angle_neg"});
  }

  HPolytope boxes(n);
  for (std::size_t k = 0; k < pair.cycle.size(); ++k) boxes.add_box(sys.y(k), 0, 1, "box_y_" + std::to_string(pair.cycle.lines[k]));
  boxes.add_box(sys.z_short(), 0, 1, "box_z_short");
  boxes.add_box(sys.z_long(), 0, 1, "box_z_long");
  boxes.add_box(sys.zeta(), 0, 1, "box_zeta");
  sys.boxes = std::move(boxes.rows);
  return sys;
}

HalfSpace eliminate_with(const HalfSpace& row, const HalfSpace& lower, std::size_t var) {
  if (row.a[var] == 0) return row;
  if (row.a[var] < 0 || lower.a[var] >= 0)
    throw std::invalid_argument("eliminate_with: rows do not bound variable " + std::to_string(var) + " from opposite sides");
  Rational factor = row.a[var] / -lower.a[var];
  HalfSpace combined = row;
  for (std::size_t k = 0; k < combined.a.size(); ++k) combined.a[k] += factor * lower.a[k];
  combined.b += factor * lower.b;
  combined.a[var] = 0;
  return combined;
}

CutCPVI project_to_cpvi(const ExtendedSystem& sys) {
  HalfSpace row = sys.constraint("angle_pos");
  row = eliminate_with(row, sys.constraint("mccormick_lower"), sys.zeta());
  row = eliminate_with(row, sys.constraint("link_short_lower"), sys.z_short());
  row = eliminate_with(row, sys.constraint("link_long_lower"), sys.z_long());

  // row now reads dtheta + sum_k c_k y_k <= b.
  CutCPVI cut;
  cut.pair = sys.pair;
  cut.M = sys.M;
  cut.delta_rho = sys.pair.longer.total_weight - sys.pair.shorter.total_weight;
  cut.delta_M = sys.M - sys.pair.longer.total_weight;
  cut.constant = row.b;
  for (std::size_t k = 0; k < sys.pair.cycle.size(); ++k) cut.y_coeffs[sys.pair.cycle.lines[k]] = -row.a[sys.y(k)];
  return cut;
}

}  // namespace otscuts
