#include "otscuts/oracle.hpp"

#include <algorithm>
#include <cstdint>

#include "json.hpp"
#include "otscuts/bounds.hpp"
#include "otscuts/error.hpp"
#include "otscuts/milp.hpp"

namespace otscuts {

std::string to_string(Claim claim) {
  switch (claim) {
    case Claim::Validity:
      return "Validity";
    case Claim::FacetRank:
      return "FacetRank";
    case Claim::LocalIdeal:
      return "LocalIdeal";
    case Claim::HullEquality:
      return "HullEquality";
    case Claim::FullDimension:
      return "FullDimension";
  }
  return "Unknown";
}

namespace {

std::string point_text(const RatVector& p) {
  std::string s = "(";
  for (std::size_t k = 0; k < p.size(); ++k) s += (k ? ", " : "") + to_string(p[k]);
  return s + ")";
}

CertificateReport pass(Claim claim, std::string detail) { return {claim, true, std::move(detail), std::nullopt}; }

CertificateReport fail(Claim claim, std::string detail, RatVector witness) {
  return {claim, false, std::move(detail) + " at " + point_text(witness), std::move(witness)};
}

bool is_binary(const Rational& v) { return v == 0 || v == 1; }

Rational path_row_rhs(const Path& path, const Cycle& cycle, const Rational& M, const RatVector& y) {
  Rational rhs = path.total_weight;
  for (std::size_t k = 0; k < path.size(); ++k) {
    std::size_t pos = *cycle.position_of_line(path.lines[k]);
    rhs += (M - path.weights[k]) * (1 - y[pos]);
  }
  return rhs;
}

// Rows of the pair's set with y relaxed to the unit box.
HPolytope relaxed_pair_set(const CyclePathPair& pair, const Rational& M) {
  const std::size_t size = pair.cycle.size();
  HPolytope p(size + 1);
  for (const Path* path : {&pair.shorter, &pair.longer}) {
    for (int sign : {1, -1}) {
      // sign*dtheta + sum (M - w) y <= w(path) + sum (M - w)
      RatVector a(size + 1, Rational(0));
      a[0] = sign;
      Rational b = path->total_weight;
      for (std::size_t k = 0; k < path->size(); ++k) {
        a[1 + *pair.cycle.position_of_line(path->lines[k])] = M - path->weights[k];
        b += M - path->weights[k];
      }
      p.add(std::move(a), b, path == &pair.shorter ? "shorter" : "longer");
    }
  }
  for (int sign : {1, -1}) {
    RatVector a(size + 1, Rational(0));
    a[0] = sign;
    p.add(std::move(a), M, "big_m");
  }
  for (std::size_t k = 0; k < size; ++k) p.add_box(1 + k, 0, 1, "y");
  return p;
}

bool in_pair_set(const CyclePathPair& pair, const Rational& M, const RatVector& point) {
  std::vector<bool> y(pair.cycle.size());
  for (std::size_t k = 0; k < y.size(); ++k) {
    if (!is_binary(point[1 + k])) return false;
    y[k] = point[1 + k] == 1;
  }
  return abs(point[0]) <= implied_bound(pair, M, y);
}

}  // namespace

Rational implied_bound(const CyclePathPair& pair, const Rational& M, const std::vector<bool>& y) {
  RatVector yv(y.size());
  for (std::size_t k = 0; k < y.size(); ++k) yv[k] = y[k] ? 1 : 0;
  Rational bound = M;
  for (const Path* path : {&pair.shorter, &pair.longer}) {
    Rational rhs = path_row_rhs(*path, pair.cycle, M, yv);
    if (rhs < bound) bound = rhs;
  }
  return bound;
}

std::vector<RatVector> integer_points(const CyclePathPair& pair, const Rational& M) {
  const std::size_t size = pair.cycle.size();
  if (size > kMaxIntegerPointCycle)
    throw CapExceeded("integer point enumeration limited to cycles of " + std::to_string(kMaxIntegerPointCycle) + " lines");
  std::vector<RatVector> points;
  points.reserve(3u << size);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << size); ++mask) {
    std::vector<bool> y(size);
    RatVector p(size + 1);
    for (std::size_t k = 0; k < size; ++k) {
      y[k] = mask >> k & 1;
      p[1 + k] = y[k] ? 1 : 0;
    }
    Rational bound = implied_bound(pair, M, y);
    for (const Rational& dtheta : {bound, Rational(-bound), Rational(0)}) {
      p[0] = dtheta;
      points.push_back(p);
    }
  }
  return points;
}

HPolytope cpvi_hull_candidate(const CutCPVI& cut, bool with_big_m_bound) {
  const Cycle& cycle = cut.pair.cycle;
  HPolytope p(cycle.size() + 1);
  for (std::size_t k = 0; k < cycle.size(); ++k) p.add_box(1 + k, 0, 1, "y");
  for (int sign : {1, -1}) {
    // sign*dtheta - sum c y <= constant
    RatVector a(cycle.size() + 1, Rational(0));
    a[0] = sign;
    for (std::size_t k = 0; k < cycle.size(); ++k) a[1 + k] = -cut.y_coeffs.at(cycle.lines[k]);
    p.add(std::move(a), cut.constant, "cpvi");
  }
  if (with_big_m_bound) {
    for (int sign : {1, -1}) {
      RatVector a(cycle.size() + 1, Rational(0));
      a[0] = sign;
      p.add(std::move(a), cut.M, "big_m");
    }
  }
  return p;
}

HPolytope projected_hull(const CyclePathPair& pair, const Rational& M) {
  ExtendedSystem sys = build_extended(pair, M);
  HPolytope p = sys.polytope();
  for (std::size_t var : {sys.zeta(), sys.z_short(), sys.z_long()}) p = drop_redundant(fourier_motzkin(p, var));
  std::vector<std::size_t> keep{sys.dtheta()};
  for (std::size_t k = 0; k < pair.cycle.size(); ++k) keep.push_back(sys.y(k));
  return restrict_to(p, keep);
}

CertificateReport validity_certificate(const CutCPVI& cut) {
  for (const RatVector& p : integer_points(cut.pair, cut.M)) {
    RatVector y(p.begin() + 1, p.end());
    if (abs(p[0]) > cut.rhs_at(y)) return fail(Claim::Validity, "integer point violates the cut", p);
  }
  return pass(Claim::Validity, std::to_string(3u << cut.pair.cycle.size()) + " integer points satisfy the cut");
}

CertificateReport local_ideal_certificate(const CyclePathPair& pair, const Rational& M) {
  ExtendedSystem sys = build_extended(pair, M);
  auto vertices = enumerate_vertices(sys.polytope());
  for (const RatVector& v : vertices)
    for (std::size_t k = 1; k < v.size(); ++k)
      if (!is_binary(v[k])) return fail(Claim::LocalIdeal, "vertex with fractional " + sys.variable_names()[k], v);
  return pass(Claim::LocalIdeal, std::to_string(vertices.size()) + " vertices, all binary");
}

CertificateReport full_dimension_certificate(const CyclePathPair& pair, const Rational& M) {
  const std::size_t size = pair.cycle.size();
  HPolytope hull = relaxed_pair_set(pair, M);
  RatVector center(size + 1, Rational(1, 2));
  center[0] = 0;
  // Every row's right-hand side stays >= w(shorter) while y >= 1/4.
  const Rational eps = pair.shorter.total_weight / 2;
  const Rational eta(1, 4);
  std::vector<RatVector> points{center};
  RatVector p = center;
  p[0] = eps;
  points.push_back(p);
  for (std::size_t k = 0; k < size; ++k) {
    p = center;
    p[1 + k] += eta;
    points.push_back(p);
  }
  for (const RatVector& q : points)
    for (const HalfSpace& h : hull.rows)
      if (dot(h.a, q) >= h.b) return fail(Claim::FullDimension, "point not strictly interior (row " + h.label + ")", q);
  std::size_t r = affine_rank(points);
  if (r != size + 1) return fail(Claim::FullDimension, "interior points span only rank " + std::to_string(r), center);
  return pass(Claim::FullDimension, "strict interior point with affine rank " + std::to_string(r) + " of " + std::to_string(size + 1));
}

CertificateReport facet_certificate(const CutCPVI& cut) {
  const CyclePathPair& pair = cut.pair;
  const Cycle& cycle = pair.cycle;
  const std::size_t size = cycle.size();
  auto pos = [&](LineIndex l) { return 1 + *cycle.position_of_line(l); };

  RatVector base(size + 1, Rational(1));
  base[0] = pair.shorter.total_weight;
  std::vector<RatVector> points{base};
  for (LineIndex l : pair.shorter.lines) {
    RatVector p = base;
    p[0] = pair.longer.total_weight;
    p[pos(l)] = 0;
    points.push_back(std::move(p));
  }
  for (LineIndex l : pair.longer.lines) {
    RatVector p = base;
    p[0] = cut.M;
    p[pos(pair.shorter.lines.front())] = 0;
    p[pos(l)] = 0;
    points.push_back(std::move(p));
  }

  auto all_points = integer_points(pair, cut.M);
  std::sort(all_points.begin(), all_points.end());
  for (const RatVector& p : points) {
    if (!std::binary_search(all_points.begin(), all_points.end(), p))
      return fail(Claim::FacetRank, "certificate point is not an integer point of the pair set", p);
    RatVector y(p.begin() + 1, p.end());
    if (abs(p[0]) != cut.rhs_at(y)) return fail(Claim::FacetRank, "certificate point is not tight", p);
  }
  std::size_t r = affine_rank(points);
  if (r != size) return fail(Claim::FacetRank, "affine rank " + std::to_string(r) + " of " + std::to_string(size), base);

  CertificateReport dim = full_dimension_certificate(pair, cut.M);
  if (!dim.passed) return {Claim::FacetRank, false, "full dimension failed: " + dim.detail, dim.witness};
  return pass(Claim::FacetRank, std::to_string(size + 1) + " tight integer points, affine rank " + std::to_string(r) + " of " +
                                    std::to_string(size));
}

CertificateReport hull_equality(const CyclePathPair& pair, const Rational& M, const HPolytope& candidate) {
  const std::size_t size = pair.cycle.size();
  if (size > kMaxHullCycle) throw CapExceeded("hull check limited to cycles of " + std::to_string(kMaxHullCycle) + " lines");
  if (candidate.dimension != size + 1) throw std::invalid_argument("hull candidate must live in (dtheta, y)");

  for (const RatVector& p : integer_points(pair, M))
    if (auto row = candidate.first_violated(p))
      return fail(Claim::HullEquality, "integer point cut off by candidate row " + std::to_string(*row), p);

  std::vector<RatVector> vertices;
  try {
    vertices = enumerate_vertices(candidate);
  } catch (const UnboundedError&) {
    return {Claim::HullEquality, false, "candidate is unbounded", RatVector(size + 1, Rational(0))};
  }
  for (const RatVector& v : vertices) {
    for (std::size_t k = 1; k <= size; ++k)
      if (!is_binary(v[k])) return fail(Claim::HullEquality, "candidate vertex with fractional y", v);
    if (!in_pair_set(pair, M, v)) return fail(Claim::HullEquality, "candidate vertex outside the pair set", v);
  }
  return pass(Claim::HullEquality, std::to_string(vertices.size()) + " candidate vertices, all in the pair set");
}

// ---------------------------------------------------------------------------
// Brute-force DC-OTS

namespace {

// Dispatch LP for one switching pattern over [g_0..g_{B-1}, theta_0..theta_{B-1}];
// flows are substituted by (theta_from - theta_to) / x on active lines.
struct PatternLp {
  const Network& net;
  const std::vector<bool>& y;
  std::size_t nb;

  std::size_t g(BusIndex b) const { return b; }
  std::size_t theta(BusIndex b) const { return nb + b; }

  RatVector flow_row(LineIndex l) const {
    RatVector a(2 * nb, Rational(0));
    if (!y[l]) return a;
    const Line& line = net.line(l);
    a[theta(line.from)] += 1 / line.reactance;
    a[theta(line.to)] -= 1 / line.reactance;
    return a;
  }

  HPolytope base(const RatVector& big_m) const {
    HPolytope p(2 * nb);
    for (BusIndex b = 0; b < nb; ++b) p.add_box(g(b), 0, net.bus(b).gen_max, "g");
    p.add_box(theta(0), 0, 0, "reference");
    for (BusIndex b = 0; b < nb; ++b) {
      RatVector a(2 * nb, Rational(0));
      a[g(b)] = 1;
      for (LineIndex l : net.incident(b)) {
        RatVector f = flow_row(l);
        const Rational sign = net.line(l).to == b ? 1 : -1;
        for (std::size_t k = 0; k < a.size(); ++k) a[k] += sign * f[k];
      }
      RatVector neg(a.size());
      for (std::size_t k = 0; k < a.size(); ++k) neg[k] = -a[k];
      p.add(std::move(a), net.bus(b).demand, "kcl");
      p.add(std::move(neg), -net.bus(b).demand, "kcl");
    }
    for (LineIndex l = 0; l < net.num_lines(); ++l) {
      const Line& line = net.line(l);
      // Active: capacity on the substituted flow. Inactive: angle gap <= M.
      const Rational& limit = y[l] ? line.weight : big_m[l];
      for (int sign : {1, -1}) {
        RatVector a(2 * nb, Rational(0));
        a[theta(line.from)] = sign;
        a[theta(line.to)] = -sign;
        p.add(std::move(a), limit, y[l] ? "capacity" : "ohm_off");
      }
    }
    return p;
  }

  void add_cuts(HPolytope& p, const BruteForceOptions& options) const {
    for (const CutCPVI& cut : options.cpvis) {
      Rational rhs = cut.constant;
      for (const auto& [l, c] : cut.y_coeffs)
        if (y[l]) rhs += c;
      for (int sign : {1, -1}) {
        RatVector a(2 * nb, Rational(0));
        a[theta(cut.pair.n)] += sign;
        a[theta(cut.pair.m)] -= sign;
        p.add(std::move(a), rhs, "cpvi");
      }
    }
    for (const CutCVI& cut : options.cvis) {
      Rational rhs = cut.constant;
      for (const auto& [l, c] : cut.y_coeffs)
        if (y[l]) rhs += c;
      RatVector a(2 * nb, Rational(0));
      for (const auto& [l, c] : cut.flow_coeffs) {
        RatVector f = flow_row(l);
        for (std::size_t k = 0; k < a.size(); ++k) a[k] += c * f[k];
      }
      RatVector neg(a.size());
      for (std::size_t k = 0; k < a.size(); ++k) neg[k] = -a[k];
      p.add(std::move(a), rhs, "cvi");
      p.add(std::move(neg), rhs, "cvi");
    }
  }
};

}  // namespace

DcotsSolution brute_force_dcots(const Network& net, const BruteForceOptions& options) {
  std::vector<LineIndex> switchable;
  for (LineIndex l = 0; l < net.num_lines(); ++l)
    if (net.line(l).switchable) switchable.push_back(l);
  if (switchable.size() > options.max_switchable)
    throw CapExceeded("brute force limited to " + std::to_string(options.max_switchable) + " switchable lines");

  RatVector big_m = options.big_m.empty() ? RatVector(net.num_lines(), global_big_m(net)) : options.big_m;
  const std::size_t nb = net.num_buses();
  RatVector objective(2 * nb, Rational(0));
  for (BusIndex b = 0; b < nb; ++b) objective[b] = net.bus(b).gen_cost;
  const bool has_cuts = !options.cpvis.empty() || !options.cvis.empty();

  std::optional<DcotsSolution> best;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << switchable.size()); ++mask) {
    std::vector<bool> y(net.num_lines(), true);
    for (std::size_t k = 0; k < switchable.size(); ++k) y[switchable[k]] = mask >> k & 1;
    PatternLp lp{net, y, nb};

    HPolytope p = lp.base(big_m);
    LpResult r = rational_simplex(p, objective, Sense::Minimize);
    if (r.status != LpStatus::Optimal) continue;
    // Cuts only raise the optimum, so a pattern already no better than the
    // incumbent cannot win; otherwise re-solve unless the optimum survives.
    if (best && r.value >= best->cost) continue;
    if (has_cuts) {
      HPolytope cut_rows(2 * nb);
      lp.add_cuts(cut_rows, options);
      if (!cut_rows.contains(r.point)) {
        for (HalfSpace& h : cut_rows.rows) p.rows.push_back(std::move(h));
        r = rational_simplex(p, objective, Sense::Minimize);
        if (r.status != LpStatus::Optimal) continue;
        if (best && r.value >= best->cost) continue;
      }
    }

    DcotsSolution sol;
    sol.cost = r.value;
    sol.y = y;
    sol.generation.assign(r.point.begin(), r.point.begin() + static_cast<std::ptrdiff_t>(nb));
    sol.angles.assign(r.point.begin() + static_cast<std::ptrdiff_t>(nb), r.point.end());
    for (LineIndex l = 0; l < net.num_lines(); ++l) sol.flows.push_back(dot(lp.flow_row(l), r.point));
    best = std::move(sol);
  }
  if (!best) throw AllPatternsInfeasible("no switching pattern admits a feasible dispatch");
  return *best;
}

std::optional<Rational> brute_force_milp(const MilpModel& model, std::size_t max_binaries) {
  std::vector<std::size_t> binaries;
  for (std::size_t v = 0; v < model.variables().size(); ++v)
    if (model.variables()[v].kind == VarKind::Binary) binaries.push_back(v);
  if (binaries.size() > max_binaries) throw CapExceeded("brute force limited to " + std::to_string(max_binaries) + " binaries");

  const std::size_t n = model.variables().size();
  HPolytope base(n);
  for (std::size_t v = 0; v < n; ++v) {
    const Variable& var = model.variables()[v];
    if (var.kind == VarKind::Binary) continue;
    RatVector a(n, Rational(0));
    a[v] = 1;
    if (var.upper) base.add(a, *var.upper, var.name);
    a[v] = -1;
    if (var.lower) base.add(a, -*var.lower, var.name);
  }
  for (const Constraint& c : model.constraints()) {
    RatVector a(n, Rational(0));
    for (const Term& t : c.terms) a[t.var] += t.coeff;
    RatVector neg(n);
    for (std::size_t k = 0; k < n; ++k) neg[k] = -a[k];
    if (c.sense != RowSense::GreaterEqual) base.add(a, c.rhs, c.name);
    if (c.sense != RowSense::LessEqual) base.add(neg, -c.rhs, c.name);
  }
  RatVector objective(n, Rational(0));
  for (const Term& t : model.objective()) objective[t.var] += t.coeff;

  std::optional<Rational> best;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << binaries.size()); ++mask) {
    HPolytope p = base;
    for (std::size_t k = 0; k < binaries.size(); ++k) p.add_box(binaries[k], mask >> k & 1, mask >> k & 1);
    LpResult r = rational_simplex(p, objective, Sense::Minimize);
    if (r.status == LpStatus::Optimal && (!best || r.value < *best)) best = r.value;
  }
  return best;
}

std::string certificate_json(const CertificateReport& report) {
  nlohmann::ordered_json doc;
  doc["claim"] = to_string(report.claim);
  doc["passed"] = report.passed;
  doc["detail"] = report.detail;
  if (report.witness) {
    doc["witness"] = nlohmann::ordered_json::array();
    for (const Rational& v : *report.witness) doc["witness"].push_back(to_string(v));
  } else {
    doc["witness"] = nullptr;
  }
  return doc.dump();
}

}  // namespace otscuts
