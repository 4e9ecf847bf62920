#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"
#include "oracles.hpp"
#include "otscuts/error.hpp"
#include "otscuts/extended_form.hpp"
#include "otscuts/oracle.hpp"

using namespace otscuts;
using namespace otscuts::test;

namespace {

CyclePathPair ring6_pair(BusIndex m = 0, BusIndex n = 4) {
  Network net = ring6();
  return split_cycle(fundamental_cycle_basis(net)[0], m, n);
}

std::vector<bool> by_position(const Cycle& c, const std::vector<LineIndex>& off) {
  std::vector<bool> y(c.size(), true);
  for (LineIndex l : off) y[*c.position_of_line(l)] = false;
  return y;
}

// Same pair set membership test written out from the three path rows.
Rational bound_by_hand(const CyclePathPair& p, const Rational& M, const std::vector<bool>& y) {
  Rational s = p.shorter.total_weight, l = p.longer.total_weight;
  for (LineIndex ln : p.shorter.lines)
    if (!y[*p.cycle.position_of_line(ln)]) s = M;
  for (LineIndex ln : p.longer.lines)
    if (!y[*p.cycle.position_of_line(ln)]) l = M;
  return std::min({s, l, M});
}

CyclePathPair random_pair(Rng& rng, std::size_t k) {
  Network net = ring(random_weights(rng, k));
  Cycle c = fundamental_cycle_basis(net)[0];
  std::uniform_int_distribution<std::size_t> pick(0, k - 1);
  BusIndex m = pick(rng), n = pick(rng);
  while (n == m) n = pick(rng);
  return split_cycle(c, m, n);
}

}  // namespace

TEST_CASE("implied bounds on the six-ring pair") {
  CyclePathPair p = ring6_pair();
  CHECK(p.shorter.total_weight == 2);
  CHECK(p.longer.total_weight == 4);
  CHECK(implied_bound(p, 6, std::vector<bool>(6, true)) == 2);
  CHECK(implied_bound(p, 6, std::vector<bool>(6, false)) == 6);
  CHECK(implied_bound(p, 6, by_position(p.cycle, {p.longer.lines[0]})) == 2);
  CHECK(implied_bound(p, 6, by_position(p.cycle, {p.shorter.lines[0]})) == 4);
  CHECK(implied_bound(p, 8, by_position(p.cycle, {p.shorter.lines[0], p.longer.lines[1]})) == 8);
}

TEST_CASE("integer points") {
  CyclePathPair p = ring6_pair();
  auto pts = integer_points(p, 6);
  REQUIRE(pts.size() == 3 * 64);
  for (std::size_t mask = 0; mask < 64; ++mask) {
    std::vector<bool> y(6);
    for (std::size_t k = 0; k < 6; ++k) y[k] = mask >> k & 1;
    Rational b = bound_by_hand(p, 6, y);
    CHECK(pts[3 * mask][0] == b);
    CHECK(pts[3 * mask + 1][0] == -b);
    CHECK(pts[3 * mask + 2][0] == 0);
    for (std::size_t k = 0; k < 6; ++k) CHECK(pts[3 * mask][1 + k] == Rational(y[k] ? 1 : 0));
  }

  Network big = ring(std::vector<Rational>(21, Rational(1)));
  CHECK_THROWS_AS(integer_points(split_cycle(fundamental_cycle_basis(big)[0], 0, 3), 21), CapExceeded);
}

TEST_CASE("six-ring certificates") {
  CyclePathPair p = ring6_pair();
  CutCPVI cut = build_cpvi(p, 6);
  CHECK(cut.constant == 14);

  CHECK(validity_certificate(cut).passed);
  CertificateReport facet = facet_certificate(cut);
  CHECK(facet.passed);
  CHECK(facet.detail.find("affine rank 6 of 6") != std::string::npos);
  CHECK_FALSE(facet.witness);
  CHECK(full_dimension_certificate(p, 6).passed);
  CHECK(local_ideal_certificate(p, 6).passed);
  CHECK(hull_equality(p, 6, projected_hull(p, 6)).passed);
}

TEST_CASE("hull candidates on the six-ring") {
  CyclePathPair p = ring6_pair();
  CutCPVI cut = build_cpvi(p, 6);

  // Without the big-M row: a y = 0 vertex reaches the cut's 14.
  CertificateReport strict = hull_equality(p, 6, cpvi_hull_candidate(cut, false));
  CHECK_FALSE(strict.passed);
  REQUIRE(strict.witness);
  CHECK(abs((*strict.witness)[0]) == 14);
  for (std::size_t k = 1; k <= 6; ++k) CHECK((*strict.witness)[k] == 0);

  // With it, still too loose: all y binary but the vertex lies outside the set.
  CertificateReport bounded = hull_equality(p, 6, cpvi_hull_candidate(cut, true));
  CHECK_FALSE(bounded.passed);
  REQUIRE(bounded.witness);
  RatVector w = *bounded.witness;
  std::vector<bool> y(6);
  for (std::size_t k = 0; k < 6; ++k) {
    CHECK((w[1 + k] == 0 || w[1 + k] == 1));
    y[k] = w[1 + k] == 1;
  }
  CHECK(abs(w[0]) > bound_by_hand(p, 6, y));
  CHECK(abs(w[0]) <= cut.rhs_at([&] {
          RatVector v;
          for (bool b : y) v.push_back(b ? 1 : 0);
          return v;
        }()));

  // The explicit witness from the pair <i3, i5>.
  CyclePathPair p35 = ring6_pair(3, 5);
  CutCPVI c35 = build_cpvi(p35, 6);
  std::vector<bool> off_short(6, true);
  for (LineIndex l : p35.shorter.lines) off_short[*p35.cycle.position_of_line(l)] = false;
  RatVector yv;
  for (bool b : off_short) yv.push_back(b ? 1 : 0);
  CHECK(implied_bound(p35, 6, off_short) == 4);
  CHECK(c35.rhs_at(yv) == 6);

  HPolytope box(7);
  box.add_box(0, -6, 6);
  for (std::size_t k = 1; k <= 6; ++k) box.add_box(k, 0, 1);
  CertificateReport trivial = hull_equality(p, 6, box);
  CHECK_FALSE(trivial.passed);
  REQUIRE(trivial.witness);
  RatVector ones(7, Rational(1));
  ones[0] = 6;
  CHECK(box.contains(ones));
  CHECK(6 > implied_bound(p, 6, std::vector<bool>(6, true)));

  Network seven = ring(std::vector<Rational>(7, Rational(1)));
  CyclePathPair p7 = split_cycle(fundamental_cycle_basis(seven)[0], 0, 3);
  CHECK_THROWS_AS(hull_equality(p7, 7, projected_hull(p7, 7)), CapExceeded);
}

TEST_CASE("projected hull matches the point set on random pairs") {
  Rng rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t k = 2 + trial % 4;
    CyclePathPair p = random_pair(rng, k);
    Rational M = p.cycle.total_weight;
    CAPTURE(trial);
    CHECK(local_ideal_certificate(p, M).passed);
    CHECK(hull_equality(p, M, projected_hull(p, M)).passed);
    CHECK(validity_certificate(build_cpvi(p, M)).passed);
    CHECK(full_dimension_certificate(p, M).passed);
    if (p.shorter.total_weight < p.longer.total_weight) CHECK(facet_certificate(build_cpvi(p, M)).passed);
  }
}

TEST_CASE("projection rows are valid and the cut is among them") {
  CyclePathPair p = ring6_pair();
  HPolytope h = projected_hull(p, 6);
  for (const RatVector& pt : integer_points(p, 6)) CHECK(h.contains(pt));
  CutCPVI cut = build_cpvi(p, 6);
  // -dtheta and +dtheta forms of the cut are implied by the projection
  for (int s : {1, -1}) {
    RatVector obj(7, Rational(0));
    obj[0] = s;
    for (std::size_t k = 0; k < 6; ++k) obj[1 + k] = cut.y_coeffs.at(p.cycle.lines[k]);
    LpResult r = rational_simplex(h, obj, Sense::Maximize);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value <= cut.constant);
  }
}

TEST_CASE("boundary cases run to a report") {
  Network tie = ring({1, 1, 1, 1});
  CyclePathPair p = split_cycle(fundamental_cycle_basis(tie)[0], 0, 2);
  CHECK(p.shorter.total_weight == p.longer.total_weight);
  CertificateReport r = facet_certificate(build_cpvi(p, 4));
  CHECK((r.passed || r.witness));
  MESSAGE("tie facet: " << r.detail);

  CyclePathPair f = ring6_pair();
  CutCPVI at_long = build_cpvi(f, 4);
  CHECK(at_long.delta_M == 0);
  CertificateReport b = facet_certificate(at_long);
  CHECK((b.passed || b.witness));
  MESSAGE("M = w(longer): " << b.detail);
  CHECK(validity_certificate(at_long).passed);
  CHECK_THROWS_AS(build_cpvi(f, 3), InvalidBigM);
}

TEST_CASE("certificate JSON") {
  CertificateReport ok{Claim::Validity, true, "fine", std::nullopt};
  auto a = nlohmann::ordered_json::parse(certificate_json(ok));
  CHECK(a["claim"] == "Validity");
  CHECK(a["passed"] == true);
  CHECK(a["witness"].is_null());

  CertificateReport bad{Claim::HullEquality, false, "x", RatVector{q("-1/3"), Rational(0), Rational(1)}};
  auto b = nlohmann::ordered_json::parse(certificate_json(bad));
  CHECK(b["claim"] == "HullEquality");
  CHECK(b["passed"] == false);
  REQUIRE(b["witness"].is_array());
  CHECK(b["witness"][0] == "-1/3");
  CHECK(b["witness"][2] == "1");
  CHECK(to_string(Claim::FacetRank) == "FacetRank");
  CHECK(to_string(Claim::LocalIdeal) == "LocalIdeal");
  CHECK(to_string(Claim::FullDimension) == "FullDimension");
}

TEST_CASE("simplex over the lifted system") {
  ExtendedSystem sys = build_extended(ring6_pair(), 6);
  RatVector obj(sys.num_vars(), Rational(0));
  obj[ExtendedSystem::dtheta()] = 1;
  LpResult r = rational_simplex(sys.polytope(), obj, Sense::Maximize);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == 6);
}

TEST_CASE("brute-force dispatch examples") {
  Network one = Network::create({bus("a")}, {});
  DcotsSolution s1 = brute_force_dcots(one);
  CHECK(s1.cost == 0);
  for (const Rational& v : s1.generation) CHECK(v == 0);

  Network two = Network::create({bus("a", 0, 4, 5), bus("b", 1)}, {line(0, 1, 1, 10)});
  DcotsSolution s2 = brute_force_dcots(two);
  CHECK(s2.cost == 5);
  REQUIRE(s2.flows.size() == 1);
  CHECK(s2.flows[0] == 1);
  CHECK(s2.y == std::vector<bool>{true});

  // Cheap unit at a, demand 3 at c; the direct line a-c carries twice the
  // share of the two-line route and saturates at 1.
  auto triangle = [](bool switchable) {
    return Network::create({bus("a", 0, 10, 1), bus("b"), bus("c", 3, 10, 10)},
                           {line(0, 1, 1, 10, switchable), line(1, 2, 1, 10, switchable), line(0, 2, 1, 1, switchable)});
  };
  DcotsSolution fixed = brute_force_dcots(triangle(false));
  DcotsSolution open = brute_force_dcots(triangle(true));
  CHECK(fixed.cost == q("33/2"));
  CHECK(open.cost == 3);
  CHECK(open.y == std::vector<bool>{true, true, false});
}

TEST_CASE("brute-force dispatch errors") {
  Network short_supply = Network::create({bus("a", 0, 1, 1), bus("b", 2)}, {line(0, 1, 1, 10)});
  CHECK_THROWS_AS(brute_force_dcots(short_supply), AllPatternsInfeasible);

  Network many = ring(std::vector<Rational>(13, Rational(1)));
  CHECK_THROWS_AS(brute_force_dcots(many), CapExceeded);
  BruteForceOptions wide;
  wide.max_switchable = 13;
  Network with_gen = Network::create({bus("a")}, {});
  CHECK_NOTHROW(brute_force_dcots(with_gen, wide));
}

TEST_CASE("brute-force dispatch with cuts keeps the optimum") {
  Rng rng(99);
  int checked = 0;
  for (int trial = 0; trial < 10; ++trial) {
    Network net = random_network(rng, 4, 6);
    DcotsSolution base;
    try {
      base = brute_force_dcots(net);
    } catch (const AllPatternsInfeasible&) {
      continue;
    }
    BruteForceOptions opt;
    Rational M = global_big_m(net);
    for (const Cycle& c : fundamental_cycle_basis(net))
      for (const CyclePathPair& p : all_pairs(c)) opt.cpvis.push_back(build_cpvi(p, M));
    CHECK(brute_force_dcots(net, opt).cost == base.cost);
    ++checked;
  }
  CHECK(checked > 0);
}
