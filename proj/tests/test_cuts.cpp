#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "oracles.hpp"
#include "otscuts/error.hpp"
#include "otscuts/oracle.hpp"

using namespace otscuts;
using namespace otscuts::test;

namespace {

Cycle ring6_cycle() { return fundamental_cycle_basis(ring6())[0]; }

FractionalPoint uniform_point(const Network& net, const Rational& theta, const Rational& y) {
  FractionalPoint pt;
  for (BusIndex b = 0; b < net.num_buses(); ++b) pt.theta[b] = theta;
  for (LineIndex l = 0; l < net.num_lines(); ++l) pt.y[l] = y;
  return pt;
}

}  // namespace

TEST_CASE("C-PVI of the six-ring pair") {
  CutCPVI cut = build_cpvi(split_cycle(ring6_cycle(), 0, 4), 6);
  CHECK(cut.delta_rho == 2);
  CHECK(cut.delta_M == 2);
  CHECK(cut.constant == 14);
  CHECK(cut.y_coeffs.size() == 6);
  for (const auto& [l, c] : cut.y_coeffs) CHECK(c == -2);

  Rational sum = 0;
  for (const auto& [l, c] : cut.y_coeffs) sum += c;
  CHECK(cut.constant + sum == 2);

  RatVector y(6, Rational(1));
  CHECK(cut.rhs_at(y) == 2);
  // one shorter-path line off
  y[*cut.pair.cycle.position_of_line(cut.pair.shorter.lines[0])] = 0;
  CHECK(cut.rhs_at(y) == 4);
}

TEST_CASE("C-PVI needs M at least the longer path") {
  CHECK_THROWS_AS(build_cpvi(split_cycle(ring6_cycle(), 0, 4), 3), InvalidBigM);
  CutCPVI edge = build_cpvi(split_cycle(ring6_cycle(), 0, 4), 4);
  CHECK(edge.delta_M == 0);
}

TEST_CASE("C-PVI violation") {
  Network net = ring6();
  CutCPVI cut = build_cpvi(split_cycle(ring6_cycle(), 0, 4), 6);
  FractionalPoint pt = uniform_point(net, 0, 1);
  pt.theta[4] = 2;
  CHECK(cpvi_violation(cut, pt) == 0);
  pt.theta[4] = 0;
  CHECK(cpvi_violation(cut, pt) == -2);
  pt.theta[4] = 3;
  CHECK(cpvi_violation(cut, pt) == 1);
  pt.theta[4] = -3;
  CHECK(cpvi_violation(cut, pt) == 1);
  pt.theta.erase(0);
  CHECK_THROWS_AS(cpvi_violation(cut, pt), MissingVariable);
}

TEST_CASE("CVI of the six-ring subset") {
  Network net = ring6();
  auto cut = build_cvi(net, ring6_cycle(), {1, 2, 4, 5});
  REQUIRE(cut);
  CHECK(cut->delta_S == 2);
  CHECK(cut->constant == 10);
  for (LineIndex l : {1, 2, 4, 5}) CHECK(cut->y_coeffs.at(l) == -1);
  for (LineIndex l : {0, 3}) CHECK(cut->y_coeffs.at(l) == -2);
  CHECK(cut->flow_coeffs.size() == 4);
  for (const auto& [l, c] : cut->flow_coeffs) CHECK(abs(c) == 1);
}

TEST_CASE("CVI triviality and the full cycle") {
  Network net = ring6();
  CHECK_FALSE(build_cvi(net, ring6_cycle(), {0, 1, 2}));
  auto full = build_cvi(net, ring6_cycle(), {0, 1, 2, 3, 4, 5});
  REQUIRE(full);
  CHECK(full->delta_S == 6);
  for (const auto& [l, c] : full->y_coeffs) CHECK(c == -(6 - 1));
  CHECK_THROWS_AS(build_cvi(net, ring6_cycle(), {}), SubsetNotInCycle);

  Network two_cycles = Network::create({bus("a"), bus("b"), bus("c"), bus("d")},
                                       {line(0, 1, 1, 1), line(1, 2, 1, 1), line(0, 2, 1, 1), line(2, 3, 1, 1), line(0, 3, 1, 1)});
  Cycle c0 = fundamental_cycle_basis(two_cycles)[0];
  LineIndex outside = 0;
  while (c0.position_of_line(outside)) ++outside;
  CHECK_THROWS_AS(build_cvi(two_cycles, c0, {outside}), SubsetNotInCycle);
}

TEST_CASE("CVI violation uses oriented flows") {
  Network net = ring6();
  Cycle c = ring6_cycle();
  auto cut = build_cvi(net, c, {0, 1, 2, 3, 4, 5});
  REQUIRE(cut);
  FractionalPoint pt = uniform_point(net, 0, 1);
  CHECK_THROWS_AS(cvi_violation(*cut, pt), MissingVariable);
  std::map<LineIndex, Rational> f;
  // unit circulation along the cycle orientation
  for (std::size_t k = 0; k < c.size(); ++k) f[c.lines[k]] = c.forward[k] ? 1 : -1;
  pt.f = f;
  // |6| - (6*5 - 6*5) = 6
  CHECK(cvi_violation(*cut, pt) == 6);
}

TEST_CASE("separation on the six-ring cycle") {
  Network net = ring6();
  std::vector<Cycle> cycles{ring6_cycle()};
  CHECK(separate_cpvi(net, cycles, uniform_point(net, 0, Rational(1, 2))).empty());

  // theta_i4 = 3 with y = 1; the other angles interpolate along the long arc
  FractionalPoint pt = uniform_point(net, 0, 1);
  pt.theta = {{0, 0}, {1, Rational(3, 4)}, {2, Rational(3, 2)}, {3, Rational(9, 4)}, {4, 3}, {5, Rational(3, 2)}};
  auto found = separate_cpvi(net, cycles, pt);
  bool hit = false;
  for (const SeparatedCPVI& s : found) {
    if (std::set<BusIndex>{s.cut.pair.m, s.cut.pair.n} == std::set<BusIndex>{0, 4}) {
      hit = true;
      CHECK(s.violation == 1);
    }
  }
  CHECK(hit);
  for (std::size_t k = 1; k < found.size(); ++k) CHECK(found[k - 1].violation >= found[k].violation);

  // only <i0,i4> is violated at this y = 1/2 point
  Rational half(1, 2);
  FractionalPoint lone = uniform_point(net, 0, half);
  lone.theta = {{0, 0}, {1, 3}, {2, Rational(9, 2)}, {3, 6}, {4, 9}, {5, Rational(9, 2)}};
  found = separate_cpvi(net, cycles, lone);
  REQUIRE(found.size() == 1);
  CHECK(found[0].violation == 1);
  CHECK(std::set<BusIndex>{found[0].cut.pair.m, found[0].cut.pair.n} == std::set<BusIndex>{0, 4});
}

TEST_CASE("tolerance and the fractional-cycle filter") {
  Network net = ring6();
  std::vector<Cycle> cycles{ring6_cycle()};
  FractionalPoint pt = uniform_point(net, 0, 1);
  pt.theta[4] = 3;
  SeparationConfig config;
  std::size_t all = separate_cpvi(net, cycles, pt, config).size();
  CHECK(all > 0);
  config.tolerance = 1;
  for (const SeparatedCPVI& s : separate_cpvi(net, cycles, pt, config)) CHECK(s.violation > 1);
  config.tolerance = 0;
  config.fractional_cycles_only = true;
  CHECK(separate_cpvi(net, cycles, pt, config).empty());  // y* integral everywhere
  CHECK_FALSE(cycle_is_promising(cycles[0], pt, 0));
  pt.y[2] = Rational(1, 2);
  CHECK(cycle_is_promising(cycles[0], pt, 0));
  CHECK_FALSE(cycle_is_promising(cycles[0], pt, Rational(1, 2)));
}

TEST_CASE("every C-PVI is valid on every integer point") {
  Rng rng(2);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t size = 3 + trial % 6;
    Cycle c = fundamental_cycle_basis(ring(random_weights(rng, size)))[0];
    for (const CyclePathPair& pair : all_pairs(c)) {
      CutCPVI cut = build_cpvi(pair, c.total_weight);
      for (const RatVector& p : integer_points(pair, c.total_weight)) {
        RatVector y(p.begin() + 1, p.end());
        CHECK(abs(p[0]) <= cut.rhs_at(y));
      }
    }
  }
}

TEST_CASE("screened pairs are never violated") {
  Rng rng(6);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t size = 3 + trial % 6;
    Network net = ring(random_weights(rng, size));
    Cycle c = fundamental_cycle_basis(net)[0];
    for (int s = 0; s < 10; ++s) {
      FractionalPoint pt = random_point(rng, net, 3);
      for (const CyclePathPair& pair : all_pairs(c)) {
        Rational dtheta = abs(pt.theta[pair.n] - pt.theta[pair.m]);
        if (dtheta <= pair.shorter.total_weight) CHECK(cpvi_violation(build_cpvi(pair, c.total_weight), pt) <= 0);
      }
    }
  }
}

TEST_CASE("separation equals exhaustive enumeration") {
  Rng rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    Network net = trial % 2 ? ring(random_weights(rng, 3 + trial % 6)) : random_network(rng, 3 + trial % 4, 4 + trial % 5);
    auto cycles = fundamental_cycle_basis(net);
    const Rational M = global_big_m(net);
    for (int s = 0; s < 10; ++s) {
      FractionalPoint pt = random_point(rng, net, 2 + s % 3);
      for (const Rational& tol : {Rational(0), Rational(1, 3)}) {
        SeparationConfig config;
        config.tolerance = tol;
        std::vector<std::tuple<std::size_t, BusIndex, BusIndex, Rational>> got;
        for (const SeparatedCPVI& e : separate_cpvi(net, cycles, pt, config))
          got.emplace_back(e.cycle_index, std::min(e.cut.pair.m, e.cut.pair.n), std::max(e.cut.pair.m, e.cut.pair.n), e.violation);
        std::sort(got.begin(), got.end());
        CHECK(got == exhaustive_cpvi(cycles, pt, M, tol));
      }
    }
  }
}

TEST_CASE("separated cuts match cuts built directly") {
  Rng rng(19);
  Network net = ring(random_weights(rng, 7));
  auto cycles = fundamental_cycle_basis(net);
  FractionalPoint pt = random_point(rng, net, 4);
  for (const SeparatedCPVI& e : separate_cpvi(net, cycles, pt)) {
    CutCPVI direct = build_cpvi(split_cycle(cycles[e.cycle_index], e.cut.pair.n, e.cut.pair.m), global_big_m(net));
    CHECK(direct == e.cut);
    CHECK(cpvi_violation(direct, pt) == e.violation);
  }
}

TEST_CASE("CVI separation equals brute force over subsets") {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    Network net = ring(random_weights(rng, 3 + trial % 5));
    auto cycles = fundamental_cycle_basis(net);
    const Cycle& c = cycles[0];
    FractionalPoint pt = random_point(rng, net, 2);
    std::set<std::pair<std::vector<LineIndex>, Rational>> expected;
    for (std::uint32_t mask = 1; mask < (1u << c.size()); ++mask) {
      std::vector<LineIndex> s;
      for (std::size_t k = 0; k < c.size(); ++k)
        if (mask >> k & 1) s.push_back(c.lines[k]);
      std::sort(s.begin(), s.end());
      auto cut = build_cvi(net, c, s);
      if (!cut) continue;
      Rational v = cvi_violation(*cut, pt);
      if (v > 0) expected.insert({s, v});
    }
    std::set<std::pair<std::vector<LineIndex>, Rational>> got;
    for (const SeparatedCVI& e : separate_cvi(net, cycles, pt)) got.insert({e.cut.subset, e.violation});
    CHECK(got == expected);
  }
}

TEST_CASE("every CVI holds on the cycle relaxation") {
  Rng rng(31);
  for (int trial = 0; trial < 12; ++trial) {
    Network net = ring(random_weights(rng, 3 + trial % 4));
    Cycle c = fundamental_cycle_basis(net)[0];
    for (std::uint32_t mask = 1; mask < (1u << c.size()); ++mask) {
      std::vector<LineIndex> s;
      for (std::size_t k = 0; k < c.size(); ++k)
        if (mask >> k & 1) s.push_back(c.lines[k]);
      auto cut = build_cvi(net, c, s);
      if (!cut) continue;
      for (std::uint32_t ym = 0; ym < (1u << c.size()); ++ym) {
        std::vector<bool> y(c.size());
        Rational rhs = cut->constant;
        for (std::size_t k = 0; k < c.size(); ++k) {
          y[k] = ym >> k & 1;
          if (y[k]) rhs += cut->y_coeffs.at(c.lines[k]);
        }
        CHECK(cvi_lp_max(net, *cut, y) <= rhs);
      }
    }
  }
}

TEST_CASE("CVI hash is stable") {
  Network net = ring6();
  auto a = build_cvi(net, ring6_cycle(), {1, 2, 4, 5});
  auto b = build_cvi(net, ring6_cycle(), {5, 4, 2, 1});
  REQUIRE(a);
  REQUIRE(b);
  CHECK(cvi_hash(*a) == cvi_hash(*b));
  CHECK(cvi_hash(*a).size() == 8);
  CHECK(cvi_hash(*a) != cvi_hash(*build_cvi(net, ring6_cycle(), {0, 1, 2, 3})));
}
