#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "otscuts/graph.hpp"
#include "otscuts/network.hpp"

namespace otscuts {

/// Cycle-induced path-based inequality for a pair <m, n>:
///   |theta_n - theta_m| <= constant + sum_l y_coeffs[l] * y_l
struct CutCPVI {
  CyclePathPair pair;
  Rational M;
  Rational delta_rho;  ///< w(longer) - w(shorter)
  Rational delta_M;    ///< M - w(longer)
  Rational constant;
  std::map<LineIndex, Rational> y_coeffs;

  /// Right-hand side for y given by cycle position.
  Rational rhs_at(const RatVector& y_by_position) const;
};

/// Cycle-based inequality over a line subset S of a cycle:
///   |sum_l flow_coeffs[l] * f_l| <= constant + sum_l y_coeffs[l] * y_l
/// flow_coeffs carry the reactance signed by the cycle orientation.
struct CutCVI {
  Cycle cycle;
  std::vector<LineIndex> subset;  ///< ascending
  Rational delta_S;
  Rational constant;
  std::map<LineIndex, Rational> y_coeffs;
  std::map<LineIndex, Rational> flow_coeffs;
};

bool operator==(const CutCPVI& a, const CutCPVI& b);

struct FractionalPoint {
  std::map<BusIndex, Rational> theta;
  std::map<LineIndex, Rational> y;
  std::optional<std::map<LineIndex, Rational>> f;
};

/// Throws InvalidBigM when M < w(longer).
CutCPVI build_cpvi(const CyclePathPair& pair, const Rational& M);

/// std::nullopt when the inequality is trivial (delta_S <= 0).
/// Throws SubsetNotInCycle for an empty subset or one leaving the cycle.
std::optional<CutCVI> build_cvi(const Network& net, const Cycle& cycle, const std::vector<LineIndex>& subset);

/// |dtheta*| minus the cut's right-hand side; positive means violated.
Rational cpvi_violation(const CutCPVI& cut, const FractionalPoint& pt);
Rational cvi_violation(const CutCVI& cut, const FractionalPoint& pt);

struct SeparationConfig {
  Rational tolerance = 0;
  /// Defaults to the network's global big-M.
  std::optional<Rational> big_m;
  /// Keep only cycles with some y* strictly inside (eps, 1 - eps).
  bool fractional_cycles_only = false;
  Rational fractional_eps = 0;
};

struct SeparatedCPVI {
  std::size_t cycle_index = 0;
  CutCPVI cut;
  Rational violation;
};

struct SeparatedCVI {
  std::size_t cycle_index = 0;
  CutCVI cut;
  Rational violation;
};

/// Walks every anchor bus of every cycle forward while the arc weight stays
/// within w(C)/2, screens pairs with |dtheta*| <= w(shorter), and returns
/// cuts violated by more than the tolerance. Pairs are reported with m
/// before n in cycle order; results sorted by violation, largest first.
std::vector<SeparatedCPVI> separate_cpvi(const Network& net, const std::vector<Cycle>& cycles, const FractionalPoint& pt,
                                         const SeparationConfig& config = {});

/// Subsets are enumerated exhaustively for cycles of at most 12 lines and
/// restricted to the two arcs of every bus pair beyond that. Needs pt.f.
std::vector<SeparatedCVI> separate_cvi(const Network& net, const std::vector<Cycle>& cycles, const FractionalPoint& pt,
                                       const SeparationConfig& config = {});

bool cycle_is_promising(const Cycle& cycle, const FractionalPoint& pt, const Rational& eps);

std::string cvi_hash(const CutCVI& cut);

}  // namespace otscuts
