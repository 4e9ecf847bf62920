#pragma once

#include <string>
#include <vector>

#include "otscuts/cuts.hpp"
#include "otscuts/graph.hpp"
#include "otscuts/polytope.hpp"

namespace otscuts {

/// Lifted linear system for one cycle pair over the variables
///   [ dtheta, y_0 .. y_{|C|-1}, z_short, z_long, zeta ]
/// where y_k belongs to pair.cycle.lines[k], z_short / z_long indicate that
/// every line of the shorter / longer arc is in service, and zeta stands for
/// z_long * (1 - z_short).
struct ExtendedSystem {
  CyclePathPair pair;
  Rational M;
  /// Path-linking, McCormick and angle rows, in that order.
  std::vector<HalfSpace> constraints;
  /// Unit boxes on y, z_short, z_long and zeta.
  std::vector<HalfSpace> boxes;

  std::size_t num_vars() const { return pair.cycle.size() + 4; }
  static constexpr std::size_t dtheta() { return 0; }
  std::size_t y(std::size_t position) const { return 1 + position; }
  std::size_t z_short() const { return 1 + pair.cycle.size(); }
  std::size_t z_long() const { return 2 + pair.cycle.size(); }
  std::size_t zeta() const { return 3 + pair.cycle.size(); }

  std::vector<std::string> variable_names() const;
  const HalfSpace& constraint(std::string_view label) const;
  HPolytope polytope() const;
};

/// Throws InvalidBigM when M is below the longer arc's weight.
ExtendedSystem build_extended(const CyclePathPair& pair, const Rational& M);

/// Projects the lifted system onto (dtheta, y) by Fourier-Motzkin steps on
/// the +dtheta angle row: zeta, then z_short, then z_long are each cancelled
/// against their lower-bounding row.
CutCPVI project_to_cpvi(const ExtendedSystem& sys);

/// One Fourier-Motzkin combination: cancels `var` (positive in `row`)
/// against `lower` (negative in `var`). Returns `row` unchanged when its
/// coefficient is already zero.
HalfSpace eliminate_with(const HalfSpace& row, const HalfSpace& lower, std::size_t var);

}  // namespace otscuts
