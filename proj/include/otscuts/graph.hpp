#pragma once

#include <optional>
#include <vector>

#include "otscuts/network.hpp"

namespace otscuts {

/// Simple walk from endpoints.first to endpoints.second.
struct Path {
  std::vector<LineIndex> lines;
  /// buses.front() == m, buses.back() == n; size == lines.size() + 1
  std::vector<BusIndex> buses;
  std::vector<Rational> weights;
  Rational total_weight;

  BusIndex source() const { return buses.front(); }
  BusIndex target() const { return buses.back(); }
  std::size_t size() const { return lines.size(); }
};

/// Simple cycle. lines[k] joins buses[k] and buses[(k + 1) % size()];
/// forward[k] records whether that traversal agrees with the line's
/// stored from -> to direction.
struct Cycle {
  std::vector<LineIndex> lines;
  std::vector<BusIndex> buses;
  std::vector<Rational> weights;
  std::vector<bool> forward;
  Rational total_weight;

  std::size_t size() const { return lines.size(); }
  std::optional<std::size_t> position_of_bus(BusIndex b) const;
  std::optional<std::size_t> position_of_line(LineIndex l) const;
};

/// A cycle split at a bus pair into its two complementary arcs; both paths
/// run from `m` to `n`.
struct CyclePathPair {
  Cycle cycle;
  BusIndex m = 0;
  BusIndex n = 0;
  Path shorter;
  Path longer;
};

/// BFS spanning tree rooted at bus 0, neighbours visited in line-index
/// order. With active_only, only non-switchable lines are used.
/// Returns the tree's line indices in ascending order.
std::vector<LineIndex> spanning_tree(const Network& net, bool active_only = false);

/// One cycle per non-tree line of spanning_tree(net): the line followed by
/// the tree path back to its start. Ordered by the non-tree line index.
std::vector<Cycle> fundamental_cycle_basis(const Network& net);

/// Builds a Cycle from an unordered set of line indices; throws
/// ValidationError unless the lines form exactly one simple cycle.
Cycle cycle_from_lines(const Network& net, const std::vector<LineIndex>& lines);

/// Minimum-weight path between m and n using only lines with active[l].
/// std::nullopt when n is unreachable from m in that subgraph.
std::optional<Path> shortest_path(const Network& net, const std::vector<bool>& active, BusIndex m, BusIndex n);
std::optional<Rational> shortest_path_bound(const Network& net, const std::vector<bool>& active, BusIndex m, BusIndex n);

/// Splits `cycle` at the distinct buses m and n. Arcs of equal weight are
/// ordered by their ascending line-index lists; the smaller is "shorter".
CyclePathPair split_cycle(const Cycle& cycle, BusIndex m, BusIndex n);

/// All unordered bus pairs of a cycle as splits, ordered by (position of m, position of n).
std::vector<CyclePathPair> all_pairs(const Cycle& cycle);

}  // namespace otscuts
