#include "otscuts/graph.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "otscuts/error.hpp"

namespace otscuts {

std::optional<std::size_t> Cycle::position_of_bus(BusIndex b) const {
  auto it = std::find(buses.begin(), buses.end(), b);
  if (it == buses.end()) return std::nullopt;
  return static_cast<std::size_t>(it - buses.begin());
}

std::optional<std::size_t> Cycle::position_of_line(LineIndex l) const {
  auto it = std::find(lines.begin(), lines.end(), l);
  if (it == lines.end()) return std::nullopt;
  return static_cast<std::size_t>(it - lines.begin());
}

namespace {

struct BfsTree {
  std::vector<std::optional<LineIndex>> parent_line;
  std::vector<std::size_t> depth;
  std::vector<bool> in_tree;
};

BfsTree bfs_tree(const Network& net, bool active_only) {
  BfsTree tree;
  tree.parent_line.assign(net.num_buses(), std::nullopt);
  tree.depth.assign(net.num_buses(), 0);
  tree.in_tree.assign(net.num_lines(), false);
  std::vector<bool> reached(net.num_buses(), false);
  std::queue<BusIndex> frontier;
  reached[0] = true;
  frontier.push(0);
  while (!frontier.empty()) {
    BusIndex b = frontier.front();
    frontier.pop();
    for (LineIndex l : net.incident(b)) {
      if (active_only && net.line(l).switchable) continue;
      BusIndex next = net.other_end(l, b);
      if (reached[next]) continue;
      reached[next] = true;
      tree.parent_line[next] = l;
      tree.depth[next] = tree.depth[b] + 1;
      tree.in_tree[l] = true;
      frontier.push(next);
    }
  }
  for (BusIndex b = 0; b < net.num_buses(); ++b)
    if (!reached[b])
      throw DisconnectedError("bus '" + net.bus(b).id + "' is not reachable" + (active_only ? " through active lines" : ""));
  return tree;
}

Cycle make_cycle(const Network& net, std::vector<LineIndex> lines, std::vector<BusIndex> buses) {
  Cycle c;
  c.total_weight = 0;
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const Line& line = net.line(lines[k]);
    c.weights.push_back(line.weight);
    c.forward.push_back(line.from == buses[k]);
    c.total_weight += line.weight;
  }
  c.lines = std::move(lines);
  c.buses = std::move(buses);
  return c;
}

bool lex_less_sorted(std::vector<LineIndex> a, std::vector<LineIndex> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a < b;
}

}  // namespace

std::vector<LineIndex> spanning_tree(const Network& net, bool active_only) {
  BfsTree tree = bfs_tree(net, active_only);
  std::vector<LineIndex> result;
  for (LineIndex l = 0; l < net.num_lines(); ++l)
    if (tree.in_tree[l]) result.push_back(l);
  return result;
}

std::vector<Cycle> fundamental_cycle_basis(const Network& net) {
  BfsTree tree = bfs_tree(net, false);
  std::vector<Cycle> basis;
  for (LineIndex l = 0; l < net.num_lines(); ++l) {
    if (tree.in_tree[l]) continue;
    const Line& line = net.line(l);
    // Walk both endpoints up to their lowest common ancestor.
    std::vector<BusIndex> from_side{line.to};
    std::vector<LineIndex> from_lines;
    std::vector<BusIndex> to_side{line.from};
    std::vector<LineIndex> to_lines;
    BusIndex a = line.to;
    BusIndex b = line.from;
    while (a != b) {
      if (tree.depth[a] >= tree.depth[b]) {
        LineIndex p = *tree.parent_line[a];
        from_lines.push_back(p);
        a = net.other_end(p, a);
        from_side.push_back(a);
      } else {
        LineIndex p = *tree.parent_line[b];
        to_lines.push_back(p);
        b = net.other_end(p, b);
        to_side.push_back(b);
      }
    }
    // Cycle: from -> to via l, up from `to` to the ancestor, down to `from`.
    std::vector<BusIndex> buses{line.from};
    std::vector<LineIndex> lines{l};
    for (std::size_t k = 0; k < from_lines.size(); ++k) {
      buses.push_back(from_side[k]);
      lines.push_back(from_lines[k]);
    }
    // from_side.back() is the ancestor; descend along to_side in reverse.
    for (std::size_t k = to_lines.size(); k-- > 0;) {
      buses.push_back(to_side[k + 1]);
      lines.push_back(to_lines[k]);
    }
    basis.push_back(make_cycle(net, std::move(lines), std::move(buses)));
  }
  return basis;
}

Cycle cycle_from_lines(const Network& net, const std::vector<LineIndex>& line_set) {
  if (line_set.size() < 2) throw ValidationError("a cycle needs at least two lines");
  std::set<LineIndex> unique(line_set.begin(), line_set.end());
  if (unique.size() != line_set.size()) throw ValidationError("cycle lists a line twice");
  std::map<BusIndex, std::vector<LineIndex>> incidence;
  for (LineIndex l : unique) {
    if (l >= net.num_lines()) throw ValidationError("cycle line " + std::to_string(l) + " out of range");
    incidence[net.line(l).from].push_back(l);
    incidence[net.line(l).to].push_back(l);
  }
  for (const auto& [bus, incident] : incidence)
    if (incident.size() != 2) throw ValidationError("lines do not form a simple cycle at bus '" + net.bus(bus).id + "'");

  LineIndex first = *unique.begin();
  std::vector<LineIndex> lines{first};
  std::vector<BusIndex> buses{net.line(first).from};
  BusIndex current = net.line(first).to;
  LineIndex previous = first;
  while (current != buses.front()) {
    const auto& pair = incidence[current];
    LineIndex next = pair[0] == previous ? pair[1] : pair[0];
    buses.push_back(current);
    lines.push_back(next);
    current = net.other_end(next, current);
    previous = next;
  }
  if (lines.size() != unique.size()) throw ValidationError("lines form more than one cycle");
  return make_cycle(net, std::move(lines), std::move(buses));
}

std::optional<Path> shortest_path(const Network& net, const std::vector<bool>& active, BusIndex m, BusIndex n) {
  if (m >= net.num_buses()) throw UnknownBus("bus index " + std::to_string(m) + " out of range");
  if (n >= net.num_buses()) throw UnknownBus("bus index " + std::to_string(n) + " out of range");

  // Label-setting search; weights are positive so the first settle is final.
  std::vector<std::optional<Rational>> dist(net.num_buses());
  std::vector<std::optional<LineIndex>> via(net.num_buses());
  std::vector<bool> settled(net.num_buses(), false);
  using Entry = std::pair<Rational, BusIndex>;
  auto greater = [](const Entry& a, const Entry& b) { return a.first != b.first ? a.first > b.first : a.second > b.second; };
  std::priority_queue<Entry, std::vector<Entry>, decltype(greater)> queue(greater);
  dist[m] = Rational(0);
  queue.emplace(Rational(0), m);
  while (!queue.empty()) {
    auto [d, b] = queue.top();
    queue.pop();
    if (settled[b]) continue;
    settled[b] = true;
    if (b == n) break;
    for (LineIndex l : net.incident(b)) {
      if (l >= active.size() || !active[l]) continue;
      BusIndex next = net.other_end(l, b);
      Rational candidate = d + net.line(l).weight;
      if (!dist[next] || candidate < *dist[next]) {
        dist[next] = candidate;
        via[next] = l;
        queue.emplace(candidate, next);
      }
    }
  }
  if (!settled[n]) return std::nullopt;

  Path path;
  path.total_weight = *dist[n];
  BusIndex b = n;
  path.buses.push_back(n);
  while (b != m) {
    LineIndex l = *via[b];
    path.lines.push_back(l);
    path.weights.push_back(net.line(l).weight);
    b = net.other_end(l, b);
    path.buses.push_back(b);
  }
  std::reverse(path.lines.begin(), path.lines.end());
  std::reverse(path.weights.begin(), path.weights.end());
  std::reverse(path.buses.begin(), path.buses.end());
  return path;
}

std::optional<Rational> shortest_path_bound(const Network& net, const std::vector<bool>& active, BusIndex m, BusIndex n) {
  auto path = shortest_path(net, active, m, n);
  if (!path) return std::nullopt;
  return path->total_weight;
}

CyclePathPair split_cycle(const Cycle& cycle, BusIndex m, BusIndex n) {
  auto pm = cycle.position_of_bus(m);
  auto pn = cycle.position_of_bus(n);
  if (!pm || !pn) throw BusNotOnCycle("bus " + std::to_string(!pm ? m : n) + " is not on the cycle");
  if (m == n) throw BusNotOnCycle("split needs two distinct buses");
  const std::size_t size = cycle.size();

  // Forward arc walks positions pm, pm+1, ..., pn.
  Path forward;
  forward.total_weight = 0;
  forward.buses.push_back(m);
  for (std::size_t k = *pm; k != *pn; k = (k + 1) % size) {
    forward.lines.push_back(cycle.lines[k]);
    forward.weights.push_back(cycle.weights[k]);
    forward.total_weight += cycle.weights[k];
    forward.buses.push_back(cycle.buses[(k + 1) % size]);
  }
  // Backward arc walks positions pm, pm-1, ..., pn.
  Path backward;
  backward.total_weight = 0;
  backward.buses.push_back(m);
  for (std::size_t k = *pm; k != *pn; k = (k + size - 1) % size) {
    std::size_t line_pos = (k + size - 1) % size;
    backward.lines.push_back(cycle.lines[line_pos]);
    backward.weights.push_back(cycle.weights[line_pos]);
    backward.total_weight += cycle.weights[line_pos];
    backward.buses.push_back(cycle.buses[line_pos]);
  }

  bool forward_shorter = forward.total_weight != backward.total_weight
                             ? forward.total_weight < backward.total_weight
                             : lex_less_sorted(forward.lines, backward.lines);
  CyclePathPair pair;
  pair.cycle = cycle;
  pair.m = m;
  pair.n = n;
  pair.shorter = forward_shorter ? std::move(forward) : std::move(backward);
  pair.longer = forward_shorter ? std::move(backward) : std::move(forward);
  return pair;
}

std::vector<CyclePathPair> all_pairs(const Cycle& cycle) {
  std::vector<CyclePathPair> pairs;
  for (std::size_t i = 0; i < cycle.size(); ++i)
    for (std::size_t j = i + 1; j < cycle.size(); ++j) pairs.push_back(split_cycle(cycle, cycle.buses[i], cycle.buses[j]));
  return pairs;
}

}  // namespace otscuts
