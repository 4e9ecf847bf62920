#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "otscuts/rational.hpp"

namespace otscuts {

using BusIndex = std::size_t;
using LineIndex = std::size_t;

struct Bus {
  std::string id;
  Rational demand;
  Rational gen_max;
  Rational gen_cost;

  friend bool operator==(const Bus&, const Bus&) = default;
};

struct Line {
  BusIndex from = 0;
  BusIndex to = 0;
  Rational reactance;
  Rational capacity;
  /// capacity * reactance: the tightest angle-difference bound across the
  /// line while it is in service.
  Rational weight;
  bool switchable = true;

  friend bool operator==(const Line&, const Line&) = default;
};

/// Validated, immutable power network. Construct through load_network or
/// Network::create; both enforce every invariant.
class Network {
 public:
  static Network create(std::vector<Bus> buses, std::vector<Line> lines);

  const std::vector<Bus>& buses() const { return buses_; }
  const std::vector<Line>& lines() const { return lines_; }
  const Bus& bus(BusIndex b) const { return buses_.at(b); }
  const Line& line(LineIndex l) const { return lines_.at(l); }
  std::size_t num_buses() const { return buses_.size(); }
  std::size_t num_lines() const { return lines_.size(); }

  /// Incident line indices of a bus, ascending.
  const std::vector<LineIndex>& incident(BusIndex b) const { return adjacency_.at(b); }

  std::optional<BusIndex> find_bus(std::string_view id) const;
  /// Like find_bus but throws UnknownBus.
  BusIndex bus_index(std::string_view id) const;

  /// The endpoint of `l` opposite to `b`.
  BusIndex other_end(LineIndex l, BusIndex b) const;

  friend bool operator==(const Network& a, const Network& b) {
    return a.buses_ == b.buses_ && a.lines_ == b.lines_;
  }

 private:
  Network() = default;

  std::vector<Bus> buses_;
  std::vector<Line> lines_;
  std::vector<std::vector<LineIndex>> adjacency_;
};

Rational line_weight(const Line& line);

/// Reads the network JSON document. Throws ParseError for malformed input
/// and ValidationError when a structural or electrical invariant fails.
Network load_network(std::istream& source);
Network load_network_file(const std::string& path);

/// Inverse of load_network; every number is written as an exact rational string.
std::string serialize_network(const Network& net);

}  // namespace otscuts
