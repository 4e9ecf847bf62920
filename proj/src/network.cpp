#include "otscuts/network.hpp"

#include <fstream>
#include <queue>
#include <set>

#include "json.hpp"
#include "otscuts/error.hpp"

namespace otscuts {

using nlohmann::json;

Rational line_weight(const Line& line) { return line.capacity * line.reactance; }

Network Network::create(std::vector<Bus> buses, std::vector<Line> lines) {
  for (Bus& bus : buses)
    for (Rational* v : {&bus.demand, &bus.gen_max, &bus.gen_cost}) v->canonicalize();
  for (Line& line : lines)
    for (Rational* v : {&line.reactance, &line.capacity}) v->canonicalize();
  std::set<std::string> seen;
  for (const Bus& bus : buses) {
    if (bus.id.empty()) throw ValidationError("bus with empty id");
    if (!seen.insert(bus.id).second) throw ValidationError("duplicate bus id '" + bus.id + "'");
    if (bus.demand < 0) throw ValidationError("bus '" + bus.id + "': negative demand");
    if (bus.gen_max < 0) throw ValidationError("bus '" + bus.id + "': negative gen_max");
    if (bus.gen_cost < 0) throw ValidationError("bus '" + bus.id + "': negative gen_cost");
  }
  if (buses.empty()) throw ValidationError("network has no buses");

  Network net;
  net.adjacency_.resize(buses.size());
  for (std::size_t k = 0; k < lines.size(); ++k) {
    Line& line = lines[k];
    std::string name = "line " + std::to_string(k);
    if (line.from >= buses.size() || line.to >= buses.size()) throw ValidationError(name + ": endpoint out of range");
    if (line.from == line.to) throw ValidationError(name + ": self-loop at bus '" + buses[line.from].id + "'");
    if (line.reactance <= 0) throw ValidationError(name + ": reactance must be positive");
    if (line.capacity <= 0) throw ValidationError(name + ": capacity must be positive");
    line.weight = line_weight(line);
    net.adjacency_[line.from].push_back(k);
    net.adjacency_[line.to].push_back(k);
  }

  std::vector<bool> reached(buses.size(), false);
  std::queue<BusIndex> frontier;
  reached[0] = true;
  frontier.push(0);
  while (!frontier.empty()) {
    BusIndex b = frontier.front();
    frontier.pop();
    for (LineIndex l : net.adjacency_[b]) {
      BusIndex next = lines[l].from == b ? lines[l].to : lines[l].from;
      if (!reached[next]) {
        reached[next] = true;
        frontier.push(next);
      }
    }
  }
  for (std::size_t b = 0; b < buses.size(); ++b)
    if (!reached[b]) throw ValidationError("network is disconnected: bus '" + buses[b].id + "' unreachable from '" + buses[0].id + "'");

  net.buses_ = std::move(buses);
  net.lines_ = std::move(lines);
  return net;
}

std::optional<BusIndex> Network::find_bus(std::string_view id) const {
  for (std::size_t b = 0; b < buses_.size(); ++b)
    if (buses_[b].id == id) return b;
  return std::nullopt;
}

BusIndex Network::bus_index(std::string_view id) const {
  if (auto b = find_bus(id)) return *b;
  throw UnknownBus("unknown bus '" + std::string(id) + "'");
}

BusIndex Network::other_end(LineIndex l, BusIndex b) const {
  const Line& line = lines_.at(l);
  return line.from == b ? line.to : line.from;
}

namespace {

Rational number_field(const json& obj, const char* key, const std::string& where, bool required) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    if (required) throw ParseError(where + ": missing field '" + key + "'");
    return 0;
  }
  if (it->is_string()) {
    try {
      return parse_rational(it->get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(where + ": field '" + key + "': " + e.what());
    }
  }
  // plain JSON integers are exact; floating literals are not accepted
  if (it->is_number_integer()) return Rational(std::to_string(it->get<long long>()));
  throw ParseError(where + ": field '" + key + "' must be a rational string");
}

}  // namespace

Network load_network(std::istream& source) {
  json doc;
  try {
    doc = json::parse(source);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed network JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("buses") || !doc["buses"].is_array())
    throw ParseError("network JSON needs a 'buses' array");
  if (doc.contains("lines") && !doc["lines"].is_array()) throw ParseError("'lines' must be an array");

  std::vector<Bus> buses;
  for (std::size_t k = 0; k < doc["buses"].size(); ++k) {
    const json& jb = doc["buses"][k];
    std::string where = "bus " + std::to_string(k);
    if (!jb.is_object() || !jb.contains("id") || !jb["id"].is_string()) throw ParseError(where + ": needs a string 'id'");
    Bus bus;
    bus.id = jb["id"].get<std::string>();
    where = "bus '" + bus.id + "'";
    bus.demand = number_field(jb, "demand", where, false);
    bus.gen_max = number_field(jb, "gen_max", where, false);
    bus.gen_cost = number_field(jb, "gen_cost", where, false);
    buses.push_back(std::move(bus));
  }

  auto lookup = [&](const json& jl, const char* key, const std::string& where) -> BusIndex {
    if (!jl.contains(key) || !jl[key].is_string()) throw ParseError(where + ": needs a string '" + key + "'");
    std::string id = jl[key].get<std::string>();
    for (std::size_t b = 0; b < buses.size(); ++b)
      if (buses[b].id == id) return b;
    throw ValidationError(where + ": unknown bus '" + id + "'");
  };

  std::vector<Line> lines;
  if (doc.contains("lines")) {
    for (std::size_t k = 0; k < doc["lines"].size(); ++k) {
      const json& jl = doc["lines"][k];
      std::string where = "line " + std::to_string(k);
      if (!jl.is_object()) throw ParseError(where + ": must be an object");
      Line line;
      line.from = lookup(jl, "from", where);
      line.to = lookup(jl, "to", where);
      line.reactance = number_field(jl, "reactance", where, true);
      line.capacity = number_field(jl, "capacity", where, true);
      if (jl.contains("switchable")) {
        if (!jl["switchable"].is_boolean()) throw ParseError(where + ": 'switchable' must be a boolean");
        line.switchable = jl["switchable"].get<bool>();
      }
      lines.push_back(std::move(line));
    }
  }
  return Network::create(std::move(buses), std::move(lines));
}

Network load_network_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open network file '" + path + "'");
  return load_network(in);
}

std::string serialize_network(const Network& net) {
  json doc;
  doc["buses"] = json::array();
  for (const Bus& bus : net.buses())
    doc["buses"].push_back({{"id", bus.id},
                            {"demand", to_string(bus.demand)},
                            {"gen_max", to_string(bus.gen_max)},
                            {"gen_cost", to_string(bus.gen_cost)}});
  doc["lines"] = json::array();
  for (const Line& line : net.lines())
    doc["lines"].push_back({{"from", net.bus(line.from).id},
                            {"to", net.bus(line.to).id},
                            {"reactance", to_string(line.reactance)},
                            {"capacity", to_string(line.capacity)},
                            {"switchable", line.switchable}});
  return doc.dump(2);
}

}  // namespace otscuts
