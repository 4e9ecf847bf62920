#include "otscuts/cut_io.hpp"

#include <fstream>

#include "json.hpp"
#include "otscuts/error.hpp"

namespace otscuts {

using nlohmann::ordered_json;

namespace {

Rational rational_field(const ordered_json& v, const std::string& what) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw ParseError(what + ": expected a rational string");
}

std::size_t index_field(const ordered_json& v, const std::string& what, std::size_t limit) {
  if (!v.is_number_unsigned() || v.get<std::size_t>() >= limit) throw ParseError(what + ": expected an index below " + std::to_string(limit));
  return v.get<std::size_t>();
}

// keyed by line index; std::map order carries over into the object
ordered_json rational_map(const std::map<LineIndex, Rational>& coeffs) {
  ordered_json out = ordered_json::object();
  for (const auto& [l, c] : coeffs) out[std::to_string(l)] = to_string(c);
  return out;
}

std::vector<LineIndex> line_list(const ordered_json& v, const Network& net, const std::string& what) {
  if (!v.is_array()) throw ParseError(what + ": expected an array of line indices");
  std::vector<LineIndex> out;
  for (const auto& e : v) out.push_back(index_field(e, what, net.num_lines()));
  return out;
}

ordered_json parse_json(std::istream& source, const std::string& what) {
  try {
    return ordered_json::parse(source);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(what + ": " + e.what());
  }
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return in;
}

}  // namespace

FractionalPoint load_point(const Network& net, std::istream& source) {
  ordered_json doc = parse_json(source, "point");
  if (!doc.is_object()) throw ParseError("point: expected an object");
  FractionalPoint pt;

  if (!doc.contains("theta") || !doc["theta"].is_object()) throw ParseError("point: missing theta object");
  for (const auto& [id, value] : doc["theta"].items()) {
    auto b = net.find_bus(id);
    if (!b) throw ValidationError("point: unknown bus '" + id + "'");
    pt.theta[*b] = rational_field(value, "theta." + id);
  }

  if (!doc.contains("y") || !doc["y"].is_array()) throw ParseError("point: missing y array");
  const auto& ys = doc["y"];
  if (ys.size() > net.num_lines()) throw ValidationError("point: y has more entries than lines");
  for (LineIndex l = 0; l < net.num_lines(); ++l) {
    if (l >= ys.size() || ys[l].is_null()) {
      if (net.line(l).switchable) throw ValidationError("point: no y for switchable line " + std::to_string(l));
      pt.y[l] = 1;
      continue;
    }
    Rational v = rational_field(ys[l], "y[" + std::to_string(l) + "]");
    if (v < 0 || v > 1) throw ValidationError("point: y[" + std::to_string(l) + "] outside [0, 1]");
    pt.y[l] = v;
  }

  if (doc.contains("f") && !doc["f"].is_null()) {
    const auto& fs = doc["f"];
    if (!fs.is_array() || fs.size() != net.num_lines()) throw ValidationError("point: f must list one flow per line");
    std::map<LineIndex, Rational> f;
    for (LineIndex l = 0; l < net.num_lines(); ++l) f[l] = rational_field(fs[l], "f[" + std::to_string(l) + "]");
    pt.f = std::move(f);
  }
  return pt;
}

FractionalPoint load_point_file(const Network& net, const std::string& path) {
  auto in = open(path);
  return load_point(net, in);
}

std::string cut_json_line(const Network& net, const SeparatedCPVI& entry) {
  const CutCPVI& cut = entry.cut;
  ordered_json doc;
  doc["kind"] = "cpvi";
  doc["cycle_index"] = entry.cycle_index;
  doc["cycle_lines"] = cut.pair.cycle.lines;
  doc["m"] = net.bus(cut.pair.m).id;
  doc["n"] = net.bus(cut.pair.n).id;
  doc["shorter_lines"] = cut.pair.shorter.lines;
  doc["longer_lines"] = cut.pair.longer.lines;
  doc["M"] = to_string(cut.M);
  doc["delta_rho"] = to_string(cut.delta_rho);
  doc["delta_M"] = to_string(cut.delta_M);
  doc["constant"] = to_string(cut.constant);
  doc["y_coeffs"] = rational_map(cut.y_coeffs);
  doc["violation"] = to_string(entry.violation);
  return doc.dump();
}

std::string cut_json_line(const Network&, const SeparatedCVI& entry, bool with_violation) {
  const CutCVI& cut = entry.cut;
  ordered_json doc;
  doc["kind"] = "cvi";
  doc["cycle_index"] = entry.cycle_index;
  doc["cycle_lines"] = cut.cycle.lines;
  doc["subset"] = cut.subset;
  doc["hash"] = cvi_hash(cut);
  doc["delta_S"] = to_string(cut.delta_S);
  doc["constant"] = to_string(cut.constant);
  doc["y_coeffs"] = rational_map(cut.y_coeffs);
  doc["flow_coeffs"] = rational_map(cut.flow_coeffs);
  doc["violation"] = with_violation ? ordered_json(to_string(entry.violation)) : ordered_json(nullptr);
  return doc.dump();
}

CutSet load_cuts(const Network& net, std::istream& source) {
  CutSet set;
  std::string text;
  std::size_t lineno = 0;
  while (std::getline(source, text)) {
    ++lineno;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "cuts line " + std::to_string(lineno);
    ordered_json doc;
    try {
      doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(where + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("kind")) throw ParseError(where + ": expected an object with a kind");
    Cycle cycle = cycle_from_lines(net, line_list(doc.value("cycle_lines", ordered_json()), net, where));
    std::size_t cycle_index = doc.contains("cycle_index") ? index_field(doc["cycle_index"], where, SIZE_MAX) : 0;
    Rational violation = doc.contains("violation") && !doc["violation"].is_null() ? rational_field(doc["violation"], where) : Rational(0);

    const std::string kind = doc["kind"].is_string() ? doc["kind"].get<std::string>() : "";
    if (kind == "cpvi") {
      if (!doc.contains("m") || !doc.contains("n") || !doc.contains("M")) throw ParseError(where + ": cpvi needs m, n and M");
      BusIndex m = net.bus_index(doc["m"].get<std::string>());
      BusIndex n = net.bus_index(doc["n"].get<std::string>());
      set.cpvi.push_back({cycle_index, build_cpvi(split_cycle(cycle, m, n), rational_field(doc["M"], where)), violation});
    } else if (kind == "cvi") {
      auto cut = build_cvi(net, cycle, line_list(doc.value("subset", ordered_json()), net, where));
      if (!cut) throw ValidationError(where + ": subset gives a trivial inequality");
      set.cvi.push_back({cycle_index, std::move(*cut), violation});
    } else {
      throw ParseError(where + ": unknown kind '" + kind + "'");
    }
  }
  return set;
}

CutSet load_cuts_file(const Network& net, const std::string& path) {
  auto in = open(path);
  return load_cuts(net, in);
}

}  // namespace otscuts
