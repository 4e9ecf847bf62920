#include "otscuts/bounds.hpp"

#include "json.hpp"
#include "otscuts/error.hpp"
#include "otscuts/graph.hpp"

namespace otscuts {

std::string to_string(BoundSource source) {
  return source == BoundSource::ShortestPathActive ? "shortest_path_active" : "trivial_m";
}

Rational global_big_m(const Network& net) {
  Rational total = 0;
  for (const Line& line : net.lines()) total += line.weight;
  return total;
}

namespace {

std::vector<bool> fixed_lines(const Network& net) {
  std::vector<bool> active(net.num_lines());
  for (LineIndex l = 0; l < net.num_lines(); ++l) active[l] = !net.line(l).switchable;
  return active;
}

PairBound pair_bound_with(const Network& net, const std::vector<bool>& active, const Rational& big_m, BusIndex m, BusIndex n) {
  if (m >= net.num_buses() || n >= net.num_buses()) throw UnknownBus("bus index out of range");
  if (m == n) throw ValidationError("pair_bound needs distinct buses");
  PairBound result{m, n, big_m, BoundSource::TrivialM};
  if (auto w = shortest_path_bound(net, active, m, n)) {
    result.bound = *w;
    result.source = BoundSource::ShortestPathActive;
  }
  return result;
}

}  // namespace

PairBound pair_bound(const Network& net, BusIndex m, BusIndex n) {
  return pair_bound_with(net, fixed_lines(net), global_big_m(net), m, n);
}

BoundReport bound_report(const Network& net) {
  BoundReport report;
  report.global_M = global_big_m(net);
  auto active = fixed_lines(net);
  for (BusIndex m = 0; m < net.num_buses(); ++m)
    for (BusIndex n = m + 1; n < net.num_buses(); ++n) report.pairs.push_back(pair_bound_with(net, active, report.global_M, m, n));
  return report;
}

std::string bound_report_json(const Network& net, const BoundReport& report) {
  nlohmann::ordered_json doc;
  doc["global_M"] = to_string(report.global_M);
  doc["pairs"] = nlohmann::ordered_json::array();
  for (const PairBound& p : report.pairs) {
    nlohmann::ordered_json entry;
    entry["m"] = net.bus(p.m).id;
    entry["n"] = net.bus(p.n).id;
    entry["bound"] = to_string(p.bound);
    entry["source"] = to_string(p.source);
    doc["pairs"].push_back(std::move(entry));
  }
  return doc.dump();
}

}  // namespace otscuts
