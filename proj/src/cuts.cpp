#include "otscuts/cuts.hpp"

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <set>
#include <sstream>

#include "otscuts/bounds.hpp"
#include "otscuts/error.hpp"

namespace otscuts {

namespace {

const Rational& lookup(const std::map<LineIndex, Rational>& values, LineIndex l, const char* what) {
  auto it = values.find(l);
  if (it == values.end()) throw MissingVariable(std::string("point has no ") + what + " value for line " + std::to_string(l));
  return it->second;
}

const Rational& lookup_theta(const FractionalPoint& pt, BusIndex b) {
  auto it = pt.theta.find(b);
  if (it == pt.theta.end()) throw MissingVariable("point has no theta value for bus " + std::to_string(b));
  return it->second;
}

std::set<LineIndex> as_set(const std::vector<LineIndex>& v) { return {v.begin(), v.end()}; }

}  // namespace

Rational CutCPVI::rhs_at(const RatVector& y_by_position) const {
  Rational rhs = constant;
  for (std::size_t k = 0; k < pair.cycle.size(); ++k) rhs += y_coeffs.at(pair.cycle.lines[k]) * y_by_position.at(k);
  return rhs;
}

bool operator==(const CutCPVI& a, const CutCPVI& b) {
  return a.pair.cycle.lines == b.pair.cycle.lines && std::minmax(a.pair.m, a.pair.n) == std::minmax(b.pair.m, b.pair.n) &&
         as_set(a.pair.shorter.lines) == as_set(b.pair.shorter.lines) && a.M == b.M && a.delta_rho == b.delta_rho &&
         a.delta_M == b.delta_M && a.constant == b.constant && a.y_coeffs == b.y_coeffs;
}

CutCPVI build_cpvi(const CyclePathPair& pair, const Rational& M) {
  if (M < pair.longer.total_weight)
    throw InvalidBigM("big-M " + to_string(M) + " is below the longer path weight " + to_string(pair.longer.total_weight));
  CutCPVI cut;
  cut.pair = pair;
  cut.M = M;
  cut.delta_rho = pair.longer.total_weight - pair.shorter.total_weight;
  cut.delta_M = M - pair.longer.total_weight;
  cut.constant = pair.shorter.total_weight + Rational(static_cast<long>(pair.shorter.size())) * cut.delta_rho +
                 Rational(static_cast<long>(pair.longer.size())) * cut.delta_M;
  for (LineIndex l : pair.shorter.lines) cut.y_coeffs[l] = -cut.delta_rho;
  for (LineIndex l : pair.longer.lines) cut.y_coeffs[l] = -cut.delta_M;
  return cut;
}

std::optional<CutCVI> build_cvi(const Network& net, const Cycle& cycle, const std::vector<LineIndex>& subset) {
  if (subset.empty()) throw SubsetNotInCycle("CVI subset is empty");
  std::set<LineIndex> in_s;
  for (LineIndex l : subset) {
    if (!cycle.position_of_line(l)) throw SubsetNotInCycle("line " + std::to_string(l) + " is not on the cycle");
    in_s.insert(l);
  }

  Rational w_s = 0;
  for (std::size_t k = 0; k < cycle.size(); ++k)
    if (in_s.count(cycle.lines[k])) w_s += cycle.weights[k];
  Rational delta = w_s - (cycle.total_weight - w_s);
  if (delta <= 0) return std::nullopt;

  CutCVI cut;
  cut.cycle = cycle;
  cut.subset.assign(in_s.begin(), in_s.end());
  cut.delta_S = delta;
  cut.constant = delta * Rational(static_cast<long>(cycle.size()) - 1);
  for (std::size_t k = 0; k < cycle.size(); ++k) {
    LineIndex l = cycle.lines[k];
    if (in_s.count(l)) {
      cut.y_coeffs[l] = -(delta - cycle.weights[k]);
      const Rational& x = net.line(l).reactance;
      cut.flow_coeffs[l] = cycle.forward[k] ? x : Rational(-x);
    } else {
      cut.y_coeffs[l] = -delta;
    }
  }
  return cut;
}

Rational cpvi_violation(const CutCPVI& cut, const FractionalPoint& pt) {
  Rational lhs = abs(lookup_theta(pt, cut.pair.n) - lookup_theta(pt, cut.pair.m));
  Rational rhs = cut.constant;
  for (const auto& [l, c] : cut.y_coeffs) rhs += c * lookup(pt.y, l, "y");
  return lhs - rhs;
}

Rational cvi_violation(const CutCVI& cut, const FractionalPoint& pt) {
  if (!pt.f) throw MissingVariable("CVI evaluation needs flow values");
  Rational flow = 0;
  for (const auto& [l, c] : cut.flow_coeffs) flow += c * lookup(*pt.f, l, "flow");
  Rational rhs = cut.constant;
  for (const auto& [l, c] : cut.y_coeffs) rhs += c * lookup(pt.y, l, "y");
  return abs(flow) - rhs;
}

bool cycle_is_promising(const Cycle& cycle, const FractionalPoint& pt, const Rational& eps) {
  for (LineIndex l : cycle.lines) {
    auto it = pt.y.find(l);
    if (it == pt.y.end()) continue;
    if (it->second > eps && it->second < 1 - eps) return true;
  }
  return false;
}

std::vector<SeparatedCPVI> separate_cpvi(const Network& net, const std::vector<Cycle>& cycles, const FractionalPoint& pt,
                                         const SeparationConfig& config) {
  const Rational big_m = config.big_m ? *config.big_m : global_big_m(net);
  std::vector<SeparatedCPVI> found;
  for (std::size_t c = 0; c < cycles.size(); ++c) {
    const Cycle& cycle = cycles[c];
    if (config.fractional_cycles_only && !cycle_is_promising(cycle, pt, config.fractional_eps)) continue;
    const std::size_t size = cycle.size();
    const Rational half = cycle.total_weight / 2;
    std::set<std::pair<std::size_t, std::size_t>> visited;
    for (std::size_t i = 0; i < size; ++i) {
      Rational arc = 0;
      for (std::size_t step = 1; step < size; ++step) {
        arc += cycle.weights[(i + step - 1) % size];
        if (arc > half) break;
        std::size_t j = (i + step) % size;
        auto key = std::minmax(i, j);
        if (!visited.insert(key).second) continue;
        BusIndex m = cycle.buses[key.first];
        BusIndex n = cycle.buses[key.second];
        // Screening: the cut's right-hand side never drops below w(shorter).
        Rational dtheta = abs(lookup_theta(pt, n) - lookup_theta(pt, m));
        if (dtheta <= arc) continue;
        CutCPVI cut = build_cpvi(split_cycle(cycle, m, n), big_m);
        Rational violation = cpvi_violation(cut, pt);
        if (violation > config.tolerance) found.push_back({c, std::move(cut), violation});
      }
    }
  }
  std::stable_sort(found.begin(), found.end(), [](const SeparatedCPVI& a, const SeparatedCPVI& b) {
    if (a.violation != b.violation) return a.violation > b.violation;
    if (a.cycle_index != b.cycle_index) return a.cycle_index < b.cycle_index;
    auto pa = std::make_pair(*a.cut.pair.cycle.position_of_bus(a.cut.pair.m), *a.cut.pair.cycle.position_of_bus(a.cut.pair.n));
    auto pb = std::make_pair(*b.cut.pair.cycle.position_of_bus(b.cut.pair.m), *b.cut.pair.cycle.position_of_bus(b.cut.pair.n));
    return pa < pb;
  });
  return found;
}

namespace {

std::vector<std::vector<LineIndex>> cvi_candidate_subsets(const Cycle& cycle) {
  std::vector<std::vector<LineIndex>> subsets;
  const std::size_t size = cycle.size();
  if (size <= 12) {
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << size); ++mask) {
      std::vector<LineIndex> s;
      for (std::size_t k = 0; k < size; ++k)
        if (mask >> k & 1) s.push_back(cycle.lines[k]);
      subsets.push_back(std::move(s));
    }
    return subsets;
  }
  for (const CyclePathPair& pair : all_pairs(cycle)) {
    subsets.push_back(pair.shorter.lines);
    subsets.push_back(pair.longer.lines);
  }
  return subsets;
}

}  // namespace

std::vector<SeparatedCVI> separate_cvi(const Network& net, const std::vector<Cycle>& cycles, const FractionalPoint& pt,
                                       const SeparationConfig& config) {
  if (!pt.f) throw MissingVariable("CVI separation needs flow values in the point");
  std::vector<SeparatedCVI> found;
  for (std::size_t c = 0; c < cycles.size(); ++c) {
    const Cycle& cycle = cycles[c];
    if (config.fractional_cycles_only && !cycle_is_promising(cycle, pt, config.fractional_eps)) continue;
    std::set<std::vector<LineIndex>> seen;
    for (auto& subset : cvi_candidate_subsets(cycle)) {
      std::sort(subset.begin(), subset.end());
      if (!seen.insert(subset).second) continue;
      auto cut = build_cvi(net, cycle, subset);
      if (!cut) continue;
      Rational violation = cvi_violation(*cut, pt);
      if (violation > config.tolerance) found.push_back({c, std::move(*cut), violation});
    }
  }
  std::stable_sort(found.begin(), found.end(), [](const SeparatedCVI& a, const SeparatedCVI& b) {
    if (a.violation != b.violation) return a.violation > b.violation;
    if (a.cycle_index != b.cycle_index) return a.cycle_index < b.cycle_index;
    return a.cut.subset < b.cut.subset;
  });
  return found;
}

std::string cvi_hash(const CutCVI& cut) {
  // FNV-1a over the ascending subset indices
  std::uint32_t h = 2166136261u;
  for (LineIndex l : cut.subset) {
    for (int shift = 0; shift < 64; shift += 8) {
      h ^= static_cast<std::uint32_t>((static_cast<std::uint64_t>(l) >> shift) & 0xff);
      h *= 16777619u;
    }
  }
  std::ostringstream out;
  out << std::hex << std::setw(8) << std::setfill('0') << h;
  return out.str();
}

}  // namespace otscuts
