#pragma once

#include <string>
#include <vector>

#include "otscuts/network.hpp"

namespace otscuts {

enum class BoundSource { ShortestPathActive, TrivialM };

std::string to_string(BoundSource source);

struct PairBound {
  BusIndex m = 0;
  BusIndex n = 0;
  Rational bound;
  BoundSource source = BoundSource::TrivialM;
};

struct BoundReport {
  /// Sum of every line weight.
  Rational global_M;
  /// One entry per unordered pair m < n, in (m, n) order.
  std::vector<PairBound> pairs;
};

Rational global_big_m(const Network& net);

/// Shortest-path bound through non-switchable lines when m and n are joined
/// by such lines, global_big_m otherwise.
PairBound pair_bound(const Network& net, BusIndex m, BusIndex n);

BoundReport bound_report(const Network& net);

std::string bound_report_json(const Network& net, const BoundReport& report);

}  // namespace otscuts
