#pragma once

#include <istream>
#include <string>

#include "otscuts/cuts.hpp"
#include "otscuts/milp.hpp"

namespace otscuts {

/// Point file: {"theta": {"<bus id>": "p/q", ...},
///              "y": [ per line, null allowed for non-switchable lines ],
///              "f": [ per line ] (optional)}
/// Buses missing from theta are left out; null y on a fixed line reads as 1.
FractionalPoint load_point(const Network& net, std::istream& source);
FractionalPoint load_point_file(const Network& net, const std::string& path);

/// One JSON object per cut, no trailing newline.
std::string cut_json_line(const Network& net, const SeparatedCPVI& entry);
/// With with_violation false the violation field is null.
std::string cut_json_line(const Network& net, const SeparatedCVI& entry, bool with_violation = true);

/// Reads JSON lines written by cut_json_line and rebuilds each cut from its
/// cycle lines, pair (or subset) and big-M. Blank lines are skipped.
CutSet load_cuts(const Network& net, std::istream& source);
CutSet load_cuts_file(const Network& net, const std::string& path);

}  // namespace otscuts
