#include "otscuts/cli.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "otscuts/bounds.hpp"
#include "otscuts/cut_io.hpp"
#include "otscuts/error.hpp"
#include "otscuts/milp.hpp"
#include "otscuts/oracle.hpp"

namespace otscuts {

using nlohmann::ordered_json;

namespace {

// "-" or empty means the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path.empty() || path == "-") {
      stream_ = &fallback;
    } else {
      file_.open(path, std::ios::binary);
      if (!file_) throw ParseError("cannot write " + path);
      stream_ = &file_;
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
};

std::vector<LineIndex> parse_subset(const std::string& text) {
  std::vector<LineIndex> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      unsigned long v = std::stoul(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::logic_error&) {
      throw ParseError("--subset: '" + item + "' is not a line index");
    }
  }
  return out;
}

struct CutsArgs {
  std::string network, point, kind = "cpvi", tolerance = "0", subset, out;
  bool all_cycles = false;
  std::string fractional_only;
};

int cmd_validate(const std::string& path, std::ostream& out) {
  Network net = load_network_file(path);
  out << net.num_buses() << " buses, " << net.num_lines() << " lines, connected\n";
  return kExitOk;
}

int cmd_bounds(const std::string& path, const std::string& out_path, std::ostream& out, std::ostream& err) {
  Network net = load_network_file(path);
  BoundReport report = bound_report(net);
  Sink sink(out_path, out);
  *sink << bound_report_json(net, report) << '\n';
  std::size_t tight = 0;
  for (const PairBound& p : report.pairs) tight += p.source == BoundSource::ShortestPathActive;
  err << report.pairs.size() << " pairs, global M " << to_string(report.global_M) << ", " << tight
      << " bounded by always-active paths\n";
  return kExitOk;
}

int cmd_cuts(const CutsArgs& a, std::ostream& out, std::ostream& err) {
  Network net = load_network_file(a.network);
  SeparationConfig config;
  config.tolerance = parse_rational(a.tolerance);
  if (config.tolerance < 0) throw ParseError("--tolerance must be >= 0");
  if (!a.fractional_only.empty()) {
    config.fractional_cycles_only = true;
    config.fractional_eps = parse_rational(a.fractional_only);
    if (config.fractional_eps < 0 || config.fractional_eps >= Rational(1, 2))
      throw ParseError("--fractional-only eps must lie in [0, 1/2)");
  }
  std::vector<Cycle> cycles = fundamental_cycle_basis(net);

  std::optional<FractionalPoint> pt;
  if (!a.point.empty()) pt = load_point_file(net, a.point);
  Sink sink(a.out, out);

  if (!a.subset.empty()) {
    if (a.kind != "cvi") throw ParseError("--subset needs --kind cvi");
    std::vector<LineIndex> subset = parse_subset(a.subset);
    for (std::size_t c = 0; c < cycles.size(); ++c) {
      bool inside = std::all_of(subset.begin(), subset.end(), [&](LineIndex l) { return cycles[c].position_of_line(l).has_value(); });
      if (!inside) continue;
      auto cut = build_cvi(net, cycles[c], subset);
      if (!cut) {
        err << "subset gives a trivial inequality on cycle " << c << "\n";
        return kExitFailure;
      }
      SeparatedCVI entry{c, std::move(*cut), 0};
      const bool scored = pt.has_value();
      if (scored) entry.violation = cvi_violation(entry.cut, *pt);
      *sink << cut_json_line(net, entry, scored) << '\n';
      err << "1 cut (0 C-PVI, 1 CVI) on cycle " << c << "\n";
      return kExitOk;
    }
    throw SubsetNotInCycle("no basis cycle contains every line of the subset");
  }

  if (!pt) throw ParseError("--point is required unless --subset is given");
  std::vector<SeparatedCPVI> cpvis;
  std::vector<SeparatedCVI> cvis;
  if (a.kind == "cpvi" || a.kind == "both") cpvis = separate_cpvi(net, cycles, *pt, config);
  if (a.kind == "cvi" || a.kind == "both") {
    if (!pt->f) throw ParseError("CVI separation needs flows (f) in the point file");
    cvis = separate_cvi(net, cycles, *pt, config);
  }
  for (const auto& e : cpvis) *sink << cut_json_line(net, e) << '\n';
  for (const auto& e : cvis) *sink << cut_json_line(net, e) << '\n';
  err << cpvis.size() + cvis.size() << " cuts (" << cpvis.size() << " C-PVI, " << cvis.size() << " CVI) over " << cycles.size()
      << " cycles\n";
  return kExitOk;
}

int cmd_emit(const std::string& path, const std::string& bigm, const std::string& cuts_path, bool extended, const std::string& out_path,
             std::ostream& out, std::ostream& err) {
  Network net = load_network_file(path);
  DcotsOptions options;
  options.bigm = bigm == "bounds" ? BigMStrategy::PerLineFromBounds : BigMStrategy::Global;
  options.extended = extended;
  if (!cuts_path.empty()) options.cuts = load_cuts_file(net, cuts_path);
  MilpModel model = build_dcots(net, options);
  Sink sink(out_path, out);
  write_lp(model, *sink);
  std::size_t binaries = 0;
  for (const Variable& v : model.variables()) binaries += v.kind == VarKind::Binary;
  err << model.variables().size() << " variables (" << binaries << " binary), " << model.constraints().size() << " rows, "
      << options.cuts.cpvi.size() << " C-PVI and " << options.cuts.cvi.size() << " CVI appended\n";
  return kExitOk;
}

int cmd_certify(const std::string& path, std::size_t max_cycle, const std::string& report_path, const std::string& hull, bool strict,
                std::ostream& out, std::ostream& err) {
  if (strict && hull != "cut") throw ParseError("--strict-theorem2 applies to --hull cut only");
  if (max_cycle < 1) throw ParseError("--max-cycle must be >= 1");
  Network net = load_network_file(path);
  const Rational M = global_big_m(net);
  std::vector<Cycle> cycles = fundamental_cycle_basis(net);
  for (std::size_t c = 0; c < cycles.size(); ++c)
    if (cycles[c].size() > max_cycle)
      throw CapExceeded("cycle " + std::to_string(c) + " has " + std::to_string(cycles[c].size()) + " lines, above --max-cycle " +
                        std::to_string(max_cycle));

  ordered_json reports = ordered_json::array();
  std::map<Claim, std::pair<std::size_t, std::size_t>> tally;  // passed, total
  for (std::size_t c = 0; c < cycles.size(); ++c) {
    for (const CyclePathPair& pair : all_pairs(cycles[c])) {
      CutCPVI cut = build_cpvi(pair, M);
      std::vector<CertificateReport> batch{
          validity_certificate(cut),
          facet_certificate(cut),
          local_ideal_certificate(pair, M),
          hull_equality(pair, M, hull == "projection" ? projected_hull(pair, M) : cpvi_hull_candidate(cut, !strict)),
          full_dimension_certificate(pair, M),
      };
      for (const CertificateReport& r : batch) {
        ordered_json entry;
        entry["cycle_index"] = c;
        entry["m"] = net.bus(pair.m).id;
        entry["n"] = net.bus(pair.n).id;
        ordered_json body = ordered_json::parse(certificate_json(r));
        for (auto& [k, v] : body.items()) entry[k] = v;
        reports.push_back(std::move(entry));
        auto& t = tally[r.claim];
        t.first += r.passed;
        t.second += 1;
      }
    }
  }
  Sink sink(report_path, out);
  *sink << reports.dump(2) << '\n';

  bool all = true;
  for (const auto& [claim, t] : tally) {
    all = all && t.first == t.second;
    err << to_string(claim) << ": " << (t.first == t.second ? "PASS" : "FAIL") << " (" << t.first << "/" << t.second << " pairs)\n";
  }
  if (hull == "projection")
    err << "hull candidate: projection of the lifted polytope\n";
  else
    err << "hull candidate: y box, both C-PVI signs" << (strict ? "" : ", |dtheta| <= M") << "\n";
  return all ? kExitOk : kExitFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cycle-based cuts for DC optimal transmission switching"};
  app.require_subcommand(1);

  std::string network;
  std::string out_path;

  auto* validate = app.add_subcommand("validate", "Check a network file");
  validate->add_option("network", network, "Network JSON")->required();

  auto* bounds = app.add_subcommand("bounds", "Angle-difference bounds for every bus pair");
  bounds->add_option("network", network, "Network JSON")->required();
  bounds->add_option("--out", out_path, "Output path, - for standard output");

  CutsArgs cuts_args;
  auto* cuts = app.add_subcommand("cuts", "Separate cuts at a fractional point");
  cuts->add_option("network", cuts_args.network, "Network JSON")->required();
  cuts->add_option("--point", cuts_args.point, "Fractional point JSON");
  cuts->add_option("--kind", cuts_args.kind, "cpvi, cvi or both")->check(CLI::IsMember({"cpvi", "cvi", "both"}));
  cuts->add_option("--tolerance", cuts_args.tolerance, "Report cuts violated by more than this rational");
  auto* all_flag = cuts->add_flag("--all-cycles", cuts_args.all_cycles, "Scan every basis cycle (default)");
  cuts->add_option("--fractional-only", cuts_args.fractional_only, "Scan only cycles with some y* in (eps, 1 - eps)")->excludes(all_flag);
  cuts->add_option("--subset", cuts_args.subset, "Comma-separated line indices: build this one CVI");
  cuts->add_option("--out", cuts_args.out, "Output path, - for standard output");

  std::string bigm = "global";
  std::string cuts_file;
  bool extended = false;
  auto* emit = app.add_subcommand("emit", "Write the switching MILP in LP format");
  emit->add_option("network", network, "Network JSON")->required();
  emit->add_option("--bigm", bigm, "global or bounds")->check(CLI::IsMember({"global", "bounds"}));
  emit->add_option("--cuts", cuts_file, "Cut JSON lines to append");
  emit->add_flag("--extended", extended, "Embed the lifted pair systems of every basis cycle");
  emit->add_option("--out", out_path, "Output path, - for standard output");

  std::size_t max_cycle = 5;
  std::string report_path;
  bool strict = false;
  std::string hull = "cut";
  auto* certify = app.add_subcommand("certify", "Run the certificate suite on every basis cycle pair");
  certify->add_option("network", network, "Network JSON")->required();
  certify->add_option("--max-cycle", max_cycle, "Largest cycle to certify");
  certify->add_option("--report", report_path, "Report path, - for standard output");
  certify->add_option("--hull", hull, "cut: y box, C-PVI and |dtheta| <= M; projection: projected lifted polytope")
      ->check(CLI::IsMember({"cut", "projection"}));
  certify->add_flag("--strict-theorem2", strict, "Drop |dtheta| <= M from the cut candidate");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (*validate) return cmd_validate(network, out);
    if (*bounds) return cmd_bounds(network, out_path, out, err);
    if (*cuts) return cmd_cuts(cuts_args, out, err);
    if (*emit) return cmd_emit(network, bigm, cuts_file, extended, out_path, out, err);
    if (*certify) return cmd_certify(network, max_cycle, report_path, hull, strict, out, err);
  } catch (const CapExceeded& e) {
    err << "CapExceeded: " << e.what() << "\n";
    return kExitCap;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const MissingVariable& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace otscuts
