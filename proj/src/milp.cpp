#include "otscuts/milp.hpp"

#include <cctype>

#include "otscuts/bounds.hpp"
#include "otscuts/error.hpp"
#include "otscuts/extended_form.hpp"

namespace otscuts {

std::size_t MilpModel::add_variable(Variable v) {
  if (var_index_.count(v.name)) throw ValidationError("duplicate variable name '" + v.name + "'");
  std::size_t index = variables_.size();
  var_index_[v.name] = index;
  variables_.push_back(std::move(v));
  return index;
}

void MilpModel::add_constraint(Constraint c) {
  if (row_index_.count(c.name)) throw ValidationError("duplicate constraint name '" + c.name + "'");
  for (const Term& t : c.terms)
    if (t.var >= variables_.size()) throw ValidationError("constraint '" + c.name + "' references an undeclared variable");
  row_index_[c.name] = constraints_.size();
  constraints_.push_back(std::move(c));
}

void MilpModel::add_objective_term(std::size_t var, const Rational& coeff) {
  if (var >= variables_.size()) throw ValidationError("objective references an undeclared variable");
  objective_.push_back({var, coeff});
}

std::optional<std::size_t> MilpModel::find_variable(const std::string& name) const {
  auto it = var_index_.find(name);
  if (it == var_index_.end()) return std::nullopt;
  return it->second;
}

const Constraint* MilpModel::find_constraint(const std::string& name) const {
  auto it = row_index_.find(name);
  return it == row_index_.end() ? nullptr : &constraints_[it->second];
}

std::string lp_name(std::string_view id) {
  static const std::string allowed = "!\"#$%&()/,.;?@_`'{}|~";
  std::string out;
  for (char c : id) out += (std::isalnum(static_cast<unsigned char>(c)) || allowed.find(c) != std::string::npos) ? c : '_';
  return out;
}

RatVector line_big_m(const Network& net, BigMStrategy strategy) {
  const Rational global = global_big_m(net);
  RatVector result(net.num_lines(), global);
  if (strategy == BigMStrategy::Global) return result;
  for (LineIndex l = 0; l < net.num_lines(); ++l) {
    PairBound pb = pair_bound(net, net.line(l).from, net.line(l).to);
    // With the line off, |theta_i - theta_j| is still held by the fixed path.
    if (pb.source == BoundSource::ShortestPathActive) result[l] = pb.bound;
  }
  return result;
}

namespace {

// Linear expression whose y terms of non-switchable lines fold into a constant.
class RowBuilder {
 public:
  explicit RowBuilder(const std::vector<std::optional<std::size_t>>& y_var) : y_var_(y_var) {}

  RowBuilder& add(std::size_t var, const Rational& c) {
    if (c == 0) return *this;
    coeffs_[var] += c;
    if (coeffs_[var] == 0) coeffs_.erase(var);
    return *this;
  }
  RowBuilder& add_y(LineIndex l, const Rational& c) {
    if (y_var_[l]) return add(*y_var_[l], c);
    constant_ += c;
    return *this;
  }
  RowBuilder& add_constant(const Rational& c) {
    constant_ += c;
    return *this;
  }

  Constraint build(std::string name, RowSense sense, const Rational& rhs) const {
    Constraint c;
    c.name = std::move(name);
    c.sense = sense;
    c.rhs = rhs - constant_;
    for (const auto& [var, coeff] : coeffs_) c.terms.push_back({var, coeff});
    return c;
  }

 private:
  const std::vector<std::optional<std::size_t>>& y_var_;
  std::map<std::size_t, Rational> coeffs_;
  Rational constant_ = 0;
};

}  // namespace

MilpModel build_dcots(const Network& net, const DcotsOptions& options) {
  MilpModel model;
  const RatVector big_m = line_big_m(net, options.bigm);

  std::vector<std::string> bus_name(net.num_buses());
  for (BusIndex b = 0; b < net.num_buses(); ++b) bus_name[b] = lp_name(net.bus(b).id);
  std::vector<std::string> line_name(net.num_lines());
  for (LineIndex l = 0; l < net.num_lines(); ++l)
    line_name[l] = bus_name[net.line(l).from] + "_" + bus_name[net.line(l).to] + "_" + std::to_string(l);

  std::vector<std::optional<std::size_t>> g_var(net.num_buses());
  std::vector<std::size_t> theta_var(net.num_buses());
  std::vector<std::size_t> f_var(net.num_lines());
  std::vector<std::optional<std::size_t>> y_var(net.num_lines());

  for (BusIndex b = 0; b < net.num_buses(); ++b) {
    const Bus& bus = net.bus(b);
    if (bus.gen_max > 0) {
      g_var[b] = model.add_variable({"g_" + bus_name[b], VarKind::Continuous, Rational(0), bus.gen_max});
      if (bus.gen_cost != 0) model.add_objective_term(*g_var[b], bus.gen_cost);
    }
  }
  for (BusIndex b = 0; b < net.num_buses(); ++b) {
    if (b == 0) {
      theta_var[b] = model.add_variable({"theta_" + bus_name[b], VarKind::Continuous, Rational(0), Rational(0)});
    } else {
      theta_var[b] = model.add_variable({"theta_" + bus_name[b], VarKind::Continuous, std::nullopt, std::nullopt});
    }
  }
  for (LineIndex l = 0; l < net.num_lines(); ++l)
    f_var[l] = model.add_variable({"f_" + line_name[l], VarKind::Continuous, std::nullopt, std::nullopt});
  for (LineIndex l = 0; l < net.num_lines(); ++l)
    if (net.line(l).switchable) y_var[l] = model.add_variable({"y_" + line_name[l], VarKind::Binary, Rational(0), Rational(1)});

  auto row = [&] { return RowBuilder(y_var); };

  // Nodal balance: inflow - outflow + g = d
  for (BusIndex b = 0; b < net.num_buses(); ++b) {
    RowBuilder r = row();
    for (LineIndex l : net.incident(b)) r.add(f_var[l], net.line(l).to == b ? Rational(1) : Rational(-1));
    if (g_var[b]) r.add(*g_var[b], 1);
    model.add_constraint(r.build("kcl_" + bus_name[b], RowSense::Equal, net.bus(b).demand));
  }

  for (LineIndex l = 0; l < net.num_lines(); ++l) {
    const Line& line = net.line(l);
    // -cap y <= f <= cap y
    model.add_constraint(row().add(f_var[l], 1).add_y(l, line.capacity).build("cap_lo_" + line_name[l], RowSense::GreaterEqual, 0));
    model.add_constraint(row().add(f_var[l], 1).add_y(l, -line.capacity).build("cap_hi_" + line_name[l], RowSense::LessEqual, 0));
  }
  for (LineIndex l = 0; l < net.num_lines(); ++l) {
    const Line& line = net.line(l);
    // |x f - (theta_i - theta_j)| <= M (1 - y)
    auto ohm = [&] {
      RowBuilder r = row();
      r.add(f_var[l], line.reactance).add(theta_var[line.from], -1).add(theta_var[line.to], 1);
      return r;
    };
    model.add_constraint(ohm().add_y(l, -big_m[l]).build("ohm_lo_" + line_name[l], RowSense::GreaterEqual, -big_m[l]));
    model.add_constraint(ohm().add_y(l, big_m[l]).build("ohm_hi_" + line_name[l], RowSense::LessEqual, big_m[l]));
  }

  for (const SeparatedCPVI& entry : options.cuts.cpvi) {
    const CutCPVI& cut = entry.cut;
    std::string base = "cpvi_" + std::to_string(entry.cycle_index) + "_" + bus_name[cut.pair.m] + "_" + bus_name[cut.pair.n];
    // +-(theta_n - theta_m) - sum c y <= constant
    for (int sign : {-1, 1}) {
      RowBuilder r = row();
      r.add(theta_var[cut.pair.n], sign).add(theta_var[cut.pair.m], -sign);
      for (const auto& [l, c] : cut.y_coeffs) r.add_y(l, -c);
      model.add_constraint(r.build(base + (sign > 0 ? "_hi" : "_lo"), RowSense::LessEqual, cut.constant));
    }
  }
  for (const SeparatedCVI& entry : options.cuts.cvi) {
    const CutCVI& cut = entry.cut;
    std::string base = "cvi_" + std::to_string(entry.cycle_index) + "_" + cvi_hash(cut);
    for (int sign : {-1, 1}) {
      RowBuilder r = row();
      for (const auto& [l, c] : cut.flow_coeffs) r.add(f_var[l], sign * c);
      for (const auto& [l, c] : cut.y_coeffs) r.add_y(l, -c);
      model.add_constraint(r.build(base + (sign > 0 ? "_hi" : "_lo"), RowSense::LessEqual, cut.constant));
    }
  }

  if (options.extended) {
    const Rational M = global_big_m(net);
    auto basis = fundamental_cycle_basis(net);
    for (std::size_t c = 0; c < basis.size(); ++c) {
      for (const CyclePathPair& pair : all_pairs(basis[c])) {
        ExtendedSystem sys = build_extended(pair, M);
        std::string base = "ext_" + std::to_string(c) + "_" + bus_name[pair.m] + "_" + bus_name[pair.n];
        std::size_t zs = model.add_variable({base + "_zs", VarKind::Continuous, Rational(0), Rational(1)});
        std::size_t zl = model.add_variable({base + "_zl", VarKind::Continuous, Rational(0), Rational(1)});
        std::size_t zeta = model.add_variable({base + "_zeta", VarKind::Continuous, Rational(0), Rational(1)});
        for (const HalfSpace& h : sys.constraints) {
          RowBuilder r = row();
          const Rational& dt = h.a[sys.dtheta()];
          r.add(theta_var[pair.n], dt).add(theta_var[pair.m], -dt);
          for (std::size_t k = 0; k < pair.cycle.size(); ++k) r.add_y(pair.cycle.lines[k], h.a[sys.y(k)]);
          r.add(zs, h.a[sys.z_short()]).add(zl, h.a[sys.z_long()]).add(zeta, h.a[sys.zeta()]);
          model.add_constraint(r.build(base + "_" + h.label, RowSense::LessEqual, h.b));
        }
      }
    }
  }
  return model;
}

// ---------------------------------------------------------------------------
// LP text

namespace {

constexpr std::size_t kTermsPerLine = 6;
constexpr std::size_t kMaxSignificantDigits = 18;

// Scale factor turning every value into a terminating decimal.
mpz_class scale_for(const std::vector<Rational>& values) {
  mpz_class scale = 1;
  bool needed = false;
  for (const Rational& v : values)
    if (!is_terminating_decimal(v)) needed = true;
  if (!needed) return 1;
  for (const Rational& v : values) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), v.get_den().get_mpz_t());
  return scale;
}

bool too_long(const std::vector<Rational>& values) {
  for (const Rational& v : values)
    if (significant_digits(v) > kMaxSignificantDigits) return true;
  return false;
}

void write_terms(std::ostream& out, const MilpModel& model, const std::vector<Term>& terms, const Rational& scale) {
  std::size_t written = 0;
  for (const Term& t : terms) {
    Rational c = t.coeff * scale;
    if (c == 0) continue;
    if (written > 0 && written % kTermsPerLine == 0) out << "\n  ";
    bool negative = c < 0;
    Rational mag = negative ? Rational(-c) : c;
    if (written == 0) {
      out << (negative ? " -" : " ");
    } else {
      out << (negative ? " - " : " + ");
    }
    if (mag != 1) out << to_decimal_string(mag) << ' ';
    out << model.variables()[t.var].name;
    ++written;
  }
}

const char* sense_text(RowSense s) {
  switch (s) {
    case RowSense::LessEqual:
      return "<=";
    case RowSense::GreaterEqual:
      return ">=";
    case RowSense::Equal:
      return "=";
  }
  return "=";
}

}  // namespace

void write_lp(const MilpModel& model, std::ostream& sink) {
  std::vector<Constraint> rows = model.constraints();
  std::vector<std::string> bound_lines;

  for (std::size_t v = 0; v < model.variables().size(); ++v) {
    const Variable& var = model.variables()[v];
    if (var.kind == VarKind::Binary) continue;
    auto terminating = [](const std::optional<Rational>& b) { return !b || is_terminating_decimal(*b); };
    if (!terminating(var.lower) || !terminating(var.upper)) {
      // A bound with a repeating decimal becomes a scaled row instead.
      if (var.lower) rows.push_back({"bnd_lo_" + var.name, {{v, Rational(1)}}, RowSense::GreaterEqual, *var.lower});
      if (var.upper) rows.push_back({"bnd_hi_" + var.name, {{v, Rational(1)}}, RowSense::LessEqual, *var.upper});
      bound_lines.push_back(" " + var.name + " free");
      continue;
    }
    if (!var.lower && !var.upper) {
      bound_lines.push_back(" " + var.name + " free");
    } else if (var.lower && var.upper && *var.lower == *var.upper) {
      bound_lines.push_back(" " + var.name + " = " + to_decimal_string(*var.lower));
    } else if (!var.lower) {
      bound_lines.push_back(" -inf <= " + var.name + " <= " + to_decimal_string(*var.upper));
    } else if (!var.upper) {
      if (*var.lower != 0) bound_lines.push_back(" " + var.name + " >= " + to_decimal_string(*var.lower));
    } else {
      bound_lines.push_back(" " + to_decimal_string(*var.lower) + " <= " + var.name + " <= " + to_decimal_string(*var.upper));
    }
  }

  sink << "\\ written by otscuts\n";
  {
    std::vector<Rational> values;
    for (const Term& t : model.objective()) values.push_back(t.coeff);
    mpz_class scale = scale_for(values);
    if (scale != 1) sink << "\\ objective scaled by " << scale.get_str() << "\n";
    sink << "Minimize\n obj:";
    write_terms(sink, model, model.objective(), Rational(scale));
    sink << "\n";
  }
  sink << "Subject To\n";
  for (const Constraint& c : rows) {
    std::vector<Rational> values{c.rhs};
    for (const Term& t : c.terms) values.push_back(t.coeff);
    mpz_class scale = scale_for(values);
    Rational s(scale);
    if (scale != 1) sink << "\\ " << c.name << " scaled by " << scale.get_str() << "\n";
    std::vector<Rational> scaled;
    for (const Rational& v : values) scaled.push_back(v * s);
    if (too_long(scaled)) sink << "\\ " << c.name << " has coefficients beyond " << kMaxSignificantDigits << " significant digits\n";
    sink << " " << c.name << ":";
    bool any = false;
    for (const Term& t : c.terms) any = any || t.coeff != 0;
    if (!any) {
      // LP readers need at least one variable on the left.
      sink << " 0 " << model.variables().front().name;
    }
    write_terms(sink, model, c.terms, s);
    sink << " " << sense_text(c.sense) << " " << to_decimal_string(c.rhs * s) << "\n";
  }
  if (!bound_lines.empty()) {
    sink << "Bounds\n";
    for (const std::string& line : bound_lines) sink << line << "\n";
  }
  std::vector<std::string> binaries;
  for (const Variable& v : model.variables())
    if (v.kind == VarKind::Binary) binaries.push_back(v.name);
  if (!binaries.empty()) {
    sink << "Binary\n";
    for (const std::string& name : binaries) sink << " " << name << "\n";
  }
  sink << "End\n";
}

}  // namespace otscuts
