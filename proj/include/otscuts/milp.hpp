#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "otscuts/cuts.hpp"
#include "otscuts/network.hpp"

namespace otscuts {

enum class VarKind { Continuous, Binary };
enum class RowSense { LessEqual, GreaterEqual, Equal };

struct Variable {
  std::string name;
  VarKind kind = VarKind::Continuous;
  std::optional<Rational> lower;  ///< nullopt: -inf
  std::optional<Rational> upper;  ///< nullopt: +inf
};

struct Term {
  std::size_t var = 0;
  Rational coeff;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  RowSense sense = RowSense::LessEqual;
  Rational rhs;
};

/// Minimization model with unique variable and constraint names.
class MilpModel {
 public:
  std::size_t add_variable(Variable v);
  void add_constraint(Constraint c);
  void add_objective_term(std::size_t var, const Rational& coeff);

  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::vector<Term>& objective() const { return objective_; }
  std::optional<std::size_t> find_variable(const std::string& name) const;
  const Constraint* find_constraint(const std::string& name) const;

 private:
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  std::vector<Term> objective_;
  std::map<std::string, std::size_t> var_index_;
  std::map<std::string, std::size_t> row_index_;
};

enum class BigMStrategy { Global, PerLineFromBounds };

struct CutSet {
  std::vector<SeparatedCPVI> cpvi;
  std::vector<SeparatedCVI> cvi;
};

struct DcotsOptions {
  BigMStrategy bigm = BigMStrategy::Global;
  CutSet cuts;
  /// Embed the lifted pair systems of every basis cycle.
  bool extended = false;
};

/// Big-M used on each line's Ohm rows under the given strategy.
RatVector line_big_m(const Network& net, BigMStrategy strategy);

/// LP-format-safe rendering of an identifier.
std::string lp_name(std::string_view id);

/// DC-OTS model: variables g_<bus> (buses with gen_max > 0),
/// theta_<bus>, f_<i>_<j>_<k>, and binary y_<i>_<j>_<k> for switchable
/// lines. theta of bus 0 is fixed to zero.
MilpModel build_dcots(const Network& net, const DcotsOptions& options = {});

/// Deterministic CPLEX-LP text. Rows holding non-terminating decimals
/// are scaled by the least common multiple of their denominators.
void write_lp(const MilpModel& model, std::ostream& sink);

}  // namespace otscuts
