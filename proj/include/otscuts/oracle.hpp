#pragma once

#include <optional>
#include <string>
#include <vector>

#include "otscuts/cuts.hpp"
#include "otscuts/extended_form.hpp"
#include "otscuts/polytope.hpp"

namespace otscuts {

class MilpModel;

enum class Claim { Validity, FacetRank, LocalIdeal, HullEquality, FullDimension };
std::string to_string(Claim claim);

struct CertificateReport {
  Claim claim = Claim::Validity;
  bool passed = false;
  std::string detail;
  /// Set whenever passed is false.
  std::optional<RatVector> witness;
};

inline constexpr std::size_t kMaxIntegerPointCycle = 20;
inline constexpr std::size_t kMaxHullCycle = 6;

/// Tightest |dtheta| allowed for a binary y (indexed by cycle position):
/// the minimum of the shorter-path, longer-path and big-M rows.
Rational implied_bound(const CyclePathPair& pair, const Rational& M, const std::vector<bool>& y);

/// For every y in {0,1}^|C| (mask order, bit k = cycle position k) the
/// points (B(y), y), (-B(y), y) and (0, y) over (dtheta, y).
std::vector<RatVector> integer_points(const CyclePathPair& pair, const Rational& M);

/// Candidate description of the pair's convex hull over (dtheta, y): the
/// unit box on y, both signs of the cut and, optionally, |dtheta| <= M.
HPolytope cpvi_hull_candidate(const CutCPVI& cut, bool with_big_m_bound);

/// Exact projection of the lifted polytope onto (dtheta, y): Fourier-Motzkin
/// on zeta, z_short, z_long, then redundant rows dropped.
HPolytope projected_hull(const CyclePathPair& pair, const Rational& M);

/// Every integer point of the pair's set satisfies the cut.
CertificateReport validity_certificate(const CutCPVI& cut);

/// Every vertex of the lifted polytope is binary in (y, z_short, z_long, zeta).
CertificateReport local_ideal_certificate(const CyclePathPair& pair, const Rational& M);

/// Strict interior point (0, 1/2) plus |C|+1 perturbations reaching affine rank |C|+1.
CertificateReport full_dimension_certificate(const CyclePathPair& pair, const Rational& M);

/// The explicit base point and |C| neighbours are integer points, tight on
/// the cut and affinely independent; also requires full dimension.
CertificateReport facet_certificate(const CutCPVI& cut);

/// The candidate contains every integer point and each of its vertices is
/// binary in y and lies in the pair's set.
CertificateReport hull_equality(const CyclePathPair& pair, const Rational& M, const HPolytope& candidate);

struct DcotsSolution {
  Rational cost;
  RatVector generation;
  RatVector flows;
  RatVector angles;
  std::vector<bool> y;
};

struct BruteForceOptions {
  std::size_t max_switchable = 12;
  /// Per-line big-M; empty means the global big-M for every line.
  RatVector big_m;
  std::vector<CutCPVI> cpvis;
  std::vector<CutCVI> cvis;
};

/// Exact DC-OTS optimum by enumerating every switching pattern and solving
/// each dispatch LP with rational_simplex. Cut rows in `options` are added
/// to every pattern's LP. Ties keep the first pattern in mask order.
DcotsSolution brute_force_dcots(const Network& net, const BruteForceOptions& options = {});

/// Optimum of a MilpModel by fixing every binary pattern; std::nullopt when
/// all patterns are infeasible.
std::optional<Rational> brute_force_milp(const MilpModel& model, std::size_t max_binaries = 12);

std::string certificate_json(const CertificateReport& report);

}  // namespace otscuts
