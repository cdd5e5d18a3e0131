#pragma once
#include <string>
#include <vector>

#include "json.hpp"
#include "laguerre/laguerre_core.hpp"
#include "laguerre/surface_chart.hpp"

namespace laguerre {

struct Tolerances {
  double frame = 1e-6;
  double exact_identity = 1e-9;
  double radii_sum = 1e-12;
  double orthonormal = 1e-8;
  double weingarten = 1e-8;
  double agreement = 1e-5;   // closed form vs structural B and C
  double trace = 1e-6;
  double divergence = 1e-4;
  double structure = 1e-3;
  double gauss = 1e-3;
  double symmetry = 1e-10;           // Christoffel symmetry, exact by construction
  double riemann_symmetry = 1e-6;    // first-pair antisymmetry holds only to fd accuracy
  double arbitration = 1e-3;
  double classify_C = 1e-5;
  double classify_L = 1e-4;
  double classify_b = 1e-5;
  double lambda = 1e-5;
  double lambda_sign = 1e-6;
  double nabla_B = 1e-4;
  double alpha = 1e-6;
  double igc = 1e-4;
  double two_curvature = 1e-6;
  double construction = 1e-6;  // frobenius residuals
  double roundtrip = 1e-9;     // constructed vs explicit chart
  double tau = 1e-12;

  nlohmann::json to_json() const;
  static Tolerances from_json(const nlohmann::json& j);
};

enum class CheckStatus { Passed, Failed, Skipped };
std::string to_string(CheckStatus s);

struct CheckResult {
  std::string name;
  std::string anchor;
  double residual = 0;
  double tolerance = 0;
  CheckStatus status = CheckStatus::Skipped;
  std::string note;
};

struct PointError {
  Vec u;
  std::string kind;
  std::string message;
};

struct Arbitration {
  double closedA = 0, closedB = 0;
  std::string matching;  // "closedA", "closedB", "both" or "none"
};

/// Per-point values written to the sample CSV.
struct PointSample {
  Vec u, x, k, b, C, L_diag;
  double rho = 0, r = 0;
};

struct PropertyReport {
  std::string chart;
  std::string chart_params;
  Grid grid;
  std::string orientation;
  std::vector<CheckResult> checks;
  bool classified = false;
  ClassificationResult classification;
  Arbitration arbitration;
  std::vector<std::string> warnings;
  std::vector<PointError> errors;
  std::vector<PointSample> samples;

  bool all_passed() const;
  const CheckResult* find(const std::string& name) const;
  nlohmann::json to_json() const;
};

PropertyReport run_suite(const Chart& chart, const Grid& grid, const Tolerances& tol = {},
                         const CoreOptions& opt = {});

/// Worst distance between computed b and the two-curvature constants
/// sqrt((n-m)/(mn)), -sqrt(m/(n(n-m))), over sign and multiplicity choices.
double two_curvature_check(const Chart& chart, const std::vector<Vec>& grid,
                           const PrincipalOptions& opt = {});

/// Two-curvature constants for multiplicity m of the first curvature.
std::pair<double, double> two_curvature_targets(int n, int m);

nlohmann::json classification_json(const ClassificationResult& c);
nlohmann::json vec_json(const Vec& v);

}  // namespace laguerre
