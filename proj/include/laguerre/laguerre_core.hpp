#pragma once
#include <optional>
#include <vector>

#include "laguerre/pseudo_euclidean.hpp"
#include "laguerre/surface_chart.hpp"

namespace laguerre {

/// Y = rho (x.xi, -x.xi, xi, 1).
Vec position_vector(const JetPoint& jet, const CurvatureFrame& frame);

/// eta = ((1+|x|^2)/2, (1-|x|^2)/2, x, 0) + r (x.xi, -x.xi, xi, 1).
Vec normal_map(const JetPoint& jet, const CurvatureFrame& frame);

/// g = rho^2 III.
Mat laguerre_metric(const CurvatureFrame& frame, const Mat& III);

/// Pointwise quantities that need no derivatives beyond the jet. r and rho
/// use the trace formulas of W = II^{-1} I, which are smooth in u.
struct PointLift {
  JetPoint jet;
  FundamentalForms forms;
  CurvatureFrame frame;
  double r = 0, rho = 0;
  Vec Y, eta;
  Mat g;
  Mat B;  // coordinate Laguerre second fundamental form rho (r III - II)
};

PointLift lift_point(const Chart& chart, const Vec& u, const PrincipalOptions& opt = {});

struct CoreOptions {
  double step = 1e-3;
  FdScheme scheme = FdScheme::Central4;
  PrincipalOptions principal;
};

struct LaguerreFrame {
  Vec Y, N, eta, P, y;
  Mat EY;    // (n+4) x n, column i is E_i(Y)
  Mat g;
  Mat F;     // n x n, column i holds the coordinate components of E_i
  Vec lapY;  // Laplace-Beltrami of Y
};

struct LaguerreInvariants {
  Mat B;
  Vec C;
  Mat L_closedA;     // filled by the closed forms
  Mat L_closedB;     // filled by the closed forms
  Mat L_structural;  // filled by the structural projections
  Vec b;
  std::optional<double> lambda_estimate;
};

/// Metric data at one point. gamma is Gamma^k_ij at k*n*n + i*n + j in
/// coordinates; riemann is R_ijkl at ((i*n+j)*n+k)*n+l in the orthonormal
/// frame E_i, with R^a_bcd = d_c G^a_db - d_d G^a_cb + G^a_ce G^e_db - G^a_de G^e_cb
/// and R_abcd = g_ae R^e_bcd.
struct MetricPoint {
  Mat g;
  std::vector<double> gamma;
  std::vector<double> riemann;
};

struct MetricField {
  std::vector<Vec> points;
  std::vector<MetricPoint> data;
};

/// Everything computed at one parameter point from a single stencil.
struct PointAnalysis {
  Vec u;
  PointLift lift;
  LaguerreFrame frame;
  LaguerreInvariants closed, structural;
  MetricPoint metric;
  std::vector<double> nablaB;  // B_ij,k at (i*n+j)*n+k, orthonormal frame
  std::vector<double> frame_gamma;  // Gamma^k_ij = omega_ik(E_j) at k*n*n+i*n+j
  double lap_III_log_rho = 0;
  double grad_III_log_rho_sq = 0;
  Mat gram_dY;  // <Y_a, Y_b>
  double structure_residual = 0;
  double weingarten_residual = 0;
};

PointAnalysis analyze_point(const Chart& chart, const Vec& u, const CoreOptions& opt = {});

Vec n_vector(const Chart& chart, const Vec& u, const CoreOptions& opt = {});
LaguerreInvariants invariants_closed_form(const Chart& chart, const Vec& u,
                                          const CoreOptions& opt = {});
LaguerreInvariants invariants_structural(const Chart& chart, const Vec& u,
                                         const CoreOptions& opt = {});
MetricField metric_geometry(const Chart& chart, const std::vector<Vec>& grid,
                            const CoreOptions& opt = {});

/// Worst residual of E_i(N) - sum_j L_ij E_j(Y) - C_i P, with E_i(N) from
/// differences of N at neighbouring points.
double dn_residual(const Chart& chart, const PointAnalysis& pa, const CoreOptions& opt = {});

/// Individual frame relations; max() is the worst of them.
struct FrameResiduals {
  double YY = 0, NN = 0, etaeta = 0, YN = 0, etaP = 0, Yeta = 0, Neta = 0;
  double YP = 0, NP = 0, EE = 0, Eeta = 0, EN = 0, EY = 0, EP = 0;
  double max() const;
};

FrameResiduals frame_residuals(const PointAnalysis& pa);

/// |R_ijkl - (L_jk d_il + L_il d_jk - L_ik d_jl - L_jl d_ik)| maximized, L structural.
double gauss_residual(const PointAnalysis& pa);
double max_abs_riemann(const PointAnalysis& pa);
/// |R_ijkl + R_jikl| and |R_ijkl + R_ijlk| maximized.
double riemann_antisymmetry(const MetricPoint& m, int n);
double christoffel_asymmetry(const MetricPoint& m, int n);

struct ClassifyTolerances {
  double C = 1e-5;
  double L = 1e-4;
  double b = 1e-5;
  double lambda = 1e-5;
};

struct ClassificationResult {
  bool is_isotropic = false;
  bool is_isoparametric = false;
  double lambda_estimate = 0;
  std::optional<Vec> alpha;
  double max_C = 0;
  double L_deviation = 0;    // max |L - lambda_point I| over the grid
  double lambda_spread = 0;  // max |lambda_point - lambda_estimate|
  double b_spread = 0;
  double alpha_spread = 0;
  Vec b_mean;  // ascending
  bool lambda_nonnegative = true;
  /// Both properties imply lambda = 0; nullopt when not both hold.
  std::optional<bool> both_imply_flat;
};

ClassificationResult classify(const std::vector<PointAnalysis>& pts,
                              const ClassifyTolerances& tol = {});

}  // namespace laguerre
