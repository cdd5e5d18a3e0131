#include "laguerre/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <typeinfo>

namespace laguerre {

using nlohmann::json;

namespace {

// Field list shared by to_json and from_json.
template <class F>
void for_each_tolerance(Tolerances& t, F&& f) {
  f("frame", t.frame);
  f("exact_identity", t.exact_identity);
  f("radii_sum", t.radii_sum);
  f("orthonormal", t.orthonormal);
  f("weingarten", t.weingarten);
  f("agreement", t.agreement);
  f("trace", t.trace);
  f("divergence", t.divergence);
  f("structure", t.structure);
  f("gauss", t.gauss);
  f("symmetry", t.symmetry);
  f("riemann_symmetry", t.riemann_symmetry);
  f("arbitration", t.arbitration);
  f("classify_C", t.classify_C);
  f("classify_L", t.classify_L);
  f("classify_b", t.classify_b);
  f("lambda", t.lambda);
  f("lambda_sign", t.lambda_sign);
  f("nabla_B", t.nabla_B);
  f("alpha", t.alpha);
  f("igc", t.igc);
  f("two_curvature", t.two_curvature);
  f("construction", t.construction);
  f("roundtrip", t.roundtrip);
  f("tau", t.tau);
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const UmbilicError*>(&e)) return "umbilic";
  if (dynamic_cast<const VanishingCurvatureError*>(&e)) return "vanishing-curvature";
  if (dynamic_cast<const MarginError*>(&e)) return "margin";
  if (dynamic_cast<const ImmersionError*>(&e)) return "immersion";
  if (dynamic_cast<const DegeneracyError*>(&e)) return "degeneracy";
  return "error";
}

double num(double v) { return std::isfinite(v) ? v : 1e300; }

}  // namespace

json Tolerances::to_json() const {
  json j = json::object();
  Tolerances copy = *this;
  for_each_tolerance(copy, [&](const char* k, double& v) { j[k] = v; });
  return j;
}

Tolerances Tolerances::from_json(const json& j) {
  Tolerances t;
  if (!j.is_object()) throw InputError("tolerances must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for_each_tolerance(t, [&](const char* k, double& v) {
      if (it.key() == k) {
        if (!it->is_number() || !(it->get<double>() > 0))
          throw InputError(std::string("tolerance '") + k + "' must be a positive number");
        v = it->get<double>();
        known = true;
      }
    });
    if (!known) throw InputError("unknown tolerance '" + it.key() + "'");
  }
  return t;
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Passed: return "passed";
    case CheckStatus::Failed: return "failed";
    default: return "skipped";
  }
}

bool PropertyReport::all_passed() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const CheckResult& c) { return c.status == CheckStatus::Failed; });
}

const CheckResult* PropertyReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

json vec_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json classification_json(const ClassificationResult& c) {
  json j;
  j["is_isotropic"] = c.is_isotropic;
  j["is_isoparametric"] = c.is_isoparametric;
  j["lambda_estimate"] = c.lambda_estimate;
  j["max_C"] = c.max_C;
  j["L_deviation"] = c.L_deviation;
  j["lambda_spread"] = c.lambda_spread;
  j["b_sorted_mean"] = vec_json(c.b_mean);
  j["b_spread"] = c.b_spread;
  j["alpha"] = c.alpha ? vec_json(*c.alpha) : json(nullptr);
  j["alpha_spread"] = c.alpha_spread;
  j["lambda_nonnegative"] = c.lambda_nonnegative;
  j["both_imply_flat"] = c.both_imply_flat ? json(*c.both_imply_flat) : json(nullptr);
  return j;
}

json PropertyReport::to_json() const {
  json j;
  j["chart"] = chart;
  j["chart_params"] = chart_params;
  j["grid"] = {{"center", vec_json(grid.center)},
               {"half_width", grid.half_width},
               {"points_per_axis", grid.points_per_axis}};
  j["orientation"] = orientation;
  json cs = json::array();
  for (const auto& c : checks) {
    json e = {{"name", c.name},
              {"anchor", c.anchor},
              {"residual", c.residual},
              {"tolerance", c.tolerance},
              {"status", to_string(c.status)}};
    if (!c.note.empty()) e["note"] = c.note;
    cs.push_back(e);
  }
  j["checks"] = cs;
  j["classification"] = classified ? classification_json(classification) : json(nullptr);
  j["l_variant_arbitration"] = {{"closedA_residual", arbitration.closedA},
                                {"closedB_residual", arbitration.closedB},
                                {"matching", arbitration.matching}};
  j["warnings"] = warnings;
  json es = json::array();
  for (const auto& e : errors)
    es.push_back({{"u", vec_json(e.u)}, {"kind", e.kind}, {"message", e.message}});
  j["point_errors"] = es;
  j["all_passed"] = all_passed();
  return j;
}

std::pair<double, double> two_curvature_targets(int n, int m) {
  if (n < 2 || m < 1 || m >= n) throw PreconditionError("multiplicity must satisfy 0 < m < n");
  const double dn = n, dm = m;
  return {std::sqrt((dn - dm) / (dm * dn)), -std::sqrt(dm / (dn * (dn - dm)))};
}

double two_curvature_check(const Chart& chart, const std::vector<Vec>& grid,
                           const PrincipalOptions& opt) {
  const int n = chart.n();
  double worst = 0;
  for (const Vec& u : grid) {
    const JetPoint jet = chart.evaluate_jet(u);
    const CurvatureFrame fr = principal_decomposition(jet, opt);
    const double kmax = fr.k.cwiseAbs().maxCoeff();
    // k is descending: count the size of the leading group
    int m = 1, groups = 1;
    for (int i = 1; i < n; ++i) {
      if (fr.k[i - 1] - fr.k[i] > opt.umbilic_rel * kmax) {
        ++groups;
      } else if (groups == 1) {
        ++m;
      }
    }
    if (groups != 2) throw PreconditionError("point does not have exactly two distinct curvatures");
    Vec b = (Vec::Constant(n, fr.r) - fr.radii) / fr.rho;
    std::sort(b.data(), b.data() + n);
    double best = 1e300;
    for (int mm : {m, n - m}) {
      const auto [b1, b2] = two_curvature_targets(n, mm);
      for (double s : {1.0, -1.0}) {
        Vec t(n);
        for (int i = 0; i < n; ++i) t[i] = s * (i < mm ? b1 : b2);
        std::sort(t.data(), t.data() + n);
        best = std::min(best, (b - t).cwiseAbs().maxCoeff());
      }
    }
    worst = std::max(worst, best);
  }
  return worst;
}

PropertyReport run_suite(const Chart& chart, const Grid& grid, const Tolerances& tol,
                         const CoreOptions& opt) {
  PropertyReport rep;
  const int n = chart.n();
  rep.chart = chart.name();
  rep.chart_params = chart.describe();
  rep.grid = grid;
  rep.orientation = std::string(chart.has_analytic_normal() ? "chart normal" : "cross product") +
                    (chart.flip_normal ? ", flipped" : "");

  std::vector<PointAnalysis> pts;
  std::vector<Vec> good;
  for (const Vec& u : grid.points()) {
    try {
      pts.push_back(analyze_point(chart, u, opt));
      good.push_back(u);
    } catch (const Error& e) {
      rep.errors.push_back({u, error_kind(e), e.what()});
    }
  }
  if (!rep.errors.empty())
    rep.warnings.push_back(std::to_string(rep.errors.size()) + " grid points rejected");
  if (pts.empty()) return rep;

  auto add = [&](const std::string& name, const std::string& anchor, double residual,
                 double tolerance) {
    residual = num(residual);
    rep.checks.push_back({name, anchor, residual, tolerance,
                          residual <= tolerance ? CheckStatus::Passed : CheckStatus::Failed, ""});
  };
  auto skip = [&](const std::string& name, const std::string& anchor, double tolerance,
                  const std::string& why) {
    rep.checks.push_back({name, anchor, 0.0, tolerance, CheckStatus::Skipped, why});
  };
  auto worst = [&](auto&& f) {
    double w = 0;
    for (const auto& p : pts) w = std::max(w, num(f(p)));
    return w;
  };

  for (const auto& p : pts) {
    PointSample s;
    s.u = p.u;
    s.x = p.lift.jet.x;
    s.k = p.lift.frame.k;
    s.rho = p.lift.frame.rho;
    s.r = p.lift.frame.r;
    s.b = p.closed.b;
    s.C = p.closed.C;
    s.L_diag = p.structural.L_structural.diagonal();
    rep.samples.push_back(s);
  }

  // Moving-frame relations.
  std::vector<FrameResiduals> fr;
  for (const auto& p : pts) fr.push_back(frame_residuals(p));
  auto fmax = [&](auto&& g) {
    double w = 0;
    for (const auto& r : fr) w = std::max(w, g(r));
    return w;
  };
  add("frame.Y_null", "frame:<Y,Y>=0", fmax([](auto& r) { return r.YY; }), tol.frame);
  add("frame.N_null", "frame:<N,N>=0", fmax([](auto& r) { return r.NN; }), tol.frame);
  add("frame.eta_null", "frame:<eta,eta>=0", fmax([](auto& r) { return r.etaeta; }), tol.frame);
  add("frame.Y_N", "frame:<Y,N>=-1", fmax([](auto& r) { return r.YN; }), tol.frame);
  add("frame.eta_P", "frame:<eta,P>=-1", fmax([](auto& r) { return r.etaP; }), tol.frame);
  add("frame.Y_eta", "frame:<Y,eta>=0", fmax([](auto& r) { return r.Yeta; }), tol.frame);
  add("frame.N_eta", "frame:<N,eta>=0", fmax([](auto& r) { return r.Neta; }), tol.frame);
  add("frame.P_orthogonality", "frame:<Y,P>=<N,P>=<E(Y),P>=0",
      fmax([](auto& r) { return std::max({r.YP, r.NP, r.EP}); }), tol.frame);
  add("frame.E_orthonormal", "frame:<E_i(Y),E_j(Y)>=delta_ij",
      fmax([](auto& r) { return r.EE; }), tol.frame);
  add("frame.E_orthogonality", "frame:<E_i(Y),Y>=<E_i(Y),N>=<E_i(Y),eta>=0",
      fmax([](auto& r) { return std::max({r.EY, r.EN, r.Eeta}); }), tol.frame);
  add("metric.gram", "metric:g=<dY,dY>", worst([](const PointAnalysis& p) {
        return (p.gram_dY - p.frame.g).cwiseAbs().maxCoeff() /
               std::max(1.0, p.frame.g.cwiseAbs().maxCoeff());
      }),
      tol.frame);

  // Principal frame.
  add("principal.radii_sum", "curvature:sum(r-r_i)=0", worst([](const PointAnalysis& p) {
        const auto& f = p.lift.frame;
        return std::abs((Vec::Constant(f.radii.size(), f.r) - f.radii).sum()) /
               f.radii.cwiseAbs().sum();
      }),
      tol.radii_sum);
  add("principal.I_orthonormal", "curvature:e_i^T I e_j=delta_ij",
      worst([n](const PointAnalysis& p) {
        const Mat& e = p.lift.frame.e;
        return (e.transpose() * p.lift.forms.I * e - Mat::Identity(n, n)).cwiseAbs().maxCoeff();
      }),
      tol.orthonormal);
  if (chart.has_analytic_normal())
    add("principal.weingarten", "curvature:e_i(xi)=-k_i e_i(x)",
        worst([](const PointAnalysis& p) { return p.weingarten_residual; }), tol.weingarten);
  else
    skip("principal.weingarten", "curvature:e_i(xi)=-k_i e_i(x)", tol.weingarten,
         "normal derivative comes from the same relation for cross-product normals");

  // Invariant identities.
  add("identity.sum_b", "invariants:sum b_i=0",
      worst([](const PointAnalysis& p) { return std::abs(p.closed.b.sum()); }),
      tol.exact_identity);
  add("identity.sum_b2", "invariants:sum b_i^2=1",
      worst([](const PointAnalysis& p) { return std::abs(p.closed.b.squaredNorm() - 1.0); }),
      tol.exact_identity);
  add("identity.trace_B_structural", "invariants:tr B=0",
      worst([](const PointAnalysis& p) { return std::abs(p.structural.B.trace()); }),
      tol.agreement);
  add("identity.norm_B_structural", "invariants:|B|^2=1", worst([](const PointAnalysis& p) {
        return std::abs(p.structural.B.squaredNorm() - 1.0);
      }),
      tol.agreement);
  add("invariants.B_agreement", "invariants:B closed vs structural",
      worst([](const PointAnalysis& p) {
        return (p.closed.B - p.structural.B).cwiseAbs().maxCoeff();
      }),
      tol.agreement);
  add("invariants.C_agreement", "invariants:C closed vs structural",
      worst([](const PointAnalysis& p) {
        return (p.closed.C - p.structural.C).cwiseAbs().maxCoeff();
      }),
      tol.agreement);
  add("identity.divergence_B", "invariants:sum_i B_ij,i=(n-1)C_j",
      worst([n](const PointAnalysis& p) {
        double w = 0;
        for (int j = 0; j < n; ++j) {
          double s = 0;
          for (int i = 0; i < n; ++i) s += p.nablaB[(i * n + j) * n + i];
          w = std::max(w, std::abs(s - (n - 1) * p.structural.C[j]));
        }
        return w;
      }),
      tol.divergence);
  add("identity.trace_L", "invariants:tr L+<lap Y,lap Y>/(2n)=0",
      worst([n](const PointAnalysis& p) {
        return std::abs(p.structural.L_structural.trace() +
                        lag_ip(p.frame.lapY, p.frame.lapY) / (2.0 * n));
      }),
      tol.trace);
  add("identity.trace_L_closed_form",
      "invariants:rho^2 tr L=lap_III log rho+(n-2)/2|grad log rho|^2-n/2",
      worst([n](const PointAnalysis& p) {
        const double rho = p.lift.frame.rho;
        return std::abs(rho * rho * p.structural.L_structural.trace() -
                        (p.lap_III_log_rho + 0.5 * (n - 2) * p.grad_III_log_rho_sq - 0.5 * n));
      }),
      tol.trace);

  // Structure equations and curvature of g.
  add("structure.second_derivatives",
      "structure:E_j E_i Y=L_ij Y+delta_ij N+Gamma^k_ij E_k Y+B_ij P",
      worst([](const PointAnalysis& p) { return p.structure_residual; }), tol.structure);
  {
    double w = 0;
    for (const auto& p : pts) w = std::max(w, num(dn_residual(chart, p, opt)));
    add("structure.dN", "structure:E_i N=L_ij E_j Y+C_i P", w, tol.structure);
  }
  add("metric.christoffel_symmetry", "metric:Gamma^k_ij=Gamma^k_ji",
      worst([n](const PointAnalysis& p) { return christoffel_asymmetry(p.metric, n); }),
      tol.symmetry);
  add("metric.riemann_antisymmetry", "metric:R_ijkl=-R_jikl=-R_ijlk",
      worst([n](const PointAnalysis& p) { return riemann_antisymmetry(p.metric, n); }),
      tol.riemann_symmetry);
  add("curvature.gauss_relation", "curvature:R_ijkl=L_jk d_il+L_il d_jk-L_ik d_jl-L_jl d_ik",
      worst([](const PointAnalysis& p) { return gauss_residual(p); }), tol.gauss);

  // Closed-form L variants against the structural tensor.
  rep.arbitration.closedA = worst([](const PointAnalysis& p) {
    return (p.closed.L_closedA - p.structural.L_structural).cwiseAbs().maxCoeff();
  });
  rep.arbitration.closedB = worst([](const PointAnalysis& p) {
    return (p.closed.L_closedB - p.structural.L_structural).cwiseAbs().maxCoeff();
  });
  {
    const bool a = rep.arbitration.closedA <= tol.arbitration;
    const bool b = rep.arbitration.closedB <= tol.arbitration;
    rep.arbitration.matching = a && b ? "both" : a ? "closedA" : b ? "closedB" : "none";
    CheckResult c{"L.arbitration", "invariants:L closed forms vs structural",
                  std::min(rep.arbitration.closedA, rep.arbitration.closedB), tol.arbitration,
                  a != b ? CheckStatus::Passed : CheckStatus::Failed,
                  "matching variant: " + rep.arbitration.matching};
    rep.checks.push_back(c);
    if (a && b) rep.warnings.push_back("both closed-form L variants match; arbitration is inconclusive");
  }

  // Classification and conditional statements.
  if (pts.size() >= 2) {
    ClassifyTolerances ct{tol.classify_C, tol.classify_L, tol.classify_b, tol.lambda};
    rep.classification = classify(pts, ct);
    rep.classified = true;
    const ClassificationResult& cl = rep.classification;
    const double lam = cl.lambda_estimate;
    const std::string need_iso = "requires an L-isotropic input";

    if (cl.is_isotropic) {
      add("isotropic.lambda_nonnegative", "isotropic:lambda>=0", std::max(0.0, -lam),
          tol.lambda_sign);
      add("isotropic.nabla_B", "isotropic:sum (B_ij,k)^2=2n lambda",
          worst([&](const PointAnalysis& p) {
            double s = 0;
            for (double v : p.nablaB) s += v * v;
            return std::abs(s - 2.0 * n * lam);
          }),
          tol.nabla_B);
      {
        const double nb = worst([](const PointAnalysis& p) {
          double s = 0;
          for (double v : p.nablaB) s += v * v;
          return std::sqrt(s);
        });
        const bool consistent = (nb <= tol.nabla_B) == (std::abs(lam) <= tol.lambda);
        rep.checks.push_back({"isotropic.parallel_B_iff_flat", "isotropic:nabla B=0 iff lambda=0",
                              consistent ? 0.0 : 1.0, 0.5,
                              consistent ? CheckStatus::Passed : CheckStatus::Failed, ""});
      }
      add("isotropic.alpha_constant", "isotropic:N-lambda Y constant", cl.alpha_spread, tol.alpha);
      if (lam > tol.lambda) {
        add("isotropic.laplacian_log_rho", "isotropic:lap_III log rho=2n lambda rho^2",
            worst([&](const PointAnalysis& p) {
              const double rho = p.lift.frame.rho;
              return std::abs(p.lap_III_log_rho - 2.0 * n * lam * rho * rho);
            }),
            tol.trace);
        add("isotropic.rho_bound", "isotropic:0<rho^2<1/(2 lambda)",
            worst([&](const PointAnalysis& p) {
              const double rho = p.lift.frame.rho;
              return std::max(0.0, rho * rho - 1.0 / (2.0 * lam));
            }),
            0.0);
      } else {
        skip("isotropic.laplacian_log_rho", "isotropic:lap_III log rho=2n lambda rho^2", tol.trace,
             "requires lambda > 0");
        skip("isotropic.rho_bound", "isotropic:0<rho^2<1/(2 lambda)", 0.0,
             "vacuous (lambda estimate is zero)");
      }
    } else {
      for (const char* nm : {"isotropic.lambda_nonnegative", "isotropic.nabla_B",
                             "isotropic.parallel_B_iff_flat", "isotropic.alpha_constant",
                             "isotropic.laplacian_log_rho", "isotropic.rho_bound"})
        skip(nm, "isotropic", 0.0, need_iso);
    }

    bool distinct = true;
    for (const auto& p : pts)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j)
          if (std::abs(p.closed.b[i] - p.closed.b[j]) <= tol.classify_b) distinct = false;
    if (cl.is_isoparametric && distinct) {
      // a single b_i class per index here, so the sum runs over all j != i
      add("isoparametric.igc", "isoparametric:sum_j R_ijij/(b_i-b_j)=0",
          worst([n](const PointAnalysis& p) {
            double w = 0;
            for (int i = 0; i < n; ++i) {
              double s = 0;
              for (int j = 0; j < n; ++j)
                if (j != i)
                  s += p.metric.riemann[((i * n + j) * n + i) * n + j] /
                       (p.closed.b[i] - p.closed.b[j]);
              w = std::max(w, std::abs(s));
            }
            return w;
          }),
          tol.igc);
    } else {
      skip("isoparametric.igc", "isoparametric:sum_j R_ijij/(b_i-b_j)=0", tol.igc,
           cl.is_isoparametric ? "requires distinct b_i" : "requires an L-isoparametric input");
    }
    if (cl.both_imply_flat)
      add("isotropic_isoparametric.lambda_zero", "isotropic and isoparametric:lambda=0",
          std::abs(lam), tol.lambda);
    else
      skip("isotropic_isoparametric.lambda_zero", "isotropic and isoparametric:lambda=0",
           tol.lambda, "requires both properties");
  } else {
    rep.warnings.push_back("fewer than two valid points; classification skipped");
  }

  try {
    add("two_curvature.constants", "curvature:two distinct principal curvatures",
        two_curvature_check(chart, good, opt.principal), tol.two_curvature);
  } catch (const PreconditionError& e) {
    skip("two_curvature.constants", "curvature:two distinct principal curvatures",
         tol.two_curvature, "requires exactly two distinct principal curvatures");
  }
  return rep;
}

}  // namespace laguerre
