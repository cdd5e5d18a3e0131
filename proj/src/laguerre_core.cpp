#include "laguerre/laguerre_core.hpp"

#include <algorithm>
#include <cmath>

namespace laguerre {

namespace {

Vec lift_vector(const JetPoint& jet, double rho) {
  const int n = jet.n();
  Vec Y(n + 4);
  const double s = jet.x.dot(jet.xi);
  Y[0] = s;
  Y[1] = -s;
  Y.segment(2, n + 1) = jet.xi;
  Y[n + 3] = 1.0;
  return rho * Y;
}

Vec eta_vector(const JetPoint& jet, double r) {
  const int n = jet.n();
  Vec e(n + 4);
  const double xx = jet.x.squaredNorm();
  e[0] = 0.5 * (1.0 + xx);
  e[1] = 0.5 * (1.0 - xx);
  e.segment(2, n + 1) = jet.x;
  e[n + 3] = 0.0;
  return e + lift_vector(jet, r);
}

// Gamma^k_ij = 1/2 g^{kl} (d_i g_lj + d_j g_li - d_l g_ij).
std::vector<double> christoffel(const Mat& g, const std::vector<Mat>& dg) {
  const int n = static_cast<int>(g.rows());
  const Mat gi = g.inverse();
  std::vector<double> G(n * n * n, 0.0);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double acc = 0;
        for (int l = 0; l < n; ++l)
          acc += gi(k, l) * (dg[i](l, j) + dg[j](l, i) - dg[l](i, j));
        G[(k * n + i) * n + j] = 0.5 * acc;
      }
  return G;
}

// Coordinate Riemann tensor R_abcd from g, dg, ddg at a point.
std::vector<double> riemann_coord(const Mat& g, const std::vector<Mat>& dg,
                                  const std::vector<Mat>& ddg) {
  const int n = static_cast<int>(g.rows());
  const Mat gi = g.inverse();
  auto idx3 = [n](int a, int b, int c) { return (a * n + b) * n + c; };
  // first kind Gamma_{e,db} and its derivative d_c Gamma_{e,db}
  std::vector<double> G1(n * n * n), dG1(n * n * n * n);
  for (int e = 0; e < n; ++e)
    for (int d = 0; d < n; ++d)
      for (int b = 0; b < n; ++b) {
        G1[idx3(e, d, b)] = 0.5 * (dg[d](e, b) + dg[b](e, d) - dg[e](d, b));
        for (int c = 0; c < n; ++c)
          dG1[idx3(e, d, b) * n + c] =
              0.5 * (ddg[c * n + d](e, b) + ddg[c * n + b](e, d) - ddg[c * n + e](d, b));
      }
  std::vector<Mat> dgi(n);
  for (int c = 0; c < n; ++c) dgi[c] = -gi * dg[c] * gi;
  std::vector<double> G2(n * n * n, 0.0), dG2(n * n * n * n, 0.0);
  for (int a = 0; a < n; ++a)
    for (int d = 0; d < n; ++d)
      for (int b = 0; b < n; ++b) {
        double v = 0;
        for (int e = 0; e < n; ++e) v += gi(a, e) * G1[idx3(e, d, b)];
        G2[idx3(a, d, b)] = v;
        for (int c = 0; c < n; ++c) {
          double w = 0;
          for (int e = 0; e < n; ++e)
            w += dgi[c](a, e) * G1[idx3(e, d, b)] + gi(a, e) * dG1[idx3(e, d, b) * n + c];
          dG2[idx3(a, d, b) * n + c] = w;
        }
      }
  std::vector<double> Rup(n * n * n * n, 0.0), R(n * n * n * n, 0.0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double v = dG2[idx3(a, d, b) * n + c] - dG2[idx3(a, c, b) * n + d];
          for (int e = 0; e < n; ++e)
            v += G2[idx3(a, c, e)] * G2[idx3(e, d, b)] - G2[idx3(a, d, e)] * G2[idx3(e, c, b)];
          Rup[idx3(a, b, c) * n + d] = v;
        }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double v = 0;
          for (int e = 0; e < n; ++e) v += g(a, e) * Rup[idx3(e, b, c) * n + d];
          R[idx3(a, b, c) * n + d] = v;
        }
  return R;
}

std::vector<double> to_frame4(const std::vector<double>& R, const Mat& F) {
  const int n = static_cast<int>(F.rows());
  auto at = [n](int a, int b, int c, int d) { return ((a * n + b) * n + c) * n + d; };
  // contract one index at a time
  std::vector<double> cur = R, nxt(R.size());
  for (int slot = 0; slot < 4; ++slot) {
    std::fill(nxt.begin(), nxt.end(), 0.0);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d) {
            int ix[4] = {a, b, c, d};
            const int free_i = ix[slot];
            double v = 0;
            for (int p = 0; p < n; ++p) {
              ix[slot] = p;
              v += F(p, free_i) * cur[at(ix[0], ix[1], ix[2], ix[3])];
            }
            nxt[at(a, b, c, d)] = v;
          }
    std::swap(cur, nxt);
  }
  return cur;
}

Mat frame_coefficients(const CurvatureFrame& fr) {
  Mat F = fr.e;
  for (Eigen::Index i = 0; i < F.cols(); ++i) F.col(i) *= fr.radii[i] / fr.rho;
  return F;
}

}  // namespace

Vec position_vector(const JetPoint& jet, const CurvatureFrame& frame) {
  if (!(frame.rho > 0)) throw UmbilicError("rho vanishes at an umbilic point");
  return lift_vector(jet, frame.rho);
}

Vec normal_map(const JetPoint& jet, const CurvatureFrame& frame) {
  return eta_vector(jet, frame.r);
}

Mat laguerre_metric(const CurvatureFrame& frame, const Mat& III) {
  if (!(frame.rho > 0)) throw UmbilicError("rho vanishes at an umbilic point");
  Mat g = frame.rho * frame.rho * III;
  Eigen::LLT<Mat> llt(0.5 * (g + g.transpose()));
  if (llt.info() != Eigen::Success) throw DegeneracyError("Laguerre metric not positive definite");
  return g;
}

PointLift lift_point(const Chart& chart, const Vec& u, const PrincipalOptions& opt) {
  PointLift p;
  p.jet = chart.evaluate_jet(u);
  p.forms = fundamental_forms(p.jet);
  p.frame = principal_decomposition(p.jet, opt);
  const int n = chart.n();
  const Mat W = p.forms.II.partialPivLu().solve(p.forms.I);
  const double t1 = W.trace();
  const double t2 = (W * W).trace();
  p.r = t1 / n;
  p.rho = std::sqrt(std::max(0.0, t2 - t1 * t1 / n));
  p.Y = lift_vector(p.jet, p.rho);
  p.eta = eta_vector(p.jet, p.r);
  p.g = p.rho * p.rho * p.forms.III;
  p.B = p.rho * (p.r * p.forms.III - p.forms.II);
  return p;
}

PointAnalysis analyze_point(const Chart& chart, const Vec& u, const CoreOptions& opt) {
  const int n = chart.n();
  Patch<PointLift> patch(u, opt.step, opt.scheme,
                         [&](const Vec& p) { return lift_point(chart, p, opt.principal); });
  const PointLift& c = patch.center();
  PointAnalysis pa;
  pa.u = u;
  pa.lift = c;

  auto getY = [](const PointLift& p) -> Vec { return p.Y; };
  auto getEta = [](const PointLift& p) -> Vec { return p.eta; };
  auto getG = [](const PointLift& p) -> Mat { return p.g; };
  auto getIII = [](const PointLift& p) -> Mat { return p.forms.III; };
  auto getB = [](const PointLift& p) -> Mat { return p.B; };
  auto getR = [](const PointLift& p) -> double { return p.r; };
  auto getLogRho = [](const PointLift& p) -> double { return std::log(p.rho); };

  std::vector<Vec> dY(n), dEta(n), ddY(n * n);
  std::vector<Mat> dg(n), ddg(n * n), dIII(n), dB(n);
  Vec dr(n), df(n);
  Mat ddf(n, n);
  for (int a = 0; a < n; ++a) {
    dY[a] = patch.d(a, getY);
    dEta[a] = patch.d(a, getEta);
    dg[a] = patch.d(a, getG);
    dIII[a] = patch.d(a, getIII);
    dB[a] = patch.d(a, getB);
    dr[a] = patch.d(a, getR);
    df[a] = patch.d(a, getLogRho);
    for (int b = 0; b < n; ++b) {
      ddY[a * n + b] = patch.dd(a, b, getY);
      ddg[a * n + b] = patch.dd(a, b, getG);
      ddf(a, b) = patch.dd(a, b, getLogRho);
    }
  }

  const Mat& g = c.g;
  const Mat gi = g.inverse();
  const std::vector<double> Gam = christoffel(g, dg);
  auto G = [&](int k, int i, int j) { return Gam[(k * n + i) * n + j]; };

  // Frame vectors.
  LaguerreFrame& fr = pa.frame;
  fr.Y = c.Y;
  fr.eta = c.eta;
  fr.P = vector_P(n).coords;
  fr.g = g;
  fr.y = c.Y / c.rho;
  fr.lapY = Vec::Zero(n + 4);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Vec t = ddY[a * n + b];
      for (int k = 0; k < n; ++k) t -= G(k, a, b) * dY[k];
      fr.lapY += gi(a, b) * t;
    }
  fr.N = fr.lapY / n + lag_ip(fr.lapY, fr.lapY) / (2.0 * n * n) * fr.Y;
  fr.F = frame_coefficients(c.frame);
  const Mat& F = fr.F;
  fr.EY = Mat::Zero(n + 4, n);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a) fr.EY.col(i) += F(a, i) * dY[a];

  pa.gram_dY = Mat(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) pa.gram_dY(a, b) = lag_ip(dY[a], dY[b]);

  // Closed forms.
  const CurvatureFrame& cf = c.frame;
  const double rho = cf.rho;
  LaguerreInvariants& cl = pa.closed;
  cl.b = (Vec::Constant(n, cf.r) - cf.radii) / rho;
  cl.B = cl.b.asDiagonal();
  cl.C = Vec(n);
  for (int i = 0; i < n; ++i) {
    const double ei_r = cf.e.col(i).dot(dr);
    const double ei_f = cf.e.col(i).dot(df);
    cl.C[i] = -cf.radii[i] / (rho * rho) * (ei_r - (cf.r - cf.radii[i]) * ei_f);
  }
  const Mat& III = c.forms.III;
  const std::vector<double> Gam3 = christoffel(III, dIII);
  Mat hess = ddf;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < n; ++k) hess(a, b) -= Gam3[(k * n + a) * n + b] * df[k];
  const Mat IIIi = III.inverse();
  pa.grad_III_log_rho_sq = df.dot(IIIi * df);
  pa.lap_III_log_rho = (IIIi * hess).trace();
  Mat Ep = cf.e;
  for (int i = 0; i < n; ++i) Ep.col(i) *= cf.radii[i];
  const Mat H = Ep.transpose() * hess * Ep;
  const Vec Epf = Ep.transpose() * df;
  const Vec ef = cf.e.transpose() * df;
  const Mat Id = Mat::Identity(n, n);
  cl.L_closedA = (H - Epf * Epf.transpose() + 0.5 * (pa.grad_III_log_rho_sq - 1.0) * Id) /
                 (rho * rho);
  cl.L_closedB = (H - ef * ef.transpose() + 0.5 * pa.grad_III_log_rho_sq * Id) / (rho * rho);

  // Structural projections.
  LaguerreInvariants& st = pa.structural;
  st.B = Mat(n, n);
  st.L_structural = Mat(n, n);
  st.C = Vec(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double l = 0, bb = 0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          const double w = F(a, i) * F(b, j);
          l += w * lag_ip(fr.N, ddY[a * n + b]);
          bb += w * lag_ip(ddY[a * n + b], fr.eta);
        }
      st.L_structural(i, j) = -l;
      st.B(i, j) = -bb;
    }
  for (int i = 0; i < n; ++i) {
    double v = 0;
    for (int a = 0; a < n; ++a) v += F(a, i) * lag_ip(fr.N, dEta[a]);
    st.C[i] = v;
  }
  st.b = st.B.diagonal();
  st.lambda_estimate = st.L_structural.trace() / n;

  // Metric geometry.
  pa.metric.g = g;
  pa.metric.gamma = Gam;
  pa.metric.riemann = to_frame4(riemann_coord(g, dg, ddg), F);

  // Covariant derivative of B in the frame.
  pa.nablaB.assign(n * n * n, 0.0);
  {
    std::vector<Mat> nab(n);
    for (int k = 0; k < n; ++k) {
      nab[k] = dB[k];
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int d = 0; d < n; ++d)
            nab[k](a, b) -= G(d, k, a) * c.B(d, b) + G(d, k, b) * c.B(a, d);
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double v = 0;
          for (int cc = 0; cc < n; ++cc) v += F(cc, k) * (F.col(i).dot(nab[cc] * F.col(j)));
          pa.nablaB[(i * n + j) * n + k] = v;
        }
  }

  // Frame connection from the Levi-Civita connection, needing d F.
  auto getF = [&](const PointLift& p) -> Mat {
    Mat Fp = frame_coefficients(p.frame);
    for (int i = 0; i < n; ++i)
      if (Fp.col(i).dot(c.forms.I * F.col(i)) < 0) Fp.col(i) = -Fp.col(i);
    return Fp;
  };
  std::vector<Mat> dF(n);
  for (int b = 0; b < n; ++b) dF[b] = patch.d(b, getF);
  pa.frame_gamma.assign(n * n * n, 0.0);
  double sres = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vec V = Vec::Zero(n);  // nabla_{E_j} E_i in coordinates
      Vec EE = Vec::Zero(n + 4);
      for (int b = 0; b < n; ++b) {
        V += F(b, j) * dF[b].col(i);
        for (int a = 0; a < n; ++a) {
          for (int d = 0; d < n; ++d) V[d] += F(b, j) * F(a, i) * G(d, a, b);
          EE += F(b, j) * (dF[b](a, i) * dY[a] + F(a, i) * ddY[a * n + b]);
        }
      }
      Vec expect = st.L_structural(i, j) * fr.Y + st.B(i, j) * fr.P;
      if (i == j) expect += fr.N;
      for (int k = 0; k < n; ++k) {
        const double gk = V.dot(g * F.col(k));
        pa.frame_gamma[(k * n + i) * n + j] = gk;
        expect += gk * fr.EY.col(k);
      }
      sres = std::max(sres, (EE - expect).cwiseAbs().maxCoeff());
    }
  pa.structure_residual = sres;

  double wres = 0;
  const JetPoint& jet = c.jet;
  for (int i = 0; i < n; ++i) {
    Vec t = Vec::Zero(n + 1);
    for (int a = 0; a < n; ++a)
      t += cf.e(a, i) * (jet.dxi.row(a).transpose() + cf.k[i] * jet.dx.row(a).transpose());
    wres = std::max(wres, t.norm() / std::max(1.0, std::abs(cf.k[i])));
  }
  pa.weingarten_residual = wres;
  return pa;
}

Vec n_vector(const Chart& chart, const Vec& u, const CoreOptions& opt) {
  const int n = chart.n();
  Patch<PointLift> patch(u, opt.step, opt.scheme,
                         [&](const Vec& p) { return lift_point(chart, p, opt.principal); });
  const PointLift& c = patch.center();
  auto getY = [](const PointLift& p) -> Vec { return p.Y; };
  auto getG = [](const PointLift& p) -> Mat { return p.g; };
  std::vector<Vec> dY(n);
  std::vector<Mat> dg(n);
  for (int a = 0; a < n; ++a) {
    dY[a] = patch.d(a, getY);
    dg[a] = patch.d(a, getG);
  }
  const Mat gi = c.g.inverse();
  const std::vector<double> Gam = christoffel(c.g, dg);
  Vec lap = Vec::Zero(n + 4);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Vec t = patch.dd(a, b, getY);
      for (int k = 0; k < n; ++k) t -= Gam[(k * n + a) * n + b] * dY[k];
      lap += gi(a, b) * t;
    }
  return lap / n + lag_ip(lap, lap) / (2.0 * n * n) * c.Y;
}

LaguerreInvariants invariants_closed_form(const Chart& chart, const Vec& u,
                                          const CoreOptions& opt) {
  return analyze_point(chart, u, opt).closed;
}

LaguerreInvariants invariants_structural(const Chart& chart, const Vec& u,
                                         const CoreOptions& opt) {
  return analyze_point(chart, u, opt).structural;
}

MetricField metric_geometry(const Chart& chart, const std::vector<Vec>& grid,
                            const CoreOptions& opt) {
  MetricField mf;
  mf.points = grid;
  for (const Vec& u : grid) mf.data.push_back(analyze_point(chart, u, opt).metric);
  return mf;
}

double dn_residual(const Chart& chart, const PointAnalysis& pa, const CoreOptions& opt) {
  const int n = chart.n();
  Patch<Vec> patch(pa.u, opt.step, opt.scheme,
                   [&](const Vec& p) { return n_vector(chart, p, opt); }, false);
  auto id = [](const Vec& v) -> Vec { return v; };
  const Mat& F = pa.frame.F;
  double worst = 0;
  for (int i = 0; i < n; ++i) {
    Vec EN = Vec::Zero(n + 4);
    for (int a = 0; a < n; ++a) EN += F(a, i) * patch.d(a, id);
    Vec expect = pa.structural.C[i] * pa.frame.P;
    for (int j = 0; j < n; ++j) expect += pa.structural.L_structural(i, j) * pa.frame.EY.col(j);
    worst = std::max(worst, (EN - expect).cwiseAbs().maxCoeff());
  }
  return worst;
}

double FrameResiduals::max() const {
  return std::max({YY, NN, etaeta, YN, etaP, Yeta, Neta, YP, NP, EE, Eeta, EN, EY, EP});
}

FrameResiduals frame_residuals(const PointAnalysis& pa) {
  const LaguerreFrame& f = pa.frame;
  const int n = static_cast<int>(pa.u.size());
  FrameResiduals r;
  r.YY = std::abs(lag_ip(f.Y, f.Y));
  r.NN = std::abs(lag_ip(f.N, f.N));
  r.etaeta = std::abs(lag_ip(f.eta, f.eta));
  r.YN = std::abs(lag_ip(f.Y, f.N) + 1.0);
  r.etaP = std::abs(lag_ip(f.eta, f.P) + 1.0);
  r.Yeta = std::abs(lag_ip(f.Y, f.eta));
  r.Neta = std::abs(lag_ip(f.N, f.eta));
  r.YP = std::abs(lag_ip(f.Y, f.P));
  r.NP = std::abs(lag_ip(f.N, f.P));
  for (int i = 0; i < n; ++i) {
    const Vec e = f.EY.col(i);
    for (int j = 0; j < n; ++j)
      r.EE = std::max(r.EE, std::abs(lag_ip(e, f.EY.col(j)) - (i == j ? 1.0 : 0.0)));
    r.Eeta = std::max(r.Eeta, std::abs(lag_ip(e, f.eta)));
    r.EN = std::max(r.EN, std::abs(lag_ip(e, f.N)));
    r.EY = std::max(r.EY, std::abs(lag_ip(e, f.Y)));
    r.EP = std::max(r.EP, std::abs(lag_ip(e, f.P)));
  }
  return r;
}

double gauss_residual(const PointAnalysis& pa) {
  const int n = static_cast<int>(pa.u.size());
  const Mat& L = pa.structural.L_structural;
  auto d = [](int a, int b) { return a == b ? 1.0 : 0.0; };
  double worst = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double rhs =
              L(j, k) * d(i, l) + L(i, l) * d(j, k) - L(i, k) * d(j, l) - L(j, l) * d(i, k);
          worst = std::max(worst,
                           std::abs(pa.metric.riemann[((i * n + j) * n + k) * n + l] - rhs));
        }
  return worst;
}

double max_abs_riemann(const PointAnalysis& pa) {
  double w = 0;
  for (double v : pa.metric.riemann) w = std::max(w, std::abs(v));
  return w;
}

double riemann_antisymmetry(const MetricPoint& m, int n) {
  auto at = [n](int a, int b, int c, int d) { return ((a * n + b) * n + c) * n + d; };
  double w = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double v = m.riemann[at(i, j, k, l)];
          w = std::max({w, std::abs(v + m.riemann[at(j, i, k, l)]),
                        std::abs(v + m.riemann[at(i, j, l, k)])});
        }
  return w;
}

double christoffel_asymmetry(const MetricPoint& m, int n) {
  double w = 0;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        w = std::max(w, std::abs(m.gamma[(k * n + i) * n + j] - m.gamma[(k * n + j) * n + i]));
  return w;
}

ClassificationResult classify(const std::vector<PointAnalysis>& pts,
                              const ClassifyTolerances& tol) {
  if (pts.size() < 2) throw InputError("classification needs at least two grid points");
  const int n = static_cast<int>(pts.front().u.size());
  ClassificationResult res;
  std::vector<double> lam;
  for (const auto& p : pts) {
    lam.push_back(p.structural.L_structural.trace() / n);
    res.max_C = std::max({res.max_C, p.closed.C.cwiseAbs().maxCoeff(),
                          p.structural.C.cwiseAbs().maxCoeff()});
  }
  std::vector<double> sorted = lam;
  std::sort(sorted.begin(), sorted.end());
  const size_t m = sorted.size();
  res.lambda_estimate = m % 2 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
  const Mat Id = Mat::Identity(n, n);
  // Descending-k order can permute b across the grid when radii change
  // sign, so b is compared as a sorted list.
  std::vector<Vec> bs;
  for (const auto& p : pts) {
    Vec b = p.closed.b;
    std::sort(b.data(), b.data() + n);
    bs.push_back(b);
  }
  res.b_mean = Vec::Zero(n);
  for (size_t q = 0; q < pts.size(); ++q) {
    const auto& p = pts[q];
    res.L_deviation =
        std::max(res.L_deviation, (p.structural.L_structural - lam[q] * Id).cwiseAbs().maxCoeff());
    res.lambda_spread = std::max(res.lambda_spread, std::abs(lam[q] - res.lambda_estimate));
    res.b_mean += bs[q];
  }
  res.b_mean /= static_cast<double>(pts.size());
  for (const auto& b : bs) res.b_spread = std::max(res.b_spread, (b - res.b_mean).cwiseAbs().maxCoeff());

  const bool c_zero = res.max_C <= tol.C;
  res.is_isotropic = c_zero && res.L_deviation <= tol.L && res.lambda_spread <= tol.L;
  res.is_isoparametric = c_zero && res.b_spread <= tol.b;
  if (res.is_isotropic) {
    Vec mean = Vec::Zero(n + 4);
    std::vector<Vec> al;
    for (const auto& p : pts) {
      al.push_back(p.frame.N - res.lambda_estimate * p.frame.Y);
      mean += al.back();
    }
    mean /= static_cast<double>(pts.size());
    for (const auto& a : al) res.alpha_spread = std::max(res.alpha_spread, (a - mean).cwiseAbs().maxCoeff());
    res.alpha = mean;
    res.lambda_nonnegative = res.lambda_estimate >= -tol.lambda;
  }
  if (res.is_isotropic && res.is_isoparametric)
    res.both_imply_flat = std::abs(res.lambda_estimate) <= tol.lambda;
  return res;
}

}  // namespace laguerre
