#include "laguerre/construction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace laguerre {

double ConstructionConstants::phi() const {
  double s = 0.0;
  for (int k = 0; k < n(); ++k) {
    const double ck = C(k, k);
    s += ck * ck * beta3[k] * (beta3[k] * b[k] / 2.0 - beta1[k]) + gamma1[k];
  }
  return -2.0 * s;
}

ValidationReport validate_constants(const ConstructionConstants& c) {
  ValidationReport rep;
  const int n = c.n();
  auto fail = [&](const std::string& m) {
    rep.ok = false;
    rep.failures.push_back(m);
  };
  if (n < 2) {
    fail("need at least two curvatures");
    return rep;
  }
  if (c.C.rows() != n || c.C.cols() != n) fail("matrix shape does not match b");
  if (c.beta1.size() != n || c.beta3.size() != n || c.gamma1.size() != n)
    fail("constant vectors must have length n");
  if (!rep.ok) return rep;

  rep.sum_b = c.b.sum();
  rep.sum_b2_minus_1 = c.b.squaredNorm() - 1.0;
  if (std::abs(rep.sum_b) > 1e-12) fail("sum of b_i is not zero");
  if (std::abs(rep.sum_b2_minus_1) > 1e-12) fail("sum of b_i^2 is not one");
  rep.min_abs_b = c.b.cwiseAbs().minCoeff();
  if (rep.min_abs_b < 1e-12) fail("some b_i vanishes");
  rep.min_gap = 1e300;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) rep.min_gap = std::min(rep.min_gap, std::abs(c.b[i] - c.b[j]));
  if (rep.min_gap < 1e-9) fail("b_i are not pairwise distinct");
  rep.orthogonality = (c.C.transpose() * c.C - Mat::Identity(n, n)).cwiseAbs().maxCoeff();
  if (rep.orthogonality > 1e-12) fail("matrix is not orthogonal");
  rep.min_abs_diag = c.C.diagonal().cwiseAbs().minCoeff();
  if (rep.min_abs_diag == 0.0) fail("a diagonal matrix entry vanishes");
  for (int k = 0; k < n; ++k)
    if (!std::isfinite(c.beta1[k]) || !std::isfinite(c.beta3[k]) || !std::isfinite(c.gamma1[k]))
      fail("constants must be finite");
  return rep;
}

Vec b_from_a(const std::vector<double>& a) {
  const int n = static_cast<int>(a.size());
  if (n < 2) throw ParameterError("need at least two constants");
  std::vector<long double> r(n);
  long double mean = 0;
  for (int i = 0; i < n; ++i) {
    if (a[i] == 0.0) throw ParameterError("constants must be nonzero");
    r[i] = 1.0L / a[i];
    mean += r[i];
  }
  mean /= n;
  long double ss = 0;
  for (int i = 0; i < n; ++i) ss += (mean - r[i]) * (mean - r[i]);
  if (ss == 0) throw ParameterError("constants must not all coincide");
  const long double rho = std::sqrt(ss);
  Vec b(n);
  for (int i = 0; i < n; ++i) b[i] = static_cast<double>((mean - r[i]) / rho);
  return b;
}

namespace {

Mat haar(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> N(0.0, 1.0);
  Mat A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = N(rng);
  Eigen::HouseholderQR<Mat> qr(A);
  Mat Q = qr.householderQ() * Mat::Identity(n, n);
  const Mat R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (R(j, j) < 0) Q.col(j) = -Q.col(j);
  return Q;
}

}  // namespace

Mat random_orthogonal(int n, std::uint64_t seed) {
  if (n < 2) throw ParameterError("random_orthogonal needs n >= 2");
  std::mt19937_64 rng(seed);
  for (;;) {
    Mat Q = haar(n, rng);
    if (Q.diagonal().cwiseAbs().minCoeff() >= 1e-3) return Q;
  }
}

Mat random_rotation(int dim, std::uint64_t seed) {
  if (dim < 1) throw ParameterError("rotation dimension must be positive");
  std::mt19937_64 rng(seed);
  Mat Q = haar(dim, rng);
  if (Q.determinant() < 0) Q.col(0) = -Q.col(0);
  return Q;
}

Mat random_laguerre_rotation(int n, std::uint64_t seed) {
  Mat T = Mat::Identity(n + 4, n + 4);
  T.block(2, 2, n + 1, n + 1) = random_rotation(n + 1, seed);
  return T;
}

ConstructionConstants random_constants(const Vec& b, std::uint64_t seed) {
  const int n = static_cast<int>(b.size());
  ConstructionConstants c;
  c.b = b;
  c.seed = seed;
  std::mt19937_64 rng(seed);
  for (;;) {
    c.C = haar(n, rng);
    if (c.C.diagonal().cwiseAbs().minCoeff() >= 1e-3) break;
  }
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  c.beta1 = Vec(n);
  c.beta3 = Vec(n);
  c.gamma1 = Vec(n);
  for (int k = 0; k < n; ++k) c.beta1[k] = U(rng);
  for (int k = 0; k < n; ++k) c.beta3[k] = U(rng);
  for (int k = 0; k < n; ++k) c.gamma1[k] = U(rng);
  return c;
}

ConstructionConstants cancelling_constants(const Vec& b, const Vec& beta3) {
  const int n = static_cast<int>(b.size());
  if (beta3.size() != n) throw ParameterError("beta3 length must match b");
  ConstructionConstants c;
  c.b = b;
  c.C = Mat::Identity(n, n);
  c.beta3 = beta3;
  c.beta1 = beta3.cwiseProduct(b);
  c.gamma1 = 0.5 * beta3.cwiseProduct(beta3).cwiseProduct(b);
  return c;
}

namespace {

void require_valid(const ConstructionConstants& c) {
  const ValidationReport rep = validate_constants(c);
  if (!rep.ok) {
    std::ostringstream os;
    os << "invalid construction constants:";
    for (const auto& f : rep.failures) os << ' ' << f << ';';
    throw ParameterError(os.str());
  }
}

}  // namespace

Vec ConstructedMaps::Y(const Vec& v) const {
  Vec out(v.size() + 4);
  chart->impl().Y(v.data(), out.data());
  return out;
}

Vec ConstructedMaps::eta(const Vec& v) const {
  Vec out(v.size() + 4);
  chart->impl().eta(v.data(), out.data());
  return out;
}

double ConstructedMaps::rho(const Vec& v) const { return Y(v)[v.size() + 3]; }
double ConstructedMaps::r(const Vec& v) const { return eta(v)[v.size() + 3]; }
Vec ConstructedMaps::x(const Vec& v) const { return chart->position(v); }

Vec ConstructedMaps::xi(const Vec& v) const {
  Vec out(v.size() + 1);
  chart->impl().normal(v.data(), out.data());
  return out;
}

Mat ConstructedMaps::dY(const Vec& v) const {
  const int n = static_cast<int>(v.size());
  Mat out(n + 4, n);
  std::vector<HyperDual> vh(n), yh(n + 4);
  for (int a = 0; a < n; ++a) {
    for (int c = 0; c < n; ++c) vh[c] = HyperDual(v[c], c == a ? 1.0 : 0.0, 0.0, 0.0);
    chart->impl().Y(vh.data(), yh.data());
    for (int q = 0; q < n + 4; ++q) out(q, a) = yh[q].f1;
  }
  return out;
}

Vec ConstructedMaps::ddY(const Vec& v, int i, int j) const {
  const int n = static_cast<int>(v.size());
  std::vector<HyperDual> vh(n), yh(n + 4);
  for (int c = 0; c < n; ++c) vh[c] = HyperDual(v[c], c == i ? 1.0 : 0.0, c == j ? 1.0 : 0.0, 0.0);
  chart->impl().Y(vh.data(), yh.data());
  Vec out(n + 4);
  for (int q = 0; q < n + 4; ++q) out[q] = yh[q].f12;
  return out;
}

Mat ConstructedMaps::dEta(const Vec& v) const {
  const int n = static_cast<int>(v.size());
  Mat out(n + 4, n);
  std::vector<HyperDual> vh(n), eh(n + 4);
  for (int a = 0; a < n; ++a) {
    for (int c = 0; c < n; ++c) vh[c] = HyperDual(v[c], c == a ? 1.0 : 0.0, 0.0, 0.0);
    chart->impl().eta(vh.data(), eh.data());
    for (int q = 0; q < n + 4; ++q) out(q, a) = eh[q].f1;
  }
  return out;
}

std::function<Vec(const Vec&)> build_position(const ConstructionConstants& c) {
  require_valid(c);
  ConstructedImpl impl{c};
  return [impl](const Vec& v) {
    Vec out(v.size() + 4);
    impl.Y(v.data(), out.data());
    return out;
  };
}

std::function<Vec(const Vec&)> build_normal_map(const ConstructionConstants& c) {
  require_valid(c);
  ConstructedImpl impl{c};
  return [impl](const Vec& v) {
    Vec out(v.size() + 4);
    impl.eta(v.data(), out.data());
    return out;
  };
}

ConstructedMaps build_immersion(const ConstructionConstants& c, double half_width) {
  require_valid(c);
  ConstructedMaps m;
  m.chart = std::make_shared<ConstructedChart>(ConstructedImpl{c}, Box::cube(c.n(), half_width),
                                               "constructed");
  return m;
}

Grid construction_grid(int n) { return Grid{Vec::Zero(n), 0.5, 5}; }

double FrobeniusReport::worst() const {
  return std::max({std::abs(lambda_hat), mixed_partials, b_spread, b_match, n_spread,
                   second_equation, eta_relation, gram_off_diagonal});
}

FrobeniusReport frobenius_report(const ConstructedMaps& maps, const std::vector<Vec>& grid,
                                 const CoreOptions& opt) {
  if (grid.size() < 2) throw InputError("frobenius report needs at least two grid points");
  const ConstructionConstants& c = maps.constants();
  const int n = c.n();
  const Vec P = vector_P(n).coords;
  FrobeniusReport rep;
  std::vector<PointAnalysis> pts;
  Vec sorted_b = c.b;
  std::sort(sorted_b.data(), sorted_b.data() + n);
  Vec first_b;
  Vec first_N;
  for (const Vec& v : grid) {
    PointAnalysis pa = analyze_point(*maps.chart, v, opt);
    const Mat dY = maps.dY(v);
    const Mat dE = maps.dEta(v);
    for (int i = 0; i < n; ++i) {
      const double gii = lag_ip(dY.col(i), dY.col(i));
      const Vec Yii = maps.ddY(v, i, i);
      const double gii_i = 2.0 * lag_ip(Yii, dY.col(i));
      const Vec res = Yii / gii - gii_i * dY.col(i) / (2.0 * gii * gii) - pa.frame.N - c.b[i] * P;
      rep.second_equation = std::max(rep.second_equation, res.cwiseAbs().maxCoeff());
      rep.eta_relation =
          std::max(rep.eta_relation, (dE.col(i) - c.b[i] * dY.col(i)).cwiseAbs().maxCoeff());
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        rep.mixed_partials = std::max(rep.mixed_partials, maps.ddY(v, i, j).cwiseAbs().maxCoeff());
        rep.gram_off_diagonal =
            std::max(rep.gram_off_diagonal, std::abs(lag_ip(dY.col(i), dY.col(j))));
      }
    }
    Vec bh = pa.closed.b;
    std::sort(bh.data(), bh.data() + n);
    if (first_b.size() == 0) {
      first_b = bh;
      first_N = pa.frame.N;
    }
    rep.b_spread = std::max(rep.b_spread, (bh - first_b).cwiseAbs().maxCoeff());
    rep.b_match = std::max(rep.b_match, (bh - sorted_b).cwiseAbs().maxCoeff());
    rep.n_spread = std::max(rep.n_spread, (pa.frame.N - first_N).cwiseAbs().maxCoeff());
    pts.push_back(std::move(pa));
  }
  rep.classification = classify(pts);
  rep.lambda_hat = rep.classification.lambda_estimate;
  return rep;
}

}  // namespace laguerre
