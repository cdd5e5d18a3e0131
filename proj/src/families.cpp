#include "laguerre/families.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace laguerre {

int HilfParams::n() const {
  if (m.empty()) return static_cast<int>(a.size());
  return std::accumulate(m.begin(), m.end(), 0);
}

std::vector<double> HilfParams::expanded() const {
  if (m.empty()) return a;
  std::vector<double> out;
  for (size_t i = 0; i < a.size(); ++i) out.insert(out.end(), m[i], a[i]);
  return out;
}

void HilfParams::validate() const {
  if (a.size() < 2) throw ParameterError("need at least two constants a_i");
  if (!m.empty()) {
    if (m.size() != a.size()) throw ParameterError("multiplicities do not match constants");
    for (int mi : m)
      if (mi < 1) throw ParameterError("multiplicities must be positive");
  }
  for (size_t i = 0; i < a.size(); ++i) {
    if (!std::isfinite(a[i]) || a[i] == 0.0) throw ParameterError("constants a_i must be nonzero");
    for (size_t j = 0; j < i; ++j)
      if (a[i] == a[j]) throw ParameterError("constants a_i must be pairwise distinct");
  }
  if (!std::isfinite(phi)) throw ParameterError("phi must be finite");
}

std::shared_ptr<HilfChart> hilf_chart(const HilfParams& p, double half_width) {
  p.validate();
  HilfImpl impl{p.expanded(), p.phi};
  return std::make_shared<HilfChart>(impl, Box::cube(p.n(), half_width), "hilf");
}

DegenerateChart::DegenerateChart(HilfParams p) : a_((p.validate(), p.expanded())) {}

DegenerateChart degenerate_example(const HilfParams& p) { return DegenerateChart(p); }

Vec DegenerateChart::x(const Vec& u) const {
  Vec out(n() + 2);
  position(u.data(), out.data());
  return out;
}

Vec DegenerateChart::xi(const Vec& u) const {
  Vec out(n() + 2);
  normal(u.data(), out.data());
  return out;
}

Mat DegenerateChart::dx(const Vec& u) const {
  Mat out(n(), n() + 2);
  std::vector<HyperDual> uh(n()), xh(n() + 2);
  for (int a = 0; a < n(); ++a) {
    for (int c = 0; c < n(); ++c) uh[c] = HyperDual(u[c], c == a ? 1.0 : 0.0, 0.0, 0.0);
    position(uh.data(), xh.data());
    for (int q = 0; q < n() + 2; ++q) out(a, q) = xh[q].f1;
  }
  return out;
}

double DegenerateChart::constraint_residual(const Vec& u) const {
  const SignatureSpace s = SignatureSpace::minkowski(n());
  const Vec nu = vector_nu(n()).coords;
  const Vec X = x(u), Xi = xi(u);
  double worst = std::abs(inner_product(s, X, nu));
  worst = std::max(worst, std::abs(inner_product(s, Xi, Xi)));
  worst = std::max(worst, std::abs(inner_product(s, Xi, nu) - 1.0));
  const Mat D = dx(u);
  for (int a = 0; a < n(); ++a)
    worst = std::max(worst, std::abs(inner_product(s, Xi, Vec(D.row(a).transpose()))));
  return worst;
}

std::pair<Vec, Vec> laguerre_immersion_tau(const Vec& x, const Vec& xi) {
  if (x.size() != xi.size() || x.size() < 3) throw DimensionError("tau needs matching vectors");
  const int n = static_cast<int>(x.size()) - 2;
  if (std::abs(xi[n + 1]) < 1e-12) throw DegeneracyError("tau undefined where xi_1 vanishes");
  Vec xp(n + 1), xip(n + 1);
  tau_map(n, x.data(), xi.data(), xp.data(), xip.data());
  return {xp, xip};
}

std::shared_ptr<TauChart> tau_chart(const HilfParams& p, double half_width) {
  TauImpl impl{DegenerateChart(p)};
  return std::make_shared<TauChart>(impl, Box::cube(p.n(), half_width), "degenerate-hilf");
}

std::shared_ptr<TorusChart> torus_chart(double R, double r_tube) {
  if (!(r_tube > 0) || !(R > r_tube)) throw ParameterError("torus needs R > r_tube > 0");
  Vec lo(2), hi(2);
  lo << -M_PI, -M_PI / 3;
  hi << M_PI, M_PI / 3;
  return std::make_shared<TorusChart>(TorusImpl{R, r_tube}, Box{lo, hi}, "torus");
}

std::shared_ptr<SphereChart> sphere_chart(double R) {
  if (!(R > 0)) throw ParameterError("sphere radius must be positive");
  Vec lo(2), hi(2);
  lo << -1.2, -M_PI;
  hi << 1.2, M_PI;
  return std::make_shared<SphereChart>(SphereImpl{R}, Box{lo, hi}, "sphere");
}

std::shared_ptr<GraphChart> graph_chart(std::vector<double> a, std::vector<double> c, double d,
                                        double half_width) {
  if (a.empty()) throw ParameterError("graph needs at least one coefficient");
  if (c.empty()) c.assign(a.size(), 0.0);
  if (c.size() != a.size()) throw ParameterError("graph coefficient lengths differ");
  const int n = static_cast<int>(a.size());
  return std::make_shared<GraphChart>(GraphImpl{std::move(a), std::move(c), d},
                                      Box::cube(n, half_width), "graph");
}

std::shared_ptr<ReparametrizedChart> rotated_chart(std::shared_ptr<const Chart> base,
                                                   double theta) {
  const int n = base->n();
  if (n < 2) throw DimensionError("rotation needs at least two parameters");
  Mat R = Mat::Identity(n, n);
  R(0, 0) = std::cos(theta);
  R(0, 1) = -std::sin(theta);
  R(1, 0) = std::sin(theta);
  R(1, 1) = std::cos(theta);
  const Box& d = base->domain();
  double hw = 1e300;
  for (int i = 0; i < n; ++i) hw = std::min({hw, -d.lo[i], d.hi[i]});
  Box box = Box::cube(n, hw / std::sqrt(2.0));
  return std::make_shared<ReparametrizedChart>(std::move(base), R, box);
}

std::vector<CatalogEntry> catalog() {
  return {
      {"hilf", "explicit Euclidean family; params a (list), m (optional), phi"},
      {"degenerate-hilf", "degenerate-model family pushed through tau; params a, m"},
      {"torus", "torus of revolution; params R, r_tube"},
      {"sphere", "round sphere (umbilic); params R"},
      {"graph", "quadratic-cubic graph; params a, c, d"},
  };
}

}  // namespace laguerre
