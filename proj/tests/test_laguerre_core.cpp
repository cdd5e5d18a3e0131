#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "laguerre/errors.hpp"
#include "laguerre/families.hpp"
#include "laguerre/laguerre_core.hpp"

using namespace laguerre;

namespace {

Vec vec(std::initializer_list<double> v) {
  Vec r(v.size());
  int i = 0;
  for (double x : v) r[i++] = x;
  return r;
}

Vec sorted(Vec v) {
  std::sort(v.data(), v.data() + v.size());
  return v;
}

// Distance between b vectors up to a global sign, after sorting.
double b_distance(const Vec& b, const Vec& target) {
  return std::min((sorted(b) - sorted(target)).cwiseAbs().maxCoeff(),
                  (sorted(b) - sorted(-target)).cwiseAbs().maxCoeff());
}

// Parallel offset x + t xi of the explicit family: a Laguerre transformation.
struct OffsetImpl {
  HilfImpl base;
  double t = 0.0;
  static constexpr bool has_normal = true;
  int n() const { return base.n(); }
  template <class S>
  void position(const S* u, S* x) const {
    std::vector<S> xi(n() + 1);
    base.position(u, x);
    base.normal(u, xi.data());
    for (int q = 0; q <= n(); ++q) x[q] = x[q] + t * xi[q];
  }
  template <class S>
  void normal(const S* u, S* xi) const {
    base.normal(u, xi);
  }
};

// Rigid motion of the torus.
struct MovedTorus {
  TorusImpl base{2.0, 1.0};
  Mat Q;
  Vec shift;
  static constexpr bool has_normal = true;
  int n() const { return 2; }
  template <class S>
  void apply(const S* in, S* out, bool translate) const {
    for (int i = 0; i < 3; ++i) {
      S s = translate ? S(shift[i]) : S(0.0);
      for (int k = 0; k < 3; ++k) s = s + Q(i, k) * in[k];
      out[i] = s;
    }
  }
  template <class S>
  void position(const S* u, S* x) const {
    S y[3];
    base.position(u, y);
    apply(y, x, true);
  }
  template <class S>
  void normal(const S* u, S* xi) const {
    S y[3];
    base.normal(u, y);
    apply(y, xi, false);
  }
};

}  // namespace

TEST_SUITE("laguerre_core") {
  TEST_CASE("explicit family invariants at one point") {
    auto h = hilf_chart(HilfParams{{}, {1.0, 2.0, 3.0}, 0.0});
    const PointAnalysis p = analyze_point(*h, vec({0.13, -0.21, 0.3}));
    // b from r_i = 1/a_i, computed by hand
    const double r = (1.0 + 0.5 + 1.0 / 3.0) / 3.0;
    const Vec ri = vec({1.0, 0.5, 1.0 / 3.0});
    const Vec d = Vec::Constant(3, r) - ri;
    const Vec target = d / d.norm();
    CHECK(b_distance(p.closed.b, target) < 1e-12);
    CHECK(std::abs(target[0] + 0.79259) < 1e-5);
    CHECK(std::abs(target[1] - 0.22646) < 1e-5);
    CHECK(std::abs(target[2] - 0.56613) < 1e-5);
    CHECK(p.closed.C.cwiseAbs().maxCoeff() < 1e-5);
    CHECK(p.structural.C.cwiseAbs().maxCoeff() < 1e-5);
    CHECK(p.structural.L_structural.norm() < 1e-4);
    CHECK((p.closed.L_closedA - p.structural.L_structural).cwiseAbs().maxCoeff() < 1e-3);
    CHECK((p.closed.L_closedB - p.structural.L_structural).cwiseAbs().maxCoeff() > 1e-3);
    CHECK(frame_residuals(p).max() < 1e-6);
    CHECK(max_abs_riemann(p) < 1e-4);
    CHECK(dn_residual(*h, p) < 1e-3);
  }

  TEST_CASE("lift is lightlike and orthogonal to the normal map") {
    auto t = torus_chart(2.0, 1.0);
    const PointLift l = lift_point(*t, vec({0.3, 0.4}));
    CHECK(std::abs(lag_ip(l.Y, l.Y)) < 1e-14);
    CHECK(std::abs(lag_ip(l.eta, l.eta)) < 1e-13);
    CHECK(std::abs(lag_ip(l.Y, l.eta)) < 1e-13);
    const Vec P = vector_P(2).coords;
    CHECK(lag_ip(l.eta, P) == doctest::Approx(-1.0));
    CHECK(std::abs(lag_ip(l.Y, P)) < 1e-15);
  }

  TEST_CASE("torus: two constant curvatures and a vanishing form") {
    auto t = torus_chart(2.0, 1.0);
    for (const Vec& u : {vec({0.3, 0.4}), vec({-1.0, -0.6}), vec({2.0, 0.9})}) {
      const PointAnalysis p = analyze_point(*t, u);
      // n = 2 with sum b = 0 and sum b^2 = 1
      CHECK(b_distance(p.closed.b, vec({std::sqrt(0.5), -std::sqrt(0.5)})) < 1e-12);
      CHECK(p.structural.C.cwiseAbs().maxCoeff() < 1e-6);
      CHECK(gauss_residual(p) < 1e-3);
    }
  }

  TEST_CASE("property: identities on generic graphs") {
    for (auto [a, c, d] : {std::tuple{std::vector<double>{1, 2}, std::vector<double>{0.5, -0.3}, 0.2},
                           std::tuple{std::vector<double>{1, 2, -1}, std::vector<double>{0.2, 0.1, 0.4}, 0.3}}) {
      auto g = graph_chart(a, c, d);
      const int n = static_cast<int>(a.size());
      Grid grid{Vec::Constant(n, 0.05), 0.1, 2};
      for (const Vec& u : grid.points()) {
        const PointAnalysis p = analyze_point(*g, u);
        CAPTURE(n);
        CHECK(std::abs(p.closed.b.sum()) < 1e-12);
        CHECK(std::abs(p.closed.b.squaredNorm() - 1.0) < 1e-12);
        CHECK((p.closed.B - p.structural.B).cwiseAbs().maxCoeff() < 1e-5);
        CHECK((p.closed.C - p.structural.C).cwiseAbs().maxCoeff() < 1e-5);
        CHECK((p.closed.L_closedA - p.structural.L_structural).cwiseAbs().maxCoeff() < 1e-3);
        CHECK(frame_residuals(p).max() < 1e-6);
        CHECK(gauss_residual(p) < 1e-3);
        CHECK(christoffel_asymmetry(p.metric, n) < 1e-10);
        CHECK(riemann_antisymmetry(p.metric, n) < 1e-6);
        CHECK(p.structure_residual < 1e-3);
        double div = 0;
        for (int j = 0; j < n; ++j) {
          double s = 0;
          for (int i = 0; i < n; ++i) s += p.nablaB[(i * n + j) * n + i];
          div = std::max(div, std::abs(s - (n - 1) * p.structural.C[j]));
        }
        CHECK(div < 1e-4);
        const double rho = p.lift.frame.rho;
        CHECK(std::abs(rho * rho * p.structural.L_structural.trace() -
                       (p.lap_III_log_rho + 0.5 * (n - 2) * p.grad_III_log_rho_sq - 0.5 * n)) <
              1e-6);
      }
    }
  }

  TEST_CASE("property: invariants survive parallel offsets") {
    HilfImpl base{{1.0, 2.0, 3.0}, 0.2};
    auto h = hilf_chart(HilfParams{{}, {1.0, 2.0, 3.0}, 0.2});
    const Vec u = vec({0.1, 0.2, -0.15});
    const PointAnalysis p0 = analyze_point(*h, u);
    for (double t : {0.1, 0.3}) {
      ClosedFormChart<OffsetImpl> off(OffsetImpl{base, t}, Box::cube(3, 2.0), "offset");
      const PointAnalysis p = analyze_point(off, u);
      CHECK((p.closed.b - p0.closed.b).cwiseAbs().maxCoeff() < 1e-10);
      CHECK((p.frame.g - p0.frame.g).cwiseAbs().maxCoeff() < 1e-10);
      CHECK((p.structural.C - p0.structural.C).cwiseAbs().maxCoeff() < 1e-6);
      CHECK((p.structural.L_structural - p0.structural.L_structural).cwiseAbs().maxCoeff() < 1e-6);
    }
  }

  TEST_CASE("property: invariants survive rigid motions") {
    MovedTorus m;
    const double c = std::cos(0.7), s = std::sin(0.7);
    m.Q = Mat::Identity(3, 3);
    m.Q(0, 0) = c;
    m.Q(0, 2) = -s;
    m.Q(2, 0) = s;
    m.Q(2, 2) = c;
    m.shift = vec({0.5, -1.0, 2.0});
    ClosedFormChart<MovedTorus> moved(m, torus_chart(2.0, 1.0)->domain(), "moved-torus");
    auto t = torus_chart(2.0, 1.0);
    const Vec u = vec({0.3, 0.4});
    const PointAnalysis a = analyze_point(*t, u), b = analyze_point(moved, u);
    CHECK((a.closed.b - b.closed.b).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((a.frame.g - b.frame.g).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((a.structural.L_structural - b.structural.L_structural).cwiseAbs().maxCoeff() < 1e-6);
  }

  TEST_CASE("classification of the explicit family and the torus") {
    auto h = hilf_chart(HilfParams{{}, {1.0, 2.0, 3.0}, 0.0});
    std::vector<PointAnalysis> pts;
    for (const Vec& u : Grid{Vec::Zero(3), 0.3, 2}.points()) pts.push_back(analyze_point(*h, u));
    const ClassificationResult c = classify(pts);
    CHECK(c.is_isotropic);
    CHECK(c.is_isoparametric);
    CHECK(std::abs(c.lambda_estimate) < 1e-5);
    REQUIRE(c.both_imply_flat.has_value());
    CHECK(*c.both_imply_flat);

    auto t = torus_chart(2.0, 1.0);
    std::vector<PointAnalysis> tp;
    for (const Vec& u : Grid{Vec::Zero(2), 0.5, 3}.points()) tp.push_back(analyze_point(*t, u));
    const ClassificationResult ct = classify(tp);
    CHECK_FALSE(ct.is_isotropic);
    CHECK(ct.is_isoparametric);
    CHECK_THROWS_AS(classify({}), InputError);
  }

  TEST_CASE("umbilic points have no lift") {
    auto s = sphere_chart(1.0);
    CHECK_THROWS_AS(analyze_point(*s, vec({0.1, 0.2})), UmbilicError);
  }
}
