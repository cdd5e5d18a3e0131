#include <cmath>

#include "doctest.h"
#include "laguerre/errors.hpp"
#include "laguerre/families.hpp"

using namespace laguerre;

namespace {

Vec vec(std::initializer_list<double> v) {
  Vec r(v.size());
  int i = 0;
  for (double x : v) r[i++] = x;
  return r;
}

}  // namespace

TEST_SUITE("families") {
  TEST_CASE("explicit family at a hand-computed point") {
    auto h = hilf_chart(HilfParams{{}, {1.0, 2.0}, 0.0});
    const Vec u = vec({1.0, 0.0});
    Vec xi(3);
    h->impl().normal(u.data(), xi.data());
    CHECK((h->position(u) - vec({0.5, 0.5, 0.0})).norm() < 1e-15);
    CHECK((xi - vec({0.0, 1.0, 0.0})).norm() < 1e-15);
    // d_2 x vanishes there: 1 - a_2 q = 0 with q = 1/2
    CHECK_THROWS_AS(h->evaluate_jet(u), ImmersionError);
  }

  TEST_CASE("tau of the degenerate model at the same point") {
    const DegenerateChart d = degenerate_example(HilfParams{{}, {1.0, 2.0}, 0.0});
    const auto [x, xi] = laguerre_immersion_tau(d.x(vec({1.0, 0.0})), d.xi(vec({1.0, 0.0})));
    CHECK((x - vec({0.5, 0.5, 0.0})).norm() < 1e-15);
    CHECK((xi - vec({0.0, 1.0, 0.0})).norm() < 1e-15);
  }

  TEST_CASE("degenerate model normal at the origin") {
    const DegenerateChart d = degenerate_example(HilfParams{{}, {1.0, 2.0}, 0.0});
    CHECK((d.xi(vec({0.0, 0.0})) - vec({0.5, 0.0, 0.0, -0.5})).norm() < 1e-15);
    CHECK((d.x(vec({0.0, 0.0}))).norm() == 0.0);
  }

  TEST_CASE("property: degenerate model constraints hold on a grid") {
    const DegenerateChart d = degenerate_example(HilfParams{{2, 1}, {1.0, -2.5}, 0.0});
    Grid g{Vec::Zero(3), 0.7, 5};
    for (const Vec& u : g.points()) CHECK(d.constraint_residual(u) < 1e-14);
  }

  TEST_CASE("phi offset moves points along (1, -a u)") {
    const Vec u = vec({0.3, -0.2});
    auto h0 = hilf_chart(HilfParams{{}, {1.0, 2.0}, 0.0});
    auto h1 = hilf_chart(HilfParams{{}, {1.0, 2.0}, 0.7});
    const double S = 0.09 + 4.0 * 0.04;
    const Vec dir = vec({1.0, -0.3, 0.4});
    CHECK((h1->position(u) - h0->position(u) - 0.7 / (S + 1.0) * dir).norm() < 1e-15);
  }

  TEST_CASE("property: explicit family normal is unit and orthogonal") {
    auto h = hilf_chart(HilfParams{{}, {1.0, 2.0, 3.0}, 0.3});
    Grid g{Vec::Zero(3), 0.5, 3};
    for (const Vec& u : g.points()) {
      const JetPoint j = h->evaluate_jet(u);
      CHECK(j.xi.norm() == doctest::Approx(1.0).epsilon(1e-14));
      CHECK((j.dx * j.xi).cwiseAbs().maxCoeff() < 1e-14);
    }
  }

  TEST_CASE("tau reproduces the explicit family on grids") {
    for (auto a : {std::vector<double>{1, 2}, std::vector<double>{1, 2, 3}}) {
      HilfParams p{{}, a, 0.0};
      const DegenerateChart d = degenerate_example(p);
      auto h = hilf_chart(p);
      const int n = p.n();
      Grid g{Vec::Zero(n), 0.4, 5};
      double worst = 0;
      for (const Vec& u : g.points()) {
        const auto [x, xi] = laguerre_immersion_tau(d.x(u), d.xi(u));
        const JetPoint j = h->evaluate_jet(u);
        worst = std::max({worst, (x - j.x).cwiseAbs().maxCoeff(),
                          (xi - j.xi).cwiseAbs().maxCoeff()});
      }
      CHECK(worst <= 1e-12);
    }
  }

  TEST_CASE("tau chart equals the explicit family chart") {
    HilfParams p{{}, {1.0, 2.0, 3.0}, 0.0};
    auto t = tau_chart(p);
    auto h = hilf_chart(p);
    const Vec u = vec({0.1, -0.3, 0.2});
    const JetPoint a = t->evaluate_jet(u), b = h->evaluate_jet(u);
    CHECK((a.dx - b.dx).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((a.dxi - b.dxi).cwiseAbs().maxCoeff() < 1e-13);
  }

  TEST_CASE("tau is undefined where xi_1 vanishes") {
    CHECK_THROWS_AS(laguerre_immersion_tau(vec({0, 1, 0, 0}), vec({1, 0, 1, 0})),
                    DegeneracyError);
  }

  TEST_CASE("multiplicities expand the constants") {
    HilfParams p{{2, 1}, {1.0, 3.0}, 0.0};
    CHECK(p.n() == 3);
    CHECK(p.expanded() == std::vector<double>{1.0, 1.0, 3.0});
  }

  TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(torus_chart(1.0, 2.0), ParameterError);
    CHECK_THROWS_AS(torus_chart(1.0, 0.0), ParameterError);
    CHECK_THROWS_AS(hilf_chart(HilfParams{{}, {1.0, 1.0}, 0.0}), ParameterError);
    CHECK_THROWS_AS(hilf_chart(HilfParams{{}, {1.0, 0.0}, 0.0}), ParameterError);
    CHECK_THROWS_AS(hilf_chart(HilfParams{{}, {1.0}, 0.0}), ParameterError);
    CHECK_THROWS_AS(hilf_chart(HilfParams{{1}, {1.0, 2.0}, 0.0}), ParameterError);
    CHECK_THROWS_AS(sphere_chart(-1.0), ParameterError);
  }

  TEST_CASE("catalog lists the built-ins") {
    std::vector<std::string> names;
    for (const auto& e : catalog()) names.push_back(e.name);
    for (const char* want : {"hilf", "degenerate-hilf", "torus"})
      CHECK(std::find(names.begin(), names.end(), want) != names.end());
  }
}
