#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "laguerre/construction.hpp"
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

Vec sorted(Vec v) {
  std::sort(v.data(), v.data() + v.size());
  return v;
}

}  // namespace

TEST_SUITE("construction") {
  TEST_CASE("curvatures from the explicit-family constants") {
    const Vec b = b_from_a({1.0, 2.0, 3.0});
    CHECK(b[0] == doctest::Approx(-0.79259).epsilon(1e-5));
    CHECK(b[1] == doctest::Approx(0.22646).epsilon(1e-4));
    CHECK(b[2] == doctest::Approx(0.56613).epsilon(1e-5));
    CHECK(std::abs(b.sum()) < 1e-15);
    CHECK(std::abs(b.squaredNorm() - 1.0) < 1e-15);
    CHECK_THROWS_AS(b_from_a({2.0, 2.0}), ParameterError);
  }

  TEST_CASE("seeded orthogonal matrices") {
    for (std::uint64_t s : {1, 2, 3}) {
      const Mat Q = random_orthogonal(4, s);
      CHECK((Q.transpose() * Q - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-14);
      CHECK(Q.diagonal().cwiseAbs().minCoeff() >= 1e-3);
      CHECK(Q == random_orthogonal(4, s));
      CHECK(random_rotation(5, s).determinant() == doctest::Approx(1.0));
    }
    CHECK(random_orthogonal(3, 1) != random_orthogonal(3, 2));
  }

  TEST_CASE("constant validation") {
    const Vec b = b_from_a({1.0, 2.0, 3.0});
    ConstructionConstants c = random_constants(b, 1);
    CHECK(validate_constants(c).ok);

    ConstructionConstants bad = c;
    bad.C(0, 1) += 0.1;
    CHECK_FALSE(validate_constants(bad).ok);

    bad = c;
    bad.b = vec({0.5, 0.5, -1.0});
    CHECK_FALSE(validate_constants(bad).ok);

    bad = c;
    bad.b = vec({std::sqrt(0.5), -std::sqrt(0.5), 0.0});
    CHECK_FALSE(validate_constants(bad).ok);  // a vanishing curvature

    bad = c;
    bad.C = Mat::Identity(3, 3);
    bad.C.row(0).swap(bad.C.row(1));
    CHECK_FALSE(validate_constants(bad).ok);  // zero diagonal entries

    CHECK_THROWS_AS(build_immersion(bad), ParameterError);
  }

  TEST_CASE("cancelling constants reproduce the explicit family") {
    const Vec b = b_from_a({1.0, 2.0, 3.0});
    const ConstructionConstants c = cancelling_constants(b, vec({1.0, -0.5, 0.3}));
    CHECK(c.phi() == doctest::Approx(0.0));
    const ConstructedMaps m = build_immersion(c);
    auto h = hilf_chart(HilfParams{{}, {1.0 / b[0], 1.0 / b[1], 1.0 / b[2]}, 0.0}, 5.0);
    double worst = 0;
    for (const Vec& v : construction_grid(3).points()) {
      const Vec u = std::sqrt(2.0) * v.cwiseProduct(b);
      worst = std::max(worst, (m.x(v) - h->position(u)).cwiseAbs().maxCoeff());
    }
    CHECK(worst <= 1e-9);
  }

  TEST_CASE("property: constructed maps satisfy the light-cone relations") {
    const Vec b = b_from_a({1.0, 2.0, 4.0});
    const ConstructedMaps m = build_immersion(random_constants(b, 5));
    const Vec P = vector_P(3).coords;
    for (const Vec& v : construction_grid(3).points()) {
      const Vec Y = m.Y(v), eta = m.eta(v);
      CHECK(std::abs(lag_ip(Y, Y)) < 1e-12);
      CHECK(std::abs(lag_ip(eta, eta)) < 1e-12);
      CHECK(std::abs(lag_ip(Y, eta)) < 1e-12);
      CHECK(lag_ip(eta, P) == doctest::Approx(-1.0));
      CHECK(m.rho(v) > 0);
      CHECK(m.xi(v).norm() == doctest::Approx(1.0));
    }
  }

  TEST_CASE("seeded constructions are isotropic and isoparametric") {
    const Vec b = b_from_a({1.0, 2.0, 3.0});
    for (std::uint64_t s : {1, 2, 3}) {
      const ConstructedMaps m = build_immersion(random_constants(b, s));
      const FrobeniusReport r = frobenius_report(m, construction_grid(3).points());
      CAPTURE(s);
      CHECK(r.worst() <= 1e-6);
      CHECK(r.classification.is_isotropic);
      CHECK(r.classification.is_isoparametric);
      CHECK(std::abs(r.lambda_hat) <= 1e-5);
      CHECK((sorted(r.classification.b_mean) - sorted(b)).cwiseAbs().maxCoeff() <= 1e-5);
    }
  }

  TEST_CASE("seeded constants are reproducible") {
    const Vec b = b_from_a({1.0, 2.0, 3.0});
    const ConstructionConstants a = random_constants(b, 9), c = random_constants(b, 9);
    CHECK(a.C == c.C);
    CHECK(a.beta1 == c.beta1);
    CHECK(a.gamma1 == c.gamma1);
    CHECK(random_constants(b, 10).beta3 != a.beta3);
  }
}
