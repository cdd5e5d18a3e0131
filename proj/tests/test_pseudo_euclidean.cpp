#include <random>

#include "doctest.h"
#include "laguerre/construction.hpp"
#include "laguerre/errors.hpp"
#include "laguerre/pseudo_euclidean.hpp"

using namespace laguerre;

TEST_SUITE("pseudo_euclidean") {
  TEST_CASE("P is lightlike and nu is lightlike") {
    for (int n = 1; n <= 5; ++n) {
      CHECK(inner_product(vector_P(n), vector_P(n)) == 0.0);
      CHECK(inner_product(vector_nu(n), vector_nu(n)) == 0.0);
      CHECK(is_lightlike(vector_P(n), 1e-15));
    }
  }

  TEST_CASE("signatures place the negative axes") {
    const auto L = SignatureSpace::laguerre(3);
    CHECK(L.dimension() == 7);
    CHECK(L.signs()[0] == -1.0);
    CHECK(L.signs()[6] == -1.0);
    CHECK(L.signs().sum() == doctest::Approx(3.0));
    const auto M = SignatureSpace::minkowski(3);
    CHECK(M.dimension() == 5);
    CHECK(M.signs()[4] == -1.0);
    CHECK(M.signs().sum() == doctest::Approx(3.0));
  }

  TEST_CASE("hand-computed inner products") {
    Vec u(6), v(6);
    u << 1, 2, 3, 4, 5, 6;
    v << 1, 1, 1, 1, 1, 1;
    // -1 + 2 + 3 + 4 + 5 - 6
    CHECK(lag_ip(u, v) == doctest::Approx(7.0));
    CHECK(inner_product(SignatureSpace::laguerre(2), u, v) == doctest::Approx(7.0));
  }

  TEST_CASE("dimension mismatches raise") {
    CHECK_THROWS_AS(SpaceVector(SignatureSpace::laguerre(2), Vec::Zero(5)), DimensionError);
    SpaceVector a(SignatureSpace::laguerre(2), Vec::Zero(6));
    SpaceVector b(SignatureSpace::minkowski(4), Vec::Zero(6));
    CHECK_THROWS_AS(inner_product(a, b), DimensionError);
  }

  TEST_CASE("identity and rotations are Laguerre transforms") {
    CHECK(is_laguerre_transform(Mat::Identity(7, 7), 1e-12));
    for (std::uint64_t s = 0; s < 10; ++s) {
      const Mat T = random_laguerre_rotation(3, s);
      CHECK(is_laguerre_transform(T, 1e-10));
    }
  }

  TEST_CASE("a boost that moves P is rejected") {
    // preserves the form but moves P
    Mat T = Mat::Identity(6, 6);
    const double c = std::cosh(0.3), s = std::sinh(0.3);
    T(0, 0) = c;
    T(0, 2) = s;
    T(2, 0) = s;
    T(2, 2) = c;
    CHECK(laguerre_transform_defect(T) > 1e-3);
    CHECK_FALSE(is_laguerre_transform(T, 1e-10));
  }

  TEST_CASE("property: rotations preserve the form and fix P") {
    std::mt19937_64 gen(42);
    std::normal_distribution<double> N;
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 2 + trial % 3;
      const Mat T = random_laguerre_rotation(n, trial);
      Vec u(n + 4), v(n + 4);
      for (int i = 0; i < n + 4; ++i) {
        u[i] = N(gen);
        v[i] = N(gen);
      }
      const auto space = SignatureSpace::laguerre(n);
      const auto Tu = apply_transform(T, SpaceVector(space, u));
      const auto Tv = apply_transform(T, SpaceVector(space, v));
      CHECK(inner_product(Tu, Tv) == doctest::Approx(lag_ip(u, v)).epsilon(1e-12));
      const auto TP = apply_transform(T, vector_P(n));
      CHECK((TP.coords - vector_P(n).coords).norm() < 1e-12);
    }
  }
}
