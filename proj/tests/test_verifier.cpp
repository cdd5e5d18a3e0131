#include <cmath>
#include <set>

#include "doctest.h"
#include "laguerre/errors.hpp"
#include "laguerre/families.hpp"
#include "laguerre/verifier.hpp"

using namespace laguerre;

TEST_SUITE("verifier") {
  TEST_CASE("explicit family passes every executed check") {
    auto h = hilf_chart(HilfParams{{}, {1.0, 2.0, 3.0}, 0.0});
    const PropertyReport r = run_suite(*h, Grid{Vec::Zero(3), 0.4, 3});
    for (const auto& c : r.checks) {
      CAPTURE(c.name);
      CHECK(c.status != CheckStatus::Failed);
    }
    CHECK(r.all_passed());
    CHECK(r.arbitration.matching == "closedA");
    const CheckResult* rb = r.find("isotropic.rho_bound");
    REQUIRE(rb != nullptr);
    CHECK(rb->status == CheckStatus::Skipped);
    CHECK(rb->note.find("vacuous") != std::string::npos);
    const CheckResult* tc = r.find("two_curvature.constants");
    REQUIRE(tc != nullptr);
    CHECK(tc->status == CheckStatus::Skipped);
    CHECK(r.find("isoparametric.igc")->status == CheckStatus::Passed);
  }

  TEST_CASE("check names are unique and anchored") {
    auto t = torus_chart(2.0, 1.0);
    const PropertyReport r = run_suite(*t, Grid{Vec::Zero(2), 0.5, 3});
    std::set<std::string> names;
    for (const auto& c : r.checks) {
      CHECK(names.insert(c.name).second);
      CHECK_FALSE(c.anchor.empty());
      if (c.status == CheckStatus::Skipped) CHECK_FALSE(c.note.empty());
    }
  }

  TEST_CASE("torus: frame checks and the two-curvature constants") {
    auto t = torus_chart(2.0, 1.0);
    const PropertyReport r = run_suite(*t, Grid{Vec::Zero(2), 0.5, 3});
    CHECK(r.all_passed());
    CHECK(r.find("frame.Y_N")->status == CheckStatus::Passed);
    CHECK(r.find("two_curvature.constants")->status == CheckStatus::Passed);
    CHECK(r.classified);
    CHECK_FALSE(r.classification.is_isotropic);
    CHECK(r.find("isotropic.nabla_B")->status == CheckStatus::Skipped);
  }

  TEST_CASE("sphere reports only umbilic errors") {
    auto s = sphere_chart(1.0);
    const PropertyReport r = run_suite(*s, Grid{Vec::Zero(2), 0.4, 3});
    CHECK(r.checks.empty());
    REQUIRE(r.errors.size() == 9);
    for (const auto& e : r.errors) CHECK(e.kind == "umbilic");
  }

  TEST_CASE("bad grid points are recorded and the suite continues") {
    auto t = torus_chart(2.0, 1.0);
    Vec c(2);
    c << 0.0, 0.6;
    const PropertyReport r = run_suite(*t, Grid{c, 0.45, 3});
    CHECK(r.errors.size() == 3);
    for (const auto& e : r.errors) CHECK(e.kind == "margin");
    CHECK(r.samples.size() == 6);
    CHECK_FALSE(r.warnings.empty());
  }

  TEST_CASE("two-curvature constants") {
    const auto [b1, b2] = two_curvature_targets(2, 1);
    CHECK(b1 == doctest::Approx(0.7071068).epsilon(1e-7));
    CHECK(b2 == doctest::Approx(-0.7071068).epsilon(1e-7));
    const auto [c1, c2] = two_curvature_targets(5, 2);
    CHECK(2 * c1 + 3 * c2 == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(2 * c1 * c1 + 3 * c2 * c2 == doctest::Approx(1.0));
    CHECK_THROWS_AS(two_curvature_targets(3, 3), PreconditionError);

    auto t = torus_chart(2.0, 1.0);
    CHECK(two_curvature_check(*t, Grid{Vec::Zero(2), 0.5, 3}.points()) <= 1e-6);
    auto h = hilf_chart(HilfParams{{}, {1.0, 2.0, 3.0}, 0.0});
    CHECK_THROWS_AS(two_curvature_check(*h, Grid{Vec::Zero(3), 0.2, 3}.points()),
                    PreconditionError);
  }

  TEST_CASE("multiplicity blocks meet the two-curvature constants") {
    auto h = hilf_chart(HilfParams{{2, 1}, {1.0, 3.0}, 0.0});
    CHECK(two_curvature_check(*h, Grid{Vec::Constant(3, 0.05), 0.2, 3}.points()) <= 1e-6);
  }

  TEST_CASE("reports are deterministic") {
    auto h = hilf_chart(HilfParams{{}, {1.0, 2.0, 3.0}, 0.7});
    const Grid g{Vec::Zero(3), 0.3, 3};
    CHECK(run_suite(*h, g).to_json().dump() == run_suite(*h, g).to_json().dump());
  }

  TEST_CASE("tolerances round-trip and reject bad values") {
    Tolerances t;
    t.gauss = 2e-3;
    const Tolerances u = Tolerances::from_json(t.to_json());
    CHECK(u.gauss == 2e-3);
    CHECK(u.to_json() == t.to_json());
    CHECK_THROWS_AS(Tolerances::from_json({{"gauss", -1.0}}), InputError);
    CHECK_THROWS_AS(Tolerances::from_json({{"nonsense", 1.0}}), InputError);
  }
}
