// Acceptance suite: one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "laguerre/cli.hpp"
#include "laguerre/construction.hpp"
#include "laguerre/families.hpp"
#include "laguerre/verifier.hpp"

using namespace laguerre;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what, double value) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s%s=%.3g", detail.empty() ? "" : " ", what.c_str(), value);
    detail += buf;
    if (!ok) {
      pass = false;
      detail += "(!)";
    }
  }
};

Vec sorted(Vec v) {
  std::sort(v.data(), v.data() + v.size());
  return v;
}

double check_residual(const PropertyReport& r, const std::string& name) {
  const CheckResult* c = r.find(name);
  if (!c || c->status != CheckStatus::Passed) return 1e300;
  return c->residual;
}

const HilfParams kFamily{{}, {1.0, 2.0, 3.0}, 0.0};
const Grid kGrid{Vec::Zero(3), 0.4, 5};

Outcome explicit_family_suite() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  auto h = hilf_chart(kFamily);
  const PropertyReport r = run_suite(*h, kGrid);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(r.errors.empty() && r.samples.size() == 125, "points", double(r.samples.size()));
  o.require(check_residual(r, "identity.sum_b") <= 1e-9, "sum_b", check_residual(r, "identity.sum_b"));
  o.require(check_residual(r, "identity.sum_b2") <= 1e-9, "sum_b2",
            check_residual(r, "identity.sum_b2"));

  // target in the order of the constants a_i; principal curvatures are sorted
  // descending, which follows the same order here
  Vec target(3);
  target << -0.79259, 0.22646, 0.56613;
  const Vec exact = b_from_a(kFamily.a);
  o.require((exact - target).cwiseAbs().maxCoeff() <= 1e-5, "quoted_digits",
            (exact - target).cwiseAbs().maxCoeff());
  double bdev[2] = {0, 0};
  double cmax = 0, lmax = 0;
  for (const auto& s : r.samples) {
    for (int k = 0; k < 2; ++k)
      bdev[k] = std::max(bdev[k], (s.b - (k ? -1.0 : 1.0) * exact).cwiseAbs().maxCoeff());
    cmax = std::max(cmax, s.C.cwiseAbs().maxCoeff());
  }
  for (const auto& p : Grid{Vec::Zero(3), 0.4, 5}.points()) {
    const PointAnalysis a = analyze_point(*h, p);
    lmax = std::max(lmax, a.structural.L_structural.norm());
    cmax = std::max(cmax, a.structural.C.cwiseAbs().maxCoeff());
  }
  const double bd = std::min(bdev[0], bdev[1]);
  o.require(bd <= 1e-6, "b_hat", bd);
  o.require(cmax <= 1e-5, "max_C", cmax);
  o.require(lmax <= 1e-4, "L_norm", lmax);
  double frame = 0;
  for (const auto& c : r.checks)
    if (c.name.rfind("frame.", 0) == 0) {
      frame = std::max(frame, c.status == CheckStatus::Passed ? c.residual : 1e300);
    }
  o.require(frame <= 1e-6, "frame", frame);
  o.require(secs <= 30.0, "seconds", secs);
  return o;
}

Outcome torus_two_curvature() {
  Outcome o;
  auto t = torus_chart(2.0, 1.0);
  std::mt19937_64 gen(20);
  std::uniform_real_distribution<double> U(-M_PI + 0.01, M_PI - 0.01),
      V(-M_PI / 3 + 0.01, M_PI / 3 - 0.01);
  const double s = std::sqrt(0.5);
  double match = 0;
  Vec first;
  double spread = 0;
  for (int i = 0; i < 20; ++i) {
    Vec u(2);
    u << U(gen), V(gen);
    const PointLift l = lift_point(*t, u);
    const Vec b = (Vec::Constant(2, l.frame.r) - l.frame.radii) / l.frame.rho;
    Vec bs = sorted(b);
    match = std::max(match, std::max(std::abs(bs[0] + s), std::abs(bs[1] - s)));
    if (i == 0) first = b;
    spread = std::max(spread, (b - first).cwiseAbs().maxCoeff());
  }
  o.require(match <= 1e-6, "match", match);
  o.require(spread <= 1e-6, "spread", spread);
  return o;
}

Outcome curvature_relation() {
  Outcome o;
  auto h = hilf_chart(kFamily);
  double riem = 0, gauss = 0;
  for (const Vec& u : kGrid.points()) {
    const PointAnalysis p = analyze_point(*h, u);
    riem = std::max(riem, max_abs_riemann(p));
    gauss = std::max(gauss, gauss_residual(p));
  }
  o.require(riem <= 1e-4, "max_R", riem);
  o.require(gauss <= 1e-3, "gauss", gauss);
  return o;
}

Outcome tau_equivalence() {
  Outcome o;
  for (auto a : {std::vector<double>{1, 2}, std::vector<double>{1, 2, 3}}) {
    HilfParams p{{}, a, 0.0};
    const DegenerateChart d = degenerate_example(p);
    auto h = hilf_chart(p);
    const int n = p.n();
    double w = 0;
    for (const Vec& u : Grid{Vec::Zero(n), 0.4, 5}.points()) {
      const auto [x, xi] = laguerre_immersion_tau(d.x(u), d.xi(u));
      Vec hx(n + 1), hxi(n + 1);
      h->impl().position(u.data(), hx.data());
      h->impl().normal(u.data(), hxi.data());
      w = std::max({w, (x - hx).cwiseAbs().maxCoeff(), (xi - hxi).cwiseAbs().maxCoeff()});
    }
    o.require(w <= 1e-12, "n" + std::to_string(n), w);
  }
  return o;
}

Outcome construction_roundtrip() {
  Outcome o;
  const Vec b = b_from_a(kFamily.a);
  {
    const ConstructedMaps m = build_immersion(cancelling_constants(b, Vec::Ones(3)));
    auto h = hilf_chart(HilfParams{{}, {1.0 / b[0], 1.0 / b[1], 1.0 / b[2]}, 0.0}, 5.0);
    double w = 0;
    for (const Vec& v : construction_grid(3).points())
      w = std::max(w, (m.x(v) - h->position(std::sqrt(2.0) * v.cwiseProduct(b)))
                          .cwiseAbs()
                          .maxCoeff());
    o.require(w <= 1e-9, "explicit", w);
  }
  for (std::uint64_t seed : {1, 2, 3}) {
    const ConstructedMaps m = build_immersion(random_constants(b, seed));
    const FrobeniusReport r = frobenius_report(m, construction_grid(3).points());
    const auto& c = r.classification;
    const double bm = (sorted(c.b_mean) - sorted(b)).cwiseAbs().maxCoeff();
    const std::string s = "seed" + std::to_string(seed);
    o.require(c.is_isotropic && std::abs(c.lambda_estimate) <= 1e-5, s + "_lambda",
              c.lambda_estimate);
    o.require(c.is_isoparametric && bm <= 1e-5, s + "_b", bm);
    o.require(r.worst() <= 1e-6, s + "_frobenius", r.worst());
  }
  return o;
}

Outcome arbitration() {
  Outcome o;
  auto h = hilf_chart(kFamily);
  const PropertyReport r = run_suite(*h, kGrid);
  const bool a = r.arbitration.closedA <= 1e-3, b = r.arbitration.closedB <= 1e-3;
  o.require(a != b, "closedA", r.arbitration.closedA);
  o.require(a != b, "closedB", r.arbitration.closedB);
  o.detail += " matching=" + r.arbitration.matching;
  return o;
}

Outcome phi_invariance() {
  Outcome o;
  ClassificationResult c[2];
  double maxC[2];
  int i = 0;
  for (double phi : {0.0, 0.7}) {
    auto h = hilf_chart(HilfParams{{}, kFamily.a, phi});
    std::vector<PointAnalysis> pts;
    for (const Vec& u : kGrid.points()) pts.push_back(analyze_point(*h, u));
    c[i] = classify(pts);
    maxC[i] = c[i].max_C;
    ++i;
  }
  o.require((c[0].b_mean - c[1].b_mean).cwiseAbs().maxCoeff() <= 1e-5, "b_hat",
            (c[0].b_mean - c[1].b_mean).cwiseAbs().maxCoeff());
  o.require(std::abs(c[0].lambda_estimate - c[1].lambda_estimate) <= 1e-5, "lambda",
            std::abs(c[0].lambda_estimate - c[1].lambda_estimate));
  o.require(std::abs(maxC[0] - maxC[1]) <= 1e-5, "max_C", std::abs(maxC[0] - maxC[1]));
  return o;
}

Outcome group_membership() {
  Outcome o;
  int members = 0, rejected = 0;
  std::mt19937_64 gen(8);
  for (std::uint64_t s = 0; s < 100; ++s) {
    const int n = 2 + static_cast<int>(s % 3);
    const Mat T = random_laguerre_rotation(n, s);
    members += is_laguerre_transform(T, 1e-9);
    std::uniform_int_distribution<int> idx(0, n + 3);
    Mat Tp = T;
    Tp(idx(gen), idx(gen)) += 1e-3;
    rejected += !is_laguerre_transform(Tp, 1e-9);
  }
  o.require(members == 100, "members", members);
  o.require(rejected == 100, "rejected", rejected);
  return o;
}

Outcome determinism() {
  Outcome o;
  const std::vector<std::vector<std::string>> commands{
      {"verify", "--surface", "hilf", "--a", "1,2,3", "--grid", "5", "--half-width", "0.4",
       "--no-timestamp"},
      {"verify", "--surface", "torus", "--grid", "4", "--no-timestamp"},
      {"construct", "--seed", "1", "--b-from-a", "1,2,3", "--no-timestamp"},
      {"construct", "--cancelling", "--b-from-a", "1,2,3", "--no-timestamp"},
      {"tau", "--a", "1,2,3", "--no-timestamp"}};
  int same = 0;
  for (const auto& args : commands) {
    std::ostringstream o1, o2, e1, e2;
    const int c1 = run_cli(args, o1, e1), c2 = run_cli(args, o2, e2);
    same += c1 == 0 && c2 == 0 && o1.str() == o2.str() && !o1.str().empty();
  }
  o.require(same == static_cast<int>(commands.size()), "identical", same);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"explicit family suite", explicit_family_suite},
      {"two-curvature constants on the torus", torus_two_curvature},
      {"curvature relation on the explicit family", curvature_relation},
      {"tau equivalence", tau_equivalence},
      {"construction round-trip", construction_roundtrip},
      {"L-variant arbitration", arbitration},
      {"phi invariance", phi_invariance},
      {"group membership", group_membership},
      {"determinism", determinism}};
  int failed = 0, i = 1;
  for (const auto& [name, f] : criteria) {
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", i++, name.c_str(), o.detail.c_str());
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
