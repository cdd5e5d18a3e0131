#pragma once
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "laguerre/laguerre_core.hpp"
#include "laguerre/surface_chart.hpp"

namespace laguerre {

/// Free constants of the curvature-line construction. C(k, s) holds
/// c^{s+3}_k, so row k belongs to the k-th curvature line.
struct ConstructionConstants {
  Vec b;
  Mat C;
  Vec beta1, beta3, gamma1;
  std::uint64_t seed = 0;

  int n() const { return static_cast<int>(b.size()); }
  /// Constant offset added to sum bbar vbar^2 in the first coordinate of x.
  double phi() const;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> failures;
  double sum_b = 0, sum_b2_minus_1 = 0, orthogonality = 0, min_gap = 0, min_abs_b = 0,
         min_abs_diag = 0;
};

ValidationReport validate_constants(const ConstructionConstants& c);

/// Laguerre principal curvatures of the explicit family with constants a:
/// r_i = 1/a_i, b_i = (r - r_i)/rho.
Vec b_from_a(const std::vector<double>& a);

/// Haar orthogonal matrix; resampled until every diagonal entry has
/// magnitude at least 1e-3.
Mat random_orthogonal(int n, std::uint64_t seed);

/// Orthogonal matrix with determinant +1 (no diagonal condition).
Mat random_rotation(int dim, std::uint64_t seed);

/// Block rotation diag(1, 1, Q, 1) on the Euclidean axes 3..n+3 of R^{n+4}_2.
Mat random_laguerre_rotation(int n, std::uint64_t seed);

/// Orthogonal C and constants beta1, beta3, gamma1 in [-1, 1], all drawn
/// from one generator seeded with seed.
ConstructionConstants random_constants(const Vec& b, std::uint64_t seed);

/// C = identity, beta1 = beta3 b and gamma1 = beta3^2 b / 2, so phi = 0.
ConstructionConstants cancelling_constants(const Vec& b, const Vec& beta3);

/// Closed-form evaluators of Y, eta and the resulting immersion.
struct ConstructedImpl {
  ConstructionConstants c;
  static constexpr bool has_normal = true;
  int n() const { return c.n(); }

  template <class S>
  void Y(const S* v, S* out) const {
    const int n = this->n();
    S A = 0.0, s = 0.0;
    for (int k = 0; k < n; ++k) {
      const double ck = c.C(k, k);
      const double D = c.beta1[k] - c.beta3[k] * c.b[k];
      A += v[k] * v[k] * c.b[k] + std::sqrt(2.0) * v[k] * ck * D +
           ck * ck * c.beta3[k] * (c.beta3[k] * c.b[k] / 2.0 - c.beta1[k]) + c.gamma1[k];
      s += v[k] * v[k];
    }
    out[0] = A;
    out[1] = -A;
    out[2] = s - 0.5;
    for (int q = 0; q < n; ++q) {
      S t = 0.0;
      for (int k = 0; k < n; ++k) t += std::sqrt(2.0) * v[k] * c.C(k, q);
      out[q + 3] = t;
    }
    out[n + 3] = s + 0.5;
  }

  template <class S>
  void eta(const S* v, S* out) const {
    const int n = this->n();
    S sq = 0.0, e3 = 0.0;
    std::vector<S> w(n);
    for (int k = 0; k < n; ++k) {
      const double ck = c.C(k, k);
      const double D = c.beta1[k] - c.beta3[k] * c.b[k];
      const S h = v[k] * c.b[k] + ck * D / std::sqrt(2.0);
      sq += h * h;
      e3 += v[k] * v[k] * c.b[k] -
            (ck * ck * c.beta3[k] * (c.beta3[k] * c.b[k] / 2.0 - c.beta1[k]) + c.gamma1[k]);
      w[k] = std::sqrt(2.0) * v[k] * c.b[k] + ck * D;
    }
    out[0] = sq + 0.5;
    out[1] = -sq + 0.5;
    out[2] = e3;
    for (int q = 0; q < n; ++q) {
      S t = 0.0;
      for (int k = 0; k < n; ++k) t += w[k] * c.C(k, q);
      out[q + 3] = t;
    }
    out[n + 3] = e3;
  }

  /// x^q = eta^{q+2} - r xi^q with rho = Y^{n+4}, r = eta^{n+4}.
  template <class S>
  void position(const S* v, S* x) const {
    const int n = this->n();
    std::vector<S> y(n + 4), e(n + 4);
    Y(v, y.data());
    eta(v, e.data());
    const S rho = y[n + 3], r = e[n + 3];
    for (int q = 0; q <= n; ++q) x[q] = e[q + 2] - r * (y[q + 2] / rho);
  }

  template <class S>
  void normal(const S* v, S* xi) const {
    const int n = this->n();
    std::vector<S> y(n + 4);
    Y(v, y.data());
    for (int q = 0; q <= n; ++q) xi[q] = y[q + 2] / y[n + 3];
  }
};

using ConstructedChart = ClosedFormChart<ConstructedImpl>;

struct ConstructedMaps {
  std::shared_ptr<ConstructedChart> chart;

  const ConstructionConstants& constants() const { return chart->impl().c; }
  Vec Y(const Vec& v) const;
  Vec eta(const Vec& v) const;
  double rho(const Vec& v) const;
  double r(const Vec& v) const;
  Vec x(const Vec& v) const;
  Vec xi(const Vec& v) const;
  /// Exact first partials of Y (columns) and second partial Y_,ij.
  Mat dY(const Vec& v) const;
  Vec ddY(const Vec& v, int i, int j) const;
  Mat dEta(const Vec& v) const;
};

std::function<Vec(const Vec&)> build_position(const ConstructionConstants& c);
std::function<Vec(const Vec&)> build_normal_map(const ConstructionConstants& c);
ConstructedMaps build_immersion(const ConstructionConstants& c, double half_width = 1.0);

/// Verification grid [-0.5, 0.5]^n with 5 points per axis.
Grid construction_grid(int n);

struct FrobeniusReport {
  double lambda_hat = 0;
  double mixed_partials = 0;    // max |Y_,ij|, i != j
  double b_spread = 0;          // max |b_hat - b_hat(first point)| after sorting
  double b_match = 0;           // max |sorted b_hat - sorted input b|
  double n_spread = 0;          // N from the analyzer, max deviation over the grid
  double second_equation = 0;   // |Y_,ii/g_ii - g_ii,i Y_,i/(2 g_ii^2) - N - b_i P|
  double eta_relation = 0;      // |eta_,i - b_i Y_,i|
  double gram_off_diagonal = 0; // |<Y_,i, Y_,j>|, i != j
  ClassificationResult classification;

  double worst() const;
};

FrobeniusReport frobenius_report(const ConstructedMaps& maps, const std::vector<Vec>& grid,
                                 const CoreOptions& opt = {});

}  // namespace laguerre
