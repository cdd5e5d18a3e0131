#pragma once
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "laguerre/hyperdual.hpp"
#include "laguerre/pseudo_euclidean.hpp"
#include "laguerre/stencil.hpp"

namespace laguerre {

struct FdConfig {
  double step = 1e-4;
  FdScheme scheme = FdScheme::Central4;
};

/// Open axis-aligned parameter box.
struct Box {
  Vec lo, hi;
  static Box cube(int n, double half_width);
  bool contains(const Vec& u, double margin = 0.0) const;
};

/// Regular tensor grid: points_per_axis samples per axis on
/// [center - half_width, center + half_width].
struct Grid {
  Vec center;
  double half_width = 0.4;
  int points_per_axis = 5;
  std::vector<Vec> points() const;
};

struct JetPoint {
  Vec u;
  Vec x;                 // n+1
  Mat dx;                // n x (n+1), row a is d_a x
  std::vector<Vec> ddx;  // n*n entries, d_a d_b x at a*n+b
  Vec xi;                // unit normal
  Mat dxi;               // n x (n+1), row a is d_a xi
  bool analytic_normal = false;

  int n() const { return static_cast<int>(u.size()); }
  const Vec& dd(int a, int b) const { return ddx[a * n() + b]; }
};

/// Parametrized hypersurface u -> x(u) in R^{n+1}.
class Chart {
 public:
  Chart(int n, Box domain);
  virtual ~Chart() = default;

  int n() const { return n_; }
  const Box& domain() const { return domain_; }
  virtual std::string name() const = 0;
  /// Short parameter summary for reports.
  virtual std::string describe() const { return name(); }

  virtual Vec position(const Vec& u) const = 0;
  virtual bool exact_derivatives() const { return false; }
  virtual bool has_analytic_normal() const { return false; }

  /// Jet at u; exact when the chart supplies derivatives, fd otherwise.
  JetPoint evaluate_jet(const Vec& u) const;

  FdConfig fd;
  bool flip_normal = false;

 protected:
  /// Fill x, dx, ddx (and xi, dxi when analytic). Only called when
  /// exact_derivatives() is true.
  virtual void exact_jet(const Vec& u, JetPoint& jet) const;

 private:
  int n_;
  Box domain_;
};

/// Black-box chart differentiated by central differences.
class FunctionChart : public Chart {
 public:
  FunctionChart(int n, Box domain, std::function<Vec(const Vec&)> f, std::string name);
  std::string name() const override { return name_; }
  Vec position(const Vec& u) const override { return f_(u); }

 private:
  std::function<Vec(const Vec&)> f_;
  std::string name_;
};

/// Chart with closed-form evaluators differentiated by hyper-dual numbers.
/// Impl provides n(), position(const S*, S*) and, when has_normal is true,
/// normal(const S*, S*), templated on the scalar S.
template <class Impl>
class ClosedFormChart : public Chart {
 public:
  ClosedFormChart(Impl impl, Box domain, std::string name)
      : Chart(impl.n(), std::move(domain)), impl_(std::move(impl)), name_(std::move(name)) {}

  std::string name() const override { return name_; }
  Vec position(const Vec& u) const override {
    Vec x(n() + 1);
    impl_.position(u.data(), x.data());
    return x;
  }
  bool exact_derivatives() const override { return true; }
  bool has_analytic_normal() const override { return Impl::has_normal; }
  const Impl& impl() const { return impl_; }

 protected:
  void exact_jet(const Vec& u, JetPoint& jet) const override {
    const int n = this->n();
    std::vector<HyperDual> uh(n), xh(n + 1), nh(n + 1);
    jet.x = Vec(n + 1);
    jet.dx = Mat(n, n + 1);
    jet.ddx.assign(n * n, Vec(n + 1));
    if constexpr (Impl::has_normal) {
      jet.xi = Vec(n + 1);
      jet.dxi = Mat(n, n + 1);
    }
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) {
        for (int c = 0; c < n; ++c)
          uh[c] = HyperDual(u[c], c == a ? 1.0 : 0.0, c == b ? 1.0 : 0.0, 0.0);
        impl_.position(uh.data(), xh.data());
        for (int q = 0; q <= n; ++q) {
          jet.ddx[a * n + b][q] = xh[q].f12;
          jet.ddx[b * n + a][q] = xh[q].f12;
          if (a == b) {
            jet.x[q] = xh[q].f;
            jet.dx(a, q) = xh[q].f1;
          }
        }
        if constexpr (Impl::has_normal) {
          if (a == b) {
            impl_.normal(uh.data(), nh.data());
            for (int q = 0; q <= n; ++q) {
              jet.xi[q] = nh[q].f;
              jet.dxi(a, q) = nh[q].f1;
            }
          }
        }
      }
    jet.analytic_normal = Impl::has_normal;
  }

 private:
  Impl impl_;
  std::string name_;
};

/// Pre-composition u = R w with a fixed invertible matrix R.
class ReparametrizedChart : public Chart {
 public:
  ReparametrizedChart(std::shared_ptr<const Chart> base, Mat R, Box domain);
  std::string name() const override { return base_->name() + "-reparametrized"; }
  Vec position(const Vec& w) const override { return base_->position(R_ * w); }
  bool exact_derivatives() const override { return true; }
  bool has_analytic_normal() const override { return base_->has_analytic_normal(); }

 protected:
  void exact_jet(const Vec& w, JetPoint& jet) const override;

 private:
  std::shared_ptr<const Chart> base_;
  Mat R_;
};

/// Normalized generalized cross product of the rows of dx.
Vec cross_normal(const Mat& dx);

struct FundamentalForms {
  Mat I, II, III;
};

FundamentalForms fundamental_forms(const JetPoint& jet);

struct PrincipalOptions {
  double umbilic_rel = 1e-7;
  double floor_rel = 1e-7;
};

struct CurvatureFrame {
  Vec k;      // descending
  Mat e;      // column i is e_i in parameter coordinates, unit in I
  Vec radii;  // r_i = 1/k_i
  double r = 0;
  double rho = 0;
  bool ties = false;
};

CurvatureFrame principal_decomposition(const JetPoint& jet, const PrincipalOptions& opt = {});

/// Radii data from a curvature vector alone.
CurvatureFrame frame_from_curvatures(const Vec& k);

/// True iff I and II are diagonal at every grid point, relative to the
/// largest diagonal entry.
bool curvature_line_check(const Chart& chart, const std::vector<Vec>& grid, double tol);

}  // namespace laguerre
