#pragma once
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "laguerre/surface_chart.hpp"

namespace laguerre {

/// Parameters of the explicit family. Block i has multiplicity m[i] and
/// constant a[i]; an empty m means unit multiplicities.
struct HilfParams {
  std::vector<int> m;
  std::vector<double> a;
  double phi = 0.0;

  int n() const;
  /// Per-coordinate constants, a[i] repeated m[i] times.
  std::vector<double> expanded() const;
  void validate() const;
};

/// x(u) = (0, u) + (T + phi)/(S + 1) (1, -a u),  T = sum a u^2,  S = sum a^2 u^2,
/// with unit normal ((S - 1), 2 a u)/(S + 1).
struct HilfImpl {
  std::vector<double> a;
  double phi = 0.0;
  static constexpr bool has_normal = true;
  int n() const { return static_cast<int>(a.size()); }

  template <class S>
  void position(const S* u, S* x) const {
    S t = 0.0, s = 0.0;
    for (int i = 0; i < n(); ++i) {
      t += a[i] * u[i] * u[i];
      s += a[i] * a[i] * u[i] * u[i];
    }
    const S q = (t + phi) / (s + 1.0);
    x[0] = q;
    for (int i = 0; i < n(); ++i) x[i + 1] = u[i] - q * a[i] * u[i];
  }

  template <class S>
  void normal(const S* u, S* xi) const {
    S s = 0.0;
    for (int i = 0; i < n(); ++i) s += a[i] * a[i] * u[i] * u[i];
    const S inv = 1.0 / (s + 1.0);
    xi[0] = (s - 1.0) * inv;
    for (int i = 0; i < n(); ++i) xi[i + 1] = 2.0 * a[i] * u[i] * inv;
  }
};

using HilfChart = ClosedFormChart<HilfImpl>;

std::shared_ptr<HilfChart> hilf_chart(const HilfParams& p, double half_width = 2.0);

/// Hypersurface of the null hyperplane <x, nu> = 0 in R^{n+2}_1 with a
/// lightlike normal. Coordinates: (first, middle n, last); the scalar
/// x_1 is the last coordinate, which equals the first on the hyperplane.
class DegenerateChart {
 public:
  explicit DegenerateChart(HilfParams p);
  int n() const { return static_cast<int>(a_.size()); }
  const std::vector<double>& a() const { return a_; }

  template <class S>
  void position(const S* u, S* x) const {
    S t = 0.0;
    for (int i = 0; i < n(); ++i) t += a_[i] * u[i] * u[i];
    x[0] = 0.5 * t;
    for (int i = 0; i < n(); ++i) x[i + 1] = u[i];
    x[n() + 1] = 0.5 * t;
  }

  /// Solution of <xi, dx> = 0, <xi, xi> = 0, <xi, nu> = 1.
  template <class S>
  void normal(const S* u, S* xi) const {
    S s = 0.0;
    for (int i = 0; i < n(); ++i) s += a_[i] * a_[i] * u[i] * u[i];
    xi[0] = 0.5 * (1.0 - s);
    for (int i = 0; i < n(); ++i) xi[i + 1] = -a_[i] * u[i];
    xi[n() + 1] = -0.5 * (1.0 + s);
  }

  Vec x(const Vec& u) const;
  Vec xi(const Vec& u) const;
  /// Tangent vectors d_a x as rows.
  Mat dx(const Vec& u) const;

  /// Worst residual of <x,nu>, <xi,xi>, <xi,nu> - 1 and <xi, d_a x>.
  double constraint_residual(const Vec& u) const;

 private:
  std::vector<double> a_;
};

DegenerateChart degenerate_example(const HilfParams& p);

/// Map from the degenerate model to Euclidean space. The scalar xi_1 is the
/// last coordinate of xi; fails when it vanishes.
template <class S>
void tau_map(int n, const S* x, const S* xi, S* xp, S* xip) {
  const S x1 = x[n + 1];
  const S xi1 = xi[n + 1];
  xp[0] = -x1 / xi1;
  for (int i = 0; i < n; ++i) xp[i + 1] = x[i + 1] - (x1 / xi1) * xi[i + 1];
  xip[0] = 1.0 + 1.0 / xi1;
  for (int i = 0; i < n; ++i) xip[i + 1] = xi[i + 1] / xi1;
}

std::pair<Vec, Vec> laguerre_immersion_tau(const Vec& x, const Vec& xi);

/// Euclidean chart obtained by pushing a degenerate chart through tau.
struct TauImpl {
  DegenerateChart base;
  static constexpr bool has_normal = true;
  int n() const { return base.n(); }
  template <class S>
  void position(const S* u, S* x) const {
    std::vector<S> X(n() + 2), Xi(n() + 2), xi(n() + 1);
    eval(u, X, Xi);
    tau_map(n(), X.data(), Xi.data(), x, xi.data());
  }
  template <class S>
  void normal(const S* u, S* xi) const {
    std::vector<S> X(n() + 2), Xi(n() + 2), x(n() + 1);
    eval(u, X, Xi);
    tau_map(n(), X.data(), Xi.data(), x.data(), xi);
  }

 private:
  template <class S>
  void eval(const S* u, std::vector<S>& X, std::vector<S>& Xi) const {
    base.position(u, X.data());
    base.normal(u, Xi.data());
    if (std::abs(value_of(Xi[n() + 1])) < 1e-12)
      throw DegeneracyError("tau undefined where xi_1 vanishes");
  }
};

using TauChart = ClosedFormChart<TauImpl>;
std::shared_ptr<TauChart> tau_chart(const HilfParams& p, double half_width = 2.0);

/// Torus of revolution with inward tube normal; |v| < pi/3.
struct TorusImpl {
  double R = 2.0, rt = 1.0;
  static constexpr bool has_normal = true;
  int n() const { return 2; }
  template <class S>
  void position(const S* u, S* x) const {
    using std::cos;
    using std::sin;
    const S w = R + rt * cos(u[1]);
    x[0] = w * cos(u[0]);
    x[1] = w * sin(u[0]);
    x[2] = rt * sin(u[1]);
  }
  template <class S>
  void normal(const S* u, S* xi) const {
    using std::cos;
    using std::sin;
    xi[0] = -(cos(u[1]) * cos(u[0]));
    xi[1] = -(cos(u[1]) * sin(u[0]));
    xi[2] = -sin(u[1]);
  }
};

using TorusChart = ClosedFormChart<TorusImpl>;
std::shared_ptr<TorusChart> torus_chart(double R, double r_tube);

/// Round sphere of radius R in latitude/longitude coordinates, inward normal.
struct SphereImpl {
  double R = 1.0;
  static constexpr bool has_normal = true;
  int n() const { return 2; }
  template <class S>
  void position(const S* u, S* x) const {
    using std::cos;
    using std::sin;
    x[0] = R * cos(u[0]) * cos(u[1]);
    x[1] = R * cos(u[0]) * sin(u[1]);
    x[2] = R * sin(u[0]);
  }
  template <class S>
  void normal(const S* u, S* xi) const {
    using std::cos;
    using std::sin;
    xi[0] = -(cos(u[0]) * cos(u[1]));
    xi[1] = -(cos(u[0]) * sin(u[1]));
    xi[2] = -sin(u[0]);
  }
};

using SphereChart = ClosedFormChart<SphereImpl>;
std::shared_ptr<SphereChart> sphere_chart(double R);

/// Graph x = (u, f(u)) with f = sum a_i u_i^2 / 2 + sum c_i u_i^3 / 6 + d u_1 u_2.
/// Normal from the generalized cross product.
struct GraphImpl {
  std::vector<double> a, c;
  double d = 0.0;
  static constexpr bool has_normal = false;
  int n() const { return static_cast<int>(a.size()); }
  template <class S>
  void position(const S* u, S* x) const {
    S f = 0.0;
    for (int i = 0; i < n(); ++i) {
      x[i] = u[i];
      f += 0.5 * a[i] * u[i] * u[i] + c[i] * u[i] * u[i] * u[i] / 6.0;
    }
    if (n() >= 2) f += d * u[0] * u[1];
    x[n()] = f;
  }
  template <class S>
  void normal(const S*, S*) const {}
};

using GraphChart = ClosedFormChart<GraphImpl>;
std::shared_ptr<GraphChart> graph_chart(std::vector<double> a, std::vector<double> c, double d,
                                        double half_width = 1.0);

/// Rotation of the parameter plane (u_1, u_2) by angle theta, composed with base.
std::shared_ptr<ReparametrizedChart> rotated_chart(std::shared_ptr<const Chart> base,
                                                   double theta);

struct CatalogEntry {
  std::string name;
  std::string description;
};

std::vector<CatalogEntry> catalog();

}  // namespace laguerre
