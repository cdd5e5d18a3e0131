#pragma once
#include <map>
#include <utility>
#include <vector>

#include "laguerre/pseudo_euclidean.hpp"

namespace laguerre {

enum class FdScheme { Central2, Central4 };

/// Central-difference weights for d/du, indexed by integer offset.
inline std::vector<std::pair<int, double>> first_weights(FdScheme s) {
  if (s == FdScheme::Central2) return {{-1, -0.5}, {1, 0.5}};
  return {{-2, 1.0 / 12}, {-1, -8.0 / 12}, {1, 8.0 / 12}, {2, -1.0 / 12}};
}

inline std::vector<std::pair<int, double>> second_weights(FdScheme s) {
  if (s == FdScheme::Central2) return {{-1, 1.0}, {0, -2.0}, {1, 1.0}};
  return {{-2, -1.0 / 12}, {-1, 16.0 / 12}, {0, -30.0 / 12}, {1, 16.0 / 12}, {2, -1.0 / 12}};
}

inline int stencil_reach(FdScheme s) { return s == FdScheme::Central2 ? 1 : 2; }

/// Samples of a pointwise quantity on the offsets needed for first and
/// second partials at a center; mixed partials use the tensor product of
/// the first-derivative weights.
template <class T>
class Patch {
 public:
  template <class F>
  Patch(const Vec& u, double h, FdScheme scheme, F&& eval, bool second = true)
      : u_(u), h_(h), scheme_(scheme), n_(static_cast<int>(u.size())) {
    const std::vector<int> zero(n_, 0);
    sample(zero, eval);
    for (int a = 0; a < n_; ++a) {
      for (auto [i, w] : first_weights(scheme_)) sample(axis(a, i), eval);
      if (!second) continue;
      for (auto [i, w] : second_weights(scheme_)) sample(axis(a, i), eval);
      for (int b = a + 1; b < n_; ++b)
        for (auto [i, wi] : first_weights(scheme_))
          for (auto [j, wj] : first_weights(scheme_)) {
            auto k = axis(a, i);
            k[b] = j;
            sample(k, eval);
          }
    }
  }

  const T& center() const { return values_.at(std::vector<int>(n_, 0)); }
  const T& at(const std::vector<int>& off) const { return values_.at(off); }
  int n() const { return n_; }
  double step() const { return h_; }
  const Vec& u() const { return u_; }
  template <class G>
  void for_each(G&& g) const {
    for (const auto& [k, v] : values_) g(k, v);
  }

  /// d_a of get(.) at the center.
  template <class G>
  auto d(int a, G&& get) const {
    using R = std::decay_t<decltype(get(center()))>;
    R acc = get(center()) * 0.0;
    for (auto [i, w] : first_weights(scheme_)) acc += (w / h_) * get(at(axis(a, i)));
    return acc;
  }

  /// d_a d_b of get(.) at the center.
  template <class G>
  auto dd(int a, int b, G&& get) const {
    using R = std::decay_t<decltype(get(center()))>;
    R acc = get(center()) * 0.0;
    if (a == b) {
      for (auto [i, w] : second_weights(scheme_)) acc += (w / (h_ * h_)) * get(at(axis(a, i)));
      return acc;
    }
    for (auto [i, wi] : first_weights(scheme_))
      for (auto [j, wj] : first_weights(scheme_)) {
        auto k = axis(a, i);
        k[b] = j;
        acc += (wi * wj / (h_ * h_)) * get(at(k));
      }
    return acc;
  }

 private:
  std::vector<int> axis(int a, int i) const {
    std::vector<int> k(n_, 0);
    k[a] = i;
    return k;
  }

  template <class F>
  void sample(const std::vector<int>& off, F& eval) {
    if (values_.count(off)) return;
    Vec p = u_;
    for (int c = 0; c < n_; ++c) p[c] += h_ * off[c];
    values_.emplace(off, eval(p));
  }

  Vec u_;
  double h_;
  FdScheme scheme_;
  int n_;
  std::map<std::vector<int>, T> values_;
};

}  // namespace laguerre
