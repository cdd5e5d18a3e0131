#include "laguerre/pseudo_euclidean.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace laguerre {

SignatureSpace::SignatureSpace(int dimension, std::vector<int> negative_axes)
    : dim_(dimension), negative_(std::move(negative_axes)) {
  if (dim_ <= 0) throw DimensionError("signature space dimension must be positive");
  std::sort(negative_.begin(), negative_.end());
  negative_.erase(std::unique(negative_.begin(), negative_.end()), negative_.end());
  eps_ = Vec::Ones(dim_);
  for (int a : negative_) {
    if (a < 1 || a > dim_)
      throw DimensionError("negative axis " + std::to_string(a) + " outside 1.." +
                           std::to_string(dim_));
    eps_[a - 1] = -1.0;
  }
}

SignatureSpace SignatureSpace::laguerre(int n) {
  if (n < 1) throw DimensionError("n must be at least 1");
  return SignatureSpace(n + 4, {1, n + 4});
}

SignatureSpace SignatureSpace::minkowski(int n) {
  if (n < 1) throw DimensionError("n must be at least 1");
  return SignatureSpace(n + 2, {n + 2});
}

SpaceVector::SpaceVector(SignatureSpace s, Vec c) : space(std::move(s)), coords(std::move(c)) {
  if (coords.size() != space.dimension())
    throw DimensionError("vector length " + std::to_string(coords.size()) +
                         " does not match space dimension " + std::to_string(space.dimension()));
}

double inner_product(const SignatureSpace& s, const Vec& u, const Vec& v) {
  if (u.size() != s.dimension() || v.size() != s.dimension())
    throw DimensionError("inner product arguments do not match the space");
  double acc = 0.0;
  for (int a = 0; a < s.dimension(); ++a) acc += s.signs()[a] * u[a] * v[a];
  return acc;
}

double inner_product(const SpaceVector& u, const SpaceVector& v) {
  if (!(u.space == v.space)) throw DimensionError("inner product across different spaces");
  return inner_product(u.space, u.coords, v.coords);
}

double lag_ip(const Vec& u, const Vec& v) {
  const auto d = u.size();
  if (d < 5 || v.size() != d) throw DimensionError("lag_ip needs equal lengths >= 5");
  double acc = -u[0] * v[0] - u[d - 1] * v[d - 1];
  for (Eigen::Index a = 1; a + 1 < d; ++a) acc += u[a] * v[a];
  return acc;
}

bool is_lightlike(const SpaceVector& v, double tol) {
  if (!(tol > 0)) throw InputError("lightlike tolerance must be positive");
  return std::abs(inner_product(v, v)) <= tol * (1.0 + v.coords.squaredNorm());
}

double laguerre_transform_defect(const Mat& T) {
  if (T.rows() != T.cols()) throw DimensionError("transform must be square");
  if (T.rows() < 5) throw DimensionError("transform must be at least 5x5");
  const int n = static_cast<int>(T.rows()) - 4;
  const SignatureSpace s = SignatureSpace::laguerre(n);
  const Mat G = s.gram();
  const Eigen::RowVectorXd P = vector_P(n).coords.transpose();
  const double form = (T.transpose() * G * T - G).cwiseAbs().maxCoeff();
  const double fix = (P * T - P).cwiseAbs().maxCoeff();
  return std::max(form, fix);
}

bool is_laguerre_transform(const Mat& T, double tol) {
  return laguerre_transform_defect(T) <= tol;
}

SpaceVector apply_transform(const Mat& T, const SpaceVector& v) {
  if (T.rows() != T.cols() || T.rows() != v.space.dimension())
    throw DimensionError("transform shape does not match vector");
  return SpaceVector(v.space, (v.coords.transpose() * T).transpose());
}

SpaceVector vector_P(int n) {
  Vec c = Vec::Zero(n + 4);
  c[0] = 1.0;
  c[1] = -1.0;
  return SpaceVector(SignatureSpace::laguerre(n), c);
}

SpaceVector vector_nu(int n) {
  Vec c = Vec::Zero(n + 2);
  c[0] = 1.0;
  c[n + 1] = 1.0;
  return SpaceVector(SignatureSpace::minkowski(n), c);
}

}  // namespace laguerre
