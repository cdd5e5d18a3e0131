#pragma once
#include <Eigen/Dense>
#include <vector>

#include "laguerre/errors.hpp"

namespace laguerre {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Real vector space with a diagonal +-1 bilinear form.
/// Negative axes are 1-based, as in the usual coordinate labelling.
class SignatureSpace {
 public:
  SignatureSpace(int dimension, std::vector<int> negative_axes);

  /// R^{n+4}_2: axes 1 and n+4 negative.
  static SignatureSpace laguerre(int n);
  /// R^{n+2}_1: axis n+2 negative.
  static SignatureSpace minkowski(int n);

  int dimension() const { return dim_; }
  const std::vector<int>& negative_axes() const { return negative_; }
  const Vec& signs() const { return eps_; }
  Mat gram() const { return eps_.asDiagonal(); }

  bool operator==(const SignatureSpace& o) const {
    return dim_ == o.dim_ && negative_ == o.negative_;
  }

 private:
  int dim_;
  std::vector<int> negative_;
  Vec eps_;
};

struct SpaceVector {
  SpaceVector(SignatureSpace s, Vec c);
  SignatureSpace space;
  Vec coords;
};

double inner_product(const SpaceVector& u, const SpaceVector& v);

/// Raw form over a space, for hot loops that skip the wrapper.
double inner_product(const SignatureSpace& s, const Vec& u, const Vec& v);

/// Form of R^{n+4}_2 where the length of u fixes n.
double lag_ip(const Vec& u, const Vec& v);

bool is_lightlike(const SpaceVector& v, double tol);

/// T^T G T = G and P T = P, entrywise within tol.
bool is_laguerre_transform(const Mat& T, double tol);

/// Maximum entry of |T^T G T - G| and |P T - P|.
double laguerre_transform_defect(const Mat& T);

/// Row-vector action v T.
SpaceVector apply_transform(const Mat& T, const SpaceVector& v);

/// P = (1, -1, 0, ..., 0) in R^{n+4}_2.
SpaceVector vector_P(int n);
/// nu = (1, 0, ..., 0, 1) in R^{n+2}_1.
SpaceVector vector_nu(int n);

}  // namespace laguerre
