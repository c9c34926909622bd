#pragma once

#include <functional>
#include <memory>

#include <Eigen/Dense>

#include "varfrac/special_functions.hpp"

namespace varfrac {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr int kMaxDegree = 30;

/// Bernoulli polynomial basis beta_0..beta_M on [0, 1].
///
/// `q()` maps the Taylor basis to the Bernoulli basis, B(t) = Q T(t) with
/// T(t) = [1, t, ..., t^M]; row m holds C(m, i) b_{m-i}. Both Q and its
/// inverse are unit lower triangular and are formed in exact arithmetic
/// before rounding to double.
class BasisSpec {
 public:
  explicit BasisSpec(int degree);

  int degree() const noexcept { return degree_; }
  int size() const noexcept { return degree_ + 1; }
  /// Bernoulli numbers up to 2M; the Gram matrix needs the upper half.
  const BernoulliNumbers& bernoulli() const noexcept { return bernoulli_; }
  const Matrix& q() const noexcept { return q_; }
  const Matrix& q_inverse() const noexcept { return q_inverse_; }
  const Matrix& gram() const noexcept { return gram_; }

 private:
  int degree_;
  BernoulliNumbers bernoulli_;
  Matrix q_;
  Matrix q_inverse_;
  Matrix gram_;
};

using BasisPtr = std::shared_ptr<const BasisSpec>;

BasisPtr make_basis(int degree);

/// beta_m(t) by Horner's rule on row m of Q.
double eval_poly(const BasisSpec& spec, int m, double t);

/// B(t) = [beta_0(t), ..., beta_M(t)].
Vector basis_vector(const BasisSpec& spec, double t);

/// T(t) = [1, t, ..., t^M].
Vector taylor_vector(int degree, double t);

/// D = <B, B>. Entries with i, j >= 1 follow the closed form
/// (-1)^(i-1) i! j! / (i+j)! b_(i+j); row and column 0 are e_0 because
/// every beta_j with j >= 1 has zero mean on [0, 1].
const Matrix& gram_matrix(const BasisSpec& spec);

/// Coefficients A with A^T B(t) the L2 projection of f onto the basis.
/// Inner products use adaptive Gauss-Kronrod with absolute tolerance 1e-12.
Vector project(const BasisSpec& spec, const std::function<double(double)>& f);

}  // namespace varfrac
