#include "varfrac/bernoulli_basis.hpp"

#include <string>
#include <vector>

#include "varfrac/errors.hpp"
#include "varfrac/quadrature.hpp"

namespace varfrac {

namespace {

using RationalMatrix = std::vector<std::vector<Rational>>;

RationalMatrix exact_q(int degree, const BernoulliNumbers& bern) {
  const auto n = static_cast<std::size_t>(degree) + 1;
  RationalMatrix q(n, std::vector<Rational>(n, Rational(0)));
  for (int m = 0; m <= degree; ++m) {
    for (int i = 0; i <= m; ++i) {
      q[m][i] = Rational(binomial(m, i)) * bern[m - i];
    }
  }
  return q;
}

// Forward substitution on a unit lower-triangular matrix, column by column.
RationalMatrix unit_lower_inverse(const RationalMatrix& l) {
  const std::size_t n = l.size();
  RationalMatrix inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t col = 0; col < n; ++col) {
    inv[col][col] = 1;
    for (std::size_t row = col + 1; row < n; ++row) {
      Rational acc = 0;
      for (std::size_t k = col; k < row; ++k) acc += l[row][k] * inv[k][col];
      inv[row][col] = -acc;
    }
  }
  return inv;
}

Matrix to_double(const RationalMatrix& r) {
  const auto n = static_cast<Eigen::Index>(r.size());
  Matrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = static_cast<double>(r[i][j]);
  }
  return out;
}

Matrix exact_gram(int degree, const BernoulliNumbers& bern) {
  const auto n = static_cast<Eigen::Index>(degree) + 1;
  Matrix d = Matrix::Zero(n, n);
  d(0, 0) = 1.0;
  for (int i = 1; i <= degree; ++i) {
    for (int j = 1; j <= degree; ++j) {
      // i! j! / (i+j)! = 1 / C(i+j, i)
      Rational entry = bern[i + j] / Rational(binomial(i + j, i));
      if ((i - 1) % 2 != 0) entry = -entry;
      d(i, j) = static_cast<double>(entry);
    }
  }
  return d;
}

}  // namespace

BasisSpec::BasisSpec(int degree) : degree_(degree), bernoulli_(std::max(0, 2 * degree)) {
  if (degree < 0 || degree > kMaxDegree) {
    throw DomainError("basis degree must lie in [0, " + std::to_string(kMaxDegree) + "], got " +
                      std::to_string(degree));
  }
  const auto q = exact_q(degree, bernoulli_);
  q_ = to_double(q);
  q_inverse_ = to_double(unit_lower_inverse(q));
  gram_ = exact_gram(degree, bernoulli_);
}

BasisPtr make_basis(int degree) { return std::make_shared<const BasisSpec>(degree); }

double eval_poly(const BasisSpec& spec, int m, double t) {
  if (m < 0 || m > spec.degree()) {
    throw DomainError("eval_poly: index " + std::to_string(m) + " outside [0, " +
                      std::to_string(spec.degree()) + "]");
  }
  const auto& q = spec.q();
  double acc = 0.0;
  for (int i = m; i >= 0; --i) acc = acc * t + q(m, i);
  return acc;
}

Vector basis_vector(const BasisSpec& spec, double t) {
  Vector b(spec.size());
  for (int m = 0; m <= spec.degree(); ++m) b(m) = eval_poly(spec, m, t);
  return b;
}

Vector taylor_vector(int degree, double t) {
  Vector v(degree + 1);
  double p = 1.0;
  for (int k = 0; k <= degree; ++k) {
    v(k) = p;
    p *= t;
  }
  return v;
}

const Matrix& gram_matrix(const BasisSpec& spec) { return spec.gram(); }

Vector project(const BasisSpec& spec, const std::function<double(double)>& f) {
  Vector rhs(spec.size());
  for (int m = 0; m <= spec.degree(); ++m) {
    rhs(m) = integrate([&](double t) { return f(t) * eval_poly(spec, m, t); }, 0.0, 1.0, 1e-12,
                       1e-13)
                 .value;
  }
  const Eigen::LDLT<Matrix> ldlt(spec.gram());
  if (ldlt.info() != Eigen::Success) {
    throw Error("project: Gram matrix factorization failed");
  }
  return ldlt.solve(rhs);
}

}  // namespace varfrac
