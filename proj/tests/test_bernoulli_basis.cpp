#include <cmath>

#include "test_support.hpp"
#include "varfrac/bernoulli_basis.hpp"
#include "varfrac/collocation_solver.hpp"
#include "varfrac/errors.hpp"
#include "varfrac/quadrature.hpp"

using namespace varfrac;
using varfrac::test::uniform;

namespace {

// Dense fixed-step Simpson rule; deliberately unrelated to the adaptive
// Gauss-Kronrod code under test.
template <class F>
double simpson(F&& f, double a, double b, int panels = 20000) {
  const double h = (b - a) / panels;
  double acc = f(a) + f(b);
  for (int i = 1; i < panels; ++i) acc += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

}  // namespace

TEST_CASE("eval_poly against the listed low-degree polynomials") {
  const BasisSpec spec(3);
  CHECK(eval_poly(spec, 1, 0.5) == doctest::Approx(0.0));
  CHECK(eval_poly(spec, 2, 0.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(std::abs(eval_poly(spec, 3, 1.0)) <= 1e-15);
  for (double t : {0.0, 0.13, 0.5, 0.77, 1.0}) {
    CHECK(eval_poly(spec, 0, t) == 1.0);
    CHECK(eval_poly(spec, 1, t) == doctest::Approx(t - 0.5));
    CHECK(eval_poly(spec, 2, t) == doctest::Approx(t * t - t + 1.0 / 6.0));
    CHECK(eval_poly(spec, 3, t) == doctest::Approx(t * t * t - 1.5 * t * t + 0.5 * t));
  }
  CHECK_THROWS_AS(eval_poly(spec, 4, 0.5), DomainError);
  CHECK_THROWS_AS(eval_poly(spec, -1, 0.5), DomainError);
}

TEST_CASE("basis_vector") {
  const Vector b1 = basis_vector(BasisSpec(1), 0.0);
  CHECK(b1(0) == 1.0);
  CHECK(b1(1) == -0.5);
  const Vector b2 = basis_vector(BasisSpec(2), 0.5);
  CHECK(b2(0) == 1.0);
  CHECK(std::abs(b2(1)) <= 1e-16);
  CHECK(b2(2) == doctest::Approx(-1.0 / 12.0).epsilon(1e-15));
  const BasisSpec big(12);
  for (int i = 0; i < 10; ++i) CHECK(basis_vector(big, uniform(0, 1))(0) == 1.0);
}

TEST_CASE("degree limits") {
  CHECK_THROWS_AS(BasisSpec{-1}, DomainError);
  CHECK_THROWS_AS(BasisSpec{kMaxDegree + 1}, DomainError);
  CHECK_NOTHROW(BasisSpec{kMaxDegree});
}

TEST_CASE("change of basis matrix") {
  const BasisSpec spec(4);
  const Matrix& q = spec.q();
  CHECK(q(1, 0) == -0.5);
  CHECK(q(2, 0) == doctest::Approx(1.0 / 6.0));
  CHECK(q(2, 1) == -1.0);
  CHECK(q(3, 0) == 0.0);
  CHECK(q(3, 1) == 0.5);
  CHECK(q(3, 2) == -1.5);
  for (int m = 0; m <= 4; ++m) CHECK(q(m, m) == 1.0);

  for (int degree = 0; degree <= 12; ++degree) {
    const BasisSpec s(degree);
    const Matrix id = s.q() * s.q_inverse();
    CHECK((id - Matrix::Identity(degree + 1, degree + 1)).cwiseAbs().maxCoeff() <= 1e-10);
    // Independent closed form: t^m = 1/(m+1) sum_k C(m+1, k) beta_k(t).
    for (int m = 0; m <= degree; ++m) {
      for (int k = 0; k <= m; ++k) {
        const double want = static_cast<double>(binomial(m + 1, k)) / (m + 1);
        CHECK(s.q_inverse()(m, k) == doctest::Approx(want).epsilon(1e-14));
      }
      for (int k = m + 1; k <= degree; ++k) CHECK(s.q_inverse()(m, k) == 0.0);
    }
  }
}

TEST_CASE("Bernoulli polynomial identities") {
  const BasisSpec spec(12);
  for (int i = 0; i < 50; ++i) {
    const double t = uniform(0, 1);
    for (int m = 0; m <= 12; ++m) {
      const double sign = m % 2 == 0 ? 1.0 : -1.0;
      CHECK(std::abs(eval_poly(spec, m, 1.0 - t) - sign * eval_poly(spec, m, t)) <= 1e-12);
    }
  }
  for (int i = 0; i < 20; ++i) {
    const double t = uniform(0.05, 0.95);
    const double h = 1e-6;
    for (int m = 1; m <= 8; ++m) {
      const double fd = (eval_poly(spec, m, t + h) - eval_poly(spec, m, t - h)) / (2 * h);
      CHECK(std::abs(fd - m * eval_poly(spec, m - 1, t)) <= 1e-6);
    }
  }
  for (int m = 1; m <= 12; ++m) {
    const double mean = integrate([&](double t) { return eval_poly(spec, m, t); }, 0, 1).value;
    CHECK(std::abs(mean) <= 1e-12);
  }
}

TEST_CASE("Gram matrix") {
  const BasisSpec spec(8);
  const Matrix& d = gram_matrix(spec);
  CHECK(d(1, 1) == doctest::Approx(1.0 / 12.0).epsilon(1e-15));
  CHECK(d(0, 0) == 1.0);
  CHECK(d(1, 2) == 0.0);
  CHECK((d - d.transpose()).cwiseAbs().maxCoeff() == 0.0);
  for (int j = 1; j <= 8; ++j) {
    CHECK(d(0, j) == 0.0);
    CHECK(d(j, 0) == 0.0);
  }
  for (int i = 1; i <= 8; ++i) {
    for (int j = 1; j <= 8; ++j) {
      const double direct =
          integrate([&](double t) { return eval_poly(spec, i, t) * eval_poly(spec, j, t); }, 0, 1)
              .value;
      CHECK(std::abs(d(i, j) - direct) <= 1e-12);
    }
  }
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(d);
  CHECK(eig.eigenvalues().minCoeff() > 0.0);
}

TEST_CASE("projection") {
  const BasisSpec spec(4);
  const Vector a2 = project(spec, [&](double t) { return eval_poly(spec, 2, t); });
  for (int m = 0; m <= 4; ++m) CHECK(std::abs(a2(m) - (m == 2 ? 1.0 : 0.0)) <= 1e-12);

  const Vector at = project(spec, [](double t) { return t; });
  CHECK(at(0) == doctest::Approx(0.5));
  CHECK(at(1) == doctest::Approx(1.0));
  for (int m = 2; m <= 4; ++m) CHECK(std::abs(at(m)) <= 1e-12);
}

TEST_CASE("projection reproduces polynomials up to degree M") {
  for (int degree = 1; degree <= 8; ++degree) {
    const BasisSpec spec(degree);
    std::vector<double> c(static_cast<std::size_t>(degree) + 1);
    for (auto& v : c) v = uniform(-2, 2);
    auto poly = [&](double t) {
      double acc = 0.0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
      return acc;
    };
    const Vector a = project(spec, poly);
    double worst = 0.0;
    for (int i = 0; i <= 200; ++i) {
      const double t = i / 200.0;
      worst = std::max(worst, std::abs(a.dot(basis_vector(spec, t)) - poly(t)));
    }
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("projection error of t^(7/2) respects the M = 2 bound") {
  const BasisSpec spec(2);
  auto f = [](double t) { return std::pow(t, 3.5); };
  const Vector a = project(spec, f);
  const double residual = std::sqrt(simpson(
      [&](double t) {
        const double d = f(t) - a.dot(basis_vector(spec, t));
        return d * d;
      },
      0.0, 1.0));
  // kappa = max |f'''| on (0, 1) = 3.5 * 2.5 * 1.5.
  const double bound = theorem1_bound(2, 3.5 * 2.5 * 1.5);
  CHECK(residual > 0.0);
  CHECK(residual <= bound);
}
