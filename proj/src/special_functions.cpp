#include "varfrac/special_functions.hpp"

#include <cmath>
#include <string>

#include "varfrac/errors.hpp"

namespace varfrac {

double gamma(double x) {
  if (!(x > 0.0)) {
    throw DomainError("gamma: argument must be positive, got " + std::to_string(x));
  }
  const double value = std::tgamma(x);
  if (!std::isfinite(value)) {
    throw OverflowError("gamma: result overflows for x = " + std::to_string(x));
  }
  return value;
}

double factorial(unsigned n) {
  double result = 1.0;
  for (unsigned k = 2; k <= n; ++k) result *= static_cast<double>(k);
  return result;
}

BigInt binomial(int m, int i) {
  if (m < 0 || i < 0 || i > m) {
    throw DomainError("binomial: index out of range (" + std::to_string(m) + ", " +
                      std::to_string(i) + ")");
  }
  if (i > m - i) i = m - i;
  BigInt result = 1;
  // Each partial product is itself a binomial coefficient, so the division is exact.
  for (int k = 1; k <= i; ++k) {
    result *= m - i + k;
    result /= k;
  }
  return result;
}

BernoulliNumbers::BernoulliNumbers(int max_index) {
  if (max_index < 0) {
    throw DomainError("bernoulli_numbers: max index must be non-negative");
  }
  values_.reserve(static_cast<std::size_t>(max_index) + 1);
  values_.emplace_back(1);
  // sum_{j=0}^{m} C(m+1, j) b_j = 0  =>  b_m = -(1/(m+1)) sum_{j<m} C(m+1, j) b_j
  for (int m = 1; m <= max_index; ++m) {
    Rational acc = 0;
    for (int j = 0; j < m; ++j) {
      if (j > 1 && j % 2 == 1) continue;
      acc += Rational(binomial(m + 1, j)) * values_[static_cast<std::size_t>(j)];
    }
    values_.push_back(-acc / Rational(m + 1));
  }
}

double BernoulliNumbers::as_double(int k) const {
  return static_cast<double>((*this)[k]);
}

BernoulliNumbers bernoulli_numbers(int max_index) { return BernoulliNumbers(max_index); }

}  // namespace varfrac
