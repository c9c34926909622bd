#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace varfrac {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Euler gamma for x > 0. Throws DomainError for x <= 0 and OverflowError
/// once the result leaves the double range (x > ~171.6).
double gamma(double x);

/// n! as a double; exact for n <= 22.
double factorial(unsigned n);

/// Exact binomial coefficient C(m, i). Throws DomainError unless 0 <= i <= m.
BigInt binomial(int m, int i);

/// Exact Bernoulli numbers b_0..b_M with b_1 = -1/2.
class BernoulliNumbers {
 public:
  explicit BernoulliNumbers(int max_index);

  int max_index() const noexcept { return static_cast<int>(values_.size()) - 1; }
  const Rational& operator[](int k) const { return values_.at(static_cast<std::size_t>(k)); }
  const std::vector<Rational>& values() const noexcept { return values_; }
  double as_double(int k) const;

 private:
  std::vector<Rational> values_;
};

/// Convenience wrapper matching the free-function style of the other modules.
BernoulliNumbers bernoulli_numbers(int max_index);

}  // namespace varfrac
