#pragma once

#include <optional>
#include <string>
#include <vector>

#include "varfrac/problem_file.hpp"

namespace varfrac {

/// Published absolute errors, one row per point and one column per degree.
struct ReferenceTable {
  std::string source;
  std::string method;
  std::vector<double> points;
  std::vector<int> degrees;
  std::vector<std::vector<double>> errors;
};

struct ReferenceCoefficients {
  int degree = 0;
  std::vector<double> values;
};

struct ReferenceL2 {
  int degree = 0;
  double value = 0.0;
};

struct BuiltinExample {
  std::string id;
  std::string description;
  ProblemFile file;
  std::vector<ReferenceTable> tables;
  std::optional<ReferenceCoefficients> coefficients;
  std::optional<ReferenceL2> l2;
};

/// The five worked problems: example1 .. example5.
const std::vector<BuiltinExample>& builtin_examples();

/// Looks up an example by id; nullptr when absent.
const BuiltinExample* find_example(const std::string& id);

}  // namespace varfrac
