#include "varfrac/problem_file.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "varfrac/errors.hpp"

namespace varfrac {

namespace {

using Json = nlohmann::ordered_json;

const std::set<std::string> kKnownKeys{"name",         "alpha",   "n",        "term_orders",
                                       "rhs",          "deformed_args", "initial_values",
                                       "exact",        "M",       "output"};

const Json& require(const Json& doc, const std::string& key) {
  const auto it = doc.find(key);
  if (it == doc.end()) throw SchemaError(key, "required key is missing");
  return *it;
}

std::string as_string(const Json& v, const std::string& key) {
  if (!v.is_string()) throw SchemaError(key, "expected a string");
  return v.get<std::string>();
}

double as_number(const Json& v, const std::string& key) {
  if (!v.is_number()) throw SchemaError(key, "expected a number");
  return v.get<double>();
}

int as_int(const Json& v, const std::string& key) {
  if (!v.is_number_integer()) throw SchemaError(key, "expected an integer");
  return v.get<int>();
}

std::vector<int> parse_degrees(const Json& v) {
  std::vector<int> out;
  if (v.is_array()) {
    for (const auto& e : v) out.push_back(as_int(e, "M"));
  } else {
    out.push_back(as_int(v, "M"));
  }
  if (out.empty()) throw SchemaError("M", "at least one degree is required");
  for (int m : out) {
    if (m < 0 || m > kMaxDegree) {
      throw SchemaError("M", "degree " + std::to_string(m) + " outside [0, " +
                                 std::to_string(kMaxDegree) + "]");
    }
  }
  return out;
}

OutputSpec parse_output(const Json& v) {
  if (!v.is_object()) throw SchemaError("output", "expected an object");
  OutputSpec out;
  for (const auto& [key, value] : v.items()) {
    if (key == "points") {
      if (!value.is_array()) throw SchemaError("output.points", "expected an array");
      for (const auto& p : value) {
        const double t = as_number(p, "output.points");
        if (t < 0.0 || t > 1.0) throw SchemaError("output.points", "points must lie in [0, 1]");
        out.points.push_back(t);
      }
    } else if (key == "grid") {
      const int g = as_int(value, "output.grid");
      if (g < 0) throw SchemaError("output.grid", "grid size must be non-negative");
      out.grid = g;
    } else if (key == "format") {
      const auto f = as_string(value, "output.format");
      if (f == "csv") {
        out.format = OutputFormat::Csv;
      } else if (f == "json") {
        out.format = OutputFormat::Json;
      } else {
        throw SchemaError("output.format", "expected 'csv' or 'json'");
      }
    } else {
      throw SchemaError("output." + key, "unknown key");
    }
  }
  return out;
}

expr::Expr compile_expr(const std::string& source, std::vector<std::string> vars,
                        const std::string& key) {
  try {
    return expr::parse(source, std::move(vars));
  } catch (const ParseError& e) {
    throw SchemaError(key, e.what());
  }
}

// Wraps a compiled expression; domain errors during sampling surface as schema errors.
std::function<double(double)> scalar_fn(expr::Expr e) {
  return [e = std::move(e)](double t) { return e(t); };
}

}  // namespace

ProblemFile parse_problem_file(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError("<document>", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("<document>", "expected a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (!kKnownKeys.contains(key)) throw SchemaError(key, "unknown key");
  }

  ProblemFile file;
  file.name = as_string(require(doc, "name"), "name");
  file.alpha = as_string(require(doc, "alpha"), "alpha");
  file.n = as_int(require(doc, "n"), "n");
  if (file.n < 1) throw SchemaError("n", "must be a positive integer");
  file.rhs = as_string(require(doc, "rhs"), "rhs");

  if (const auto it = doc.find("term_orders"); it != doc.end()) {
    if (!it->is_array()) throw SchemaError("term_orders", "expected an array of expressions");
    for (const auto& e : *it) file.term_orders.push_back(as_string(e, "term_orders"));
  }
  if (const auto it = doc.find("deformed_args"); it != doc.end()) {
    if (!it->is_object()) throw SchemaError("deformed_args", "expected an object of name: expression");
    for (const auto& [name, value] : it->items()) {
      file.deformed_args.emplace_back(name, as_string(value, "deformed_args." + name));
    }
  }
  const auto& init = require(doc, "initial_values");
  if (!init.is_array()) throw SchemaError("initial_values", "expected an array of numbers");
  for (const auto& v : init) file.initial_values.push_back(as_number(v, "initial_values"));
  if (static_cast<int>(file.initial_values.size()) != file.n) {
    throw SchemaError("initial_values", "expected n = " + std::to_string(file.n) +
                                            " values, got " +
                                            std::to_string(file.initial_values.size()));
  }
  if (const auto it = doc.find("exact"); it != doc.end()) file.exact = as_string(*it, "exact");
  if (const auto it = doc.find("M"); it != doc.end()) {
    file.degrees = parse_degrees(*it);
  } else {
    file.degrees = {2};
  }
  if (const auto it = doc.find("output"); it != doc.end()) file.output = parse_output(*it);

  // Expressions are compiled here too so that syntax errors are schema errors.
  compile(file);
  return file;
}

ProblemFile load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open problem file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("failed reading '" + path + "'");
  return parse_problem_file(buf.str());
}

std::string to_json_text(const ProblemFile& file) {
  Json doc;
  doc["name"] = file.name;
  doc["alpha"] = file.alpha;
  doc["n"] = file.n;
  doc["term_orders"] = file.term_orders;
  doc["rhs"] = file.rhs;
  Json deformed = Json::object();
  for (const auto& [name, map] : file.deformed_args) deformed[name] = map;
  doc["deformed_args"] = deformed;
  doc["initial_values"] = file.initial_values;
  if (file.exact) doc["exact"] = *file.exact;
  doc["M"] = file.degrees;
  Json output = Json::object();
  if (!file.output.points.empty()) output["points"] = file.output.points;
  if (file.output.grid) output["grid"] = *file.output.grid;
  output["format"] = file.output.format == OutputFormat::Json ? "json" : "csv";
  doc["output"] = output;
  return doc.dump(2);
}

CompiledProblem compile(const ProblemFile& file) {
  const auto alpha_expr = compile_expr(file.alpha, {"t"}, "alpha");
  std::optional<OrderFunction> alpha;
  try {
    alpha.emplace(OrderFunction::infer(scalar_fn(alpha_expr), "alpha"));
  } catch (const Error& e) {
    throw SchemaError("alpha", e.what());
  }
  if (alpha->max_sampled() > 0.0 && alpha->n_bound() != file.n) {
    throw SchemaError("n", "alpha requires n = " + std::to_string(alpha->n_bound()) + ", got " +
                               std::to_string(file.n));
  }

  std::vector<OrderFunction> term_orders;
  for (std::size_t j = 0; j < file.term_orders.size(); ++j) {
    const std::string key = "term_orders";
    const auto e = compile_expr(file.term_orders[j], {"t"}, key);
    try {
      term_orders.push_back(OrderFunction(scalar_fn(e), file.n, "d" + std::to_string(j + 1)));
    } catch (const Error& err) {
      throw SchemaError(key, err.what());
    }
  }

  std::vector<std::string> rhs_vars{"t", "y"};
  for (std::size_t j = 0; j < file.term_orders.size(); ++j) {
    rhs_vars.push_back("d" + std::to_string(j + 1));
  }
  std::vector<DeformedArg> deformed;
  for (const auto& [name, source] : file.deformed_args) {
    const std::string key = "deformed_args." + name;
    if (std::find(rhs_vars.begin(), rhs_vars.end(), name) != rhs_vars.end() || name.empty() ||
        !(name[0] >= 'a' && name[0] <= 'z') ||
        !std::all_of(name.begin(), name.end(), [](char c) {
          return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
        })) {
      throw SchemaError(key, "invalid or clashing name");
    }
    rhs_vars.push_back(name);
    deformed.push_back({name, scalar_fn(compile_expr(source, {"t"}, key))});
  }

  auto rhs_expr = compile_expr(file.rhs, rhs_vars, "rhs");
  const std::size_t k = file.term_orders.size();
  RhsFn rhs = [rhs_expr, k](const RhsArgs& args) {
    // Slot layout: t, y, d1..dk, deformed values.
    std::array<double, 32> stack{};
    std::vector<double> heap;
    const std::size_t count = 2 + args.derivatives.size() + args.deformed.size();
    double* slots = stack.data();
    if (count > stack.size()) {
      heap.resize(count);
      slots = heap.data();
    }
    slots[0] = args.t;
    slots[1] = args.y;
    std::copy(args.derivatives.begin(), args.derivatives.end(), slots + 2);
    std::copy(args.deformed.begin(), args.deformed.end(), slots + 2 + k);
    return rhs_expr(std::span<const double>(slots, count));
  };

  CompiledProblem out;
  try {
    out.problem = std::make_shared<const FdeProblem>(std::move(*alpha), std::move(term_orders),
                                                     std::move(rhs), file.initial_values,
                                                     std::move(deformed));
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    throw SchemaError("<problem>", e.what());
  }
  if (file.exact) out.exact = compile_expr(*file.exact, {"t"}, "exact");
  return out;
}

}  // namespace varfrac
