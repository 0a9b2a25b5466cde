#include "bsf/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "bsf/error.hpp"

namespace bsf::io {

namespace {

const Json& field(const Json& j, const std::string& key,
                  const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw validation_error("schema: missing field '" + where + key + "'");
  }
  return j.at(key);
}

int int_field(const Json& j, const std::string& key, const std::string& where) {
  const auto& v = field(j, key, where);
  if (!v.is_number_integer()) {
    throw validation_error("schema: field '" + where + key +
                           "' must be an integer");
  }
  return v.get<int>();
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) {
    throw validation_error("schema: '" + where + "' must be a number");
  }
  return j.get<double>();
}

Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number()) return Rational(j.get<double>());
  throw validation_error("schema: '" + where + "' must be \"p/q\" or a number");
}

std::string full_precision(double v) {
  std::ostringstream out;
  out << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
  return out.str();
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("file not found: " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw io_error("cannot parse " + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write " + path);
  out << text;
  if (!out) throw io_error("write failed: " + path);
}

Json to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const StateVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Complex complex_from_json(const Json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) {
    throw validation_error("schema: '" + where + "' must be [re, im]");
  }
  return {number(j[0], where + "[0]"), number(j[1], where + "[1]")};
}

StateVector vector_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) {
    throw validation_error("schema: '" + where + "' must be an array");
  }
  StateVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) =
        complex_from_json(j[i], where + "[" + std::to_string(i) + "]");
  }
  return v;
}

Matrix matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    throw validation_error("schema: '" + where +
                           "' must be a nonempty array of rows");
  }
  const auto rows = j.size();
  const auto cols = j[0].size();
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string row_where = where + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != cols) {
      throw validation_error("dimension error: '" + row_where + "' has " +
                             std::to_string(j[r].size()) +
                             " columns, expected " + std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          complex_from_json(j[r][c], row_where + "[" + std::to_string(c) + "]");
    }
  }
  return m;
}

Json algorithm_to_json(const AlgorithmSpec& alg) {
  Json us = Json::array();
  for (const auto& u : alg.unitaries()) us.push_back(to_json(u));
  return Json{{"t", alg.t()},
              {"n", alg.n()},
              {"m", alg.m()},
              {"initial", to_json(alg.initial())},
              {"unitaries", us}};
}

AlgorithmSpec algorithm_from_json(const Json& j) {
  const int t = int_field(j, "t", "");
  const int n = int_field(j, "n", "");
  const int m = int_field(j, "m", "");
  const auto initial = vector_from_json(field(j, "initial", ""), "initial");
  const auto& us = field(j, "unitaries", "");
  if (!us.is_array()) {
    throw validation_error("schema: 'unitaries' must be an array");
  }
  std::vector<Matrix> unitaries;
  for (std::size_t i = 0; i < us.size(); ++i) {
    unitaries.push_back(
        matrix_from_json(us[i], "unitaries[" + std::to_string(i) + "]"));
  }
  return AlgorithmSpec(t, n, m, initial, std::move(unitaries));
}

AlgorithmSpec load_algorithm_spec(const std::string& path) {
  return algorithm_from_json(read_json_file(path));
}

Json blockset_to_json(const BlockSet& bs, bool sparse) {
  Json entries = Json::array();
  for (std::size_t f = 0; f < bs.size(); ++f) {
    if (sparse && bs.at(f).norm() < kSparseDropThreshold) continue;
    entries.push_back(Json{{"k", bs.index_vector(f).entries()},
                           {"v", to_json(bs.at(f))}});
  }
  Json out{{"n", bs.n()}, {"t", bs.t()}, {"D", bs.dim()}};
  out["sparse"] = sparse;
  if (sparse) out["drop_threshold"] = kSparseDropThreshold;
  out["entries"] = std::move(entries);
  return out;
}

BlockSet blockset_from_json(const Json& j) {
  const int n = int_field(j, "n", "");
  const int t = int_field(j, "t", "");
  const int dim = int_field(j, "D", "");
  if (n < 0 || t < 0 || dim < 0) {
    throw validation_error("schema: n, t and D must be non-negative");
  }
  const bool sparse = j.value("sparse", false);
  const auto count = index_count(n, t, kDefaultTableCap);
  std::vector<StateVector> table(count, StateVector::Zero(dim));
  std::vector<bool> seen(count, false);
  const BlockSet shape(n, t, dim, table);
  const auto& entries = field(j, "entries", "");
  if (!entries.is_array()) {
    throw validation_error("schema: 'entries' must be an array");
  }
  for (std::size_t e = 0; e < entries.size(); ++e) {
    const std::string where = "entries[" + std::to_string(e) + "].";
    const auto& k = field(entries[e], "k", where);
    if (!k.is_array()) {
      throw validation_error("schema: '" + where + "k' must be an array");
    }
    const auto flat = shape.flat_index(IndexVector(k.get<std::vector<int>>()));
    if (seen[flat]) {
      throw validation_error("duplicate Block Set entry at " + where + "k");
    }
    seen[flat] = true;
    table[flat] = vector_from_json(field(entries[e], "v", where), where + "v");
    if (table[flat].size() != dim) {
      throw validation_error("dimension error: '" + where + "v' has length " +
                             std::to_string(table[flat].size()));
    }
  }
  if (!sparse && entries.size() != count) {
    throw validation_error("dense Block Set file has " +
                           std::to_string(entries.size()) +
                           " entries, expected " + std::to_string(count));
  }
  return BlockSet(n, t, dim, std::move(table));
}

Json words_to_json(const std::vector<InputWord>& words) {
  Json out = Json::array();
  for (const auto& w : words) out.push_back(w.str());
  return out;
}

std::vector<InputWord> words_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) {
    throw validation_error("schema: '" + where + "' must be an array of words");
  }
  std::vector<InputWord> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) {
      throw validation_error("schema: '" + where + "[" + std::to_string(i) +
                             "]' must be a bit string");
    }
    out.push_back(InputWord::parse(j[i].get<std::string>()));
  }
  return out;
}

Json system_to_json(const ConstraintSystem& sys) {
  Json vars = Json::array();
  for (std::size_t v = 0; v < sys.variable_count; ++v) {
    vars.push_back(sys.variable_key(v));
  }
  Json rows = Json::array();
  for (const auto& row : sys.rows) {
    Json coeffs = Json::array();
    for (const auto& [v, c] : row.coeffs) {
      coeffs.push_back(Json::array({v, format_rational(c)}));
    }
    rows.push_back(Json{{"coeffs", coeffs}, {"rhs", format_rational(row.rhs)}});
  }
  return Json{{"flavor", flavor_name(sys.flavor)},
              {"t", sys.t},
              {"n", sys.n},
              {"X", words_to_json(sys.x_set)},
              {"Y", words_to_json(sys.y_set)},
              {"variables", vars},
              {"rows", rows}};
}

ConstraintSystem system_from_json(const Json& j) {
  const auto& flavor = field(j, "flavor", "");
  if (!flavor.is_string()) {
    throw validation_error("schema: 'flavor' must be a string");
  }
  ConstraintSystem sys;
  sys.flavor = parse_flavor(flavor.get<std::string>());
  sys.t = int_field(j, "t", "");
  sys.n = int_field(j, "n", "");
  if (j.contains("X")) sys.x_set = words_from_json(j.at("X"), "X");
  if (j.contains("Y")) sys.y_set = words_from_json(j.at("Y"), "Y");
  const auto& vars = field(j, "variables", "");
  if (!vars.is_array()) {
    throw validation_error("schema: 'variables' must be an array");
  }
  sys.variable_count = vars.size();
  if (sys.flavor == SystemFlavor::Full) {
    const auto count = sys.index_count();
    if (vars.size() != count * count) {
      throw validation_error("full system must list K^2 variables");
    }
  } else {
    for (std::size_t v = 0; v < vars.size(); ++v) {
      if (!vars[v].is_string()) {
        throw validation_error("schema: 'variables[" + std::to_string(v) +
                               "]' must be a string");
      }
      sys.classes.push_back(parse_canonical_key(vars[v].get<std::string>()));
    }
  }
  const auto& rows = field(j, "rows", "");
  if (!rows.is_array()) throw validation_error("schema: 'rows' must be an array");
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::string where = "rows[" + std::to_string(r) + "].";
    SystemRow row;
    row.rhs = rational_from_json(field(rows[r], "rhs", where), where + "rhs");
    const auto& coeffs = field(rows[r], "coeffs", where);
    if (!coeffs.is_array()) {
      throw validation_error("schema: '" + where + "coeffs' must be an array");
    }
    for (std::size_t c = 0; c < coeffs.size(); ++c) {
      const std::string cw = where + "coeffs[" + std::to_string(c) + "]";
      if (!coeffs[c].is_array() || coeffs[c].size() != 2 ||
          !coeffs[c][0].is_number_unsigned()) {
        throw validation_error("schema: '" + cw + "' must be [index, \"p/q\"]");
      }
      const auto v = coeffs[c][0].get<std::size_t>();
      if (v >= sys.variable_count) {
        throw validation_error("schema: '" + cw + "' references variable " +
                               std::to_string(v) + " out of range");
      }
      row.coeffs.emplace_back(v, rational_from_json(coeffs[c][1], cw));
    }
    sys.rows.push_back(std::move(row));
  }
  return sys;
}

Json solution_to_json(const ConstraintSystem& sys,
                      const std::vector<Rational>& weights) {
  if (weights.size() != sys.variable_count) {
    throw validation_error("weight vector does not match the system");
  }
  Json map = Json::object();
  for (std::size_t v = 0; v < weights.size(); ++v) {
    if (sgn(weights[v]) != 0) {
      map[sys.variable_key(v)] = format_rational(weights[v]);
    }
  }
  return Json{{"flavor", flavor_name(sys.flavor)}, {"weights", map}};
}

std::vector<Rational> solution_from_json(const ConstraintSystem& sys,
                                         const Json& j) {
  // `solve --json` wraps the weight map in {"feasible", "solution"}.
  if (j.contains("solution")) return solution_from_json(sys, j.at("solution"));
  const auto& map = field(j, "weights", "");
  if (!map.is_object()) {
    throw validation_error("schema: 'weights' must be an object");
  }
  std::map<std::string, std::size_t> index;
  for (std::size_t v = 0; v < sys.variable_count; ++v) {
    index[sys.variable_key(v)] = v;
  }
  std::vector<Rational> out(sys.variable_count, Rational(0));
  for (const auto& [key, value] : map.items()) {
    const auto it = index.find(key);
    if (it == index.end()) {
      throw validation_error("index mismatch: variable '" + key +
                             "' is not in the system");
    }
    out[it->second] = rational_from_json(value, "weights." + key);
  }
  return out;
}

Eigen::MatrixXd general_solution_from_json(const ConstraintSystem& sys,
                                           const Json& j) {
  if (j.contains("solution")) {
    return general_solution_from_json(sys, j.at("solution"));
  }
  const auto count = static_cast<Eigen::Index>(sys.index_count());
  if (j.contains("W")) {
    const Matrix w = matrix_from_json(j.at("W"), "W");
    if (w.rows() != count || w.cols() != count) {
      throw validation_error("index mismatch: W must be " +
                             std::to_string(count) + "x" +
                             std::to_string(count));
    }
    return w.real();
  }
  const auto weights = solution_from_json(sys, j);
  Eigen::MatrixXd w(count, count);
  for (std::size_t v = 0; v < weights.size(); ++v) {
    w(static_cast<Eigen::Index>(v) / count,
      static_cast<Eigen::Index>(v) % count) = weights[v].get_d();
  }
  return w;
}

std::vector<std::vector<InputWord>> parts_from_json(const Json& j) {
  const auto& parts = field(j, "parts", "");
  if (!parts.is_array() || parts.empty()) {
    throw validation_error("schema: 'parts' must be a nonempty array");
  }
  std::vector<std::vector<InputWord>> out;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    out.push_back(words_from_json(parts[p], "parts[" + std::to_string(p) + "]"));
  }
  return out;
}

XorFormulaFamily family_from_json(const Json& j) {
  XorFormulaFamily family;
  family.n = int_field(j, "n", "");
  const auto& terms = field(j, "terms", "");
  if (!terms.is_array()) {
    throw validation_error("schema: 'terms' must be an array");
  }
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string where = "terms[" + std::to_string(i) + "].";
    const auto& k = field(terms[i], "k", where);
    if (!k.is_array()) {
      throw validation_error("schema: '" + where + "k' must be an array");
    }
    family.terms.emplace_back(
        IndexVector(k.get<std::vector<int>>()),
        rational_from_json(field(terms[i], "w", where), where + "w"));
  }
  family.validate();
  return family;
}

Json family_to_json(const XorFormulaFamily& family) {
  Json terms = Json::array();
  for (const auto& [k, w] : family.terms) {
    terms.push_back(Json{{"k", k.entries()}, {"w", format_rational(w)}});
  }
  return Json{{"n", family.n}, {"terms", terms}};
}

std::string gram_csv(const GramMatrix& g, double tol) {
  if (max_imaginary(g) > tol) {
    throw validation_error("Gram matrix has imaginary parts above tolerance; "
                           "use JSON export");
  }
  std::ostringstream out;
  for (Eigen::Index r = 0; r < g.rows(); ++r) {
    for (Eigen::Index c = 0; c < g.cols(); ++c) {
      if (c) out << ',';
      out << full_precision(g(r, c).real());
    }
    out << '\n';
  }
  return out.str();
}

Json gram_to_json(const GramMatrix& g) { return to_json(g); }

}  // namespace bsf::io
