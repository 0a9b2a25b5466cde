#pragma once

// JSON and CSV encodings. Complex scalars are [re, im]; matrices are
// row-major nested arrays; exact rationals are "p/q" strings.

#include <string>
#include <vector>

#include <json.hpp>

#include "bsf/blockset.hpp"
#include "bsf/exact_systems.hpp"
#include "bsf/lower_bound.hpp"
#include "bsf/qqm.hpp"

namespace bsf::io {

using Json = nlohmann::ordered_json;

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

Json to_json(const Complex& z);
Json to_json(const StateVector& v);
Json to_json(const Matrix& m);

/// `where` names the field in error messages.
Complex complex_from_json(const Json& j, const std::string& where);
StateVector vector_from_json(const Json& j, const std::string& where);
Matrix matrix_from_json(const Json& j, const std::string& where);

Json algorithm_to_json(const AlgorithmSpec& alg);
AlgorithmSpec algorithm_from_json(const Json& j);
AlgorithmSpec load_algorithm_spec(const std::string& path);

inline constexpr double kSparseDropThreshold = 1e-12;

/// With `sparse`, entries of norm below kSparseDropThreshold are omitted and
/// the header records the threshold.
Json blockset_to_json(const BlockSet& bs, bool sparse = false);
BlockSet blockset_from_json(const Json& j);

Json system_to_json(const ConstraintSystem& sys);
ConstraintSystem system_from_json(const Json& j);

/// {"flavor", "weights": {key: "p/q"}}; zero weights omitted.
Json solution_to_json(const ConstraintSystem& sys,
                      const std::vector<Rational>& weights);
/// Values may be "p/q" strings or JSON numbers (converted exactly).
std::vector<Rational> solution_from_json(const ConstraintSystem& sys,
                                         const Json& j);
/// K x K matrix W of a full-system solution; accepts a weight map or a
/// "W" matrix of reals.
Eigen::MatrixXd general_solution_from_json(const ConstraintSystem& sys,
                                           const Json& j);

std::vector<InputWord> words_from_json(const Json& j, const std::string& where);
Json words_to_json(const std::vector<InputWord>& words);

/// {"parts": [["000"], ["001", ...]]}.
std::vector<std::vector<InputWord>> parts_from_json(const Json& j);

/// {"n": 3, "terms": [{"k": [1, 2], "w": "1/4"}, ...]}.
XorFormulaFamily family_from_json(const Json& j);
Json family_to_json(const XorFormulaFamily& family);

/// Real parts as CSV; throws if any imaginary part exceeds tol.
std::string gram_csv(const GramMatrix& g, double tol = Tolerance::kStructural);
Json gram_to_json(const GramMatrix& g);

}  // namespace bsf::io
