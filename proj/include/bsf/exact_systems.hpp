#pragma once

// Feasibility systems for exact algorithms: the full system E over Block Set
// inner products, the diagonal system E^ over canonical parity classes and
// its xor-reduced form E~. Also the generalized Deutsch-Jozsa family and the
// XOR-weighted separation problem.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bsf/blockset.hpp"
#include "bsf/rational.hpp"

namespace bsf {

/// Sorted odd-multiplicity nonzero entries of an index vector, padded with
/// leading zeros to the original length.
class CanonicalIndex {
 public:
  CanonicalIndex() = default;
  CanonicalIndex(std::vector<int> support, int length);

  /// Positions of odd multiplicity, ascending.
  const std::vector<int>& support() const { return support_; }
  int length() const { return length_; }

  /// The padded representative, e.g. (0,0,2).
  IndexVector lift() const;
  std::uint64_t parity_mask() const;
  /// Comma-separated padded form, e.g. "0,0,2".
  std::string key() const;

  auto operator<=>(const CanonicalIndex&) const = default;

 private:
  std::vector<int> support_;
  int length_ = 0;
};

CanonicalIndex canonicalize_index(const IndexVector& k);

/// Inverse of CanonicalIndex::key.
CanonicalIndex parse_canonical_key(const std::string& key);

enum class SystemFlavor { Full, Hat, Tilde };

/// "e", "ehat", "etilde".
std::string flavor_name(SystemFlavor flavor);
SystemFlavor parse_flavor(const std::string& name);

struct SystemRow {
  std::vector<std::pair<std::size_t, Rational>> coeffs;  // sparse, by index
  Rational rhs;
};

inline constexpr std::size_t kSystemVariableCap = 10'000;
/// Full-system pair variables are K^2.
inline constexpr std::size_t kPairVariableCap = 1'000'000;

struct ConstraintSystem {
  SystemFlavor flavor = SystemFlavor::Hat;
  int t = 0;
  int n = 0;
  std::vector<InputWord> x_set;
  std::vector<InputWord> y_set;
  /// Hat/Tilde: one canonical index per variable. Empty for Full, whose
  /// variable v is the pair (v / K, v % K) of flat index vectors.
  std::vector<CanonicalIndex> classes;
  std::size_t variable_count = 0;
  std::vector<SystemRow> rows;

  /// K = (n+1)^{t+1} (Full only).
  std::size_t index_count() const;
  std::string variable_key(std::size_t v) const;
};

/// Eqs. 20-22 over ordered pairs (k, h). Level-i prefix orthogonality rows
/// cover every ordered prefix pair with differing last entry, i = 0..t.
ConstraintSystem build_full_system(int t, int n,
                                   const std::vector<InputWord>& x_set,
                                   const std::vector<InputWord>& y_set);

/// One row per (x, y) in X x Y plus normalization, over canonical classes
/// of length t+1 (all supports of size <= t+1).
ConstraintSystem build_orthogonal_system(int t, int n,
                                         const std::vector<InputWord>& x_set,
                                         const std::vector<InputWord>& y_set);

/// Rows indexed by z = x xor y (deduplicated, ascending) plus normalization.
ConstraintSystem reduce_to_tilde(const ConstraintSystem& hat);

enum class SolveMode { Exact, Float };

struct SolveResult {
  bool feasible = false;
  SolveMode mode = SolveMode::Exact;
  /// Filled in exact mode.
  std::vector<Rational> exact;
  /// Always filled when feasible (converted in exact mode).
  std::vector<double> weights;
  /// Phase-1 objective at termination (sum of artificials).
  double infeasibility = 0.0;
};

/// Phase-1 simplex with Bland's rule for w >= 0 satisfying every row.
SolveResult solve_nonnegative(const ConstraintSystem& system,
                              SolveMode mode = SolveMode::Exact);

/// Every row holds exactly; weights nonnegative.
bool satisfies(const ConstraintSystem& system,
               const std::vector<Rational>& weights);

/// max_row |lhs - rhs|.
double max_violation(const ConstraintSystem& system,
                     const std::vector<double>& weights);

/// Map a Hat/Tilde solution onto a square-norm table for gram_orthogonal.
std::map<IndexVector, Rational> norms_from_solution(
    const ConstraintSystem& system, const std::vector<Rational>& weights);

/// Place canonical weights into `system`'s variable order; classes absent
/// from the system raise a validation error.
std::vector<Rational> weights_for(
    const ConstraintSystem& system,
    const std::vector<std::pair<CanonicalIndex, Rational>>& weights);

struct GeneralSolutionReport {
  double max_residual = 0.0;
  std::size_t worst_row = 0;
  double asymmetry = 0.0;
  double min_eigenvalue = 0.0;
  bool pass = false;
};

/// W is K x K with W(k, h) the value of variable (k, h).
GeneralSolutionReport check_general_solution(const ConstraintSystem& system,
                                             const Eigen::MatrixXd& w,
                                             double tol = Tolerance::kDerived);

bool verify_general_solution(const ConstraintSystem& system,
                             const Eigen::MatrixXd& w,
                             double tol = Tolerance::kDerived);

/// Weighted family of XOR formulas x_{k_0} xor ... xor x_{k_j}.
struct XorFormulaFamily {
  int n = 0;
  std::vector<std::pair<IndexVector, Rational>> terms;

  /// Weights positive and summing to 1, entries within 0..n.
  void validate() const;
};

/// Sum of weights of formulas with parity 1 at z.
Rational xor_weight_sum(const XorFormulaFamily& family, const InputWord& z);

/// True iff every pair from different parts has weight sum exactly 1/2 at
/// their xor. Throws when parts overlap.
bool xor_separation_check(const XorFormulaFamily& family,
                          const std::vector<std::vector<InputWord>>& parts);

struct DjInstance {
  XorFormulaFamily family;
  std::vector<InputWord> x_set;  // constant words
  std::vector<InputWord> y_set;  // S(x) = n/2
};

/// k_i = (r(i), ..., r(i+t)) for i = 1..n with cyclic r, weights 1/n.
DjInstance generalized_dj(int n, int t);

/// Canonical weights of a family, for substitution into a Hat/Tilde system.
std::vector<std::pair<CanonicalIndex, Rational>> family_weights(
    const XorFormulaFamily& family, int t);

}  // namespace bsf
