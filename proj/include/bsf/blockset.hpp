#pragma once

// Block Sets: extraction from an algorithm, axiom checks, signed-sum output
// states and reconstruction of an algorithm from a Block Set.

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "bsf/kernels.hpp"
#include "bsf/linalg.hpp"
#include "bsf/qqm.hpp"

namespace bsf {

/// k = (k_0, ..., k_t) with every entry in {0, ..., n}.
class IndexVector {
 public:
  IndexVector() = default;
  explicit IndexVector(std::vector<int> entries)
      : entries_(std::move(entries)) {}
  IndexVector(std::initializer_list<int> entries) : entries_(entries) {}

  std::size_t size() const { return entries_.size(); }
  int operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<int>& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  /// Bitmask of the input bits of odd multiplicity (bit i-1 for index i);
  /// index 0 addresses the constant x_0 = 0 and never contributes.
  std::uint64_t parity_mask() const;

  std::string str() const;

  auto operator<=>(const IndexVector&) const = default;

 private:
  std::vector<int> entries_;
};

/// Dense table Psi(k) over all (n+1)^{t+1} index vectors. Flat order has k_0
/// most significant, so every prefix owns a contiguous range.
class BlockSet {
 public:
  BlockSet(int n, int t, int dim, std::vector<StateVector> table);

  int n() const { return n_; }
  int t() const { return t_; }
  int dim() const { return dim_; }
  std::size_t size() const { return table_.size(); }

  const std::vector<StateVector>& table() const { return table_; }
  const StateVector& at(std::size_t flat) const { return table_.at(flat); }
  const StateVector& at(const IndexVector& k) const {
    return table_.at(flat_index(k));
  }

  std::size_t flat_index(const IndexVector& k) const;
  IndexVector index_vector(std::size_t flat) const;

  /// parity_mask() of every index vector in flat order.
  std::vector<std::uint64_t> parity_masks() const;

  /// sum_k Psi(k); equals the initial state of any associated algorithm.
  StateVector total() const;

  /// Max |Im| over all entries <= tol.
  bool is_real(double tol = 1e-9) const;

 private:
  int n_;
  int t_;
  int dim_;
  std::vector<StateVector> table_;
};

/// (n+1)^{t+1}, or throws if it exceeds `cap`.
std::size_t index_count(int n, int t, std::size_t cap);

inline constexpr std::size_t kDefaultTableCap = 1'000'000;

/// Psi(a) = P~^t_{a_t} ... P~^0_{a_0} |initial>, P~^j_i = U~_j^+ P_i U~_j.
BlockSet extract_block_set(const AlgorithmSpec& alg,
                           std::size_t cap = kDefaultTableCap);

/// Sum of Psi(prefix, k_1, ..., k_i) over every free suffix.
StateVector partial_sum(const BlockSet& bs, const IndexVector& prefix);

struct AxiomCheck {
  bool pass = true;
  double residual = 0.0;
  /// Indices witnessing the worst residual (empty when not applicable).
  std::vector<IndexVector> witness;
  std::string detail;
};

struct BlockSetReport {
  AxiomCheck orthogonality;  // partial sums with distinct last index
  AxiomCheck normalization;  // sum of squared norms equals 1
  AxiomCheck dimension;      // dim H(i,j) <= m
  AxiomCheck index_bound;    // table shape matches (n, t, (n+1) m)

  bool pass() const {
    return orthogonality.pass && normalization.pass && dimension.pass &&
           index_bound.pass;
  }
  double worst_residual() const;
};

BlockSetReport verify_block_set(const BlockSet& bs, int m_claim,
                                double tol = Tolerance::kDerived);

/// sum_k (-1)^{x_{k_0} + ... + x_{k_t}} Psi(k).
StateVector bsf_output_state(const BlockSet& bs, const InputWord& x);

std::vector<StateVector> all_output_states(const BlockSet& bs,
                                           Exec exec = Exec::Parallel,
                                           int input_cap = kDefaultInputCap);

GramMatrix bsf_gram(const BlockSet& bs, Exec exec = Exec::Parallel,
                    int input_cap = kDefaultInputCap);

/// An algorithm whose extracted Block Set equals `bs`. Range spaces H(i,j)
/// are padded with complement vectors taken, in order, from the
/// Gram-Schmidt completion of the standard basis.
AlgorithmSpec reconstruct_algorithm(const BlockSet& bs, int m,
                                    double tol = Tolerance::kDerived);

/// Sums of the Block Set elements grouped by their signs in the output
/// states of x and y.
struct SignPartition {
  StateVector kept_both;       // A
  StateVector kept_x_only;     // B
  StateVector flipped_both;    // C
  StateVector flipped_x_only;  // D
};

SignPartition sign_partition(const BlockSet& bs, const InputWord& x,
                             const InputWord& y);

/// (+-|Psi_x^f> + |Psi>) / 2.
StateVector plus_component(const BlockSet& bs, const InputWord& x);
StateVector minus_component(const BlockSet& bs, const InputWord& x);

/// Orthogonal Block Set with ||Psi(k)||^2 = weights[k]: each element with
/// nonzero weight gets its own basis direction. The work dimension is the
/// smallest m that fits; it is returned through `m_out`.
BlockSet orthogonal_block_set(int n, int t,
                              const std::vector<double>& weights,
                              int* m_out = nullptr);

}  // namespace bsf
