#pragma once

// Data-parallel inner loops. Every kernel has a serial reference path and an
// OpenMP path that must agree bit-for-bit; tests and the benchmark compare
// the two.

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace bsf {

enum class Exec { Serial, Parallel };

namespace kernels {

/// G[a][b] = <s_a | s_b>.
Eigen::MatrixXcd gram_from_states(std::span<const Eigen::VectorXcd> states,
                                  Exec exec);

/// Mask-route Gram entries for a real Block Set.
///
/// `inner` is the K x K matrix of <Psi(k)|Psi(h)> and `parity_masks[k]` the
/// bitmask of input bits whose XOR is the parity of index vector k. Entry
/// (x, y) is 2 * sum_{k,h} (P - 2R + Q)_{k,h}[x,y] * inner(k,h) - 1.
Eigen::MatrixXd mask_gram(const Eigen::MatrixXd& inner,
                          std::span<const std::uint64_t> parity_masks, int n,
                          Exec exec);

/// sum over classes S of sum_x values[x] * (-1)^{|x & S|}, exact.
std::int64_t character_sum(std::span<const std::int64_t> values,
                           std::span<const std::uint64_t> class_masks,
                           Exec exec);

/// Signed sums sum_k (-1)^{parity_k(x)} table[k] for every x < 2^n.
std::vector<Eigen::VectorXcd> signed_sums(
    std::span<const Eigen::VectorXcd> table,
    std::span<const std::uint64_t> parity_masks, int n, Exec exec);

}  // namespace kernels
}  // namespace bsf
