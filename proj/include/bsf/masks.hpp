#pragma once

// Parity predicates, the P/Q/R mask matrices and the mask-route Gram matrix.
// Masks are evaluated entrywise and never stored, except by mask_matrix,
// which backs the explicit dump for small n.

#include <map>
#include <vector>

#include "bsf/blockset.hpp"
#include "bsf/rational.hpp"

namespace bsf {

/// x_{k_0} xor ... xor x_{k_t}, with x_0 = 0.
int parity_of(const IndexVector& k, const InputWord& x);

enum class MaskKind { P, Q, R };

/// P: all four parities (k,x), (h,x), (k,y), (h,y) are 0. Q: all four are 1.
/// R: k has parity 0 and h parity 1, at both x and y.
int mask_entry(MaskKind kind, const IndexVector& k, const IndexVector& h,
               const InputWord& x, const InputWord& y);

inline constexpr int kMaskDumpCap = 6;

/// Explicit 2^n x 2^n 0/1 matrix; rows and columns in input order.
Eigen::MatrixXi mask_matrix(MaskKind kind, const IndexVector& k,
                            const IndexVector& h, int n);

/// 2 * sum_{k,h} (P - 2R + Q)_{k,h} <Psi(k)|Psi(h)> - J. Rejects complex
/// Block Sets.
Eigen::MatrixXd gram_via_masks(const BlockSet& bs, Exec exec = Exec::Parallel,
                               int input_cap = kDefaultInputCap);

template <class T>
using DenseTable = std::vector<std::vector<T>>;

/// M[x,y] = sum_k (P_{k,k} + Q_{k,k})[x,y] * norms[k] for an orthogonal
/// Block Set with squared norms `norms`.
template <class T>
DenseTable<T> orthogonal_mask_sum(const std::map<IndexVector, T>& norms,
                                  int n, int input_cap = kDefaultInputCap);

/// G = 2M - J. The norms must sum to 1 (exactly for Rational, within 1e-9
/// for double).
template <class T>
DenseTable<T> gram_orthogonal(const std::map<IndexVector, T>& norms, int n,
                              int input_cap = kDefaultInputCap);

extern template DenseTable<double> orthogonal_mask_sum(
    const std::map<IndexVector, double>&, int, int);
extern template DenseTable<Rational> orthogonal_mask_sum(
    const std::map<IndexVector, Rational>&, int, int);
extern template DenseTable<double> gram_orthogonal(
    const std::map<IndexVector, double>&, int, int);
extern template DenseTable<Rational> gram_orthogonal(
    const std::map<IndexVector, Rational>&, int, int);

}  // namespace bsf
