#pragma once

// Small dense complex linear algebra shared by every module.

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace bsf {

using Complex = std::complex<double>;
using StateVector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using GramMatrix = Eigen::MatrixXcd;

/// Complete set of orthogonal projectors; element z is the projector P_z.
using Csop = std::vector<Matrix>;

struct Tolerance {
  static constexpr double kStructural = 1e-9;
  static constexpr double kDerived = 1e-8;
};

/// max |(M^dagger M - I)_ij| <= tol. Throws on a non-square input.
bool is_unitary(const Matrix& m, double tol = Tolerance::kStructural);

/// Hermitian, idempotent, pairwise orthogonal, summing to the identity.
/// Throws when the matrices are not square or differ in size.
bool validate_csop(const Csop& family, double tol = Tolerance::kStructural);

/// Number of singular values above tol * (largest singular value).
int numerical_rank(const std::vector<StateVector>& vectors,
                   double tol = Tolerance::kStructural);

/// Orthonormal basis (as columns) of the column span of `columns`, using the
/// same relative threshold as numerical_rank.
Matrix orthonormal_basis(const Matrix& columns,
                         double tol = Tolerance::kStructural);

/// Orthonormal basis of the range of a Hermitian projector.
Matrix projector_range(const Matrix& projector);

/// Projector onto the span of orthonormal columns.
Matrix projector_onto(const Matrix& orthonormal_columns);

/// Returns U with U^dagger P_z U = Q_z for every z. Both families must be
/// CSOPs over the same index set with matching ranks.
Matrix unitary_between_csops(const Csop& p, const Csop& q,
                             double tol = Tolerance::kStructural);

/// Projectors onto the query-register blocks {i*m, ..., i*m + m - 1}.
Csop query_register_csop(int n, int m);

/// Haar-like random unitary: Gram-Schmidt on a matrix with independent
/// standard-normal entries (imaginary parts zero when `real`).
Matrix random_unitary(int dim, std::mt19937_64& rng, bool real = false);

/// Random unit vector with standard-normal components.
StateVector random_unit_vector(int dim, std::mt19937_64& rng,
                               bool real = false);

/// Largest |Im| over all entries.
double max_imaginary(const Matrix& m);

double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace bsf
