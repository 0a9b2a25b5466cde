#include "bsf/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bsf/error.hpp"

namespace bsf {

namespace {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw validation_error(std::string(what) + ": matrix is " +
                           std::to_string(m.rows()) + "x" +
                           std::to_string(m.cols()) + ", expected square");
  }
}

void require_family_shape(const Csop& family) {
  if (family.empty()) throw validation_error("CSOP is empty");
  const auto dim = family.front().rows();
  for (const auto& p : family) {
    require_square(p, "CSOP");
    if (p.rows() != dim) {
      throw validation_error("CSOP members differ in dimension");
    }
  }
}

}  // namespace

bool is_unitary(const Matrix& m, double tol) {
  require_square(m, "is_unitary");
  const Matrix residual =
      m.adjoint() * m - Matrix::Identity(m.rows(), m.cols());
  return residual.cwiseAbs().maxCoeff() <= tol || m.size() == 0;
}

bool validate_csop(const Csop& family, double tol) {
  require_family_shape(family);
  const auto dim = family.front().rows();
  Matrix sum = Matrix::Zero(dim, dim);
  for (std::size_t a = 0; a < family.size(); ++a) {
    const Matrix& p = family[a];
    if ((p - p.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
    if ((p * p - p).cwiseAbs().maxCoeff() > tol) return false;
    for (std::size_t b = a + 1; b < family.size(); ++b) {
      if ((p * family[b]).cwiseAbs().maxCoeff() > tol) return false;
    }
    sum += p;
  }
  return (sum - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() <= tol;
}

int numerical_rank(const std::vector<StateVector>& vectors, double tol) {
  if (vectors.empty()) return 0;
  const auto dim = vectors.front().size();
  Matrix cols(dim, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (vectors[j].size() != dim) {
      throw validation_error("numerical_rank: vectors differ in dimension");
    }
    cols.col(static_cast<Eigen::Index>(j)) = vectors[j];
  }
  if (cols.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(cols);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol * sv(0)) ++rank;
  }
  return rank;
}

Matrix orthonormal_basis(const Matrix& columns, double tol) {
  if (columns.cols() == 0 || columns.rows() == 0) {
    return Matrix(columns.rows(), 0);
  }
  Eigen::JacobiSVD<Matrix> svd(columns, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0) return Matrix(columns.rows(), 0);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > tol * sv(0)) ++rank;
  return svd.matrixU().leftCols(rank);
}

Matrix projector_range(const Matrix& projector) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(projector);
  const auto& values = eig.eigenvalues();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values(i) > 0.5) keep.push_back(i);
  }
  Matrix basis(projector.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    basis.col(static_cast<Eigen::Index>(c)) = eig.eigenvectors().col(keep[c]);
  }
  return basis;
}

Matrix projector_onto(const Matrix& orthonormal_columns) {
  return orthonormal_columns * orthonormal_columns.adjoint();
}

Matrix unitary_between_csops(const Csop& p, const Csop& q, double tol) {
  require_family_shape(p);
  require_family_shape(q);
  if (p.size() != q.size()) {
    throw validation_error("unitary_between_csops: index sets differ");
  }
  const auto dim = p.front().rows();
  if (q.front().rows() != dim) {
    throw validation_error("unitary_between_csops: dimensions differ");
  }
  if (!validate_csop(p, tol) || !validate_csop(q, tol)) {
    throw validation_error("unitary_between_csops: input is not a CSOP");
  }
  // With orthonormal range bases B_P(z), B_Q(z): U = sum_z B_P(z) B_Q(z)^+
  // maps range(Q_z) onto range(P_z), hence U^+ P_z U = Q_z.
  Matrix u = Matrix::Zero(dim, dim);
  for (std::size_t z = 0; z < p.size(); ++z) {
    const Matrix bp = projector_range(p[z]);
    const Matrix bq = projector_range(q[z]);
    if (bp.cols() != bq.cols()) {
      throw validation_error("rank mismatch at index " + std::to_string(z));
    }
    u += bp * bq.adjoint();
  }
  return u;
}

Csop query_register_csop(int n, int m) {
  const int dim = (n + 1) * m;
  Csop family;
  family.reserve(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i) {
    Matrix p = Matrix::Zero(dim, dim);
    for (int w = 0; w < m; ++w) p(i * m + w, i * m + w) = 1.0;
    family.push_back(std::move(p));
  }
  return family;
}

Matrix random_unitary(int dim, std::mt19937_64& rng, bool real) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix a(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      const double re = normal(rng);
      const double im = real ? 0.0 : normal(rng);
      a(r, c) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fixing the phase of diag(R) makes the distribution Haar.
  for (int c = 0; c < dim; ++c) {
    const double mag = std::abs(r(c, c));
    if (mag > 0) q.col(c) *= r(c, c) / mag;
  }
  return q;
}

StateVector random_unit_vector(int dim, std::mt19937_64& rng, bool real) {
  std::normal_distribution<double> normal(0.0, 1.0);
  StateVector v(dim);
  for (int i = 0; i < dim; ++i) {
    v(i) = Complex(normal(rng), real ? 0.0 : normal(rng));
  }
  return v / v.norm();
}

double max_imaginary(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.imag().cwiseAbs().maxCoeff();
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw validation_error("max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace bsf
