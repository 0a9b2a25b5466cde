#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "bsf/error.hpp"
#include "bsf/linalg.hpp"
#include "bsf/qqm.hpp"

namespace {

using bsf::Complex;
using bsf::Csop;
using bsf::Matrix;
using bsf::StateVector;

Matrix deutsch_u0() { return bsf::deutsch_algorithm().unitaries().front(); }

StateVector vec(std::initializer_list<Complex> xs) {
  StateVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (auto x : xs) v(i++) = x;
  return v;
}

Matrix outer(const StateVector& v) { return v * v.adjoint(); }

Csop conjugate(const Csop& p, const Matrix& u) {
  Csop out;
  for (const auto& pz : p) out.push_back(u.adjoint() * pz * u);
  return out;
}

TEST(IsUnitary, Examples) {
  EXPECT_TRUE(bsf::is_unitary(Matrix::Identity(3, 3), 1e-9));
  EXPECT_TRUE(bsf::is_unitary(deutsch_u0(), 1e-9));
  EXPECT_FALSE(bsf::is_unitary(Matrix::Ones(2, 2)));
  EXPECT_THROW(bsf::is_unitary(Matrix::Ones(2, 3)), bsf::Error);
}

TEST(ValidateCsop, Examples) {
  const Csop computational = bsf::query_register_csop(2, 1);
  EXPECT_TRUE(bsf::validate_csop(computational));
  EXPECT_TRUE(bsf::validate_csop(conjugate(computational, deutsch_u0())));
  const Matrix p0 = outer(vec({1, 0}));
  EXPECT_FALSE(bsf::validate_csop({p0, p0}));
  EXPECT_THROW(bsf::validate_csop({Matrix::Identity(2, 2), Matrix::Zero(3, 3)}),
               bsf::Error);
}

TEST(ValidateCsop, ConjugationByRandomUnitaryKeepsCsop) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + trial % 3;
    const int m = 1 + trial % 2;
    const Matrix u = bsf::random_unitary((n + 1) * m, rng);
    EXPECT_TRUE(bsf::validate_csop(conjugate(bsf::query_register_csop(n, m), u)));
  }
}

TEST(NumericalRank, Examples) {
  EXPECT_EQ(bsf::numerical_rank({vec({1, 0}), vec({0, 1})}), 2);
  EXPECT_EQ(bsf::numerical_rank({vec({1, 1}), vec({2, 2})}), 1);
  EXPECT_EQ(bsf::numerical_rank({vec({0.5, 0.5, 0}), vec({0.5, -0.5, 0})}), 2);
  EXPECT_EQ(bsf::numerical_rank({}), 0);
  EXPECT_EQ(bsf::numerical_rank({vec({0, 0}), vec({0, 0})}), 0);
}

TEST(NumericalRank, InvariantUnderPermutationAndScaling) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<StateVector> vs;
    const int rank = 1 + trial % 3;
    std::vector<StateVector> basis;
    for (int b = 0; b < rank; ++b) basis.push_back(bsf::random_unit_vector(5, rng));
    for (int i = 0; i < 4; ++i) {
      StateVector v = StateVector::Zero(5);
      for (const auto& b : basis) v += normal(rng) * b;
      vs.push_back(v);
    }
    const int r = bsf::numerical_rank(vs);
    EXPECT_EQ(r, std::min(rank, 4));
    auto permuted = vs;
    std::shuffle(permuted.begin(), permuted.end(), rng);
    for (auto& v : permuted) v *= Complex(normal(rng) + 3.0, normal(rng));
    EXPECT_EQ(bsf::numerical_rank(permuted), r);
  }
}

void expect_conjugation(const Matrix& u, const Csop& p, const Csop& q,
                        double tol) {
  EXPECT_TRUE(bsf::is_unitary(u, tol));
  for (std::size_t z = 0; z < p.size(); ++z) {
    EXPECT_LE(bsf::max_abs_diff(u.adjoint() * p[z] * u, q[z]), tol) << "z=" << z;
  }
}

TEST(UnitaryBetweenCsops, IdentityCase) {
  const Csop p = bsf::query_register_csop(2, 1);
  expect_conjugation(bsf::unitary_between_csops(p, p), p, p, 1e-8);
}

TEST(UnitaryBetweenCsops, HadamardLike) {
  const Csop p = bsf::query_register_csop(1, 1);
  const double r = 1 / std::sqrt(2.0);
  const Csop q = {outer(vec({r, r})), outer(vec({r, -r}))};
  expect_conjugation(bsf::unitary_between_csops(p, q), p, q, 1e-8);
}

TEST(UnitaryBetweenCsops, RankMismatch) {
  const Matrix a = outer(vec({1, 0, 0})) + outer(vec({0, 1, 0}));
  const Matrix b = outer(vec({0, 0, 1}));
  const Matrix c = outer(vec({1, 0, 0}));
  const Matrix d = outer(vec({0, 1, 0})) + outer(vec({0, 0, 1}));
  try {
    bsf::unitary_between_csops({a, b}, {c, d});
    FAIL() << "expected a rank mismatch";
  } catch (const bsf::Error& e) {
    EXPECT_STREQ(e.what(), "rank mismatch at index 0");
  }
}

TEST(UnitaryBetweenCsops, RandomConjugatedFamilies) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + trial % 3;
    const int m = 1 + trial % 2;
    const Csop p = bsf::query_register_csop(n, m);
    const Csop q = conjugate(p, bsf::random_unitary((n + 1) * m, rng));
    expect_conjugation(bsf::unitary_between_csops(p, q), p, q, 10 * 1e-9);
  }
}

TEST(RandomUnitary, IsUnitaryAndRealWhenAsked) {
  std::mt19937_64 rng(1);
  const Matrix u = bsf::random_unitary(6, rng, true);
  EXPECT_TRUE(bsf::is_unitary(u));
  EXPECT_EQ(bsf::max_imaginary(u), 0.0);
  EXPECT_TRUE(bsf::is_unitary(bsf::random_unitary(6, rng)));
}

}  // namespace
