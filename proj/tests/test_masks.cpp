#include <gtest/gtest.h>

#include <bit>
#include <random>

#include "bsf/error.hpp"
#include "bsf/exact_systems.hpp"
#include "bsf/masks.hpp"

namespace {

using bsf::IndexVector;
using bsf::InputWord;
using bsf::MaskKind;
using bsf::Rational;

Eigen::MatrixXi mat4(std::initializer_list<int> xs) {
  Eigen::MatrixXi m(4, 4);
  auto it = xs.begin();
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) m(r, c) = *it++;
  }
  return m;
}

Eigen::MatrixXi pq(const IndexVector& k, int n) {
  return bsf::mask_matrix(MaskKind::P, k, k, n) + bsf::mask_matrix(MaskKind::Q, k, k, n);
}

TEST(ParityOf, Examples) {
  EXPECT_EQ(bsf::parity_of(IndexVector{0, 0, 0}, InputWord::parse("11")), 0);
  EXPECT_EQ(bsf::parity_of(IndexVector{1}, InputWord::parse("01")), 1);
  EXPECT_EQ(bsf::parity_of(IndexVector{1, 2, 1}, InputWord::parse("01")), 0);
  EXPECT_THROW(bsf::parity_of(IndexVector{3}, InputWord::parse("01")), bsf::Error);
}

TEST(MaskEntry, AppendixBDumps) {
  EXPECT_EQ(pq(IndexVector{0}, 2), Eigen::MatrixXi::Ones(4, 4));
  EXPECT_EQ(pq(IndexVector{1}, 2),
            mat4({1, 0, 1, 0, 0, 1, 0, 1, 1, 0, 1, 0, 0, 1, 0, 1}));
  EXPECT_EQ(pq(IndexVector{2}, 2),
            mat4({1, 1, 0, 0, 1, 1, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1}));
}

TEST(MaskEntry, RVanishesOnDiagonalPairs) {
  for (const auto& k : {IndexVector{0}, IndexVector{1}, IndexVector{2}}) {
    EXPECT_EQ(bsf::mask_matrix(MaskKind::R, k, k, 2), Eigen::MatrixXi::Zero(4, 4));
  }
}

TEST(MaskEntry, DefinitionsAgainstParities) {
  const IndexVector k{1, 2}, h{3};
  for (std::uint64_t a = 0; a < 8; ++a) {
    for (std::uint64_t b = 0; b < 8; ++b) {
      const InputWord x(3, a), y(3, b);
      const int kx = bsf::parity_of(k, x), ky = bsf::parity_of(k, y);
      const int hx = bsf::parity_of(h, x), hy = bsf::parity_of(h, y);
      EXPECT_EQ(bsf::mask_entry(MaskKind::P, k, h, x, y), !kx && !ky && !hx && !hy);
      EXPECT_EQ(bsf::mask_entry(MaskKind::Q, k, h, x, y), kx && ky && hx && hy);
      EXPECT_EQ(bsf::mask_entry(MaskKind::R, k, h, x, y), !kx && !ky && hx && hy);
    }
  }
}

TEST(MaskEntry, XorAndComplementIdentities) {
  const int n = 3;
  const std::uint64_t all = 7;
  for (const auto& k : {IndexVector{1}, IndexVector{1, 3}, IndexVector{2, 2, 3}, IndexVector{0, 1, 2}}) {
    for (std::uint64_t a = 0; a <= all; ++a) {
      for (std::uint64_t b = 0; b <= all; ++b) {
        const InputWord x(n, a), y(n, b);
        const int sum = bsf::mask_entry(MaskKind::P, k, k, x, y) +
                        bsf::mask_entry(MaskKind::Q, k, k, x, y);
        EXPECT_EQ(sum, bsf::mask_entry(MaskKind::P, k, k, InputWord(n, 0), x ^ y));
        const InputWord xc(n, a ^ all), yc(n, b ^ all);
        EXPECT_EQ(sum, bsf::mask_entry(MaskKind::P, k, k, xc, yc) +
                           bsf::mask_entry(MaskKind::Q, k, k, xc, yc));
      }
    }
  }
}

TEST(MaskEntry, PermutationAndEvenMultiplicityInvariance) {
  for (const auto kind : {MaskKind::P, MaskKind::Q, MaskKind::R}) {
    EXPECT_EQ(bsf::mask_matrix(kind, IndexVector{1, 2, 3}, IndexVector{2, 2, 1}, 3),
              bsf::mask_matrix(kind, IndexVector{3, 1, 2}, IndexVector{1, 0, 0}, 3));
  }
}

TEST(MaskMatrix, DumpCap) {
  EXPECT_THROW(bsf::mask_matrix(MaskKind::P, IndexVector{1}, IndexVector{1}, 7), bsf::Error);
}

TEST(GramViaMasks, Deutsch) {
  const auto bs = bsf::extract_block_set(bsf::deutsch_algorithm());
  Eigen::Matrix4d expected;
  expected << 1, 0, 0, -1, 0, 1, -1, 0, 0, -1, 1, 0, -1, 0, 0, 1;
  EXPECT_LE((bsf::gram_via_masks(bs) - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(GramViaMasks, AllMassAtZero) {
  std::vector<bsf::StateVector> table(3, bsf::StateVector::Zero(3));
  table[0](1) = 1.0;
  const bsf::BlockSet bs(2, 0, 3, table);
  EXPECT_LE((bsf::gram_via_masks(bs) - Eigen::MatrixXd::Ones(4, 4)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(GramViaMasks, RandomRealAgreesWithSimulation) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 6; ++trial) {
    const auto alg = bsf::random_algorithm(1, 3, 1 + trial % 2, rng, true);
    const auto bs = bsf::extract_block_set(alg);
    const Eigen::MatrixXd sim = bsf::gram_of_final_states(alg).real();
    EXPECT_LE((bsf::gram_via_masks(bs) - sim).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(GramViaMasks, RejectsComplex) {
  std::mt19937_64 rng(5);
  const auto bs = bsf::extract_block_set(bsf::random_algorithm(0, 2, 1, rng));
  EXPECT_THROW(bsf::gram_via_masks(bs), bsf::Error);
}

TEST(GramOrthogonal, DeutschRational) {
  const std::map<IndexVector, Rational> norms{
      {IndexVector{0}, 0}, {IndexVector{1}, Rational(1, 2)}, {IndexVector{2}, Rational(1, 2)}};
  const auto m = bsf::orthogonal_mask_sum(norms, 2);
  const Rational h(1, 2);
  const bsf::DenseTable<Rational> expected_m{
      {1, h, h, 0}, {h, 1, 0, h}, {h, 0, 1, h}, {0, h, h, 1}};
  EXPECT_EQ(m, expected_m);
  const bsf::DenseTable<Rational> expected_g{
      {1, 0, 0, -1}, {0, 1, -1, 0}, {0, -1, 1, 0}, {-1, 0, 0, 1}};
  EXPECT_EQ(bsf::gram_orthogonal(norms, 2), expected_g);
}

TEST(GramOrthogonal, SingleIndex) {
  const std::map<IndexVector, double> norms{{IndexVector{1, 2}, 1.0}};
  const auto g = bsf::gram_orthogonal(norms, 2);
  for (std::uint64_t x = 0; x < 4; ++x) {
    for (std::uint64_t y = 0; y < 4; ++y) {
      const int same = bsf::parity_of(IndexVector{1, 2}, InputWord(2, x)) ==
                       bsf::parity_of(IndexVector{1, 2}, InputWord(2, y));
      EXPECT_EQ(g[x][y], same ? 1.0 : -1.0);
    }
  }
}

TEST(GramOrthogonal, DeutschJozsaRowVanishesOnBalanced) {
  std::map<IndexVector, Rational> norms;
  for (int i = 1; i <= 4; ++i) norms[IndexVector{i}] = Rational(1, 4);
  const auto g = bsf::gram_orthogonal(norms, 4);
  for (std::uint64_t y = 0; y < 16; ++y) {
    if (std::popcount(y) == 2) {
      EXPECT_EQ(g[0][y], 0) << y;
    } else {
      EXPECT_NE(g[0][y], 0) << y;
    }
  }
}

TEST(GramOrthogonal, RejectsUnnormalized) {
  const std::map<IndexVector, Rational> norms{{IndexVector{1}, Rational(1, 2)}};
  EXPECT_THROW(bsf::gram_orthogonal(norms, 2), bsf::Error);
}

TEST(GramOrthogonal, MatchesOrthogonalBlockSetGram) {
  std::vector<double> w(16, 0.0);
  w[1] = 0.25;   // (0,1)
  w[6] = 0.125;  // (1,2)
  w[11] = 0.625; // (2,3)
  const auto bs = bsf::orthogonal_block_set(3, 1, w);
  std::map<IndexVector, double> norms;
  for (std::size_t f = 0; f < w.size(); ++f) {
    if (w[f] > 0) norms[bs.index_vector(f)] = w[f];
  }
  const auto g = bsf::gram_orthogonal(norms, 3);
  const auto direct = bsf::bsf_gram(bs);
  for (int x = 0; x < 8; ++x) {
    for (int y = 0; y < 8; ++y) EXPECT_NEAR(g[x][y], direct(x, y).real(), 1e-12);
  }
}

}  // namespace
