#include <gtest/gtest.h>

#include <random>

#include "bsf/blockset.hpp"
#include "bsf/kernels.hpp"
#include "bsf/lower_bound.hpp"

namespace {

using bsf::Exec;

TEST(Kernels, GramSerialEqualsParallel) {
  std::mt19937_64 rng(1);
  std::vector<Eigen::VectorXcd> states;
  for (int i = 0; i < 40; ++i) states.push_back(bsf::random_unit_vector(12, rng, false));
  const auto a = bsf::kernels::gram_from_states(states, Exec::Serial);
  const auto b = bsf::kernels::gram_from_states(states, Exec::Parallel);
  EXPECT_EQ(a, b);
  EXPECT_LE((a - a.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Kernels, MaskGramSerialEqualsParallel) {
  std::mt19937_64 rng(2);
  const auto bs = bsf::extract_block_set(bsf::random_algorithm(1, 3, 1, rng, true));
  const auto k = static_cast<Eigen::Index>(bs.size());
  Eigen::MatrixXd inner(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = 0; b < k; ++b) {
      inner(a, b) = bs.at(static_cast<std::size_t>(a)).dot(bs.at(static_cast<std::size_t>(b))).real();
    }
  }
  const auto masks = bs.parity_masks();
  EXPECT_EQ(bsf::kernels::mask_gram(inner, masks, 3, Exec::Serial),
            bsf::kernels::mask_gram(inner, masks, 3, Exec::Parallel));
}

TEST(Kernels, CharacterSumSerialEqualsParallel) {
  std::mt19937_64 rng(3);
  std::vector<std::int64_t> values(1 << 10);
  for (auto& v : values) v = static_cast<std::int64_t>(rng() % 5) - 2;
  std::vector<std::uint64_t> masks;
  for (const auto& c : bsf::enumerate_classes(10, 2)) masks.push_back(c.mask);
  EXPECT_EQ(bsf::kernels::character_sum(values, masks, Exec::Serial),
            bsf::kernels::character_sum(values, masks, Exec::Parallel));
}

TEST(Kernels, SignedSumsSerialEqualsParallel) {
  std::mt19937_64 rng(4);
  const auto bs = bsf::extract_block_set(bsf::random_algorithm(2, 3, 1, rng, false));
  const auto masks = bs.parity_masks();
  const auto a = bsf::kernels::signed_sums(bs.table(), masks, 3, Exec::Serial);
  const auto b = bsf::kernels::signed_sums(bs.table(), masks, 3, Exec::Parallel);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t x = 0; x < a.size(); ++x) EXPECT_EQ(a[x], b[x]);
}

}  // namespace
