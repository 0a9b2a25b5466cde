// Serial reference vs OpenMP path for each kernel. Arg 0 is the serial path,
// arg 1 the parallel one.

#include <benchmark/benchmark.h>

#include <random>

#include "bsf/blockset.hpp"
#include "bsf/kernels.hpp"
#include "bsf/lower_bound.hpp"
#include "bsf/masks.hpp"

namespace {

bsf::Exec exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? bsf::Exec::Serial : bsf::Exec::Parallel;
}

const bsf::BlockSet& block_set() {
  static const bsf::BlockSet bs = [] {
    std::mt19937_64 rng(5);
    return bsf::extract_block_set(bsf::random_algorithm(2, 6, 2, rng, true));
  }();
  return bs;
}

void BM_GramFromStates(benchmark::State& state) {
  const auto states = bsf::all_output_states(block_set(), bsf::Exec::Serial);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bsf::kernels::gram_from_states(states, exec_of(state)));
  }
}

void BM_SignedSums(benchmark::State& state) {
  const auto& bs = block_set();
  const auto masks = bs.parity_masks();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        bsf::kernels::signed_sums(bs.table(), masks, bs.n(), exec_of(state)));
  }
}

void BM_MaskGram(benchmark::State& state) {
  std::mt19937_64 rng(6);
  const auto bs = bsf::extract_block_set(bsf::random_algorithm(1, 5, 1, rng, true));
  const auto k = static_cast<Eigen::Index>(bs.size());
  Eigen::MatrixXd inner(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = 0; b < k; ++b) {
      inner(a, b) = bs.at(static_cast<std::size_t>(a))
                        .dot(bs.at(static_cast<std::size_t>(b)))
                        .real();
    }
  }
  const auto masks = bs.parity_masks();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        bsf::kernels::mask_gram(inner, masks, bs.n(), exec_of(state)));
  }
}

void BM_CharacterSum(benchmark::State& state) {
  const int n = 14;
  std::mt19937_64 rng(7);
  std::vector<std::int64_t> values(std::size_t{1} << n);
  for (auto& v : values) v = static_cast<std::int64_t>(rng() % 3);
  std::vector<std::uint64_t> masks;
  for (const auto& c : bsf::enumerate_classes(n, 2)) masks.push_back(c.mask);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        bsf::kernels::character_sum(values, masks, exec_of(state)));
  }
}

}  // namespace

BENCHMARK(BM_GramFromStates)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SignedSums)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MaskGram)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CharacterSum)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
