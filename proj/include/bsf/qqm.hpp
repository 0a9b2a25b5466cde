#pragma once

// Quantum query model: oracle, algorithm simulation and Gram matrices.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "bsf/kernels.hpp"
#include "bsf/linalg.hpp"

namespace bsf {

/// An n-bit input word. Bit x_1 is the least-significant bit of `bits`, so
/// the integer value of x is also its Gram row index. bit(0) is always 0.
class InputWord {
 public:
  InputWord(int n, std::uint64_t bits);

  /// Parses "x_n ... x_2 x_1", most-significant character first.
  static InputWord parse(const std::string& text);

  int n() const { return n_; }
  std::uint64_t bits() const { return bits_; }
  int bit(int i) const {
    return i == 0 ? 0 : static_cast<int>((bits_ >> (i - 1)) & 1u);
  }
  std::string str() const;

  InputWord operator^(const InputWord& other) const;
  bool operator==(const InputWord& other) const = default;

 private:
  int n_;
  std::uint64_t bits_;
};

/// Upper bound on n for functions that enumerate all 2^n inputs.
inline constexpr int kDefaultInputCap = 12;

/// (t, n, m, initial state, U_0 ... U_{t+1}); t+1 oracle calls.
class AlgorithmSpec {
 public:
  /// `unitaries` holds U_0..U_t or U_0..U_{t+1}; a missing U_{t+1} becomes
  /// the identity. Throws on dimension, norm or unitarity violations.
  AlgorithmSpec(int t, int n, int m, StateVector initial,
                std::vector<Matrix> unitaries,
                double tol = Tolerance::kStructural);

  int t() const { return t_; }
  int n() const { return n_; }
  int m() const { return m_; }
  int dim() const { return (n_ + 1) * m_; }
  const StateVector& initial() const { return initial_; }
  /// Always t+2 entries.
  const std::vector<Matrix>& unitaries() const { return unitaries_; }

  /// U_j U_{j-1} ... U_0.
  Matrix cumulative(int j) const;

  bool is_real(double tol = 1e-9) const;

 private:
  int t_;
  int n_;
  int m_;
  StateVector initial_;
  std::vector<Matrix> unitaries_;
};

/// O_x: multiplies the query-index-i block by (-1)^{x_i}.
StateVector apply_oracle(const InputWord& x, const StateVector& s);

/// U_{t+1} O_x U_t ... U_1 O_x U_0 |initial>.
StateVector run_final_state(const AlgorithmSpec& alg, const InputWord& x);

/// pi(z) = ||P_z s||^2, one entry per projector.
using MeasurementDistribution = std::vector<double>;

MeasurementDistribution measurement_distribution(const StateVector& s,
                                                 const Csop& csop);

/// True iff pi_x(f(x)) >= 1 - eps for every input x.
bool computes_within_error(const AlgorithmSpec& alg, const Csop& csop,
                           const std::function<int(const InputWord&)>& f,
                           double eps, int input_cap = kDefaultInputCap);

/// Final state for every input, in row order x = 0 ... 2^n - 1.
std::vector<StateVector> all_final_states(const AlgorithmSpec& alg,
                                          Exec exec = Exec::Parallel,
                                          int input_cap = kDefaultInputCap);

GramMatrix gram_of_final_states(const AlgorithmSpec& alg,
                                Exec exec = Exec::Parallel,
                                int input_cap = kDefaultInputCap);

/// Random algorithm with t+1 queries. With `real`, every unitary and the
/// initial state are real.
AlgorithmSpec random_algorithm(int t, int n, int m, std::mt19937_64& rng,
                               bool real = false);

/// The Deutsch algorithm as a (t=0, n=2, m=1) query algorithm.
AlgorithmSpec deutsch_algorithm();

}  // namespace bsf
