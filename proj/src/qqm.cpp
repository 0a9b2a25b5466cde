#include "bsf/qqm.hpp"

#include <cmath>
#include <string>

#include "bsf/error.hpp"

namespace bsf {

InputWord::InputWord(int n, std::uint64_t bits) : n_(n), bits_(bits) {
  if (n < 0 || n > 63) throw validation_error("input length out of range");
  if (n < 64 && (bits >> n) != 0) {
    throw validation_error("input word has bits beyond position n");
  }
}

InputWord InputWord::parse(const std::string& text) {
  const int n = static_cast<int>(text.size());
  std::uint64_t bits = 0;
  for (int pos = 0; pos < n; ++pos) {
    const char c = text[static_cast<std::size_t>(pos)];
    if (c != '0' && c != '1') {
      throw validation_error("input word '" + text + "' is not a bit string");
    }
    // text[0] is x_n, text[n-1] is x_1.
    if (c == '1') bits |= std::uint64_t{1} << (n - 1 - pos);
  }
  return InputWord(n, bits);
}

std::string InputWord::str() const {
  std::string s(static_cast<std::size_t>(n_), '0');
  for (int i = 1; i <= n_; ++i) {
    if (bit(i)) s[static_cast<std::size_t>(n_ - i)] = '1';
  }
  return s;
}

InputWord InputWord::operator^(const InputWord& other) const {
  if (other.n_ != n_) throw validation_error("xor of words of unequal length");
  return InputWord(n_, bits_ ^ other.bits_);
}

AlgorithmSpec::AlgorithmSpec(int t, int n, int m, StateVector initial,
                             std::vector<Matrix> unitaries, double tol)
    : t_(t), n_(n), m_(m), initial_(std::move(initial)),
      unitaries_(std::move(unitaries)) {
  if (t < 0) throw validation_error("t must be non-negative");
  if (n < 0 || n > 62) throw validation_error("n out of range");
  if (m < 1) throw validation_error("m must be at least 1");
  const int d = dim();
  if (initial_.size() != d) {
    throw validation_error("initial state has dimension " +
                           std::to_string(initial_.size()) + ", expected " +
                           std::to_string(d));
  }
  const double norm = initial_.norm();
  if (std::abs(norm * norm - 1.0) > tol) {
    throw validation_error("initial state is not a unit vector (norm " +
                           std::to_string(norm) + ")");
  }
  const auto expected = static_cast<std::size_t>(t) + 2;
  if (unitaries_.size() + 1 == expected) {
    unitaries_.push_back(Matrix::Identity(d, d));
  }
  if (unitaries_.size() != expected) {
    throw validation_error("expected " + std::to_string(expected - 1) +
                           " or " + std::to_string(expected) +
                           " unitaries, got " +
                           std::to_string(unitaries_.size()));
  }
  for (std::size_t j = 0; j < unitaries_.size(); ++j) {
    const Matrix& u = unitaries_[j];
    if (u.rows() != d || u.cols() != d) {
      throw validation_error("unitary " + std::to_string(j) + " is " +
                             std::to_string(u.rows()) + "x" +
                             std::to_string(u.cols()) + ", expected " +
                             std::to_string(d) + "x" + std::to_string(d));
    }
    if (!is_unitary(u, tol)) {
      const double residual =
          (u.adjoint() * u - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
      throw validation_error("unitary " + std::to_string(j) +
                             " fails unitarity (max residual " +
                             std::to_string(residual) + ")");
    }
  }
}

Matrix AlgorithmSpec::cumulative(int j) const {
  Matrix acc = unitaries_.at(0);
  for (int i = 1; i <= j; ++i) {
    acc = unitaries_.at(static_cast<std::size_t>(i)) * acc;
  }
  return acc;
}

bool AlgorithmSpec::is_real(double tol) const {
  if (initial_.imag().cwiseAbs().maxCoeff() > tol) return false;
  for (const auto& u : unitaries_) {
    if (max_imaginary(u) > tol) return false;
  }
  return true;
}

StateVector apply_oracle(const InputWord& x, const StateVector& s) {
  const int blocks = x.n() + 1;
  if (s.size() % blocks != 0) {
    throw validation_error("state dimension " + std::to_string(s.size()) +
                           " is not a multiple of n+1 = " +
                           std::to_string(blocks));
  }
  const auto m = s.size() / blocks;
  StateVector out = s;
  for (int i = 1; i <= x.n(); ++i) {
    if (x.bit(i)) out.segment(i * m, m) *= -1.0;
  }
  return out;
}

StateVector run_final_state(const AlgorithmSpec& alg, const InputWord& x) {
  if (x.n() != alg.n()) {
    throw validation_error("input length does not match algorithm n");
  }
  const auto& us = alg.unitaries();
  StateVector s = us[0] * alg.initial();
  for (std::size_t j = 1; j < us.size(); ++j) {
    s = us[j] * apply_oracle(x, s);
  }
  return s;
}

MeasurementDistribution measurement_distribution(const StateVector& s,
                                                 const Csop& csop) {
  MeasurementDistribution pi;
  pi.reserve(csop.size());
  for (const auto& p : csop) {
    if (p.rows() != s.size() || p.cols() != s.size()) {
      throw validation_error("projector dimension does not match state");
    }
    pi.push_back((p * s).squaredNorm());
  }
  return pi;
}

namespace {

void require_input_cap(int n, int cap) {
  if (n > cap) {
    throw validation_error("n = " + std::to_string(n) +
                           " exceeds the input enumeration cap " +
                           std::to_string(cap));
  }
}

}  // namespace

bool computes_within_error(const AlgorithmSpec& alg, const Csop& csop,
                           const std::function<int(const InputWord&)>& f,
                           double eps, int input_cap) {
  require_input_cap(alg.n(), input_cap);
  const std::uint64_t inputs = std::uint64_t{1} << alg.n();
  for (std::uint64_t bits = 0; bits < inputs; ++bits) {
    const InputWord x(alg.n(), bits);
    const int label = f(x);
    if (label < 0 || static_cast<std::size_t>(label) >= csop.size()) {
      throw validation_error("f(x) is not a CSOP label");
    }
    const auto pi = measurement_distribution(run_final_state(alg, x), csop);
    if (pi[static_cast<std::size_t>(label)] < 1.0 - eps) return false;
  }
  return true;
}

std::vector<StateVector> all_final_states(const AlgorithmSpec& alg, Exec exec,
                                          int input_cap) {
  require_input_cap(alg.n(), input_cap);
  const std::int64_t inputs = std::int64_t{1} << alg.n();
  std::vector<StateVector> out(static_cast<std::size_t>(inputs));
  if (exec == Exec::Serial) {
    for (std::int64_t b = 0; b < inputs; ++b) {
      out[static_cast<std::size_t>(b)] = run_final_state(
          alg, InputWord(alg.n(), static_cast<std::uint64_t>(b)));
    }
    return out;
  }
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < inputs; ++b) {
    out[static_cast<std::size_t>(b)] = run_final_state(
        alg, InputWord(alg.n(), static_cast<std::uint64_t>(b)));
  }
  return out;
}

GramMatrix gram_of_final_states(const AlgorithmSpec& alg, Exec exec,
                                int input_cap) {
  const auto states = all_final_states(alg, exec, input_cap);
  return kernels::gram_from_states(states, exec);
}

AlgorithmSpec random_algorithm(int t, int n, int m, std::mt19937_64& rng,
                               bool real) {
  const int d = (n + 1) * m;
  StateVector initial = random_unit_vector(d, rng, real);
  std::vector<Matrix> us;
  for (int j = 0; j <= t + 1; ++j) us.push_back(random_unitary(d, rng, real));
  return AlgorithmSpec(t, n, m, std::move(initial), std::move(us));
}

AlgorithmSpec deutsch_algorithm() {
  const double r = 1.0 / std::sqrt(2.0);
  Matrix u0(3, 3);
  u0 << 0, 0, 1,
        r, r, 0,
        r, -r, 0;
  StateVector initial = StateVector::Zero(3);
  initial(0) = 1.0;
  return AlgorithmSpec(0, 2, 1, initial, {u0});
}

}  // namespace bsf
