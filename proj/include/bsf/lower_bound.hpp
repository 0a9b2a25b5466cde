#pragma once

// Parity characters on the Boolean cube, degree-bounded class families, the
// positive-count formula and the lower-bound certificate built on them.

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "bsf/kernels.hpp"
#include "bsf/qqm.hpp"

namespace bsf {

/// F_S(x) = (-1)^{|x & S|}; bit i-1 of `mask` stands for position i.
struct CharacterClass {
  int n = 0;
  std::uint64_t mask = 0;

  int degree() const;
  int eval(std::uint64_t x) const;  // +1 or -1
  std::string str() const;          // "{1,3}"
  auto operator<=>(const CharacterClass&) const = default;
};

/// Positions of odd multiplicity; entry 0 (the constant bit) is ignored.
CharacterClass reduce_character(const std::vector<int>& k, int n);

/// Every class with |S| <= 2m, by degree then mask order.
std::vector<CharacterClass> enumerate_classes(int n, int m);

mpz_class binomial(int n, int k);

/// sum_{i=0}^{2k} C(n, i): the size of F_n(k).
mpz_class class_count(int n, int k);

/// sum_x w(x) F_S(x), divided by sqrt(2^n) when `normalized`.
double correlate(const std::vector<double>& w, const CharacterClass& s,
                 bool normalized);

/// Number of classes in F_n(k) with F_S(x) = 1 at any x of weight `hamming`.
mpz_class positive_count(int hamming, int n, int k);

/// Same count by enumerating F_n(k); for cross-checks.
mpz_class positive_count_brute(int hamming, int n, int k);

inline constexpr int kLowerBoundInputCap = 16;

/// Values of g are stored doubled: 0, 1 (for 1/2) or 2.
struct GFunction {
  int n = 0;
  int k = 0;
  std::vector<std::int64_t> doubled;

  double at(std::uint64_t x) const { return doubled.at(x) / 2.0; }
};

/// g(0) = 1; g = 1/2 on Z; elsewhere 1 iff positive_count(|x|) is strictly
/// more than half of |F_n(k)|, else 0.
GFunction build_g(int n, int k, const std::vector<InputWord>& z);

enum class ThresholdMode { Proof, Statement };

std::string mode_name(ThresholdMode mode);
ThresholdMode parse_mode(const std::string& name);

struct Certificate {
  double value = 0.0;      // sum_S (g * F_S) / sqrt(2^n)
  mpz_class doubled_sum;   // 2 * sum_S sum_x g(x) F_S(x), exact
  double threshold = 0.0;  // sqrt(2^n) in proof mode, 1 in statement mode
  bool holds = false;
  std::size_t classes = 0;
};

/// Z(y) = { y xor y' : y' in a part other than y's }.
std::vector<InputWord> xor_set(const std::vector<std::vector<InputWord>>& parts,
                               const InputWord& y);

Certificate certificate_value(const std::vector<std::vector<InputWord>>& parts,
                              const InputWord& y, int k, ThresholdMode mode,
                              Exec exec = Exec::Parallel);

/// Walsh-Hadamard coefficients sum_x v(x) F_S(x) / 2^n, indexed by mask.
std::vector<double> fourier_coefficients(const std::vector<double>& values,
                                         int n);

/// Largest |S| whose coefficient exceeds tol in magnitude (-1 if none).
int fourier_degree(const std::vector<double>& values, int n,
                   double tol = 1e-9);

struct BinomialComparison {
  mpz_class lhs;  // sum_{i <= ceil(4n/10)} C(n, 2i)
  mpz_class rhs;  // 4 * sum_{i >= 2 ceil(4n/10)} C(n, i)
  bool holds() const { return lhs > rhs; }
};

BinomialComparison example_inequality(int n);

}  // namespace bsf
