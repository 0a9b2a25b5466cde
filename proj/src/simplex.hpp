#pragma once

// Dense phase-1 simplex (Bland's rule) for A x = b, x >= 0. Internal to the
// exact_systems module.

#include <cmath>
#include <cstddef>
#include <vector>

#include "bsf/rational.hpp"

namespace bsf::detail {

template <class T>
struct Arith;

template <>
struct Arith<Rational> {
  static bool negative(const Rational& v) { return sgn(v) < 0; }
  static bool positive(const Rational& v) { return sgn(v) > 0; }
  static bool zero(const Rational& v) { return sgn(v) == 0; }
  static double to_double(const Rational& v) { return v.get_d(); }
};

template <>
struct Arith<double> {
  static constexpr double kPivot = 1e-11;
  static bool negative(double v) { return v < -kPivot; }
  static bool positive(double v) { return v > kPivot; }
  static bool zero(double v) { return std::abs(v) <= kPivot; }
  static double to_double(double v) { return v; }
};

template <class T>
struct Phase1Result {
  std::vector<T> x;
  T objective;  // sum of artificial variables at termination
};

/// Rows of `a` all have `vars` entries. Rows with negative rhs are negated
/// internally.
template <class T>
Phase1Result<T> phase1(std::vector<std::vector<T>> a, std::vector<T> b,
                       std::size_t vars) {
  using A = Arith<T>;
  const std::size_t rows = a.size();
  const std::size_t cols = vars + rows;  // structural + artificial
  std::vector<std::vector<T>> tab(rows, std::vector<T>(cols + 1, T(0)));
  std::vector<std::size_t> basis(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    const bool flip = A::negative(b[i]);
    for (std::size_t j = 0; j < vars; ++j) {
      tab[i][j] = flip ? T(-a[i][j]) : a[i][j];
    }
    tab[i][vars + i] = T(1);
    tab[i][cols] = flip ? T(-b[i]) : b[i];
    basis[i] = vars + i;
  }
  // Reduced costs of min sum(artificials); last entry is -objective.
  std::vector<T> cost(cols + 1, T(0));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < vars; ++j) cost[j] -= tab[i][j];
    cost[cols] -= tab[i][cols];
  }

  for (;;) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (A::negative(cost[j])) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;
    std::size_t leave = rows;
    T best(0);
    for (std::size_t i = 0; i < rows; ++i) {
      if (!A::positive(tab[i][enter])) continue;
      T ratio = tab[i][cols] / tab[i][enter];
      if (leave == rows || ratio < best ||
          (!(best < ratio) && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == rows) break;  // unbounded direction; cannot happen here

    const T pivot = tab[leave][enter];
    for (auto& v : tab[leave]) v /= pivot;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == leave || A::zero(tab[i][enter])) continue;
      const T factor = tab[i][enter];
      for (std::size_t j = 0; j <= cols; ++j) {
        tab[i][j] -= factor * tab[leave][j];
      }
    }
    if (!A::zero(cost[enter])) {
      const T factor = cost[enter];
      for (std::size_t j = 0; j <= cols; ++j) {
        cost[j] -= factor * tab[leave][j];
      }
    }
    basis[leave] = enter;
  }

  Phase1Result<T> out{std::vector<T>(vars, T(0)), T(-cost[cols])};
  for (std::size_t i = 0; i < rows; ++i) {
    if (basis[i] < vars) out.x[basis[i]] = tab[i][cols];
  }
  return out;
}

}  // namespace bsf::detail
