#include "bsf/lower_bound.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "bsf/error.hpp"

namespace bsf {

namespace {

void require_n(int n, int cap) {
  if (n < 1 || n > cap) {
    throw validation_error("n = " + std::to_string(n) + " outside 1.." +
                           std::to_string(cap));
  }
}

// Next mask with the same popcount (Gosper's hack).
std::uint64_t next_same_popcount(std::uint64_t v) {
  const std::uint64_t c = v & (~v + 1);
  const std::uint64_t r = v + c;
  return (((r ^ v) >> 2) / c) | r;
}

}  // namespace

int CharacterClass::degree() const { return std::popcount(mask); }

int CharacterClass::eval(std::uint64_t x) const {
  return (std::popcount(x & mask) & 1) ? -1 : 1;
}

std::string CharacterClass::str() const {
  std::string s = "{";
  bool first = true;
  for (int i = 1; i <= n; ++i) {
    if (!(mask >> (i - 1) & 1)) continue;
    if (!first) s += ',';
    s += std::to_string(i);
    first = false;
  }
  return s + "}";
}

CharacterClass reduce_character(const std::vector<int>& k, int n) {
  require_n(n, 62);
  CharacterClass c{n, 0};
  for (int e : k) {
    if (e < 0 || e > n) {
      throw validation_error("position " + std::to_string(e) +
                             " outside 0.." + std::to_string(n));
    }
    if (e > 0) c.mask ^= std::uint64_t{1} << (e - 1);
  }
  return c;
}

std::vector<CharacterClass> enumerate_classes(int n, int m) {
  require_n(n, 62);
  if (m < 0) throw validation_error("m must be non-negative");
  const int top = std::min(n, 2 * m);
  if (class_count(n, m) > 50'000'000) {
    throw validation_error("class family too large to enumerate");
  }
  std::vector<CharacterClass> out{{n, 0}};
  for (int d = 1; d <= top; ++d) {
    const std::uint64_t last = ((std::uint64_t{1} << d) - 1) << (n - d);
    for (std::uint64_t v = (std::uint64_t{1} << d) - 1;;
         v = next_same_popcount(v)) {
      out.push_back({n, v});
      if (v == last) break;
    }
  }
  return out;
}

mpz_class binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return out;
}

mpz_class class_count(int n, int k) {
  mpz_class total = 0;
  for (int i = 0; i <= 2 * k; ++i) total += binomial(n, i);
  return total;
}

double correlate(const std::vector<double>& w, const CharacterClass& s,
                 bool normalized) {
  if (w.size() != (std::size_t{1} << s.n)) {
    throw validation_error("table size does not match 2^n");
  }
  double sum = 0.0;
  for (std::size_t x = 0; x < w.size(); ++x) sum += w[x] * s.eval(x);
  return normalized ? sum / std::sqrt(static_cast<double>(w.size())) : sum;
}

mpz_class positive_count(int hamming, int n, int k) {
  if (hamming < 0 || hamming > n) {
    throw validation_error("Hamming weight outside 0..n");
  }
  // A class of size i is positive at x iff it meets x in an even number of
  // positions: i - 2j - rho of them inside x, 2j + rho outside.
  mpz_class total = 0;
  for (int i = 0; i <= 2 * k; ++i) {
    const int rho = i % 2;
    for (int j = 0; 2 * j + rho <= i; ++j) {
      total += binomial(hamming, i - 2 * j - rho) *
               binomial(n - hamming, 2 * j + rho);
    }
  }
  return total;
}

mpz_class positive_count_brute(int hamming, int n, int k) {
  if (hamming < 0 || hamming > n) {
    throw validation_error("Hamming weight outside 0..n");
  }
  const std::uint64_t x = (std::uint64_t{1} << hamming) - 1;
  mpz_class count = 0;
  for (const auto& c : enumerate_classes(n, k)) {
    if (c.eval(x) == 1) ++count;
  }
  return count;
}

GFunction build_g(int n, int k, const std::vector<InputWord>& z) {
  require_n(n, kLowerBoundInputCap);
  if (k < 0) throw validation_error("k must be non-negative");
  const std::size_t inputs = std::size_t{1} << n;
  GFunction g{n, k, std::vector<std::int64_t>(inputs, -1)};
  g.doubled[0] = 2;
  for (const auto& w : z) {
    if (w.n() != n) throw validation_error("Z word has wrong length");
    if (w.bits() == 0) throw validation_error("0^n must not belong to Z");
    g.doubled[w.bits()] = 1;
  }
  const mpz_class total = class_count(n, k);
  std::vector<std::int64_t> by_weight(static_cast<std::size_t>(n) + 1);
  for (int h = 0; h <= n; ++h) {
    by_weight[static_cast<std::size_t>(h)] =
        2 * positive_count(h, n, k) > total ? 2 : 0;
  }
  for (std::size_t x = 1; x < inputs; ++x) {
    if (g.doubled[x] < 0) {
      g.doubled[x] = by_weight[static_cast<std::size_t>(std::popcount(x))];
    }
  }
  return g;
}

std::string mode_name(ThresholdMode mode) {
  return mode == ThresholdMode::Proof ? "proof" : "statement";
}

ThresholdMode parse_mode(const std::string& name) {
  if (name == "proof" || name == "paper-proof") return ThresholdMode::Proof;
  if (name == "statement" || name == "paper-statement") {
    return ThresholdMode::Statement;
  }
  throw validation_error("unknown threshold mode '" + name +
                         "' (expected proof or statement)");
}

std::vector<InputWord> xor_set(const std::vector<std::vector<InputWord>>& parts,
                               const InputWord& y) {
  std::set<std::uint64_t> seen;
  int owner = -1;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    for (const auto& w : parts[p]) {
      if (w.n() != y.n()) throw validation_error("part word has wrong length");
      if (!seen.insert(w.bits()).second) {
        throw validation_error("parts overlap at " + w.str());
      }
      if (w == y) owner = static_cast<int>(p);
    }
  }
  if (owner < 0) throw validation_error("y = " + y.str() + " is in no part");
  std::set<std::uint64_t> z;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    if (static_cast<int>(p) == owner) continue;
    for (const auto& w : parts[p]) z.insert(w.bits() ^ y.bits());
  }
  std::vector<InputWord> out;
  for (auto bits : z) out.emplace_back(y.n(), bits);
  return out;
}

Certificate certificate_value(const std::vector<std::vector<InputWord>>& parts,
                              const InputWord& y, int k, ThresholdMode mode,
                              Exec exec) {
  const int n = y.n();
  require_n(n, kLowerBoundInputCap);
  const auto g = build_g(n, k, xor_set(parts, y));
  const auto classes = enumerate_classes(n, k);
  std::vector<std::uint64_t> masks;
  masks.reserve(classes.size());
  for (const auto& c : classes) masks.push_back(c.mask);

  Certificate cert;
  cert.classes = classes.size();
  const std::int64_t doubled = kernels::character_sum(g.doubled, masks, exec);
  cert.doubled_sum = mpz_class(std::to_string(doubled));
  const double root = std::sqrt(std::ldexp(1.0, n));
  cert.value = static_cast<double>(doubled) / 2.0 / root;
  const mpz_class two_to_n = mpz_class(1) << n;
  if (mode == ThresholdMode::Proof) {
    // U / sqrt(2^n) >= sqrt(2^n)  <=>  2U >= 2^{n+1}.
    cert.threshold = root;
    cert.holds = cert.doubled_sum >= 2 * two_to_n;
  } else {
    // U / sqrt(2^n) >= 1  <=>  U >= 0 and (2U)^2 >= 4 * 2^n.
    cert.threshold = 1.0;
    cert.holds = cert.doubled_sum >= 0 &&
                 cert.doubled_sum * cert.doubled_sum >= 4 * two_to_n;
  }
  return cert;
}

std::vector<double> fourier_coefficients(const std::vector<double>& values,
                                         int n) {
  require_n(n, kLowerBoundInputCap);
  if (values.size() != (std::size_t{1} << n)) {
    throw validation_error("table size does not match 2^n");
  }
  std::vector<double> a = values;
  for (std::size_t len = 1; len < a.size(); len <<= 1) {
    for (std::size_t i = 0; i < a.size(); i += 2 * len) {
      for (std::size_t j = i; j < i + len; ++j) {
        const double u = a[j];
        const double v = a[j + len];
        a[j] = u + v;
        a[j + len] = u - v;
      }
    }
  }
  for (auto& v : a) v /= static_cast<double>(a.size());
  return a;
}

int fourier_degree(const std::vector<double>& values, int n, double tol) {
  const auto coeffs = fourier_coefficients(values, n);
  int degree = -1;
  for (std::size_t s = 0; s < coeffs.size(); ++s) {
    if (std::abs(coeffs[s]) > tol) {
      degree = std::max(degree, std::popcount(s));
    }
  }
  return degree;
}

BinomialComparison example_inequality(int n) {
  if (n < 1) throw validation_error("n must be positive");
  const int k = (4 * n + 9) / 10;
  BinomialComparison c;
  for (int i = 0; i <= k; ++i) c.lhs += binomial(n, 2 * i);
  for (int i = 2 * k; i <= n; ++i) c.rhs += binomial(n, i);
  c.rhs *= 4;
  return c;
}

}  // namespace bsf
