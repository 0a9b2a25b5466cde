#include "bsf/masks.hpp"

#include <bit>
#include <cmath>

#include "bsf/error.hpp"

namespace bsf {

namespace {

int parity_bits(std::uint64_t word, std::uint64_t mask) {
  return std::popcount(word & mask) & 1;
}

void require_entries(const IndexVector& k, int n) {
  for (int e : k) {
    if (e < 0 || e > n) {
      throw validation_error("index vector " + k.str() +
                             " has an entry outside 0.." + std::to_string(n));
    }
  }
}

void require_cap(int n, int cap) {
  if (n < 0 || n > cap) {
    throw validation_error("n = " + std::to_string(n) +
                           " exceeds the input enumeration cap " +
                           std::to_string(cap));
  }
}

bool is_one(double v) { return std::abs(v - 1.0) <= 1e-9; }
bool is_one(const Rational& v) { return v == 1; }

}  // namespace

int parity_of(const IndexVector& k, const InputWord& x) {
  require_entries(k, x.n());
  return parity_bits(x.bits(), k.parity_mask());
}

int mask_entry(MaskKind kind, const IndexVector& k, const IndexVector& h,
               const InputWord& x, const InputWord& y) {
  if (x.n() != y.n()) throw validation_error("inputs differ in length");
  const int kx = parity_of(k, x);
  const int ky = parity_of(k, y);
  const int hx = parity_of(h, x);
  const int hy = parity_of(h, y);
  switch (kind) {
    case MaskKind::P:
      return kx == 0 && ky == 0 && hx == 0 && hy == 0;
    case MaskKind::Q:
      return kx == 1 && ky == 1 && hx == 1 && hy == 1;
    case MaskKind::R:
      return kx == 0 && ky == 0 && hx == 1 && hy == 1;
  }
  return 0;
}

Eigen::MatrixXi mask_matrix(MaskKind kind, const IndexVector& k,
                            const IndexVector& h, int n) {
  require_cap(n, kMaskDumpCap);
  const int inputs = 1 << n;
  Eigen::MatrixXi out(inputs, inputs);
  for (int x = 0; x < inputs; ++x) {
    for (int y = 0; y < inputs; ++y) {
      out(x, y) = mask_entry(kind, k, h, InputWord(n, x), InputWord(n, y));
    }
  }
  return out;
}

Eigen::MatrixXd gram_via_masks(const BlockSet& bs, Exec exec, int input_cap) {
  require_cap(bs.n(), input_cap);
  if (!bs.is_real()) {
    throw validation_error(
        "gram_via_masks requires a real Block Set (max |Im| > 1e-9)");
  }
  const auto count = static_cast<Eigen::Index>(bs.size());
  Eigen::MatrixXd inner(count, count);
  for (Eigen::Index k = 0; k < count; ++k) {
    for (Eigen::Index h = 0; h < count; ++h) {
      inner(k, h) = bs.at(static_cast<std::size_t>(k))
                        .real()
                        .dot(bs.at(static_cast<std::size_t>(h)).real());
    }
  }
  const auto masks = bs.parity_masks();
  return kernels::mask_gram(inner, masks, bs.n(), exec);
}

template <class T>
DenseTable<T> orthogonal_mask_sum(const std::map<IndexVector, T>& norms, int n,
                                  int input_cap) {
  require_cap(n, input_cap);
  const std::size_t inputs = std::size_t{1} << n;
  // (P_kk + Q_kk)[x,y] = 1 iff k has parity 0 at x xor y.
  std::vector<T> by_xor(inputs, T(0));
  for (const auto& [k, w] : norms) {
    require_entries(k, n);
    if (w < 0) throw validation_error("negative norm at " + k.str());
    const auto mask = k.parity_mask();
    for (std::size_t z = 0; z < inputs; ++z) {
      if (!parity_bits(z, mask)) by_xor[z] += w;
    }
  }
  DenseTable<T> m(inputs, std::vector<T>(inputs));
  for (std::size_t x = 0; x < inputs; ++x) {
    for (std::size_t y = 0; y < inputs; ++y) m[x][y] = by_xor[x ^ y];
  }
  return m;
}

template <class T>
DenseTable<T> gram_orthogonal(const std::map<IndexVector, T>& norms, int n,
                              int input_cap) {
  T total(0);
  for (const auto& entry : norms) total += entry.second;
  if (!is_one(total)) throw validation_error("norms do not sum to 1");
  auto g = orthogonal_mask_sum(norms, n, input_cap);
  for (auto& row : g) {
    for (auto& v : row) v = T(2) * v - T(1);
  }
  return g;
}

template DenseTable<double> orthogonal_mask_sum(
    const std::map<IndexVector, double>&, int, int);
template DenseTable<Rational> orthogonal_mask_sum(
    const std::map<IndexVector, Rational>&, int, int);
template DenseTable<double> gram_orthogonal(
    const std::map<IndexVector, double>&, int, int);
template DenseTable<Rational> gram_orthogonal(
    const std::map<IndexVector, Rational>&, int, int);

}  // namespace bsf
