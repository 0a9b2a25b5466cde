#include "bsf/blockset.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "bsf/error.hpp"

namespace bsf {

std::uint64_t IndexVector::parity_mask() const {
  std::uint64_t mask = 0;
  for (int e : entries_) {
    if (e > 0) mask ^= std::uint64_t{1} << (e - 1);
  }
  return mask;
}

std::string IndexVector::str() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out << ',';
    out << entries_[i];
  }
  out << ')';
  return out.str();
}

std::size_t index_count(int n, int t, std::size_t cap) {
  std::size_t count = 1;
  for (int i = 0; i <= t; ++i) {
    count *= static_cast<std::size_t>(n + 1);
    if (count > cap) {
      throw validation_error("(n+1)^(t+1) exceeds the table cap " +
                             std::to_string(cap));
    }
  }
  return count;
}

BlockSet::BlockSet(int n, int t, int dim, std::vector<StateVector> table)
    : n_(n), t_(t), dim_(dim), table_(std::move(table)) {
  if (n < 0 || n > 62 || t < 0) {
    throw validation_error("Block Set: n or t out of range");
  }
  const auto expected = index_count(n, t, static_cast<std::size_t>(-1) / 2);
  if (table_.size() != expected) {
    throw validation_error("Block Set table has " +
                           std::to_string(table_.size()) + " entries, expected " +
                           std::to_string(expected));
  }
  for (const auto& v : table_) {
    if (v.size() != dim) {
      throw validation_error("Block Set entry has dimension " +
                             std::to_string(v.size()) + ", expected " +
                             std::to_string(dim));
    }
  }
}

std::size_t BlockSet::flat_index(const IndexVector& k) const {
  if (k.size() != static_cast<std::size_t>(t_) + 1) {
    throw validation_error("index vector " + k.str() + " has wrong length");
  }
  std::size_t flat = 0;
  for (int e : k) {
    if (e < 0 || e > n_) {
      throw validation_error("index vector " + k.str() + " out of range");
    }
    flat = flat * static_cast<std::size_t>(n_ + 1) +
           static_cast<std::size_t>(e);
  }
  return flat;
}

IndexVector BlockSet::index_vector(std::size_t flat) const {
  std::vector<int> entries(static_cast<std::size_t>(t_) + 1);
  for (int pos = t_; pos >= 0; --pos) {
    entries[static_cast<std::size_t>(pos)] =
        static_cast<int>(flat % static_cast<std::size_t>(n_ + 1));
    flat /= static_cast<std::size_t>(n_ + 1);
  }
  return IndexVector(std::move(entries));
}

std::vector<std::uint64_t> BlockSet::parity_masks() const {
  std::vector<std::uint64_t> masks(table_.size());
  for (std::size_t f = 0; f < table_.size(); ++f) {
    masks[f] = index_vector(f).parity_mask();
  }
  return masks;
}

StateVector BlockSet::total() const {
  StateVector sum = StateVector::Zero(dim_);
  for (const auto& v : table_) sum += v;
  return sum;
}

bool BlockSet::is_real(double tol) const {
  for (const auto& v : table_) {
    if (v.size() && v.imag().cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

BlockSet extract_block_set(const AlgorithmSpec& alg, std::size_t cap) {
  const int n = alg.n();
  const int m = alg.m();
  index_count(n, alg.t(), cap);
  std::vector<StateVector> level{alg.initial()};
  for (int j = 0; j <= alg.t(); ++j) {
    const Matrix u = alg.cumulative(j);
    const Matrix u_dag = u.adjoint();
    std::vector<StateVector> next;
    next.reserve(level.size() * static_cast<std::size_t>(n + 1));
    for (const auto& v : level) {
      const StateVector rotated = u * v;
      for (int i = 0; i <= n; ++i) {
        StateVector block = StateVector::Zero(alg.dim());
        block.segment(i * m, m) = rotated.segment(i * m, m);
        next.push_back(u_dag * block);
      }
    }
    level = std::move(next);
  }
  return BlockSet(n, alg.t(), alg.dim(), std::move(level));
}

StateVector partial_sum(const BlockSet& bs, const IndexVector& prefix) {
  const auto len = prefix.size();
  if (len < 1 || len > static_cast<std::size_t>(bs.t()) + 1) {
    throw validation_error("prefix length must be between 1 and t+1");
  }
  const auto base = static_cast<std::size_t>(bs.n() + 1);
  std::size_t p = 0;
  for (int e : prefix) {
    if (e < 0 || e > bs.n()) {
      throw validation_error("prefix " + prefix.str() + " out of range");
    }
    p = p * base + static_cast<std::size_t>(e);
  }
  std::size_t span = 1;
  for (auto l = len; l < static_cast<std::size_t>(bs.t()) + 1; ++l) {
    span *= base;
  }
  StateVector sum = StateVector::Zero(bs.dim());
  for (std::size_t f = p * span; f < (p + 1) * span; ++f) sum += bs.at(f);
  return sum;
}

namespace {

// sums[L] holds every partial sum with prefix length L (L = 1..t+1), in
// flat prefix order.
std::vector<std::vector<StateVector>> all_partial_sums(const BlockSet& bs) {
  const auto levels = static_cast<std::size_t>(bs.t()) + 1;
  const auto base = static_cast<std::size_t>(bs.n() + 1);
  std::vector<std::vector<StateVector>> sums(levels + 1);
  sums[levels] = bs.table();
  for (auto len = levels; len > 1; --len) {
    const auto& finer = sums[len];
    std::vector<StateVector> coarse(finer.size() / base,
                                    StateVector::Zero(bs.dim()));
    for (std::size_t f = 0; f < finer.size(); ++f) coarse[f / base] += finer[f];
    sums[len - 1] = std::move(coarse);
  }
  return sums;
}

IndexVector prefix_vector(std::size_t p, std::size_t len, int n) {
  std::vector<int> entries(len);
  for (auto pos = len; pos-- > 0;) {
    entries[pos] = static_cast<int>(p % static_cast<std::size_t>(n + 1));
    p /= static_cast<std::size_t>(n + 1);
  }
  return IndexVector(std::move(entries));
}

Matrix columns_of(const std::vector<StateVector>& vs, Eigen::Index dim) {
  Matrix cols(dim, static_cast<Eigen::Index>(vs.size()));
  for (std::size_t c = 0; c < vs.size(); ++c) {
    cols.col(static_cast<Eigen::Index>(c)) = vs[c];
  }
  return cols;
}

// Vectors spanning H(i, j): partial sums of prefix length i+1 ending in j.
std::vector<StateVector> range_generators(
    const std::vector<StateVector>& level, int n, int j) {
  std::vector<StateVector> out;
  const auto base = static_cast<std::size_t>(n + 1);
  for (std::size_t p = static_cast<std::size_t>(j); p < level.size();
       p += base) {
    out.push_back(level[p]);
  }
  return out;
}

}  // namespace

double BlockSetReport::worst_residual() const {
  return std::max({orthogonality.residual, normalization.residual,
                   dimension.residual, index_bound.residual});
}

BlockSetReport verify_block_set(const BlockSet& bs, int m_claim, double tol) {
  BlockSetReport report;
  const int n = bs.n();
  const auto base = static_cast<std::size_t>(n + 1);

  auto& shape = report.index_bound;
  if (m_claim < 1 || bs.dim() != (n + 1) * m_claim) {
    shape.pass = false;
    shape.residual = 1.0;
    shape.detail = "dimension " + std::to_string(bs.dim()) +
                   " != (n+1) * m = " + std::to_string((n + 1) * m_claim);
  }

  const auto sums = all_partial_sums(bs);

  auto& orth = report.orthogonality;
  for (std::size_t len = 1; len < sums.size(); ++len) {
    const auto& level = sums[len];
    for (std::size_t b = 0; b < level.size(); ++b) {
      for (std::size_t c = b + 1; c < level.size(); ++c) {
        if (b % base == c % base) continue;
        const double r = std::abs(level[b].dot(level[c]));
        if (r > orth.residual) {
          orth.residual = r;
          orth.witness = {prefix_vector(b, len, n), prefix_vector(c, len, n)};
        }
      }
    }
  }
  orth.pass = orth.residual <= tol;

  auto& norm = report.normalization;
  double total = 0.0;
  for (const auto& v : bs.table()) total += v.squaredNorm();
  norm.residual = std::abs(total - 1.0);
  norm.pass = norm.residual <= tol;
  norm.detail = "sum of squared norms " + std::to_string(total);

  // Block Set vectors have norm <= 1, so singular values are compared on an
  // absolute scale: the (m+1)-th singular value of each H(i,j) generator
  // matrix is the residual.
  auto& rank = report.dimension;
  for (std::size_t len = 1; len < sums.size(); ++len) {
    for (int j = 0; j <= n; ++j) {
      const auto gens = range_generators(sums[len], n, j);
      if (gens.size() <= static_cast<std::size_t>(m_claim)) continue;
      Eigen::JacobiSVD<Matrix> svd(columns_of(gens, bs.dim()));
      const auto& sv = svd.singularValues();
      if (sv.size() <= m_claim) continue;
      const double r = sv(m_claim);
      if (r > rank.residual) {
        rank.residual = r;
        rank.witness = {IndexVector{static_cast<int>(len) - 1, j}};
        rank.detail = "H(i,j) with (i,j) given as witness";
      }
    }
  }
  rank.pass = rank.residual <= tol;
  return report;
}

StateVector bsf_output_state(const BlockSet& bs, const InputWord& x) {
  if (x.n() != bs.n()) throw validation_error("input length mismatch");
  StateVector out = StateVector::Zero(bs.dim());
  for (std::size_t f = 0; f < bs.size(); ++f) {
    const auto mask = bs.index_vector(f).parity_mask();
    if (std::popcount(x.bits() & mask) & 1) {
      out -= bs.at(f);
    } else {
      out += bs.at(f);
    }
  }
  return out;
}

std::vector<StateVector> all_output_states(const BlockSet& bs, Exec exec,
                                           int input_cap) {
  if (bs.n() > input_cap) {
    throw validation_error("n exceeds the input enumeration cap");
  }
  const auto masks = bs.parity_masks();
  return kernels::signed_sums(bs.table(), masks, bs.n(), exec);
}

GramMatrix bsf_gram(const BlockSet& bs, Exec exec, int input_cap) {
  const auto states = all_output_states(bs, exec, input_cap);
  return kernels::gram_from_states(states, exec);
}

namespace {

// Modified Gram-Schmidt with one re-orthogonalization pass. Returns false
// when the residual is too small to contribute a new direction.
bool append_orthonormal(std::vector<StateVector>& basis, StateVector v,
                        double floor) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis) v -= b * b.dot(v);
  }
  const double norm = v.norm();
  if (norm <= floor) return false;
  basis.push_back(v / norm);
  return true;
}

}  // namespace

AlgorithmSpec reconstruct_algorithm(const BlockSet& bs, int m, double tol) {
  const auto report = verify_block_set(bs, m, tol);
  if (!report.pass()) {
    std::string failed;
    if (!report.orthogonality.pass) failed += " orthogonality";
    if (!report.normalization.pass) failed += " normalization";
    if (!report.dimension.pass) failed += " dimension";
    if (!report.index_bound.pass) failed += " index-bound";
    throw validation_error("not a Block Set for m = " + std::to_string(m) +
                           "; failing axioms:" + failed);
  }
  const int n = bs.n();
  const int dim = bs.dim();
  const auto sums = all_partial_sums(bs);
  const Csop standard = query_register_csop(n, m);

  std::vector<Matrix> cumulative;
  for (int i = 0; i <= bs.t(); ++i) {
    const auto& level = sums[static_cast<std::size_t>(i) + 1];
    // Orthonormalize the H(i,j) generators jointly, j in order, so the
    // resulting ranges are orthogonal to machine precision.
    std::vector<StateVector> basis;
    std::vector<std::vector<StateVector>> per_j(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) {
      const Matrix span =
          orthonormal_basis(columns_of(range_generators(level, n, j), dim), tol);
      for (Eigen::Index c = 0; c < span.cols(); ++c) {
        // Generators whose singular value is below tol carry no direction.
        if (append_orthonormal(basis, span.col(c), 1e-6)) {
          per_j[static_cast<std::size_t>(j)].push_back(basis.back());
        }
      }
    }
    std::vector<StateVector> complement;
    for (int e = 0; e < dim && static_cast<int>(basis.size()) < dim; ++e) {
      if (append_orthonormal(basis, StateVector::Unit(dim, e), 1e-6)) {
        complement.push_back(basis.back());
      }
    }
    std::size_t next_pad = 0;
    Csop ranges;
    for (int j = 0; j <= n; ++j) {
      auto& cols = per_j[static_cast<std::size_t>(j)];
      if (static_cast<int>(cols.size()) > m) {
        throw validation_error("infeasible padding: dim H(" +
                               std::to_string(i) + "," + std::to_string(j) +
                               ") exceeds m");
      }
      while (static_cast<int>(cols.size()) < m) {
        if (next_pad >= complement.size()) {
          throw validation_error("infeasible padding: complement exhausted");
        }
        cols.push_back(complement[next_pad++]);
      }
      ranges.push_back(projector_onto(columns_of(cols, dim)));
    }
    cumulative.push_back(unitary_between_csops(standard, ranges));
  }

  std::vector<Matrix> unitaries{cumulative.front()};
  for (std::size_t i = 1; i < cumulative.size(); ++i) {
    unitaries.push_back(cumulative[i] * cumulative[i - 1].adjoint());
  }
  return AlgorithmSpec(bs.t(), n, m, bs.total(), std::move(unitaries), tol);
}

SignPartition sign_partition(const BlockSet& bs, const InputWord& x,
                             const InputWord& y) {
  SignPartition parts{StateVector::Zero(bs.dim()), StateVector::Zero(bs.dim()),
                      StateVector::Zero(bs.dim()), StateVector::Zero(bs.dim())};
  for (std::size_t f = 0; f < bs.size(); ++f) {
    const auto mask = bs.index_vector(f).parity_mask();
    const bool fx = std::popcount(x.bits() & mask) & 1;
    const bool fy = std::popcount(y.bits() & mask) & 1;
    if (!fx && !fy) parts.kept_both += bs.at(f);
    if (!fx && fy) parts.kept_x_only += bs.at(f);
    if (fx && fy) parts.flipped_both += bs.at(f);
    if (fx && !fy) parts.flipped_x_only += bs.at(f);
  }
  return parts;
}

StateVector plus_component(const BlockSet& bs, const InputWord& x) {
  return (bsf_output_state(bs, x) + bs.total()) / 2.0;
}

StateVector minus_component(const BlockSet& bs, const InputWord& x) {
  return (-bsf_output_state(bs, x) + bs.total()) / 2.0;
}

BlockSet orthogonal_block_set(int n, int t, const std::vector<double>& weights,
                              int* m_out) {
  const auto count = index_count(n, t, kDefaultTableCap);
  if (weights.size() != count) {
    throw validation_error("weights must cover every index vector");
  }
  // m must fit every H(i,j) (one direction per element) and all elements.
  std::vector<std::vector<int>> per_slot(
      static_cast<std::size_t>(t) + 1,
      std::vector<int>(static_cast<std::size_t>(n) + 1, 0));
  int nonzero = 0;
  double total = 0.0;
  const BlockSet shape_probe(n, t, 0, std::vector<StateVector>(count));
  for (std::size_t f = 0; f < count; ++f) {
    if (weights[f] < 0) throw validation_error("negative weight");
    total += weights[f];
    if (weights[f] == 0) continue;
    ++nonzero;
    const auto k = shape_probe.index_vector(f);
    for (std::size_t i = 0; i < k.size(); ++i) {
      ++per_slot[i][static_cast<std::size_t>(k[i])];
    }
  }
  if (std::abs(total - 1.0) > Tolerance::kStructural) {
    throw validation_error("weights must sum to 1");
  }
  int m = (nonzero + n) / (n + 1);
  for (const auto& row : per_slot) {
    for (int c : row) m = std::max(m, c);
  }
  m = std::max(m, 1);
  const int dim = (n + 1) * m;
  std::vector<StateVector> table(count, StateVector::Zero(dim));
  int slot = 0;
  for (std::size_t f = 0; f < count; ++f) {
    if (weights[f] == 0) continue;
    table[f](slot++) = std::sqrt(weights[f]);
  }
  if (m_out) *m_out = m;
  return BlockSet(n, t, dim, std::move(table));
}

}  // namespace bsf
