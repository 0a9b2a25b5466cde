#include "bsf/exact_systems.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "bsf/error.hpp"
#include "simplex.hpp"

namespace bsf {

namespace {

int parity_bits(std::uint64_t word, std::uint64_t mask) {
  return std::popcount(word & mask) & 1;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

std::vector<int> split_ints(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw validation_error("bad index list '" + text + "'");
    }
  }
  return out;
}

void validate_sets(int t, int n, const std::vector<InputWord>& x_set,
                   const std::vector<InputWord>& y_set) {
  if (t < 0) throw validation_error("t must be non-negative");
  if (n < 1 || n > 62) throw validation_error("n out of range");
  if (x_set.empty() || y_set.empty()) {
    throw validation_error("X and Y must be nonempty");
  }
  std::set<std::uint64_t> xs;
  for (const auto& x : x_set) {
    if (x.n() != n) throw validation_error("word " + x.str() + " has wrong length");
    xs.insert(x.bits());
  }
  for (const auto& y : y_set) {
    if (y.n() != n) throw validation_error("word " + y.str() + " has wrong length");
    if (xs.count(y.bits())) {
      throw validation_error("X and Y are not disjoint: " + y.str());
    }
  }
}

const Rational kHalf(1, 2);

// All supports of size <= t+1 over {1..n}, by size then lexicographically.
std::vector<CanonicalIndex> canonical_classes(int t, int n) {
  std::vector<CanonicalIndex> out;
  const int length = t + 1;
  for (int size = 0; size <= std::min(length, n); ++size) {
    std::vector<int> combo(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) combo[static_cast<std::size_t>(i)] = i + 1;
    for (;;) {
      out.emplace_back(combo, length);
      if (out.size() > kSystemVariableCap) {
        throw validation_error("canonical variable count exceeds cap " +
                               std::to_string(kSystemVariableCap));
      }
      int pos = size - 1;
      while (pos >= 0 &&
             combo[static_cast<std::size_t>(pos)] == n - size + pos + 1) {
        --pos;
      }
      if (pos < 0) break;
      ++combo[static_cast<std::size_t>(pos)];
      for (int q = pos + 1; q < size; ++q) {
        combo[static_cast<std::size_t>(q)] =
            combo[static_cast<std::size_t>(q - 1)] + 1;
      }
    }
  }
  return out;
}

SystemRow normalization_row(std::size_t count) {
  SystemRow row;
  for (std::size_t v = 0; v < count; ++v) row.coeffs.emplace_back(v, 1);
  row.rhs = 1;
  return row;
}

}  // namespace

CanonicalIndex::CanonicalIndex(std::vector<int> support, int length)
    : support_(std::move(support)), length_(length) {
  std::sort(support_.begin(), support_.end());
  if (std::adjacent_find(support_.begin(), support_.end()) != support_.end()) {
    throw validation_error("canonical support has repeated entries");
  }
  if (!support_.empty() && support_.front() < 1) {
    throw validation_error("canonical support entries must be positive");
  }
  if (static_cast<int>(support_.size()) > length_) {
    throw validation_error("canonical support longer than the index length");
  }
}

IndexVector CanonicalIndex::lift() const {
  std::vector<int> entries(static_cast<std::size_t>(length_) - support_.size(),
                           0);
  entries.insert(entries.end(), support_.begin(), support_.end());
  return IndexVector(std::move(entries));
}

std::uint64_t CanonicalIndex::parity_mask() const {
  std::uint64_t mask = 0;
  for (int e : support_) mask |= std::uint64_t{1} << (e - 1);
  return mask;
}

std::string CanonicalIndex::key() const { return join(lift().entries()); }

CanonicalIndex canonicalize_index(const IndexVector& k) {
  std::vector<int> sorted(k.begin(), k.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> support;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    if (sorted[i] < 0) throw validation_error("negative index entry");
    if (sorted[i] > 0 && (j - i) % 2 == 1) support.push_back(sorted[i]);
    i = j;
  }
  return CanonicalIndex(std::move(support), static_cast<int>(k.size()));
}

CanonicalIndex parse_canonical_key(const std::string& key) {
  const auto entries = split_ints(key);
  if (entries.empty()) throw validation_error("empty canonical key");
  auto canonical = canonicalize_index(IndexVector(entries));
  if (canonical.key() != key) {
    throw validation_error("'" + key + "' is not in canonical form");
  }
  return canonical;
}

std::string flavor_name(SystemFlavor flavor) {
  switch (flavor) {
    case SystemFlavor::Full:
      return "e";
    case SystemFlavor::Hat:
      return "ehat";
    case SystemFlavor::Tilde:
      return "etilde";
  }
  return "";
}

SystemFlavor parse_flavor(const std::string& name) {
  if (name == "e") return SystemFlavor::Full;
  if (name == "ehat") return SystemFlavor::Hat;
  if (name == "etilde") return SystemFlavor::Tilde;
  throw validation_error("unknown system flavor '" + name +
                         "' (expected e, ehat or etilde)");
}

std::size_t ConstraintSystem::index_count() const {
  return bsf::index_count(n, t, kSystemVariableCap);
}

std::string ConstraintSystem::variable_key(std::size_t v) const {
  if (v >= variable_count) throw validation_error("variable out of range");
  if (flavor != SystemFlavor::Full) return classes[v].key();
  const BlockSet shape(n, t, 0,
                       std::vector<StateVector>(index_count()));
  const auto k = shape.index_vector(v / index_count());
  const auto h = shape.index_vector(v % index_count());
  return join(k.entries()) + "|" + join(h.entries());
}

ConstraintSystem build_full_system(int t, int n,
                                   const std::vector<InputWord>& x_set,
                                   const std::vector<InputWord>& y_set) {
  validate_sets(t, n, x_set, y_set);
  const std::size_t count = index_count(n, t, kSystemVariableCap);
  if (count * count > kPairVariableCap) {
    throw validation_error("pair variable count exceeds cap " +
                           std::to_string(kPairVariableCap));
  }
  ConstraintSystem sys;
  sys.flavor = SystemFlavor::Full;
  sys.t = t;
  sys.n = n;
  sys.x_set = x_set;
  sys.y_set = y_set;
  sys.variable_count = count * count;

  const BlockSet shape(n, t, 0, std::vector<StateVector>(count));
  const auto masks = shape.parity_masks();

  // Eq. 20: (P - 2R + Q)_{k,h}[x,y] w_{kh} summed = 1/2.
  std::vector<int> cls(count);
  for (const auto& x : x_set) {
    for (const auto& y : y_set) {
      for (std::size_t k = 0; k < count; ++k) {
        const int px = parity_bits(x.bits(), masks[k]);
        const int py = parity_bits(y.bits(), masks[k]);
        cls[k] = px == py ? px : 2;
      }
      SystemRow row;
      row.rhs = kHalf;
      for (std::size_t k = 0; k < count; ++k) {
        if (cls[k] == 2) continue;
        for (std::size_t h = 0; h < count; ++h) {
          if (cls[h] == 2) continue;
          if (cls[k] == cls[h]) {
            row.coeffs.emplace_back(k * count + h, 1);
          } else if (cls[k] == 0) {
            row.coeffs.emplace_back(k * count + h, -2);
          }
        }
      }
      sys.rows.push_back(std::move(row));
    }
  }

  // Eq. 21: prefix sums with different last entries are orthogonal.
  const auto base = static_cast<std::size_t>(n + 1);
  std::size_t prefixes = 1;
  for (int level = 0; level <= t; ++level) {
    prefixes *= base;
    const std::size_t span = count / prefixes;
    for (std::size_t b = 0; b < prefixes; ++b) {
      for (std::size_t c = 0; c < prefixes; ++c) {
        if (b % base == c % base) continue;
        SystemRow row;
        row.rhs = 0;
        for (std::size_t k = b * span; k < (b + 1) * span; ++k) {
          for (std::size_t h = c * span; h < (c + 1) * span; ++h) {
            row.coeffs.emplace_back(k * count + h, 1);
          }
        }
        sys.rows.push_back(std::move(row));
      }
    }
  }

  // Eq. 22.
  SystemRow norm;
  norm.rhs = 1;
  for (std::size_t k = 0; k < count; ++k) {
    norm.coeffs.emplace_back(k * count + k, 1);
  }
  sys.rows.push_back(std::move(norm));
  return sys;
}

ConstraintSystem build_orthogonal_system(int t, int n,
                                         const std::vector<InputWord>& x_set,
                                         const std::vector<InputWord>& y_set) {
  validate_sets(t, n, x_set, y_set);
  index_count(n, t, kSystemVariableCap);
  ConstraintSystem sys;
  sys.flavor = SystemFlavor::Hat;
  sys.t = t;
  sys.n = n;
  sys.x_set = x_set;
  sys.y_set = y_set;
  sys.classes = canonical_classes(t, n);
  sys.variable_count = sys.classes.size();
  for (const auto& x : x_set) {
    for (const auto& y : y_set) {
      SystemRow row;
      row.rhs = kHalf;
      for (std::size_t v = 0; v < sys.classes.size(); ++v) {
        const auto mask = sys.classes[v].parity_mask();
        if (parity_bits(x.bits(), mask) == parity_bits(y.bits(), mask)) {
          row.coeffs.emplace_back(v, 1);
        }
      }
      sys.rows.push_back(std::move(row));
    }
  }
  sys.rows.push_back(normalization_row(sys.variable_count));
  return sys;
}

ConstraintSystem reduce_to_tilde(const ConstraintSystem& hat) {
  if (hat.flavor != SystemFlavor::Hat) {
    throw validation_error("reduce_to_tilde expects an ehat system");
  }
  ConstraintSystem sys = hat;
  sys.flavor = SystemFlavor::Tilde;
  sys.rows.clear();
  std::set<std::uint64_t> zs;
  for (const auto& x : hat.x_set) {
    for (const auto& y : hat.y_set) zs.insert(x.bits() ^ y.bits());
  }
  for (auto z : zs) {
    SystemRow row;
    row.rhs = kHalf;
    for (std::size_t v = 0; v < sys.classes.size(); ++v) {
      if (!parity_bits(z, sys.classes[v].parity_mask())) {
        row.coeffs.emplace_back(v, 1);
      }
    }
    sys.rows.push_back(std::move(row));
  }
  sys.rows.push_back(normalization_row(sys.variable_count));
  return sys;
}

namespace {

template <class T>
T convert(const Rational& q);

template <>
Rational convert<Rational>(const Rational& q) {
  return q;
}

template <>
double convert<double>(const Rational& q) {
  return q.get_d();
}

template <class T>
detail::Phase1Result<T> run_phase1(const ConstraintSystem& system,
                                   double& trivially_infeasible) {
  // Presolve: drop duplicate rows and all-zero rows.
  std::set<std::string> seen;
  std::vector<std::vector<T>> a;
  std::vector<T> b;
  trivially_infeasible = 0.0;
  for (const auto& row : system.rows) {
    std::vector<Rational> dense(system.variable_count, Rational(0));
    for (const auto& [v, c] : row.coeffs) dense.at(v) += c;
    bool empty = true;
    std::string key;
    for (const auto& c : dense) {
      if (sgn(c) != 0) empty = false;
      key += c.get_str();
      key += ' ';
    }
    key += row.rhs.get_str();
    if (empty) {
      trivially_infeasible += std::abs(row.rhs.get_d());
      continue;
    }
    if (!seen.insert(key).second) continue;
    std::vector<T> converted;
    converted.reserve(dense.size());
    for (const auto& c : dense) converted.push_back(convert<T>(c));
    a.push_back(std::move(converted));
    b.push_back(convert<T>(row.rhs));
  }
  return detail::phase1<T>(std::move(a), std::move(b), system.variable_count);
}

}  // namespace

SolveResult solve_nonnegative(const ConstraintSystem& system, SolveMode mode) {
  if (system.flavor == SystemFlavor::Full) {
    throw validation_error(
        "solve_nonnegative applies to ehat/etilde systems only");
  }
  SolveResult result;
  result.mode = mode;
  double zero_rows = 0.0;
  if (mode == SolveMode::Exact) {
    auto p1 = run_phase1<Rational>(system, zero_rows);
    result.infeasibility = p1.objective.get_d() + zero_rows;
    result.feasible = sgn(p1.objective) == 0 && zero_rows == 0.0;
    if (result.feasible) {
      result.exact = std::move(p1.x);
      for (const auto& q : result.exact) result.weights.push_back(q.get_d());
    }
    return result;
  }
  auto p1 = run_phase1<double>(system, zero_rows);
  result.infeasibility = std::max(0.0, p1.objective) + zero_rows;
  if (zero_rows == 0.0 && p1.objective <= 1e-9) {
    for (auto& v : p1.x) v = std::max(v, 0.0);
    result.feasible = max_violation(system, p1.x) <= 1e-9;
    if (result.feasible) result.weights = std::move(p1.x);
  }
  return result;
}

bool satisfies(const ConstraintSystem& system,
               const std::vector<Rational>& weights) {
  if (weights.size() != system.variable_count) {
    throw validation_error("weight vector does not match the system");
  }
  for (const auto& w : weights) {
    if (sgn(w) < 0) return false;
  }
  for (const auto& row : system.rows) {
    Rational lhs(0);
    for (const auto& [v, c] : row.coeffs) lhs += c * weights[v];
    if (lhs != row.rhs) return false;
  }
  return true;
}

double max_violation(const ConstraintSystem& system,
                     const std::vector<double>& weights) {
  if (weights.size() != system.variable_count) {
    throw validation_error("weight vector does not match the system");
  }
  double worst = 0.0;
  for (const auto& row : system.rows) {
    double lhs = 0.0;
    for (const auto& [v, c] : row.coeffs) lhs += c.get_d() * weights[v];
    worst = std::max(worst, std::abs(lhs - row.rhs.get_d()));
  }
  return worst;
}

std::map<IndexVector, Rational> norms_from_solution(
    const ConstraintSystem& system, const std::vector<Rational>& weights) {
  if (system.flavor == SystemFlavor::Full) {
    throw validation_error("norms_from_solution needs an ehat/etilde system");
  }
  if (weights.size() != system.variable_count) {
    throw validation_error("weight vector does not match the system");
  }
  std::map<IndexVector, Rational> norms;
  for (std::size_t v = 0; v < weights.size(); ++v) {
    if (sgn(weights[v]) != 0) norms[system.classes[v].lift()] = weights[v];
  }
  return norms;
}

std::vector<Rational> weights_for(
    const ConstraintSystem& system,
    const std::vector<std::pair<CanonicalIndex, Rational>>& weights) {
  std::vector<Rational> out(system.variable_count, Rational(0));
  for (const auto& [cls, w] : weights) {
    const auto it =
        std::find(system.classes.begin(), system.classes.end(), cls);
    if (it == system.classes.end()) {
      throw validation_error("class " + cls.key() +
                             " is not a variable of the system");
    }
    out[static_cast<std::size_t>(it - system.classes.begin())] += w;
  }
  return out;
}

GeneralSolutionReport check_general_solution(const ConstraintSystem& system,
                                             const Eigen::MatrixXd& w,
                                             double tol) {
  if (system.flavor != SystemFlavor::Full) {
    throw validation_error("verify-solution expects a full (e) system");
  }
  const auto count = static_cast<Eigen::Index>(system.index_count());
  if (w.rows() != count || w.cols() != count) {
    throw validation_error("W must be " + std::to_string(count) + "x" +
                           std::to_string(count));
  }
  GeneralSolutionReport report;
  for (std::size_t r = 0; r < system.rows.size(); ++r) {
    const auto& row = system.rows[r];
    double lhs = 0.0;
    for (const auto& [v, c] : row.coeffs) {
      lhs += c.get_d() * w(static_cast<Eigen::Index>(v) / count,
                           static_cast<Eigen::Index>(v) % count);
    }
    const double residual = std::abs(lhs - row.rhs.get_d());
    if (residual > report.max_residual) {
      report.max_residual = residual;
      report.worst_row = r;
    }
  }
  report.asymmetry = (w - w.transpose()).cwiseAbs().maxCoeff();
  const Eigen::MatrixXd sym = (w + w.transpose()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym,
                                                     Eigen::EigenvaluesOnly);
  report.min_eigenvalue = eig.eigenvalues().minCoeff();
  report.pass = report.max_residual <= tol && report.asymmetry <= tol &&
                report.min_eigenvalue >= -tol;
  return report;
}

bool verify_general_solution(const ConstraintSystem& system,
                             const Eigen::MatrixXd& w, double tol) {
  return check_general_solution(system, w, tol).pass;
}

void XorFormulaFamily::validate() const {
  if (n < 1 || n > 62) throw validation_error("family n out of range");
  if (terms.empty()) throw validation_error("formula family is empty");
  Rational total(0);
  for (const auto& [k, w] : terms) {
    for (int e : k) {
      if (e < 0 || e > n) {
        throw validation_error("formula " + k.str() + " out of range");
      }
    }
    if (sgn(w) <= 0) throw validation_error("formula weights must be positive");
    total += w;
  }
  if (total != 1) throw validation_error("formula weights must sum to 1");
}

Rational xor_weight_sum(const XorFormulaFamily& family, const InputWord& z) {
  family.validate();
  if (z.n() != family.n) throw validation_error("word length mismatch");
  Rational sum(0);
  for (const auto& [k, w] : family.terms) {
    if (parity_bits(z.bits(), k.parity_mask())) sum += w;
  }
  return sum;
}

bool xor_separation_check(const XorFormulaFamily& family,
                          const std::vector<std::vector<InputWord>>& parts) {
  family.validate();
  std::set<std::uint64_t> seen;
  for (const auto& part : parts) {
    std::set<std::uint64_t> own;
    for (const auto& x : part) {
      if (x.n() != family.n) throw validation_error("word length mismatch");
      own.insert(x.bits());
    }
    for (auto bits : own) {
      if (!seen.insert(bits).second) {
        throw validation_error("parts overlap at " +
                               InputWord(family.n, bits).str());
      }
    }
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      for (const auto& x : parts[i]) {
        for (const auto& y : parts[j]) {
          if (xor_weight_sum(family, x ^ y) != kHalf) return false;
        }
      }
    }
  }
  return true;
}

DjInstance generalized_dj(int n, int t) {
  if (t < 0) throw validation_error("t must be non-negative");
  if (n % 2 != 0 || n <= 2 * t) {
    throw validation_error("generalized_dj requires n even and n > 2t");
  }
  if (n > kDefaultInputCap) {
    throw validation_error("n exceeds the input enumeration cap");
  }
  DjInstance inst;
  inst.family.n = n;
  const auto r = [n](int i) { return (i - 1) % n + 1; };
  for (int i = 1; i <= n; ++i) {
    std::vector<int> k;
    for (int j = i; j <= i + t; ++j) k.push_back(r(j));
    inst.family.terms.emplace_back(IndexVector(std::move(k)), Rational(1, n));
  }
  const std::uint64_t all = (std::uint64_t{1} << n) - 1;
  inst.x_set = {InputWord(n, 0), InputWord(n, all)};
  for (std::uint64_t x = 0; x <= all; ++x) {
    int satisfied = 0;
    for (const auto& term : inst.family.terms) {
      satisfied += parity_bits(x, term.first.parity_mask());
    }
    if (2 * satisfied == n) inst.y_set.emplace_back(n, x);
  }
  return inst;
}

std::vector<std::pair<CanonicalIndex, Rational>> family_weights(
    const XorFormulaFamily& family, int t) {
  family.validate();
  std::map<CanonicalIndex, Rational> merged;
  for (const auto& [k, w] : family.terms) {
    const auto c = canonicalize_index(k);
    if (static_cast<int>(c.support().size()) > t + 1) {
      throw validation_error("formula " + k.str() +
                             " needs more than t+1 queries");
    }
    merged[CanonicalIndex(c.support(), t + 1)] += w;
  }
  return {merged.begin(), merged.end()};
}

}  // namespace bsf
