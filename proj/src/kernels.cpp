#include "bsf/kernels.hpp"

#include <bit>

namespace bsf::kernels {

namespace {

inline int parity(std::uint64_t word, std::uint64_t mask) {
  return std::popcount(word & mask) & 1;
}

inline std::complex<double> gram_entry(
    std::span<const Eigen::VectorXcd> states, std::size_t a, std::size_t b) {
  return states[a].dot(states[b]);  // conjugates the left operand
}

// 0: parity 0 at both inputs, 1: parity 1 at both, 2: mixed.
inline int joint_class(std::uint64_t x, std::uint64_t y, std::uint64_t mask) {
  const int px = parity(x, mask);
  const int py = parity(y, mask);
  return px == py ? px : 2;
}

double mask_gram_entry(const Eigen::MatrixXd& inner,
                       std::span<const std::uint64_t> masks, std::uint64_t x,
                       std::uint64_t y, std::vector<int>& cls) {
  const auto count = masks.size();
  for (std::size_t k = 0; k < count; ++k) cls[k] = joint_class(x, y, masks[k]);
  double acc = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    if (cls[k] == 2) continue;
    for (std::size_t h = 0; h < count; ++h) {
      if (cls[h] == 2) continue;
      const double w = inner(static_cast<Eigen::Index>(k),
                             static_cast<Eigen::Index>(h));
      if (cls[k] == cls[h]) {
        acc += w;  // P or Q mask
      } else if (cls[k] == 0) {
        acc -= 2.0 * w;  // R mask: parity 0 at k, 1 at h
      }
    }
  }
  return 2.0 * acc - 1.0;
}

}  // namespace

Eigen::MatrixXcd gram_from_states(std::span<const Eigen::VectorXcd> states,
                                  Exec exec) {
  const auto count = static_cast<std::int64_t>(states.size());
  Eigen::MatrixXcd g(count, count);
  if (exec == Exec::Serial) {
    for (std::int64_t a = 0; a < count; ++a) {
      for (std::int64_t b = 0; b < count; ++b) {
        g(a, b) = gram_entry(states, static_cast<std::size_t>(a),
                             static_cast<std::size_t>(b));
      }
    }
    return g;
  }
#pragma omp parallel for schedule(static)
  for (std::int64_t a = 0; a < count; ++a) {
    for (std::int64_t b = 0; b < count; ++b) {
      g(a, b) = gram_entry(states, static_cast<std::size_t>(a),
                           static_cast<std::size_t>(b));
    }
  }
  return g;
}

Eigen::MatrixXd mask_gram(const Eigen::MatrixXd& inner,
                          std::span<const std::uint64_t> parity_masks, int n,
                          Exec exec) {
  const std::int64_t inputs = std::int64_t{1} << n;
  Eigen::MatrixXd g(inputs, inputs);
  if (exec == Exec::Serial) {
    std::vector<int> cls(parity_masks.size());
    for (std::int64_t x = 0; x < inputs; ++x) {
      for (std::int64_t y = 0; y < inputs; ++y) {
        g(x, y) = mask_gram_entry(inner, parity_masks,
                                  static_cast<std::uint64_t>(x),
                                  static_cast<std::uint64_t>(y), cls);
      }
    }
    return g;
  }
#pragma omp parallel
  {
    std::vector<int> cls(parity_masks.size());
#pragma omp for schedule(dynamic)
    for (std::int64_t x = 0; x < inputs; ++x) {
      for (std::int64_t y = 0; y < inputs; ++y) {
        g(x, y) = mask_gram_entry(inner, parity_masks,
                                  static_cast<std::uint64_t>(x),
                                  static_cast<std::uint64_t>(y), cls);
      }
    }
  }
  return g;
}

std::int64_t character_sum(std::span<const std::int64_t> values,
                           std::span<const std::uint64_t> class_masks,
                           Exec exec) {
  const auto classes = static_cast<std::int64_t>(class_masks.size());
  const auto inputs = static_cast<std::int64_t>(values.size());
  std::int64_t total = 0;
  if (exec == Exec::Serial) {
    for (std::int64_t c = 0; c < classes; ++c) {
      const auto mask = class_masks[static_cast<std::size_t>(c)];
      for (std::int64_t x = 0; x < inputs; ++x) {
        const auto v = values[static_cast<std::size_t>(x)];
        total += parity(static_cast<std::uint64_t>(x), mask) ? -v : v;
      }
    }
    return total;
  }
#pragma omp parallel for reduction(+ : total) schedule(static)
  for (std::int64_t c = 0; c < classes; ++c) {
    const auto mask = class_masks[static_cast<std::size_t>(c)];
    for (std::int64_t x = 0; x < inputs; ++x) {
      const auto v = values[static_cast<std::size_t>(x)];
      total += parity(static_cast<std::uint64_t>(x), mask) ? -v : v;
    }
  }
  return total;
}

std::vector<Eigen::VectorXcd> signed_sums(
    std::span<const Eigen::VectorXcd> table,
    std::span<const std::uint64_t> parity_masks, int n, Exec exec) {
  const std::int64_t inputs = std::int64_t{1} << n;
  const Eigen::Index dim = table.empty() ? 0 : table.front().size();
  std::vector<Eigen::VectorXcd> out(static_cast<std::size_t>(inputs),
                                    Eigen::VectorXcd::Zero(dim));
  auto one = [&](std::int64_t x) {
    auto& acc = out[static_cast<std::size_t>(x)];
    for (std::size_t k = 0; k < table.size(); ++k) {
      if (parity(static_cast<std::uint64_t>(x), parity_masks[k])) {
        acc -= table[k];
      } else {
        acc += table[k];
      }
    }
  };
  if (exec == Exec::Serial) {
    for (std::int64_t x = 0; x < inputs; ++x) one(x);
    return out;
  }
#pragma omp parallel for schedule(static)
  for (std::int64_t x = 0; x < inputs; ++x) one(x);
  return out;
}

}  // namespace bsf::kernels
