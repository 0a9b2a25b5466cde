// Acceptance criteria 1-12. One PASS/FAIL line per criterion; exit status is
// nonzero when any criterion fails.

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "bsf/blockset.hpp"
#include "bsf/exact_systems.hpp"
#include "bsf/lower_bound.hpp"
#include "bsf/masks.hpp"

namespace {

using bsf::InputWord;
using bsf::Rational;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double budget_s,
               const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (budget_s > 0 && secs > budget_s) {
    r.pass = false;
    r.detail += " (over time budget)";
  }
  if (!r.pass) ++failures;
  std::printf("%s %2d %-34s %7.3fs  %s\n", r.pass ? "PASS" : "FAIL", id, name, secs,
              r.detail.c_str());
  std::fflush(stdout);
}

double max_dev(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

std::string fmt(const char* f, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

struct Fixture {
  bsf::AlgorithmSpec alg;
  bsf::BlockSet bs;
};

// 50 seeded real algorithms with n <= 3, t <= 2, m <= 2.
const std::vector<Fixture>& random_fixtures() {
  static const std::vector<Fixture> fixtures = [] {
    std::vector<Fixture> out;
    std::mt19937_64 rng(20240501);
    for (int i = 0; i < 50; ++i) {
      const int n = 1 + i % 3;
      const int t = (i / 3) % 3;
      const int m = 1 + (i / 9) % 2;
      auto alg = bsf::random_algorithm(t, n, m, rng, true);
      auto bs = bsf::extract_block_set(alg);
      out.push_back({std::move(alg), std::move(bs)});
    }
    return out;
  }();
  return fixtures;
}

Outcome c1() {
  const auto alg = bsf::deutsch_algorithm();
  const auto bs = bsf::extract_block_set(alg);
  bsf::StateVector e0 = bsf::StateVector::Zero(3);
  bsf::StateVector e1(3), e2(3);
  e1 << 0.5, 0.5, 0;
  e2 << 0.5, -0.5, 0;
  const double table = std::max({(bs.at(0) - e0).cwiseAbs().maxCoeff(),
                                 (bs.at(1) - e1).cwiseAbs().maxCoeff(),
                                 (bs.at(2) - e2).cwiseAbs().maxCoeff()});
  Eigen::MatrixXcd expected(4, 4);
  expected << 1, 0, 0, -1, 0, 1, -1, 0, 0, -1, 1, 0, -1, 0, 0, 1;
  const double sim = max_dev(bsf::gram_of_final_states(alg, bsf::Exec::Serial), expected);
  const double bsfg = max_dev(bsf::bsf_gram(bs, bsf::Exec::Serial), expected);
  return {table <= 1e-12 && sim <= 1e-9 && bsfg <= 1e-9,
          "table " + fmt("%.1e", table) + ", sim " + fmt("%.1e", sim) + ", bsf " +
              fmt("%.1e", bsfg)};
}

Outcome c2() {
  const int printed[3][4][4] = {
      {{1, 1, 1, 1}, {1, 1, 1, 1}, {1, 1, 1, 1}, {1, 1, 1, 1}},
      {{1, 0, 1, 0}, {0, 1, 0, 1}, {1, 0, 1, 0}, {0, 1, 0, 1}},
      {{1, 1, 0, 0}, {1, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 1, 1}}};
  bool masks_ok = true;
  for (int i = 0; i < 3; ++i) {
    const bsf::IndexVector k{i};
    const Eigen::MatrixXi pq = bsf::mask_matrix(bsf::MaskKind::P, k, k, 2) +
                               bsf::mask_matrix(bsf::MaskKind::Q, k, k, 2);
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) masks_ok = masks_ok && pq(r, c) == printed[i][r][c];
    }
  }
  const Rational h(1, 2);
  const Rational m_printed[4][4] = {
      {1, h, h, 0}, {h, 1, 0, h}, {h, 0, 1, h}, {0, h, h, 1}};
  const int g_printed[4][4] = {{1, 0, 0, -1}, {0, 1, -1, 0}, {0, -1, 1, 0}, {-1, 0, 0, 1}};
  // Squared norms of the Appendix A Block Set, exactly.
  const std::map<bsf::IndexVector, Rational> norms = {
      {bsf::IndexVector{0}, 0}, {bsf::IndexVector{1}, h}, {bsf::IndexVector{2}, h}};
  const auto m = bsf::orthogonal_mask_sum(norms, 2);
  const auto g = bsf::gram_orthogonal(norms, 2);
  bool m_ok = true, g_ok = true;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      m_ok = m_ok && m[r][c] == m_printed[r][c];
      g_ok = g_ok && g[r][c] == g_printed[r][c];
    }
  }
  return {masks_ok && m_ok && g_ok, std::string("masks ") + (masks_ok ? "ok" : "differ") +
                                        ", M " + (m_ok ? "exact" : "differs") + ", G " +
                                        (g_ok ? "exact" : "differs")};
}

Outcome c3() {
  double worst = 0.0;
  for (const auto& f : random_fixtures()) {
    const auto sim = bsf::gram_of_final_states(f.alg);
    const auto viabsf = bsf::bsf_gram(f.bs);
    const Eigen::MatrixXcd viamask = bsf::gram_via_masks(f.bs).cast<bsf::Complex>();
    worst = std::max({worst, max_dev(sim, viabsf), max_dev(sim, viamask),
                      max_dev(viabsf, viamask)});
  }
  return {worst <= 1e-8, "50 algorithms, max deviation " + fmt("%.2e", worst)};
}

Outcome c4() {
  double worst = 0.0;
  int failed = 0;
  for (const auto& f : random_fixtures()) {
    const auto report = bsf::verify_block_set(f.bs, f.alg.m(), 1e-8);
    worst = std::max(worst, report.worst_residual());
    if (!report.pass()) ++failed;
  }
  return {failed == 0 && worst <= 1e-8,
          std::to_string(failed) + " failing, worst residual " + fmt("%.2e", worst)};
}

Outcome c5() {
  std::mt19937_64 rng(7);
  double table = 0.0, gram = 0.0;
  for (int i = 0; i < 20; ++i) {
    const int n = 1 + i % 3;
    const int t = (i / 3) % 2;
    const int m = 1 + (i / 6) % 2;
    const auto alg = bsf::random_algorithm(t, n, m, rng, i % 2 == 0);
    const auto bs = bsf::extract_block_set(alg);
    const auto rebuilt = bsf::reconstruct_algorithm(bs, m);
    const auto again = bsf::extract_block_set(rebuilt);
    for (std::size_t k = 0; k < bs.size(); ++k) {
      table = std::max(table, (again.at(k) - bs.at(k)).cwiseAbs().maxCoeff());
    }
    gram = std::max(gram, max_dev(bsf::gram_of_final_states(alg),
                                  bsf::gram_of_final_states(rebuilt)));
  }
  return {table <= 1e-7 && gram <= 1e-8,
          "table " + fmt("%.2e", table) + ", gram " + fmt("%.2e", gram)};
}

Outcome c6() {
  double ortho = 0.0, formula = 0.0;
  for (const auto& f : random_fixtures()) {
    const int n = f.bs.n();
    const auto states = bsf::all_output_states(f.bs);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
      const InputWord wx(n, x);
      ortho = std::max(ortho, std::abs(bsf::plus_component(f.bs, wx)
                                           .dot(bsf::minus_component(f.bs, wx))));
      for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y) {
        const auto p = bsf::sign_partition(f.bs, wx, InputWord(n, y));
        const double a = p.kept_both.squaredNorm();
        const double c = p.flipped_both.squaredNorm();
        const double ac = p.kept_both.dot(p.flipped_both).real();
        const double g = 2.0 * (a - 2.0 * ac + c) - 1.0;
        formula = std::max(formula, std::abs(g - states[x].dot(states[y])));
      }
    }
  }
  return {ortho <= 1e-9 && formula <= 1e-8,
          "<+|-> " + fmt("%.2e", ortho) + ", Gram formula " + fmt("%.2e", formula)};
}

Outcome c7() {
  int cases = 0;
  std::string vacuous;
  for (int n : {4, 6}) {
    for (int t : {0, 1}) {
      if (n <= 2 * t) continue;
      const auto inst = bsf::generalized_dj(n, t);
      if (inst.y_set.empty()) {
        // Every bit lies in t+1 clauses, so S(x) has the parity of (t+1)|x|;
        // confirm no word has S = n/2 by enumeration, then only the
        // normalization row of E^ remains.
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
          int s = 0;
          for (const auto& term : inst.family.terms) {
            s += std::popcount(x & term.first.parity_mask()) & 1;
          }
          if (2 * s == n) return {false, "Y empty but S(x) = n/2 is reachable"};
        }
        Rational total = 0;
        for (const auto& [c, w] : bsf::family_weights(inst.family, t)) total += w;
        if (total != 1) return {false, "weights do not sum to 1"};
        vacuous += " (n=" + std::to_string(n) + ",t=" + std::to_string(t) + ")";
        continue;
      }
      const auto sys = bsf::build_orthogonal_system(t, n, inst.x_set, inst.y_set);
      const auto w = bsf::weights_for(sys, bsf::family_weights(inst.family, t));
      if (!bsf::satisfies(sys, w)) {
        return {false, "weights violate E^ at n=" + std::to_string(n) + ", t=" +
                           std::to_string(t)};
      }
      const auto g = bsf::gram_orthogonal(bsf::norms_from_solution(sys, w), n);
      for (const auto& x : inst.x_set) {
        for (const auto& y : inst.y_set) {
          if (g[x.bits()][y.bits()] != 0) {
            return {false, "G[" + x.str() + "," + y.str() + "] = " +
                               bsf::format_rational(g[x.bits()][y.bits()])};
          }
        }
      }
      ++cases;
    }
  }
  // Deutsch-Jozsa at n=4, t=0: constant vs every balanced word.
  const auto dj = bsf::generalized_dj(4, 0);
  bool balanced = dj.y_set.size() == 6;
  for (const auto& y : dj.y_set) balanced = balanced && std::popcount(y.bits()) == 2;
  return {balanced, std::to_string(cases) + " (n,t) cases exact" +
                        (vacuous.empty() ? "" : "; Y empty at" + vacuous) +
                        "; DJ n=4 balanced set " + (balanced ? "matches" : "differs")};
}

Outcome c8() {
  std::mt19937_64 rng(88);
  int done = 0, feasible = 0;
  while (done < 20) {
    const int n = 2 + static_cast<int>(rng() % 4);
    const int t = static_cast<int>(rng() % 3);
    std::vector<InputWord> xs, ys;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
      const auto r = rng() % 3;
      if (r == 0) xs.emplace_back(n, x);
      if (r == 1) ys.emplace_back(n, x);
    }
    if (xs.empty() || ys.empty()) continue;
    const auto hat = bsf::build_orthogonal_system(t, n, xs, ys);
    const auto tilde = bsf::reduce_to_tilde(hat);
    const auto a = bsf::solve_nonnegative(hat);
    const auto b = bsf::solve_nonnegative(tilde);
    if (a.feasible != b.feasible) return {false, "feasibility differs on instance " + std::to_string(done)};
    if (a.feasible && !(bsf::satisfies(tilde, a.exact) && bsf::satisfies(hat, b.exact))) {
      return {false, "cross-substitution fails on instance " + std::to_string(done)};
    }
    feasible += a.feasible;
    ++done;
  }
  return {true, "20 instances, " + std::to_string(feasible) + " feasible"};
}

Outcome c9() {
  bsf::XorFormulaFamily f;
  f.n = 3;
  for (const auto& k : {bsf::IndexVector{1, 2}, bsf::IndexVector{1, 3}, bsf::IndexVector{0},
                        bsf::IndexVector{3}}) {
    f.terms.emplace_back(k, Rational(1, 4));
  }
  const auto w = [](const char* s) { return InputWord::parse(s); };
  const bool sep = bsf::xor_separation_check(f, {{w("000")}, {w("001"), w("100"), w("101")}});
  const bool rej = !bsf::xor_separation_check(f, {{w("000")}, {w("010")}});
  return {sep && rej, std::string("separates ") + (sep ? "yes" : "no") + ", rejects 010 " +
                          (rej ? "yes" : "no") + " (S(010) = " +
                          bsf::format_rational(bsf::xor_weight_sum(f, w("010"))) + ")"};
}

Outcome c10() {
  long checked = 0;
  for (int n = 1; n <= 10; ++n) {
    for (int k = 0; k <= n / 2; ++k) {
      for (int h = 0; h <= n; ++h) {
        // Oracle: enumerate masks of popcount <= 2k.
        const std::uint64_t x = h == 0 ? 0 : (std::uint64_t{1} << h) - 1;
        long brute = 0;
        for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
          if (std::popcount(s) <= 2 * k && std::popcount(s & x) % 2 == 0) ++brute;
        }
        if (bsf::positive_count(h, n, k) != brute) {
          return {false, "mismatch at n=" + std::to_string(n) + " k=" + std::to_string(k) +
                             " |x|=" + std::to_string(h)};
        }
        ++checked;
      }
    }
  }
  return {true, std::to_string(checked) + " (n,k,|x|) triples"};
}

Outcome c11() {
  int bad = 0;
  for (int n = 10; n <= 40; ++n) bad += !bsf::example_inequality(n).holds();
  const int n = 10;
  std::vector<std::vector<InputWord>> parts(2);
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    (x == 0 || x == (std::uint64_t{1} << n) - 1 ? parts[0] : parts[1]).emplace_back(n, x);
  }
  const auto cert =
      bsf::certificate_value(parts, InputWord(n, 0), 4, bsf::ThresholdMode::Proof);
  std::string detail = "binomial " + std::to_string(31 - bad) + "/31; certificate n=10 k=4 value " +
                       fmt("%.4f", cert.value) + " vs sqrt(2^10) = " + fmt("%.4f", cert.threshold);
  return {bad == 0 && cert.holds, detail};
}

Outcome c12() {
  const auto x = std::vector<InputWord>{InputWord::parse("00"), InputWord::parse("11")};
  const auto y = std::vector<InputWord>{InputWord::parse("01"), InputWord::parse("10")};
  auto sys = bsf::build_full_system(0, 2, x, y);
  const auto bs = bsf::extract_block_set(bsf::deutsch_algorithm());
  Eigen::MatrixXd w(3, 3);
  for (int k = 0; k < 3; ++k) {
    for (int h = 0; h < 3; ++h) w(k, h) = bs.at(k).dot(bs.at(h)).real();
  }
  const bool accepted = bsf::verify_general_solution(sys, w);
  sys.rows.front().rhs += Rational(1, 10);
  const bool rejected = !bsf::verify_general_solution(sys, w);
  return {accepted && rejected, std::string("accepts ") + (accepted ? "yes" : "no") +
                                    ", rejects perturbed " + (rejected ? "yes" : "no")};
}

}  // namespace

int main() {
  criterion(1, "Deutsch Block Set and Grams", 1, c1);
  criterion(2, "mask dumps, M and G", 1, c2);
  criterion(3, "three-route Gram agreement", 30, c3);
  criterion(4, "Block Set axioms", 0, c4);
  criterion(5, "reconstruction roundtrip", 60, c5);
  criterion(6, "real-case identities", 0, c6);
  criterion(7, "generalized Deutsch-Jozsa", 10, c7);
  criterion(8, "E^ / E~ equivalence", 0, c8);
  criterion(9, "XOR separation example", 0, c9);
  criterion(10, "positive count vs brute force", 10, c10);
  criterion(11, "binomial inequality and certificate", 60, c11);
  criterion(12, "PSD verifier", 0, c12);
  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
