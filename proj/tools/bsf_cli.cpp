// bsf: command-line front end for the Block Set library.

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bsf/blockset.hpp"
#include "bsf/error.hpp"
#include "bsf/exact_systems.hpp"
#include "bsf/io.hpp"
#include "bsf/lower_bound.hpp"
#include "bsf/masks.hpp"
#include "bsf/qqm.hpp"

namespace {

using bsf::io::Json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNegative = 3;
constexpr int kExitIo = 4;

struct Options {
  bool json = false;
  std::string output;
};

// Short decimal form; -0 prints as 0.
std::string num(double v) {
  if (std::abs(v) < 5e-13) v = 0.0;
  std::ostringstream out;
  out << std::setprecision(6) << v;
  return out.str();
}

std::string num(const bsf::Complex& z) {
  if (std::abs(z.imag()) < 5e-13) return num(z.real());
  std::ostringstream out;
  out << num(z.real()) << (z.imag() < 0 ? "-" : "+") << num(std::abs(z.imag()))
      << "i";
  return out.str();
}

template <class Cell>
void print_rows(std::ostream& out, const std::vector<std::vector<Cell>>& rows,
                const std::vector<std::string>& labels = {}) {
  std::size_t width = 1;
  for (const auto& row : rows) {
    for (const auto& c : row) width = std::max(width, c.size());
  }
  std::size_t label_width = 0;
  for (const auto& l : labels) label_width = std::max(label_width, l.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!labels.empty()) out << std::setw(static_cast<int>(label_width)) << labels[r] << " |";
    for (const auto& c : rows[r]) out << ' ' << std::setw(static_cast<int>(width)) << c;
    out << '\n';
  }
}

std::vector<std::string> input_labels(int n) {
  std::vector<std::string> labels;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    labels.push_back(bsf::InputWord(n, x).str());
  }
  return labels;
}

void print_matrix(std::ostream& out, const bsf::Matrix& m,
                  const std::vector<std::string>& labels = {}) {
  std::vector<std::vector<std::string>> rows;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    std::vector<std::string> row;
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(num(m(r, c)));
    rows.push_back(std::move(row));
  }
  print_rows(out, rows, labels);
}

template <class T>
void print_table(std::ostream& out, const bsf::DenseTable<T>& m,
                 const std::vector<std::string>& labels = {}) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : m) {
    std::vector<std::string> row;
    for (const auto& v : r) {
      if constexpr (std::is_same_v<T, bsf::Rational>) {
        row.push_back(bsf::format_rational(v));
      } else {
        row.push_back(num(v));
      }
    }
    rows.push_back(std::move(row));
  }
  print_rows(out, rows, labels);
}

std::string vec_str(const bsf::StateVector& v) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += num(v(i));
  }
  return s + ")";
}

void emit(const Options& opt, const Json& j, const std::string& human) {
  if (!opt.output.empty()) {
    bsf::io::write_text_file(opt.output, j.dump(2) + "\n");
    if (!opt.json) std::cout << human;
    return;
  }
  std::cout << (opt.json ? j.dump(2) + "\n" : human);
}

std::vector<bsf::InputWord> parse_words(const std::string& list) {
  std::vector<bsf::InputWord> out;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(bsf::InputWord::parse(item));
  }
  return out;
}

std::vector<int> parse_index(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw bsf::validation_error("bad index list '" + text + "'");
    }
  }
  if (out.empty()) throw bsf::validation_error("empty index list");
  return out;
}

// Algorithm or Block Set file, told apart by their fields.
bool is_block_set_file(const Json& j) { return j.contains("entries"); }

// ---------------------------------------------------------------- verbs

int cmd_simulate(const Options& opt, const std::string& path,
                 const std::string& word) {
  const auto alg = bsf::io::load_algorithm_spec(path);
  std::vector<bsf::InputWord> inputs;
  if (!word.empty()) {
    inputs.push_back(bsf::InputWord::parse(word));
  } else {
    const auto states = bsf::all_final_states(alg);
    for (std::uint64_t x = 0; x < states.size(); ++x) {
      inputs.emplace_back(alg.n(), x);
    }
  }
  Json out = Json::array();
  std::ostringstream human;
  for (const auto& x : inputs) {
    const auto s = bsf::run_final_state(alg, x);
    out.push_back(Json{{"x", x.str()}, {"state", bsf::io::to_json(s)}});
    human << x.str() << "  " << vec_str(s) << '\n';
  }
  emit(opt, Json{{"final_states", out}}, human.str());
  return kExitOk;
}

int cmd_extract(const Options& opt, const std::string& path, bool sparse) {
  const auto bs = bsf::extract_block_set(bsf::io::load_algorithm_spec(path));
  std::ostringstream human;
  human << "Block Set: n=" << bs.n() << " t=" << bs.t() << " D=" << bs.dim()
        << '\n';
  for (std::size_t f = 0; f < bs.size(); ++f) {
    if (sparse && bs.at(f).norm() < bsf::io::kSparseDropThreshold) continue;
    human << "Psi" << bs.index_vector(f).str() << " = " << vec_str(bs.at(f))
          << '\n';
  }
  Options o = opt;
  // Extraction is usually piped into verify/reconstruct: JSON unless a file
  // is given.
  if (o.output.empty()) o.json = true;
  emit(o, bsf::io::blockset_to_json(bs, sparse), human.str());
  return kExitOk;
}

Json axiom_json(const bsf::AxiomCheck& a) {
  Json witness = Json::array();
  for (const auto& w : a.witness) witness.push_back(w.entries());
  return Json{{"pass", a.pass},
              {"residual", a.residual},
              {"witness", witness},
              {"detail", a.detail}};
}

int cmd_verify(const Options& opt, const std::string& path, int m, double tol) {
  const auto bs = bsf::io::blockset_from_json(bsf::io::read_json_file(path));
  const auto r = bsf::verify_block_set(bs, m, tol);
  const Json j{{"pass", r.pass()},
               {"orthogonality", axiom_json(r.orthogonality)},
               {"normalization", axiom_json(r.normalization)},
               {"dimension", axiom_json(r.dimension)},
               {"index_bound", axiom_json(r.index_bound)}};
  std::ostringstream human;
  const auto line = [&](const char* name, const bsf::AxiomCheck& a) {
    human << std::left << std::setw(14) << name << (a.pass ? "pass" : "FAIL")
          << "  residual " << num(a.residual);
    for (const auto& w : a.witness) human << ' ' << w.str();
    human << '\n';
  };
  line("orthogonality", r.orthogonality);
  line("normalization", r.normalization);
  line("dimension", r.dimension);
  line("index-bound", r.index_bound);
  human << (r.pass() ? "Block Set: yes" : "Block Set: no") << '\n';
  emit(opt, j, human.str());
  return r.pass() ? kExitOk : kExitNegative;
}

int cmd_reconstruct(const Options& opt, const std::string& path, int m,
                    double tol) {
  const auto bs = bsf::io::blockset_from_json(bsf::io::read_json_file(path));
  const auto alg = bsf::reconstruct_algorithm(bs, m, tol);
  const auto again = bsf::extract_block_set(alg);
  double dev = 0.0;
  for (std::size_t f = 0; f < bs.size(); ++f) {
    dev = std::max(dev, (again.at(f) - bs.at(f)).cwiseAbs().maxCoeff());
  }
  std::ostringstream human;
  human << "reconstructed algorithm: t=" << alg.t() << " n=" << alg.n()
        << " m=" << alg.m() << "; re-extraction deviation " << num(dev) << '\n';
  Options o = opt;
  if (o.output.empty()) o.json = true;
  emit(o, bsf::io::algorithm_to_json(alg), human.str());
  return kExitOk;
}

int cmd_gram(const Options& opt, const std::string& path, int m_claim,
             const std::string& csv_path) {
  const auto file = bsf::io::read_json_file(path);
  std::vector<std::pair<std::string, bsf::GramMatrix>> routes;
  int n = 0;
  std::string skipped;
  std::optional<bsf::BlockSet> bs;
  if (is_block_set_file(file)) {
    bs = bsf::io::blockset_from_json(file);
    if (m_claim > 0) {
      const auto r = bsf::verify_block_set(*bs, m_claim);
      if (!r.pass()) throw bsf::validation_error("input is not a Block Set");
    }
  } else {
    const auto alg = bsf::io::algorithm_from_json(file);
    routes.emplace_back("simulation", bsf::gram_of_final_states(alg));
    bs = bsf::extract_block_set(alg);
  }
  n = bs->n();
  routes.emplace_back("bsf", bsf::bsf_gram(*bs));
  if (bs->is_real()) {
    routes.emplace_back("masks", bsf::gram_via_masks(*bs).cast<bsf::Complex>());
  } else {
    skipped = "masks route skipped: Block Set is complex";
  }
  double dev = 0.0;
  for (std::size_t a = 0; a < routes.size(); ++a) {
    for (std::size_t b = a + 1; b < routes.size(); ++b) {
      dev = std::max(dev,
                     bsf::max_abs_diff(routes[a].second, routes[b].second));
    }
  }
  if (!csv_path.empty()) {
    bsf::io::write_text_file(csv_path, bsf::io::gram_csv(routes.front().second));
  }
  Json j{{"n", n}, {"max_deviation", dev}};
  Json rj = Json::object();
  for (const auto& [name, g] : routes) rj[name] = bsf::io::gram_to_json(g);
  j["routes"] = rj;
  if (!skipped.empty()) j["note"] = skipped;
  std::ostringstream human;
  const auto labels = input_labels(n);
  for (const auto& [name, g] : routes) {
    human << name << ":\n";
    print_matrix(human, g, labels);
  }
  if (!skipped.empty()) human << skipped << '\n';
  human << "max deviation between routes: " << num(dev) << '\n';
  emit(opt, j, human.str());
  return kExitOk;
}

int cmd_masks_dump(const Options& opt, int n, const std::string& k_text,
                   const std::string& h_text, const std::string& kind) {
  const bsf::IndexVector k(parse_index(k_text));
  const bsf::IndexVector h(parse_index(h_text.empty() ? k_text : h_text));
  Eigen::MatrixXi m;
  if (kind == "P") {
    m = bsf::mask_matrix(bsf::MaskKind::P, k, h, n);
  } else if (kind == "Q") {
    m = bsf::mask_matrix(bsf::MaskKind::Q, k, h, n);
  } else if (kind == "R") {
    m = bsf::mask_matrix(bsf::MaskKind::R, k, h, n);
  } else if (kind == "PQ") {
    m = bsf::mask_matrix(bsf::MaskKind::P, k, h, n) +
        bsf::mask_matrix(bsf::MaskKind::Q, k, h, n);
  } else {
    throw bsf::validation_error("unknown mask kind '" + kind +
                                "' (expected P, Q, R or PQ)");
  }
  std::ostringstream csv;
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) csv << ',';
      csv << m(r, c);
      row.push_back(m(r, c));
    }
    csv << '\n';
    rows.push_back(row);
  }
  if (!opt.output.empty()) {
    bsf::io::write_text_file(opt.output, csv.str());
    return kExitOk;
  }
  std::cout << (opt.json ? Json{{"kind", kind},
                                {"k", k.entries()},
                                {"h", h.entries()},
                                {"matrix", rows}}
                                   .dump(2) +
                               "\n"
                         : csv.str());
  return kExitOk;
}

std::pair<std::vector<bsf::InputWord>, std::vector<bsf::InputWord>> read_sets(
    const std::string& sets_path, const std::string& x_list,
    const std::string& y_list) {
  if (!sets_path.empty()) {
    const auto j = bsf::io::read_json_file(sets_path);
    if (!j.contains("X") || !j.contains("Y")) {
      throw bsf::validation_error("schema: sets file needs 'X' and 'Y'");
    }
    return {bsf::io::words_from_json(j.at("X"), "X"),
            bsf::io::words_from_json(j.at("Y"), "Y")};
  }
  return {parse_words(x_list), parse_words(y_list)};
}

bsf::ConstraintSystem build_system(const std::string& flavor, int t, int n,
                                   const std::vector<bsf::InputWord>& xs,
                                   const std::vector<bsf::InputWord>& ys) {
  switch (bsf::parse_flavor(flavor)) {
    case bsf::SystemFlavor::Full:
      return bsf::build_full_system(t, n, xs, ys);
    case bsf::SystemFlavor::Hat:
      return bsf::build_orthogonal_system(t, n, xs, ys);
    case bsf::SystemFlavor::Tilde:
      return bsf::reduce_to_tilde(bsf::build_orthogonal_system(t, n, xs, ys));
  }
  return {};
}

int cmd_build_system(const Options& opt, const std::string& flavor, int t,
                     int n, const std::string& sets, const std::string& xl,
                     const std::string& yl) {
  const auto [xs, ys] = read_sets(sets, xl, yl);
  const auto sys = build_system(flavor, t, n, xs, ys);
  std::ostringstream human;
  human << bsf::flavor_name(sys.flavor) << " system: " << sys.variable_count
        << " variables, " << sys.rows.size() << " rows\n";
  for (const auto& row : sys.rows) {
    bool first = true;
    for (const auto& [v, c] : row.coeffs) {
      human << (first ? "" : " + ");
      if (c != 1) human << bsf::format_rational(c) << '*';
      human << 'w' << '[' << sys.variable_key(v) << ']';
      first = false;
    }
    if (first) human << '0';
    human << " = " << bsf::format_rational(row.rhs) << '\n';
  }
  Options o = opt;
  if (o.output.empty()) o.json = true;
  emit(o, bsf::io::system_to_json(sys), human.str());
  return kExitOk;
}

int cmd_solve(const Options& opt, const std::string& path,
              const std::string& flavor, const std::string& mode) {
  const auto sys = bsf::io::system_from_json(bsf::io::read_json_file(path));
  if (!flavor.empty() && bsf::parse_flavor(flavor) != sys.flavor) {
    throw bsf::validation_error("system file has flavor " +
                                bsf::flavor_name(sys.flavor) + ", not " +
                                flavor);
  }
  bsf::SolveMode solve_mode;
  if (mode == "exact") {
    solve_mode = bsf::SolveMode::Exact;
  } else if (mode == "float") {
    solve_mode = bsf::SolveMode::Float;
  } else {
    throw bsf::validation_error("mode must be exact or float");
  }
  const auto res = bsf::solve_nonnegative(sys, solve_mode);
  Json j{{"feasible", res.feasible}, {"infeasibility", res.infeasibility}};
  std::ostringstream human;
  if (!res.feasible) {
    human << "infeasible (phase-1 residual " << num(res.infeasibility)
          << ")\n";
    emit(opt, j, human.str());
    return kExitNegative;
  }
  std::vector<bsf::Rational> weights = res.exact;
  if (solve_mode == bsf::SolveMode::Float) {
    for (double w : res.weights) weights.emplace_back(w);
  }
  j["solution"] = bsf::io::solution_to_json(sys, weights);
  human << "feasible\n";
  for (std::size_t v = 0; v < weights.size(); ++v) {
    if (sgn(weights[v]) == 0) continue;
    human << "  w[" << sys.variable_key(v) << "] = "
          << (solve_mode == bsf::SolveMode::Exact
                  ? bsf::format_rational(weights[v])
                  : num(res.weights[v]))
          << '\n';
  }
  emit(opt, j, human.str());
  return kExitOk;
}

int cmd_verify_solution(const Options& opt, const std::string& sys_path,
                        const std::string& sol_path, double tol) {
  const auto sys = bsf::io::system_from_json(bsf::io::read_json_file(sys_path));
  const auto sol = bsf::io::read_json_file(sol_path);
  Json j;
  std::ostringstream human;
  bool pass = false;
  if (sys.flavor == bsf::SystemFlavor::Full) {
    const auto w = bsf::io::general_solution_from_json(sys, sol);
    const auto r = bsf::check_general_solution(sys, w, tol);
    pass = r.pass;
    j = Json{{"pass", r.pass},
             {"max_residual", r.max_residual},
             {"worst_row", r.worst_row},
             {"asymmetry", r.asymmetry},
             {"min_eigenvalue", r.min_eigenvalue}};
    human << "equations: max residual " << num(r.max_residual) << " (row "
          << r.worst_row << ")\nsymmetry: " << num(r.asymmetry)
          << "\nmin eigenvalue: " << num(r.min_eigenvalue) << '\n';
  } else {
    const auto weights = bsf::io::solution_from_json(sys, sol);
    pass = bsf::satisfies(sys, weights);
    j = Json{{"pass", pass}};
  }
  human << (pass ? "accepted" : "rejected") << '\n';
  emit(opt, j, human.str());
  return pass ? kExitOk : kExitNegative;
}

int cmd_dj_general(const Options& opt, int n, int t) {
  const auto inst = bsf::generalized_dj(n, t);
  if (inst.y_set.empty()) {
    throw bsf::validation_error(
        "no word has S(x) = n/2 for n=" + std::to_string(n) + ", t=" +
        std::to_string(t) + " (S(x) has the parity of (t+1)|x|); Y is empty");
  }
  const auto hat = bsf::build_orthogonal_system(t, n, inst.x_set, inst.y_set);
  const auto weights =
      bsf::weights_for(hat, bsf::family_weights(inst.family, t));
  const bool substituted = bsf::satisfies(hat, weights);
  const auto solved = bsf::solve_nonnegative(hat);
  const bool separated =
      bsf::xor_separation_check(inst.family, {inst.x_set, inst.y_set});
  Json j{{"n", n},
         {"t", t},
         {"family", bsf::io::family_to_json(inst.family)},
         {"X", bsf::io::words_to_json(inst.x_set)},
         {"Y", bsf::io::words_to_json(inst.y_set)},
         {"certificate",
          {{"ehat_rows", hat.rows.size()},
           {"weights_satisfy_ehat", substituted},
           {"solver_feasible", solved.feasible},
           {"xor_separation", separated}}}};
  std::ostringstream human;
  human << "generalized Deutsch-Jozsa, n=" << n << " t=" << t << " ("
        << t + 1 << " queries)\n";
  for (const auto& [k, w] : inst.family.terms) {
    human << "  w" << k.str() << " = " << bsf::format_rational(w) << '\n';
  }
  human << "X (" << inst.x_set.size() << "):";
  for (const auto& x : inst.x_set) human << ' ' << x.str();
  human << "\nY (" << inst.y_set.size() << "):";
  for (const auto& y : inst.y_set) human << ' ' << y.str();
  human << "\nweights satisfy E^ exactly: " << (substituted ? "yes" : "no")
        << "\nsolver: " << (solved.feasible ? "feasible" : "infeasible")
        << "\nXOR separation: " << (separated ? "yes" : "no") << '\n';
  emit(opt, j, human.str());
  return substituted && separated ? kExitOk : kExitNegative;
}

int cmd_xor_check(const Options& opt, const std::string& family_path,
                  const std::string& parts_path) {
  const auto family =
      bsf::io::family_from_json(bsf::io::read_json_file(family_path));
  const auto parts = bsf::io::parts_from_json(bsf::io::read_json_file(parts_path));
  const bool ok = bsf::xor_separation_check(family, parts);
  Json sums = Json::object();
  std::ostringstream human;
  std::set<std::uint64_t> zs;
  for (std::size_t a = 0; a < parts.size(); ++a) {
    for (std::size_t b = a + 1; b < parts.size(); ++b) {
      for (const auto& x : parts[a]) {
        for (const auto& y : parts[b]) zs.insert(x.bits() ^ y.bits());
      }
    }
  }
  for (auto z : zs) {
    const bsf::InputWord w(family.n, z);
    const auto s = bsf::xor_weight_sum(family, w);
    sums[w.str()] = bsf::format_rational(s);
    human << "S(" << w.str() << ") = " << bsf::format_rational(s) << '\n';
  }
  human << (ok ? "separated" : "not separated") << '\n';
  emit(opt, Json{{"separated", ok}, {"sums", sums}}, human.str());
  return ok ? kExitOk : kExitNegative;
}

int cmd_lower_bound(const Options& opt, const std::string& parts_path, int k,
                    const std::string& mode, const std::string& y_text) {
  const auto parts = bsf::io::parts_from_json(bsf::io::read_json_file(parts_path));
  const auto y = y_text.empty() ? parts.front().front()
                                : bsf::InputWord::parse(y_text);
  const auto m = bsf::parse_mode(mode);
  const auto c = bsf::certificate_value(parts, y, k, m);
  const Json j{{"value", c.value},
               {"threshold", c.threshold},
               {"holds", c.holds},
               {"classes", c.classes},
               {"mode", bsf::mode_name(m)}};
  std::ostringstream human;
  human << "y = " << y.str() << ", k = " << k << ", classes = " << c.classes
        << "\nvalue = " << num(c.value) << "  (unnormalized sum "
        << c.doubled_sum.get_str() << "/2)\nthreshold (" << bsf::mode_name(m)
        << " mode) = " << num(c.threshold) << "\nholds: "
        << (c.holds ? "yes" : "no")
        << "\nnote: the theorem statement uses threshold 1 while its proof "
           "derives sqrt(2^n); select with --mode\n";
  emit(opt, j, human.str());
  return c.holds ? kExitOk : kExitNegative;
}

bsf::Rational snap(double v) {
  // Appendix values are dyadic; snap to 2^-20 after checking the residual.
  const double scaled = std::round(v * 1048576.0);
  if (std::abs(scaled / 1048576.0 - v) > 1e-12) {
    throw bsf::validation_error("value is not dyadic within 1e-12");
  }
  bsf::Rational q(static_cast<long>(scaled), 1048576L);
  q.canonicalize();
  return q;
}

int cmd_appendix_demo(const Options& opt) {
  const auto alg = bsf::deutsch_algorithm();
  const auto bs = bsf::extract_block_set(alg);
  const auto labels = input_labels(2);
  std::ostringstream out;
  out << "== Appendix A: Deutsch's algorithm (t=0, n=2, m=1) ==\n\nU0 =\n";
  print_matrix(out, alg.unitaries().front());
  out << "\nfinal states:\n";
  for (std::uint64_t x = 0; x < 4; ++x) {
    const bsf::InputWord w(2, x);
    out << "  " << w.str() << "  " << vec_str(bsf::run_final_state(alg, w))
        << '\n';
  }
  out << "\nBlock Set:\n";
  for (std::size_t f = 0; f < bs.size(); ++f) {
    out << "  Psi" << bs.index_vector(f).str() << " = " << vec_str(bs.at(f))
        << '\n';
  }
  out << "\nBSF output states:\n";
  for (std::uint64_t x = 0; x < 4; ++x) {
    const bsf::InputWord w(2, x);
    out << "  " << w.str() << "  " << vec_str(bsf::bsf_output_state(bs, w))
        << '\n';
  }
  out << "\nGram matrix (simulation):\n";
  print_matrix(out, bsf::gram_of_final_states(alg, bsf::Exec::Serial), labels);
  out << "\nGram matrix (BSF):\n";
  print_matrix(out, bsf::bsf_gram(bs, bsf::Exec::Serial), labels);

  out << "\n== Appendix B: mask route ==\n";
  std::map<bsf::IndexVector, bsf::Rational> norms;
  Json masks = Json::object();
  for (int i = 0; i <= 2; ++i) {
    const bsf::IndexVector k{i};
    const Eigen::MatrixXi pq = bsf::mask_matrix(bsf::MaskKind::P, k, k, 2) +
                               bsf::mask_matrix(bsf::MaskKind::Q, k, k, 2);
    out << "\nP" << i << i << " + Q" << i << i << " =\n";
    bsf::Matrix as_complex = pq.cast<double>().cast<bsf::Complex>();
    print_matrix(out, as_complex, labels);
    masks[std::to_string(i)] = bsf::io::to_json(as_complex);
    norms[k] = snap(bs.at(k).squaredNorm());
  }
  out << "\nsquared norms:";
  for (const auto& [k, w] : norms) {
    out << ' ' << k.str() << '=' << bsf::format_rational(w);
  }
  const auto m = bsf::orthogonal_mask_sum(norms, 2);
  const auto g = bsf::gram_orthogonal(norms, 2);
  out << "\n\nM =\n";
  print_table(out, m, labels);
  out << "\nG = 2M - J =\n";
  print_table(out, g, labels);

  if (opt.json) {
    const auto rat = [](const bsf::DenseTable<bsf::Rational>& t) {
      Json rows = Json::array();
      for (const auto& r : t) {
        Json row = Json::array();
        for (const auto& v : r) row.push_back(bsf::format_rational(v));
        rows.push_back(row);
      }
      return rows;
    };
    Json entries = Json::array();
    for (std::size_t f = 0; f < bs.size(); ++f) {
      entries.push_back(Json{{"k", bs.index_vector(f).entries()},
                             {"v", bsf::io::to_json(bs.at(f))}});
    }
    std::cout << Json{{"block_set", entries},
                      {"gram", bsf::io::gram_to_json(bsf::bsf_gram(
                                   bs, bsf::Exec::Serial))},
                      {"masks_PQ", masks},
                      {"M", rat(m)},
                      {"G", rat(g)}}
                     .dump(2)
              << '\n';
  } else {
    std::cout << out.str();
  }
  return kExitOk;
}

int cmd_random_algorithm(const Options& opt, int t, int n, int m,
                         std::uint64_t seed, bool real) {
  std::mt19937_64 rng(seed);
  const auto alg = bsf::random_algorithm(t, n, m, rng, real);
  Options o = opt;
  if (o.output.empty()) o.json = true;
  emit(o, bsf::io::algorithm_to_json(alg),
       "random algorithm written (seed " + std::to_string(seed) + ")\n");
  return kExitOk;
}

// Samples random disjoint (X, Y) and reports which admit an orthogonal
// Block Set solution. No completeness claim.
int cmd_explore(const Options& opt, int n, int t, int trials,
                std::uint64_t seed) {
  if (n < 1 || n > 10) throw bsf::validation_error("explore needs 1 <= n <= 10");
  if (trials < 1) throw bsf::validation_error("trials must be positive");
  std::mt19937_64 rng(seed);
  const std::uint64_t inputs = std::uint64_t{1} << n;
  std::uniform_int_distribution<std::uint64_t> pick(0, inputs - 1);
  Json found = Json::array();
  std::ostringstream human;
  int feasible = 0;
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<int> label(inputs, 0);  // 0 unused, 1 X, 2 Y
    std::uniform_int_distribution<int> size(1, std::max<int>(1, inputs / 4));
    std::vector<bsf::InputWord> xs, ys;
    for (auto* set : {&xs, &ys}) {
      const int want = size(rng);
      for (int i = 0; i < want; ++i) {
        const auto w = pick(rng);
        if (label[w]) continue;
        label[w] = set == &xs ? 1 : 2;
        set->emplace_back(n, w);
      }
    }
    if (xs.empty() || ys.empty()) continue;
    const auto sys =
        bsf::reduce_to_tilde(bsf::build_orthogonal_system(t, n, xs, ys));
    const auto res = bsf::solve_nonnegative(sys);
    if (!res.feasible) continue;
    ++feasible;
    found.push_back(Json{{"X", bsf::io::words_to_json(xs)},
                         {"Y", bsf::io::words_to_json(ys)},
                         {"solution", bsf::io::solution_to_json(sys, res.exact)}});
    human << "X:";
    for (const auto& x : xs) human << ' ' << x.str();
    human << "  Y:";
    for (const auto& y : ys) human << ' ' << y.str();
    human << '\n';
  }
  human << feasible << " of " << trials << " sampled pairs admit an exact "
        << t + 1 << "-query orthogonal Block Set\n";
  emit(opt, Json{{"trials", trials}, {"feasible", found}}, human.str());
  return kExitOk;
}

Json error_json(const std::string& kind, const std::string& message) {
  return Json{{"error", kind}, {"message", message}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Block Set formulation of quantum query algorithms"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the verb
  Options opt;
  app.add_flag("--json", opt.json, "machine-readable JSON output");
  app.add_option("-o,--output", opt.output, "write the main artifact here");

  std::string path, path2, word, flavor, mode = "exact", sets, xl, yl, kind = "PQ";
  std::string k_text, h_text, family_path, parts_path, y_text, csv_path;
  std::string lb_mode = "proof";
  int m = 0, n = 0, t = 0, k = 0, trials = 20;
  double tol = bsf::Tolerance::kDerived;
  bool sparse = false, real = false;
  std::uint64_t seed = 1;

  auto* simulate = app.add_subcommand("simulate", "final states of an algorithm");
  simulate->add_option("algorithm", path)->required();
  simulate->add_option("--x", word, "single input word x_n...x_1");

  auto* extract = app.add_subcommand("extract", "extract the Block Set");
  extract->add_option("algorithm", path)->required();
  extract->add_flag("--sparse", sparse, "omit entries with norm < 1e-12");

  auto* verify = app.add_subcommand("verify", "check the Block Set axioms");
  verify->add_option("blockset", path)->required();
  verify->add_option("--m", m, "work-space dimension")->required();
  verify->add_option("--tol", tol);

  auto* reconstruct =
      app.add_subcommand("reconstruct", "algorithm from a Block Set");
  reconstruct->add_option("blockset", path)->required();
  reconstruct->add_option("--m", m)->required();
  reconstruct->add_option("--tol", tol);

  auto* gram = app.add_subcommand("gram", "Gram matrix by every applicable route");
  gram->add_option("input", path, "algorithm or Block Set file")->required();
  gram->add_option("--m", m, "verify a Block Set input against m first");
  gram->add_option("--csv", csv_path, "write the first route as CSV");

  const auto add_mask_options = [&](CLI::App* sub) {
    sub->set_help_flag("--help", "print this help");  // frees -h for --h
    sub->add_option("--n", n)->required();
    sub->add_option("--k", k_text, "index vector, e.g. 1,2")->required();
    sub->add_option("--h", h_text, "defaults to --k");
    sub->add_option("--kind", kind, "P, Q, R or PQ");
  };
  auto* masks_dump = app.add_subcommand("masks-dump", "explicit mask matrix (CSV)");
  add_mask_options(masks_dump);
  auto* masks = app.add_subcommand("masks", "mask matrices");
  auto* masks_dump2 = masks->add_subcommand("dump", "explicit mask matrix (CSV)");
  masks->require_subcommand(1);
  add_mask_options(masks_dump2);

  auto* build = app.add_subcommand("build-system", "build E, E^ or E~");
  build->add_option("--flavor", flavor, "e, ehat or etilde")->required();
  build->add_option("--t", t)->required();
  build->add_option("--n", n)->required();
  build->add_option("--sets", sets, "JSON file with X and Y");
  build->add_option("--X", xl, "comma-separated words");
  build->add_option("--Y", yl, "comma-separated words");

  auto* solve = app.add_subcommand("solve", "nonnegative feasibility of E^/E~");
  solve->add_option("system", path)->required();
  solve->add_option("--flavor", flavor, "expected flavor");
  solve->add_option("--mode", mode, "exact or float");

  auto* verify_sol =
      app.add_subcommand("verify-solution", "check a supplied solution");
  verify_sol->add_option("system", path)->required();
  verify_sol->add_option("solution", path2)->required();
  verify_sol->add_option("--tol", tol);

  auto* dj = app.add_subcommand("dj-general", "generalized Deutsch-Jozsa family");
  dj->add_option("--n", n)->required();
  dj->add_option("--t", t)->required();

  auto* xor_check = app.add_subcommand("xor-check", "XOR-weighted separation");
  xor_check->add_option("--family", family_path)->required();
  xor_check->add_option("--parts", parts_path)->required();

  auto* lower = app.add_subcommand("lower-bound", "lower-bound certificate");
  lower->add_option("--parts", parts_path)->required();
  lower->add_option("--k", k)->required();
  lower->add_option("--mode", lb_mode, "proof or statement");
  lower->add_option("--y", y_text, "defaults to the first word of part 0");

  auto* demo = app.add_subcommand("appendix-demo", "reproduce the worked examples");

  auto* random = app.add_subcommand("random-algorithm", "seeded random algorithm");
  random->add_option("--t", t)->required();
  random->add_option("--n", n)->required();
  random->add_option("--m", m)->required();
  random->add_option("--seed", seed);
  random->add_flag("--real", real);

  auto* explore = app.add_subcommand("explore", "sample (X, Y) pairs for E~");
  explore->add_option("--n", n)->required();
  explore->add_option("--t", t)->required();
  explore->add_option("--trials", trials);
  explore->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << error_json("usage", e.what()).dump() << '\n';
    return kExitValidation;
  }

  try {
    if (*simulate) return cmd_simulate(opt, path, word);
    if (*extract) return cmd_extract(opt, path, sparse);
    if (*verify) return cmd_verify(opt, path, m, tol);
    if (*reconstruct) return cmd_reconstruct(opt, path, m, tol);
    if (*gram) return cmd_gram(opt, path, m, csv_path);
    if (*masks_dump || *masks) return cmd_masks_dump(opt, n, k_text, h_text, kind);
    if (*build) return cmd_build_system(opt, flavor, t, n, sets, xl, yl);
    if (*solve) return cmd_solve(opt, path, flavor, mode);
    if (*verify_sol) return cmd_verify_solution(opt, path, path2, tol);
    if (*dj) return cmd_dj_general(opt, n, t);
    if (*xor_check) return cmd_xor_check(opt, family_path, parts_path);
    if (*lower) return cmd_lower_bound(opt, parts_path, k, lb_mode, y_text);
    if (*demo) return cmd_appendix_demo(opt);
    if (*random) return cmd_random_algorithm(opt, t, n, m, seed, real);
    if (*explore) return cmd_explore(opt, n, t, trials, seed);
  } catch (const bsf::Error& e) {
    switch (e.kind()) {
      case bsf::ErrorKind::Validation:
        std::cerr << error_json("validation", e.what()).dump() << '\n';
        return kExitValidation;
      case bsf::ErrorKind::Infeasible:
        std::cerr << error_json("infeasible", e.what()).dump() << '\n';
        return kExitNegative;
      case bsf::ErrorKind::Io:
        std::cerr << error_json("io", e.what()).dump() << '\n';
        return kExitIo;
    }
  } catch (const std::exception& e) {
    std::cerr << error_json("validation", e.what()).dump() << '\n';
    return kExitValidation;
  }
  return kExitValidation;
}
