#pragma once

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "haarcp/haarcp.hpp"

namespace haarcp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitInputError = 2;

struct Command {
  std::string verb;
  std::vector<std::string> inputs;
  std::uint64_t seed = 1;
  std::uint64_t samples = 100000;
  std::string threshold = "3/40";
  std::size_t cap = kDefaultClosureCap;
  std::size_t iso_cap = kDefaultIsoCap;
  unsigned workers = 1;
  bool machine = false;
  bool matrix = false;
};

inline const std::vector<std::string> &verbs() {
  static const std::vector<std::string> v{"cp",  "center",    "fc",        "classify", "isoclinic",
                                          "stem", "verify-t1", "verify-t2", "scan",     "mc"};
  return v;
}

/// Closure cap from HAARCP_CAP, or the default.
inline std::size_t cap_from_env() {
  const char *env = std::getenv("HAARCP_CAP");
  if (!env || !*env)
    return kDefaultClosureCap;
  unsigned long v = 0;
  if (!haarcp::detail::parse_unsigned(env, v) || v == 0)
    throw ParseError(0, "HAARCP_CAP must be a positive integer");
  return v;
}

namespace detail {

inline bool is_model_path(const std::string &s) {
  return std::filesystem::path(s).extension() == ".model";
}

inline std::vector<FiniteGroup> parse_groups(const Command &cmd, std::size_t expected) {
  std::vector<FiniteGroup> out;
  std::size_t pos = 0;
  while (pos < cmd.inputs.size())
    out.push_back(resolve_group(cmd.inputs, pos, {}, cmd.cap));
  if (out.size() != expected)
    throw ParseError(0, cmd.verb + " expects " + std::to_string(expected) + " group(s), got " +
                            std::to_string(out.size()));
  return out;
}

inline CompactModel parse_model(const Command &cmd) {
  if (cmd.inputs.size() != 1)
    throw ParseError(0, cmd.verb + " expects one model file");
  return parse_model_file(cmd.inputs[0], cmd.cap);
}

inline std::string display_name(const FiniteGroup &g) {
  return g.name().empty() ? std::string("<unnamed>") : g.name();
}

inline void print_report(std::ostream &out, const Report &r) {
  for (const auto &c : r.checks)
    out << (c.passed ? "PASS  " : "FAIL  ") << c.name
        << (c.detail.empty() ? "" : "  (" + c.detail + ")") << "\n";
  for (const auto &n : r.notes)
    out << "note  " << n << "\n";
}

inline void print_classification(std::ostream &out, const ClassificationResult &c,
                                 const Rational &threshold) {
  out << "cp        " << c.cp_value << "\n";
  out << "solvable  " << (c.solvable ? "yes" : "no") << " (derived length "
      << c.derived_length << ")\n";
  out << "threshold " << threshold << ": cp " << (c.above_threshold ? ">" : "<=") << " "
      << threshold << "\n";
  if (c.a5)
    out << "evidence  |Z| = " << c.a5->center_order << ", G/Z = A5, G' = A5, |G'Z| = "
        << c.a5->product_set_size << "\n";
  out << "verdict   " << to_string(c.verdict) << "\n";
  if (!c.note.empty())
    out << "note      " << c.note << "\n";
}

inline int run_cp(const Command &cmd, std::ostream &out) {
  auto g = parse_groups(cmd, 1)[0];
  Rational a = cp_pair_count(g), b = cp_class_count(g), c = cp_coset_formula(g);
  bool agree = a == b && b == c;
  if (cmd.machine) {
    out << display_name(g) << "|" << g.order() << "|" << a << "|" << b << "|" << c << "|"
        << (agree ? "PASS" : "FAIL") << "\n";
  } else {
    out << "group          " << display_name(g) << " (order " << g.order() << ")\n";
    out << "pair-count     " << a << "\n";
    out << "class-count    " << b << "\n";
    out << "coset-formula  " << c << "\n";
    out << (agree ? "PASS" : "FAIL: algorithms disagree") << "\n";
  }
  return agree ? kExitOk : kExitViolation;
}

inline int run_center(const Command &cmd, std::ostream &out) {
  auto g = parse_groups(cmd, 1)[0];
  Subgroup z = center(g);
  out << "order   " << g.order() << "\n";
  out << "center  " << z.size() << " (index " << g.order() / z.size() << ")\n";
  out << "members";
  for (Index x : z.members())
    out << " " << x;
  out << "\n";
  if (cmd.matrix) {
    auto m = commutation_matrix(g);
    out << "commutation-matrix (sum " << m.sum() << ")\n" << m.serialize();
  }
  return kExitOk;
}

inline int run_fc(const Command &cmd, std::ostream &out) {
  CompactModel model = parse_model(cmd);
  FcDescription fc = fc_center(model);
  out << "torus_rank    " << model.torus_rank() << "\n";
  out << "|Q|           " << model.acting_group().order() << "\n";
  out << "kernel        ";
  for (Index k : fc.kernel_indices)
    out << k << " ";
  out << "\n";
  out << "index         " << fc.index << "\n";
  out << "shadow order  " << fc.finite_shadow.order() << "\n";
  return kExitOk;
}

inline int run_classify(const Command &cmd, std::ostream &out) {
  Rational threshold = Rational::parse(cmd.threshold);
  auto g = parse_groups(cmd, 1)[0];
  ClassificationResult c = classify_high_cp(g, threshold);
  if (cmd.machine) {
    out << display_name(g) << "|" << g.order() << "|" << c.cp_value << "|"
        << (c.solvable ? 1 : 0) << "|" << to_string(c.verdict) << "\n";
  } else {
    out << "group     " << display_name(g) << " (order " << g.order() << ")\n";
    print_classification(out, c, threshold);
  }
  return c.verdict == Verdict::TheoremViolation ? kExitViolation : kExitOk;
}

inline int run_isoclinic(const Command &cmd, std::ostream &out) {
  auto groups = parse_groups(cmd, 2);
  const auto &g = groups[0], &h = groups[1];
  auto w = find_isoclinism(g, h, cmd.iso_cap);
  if (!w) {
    out << display_name(g) << " and " << display_name(h) << " are not isoclinic\n";
    return kExitOk;
  }
  out << display_name(g) << " and " << display_name(h) << " are isoclinic\n";
  out << serialize_witness(g, *w);
  InvarianceReport rep = cp_isoclinism_invariance_check(g, h, *w);
  out << "sum c   " << rep.sum_g << " " << rep.sum_h << "\n";
  out << "cp      " << rep.cp_g << " " << rep.cp_h << "\n";
  out << (rep.holds() ? "PASS" : "FAIL") << "\n";
  return rep.holds() ? kExitOk : kExitViolation;
}

inline int run_stem(const Command &cmd, std::ostream &out) {
  auto f = parse_groups(cmd, 1)[0];
  auto match = find_stem_group(f, builtin_corpus(), cmd.iso_cap);
  if (!match) {
    out << "no stem group for " << display_name(f) << " in the built-in corpus\n";
    return kExitOk;
  }
  Rational a = cp_pair_count(f), b = cp_pair_count(match->group);
  bool ok = a == b && is_stem_group(match->group);
  out << "stem    " << display_name(match->group) << " (order " << match->group.order() << ")\n";
  out << serialize_witness(f, match->witness);
  out << "cp      " << a << " " << b << "\n";
  out << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kExitOk : kExitViolation;
}

inline int run_verify_t1(const Command &cmd, std::ostream &out) {
  CompactModel model = parse_model(cmd);
  Report r = check_theorem1(model, builtin_corpus(), cmd.iso_cap);
  print_report(out, r);
  return r.passed() ? kExitOk : kExitViolation;
}

inline int run_verify_t2(const Command &cmd, std::ostream &out) {
  Rational threshold = Rational::parse(cmd.threshold);
  if (cmd.inputs.size() == 1 && is_model_path(cmd.inputs[0])) {
    CompactModel model = parse_model(cmd);
    Report r = check_theorem2_part1(model);
    ClassificationResult c = classify_model(model, threshold);
    r.checks.push_back({"cp > " + threshold.str() + " implies solvable or A5 x abelian",
                        c.verdict != Verdict::TheoremViolation,
                        "cp = " + c.cp_value.str() + ", " + to_string(c.verdict)});
    print_report(out, r);
    return r.passed() ? kExitOk : kExitViolation;
  }
  auto g = parse_groups(cmd, 1)[0];
  Report r = check_theorem2_part1(g);
  ClassificationResult c = classify_high_cp(g, threshold);
  r.checks.push_back({"cp > " + threshold.str() + " implies solvable or A5 x abelian",
                      c.verdict != Verdict::TheoremViolation,
                      "cp = " + c.cp_value.str() + ", " + to_string(c.verdict)});
  print_report(out, r);
  return r.passed() ? kExitOk : kExitViolation;
}

inline std::vector<FiniteGroup> load_corpus(const Command &cmd) {
  if (cmd.inputs.empty() || (cmd.inputs.size() == 1 && cmd.inputs[0] == "builtin"))
    return builtin_corpus();
  std::vector<FiniteGroup> corpus;
  for (const auto &in : cmd.inputs) {
    std::filesystem::path p(in);
    if (std::filesystem::is_directory(p)) {
      std::vector<std::filesystem::path> files;
      for (const auto &e : std::filesystem::directory_iterator(p))
        if (e.is_regular_file() && e.path().extension() == ".group")
          files.push_back(e.path());
      std::sort(files.begin(), files.end());
      for (const auto &f : files)
        corpus.push_back(parse_group_file(f, cmd.cap));
    } else {
      corpus.push_back(resolve_group(in, {}, cmd.cap));
    }
  }
  return corpus;
}

inline int run_scan(const Command &cmd, std::ostream &out) {
  Rational threshold = Rational::parse(cmd.threshold);
  auto rows = scan_corpus(load_corpus(cmd), threshold);
  out << (cmd.machine ? census_machine(rows) : census_table(rows));
  return census_clean(rows) ? kExitOk : kExitViolation;
}

inline int run_mc(const Command &cmd, std::ostream &out) {
  CompactModel model = parse_model(cmd);
  MonteCarloEstimate est = cp_monte_carlo(model, cmd.samples, cmd.seed, cmd.workers);
  Rational exact = cp_semianalytic(model);
  std::ostringstream line;
  line << std::fixed << std::setprecision(6) << est.estimate << " +- " << est.standard_error;
  double z = est.standard_error > 0 ? (est.estimate - exact.to_double()) / est.standard_error : 0.0;
  out << "estimate  " << line.str() << "  (" << est.hits << "/" << est.samples << ", seed "
      << cmd.seed << ")\n";
  out << "exact     " << exact << "\n";
  std::ostringstream zs;
  zs << std::fixed << std::setprecision(2) << z;
  out << "z-score   " << zs.str() << "\n";
  return kExitOk;
}

} // namespace detail

/// Runs one command. Exit 0 on success, 1 when an exact assertion fails,
/// 2 on malformed input.
inline int run(const Command &cmd, std::ostream &out, std::ostream &err) {
  try {
    const std::string &v = cmd.verb;
    if (v == "cp")
      return detail::run_cp(cmd, out);
    if (v == "center")
      return detail::run_center(cmd, out);
    if (v == "fc")
      return detail::run_fc(cmd, out);
    if (v == "classify")
      return detail::run_classify(cmd, out);
    if (v == "isoclinic")
      return detail::run_isoclinic(cmd, out);
    if (v == "stem")
      return detail::run_stem(cmd, out);
    if (v == "verify-t1")
      return detail::run_verify_t1(cmd, out);
    if (v == "verify-t2")
      return detail::run_verify_t2(cmd, out);
    if (v == "scan")
      return detail::run_scan(cmd, out);
    if (v == "mc")
      return detail::run_mc(cmd, out);
    err << "error: unknown verb '" << v << "'\n";
    return kExitInputError;
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

} // namespace haarcp::cli
