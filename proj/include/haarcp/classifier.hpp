#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "haarcp/compact.hpp"
#include "haarcp/cp.hpp"
#include "haarcp/group.hpp"
#include "haarcp/isoclinism.hpp"

namespace haarcp {

inline const Rational &five_eighths() {
  static const Rational r(5, 8);
  return r;
}
inline const Rational &three_fortieths() {
  static const Rational r(3, 40);
  return r;
}
inline const Rational &one_quarter() {
  static const Rational r(1, 4);
  return r;
}

enum class Verdict {
  Abelian,
  SolvableNonabelian,
  A5TimesAbelian,
  NonsolvableBelowThreshold,
  TheoremViolation,
};

inline const char *to_string(Verdict v) {
  switch (v) {
  case Verdict::Abelian: return "Abelian";
  case Verdict::SolvableNonabelian: return "SolvableNonabelian";
  case Verdict::A5TimesAbelian: return "A5TimesAbelian";
  case Verdict::NonsolvableBelowThreshold: return "NonsolvableBelowThreshold";
  case Verdict::TheoremViolation: return "THEOREM VIOLATION";
  }
  return "?";
}

/// The three reconstruction checks G/Z = A5, G' = A5, G = G'Z.
struct A5Evidence {
  std::size_t center_order;
  bool quotient_is_a5;
  bool derived_is_a5;
  std::size_t product_set_size; // |G'Z(G)|
};

struct ClassificationResult {
  Verdict verdict;
  Rational cp_value;
  std::size_t derived_length; // steps until the derived series stabilises
  bool solvable;
  std::optional<A5Evidence> a5;
  bool above_threshold;
  std::string note;
};

/// Evidence that G = A5 x Z(G), or nothing.
inline std::optional<A5Evidence> detect_a5_x_abelian(const FiniteGroup &g) {
  if (g.order() % 60 != 0)
    return std::nullopt;
  Subgroup z = center(g);
  if (g.order() / z.size() != 60)
    return std::nullopt;
  Subgroup d = derived_subgroup(g);
  if (d.size() != 60)
    return std::nullopt;
  A5Evidence ev{z.size(), is_a5(quotient(g, z).group), is_a5(subgroup_as_group(g, d).group), 0};
  if (!ev.quotient_is_a5 || !ev.derived_is_a5)
    return std::nullopt;
  std::vector<bool> seen(g.order());
  for (Index x : d.members())
    for (Index y : z.members())
      if (!seen[g.mul(x, y)]) {
        seen[g.mul(x, y)] = true;
        ++ev.product_set_size;
      }
  if (ev.product_set_size != g.order())
    return std::nullopt;
  return ev;
}

/// Exact cp plus the verdict. With cp above `threshold` (3/40 by default)
/// anything other than Abelian, SolvableNonabelian, or A5TimesAbelian is a
/// theorem violation, as is an A5 x abelian group whose cp is not 1/12.
inline ClassificationResult classify_high_cp(const FiniteGroup &g,
                                             const Rational &threshold = three_fortieths()) {
  ClassificationResult r{Verdict::Abelian, cp_pair_count(g), 0, true, std::nullopt, false, {}};
  r.above_threshold = r.cp_value > threshold;
  auto series = derived_series(g);
  r.derived_length = series.size() - 1;
  r.solvable = series.back().is_trivial();
  if (r.cp_value == 1) {
    r.verdict = Verdict::Abelian;
    return r;
  }
  if (r.solvable) {
    r.verdict = Verdict::SolvableNonabelian;
    return r;
  }
  r.a5 = detect_a5_x_abelian(g);
  if (r.a5) {
    r.verdict = r.cp_value == Rational(1, 12) ? Verdict::A5TimesAbelian : Verdict::TheoremViolation;
    if (r.verdict == Verdict::TheoremViolation)
      r.note = "A5 x abelian with cp != 1/12";
    return r;
  }
  if (r.above_threshold) {
    r.verdict = Verdict::TheoremViolation;
    r.note = "non-solvable, not A5 x abelian, cp " + r.cp_value.str() + " > " + threshold.str();
  } else {
    r.verdict = Verdict::NonsolvableBelowThreshold;
  }
  return r;
}

struct Check {
  std::string name;
  bool passed;
  std::string detail;
};

struct Report {
  std::vector<Check> checks;
  std::vector<std::string> notes;
  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check &c) { return c.passed; });
  }
};

/// cp > 1/4 forces G' and G/Z(G) finite. Finite groups satisfy this
/// vacuously.
inline Report check_theorem2_part1(const FiniteGroup &g) {
  Report r;
  r.notes.push_back("finite group " + g.name() + ": G' and G/Z(G) are finite, vacuous pass");
  return r;
}

inline Report check_theorem2_part1(const CompactModel &model) {
  Report r;
  Rational cp = cp_semianalytic(model);
  FcDescription fc = fc_center(model);
  if (cp > one_quarter()) {
    r.checks.push_back({"FC index is 1", fc.index == 1,
                        "cp = " + cp.str() + ", |G:FC(G)| = " + std::to_string(fc.index)});
    // With trivial action the torus is central and G' = (K x L)'.
    const FiniteGroup &shadow = fc.finite_shadow;
    std::size_t derived = derived_subgroup(shadow).size();
    std::size_t central_quotient = shadow.order() / center(shadow).size();
    r.checks.push_back({"G' finite", fc.index == 1,
                        "|G'| = " + std::to_string(derived)});
    r.checks.push_back({"G/Z(G) finite", fc.index == 1,
                        "|G/Z(G)| = " + std::to_string(central_quotient)});
  } else {
    r.notes.push_back("cp = " + cp.str() + " <= 1/4: no assertion");
    if (cp == one_quarter() && fc.index > 1 && model.torus_rank() > 0)
      r.notes.push_back("sharpness: cp = 1/4 exactly with infinite G' (|G:FC(G)| = " +
                        std::to_string(fc.index) + ")");
  }
  return r;
}

/// cp_semianalytic = cp_theorem1, and cp(FC shadow) = cp(H) for a stem group
/// H found in `corpus`. A missing stem is noted, not failed.
inline Report check_theorem1(const CompactModel &model, const std::vector<FiniteGroup> &corpus,
                             std::size_t cap = kDefaultIsoCap) {
  Report r;
  Rational direct = cp_semianalytic(model);
  Rational via_fc = cp_theorem1(model);
  r.checks.push_back({"cp direct = cp(FC)/|G:FC|^2", direct == via_fc,
                      direct.str() + " vs " + via_fc.str()});
  FcDescription fc = fc_center(model);
  std::optional<StemMatch> stem;
  try {
    stem = find_stem_group(fc.finite_shadow, corpus, cap);
  } catch (const Error &e) {
    if (e.kind() != ErrorKind::SearchCapExceeded)
      throw;
    r.notes.push_back(std::string("stem search skipped: ") + e.what());
    return r;
  }
  if (!stem) {
    r.notes.push_back("StemNotInCorpus: no stem group isoclinic to the FC shadow");
    return r;
  }
  Rational cp_shadow = cp_pair_count(fc.finite_shadow);
  Rational cp_stem = cp_pair_count(stem->group);
  r.checks.push_back({"cp(FC) = cp(stem " + stem->group.name() + ")", cp_shadow == cp_stem,
                      cp_shadow.str() + " vs " + cp_stem.str()});
  r.checks.push_back({"stem satisfies Z(H) <= H'", is_stem_group(stem->group), ""});
  return r;
}

/// The high-cp classification for a model (T^d : Q) x L. The torus is an
/// abelian normal subgroup with quotient Q x L, so G is solvable iff Q x L
/// is. A non-solvable model can only be A5 x abelian when the action is
/// trivial, and then G = T^d x (Q x L) with T^d central.
inline ClassificationResult classify_model(const CompactModel &model,
                                           const Rational &threshold = three_fortieths()) {
  ClassificationResult r{Verdict::Abelian, cp_semianalytic(model), 0, true, std::nullopt, false, {}};
  r.above_threshold = r.cp_value > threshold;
  FiniteGroup top = direct_product(model.acting_group(), model.extra_factor());
  auto series = derived_series(top);
  r.derived_length = series.size() - 1;
  r.solvable = series.back().is_trivial();
  if (r.cp_value == 1) {
    r.verdict = Verdict::Abelian;
    return r;
  }
  if (r.solvable) {
    r.verdict = Verdict::SolvableNonabelian;
    return r;
  }
  if (fc_center(model).index == 1)
    r.a5 = detect_a5_x_abelian(top);
  if (r.a5) {
    r.verdict = r.cp_value == Rational(1, 12) ? Verdict::A5TimesAbelian : Verdict::TheoremViolation;
    return r;
  }
  r.verdict = r.above_threshold ? Verdict::TheoremViolation : Verdict::NonsolvableBelowThreshold;
  if (r.above_threshold)
    r.note = "non-solvable model, not A5 x abelian, cp " + r.cp_value.str() + " > " + threshold.str();
  return r;
}

struct CensusRow {
  std::string name;
  std::size_t order;
  Rational cp;
  bool solvable;
  Verdict verdict;
  bool bound_ok; // cp <= 5/8 unless abelian
  std::string error;
};

/// One row per group, ordered by (order, name). Errors are recorded per row
/// and the scan continues.
inline std::vector<CensusRow> scan_corpus(std::vector<FiniteGroup> corpus,
                                          const Rational &threshold = three_fortieths()) {
  std::stable_sort(corpus.begin(), corpus.end(), [](const FiniteGroup &a, const FiniteGroup &b) {
    return a.order() != b.order() ? a.order() < b.order() : a.name() < b.name();
  });
  std::vector<CensusRow> rows;
  for (const auto &g : corpus) {
    CensusRow row{g.name(), g.order(), 0, false, Verdict::TheoremViolation, false, {}};
    try {
      ClassificationResult c = classify_high_cp(g, threshold);
      row.cp = c.cp_value;
      row.solvable = c.solvable;
      row.verdict = c.verdict;
      row.bound_ok = c.verdict == Verdict::Abelian || c.cp_value <= five_eighths();
    } catch (const Error &e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline bool census_clean(const std::vector<CensusRow> &rows) {
  return std::all_of(rows.begin(), rows.end(), [](const CensusRow &r) {
    return r.error.empty() && r.bound_ok && r.verdict != Verdict::TheoremViolation;
  });
}

/// `name|order|cp|solvable|verdict`, one line per row.
inline std::string census_machine(const std::vector<CensusRow> &rows) {
  std::string out;
  for (const auto &r : rows)
    out += r.name + "|" + std::to_string(r.order) + "|" + r.cp.str() + "|" +
           (r.solvable ? "1" : "0") + "|" + (r.error.empty() ? to_string(r.verdict) : "ERROR") +
           "\n";
  return out;
}

inline std::string census_table(const std::vector<CensusRow> &rows) {
  std::size_t wn = 4, wo = 5, wc = 2;
  for (const auto &r : rows) {
    wn = std::max(wn, r.name.size());
    wo = std::max(wo, std::to_string(r.order).size());
    wc = std::max(wc, r.cp.str().size());
  }
  auto pad = [](std::string s, std::size_t w) {
    s.resize(std::max(s.size(), w), ' ');
    return s;
  };
  std::string out = pad("name", wn) + "  " + pad("order", wo) + "  " + pad("cp", wc) +
                    "  solvable  verdict\n";
  for (const auto &r : rows) {
    out += pad(r.name, wn) + "  " + pad(std::to_string(r.order), wo) + "  " +
           pad(r.cp.str(), wc) + "  " + pad(r.solvable ? "yes" : "no", 8) + "  " +
           (r.error.empty() ? to_string(r.verdict) : "ERROR: " + r.error);
    if (!r.bound_ok && r.error.empty())
      out += "  (cp > 5/8)";
    out += "\n";
  }
  return out;
}

} // namespace haarcp
