#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "haarcp/group.hpp"
#include "haarcp/rational.hpp"

namespace haarcp {

/// 0/1 table c[l][k] = 1 iff central-coset representatives x_l, x_k commute.
class CommutationMatrix {
public:
  CommutationMatrix(std::size_t dimension, std::vector<std::uint8_t> entries,
                    Transversal transversal)
      : dimension_(dimension), entries_(std::move(entries)),
        transversal_(std::move(transversal)) {}

  std::size_t dimension() const { return dimension_; }
  bool operator()(std::size_t l, std::size_t k) const {
    return entries_[l * dimension_ + k] != 0;
  }
  const Transversal &transversal() const { return transversal_; }

  /// Number of commuting representative pairs, sum over all c[l][k].
  std::size_t sum() const {
    std::size_t s = 0;
    for (auto e : entries_)
      s += e;
    return s;
  }

  std::vector<std::size_t> row_sums() const {
    std::vector<std::size_t> rows(dimension_);
    for (std::size_t l = 0; l < dimension_; ++l)
      for (std::size_t k = 0; k < dimension_; ++k)
        rows[l] += entries_[l * dimension_ + k];
    return rows;
  }

  bool is_symmetric() const {
    for (std::size_t l = 0; l < dimension_; ++l)
      for (std::size_t k = l + 1; k < dimension_; ++k)
        if ((*this)(l, k) != (*this)(k, l))
          return false;
    return true;
  }

  bool has_unit_diagonal() const {
    for (std::size_t l = 0; l < dimension_; ++l)
      if (!(*this)(l, l))
        return false;
    return true;
  }

  /// Dimension on the first line, then one row of '0'/'1' characters per line.
  std::string serialize() const {
    std::string out = std::to_string(dimension_) + "\n";
    for (std::size_t l = 0; l < dimension_; ++l) {
      for (std::size_t k = 0; k < dimension_; ++k)
        out += (*this)(l, k) ? '1' : '0';
      out += '\n';
    }
    return out;
  }

private:
  std::size_t dimension_;
  std::vector<std::uint8_t> entries_;
  Transversal transversal_;
};

/// Builds a transversal from caller-chosen representatives; DomainMismatch
/// unless they hit every left coset of H exactly once.
inline Transversal transversal_from_reps(const FiniteGroup &g, const Subgroup &h,
                                         std::vector<Index> reps) {
  require_same_group(g, h);
  Transversal t{h, std::move(reps), std::vector<Index>(g.order(), kUnmapped)};
  if (t.reps.size() * h.size() != g.order())
    throw Error(ErrorKind::DomainMismatch, "wrong number of coset representatives");
  for (Index pos = 0; pos < t.reps.size(); ++pos) {
    if (t.reps[pos] >= g.order())
      throw Error(ErrorKind::IndexOutOfRange, "representative out of range");
    for (Index y : h.members()) {
      Index x = g.mul(t.reps[pos], y);
      if (t.coset_of[x] != kUnmapped)
        throw Error(ErrorKind::DomainMismatch, "two representatives share a coset");
      t.coset_of[x] = pos;
    }
  }
  return t;
}

/// |{(x, y) : xy = yx}| / |G|^2, counted directly from the Cayley table.
inline Rational cp_pair_count(const FiniteGroup &g) {
  const auto n = static_cast<Index>(g.order());
  std::uint64_t pairs = n; // diagonal
  for (Index x = 0; x < n; ++x)
    for (Index y = x + 1; y < n; ++y)
      if (g.commute(x, y))
        pairs += 2;
  return Rational(BigInt(pairs), BigInt(std::uint64_t(n) * n));
}

/// k(G) / |G|, with k(G) the number of conjugacy classes.
inline Rational cp_class_count(const FiniteGroup &g) {
  return Rational(BigInt(conjugacy_classes(g).size()), BigInt(g.order()));
}

/// CenterMismatch unless `z` is the center of `g` and `t` a transversal of it.
inline CommutationMatrix commutation_matrix(const FiniteGroup &g, const Subgroup &z,
                                            const Transversal &t) {
  require_same_group(g, z);
  if (!(z == center(g)))
    throw Error(ErrorKind::CenterMismatch, "subgroup is not the center");
  if (!(t.subgroup == z) || t.reps.size() * z.size() != g.order())
    throw Error(ErrorKind::CenterMismatch, "transversal is not over the center");
  const std::size_t m = t.reps.size();
  std::vector<std::uint8_t> entries(m * m);
  for (std::size_t l = 0; l < m; ++l)
    for (std::size_t k = 0; k < m; ++k)
      entries[l * m + k] = g.commute(t.reps[l], t.reps[k]) ? 1 : 0;
  return CommutationMatrix(m, std::move(entries), t);
}

inline CommutationMatrix commutation_matrix(const FiniteGroup &g) {
  Subgroup z = center(g);
  return commutation_matrix(g, z, left_transversal(g, z));
}

/// sum(c) / |G:Z|^2 over the given transversal of the center.
inline Rational cp_coset_formula(const FiniteGroup &g, const Transversal &t) {
  CommutationMatrix c = commutation_matrix(g, t.subgroup, t);
  const std::uint64_t m = c.dimension();
  return Rational(BigInt(c.sum()), BigInt(m * m));
}

inline Rational cp_coset_formula(const FiniteGroup &g) {
  Subgroup z = center(g);
  return cp_coset_formula(g, left_transversal(g, z));
}

/// cp(F) / |G:F|^2. This equals cp(G) when F is the FC-center; for an
/// arbitrary subgroup containing Z(G) it generally does not.
inline Rational cp_fc_reduction(const FiniteGroup &g, const Subgroup &f) {
  require_same_group(g, f);
  if (!center(g).is_subset_of(f))
    throw Error(ErrorKind::CenterNotContained, "subgroup does not contain the center");
  const std::uint64_t index = g.order() / f.size();
  return cp_pair_count(subgroup_as_group(g, f).group) / Rational(BigInt(index * index), 1);
}

} // namespace haarcp
