#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "haarcp/cp.hpp"
#include "haarcp/group.hpp"

namespace haarcp {

/// Hall isoclinism G ~ H.
///
/// `alpha[a]` is the coset of H/Z(H) assigned to coset `a` of G/Z(G), both
/// numbered as by quotient(). `beta[i]` is the image in H of the i-th member
/// (sorted) of G'.
struct IsoclinismWitness {
  std::vector<Index> alpha;
  std::vector<Index> beta;
};

/// Center, central quotient, and derived subgroup of one group.
struct CentralData {
  Subgroup z;
  Quotient q;
  Subgroup derived;
  std::vector<Index> derived_pos; // element -> position in derived.members()

  explicit CentralData(const FiniteGroup &g)
      : z(center(g)), q(quotient(g, z)), derived(derived_subgroup(g)),
        derived_pos(g.order(), kUnmapped) {
    for (Index i = 0; i < derived.size(); ++i)
      derived_pos[derived.members()[i]] = i;
  }
};

inline IsoclinismWitness identity_witness(const FiniteGroup &g) {
  CentralData dg(g);
  IsoclinismWitness w;
  for (Index a = 0; a < dg.q.group.order(); ++a)
    w.alpha.push_back(a);
  w.beta = dg.derived.members();
  return w;
}

/// Full check: alpha and beta are isomorphisms and [x', y'] = beta([x, y])
/// for every pair of cosets with canonical representatives, plus `rechecks`
/// random pairs with randomly chosen representatives on both sides.
/// DomainMismatch when the maps do not fit G; false when H does not fit.
inline bool verify_isoclinism(const FiniteGroup &g, const FiniteGroup &h,
                              const CentralData &dg, const CentralData &dh,
                              const IsoclinismWitness &w, unsigned rechecks = 32,
                              std::uint64_t seed = 0x15c11) {
  if (w.alpha.size() != dg.q.group.order() || w.beta.size() != dg.derived.size())
    throw Error(ErrorKind::DomainMismatch, "witness maps do not match the first group");
  if (dh.q.group.order() != dg.q.group.order() || dh.derived.size() != dg.derived.size())
    return false;
  if (!is_isomorphism(dg.q.group, dh.q.group, w.alpha))
    return false;

  // beta: bijection G' -> H' and multiplicative.
  std::vector<bool> hit(h.order());
  for (Index y : w.beta) {
    if (y >= h.order() || !dh.derived.contains(y) || hit[y])
      return false;
    hit[y] = true;
  }
  const auto &dm = dg.derived.members();
  for (Index i = 0; i < dm.size(); ++i)
    for (Index j = 0; j < dm.size(); ++j)
      if (w.beta[dg.derived_pos[g.mul(dm[i], dm[j])]] != h.mul(w.beta[i], w.beta[j]))
        return false;

  auto compatible = [&](Index x, Index y, Index xh, Index yh) {
    return h.commutator(xh, yh) == w.beta[dg.derived_pos[g.commutator(x, y)]];
  };
  const std::size_t m = dg.q.reps.size();
  for (Index a = 0; a < m; ++a)
    for (Index b = 0; b < m; ++b)
      if (!compatible(dg.q.reps[a], dg.q.reps[b], dh.q.reps[w.alpha[a]],
                      dh.q.reps[w.alpha[b]]))
        return false;

  std::mt19937_64 rng(seed);
  auto pick = [&](const std::vector<Index> &v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
  };
  for (unsigned t = 0; t < rechecks; ++t) {
    Index a = static_cast<Index>(std::uniform_int_distribution<std::size_t>(0, m - 1)(rng));
    Index b = static_cast<Index>(std::uniform_int_distribution<std::size_t>(0, m - 1)(rng));
    Index x = g.mul(dg.q.reps[a], pick(dg.z.members()));
    Index y = g.mul(dg.q.reps[b], pick(dg.z.members()));
    Index xh = h.mul(dh.q.reps[w.alpha[a]], pick(dh.z.members()));
    Index yh = h.mul(dh.q.reps[w.alpha[b]], pick(dh.z.members()));
    if (!compatible(x, y, xh, yh))
      return false;
  }
  return true;
}

inline bool verify_isoclinism(const FiniteGroup &g, const FiniteGroup &h,
                              const IsoclinismWitness &w, unsigned rechecks = 32,
                              std::uint64_t seed = 0x15c11) {
  return verify_isoclinism(g, h, CentralData(g), CentralData(h), w, rechecks, seed);
}

/// Searches over isomorphisms alpha of the central quotients; for each one
/// beta is forced on commutators and extended to G' as a homomorphism. The
/// first candidate passing verify_isoclinism is returned.
inline std::optional<IsoclinismWitness> find_isoclinism(const FiniteGroup &g,
                                                        const FiniteGroup &h,
                                                        std::size_t cap = kDefaultIsoCap) {
  CentralData dg(g), dh(h);
  if (dg.q.group.order() > cap || dh.q.group.order() > cap)
    throw Error(ErrorKind::SearchCapExceeded,
                "central quotient exceeds search cap " + std::to_string(cap));
  if (dg.q.group.order() != dh.q.group.order() || dg.derived.size() != dh.derived.size())
    return std::nullopt;
  if (dg.derived.size() <= cap && dh.derived.size() <= cap &&
      !find_isomorphism(subgroup_as_group(g, dg.derived).group,
                        subgroup_as_group(h, dh.derived).group, cap))
    return std::nullopt;

  std::optional<IsoclinismWitness> found;
  const std::size_t m = dg.q.reps.size();
  for_each_isomorphism(
      dg.q.group, dh.q.group,
      [&](const std::vector<Index> &alpha) {
        std::vector<Index> forced(g.order(), kUnmapped);
        std::vector<Index> gens, images;
        for (Index a = 0; a < m; ++a)
          for (Index b = 0; b < m; ++b) {
            Index c = g.commutator(dg.q.reps[a], dg.q.reps[b]);
            Index ch = h.commutator(dh.q.reps[alpha[a]], dh.q.reps[alpha[b]]);
            if (forced[c] == kUnmapped) {
              forced[c] = ch;
              gens.push_back(c);
              images.push_back(ch);
            } else if (forced[c] != ch) {
              return false;
            }
          }
        auto ext = extend_homomorphism(g, gens, images, h);
        if (!ext)
          return false;
        IsoclinismWitness w{alpha, {}};
        for (Index x : dg.derived.members()) {
          if ((*ext)[x] == kUnmapped)
            return false;
          w.beta.push_back((*ext)[x]);
        }
        if (!verify_isoclinism(g, h, dg, dh, w))
          return false;
        found = std::move(w);
        return true;
      },
      cap);
  return found;
}

inline IsoclinismWitness invert_witness(const FiniteGroup &g, const FiniteGroup &h,
                                        const IsoclinismWitness &w) {
  CentralData dg(g), dh(h);
  IsoclinismWitness inv;
  inv.alpha.assign(w.alpha.size(), 0);
  for (Index a = 0; a < w.alpha.size(); ++a)
    inv.alpha[w.alpha[a]] = a;
  inv.beta.assign(w.beta.size(), 0);
  for (Index i = 0; i < w.beta.size(); ++i)
    inv.beta[dh.derived_pos[w.beta[i]]] = dg.derived.members()[i];
  return inv;
}

/// Witness for G ~ K from G ~ H and H ~ K.
inline IsoclinismWitness compose_witness(const FiniteGroup &h, const IsoclinismWitness &first,
                                         const IsoclinismWitness &second) {
  CentralData dh(h);
  IsoclinismWitness out;
  for (Index a : first.alpha)
    out.alpha.push_back(second.alpha[a]);
  for (Index y : first.beta)
    out.beta.push_back(second.beta[dh.derived_pos[y]]);
  return out;
}

/// Two blocks: "quotient-map <m>" with m lines "a alpha(a)", then
/// "derived-map <k>" with k lines "x beta(x)" (element indices).
inline std::string serialize_witness(const FiniteGroup &g, const IsoclinismWitness &w) {
  CentralData dg(g);
  std::string out = "quotient-map " + std::to_string(w.alpha.size()) + "\n";
  for (Index a = 0; a < w.alpha.size(); ++a)
    out += std::to_string(a) + " " + std::to_string(w.alpha[a]) + "\n";
  out += "derived-map " + std::to_string(w.beta.size()) + "\n";
  for (Index i = 0; i < w.beta.size(); ++i)
    out += std::to_string(dg.derived.members()[i]) + " " + std::to_string(w.beta[i]) + "\n";
  return out;
}

inline bool is_stem_group(const FiniteGroup &h) {
  return center(h).is_subset_of(derived_subgroup(h));
}

struct StemMatch {
  FiniteGroup group;
  IsoclinismWitness witness;
};

/// First corpus group (by order, then name) with Z(H) <= H' that is
/// isoclinic to F. Corpus entries whose central quotient or derived
/// subgroup sizes differ from F's are skipped before any search.
inline std::optional<StemMatch> find_stem_group(const FiniteGroup &f,
                                                std::vector<FiniteGroup> corpus,
                                                std::size_t cap = kDefaultIsoCap) {
  std::stable_sort(corpus.begin(), corpus.end(), [](const FiniteGroup &a, const FiniteGroup &b) {
    return a.order() != b.order() ? a.order() < b.order() : a.name() < b.name();
  });
  const std::size_t zf = center(f).size();
  const std::size_t df = derived_subgroup(f).size();
  for (const auto &h : corpus) {
    Subgroup zh = center(h);
    if (f.order() / zf != h.order() / zh.size())
      continue;
    Subgroup dh = derived_subgroup(h);
    if (dh.size() != df || !zh.is_subset_of(dh))
      continue;
    if (auto w = find_isoclinism(f, h, cap))
      return StemMatch{h, std::move(*w)};
  }
  return std::nullopt;
}

struct InvarianceReport {
  std::size_t sum_g;
  std::size_t sum_h;
  Rational cp_g;
  Rational cp_h;
  bool holds() const { return sum_g == sum_h && cp_g == cp_h; }
};

/// Commuting-coset sums and cp of two isoclinic groups. WitnessInvalid if
/// the witness does not verify.
inline InvarianceReport cp_isoclinism_invariance_check(const FiniteGroup &g,
                                                       const FiniteGroup &h,
                                                       const IsoclinismWitness &w) {
  if (!verify_isoclinism(g, h, w))
    throw Error(ErrorKind::WitnessInvalid, "witness does not verify");
  return {commutation_matrix(g).sum(), commutation_matrix(h).sum(), cp_pair_count(g),
          cp_pair_count(h)};
}

} // namespace haarcp
