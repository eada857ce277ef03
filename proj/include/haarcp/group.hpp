#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "haarcp/error.hpp"
#include "haarcp/permutation.hpp"

namespace haarcp {

using Index = std::uint32_t;

inline constexpr std::size_t kDefaultClosureCap = 20000;
inline constexpr std::size_t kDefaultIsoCap = 256;
inline constexpr std::size_t kExhaustiveAssociativityLimit = 512;

/// A finite group on the dense index space 0..order-1 with a full Cayley
/// table. Copies share the table, so passing groups by value is cheap.
class FiniteGroup {
public:
  /// The trivial group.
  FiniteGroup()
      : order_(1), table_(std::make_shared<const std::vector<Index>>(1, 0)), inverse_(1, 0),
        name_("1") {}

  /// Builds a group from a row-major Cayley table and validates the group
  /// axioms: Latin square, two-sided identity and inverses, associativity
  /// (exhaustive up to 512 elements, 200000 sampled triples above).
  static FiniteGroup from_table(std::size_t order, std::vector<Index> table,
                                std::string name = {}) {
    if (order == 0)
      throw Error(ErrorKind::NotAGroup, "empty table");
    if (table.size() != order * order)
      throw Error(ErrorKind::NotAGroup, "table is not order x order");
    for (Index x : table)
      if (x >= order)
        throw Error(ErrorKind::NotAGroup, "table entry out of range");

    std::optional<Index> identity;
    for (Index e = 0; e < order && !identity; ++e) {
      bool ok = true;
      for (Index x = 0; x < order && ok; ++x)
        ok = table[e * order + x] == x && table[x * order + e] == x;
      if (ok)
        identity = e;
    }
    if (!identity)
      throw Error(ErrorKind::NotAGroup, "no two-sided identity");

    for (Index i = 0; i < order; ++i) {
      std::vector<bool> row(order), col(order);
      for (Index j = 0; j < order; ++j) {
        Index r = table[i * order + j], c = table[j * order + i];
        if (row[r] || col[c])
          throw Error(ErrorKind::NotAGroup, "table is not a Latin square");
        row[r] = col[c] = true;
      }
    }

    FiniteGroup g = from_table_unchecked(order, std::move(table), *identity,
                                         std::move(name));
    const auto n = static_cast<Index>(order);
    auto assoc = [&](Index a, Index b, Index c) {
      return g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c));
    };
    if (order <= kExhaustiveAssociativityLimit) {
      for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b)
          for (Index c = 0; c < n; ++c)
            if (!assoc(a, b, c))
              throw Error(ErrorKind::NotAGroup, "multiplication is not associative");
    } else {
      std::mt19937_64 rng(0x5eed);
      std::uniform_int_distribution<Index> pick(0, n - 1);
      for (int t = 0; t < 200000; ++t)
        if (!assoc(pick(rng), pick(rng), pick(rng)))
          throw Error(ErrorKind::NotAGroup, "multiplication is not associative");
    }
    return g;
  }

  /// Caller guarantees the table is a group table with the given identity.
  static FiniteGroup from_table_unchecked(std::size_t order, std::vector<Index> table,
                                          Index identity, std::string name = {}) {
    FiniteGroup g;
    g.order_ = order;
    g.identity_ = identity;
    g.name_ = std::move(name);
    g.inverse_.assign(order, 0);
    for (Index i = 0; i < order; ++i)
      for (Index j = 0; j < order; ++j)
        if (table[i * order + j] == identity) {
          g.inverse_[i] = j;
          break;
        }
    g.table_ = std::make_shared<const std::vector<Index>>(std::move(table));
    return g;
  }

  std::size_t order() const { return order_; }
  Index identity() const { return identity_; }
  Index mul(Index a, Index b) const { return (*table_)[a * order_ + b]; }
  Index inv(Index a) const { return inverse_[a]; }

  /// [x, y] = x^-1 y^-1 x y
  Index commutator(Index x, Index y) const {
    return mul(mul(inv(x), inv(y)), mul(x, y));
  }
  /// x^g = g^-1 x g
  Index conjugate(Index x, Index g) const { return mul(mul(inv(g), x), g); }
  bool commute(Index x, Index y) const { return mul(x, y) == mul(y, x); }

  bool is_abelian() const {
    for (Index x = 0; x < order_; ++x)
      for (Index y = x + 1; y < order_; ++y)
        if (!commute(x, y))
          return false;
    return true;
  }

  const std::string &name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  const std::vector<Permutation> &perm_generators() const { return perm_generators_; }
  void set_perm_generators(std::vector<Permutation> gens) { perm_generators_ = std::move(gens); }

  const std::vector<Index> &table() const { return *table_; }

  /// Identity of the underlying table; subgroups remember it so they cannot
  /// be used against an unrelated group.
  const void *key() const { return table_.get(); }

private:
  std::size_t order_ = 0;
  Index identity_ = 0;
  std::shared_ptr<const std::vector<Index>> table_;
  std::vector<Index> inverse_;
  std::vector<Permutation> perm_generators_;
  std::string name_;
};

/// Generic closure of a generator list under an associative product.
/// Element indices follow breadth-first discovery from the identity, with
/// right multiplication by the generators in the order given; so index 0 is
/// the identity and the first generator (when not the identity) is index 1.
template <class T, class Mul>
FiniteGroup close_elements(const std::vector<T> &gens, const T &identity, Mul mul,
                           std::size_t cap = kDefaultClosureCap, std::string name = {}) {
  if (gens.empty())
    throw Error(ErrorKind::EmptyGeneratorList, "no generators given");
  std::vector<T> elements{identity};
  std::map<T, Index> index_of{{identity, 0}};
  std::vector<std::pair<Index, Index>> parent{{0, 0}}; // (element, generator)
  std::vector<Index> right;                             // right[i * k + g]
  const std::size_t k = gens.size();

  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (std::size_t g = 0; g < k; ++g) {
      T product = mul(elements[i], gens[g]);
      auto [it, inserted] = index_of.emplace(product, static_cast<Index>(elements.size()));
      if (inserted) {
        if (elements.size() + 1 > cap)
          throw Error(ErrorKind::ClosureExceedsCap,
                      "closure exceeds cap of " + std::to_string(cap) + " elements");
        elements.push_back(std::move(product));
        parent.emplace_back(static_cast<Index>(i), static_cast<Index>(g));
      }
      right.push_back(it->second);
    }
  }

  const std::size_t n = elements.size();
  std::vector<Index> table(n * n);
  for (Index i = 0; i < n; ++i)
    table[i * n] = i;
  // x * y = (x * parent(y)) * gen(y), filled column by column in discovery order.
  for (Index j = 1; j < n; ++j) {
    auto [p, g] = parent[j];
    for (Index i = 0; i < n; ++i)
      table[i * n + j] = right[table[i * n + p] * k + g];
  }
  return FiniteGroup::from_table_unchecked(n, std::move(table), 0, std::move(name));
}

/// Group generated by permutations, indexed in breadth-first discovery order.
inline FiniteGroup close_generators(const std::vector<Permutation> &perms,
                                    std::size_t cap = kDefaultClosureCap,
                                    std::string name = {}) {
  FiniteGroup g = close_elements(
      perms, Permutation{},
      [](const Permutation &a, const Permutation &b) { return a * b; }, cap,
      std::move(name));
  g.set_perm_generators(perms);
  return g;
}

/// A subgroup of a specific FiniteGroup, as a sorted member list.
class Subgroup {
public:
  const std::vector<Index> &members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool contains(Index x) const { return x < mask_.size() && mask_[x]; }
  bool is_trivial() const { return members_.size() == 1; }
  std::size_t parent_order() const { return mask_.size(); }
  bool belongs_to(const FiniteGroup &g) const { return parent_ == g.key(); }

  bool is_subset_of(const Subgroup &other) const {
    return std::all_of(members_.begin(), members_.end(),
                       [&](Index x) { return other.contains(x); });
  }
  friend bool operator==(const Subgroup &a, const Subgroup &b) {
    return a.parent_ == b.parent_ && a.members_ == b.members_;
  }

  /// Validates closure and identity; NotASubgroup otherwise.
  static Subgroup from_members(const FiniteGroup &g, std::vector<Index> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    Subgroup s = from_members_unchecked(g, std::move(members));
    for (Index x : s.members_)
      if (x >= g.order())
        throw Error(ErrorKind::IndexOutOfRange, "member index out of range");
    if (!s.contains(g.identity()))
      throw Error(ErrorKind::NotASubgroup, "identity missing");
    for (Index x : s.members_)
      for (Index y : s.members_)
        if (!s.contains(g.mul(x, y)))
          throw Error(ErrorKind::NotASubgroup, "member set is not closed");
    return s;
  }

  /// Caller guarantees members form a subgroup (sorted, unique).
  static Subgroup from_members_unchecked(const FiniteGroup &g, std::vector<Index> members) {
    Subgroup s;
    s.parent_ = g.key();
    s.mask_.assign(g.order(), false);
    for (Index x : members)
      if (x < g.order())
        s.mask_[x] = true;
    s.members_ = std::move(members);
    return s;
  }

private:
  const void *parent_ = nullptr;
  std::vector<Index> members_;
  std::vector<bool> mask_;
};

/// One representative per left coset rep * H.
struct Transversal {
  Subgroup subgroup;
  std::vector<Index> reps;
  std::vector<Index> coset_of; // element index -> position in reps
};

inline void require_same_group(const FiniteGroup &g, const Subgroup &h) {
  if (!h.belongs_to(g))
    throw Error(ErrorKind::NotASubgroup, "subgroup belongs to a different group");
}

/// Smallest subgroup containing `gens`.
inline Subgroup generated_subgroup(const FiniteGroup &g, const std::vector<Index> &gens) {
  std::vector<bool> seen(g.order());
  std::vector<Index> members{g.identity()};
  seen[g.identity()] = true;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (Index s : gens) {
      Index y = g.mul(members[i], s);
      if (!seen[y]) {
        seen[y] = true;
        members.push_back(y);
      }
    }
  std::sort(members.begin(), members.end());
  return Subgroup::from_members_unchecked(g, std::move(members));
}

inline Subgroup whole_group(const FiniteGroup &g) {
  std::vector<Index> all(g.order());
  for (Index i = 0; i < g.order(); ++i)
    all[i] = i;
  return Subgroup::from_members_unchecked(g, std::move(all));
}

inline Subgroup trivial_subgroup(const FiniteGroup &g) {
  return Subgroup::from_members_unchecked(g, {g.identity()});
}

inline Subgroup center(const FiniteGroup &g) {
  std::vector<Index> z;
  for (Index x = 0; x < g.order(); ++x) {
    bool central = true;
    for (Index y = 0; y < g.order() && central; ++y)
      central = g.commute(x, y);
    if (central)
      z.push_back(x);
  }
  return Subgroup::from_members_unchecked(g, std::move(z));
}

inline Subgroup centralizer(const FiniteGroup &g, Index x) {
  if (x >= g.order())
    throw Error(ErrorKind::IndexOutOfRange, "element " + std::to_string(x));
  std::vector<Index> c;
  for (Index a = 0; a < g.order(); ++a)
    if (g.commute(a, x))
      c.push_back(a);
  return Subgroup::from_members_unchecked(g, std::move(c));
}

/// Commutator subgroup [S, S] of a subgroup S (S = G gives G').
inline Subgroup derived_subgroup(const FiniteGroup &g, const Subgroup &s) {
  require_same_group(g, s);
  std::vector<bool> in(g.order());
  std::vector<Index> members{g.identity()};
  in[g.identity()] = true;
  std::vector<Index> gens;
  for (Index x : s.members())
    for (Index y : s.members()) {
      Index c = g.commutator(x, y);
      if (in[c])
        continue;
      // Grow the closure by the new generator; old members times new words.
      gens.push_back(c);
      for (std::size_t i = 0; i < members.size(); ++i)
        for (Index gen : gens) {
          Index z = g.mul(members[i], gen);
          if (!in[z]) {
            in[z] = true;
            members.push_back(z);
          }
        }
    }
  std::sort(members.begin(), members.end());
  return Subgroup::from_members_unchecked(g, std::move(members));
}

inline Subgroup derived_subgroup(const FiniteGroup &g) {
  return derived_subgroup(g, whole_group(g));
}

/// G = G^(0) > G^(1) > ... until the series stabilises.
inline std::vector<Subgroup> derived_series(const FiniteGroup &g) {
  std::vector<Subgroup> series{whole_group(g)};
  while (true) {
    Subgroup next = derived_subgroup(g, series.back());
    if (next.size() == series.back().size())
      break;
    series.push_back(std::move(next));
  }
  return series;
}

inline bool is_solvable(const FiniteGroup &g) { return derived_series(g).back().is_trivial(); }

inline bool is_perfect(const FiniteGroup &g) { return derived_subgroup(g).size() == g.order(); }

/// Conjugacy classes, ordered by smallest member; each class sorted.
inline std::vector<std::vector<Index>> conjugacy_classes(const FiniteGroup &g) {
  std::vector<bool> done(g.order());
  std::vector<std::vector<Index>> classes;
  for (Index x = 0; x < g.order(); ++x) {
    if (done[x])
      continue;
    std::vector<Index> cls;
    for (Index h = 0; h < g.order(); ++h) {
      Index y = g.conjugate(x, h);
      if (!done[y]) {
        done[y] = true;
        cls.push_back(y);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

inline std::vector<std::size_t> class_sizes(const FiniteGroup &g) {
  std::vector<std::size_t> sizes;
  for (const auto &c : conjugacy_classes(g))
    sizes.push_back(c.size());
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

/// Left cosets x*H, each represented by its smallest element index.
inline Transversal left_transversal(const FiniteGroup &g, const Subgroup &h) {
  require_same_group(g, h);
  Transversal t{h, {}, std::vector<Index>(g.order(), static_cast<Index>(-1))};
  for (Index x = 0; x < g.order(); ++x) {
    if (t.coset_of[x] != static_cast<Index>(-1))
      continue;
    auto pos = static_cast<Index>(t.reps.size());
    t.reps.push_back(x);
    for (Index y : h.members())
      t.coset_of[g.mul(x, y)] = pos;
  }
  return t;
}

inline bool is_normal(const FiniteGroup &g, const Subgroup &n) {
  require_same_group(g, n);
  for (Index x = 0; x < g.order(); ++x)
    for (Index y : n.members())
      if (!n.contains(g.conjugate(y, x)))
        return false;
  return true;
}

struct Quotient {
  FiniteGroup group;
  std::vector<Index> projection; // element of G -> coset index
  std::vector<Index> reps;       // coset index -> smallest element of the coset
};

/// G/N on left cosets, numbered as in left_transversal. NotNormal when N is
/// not normal.
inline Quotient quotient(const FiniteGroup &g, const Subgroup &n) {
  if (!is_normal(g, n))
    throw Error(ErrorKind::NotNormal, "subgroup is not normal");
  Transversal t = left_transversal(g, n);
  const std::size_t m = t.reps.size();
  std::vector<Index> table(m * m);
  for (Index a = 0; a < m; ++a)
    for (Index b = 0; b < m; ++b)
      table[a * m + b] = t.coset_of[g.mul(t.reps[a], t.reps[b])];
  Index id = t.coset_of[g.identity()];
  std::string name = g.name().empty() ? std::string() : g.name() + "/N";
  return {FiniteGroup::from_table_unchecked(m, std::move(table), id, std::move(name)),
          std::move(t.coset_of), std::move(t.reps)};
}

struct Embedded {
  FiniteGroup group;
  std::vector<Index> embedding; // new index -> parent index (= subgroup members)
};

/// A subgroup as a group in its own right; index i maps to members()[i].
inline Embedded subgroup_as_group(const FiniteGroup &g, const Subgroup &s) {
  require_same_group(g, s);
  const auto &mem = s.members();
  std::vector<Index> pos(g.order(), 0);
  for (Index i = 0; i < mem.size(); ++i)
    pos[mem[i]] = i;
  const std::size_t m = mem.size();
  std::vector<Index> table(m * m);
  for (Index a = 0; a < m; ++a)
    for (Index b = 0; b < m; ++b)
      table[a * m + b] = pos[g.mul(mem[a], mem[b])];
  return {FiniteGroup::from_table_unchecked(m, std::move(table), pos[g.identity()]), mem};
}

/// Pair (g, h) gets index g * |H| + h.
inline FiniteGroup direct_product(const FiniteGroup &g, const FiniteGroup &h,
                                  std::size_t cap = kDefaultClosureCap) {
  const std::size_t a = g.order(), b = h.order(), n = a * b;
  if (n > cap)
    throw Error(ErrorKind::ClosureExceedsCap,
                "product order " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  std::vector<Index> table(n * n);
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y)
      table[x * n + y] = static_cast<Index>(g.mul(x / b, y / b) * b + h.mul(x % b, y % b));
  std::string name;
  if (!g.name().empty() && !h.name().empty())
    name = g.name() + "x" + h.name();
  return FiniteGroup::from_table_unchecked(n, std::move(table),
                                           static_cast<Index>(g.identity() * b + h.identity()),
                                           std::move(name));
}

inline std::size_t element_order(const FiniteGroup &g, Index x) {
  std::size_t k = 1;
  for (Index y = x; y != g.identity(); y = g.mul(y, x))
    ++k;
  return k;
}

inline std::vector<std::size_t> element_orders(const FiniteGroup &g) {
  std::vector<std::size_t> orders(g.order());
  for (Index x = 0; x < g.order(); ++x)
    orders[x] = element_order(g, x);
  return orders;
}

/// Greedy generating set: scan elements by decreasing order and keep any
/// element outside the subgroup generated so far.
inline std::vector<Index> small_generating_set(const FiniteGroup &g) {
  auto orders = element_orders(g);
  std::vector<Index> byorder(g.order());
  for (Index i = 0; i < g.order(); ++i)
    byorder[i] = i;
  std::stable_sort(byorder.begin(), byorder.end(),
                   [&](Index a, Index b) { return orders[a] > orders[b]; });
  std::vector<Index> gens;
  Subgroup current = trivial_subgroup(g);
  for (Index x : byorder) {
    if (current.size() == g.order())
      break;
    if (current.contains(x))
      continue;
    gens.push_back(x);
    current = generated_subgroup(g, gens);
  }
  return gens;
}

inline constexpr Index kUnmapped = static_cast<Index>(-1);

/// Extends gens[i] -> images[i] to the subgroup <gens> of `from`, checking
/// on every edge x -> x*gen that the map is multiplicative and injective.
/// Entries outside <gens> stay kUnmapped. Edge consistency over a spanning
/// set is equivalent to being a homomorphism on <gens>.
inline std::optional<std::vector<Index>> extend_homomorphism(const FiniteGroup &from,
                                                             const std::vector<Index> &gens,
                                                             const std::vector<Index> &images,
                                                             const FiniteGroup &to) {
  std::vector<Index> map(from.order(), kUnmapped);
  std::vector<bool> used(to.order());
  map[from.identity()] = to.identity();
  used[to.identity()] = true;
  std::vector<Index> queue{from.identity()};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    Index x = queue[i];
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Index y = from.mul(x, gens[k]);
      Index img = to.mul(map[x], images[k]);
      if (map[y] == kUnmapped) {
        if (used[img])
          return std::nullopt;
        used[img] = true;
        map[y] = img;
        queue.push_back(y);
      } else if (map[y] != img) {
        return std::nullopt;
      }
    }
  }
  return map;
}

namespace detail {

struct Fingerprint {
  bool abelian;
  std::vector<std::size_t> orders;      // per element
  std::vector<std::size_t> class_size;  // per element
  std::vector<std::size_t> order_histogram;
  std::vector<std::size_t> class_histogram;
};

inline Fingerprint fingerprint(const FiniteGroup &g) {
  Fingerprint f;
  f.abelian = g.is_abelian();
  f.orders = element_orders(g);
  f.class_size.assign(g.order(), 0);
  for (const auto &cls : conjugacy_classes(g))
    for (Index x : cls)
      f.class_size[x] = cls.size();
  f.order_histogram.assign(g.order() + 1, 0);
  f.class_histogram.assign(g.order() + 1, 0);
  for (Index x = 0; x < g.order(); ++x) {
    ++f.order_histogram[f.orders[x]];
    ++f.class_histogram[f.class_size[x]];
  }
  return f;
}

} // namespace detail

/// Calls `visit` with every isomorphism G -> H (as an index map) until it
/// returns true. Returns whether enumeration was stopped by `visit`.
/// SearchCapExceeded when either order exceeds `cap`.
inline bool for_each_isomorphism(const FiniteGroup &g, const FiniteGroup &h,
                                 const std::function<bool(const std::vector<Index> &)> &visit,
                                 std::size_t cap = kDefaultIsoCap) {
  if (g.order() > cap || h.order() > cap)
    throw Error(ErrorKind::SearchCapExceeded,
                "isomorphism search limited to order " + std::to_string(cap));
  if (g.order() != h.order())
    return false;
  auto fg = detail::fingerprint(g);
  auto fh = detail::fingerprint(h);
  if (fg.abelian != fh.abelian || fg.order_histogram != fh.order_histogram ||
      fg.class_histogram != fh.class_histogram)
    return false;

  const auto gens = small_generating_set(g);
  if (gens.empty()) // trivial group
    return visit(std::vector<Index>{h.identity()});

  std::vector<std::vector<Index>> candidates(gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k)
    for (Index y = 0; y < h.order(); ++y)
      if (fh.orders[y] == fg.orders[gens[k]] && fh.class_size[y] == fg.class_size[gens[k]])
        candidates[k].push_back(y);

  std::vector<Index> images;
  std::vector<Index> prefix;
  std::function<bool(std::size_t)> search = [&](std::size_t level) -> bool {
    if (level == gens.size()) {
      auto map = extend_homomorphism(g, gens, images, h);
      return map && visit(*map);
    }
    prefix.push_back(gens[level]);
    bool stop = false;
    for (Index y : candidates[level]) {
      images.push_back(y);
      if (level + 1 == gens.size() || extend_homomorphism(g, prefix, images, h))
        stop = search(level + 1);
      images.pop_back();
      if (stop)
        break;
    }
    prefix.pop_back();
    return stop;
  };
  return search(0);
}

/// A multiplication-preserving bijection G -> H, if one exists.
inline std::optional<std::vector<Index>> find_isomorphism(const FiniteGroup &g,
                                                          const FiniteGroup &h,
                                                          std::size_t cap = kDefaultIsoCap) {
  std::optional<std::vector<Index>> found;
  for_each_isomorphism(
      g, h,
      [&](const std::vector<Index> &map) {
        found = map;
        return true;
      },
      cap);
  return found;
}

/// True iff the map is a bijective homomorphism G -> H.
inline bool is_isomorphism(const FiniteGroup &g, const FiniteGroup &h,
                           const std::vector<Index> &map) {
  if (g.order() != h.order() || map.size() != g.order())
    return false;
  std::vector<bool> hit(h.order());
  for (Index y : map) {
    if (y >= h.order() || hit[y])
      return false;
    hit[y] = true;
  }
  for (Index a = 0; a < g.order(); ++a)
    for (Index b = 0; b < g.order(); ++b)
      if (map[g.mul(a, b)] != h.mul(map[a], map[b]))
        return false;
  return true;
}

/// Census test: order 60, class sizes {1, 12, 12, 15, 20}, and perfect.
/// Every non-solvable group of order 60 is isomorphic to A5, and perfection
/// rules out the solvable ones, so this decides G = A5.
inline bool is_a5(const FiniteGroup &g) {
  if (g.order() != 60)
    return false;
  if (class_sizes(g) != std::vector<std::size_t>{1, 12, 12, 15, 20})
    return false;
  return is_perfect(g);
}

} // namespace haarcp
