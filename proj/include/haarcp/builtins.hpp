#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "haarcp/group.hpp"

namespace haarcp {

// Constructors below list their generators so that generator k (when not the
// identity) receives element index k + 1.

inline FiniteGroup cyclic(unsigned n) {
  if (n == 0)
    throw Error(ErrorKind::IndexOutOfRange, "cyclic group needs n >= 1");
  return close_elements(
      std::vector<unsigned>{1 % n}, 0u, [n](unsigned a, unsigned b) { return (a + b) % n; },
      kDefaultClosureCap, "C" + std::to_string(n));
}

/// Dihedral group of order 2n: rotation r (index 1) and reflection s (index 2).
inline FiniteGroup dihedral(unsigned n) {
  if (n == 0)
    throw Error(ErrorKind::IndexOutOfRange, "dihedral group needs n >= 1");
  using E = std::pair<unsigned, unsigned>; // r^k s^e
  return close_elements(
      std::vector<E>{{1 % n, 0}, {0, 1}}, E{0, 0},
      [n](const E &a, const E &b) {
        unsigned k = a.second ? (a.first + n - b.first) % n : (a.first + b.first) % n;
        return E{k, a.second ^ b.second};
      },
      kDefaultClosureCap, "D" + std::to_string(n));
}

/// Dicyclic group of order 4n: <a, x | a^2n = 1, x^2 = a^n, a^x = a^-1>.
inline FiniteGroup dicyclic(unsigned n) {
  if (n == 0)
    throw Error(ErrorKind::IndexOutOfRange, "dicyclic group needs n >= 1");
  const unsigned m = 2 * n;
  using E = std::pair<unsigned, unsigned>; // a^k x^e
  std::string name = n == 2 ? "Q8" : n == 4 ? "Q16" : n == 8 ? "Q32" : n == 16 ? "Q64"
                                                                  : "Dic" + std::to_string(n);
  return close_elements(
      std::vector<E>{{1 % m, 0}, {0, 1}}, E{0, 0},
      [n, m](const E &a, const E &b) {
        if (!a.second)
          return E{(a.first + b.first) % m, b.second};
        if (!b.second)
          return E{(a.first + m - b.first) % m, 1};
        return E{(a.first + m - b.first + n) % m, 0};
      },
      kDefaultClosureCap, std::move(name));
}

inline FiniteGroup quaternion8() { return dicyclic(2); }

/// S_n from (1 2 ... n) and (1 2).
inline FiniteGroup symmetric(unsigned n, std::size_t cap = kDefaultClosureCap) {
  if (n == 0)
    throw Error(ErrorKind::IndexOutOfRange, "symmetric group needs n >= 1");
  std::vector<std::uint32_t> cycle;
  for (std::uint32_t i = 0; i < n; ++i)
    cycle.push_back(i);
  std::vector<Permutation> gens{n > 1 ? Permutation::from_cycle(cycle) : Permutation{}};
  if (n > 2)
    gens.push_back(Permutation::from_cycle({0, 1}));
  return close_generators(gens, cap, "S" + std::to_string(n));
}

/// A_n from the 3-cycles (1 2 i), i = 3..n.
inline FiniteGroup alternating(unsigned n, std::size_t cap = kDefaultClosureCap) {
  if (n == 0)
    throw Error(ErrorKind::IndexOutOfRange, "alternating group needs n >= 1");
  std::vector<Permutation> gens;
  for (std::uint32_t i = 2; i < n; ++i)
    gens.push_back(Permutation::from_cycle({0, 1, i}));
  if (gens.empty())
    gens.emplace_back();
  return close_generators(gens, cap, "A" + std::to_string(n));
}

namespace detail {

using Mat2 = std::array<int, 4>;

inline FiniteGroup matrix_group_2x2(std::vector<Mat2> gens, int p, std::string name) {
  auto mul = [p](const Mat2 &a, const Mat2 &b) {
    auto r = [p](int v) { return ((v % p) + p) % p; };
    return Mat2{r(a[0] * b[0] + a[1] * b[2]), r(a[0] * b[1] + a[1] * b[3]),
                r(a[2] * b[0] + a[3] * b[2]), r(a[2] * b[1] + a[3] * b[3])};
  };
  return close_elements(gens, Mat2{1, 0, 0, 1}, mul, kDefaultClosureCap, std::move(name));
}

/// C_n : C_k with the generator of C_k acting as x -> x * r (mod n).
inline FiniteGroup metacyclic(unsigned n, unsigned k, unsigned r, std::string name) {
  std::vector<unsigned> power(k);
  power[0] = 1 % n;
  for (unsigned i = 1; i < k; ++i)
    power[i] = power[i - 1] * r % n;
  using E = std::pair<unsigned, unsigned>;
  return close_elements(
      std::vector<E>{{1 % n, 0}, {0, 1 % k}}, E{0, 0},
      [n, k, power](const E &a, const E &b) {
        return E{(a.first + power[a.second] * b.first) % n, (a.second + b.second) % k};
      },
      kDefaultClosureCap, std::move(name));
}

} // namespace detail

/// SL(2,5), order 120, as 2x2 matrices over GF(5).
inline FiniteGroup sl2_5() {
  return detail::matrix_group_2x2({{1, 1, 0, 1}, {0, 4, 1, 0}}, 5, "SL(2,5)");
}

inline FiniteGroup sl2_3() {
  return detail::matrix_group_2x2({{1, 1, 0, 1}, {0, 2, 1, 0}}, 3, "SL(2,3)");
}

inline FiniteGroup gl2_3() {
  return detail::matrix_group_2x2({{1, 1, 0, 1}, {0, 2, 1, 0}, {2, 0, 0, 1}}, 3, "GL(2,3)");
}

/// Extraspecial group of order 27 and exponent 3 (unitriangular 3x3 over GF(3)).
inline FiniteGroup heisenberg3() {
  using E = std::array<unsigned, 3>;
  return close_elements(
      std::vector<E>{{1, 0, 0}, {0, 1, 0}}, E{0, 0, 0},
      [](const E &a, const E &b) {
        return E{(a[0] + b[0]) % 3, (a[1] + b[1]) % 3, (a[2] + b[2] + a[0] * b[1]) % 3};
      },
      kDefaultClosureCap, "He3");
}

/// Extraspecial group of order 27 and exponent 9: C9 : C3 with x -> 4x.
inline FiniteGroup extraspecial27_exp9() { return detail::metacyclic(9, 3, 4, "C9:C3"); }

inline FiniteGroup named_product(const FiniteGroup &a, const FiniteGroup &b) {
  FiniteGroup p = direct_product(a, b);
  p.set_name(a.name() + "x" + b.name());
  return p;
}

/// The built-in corpus, sorted by (order, name).
inline std::vector<FiniteGroup> builtin_corpus(std::size_t max_order = static_cast<std::size_t>(-1)) {
  std::vector<FiniteGroup> out;
  auto add = [&](FiniteGroup g) {
    if (g.order() <= max_order)
      out.push_back(std::move(g));
  };
  for (unsigned n = 1; n <= 16; ++n)
    add(cyclic(n));
  for (unsigned n : {18u, 24u, 27u, 32u, 60u, 64u})
    add(cyclic(n));
  const auto c2 = cyclic(2), c3 = cyclic(3), c4 = cyclic(4), c5 = cyclic(5), c6 = cyclic(6),
             c10 = cyclic(10);
  add(named_product(c2, c2));
  add(named_product(c2, c4));
  add(named_product(named_product(c2, c2), c2));
  add(named_product(c3, c3));
  add(named_product(c4, c4));
  add(named_product(c2, c6));

  for (unsigned n = 3; n <= 32; ++n)
    add(dihedral(n));
  for (unsigned n = 2; n <= 16; ++n)
    add(dicyclic(n));

  const auto s3 = symmetric(3), s4 = symmetric(4), a4 = alternating(4), a5 = alternating(5);
  const auto d4 = dihedral(4), q8 = quaternion8();
  add(s3);
  add(s4);
  add(a4);
  add(a5);
  add(symmetric(5));
  add(sl2_3());
  add(gl2_3());
  add(sl2_5());
  add(heisenberg3());
  add(extraspecial27_exp9());
  add(named_product(heisenberg3(), c2));
  add(detail::metacyclic(4, 4, 3, "C4:C4"));
  add(detail::metacyclic(5, 4, 2, "F20"));
  add(detail::metacyclic(7, 3, 2, "F21"));
  add(detail::metacyclic(11, 5, 3, "F55"));
  add(named_product(s3, c3));
  add(named_product(s3, s3));
  add(named_product(a4, c2));
  add(named_product(a4, c3));
  add(named_product(a4, c4));
  add(named_product(a4, c5));
  add(named_product(s4, c2));
  add(named_product(s3, c10));
  add(named_product(detail::metacyclic(5, 4, 2, "F20"), c3));
  add(named_product(d4, c2));
  add(named_product(q8, c2));
  add(named_product(d4, c4));
  add(named_product(q8, c4));
  add(named_product(d4, d4));
  add(named_product(d4, q8));
  add(named_product(q8, q8));
  add(named_product(a5, c2));
  add(named_product(a5, c4));
  add(named_product(a5, c6));
  add(named_product(a5, s3));
  add(named_product(sl2_5(), c2));

  std::stable_sort(out.begin(), out.end(), [](const FiniteGroup &a, const FiniteGroup &b) {
    return a.order() != b.order() ? a.order() < b.order() : a.name() < b.name();
  });
  return out;
}

/// Corpus entry by exact name ("A5", "Q8", "SL(2,5)", "A5xC6", ...).
inline std::optional<FiniteGroup> builtin_group(const std::string &name) {
  static const std::vector<FiniteGroup> corpus = builtin_corpus();
  for (const auto &g : corpus)
    if (g.name() == name)
      return g;
  return std::nullopt;
}

} // namespace haarcp
