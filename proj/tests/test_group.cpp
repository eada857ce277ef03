#include <catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "haarcp/builtins.hpp"
#include "haarcp/group.hpp"
#include "oracle.hpp"

using namespace haarcp;

namespace {

FiniteGroup perms(std::initializer_list<const char *> cycles, std::size_t cap = kDefaultClosureCap) {
  std::vector<Permutation> gens;
  for (const char *c : cycles)
    gens.push_back(Permutation::parse(c));
  return close_generators(gens, cap);
}

ErrorKind kind_of(const std::function<void()> &f) {
  try {
    f();
  } catch (const Error &e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::ParseError;
}

// Axioms straight from the table, independent of from_table's own checks.
bool table_is_group(const FiniteGroup &g) {
  const std::size_t n = g.order();
  const Index e = g.identity();
  for (Index a = 0; a < n; ++a) {
    if (g.mul(e, a) != a || g.mul(a, e) != a)
      return false;
    if (g.mul(a, g.inv(a)) != e || g.mul(g.inv(a), a) != e)
      return false;
    for (Index b = 0; b < n; ++b)
      for (Index c = 0; c < n; ++c)
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
          return false;
  }
  return true;
}

std::vector<FiniteGroup> small_corpus() { return builtin_corpus(64); }

} // namespace

TEST_CASE("permutations parse, print and multiply left to right", "[permutation]") {
  Permutation p = Permutation::parse("(1 2 3)(4 5)");
  CHECK(p.cycles() == "(1 2 3)(4 5)");
  CHECK(p[0] == 1);
  CHECK(p[4] == 3);
  Permutation a = Permutation::parse("(1 2)"), b = Permutation::parse("(1 3)");
  // apply (1 2) first: 1 -> 2 -> 2, 2 -> 1 -> 3, 3 -> 3 -> 1
  CHECK((a * b).cycles() == "(1 2 3)");
  CHECK((p * p.inverse()).is_identity());
  CHECK(Permutation::parse("()").is_identity());
  CHECK(Permutation::parse("(1 2)(3)") == Permutation::parse("(2 1)"));
}

TEST_CASE("malformed cycles are parse errors", "[permutation]") {
  for (const char *bad : {"(1 2", "(1 1)", "(0 1)", "(1 x)", "1 2)", ""}) {
    INFO(bad);
    CHECK(kind_of([&] { Permutation::parse(bad); }) == ErrorKind::ParseError);
  }
}

TEST_CASE("close_generators examples", "[group][closure]") {
  FiniteGroup c3 = perms({"(1 2 3)"}, 100);
  CHECK(c3.order() == 3);
  CHECK(c3.is_abelian());

  FiniteGroup a5 = perms({"(1 2 3 4 5)", "(1 2 3)"}, 100);
  CHECK(a5.order() == 60);
  CHECK(a5.order() == oracle::a5().size());

  CHECK(kind_of([] { perms({"(1 2)"}, 1); }) == ErrorKind::ClosureExceedsCap);
  CHECK(kind_of([] { close_generators({}, 10); }) == ErrorKind::EmptyGeneratorList);
}

TEST_CASE("closure indexes the identity first and generators next", "[group][closure]") {
  FiniteGroup g = perms({"(1 2 3 4)", "(1 3)"});
  REQUIRE(g.order() == 8);
  CHECK(g.identity() == 0);
  CHECK(element_order(g, 1) == 4);
  CHECK(element_order(g, 2) == 2);
  CHECK_FALSE(g.commute(1, 2));
}

TEST_CASE("closure order agrees with the set-based oracle on random generators", "[group][closure]") {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + static_cast<int>(rng() % 5);
    std::vector<oracle::Perm> raw;
    std::vector<Permutation> gens;
    for (int k = 0; k < 2; ++k) {
      oracle::Perm p = oracle::identity(n);
      std::shuffle(p.begin(), p.end(), rng);
      raw.push_back(p);
      gens.emplace_back(std::vector<std::uint32_t>(p.begin(), p.end()));
    }
    auto elems = oracle::closure(raw, oracle::identity(n), oracle::perm_mul);
    FiniteGroup g = close_generators(gens, 720);
    INFO("trial " << trial);
    CHECK(g.order() == elems.size());
    CHECK(center(g).size() == oracle::center_size(elems, oracle::perm_mul));
    CHECK(class_sizes(g) == oracle::class_sizes(elems, oracle::identity(n), oracle::perm_mul));
  }
}

TEST_CASE("from_table rejects non-groups", "[group]") {
  CHECK(kind_of([] { FiniteGroup::from_table(0, {}); }) == ErrorKind::NotAGroup);
  CHECK(kind_of([] { FiniteGroup::from_table(2, {0, 1, 1}); }) == ErrorKind::NotAGroup);
  CHECK(kind_of([] { FiniteGroup::from_table(2, {0, 1, 1, 2}); }) == ErrorKind::NotAGroup);
  CHECK(kind_of([] { FiniteGroup::from_table(2, {0, 1, 1, 1}); }) == ErrorKind::NotAGroup);
  // Latin square with identity 0 that fails associativity (a loop of order 5).
  std::vector<Index> loop{0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1,
                          3, 3, 2, 4, 0, 1, 4, 3, 1, 2, 0};
  CHECK(kind_of([&] { FiniteGroup::from_table(5, loop); }) == ErrorKind::NotAGroup);

  FiniteGroup v4 = FiniteGroup::from_table(4, {0, 1, 2, 3, 1, 0, 3, 2, 2, 3, 0, 1, 3, 2, 1, 0});
  CHECK(v4.order() == 4);
  CHECK(v4.is_abelian());
}

TEST_CASE("center examples", "[group]") {
  FiniteGroup c12 = cyclic(12);
  CHECK(center(c12).size() == 12);
  CHECK(center(symmetric(3)).is_trivial());
  CHECK(center(quaternion8()).size() == 2);
  CHECK(center(quaternion8()).size() == oracle::center_size(oracle::q8(), oracle::perm_mul));
  CHECK(center(symmetric(4)).size() == oracle::center_size(oracle::s4(), oracle::perm_mul));
}

TEST_CASE("centralizer examples", "[group]") {
  FiniteGroup s3 = symmetric(3);
  CHECK(centralizer(s3, s3.identity()).size() == 6);
  CHECK(centralizer(s3, 2).size() == 2); // index 2 is the transposition (1 2)
  FiniteGroup q8 = quaternion8();
  CHECK(centralizer(q8, 1).size() == 4); // index 1 is i
  CHECK(kind_of([&] { centralizer(q8, 8); }) == ErrorKind::IndexOutOfRange);
}

TEST_CASE("derived subgroup examples", "[group]") {
  CHECK(derived_subgroup(cyclic(9)).is_trivial());
  CHECK(derived_subgroup(symmetric(3)).size() == 3);
  CHECK(derived_subgroup(alternating(5)).size() == 60);
  CHECK(is_perfect(alternating(5)));
  CHECK(derived_subgroup(sl2_5()).size() == 120);
}

TEST_CASE("conjugacy class examples", "[group]") {
  CHECK(class_sizes(cyclic(7)) == std::vector<std::size_t>(7, 1));
  CHECK(class_sizes(symmetric(3)) == std::vector<std::size_t>{1, 2, 3});
  CHECK(class_sizes(alternating(5)) == std::vector<std::size_t>{1, 12, 12, 15, 20});
  CHECK(class_sizes(alternating(5)) ==
        oracle::class_sizes(oracle::a5(), oracle::identity(5), oracle::perm_mul));
  auto sl = oracle::sl2_5_all();
  CHECK(class_sizes(sl2_5()) == oracle::class_sizes(sl, oracle::Mat2{1, 0, 0, 1}, oracle::mat_mul(5)));

  for (const auto &cls : conjugacy_classes(symmetric(4)))
    if (std::find(cls.begin(), cls.end(), 0u) != cls.end())
      CHECK(cls.size() == 1);
}

TEST_CASE("left_transversal examples", "[group]") {
  FiniteGroup s3 = symmetric(3);
  Transversal whole = left_transversal(s3, whole_group(s3));
  CHECK(whole.reps == std::vector<Index>{s3.identity()});

  Transversal t = left_transversal(s3, derived_subgroup(s3));
  CHECK(t.reps.size() == 2);

  FiniteGroup q8 = quaternion8();
  Transversal tq = left_transversal(q8, center(q8));
  CHECK(tq.reps.size() == 4);
  for (std::size_t i = 1; i < tq.reps.size(); ++i)
    CHECK(tq.reps[i - 1] < tq.reps[i]);

  FiniteGroup other = cyclic(6);
  CHECK(kind_of([&] { left_transversal(s3, center(other)); }) == ErrorKind::NotASubgroup);
}

TEST_CASE("from_members validates closure", "[group]") {
  FiniteGroup s3 = symmetric(3);
  CHECK(kind_of([&] { Subgroup::from_members(s3, {0, 1, 2}); }) == ErrorKind::NotASubgroup);
  CHECK(kind_of([&] { Subgroup::from_members(s3, {0, 9}); }) == ErrorKind::IndexOutOfRange);
  CHECK(Subgroup::from_members(s3, {0, 2}).size() == 2);
}

TEST_CASE("is_solvable examples", "[group]") {
  CHECK(is_solvable(symmetric(4)));
  CHECK(derived_series(symmetric(4)).size() == 4); // S4 > A4 > V4 > 1
  CHECK_FALSE(is_solvable(alternating(5)));
  CHECK(is_solvable(cyclic(15)));
  CHECK_FALSE(is_solvable(symmetric(5)));
  CHECK(is_solvable(sl2_3()));
}

TEST_CASE("direct_product examples", "[group]") {
  FiniteGroup s3 = symmetric(3);
  FiniteGroup p = direct_product(s3, FiniteGroup{});
  CHECK(find_isomorphism(p, s3).has_value());

  FiniteGroup v4 = direct_product(cyclic(2), cyclic(2));
  CHECK(v4.order() == 4);
  for (Index x = 1; x < 4; ++x)
    CHECK(element_order(v4, x) == 2);

  FiniteGroup a5c2 = direct_product(alternating(5), cyclic(2));
  CHECK(a5c2.order() == 120);
  CHECK(derived_subgroup(a5c2).size() == 60);
  CHECK(table_is_group(a5c2));

  CHECK(kind_of([] { direct_product(alternating(5), cyclic(2), 100); }) ==
        ErrorKind::ClosureExceedsCap);
}

TEST_CASE("quotient examples", "[group]") {
  FiniteGroup s4 = symmetric(4);
  Quotient same = quotient(s4, trivial_subgroup(s4));
  CHECK(same.group.order() == 24);
  CHECK(find_isomorphism(same.group, s4).has_value());

  FiniteGroup q8 = quaternion8();
  Quotient v = quotient(q8, center(q8));
  CHECK(v.group.order() == 4);
  for (Index x = 0; x < 4; ++x)
    if (x != v.group.identity())
      CHECK(element_order(v.group, x) == 2);

  FiniteGroup s3 = symmetric(3);
  Quotient c2 = quotient(s3, derived_subgroup(s3));
  CHECK(c2.group.order() == 2);
  for (Index x = 0; x < 6; ++x)
    CHECK(c2.group.mul(c2.projection[x], c2.projection[x]) == c2.group.identity());

  Subgroup transposition = generated_subgroup(s3, {2});
  CHECK(kind_of([&] { quotient(s3, transposition); }) == ErrorKind::NotNormal);
}

TEST_CASE("find_isomorphism examples", "[group][iso]") {
  CHECK_FALSE(find_isomorphism(cyclic(4), direct_product(cyclic(2), cyclic(2))));
  FiniteGroup a4 = alternating(4);
  auto self = find_isomorphism(a4, a4);
  REQUIRE(self);
  CHECK(is_isomorphism(a4, a4, *self));
  CHECK_FALSE(find_isomorphism(dihedral(4), quaternion8()));
  CHECK(kind_of([] { find_isomorphism(symmetric(5), symmetric(5), 100); }) ==
        ErrorKind::SearchCapExceeded);
}

TEST_CASE("find_isomorphism across two constructions of the same group", "[group][iso]") {
  FiniteGroup s4perm = perms({"(1 2)", "(1 2 3 4)"});
  auto m = find_isomorphism(symmetric(4), s4perm);
  REQUIRE(m);
  CHECK(is_isomorphism(symmetric(4), s4perm, *m));

  FiniteGroup d4perm = perms({"(1 3)", "(1 2 3 4)"});
  CHECK(find_isomorphism(dihedral(4), d4perm).has_value());
  CHECK(find_isomorphism(sl2_3(), direct_product(quaternion8(), cyclic(3))) == std::nullopt);
  CHECK(find_isomorphism(dicyclic(3), direct_product(cyclic(3), cyclic(4))) == std::nullopt);
}

TEST_CASE("is_a5 examples", "[group][a5]") {
  CHECK(is_a5(perms({"(1 2 3 4 5)", "(1 2 3)"})));
  CHECK(is_a5(alternating(5)));
  CHECK_FALSE(is_a5(cyclic(60)));
  CHECK_FALSE(is_a5(dihedral(30)));
  CHECK_FALSE(is_a5(symmetric(5)));
}

TEST_CASE("is_a5 agrees with isomorphism search on every order-60 group available", "[group][a5]") {
  const FiniteGroup a5 = alternating(5);
  std::vector<FiniteGroup> order60;
  for (auto &g : builtin_corpus())
    if (g.order() == 60)
      order60.push_back(g);
  order60.push_back(perms({"(1 2 3 4 5)", "(1 2)(3 4)"}));
  order60.push_back(perms({"(1 2 3 4 5)", "(6 7 8)", "(6 7)(8 9)"})); // C5 x A4
  REQUIRE(order60.size() >= 8);
  for (const auto &g : order60) {
    INFO(g.name() << " order " << g.order());
    REQUIRE(g.order() == 60);
    CHECK(is_a5(g) == find_isomorphism(g, a5).has_value());
  }
}

TEST_CASE("group invariants hold on the corpus", "[group][property]") {
  for (const auto &g : small_corpus()) {
    INFO(g.name());
    CHECK(table_is_group(g));

    Subgroup z = center(g);
    for (Index x = 0; x < g.order(); ++x) {
      Subgroup c = centralizer(g, x);
      CHECK(z.is_subset_of(c));
      CHECK((c.size() == g.order()) == z.contains(x));
    }

    std::size_t total = 0;
    for (std::size_t s : class_sizes(g)) {
      total += s;
      CHECK(g.order() % s == 0);
    }
    CHECK(total == g.order());

    Quotient q = quotient(g, z);
    if (q.group.order() > 1) {
      bool cyclic_quotient = false;
      for (Index x = 0; x < q.group.order(); ++x)
        cyclic_quotient = cyclic_quotient || element_order(q.group, x) == q.group.order();
      CHECK_FALSE(cyclic_quotient);
    }

    Subgroup d = derived_subgroup(g);
    CHECK(left_transversal(g, d).reps.size() * d.size() == g.order());
    CHECK(left_transversal(g, z).reps.size() * z.size() == g.order());
    CHECK(is_normal(g, d));
  }
}

TEST_CASE("isomorphism search is symmetric on corpus pairs", "[group][iso][property]") {
  auto corpus = builtin_corpus(32);
  std::map<std::size_t, std::vector<FiniteGroup>> by_order;
  for (auto &g : corpus)
    by_order[g.order()].push_back(g);
  int positives = 0;
  for (auto &[n, groups] : by_order)
    for (std::size_t i = 0; i < groups.size(); ++i)
      for (std::size_t j = 0; j < groups.size(); ++j) {
        auto f = find_isomorphism(groups[i], groups[j]);
        auto b = find_isomorphism(groups[j], groups[i]);
        INFO(groups[i].name() << " vs " << groups[j].name());
        CHECK(f.has_value() == b.has_value());
        if (f) {
          CHECK(is_isomorphism(groups[i], groups[j], *f));
          positives += i != j;
        }
      }
  // Dic2 = Q8, D3 = S3, Dic3 = C3:C4 and similar coincidences exist in the corpus.
  CHECK(positives > 0);
}
