#include <random>

#include "doctest.h"
#include "ncc/covering.hpp"
#include "ncc/group.hpp"
#include "ncc/isomorphism.hpp"
#include "ncc/pgroup_lab.hpp"
#include "ncc/set_cover.hpp"
#include "oracles.hpp"

using namespace ncc;

namespace {

Permutation cycle_perm(std::size_t n, std::vector<std::uint32_t> cycle) {
  Permutation p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<std::uint32_t>(i);
  for (std::size_t i = 0; i < cycle.size(); ++i) p[cycle[i]] = cycle[(i + 1) % cycle.size()];
  return p;
}

FiniteGroup s4_from_table() {
  std::size_t order = 0;
  auto table = oracle::permutation_table(4, false, order);
  return from_table(order, table, "S4");
}

}  // namespace

TEST_CASE("closure of a single 3-cycle is cyclic of order 3") {
  FiniteGroup g = from_generators(3, {cycle_perm(3, {0, 1, 2})});
  CHECK(g.order() == 3);
  CHECK(is_cyclic(g));
  CHECK(g.mul(0, 1) == 1);
}

TEST_CASE("symmetric group S3 from a transposition and a 3-cycle") {
  FiniteGroup g = from_generators(3, {cycle_perm(3, {0, 1}), cycle_perm(3, {0, 1, 2})});
  CHECK(g.order() == 6);
  CHECK_FALSE(is_abelian(g));
  CHECK_FALSE(verify_group_axioms(g).has_value());
}

TEST_CASE("identity is index 0 and inverses are two-sided") {
  for (const FiniteGroup& g : {symmetric(4), dihedral(12), generalized_quaternion(16), s4_from_table()}) {
    for (Elem x = 0; x < g.order(); ++x) {
      CHECK(g.mul(0, x) == x);
      CHECK(g.mul(x, 0) == x);
      CHECK(g.mul(x, g.inv(x)) == 0);
      CHECK(g.mul(g.inv(x), x) == 0);
    }
  }
}

TEST_CASE("coprime direct product of cyclic groups is cyclic") {
  FiniteGroup g = direct_product(cyclic(2), cyclic(3));
  CHECK(g.order() == 6);
  CHECK(is_cyclic(g));
  CHECK_FALSE(is_cyclic(direct_product(cyclic(2), cyclic(2))));
  CHECK_FALSE(is_cyclic(direct_product(cyclic(4), cyclic(6))));
  CHECK(is_cyclic(direct_product(cyclic(4), cyclic(9))));
}

TEST_CASE("table input is validated") {
  FiniteGroup s4 = s4_from_table();
  CHECK(s4.order() == 24);
  CHECK(is_isomorphic(s4, symmetric(4)));

  // identity not at index 0 is relabelled
  std::vector<Elem> c2_shifted{1, 0, 0, 1};
  FiniteGroup c2 = from_table(2, c2_shifted);
  CHECK(c2.order() == 2);

  std::vector<Elem> not_latin{0, 1, 1, 1};
  CHECK_THROWS_AS(from_table(2, not_latin), std::invalid_argument);

  // a Latin square with identity 0 that is not associative (order 5 loop)
  std::vector<Elem> loop{0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3, 3, 2, 4, 0, 1, 4, 3, 1, 2, 0};
  CHECK_THROWS_AS(from_table(5, loop), std::invalid_argument);
}

TEST_CASE("permutation closure rejects malformed generators") {
  CHECK_THROWS_AS(from_generators(3, {Permutation{0, 0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(from_generators(3, {Permutation{0, 1}}), std::invalid_argument);
}

TEST_CASE("order cap raises SizeError with requested and cap") {
  const std::size_t saved = limits().order_cap;
  limits().order_cap = 100;
  try {
    (void)symmetric(5);
    FAIL("expected SizeError");
  } catch (const SizeError& e) {
    CHECK(e.cap() == 100);
    CHECK(e.requested() > 100);
  }
  limits().order_cap = saved;
}

TEST_CASE("quotient by a normal subgroup and NotNormalError witness") {
  FiniteGroup s4 = symmetric(4);
  SubgroupHandle a4 = derived_subgroup(s4);
  CHECK(a4.order() == 12);
  Quotient q = quotient(s4, a4);
  CHECK(q.group.order() == 2);
  for (Elem x = 0; x < s4.order(); ++x)
    for (Elem y = 0; y < s4.order(); y += 5)
      CHECK(q.projection[s4.mul(x, y)] == q.group.mul(q.projection[x], q.projection[y]));

  // a transposition generates a non-normal subgroup
  Elem t = 0;
  for (Elem x = 1; x < s4.order(); ++x)
    if (element_order(s4, x) == 2 && centralizer(s4, x).order() == 4) t = x;
  SubgroupHandle h = subgroup(s4, std::vector<Elem>{t});
  try {
    (void)quotient(s4, h);
    FAIL("expected NotNormalError");
  } catch (const NotNormalError& e) {
    CHECK(h.contains(e.n));
    CHECK_FALSE(h.contains(s4.conj(e.n, e.g)));
  }
}

TEST_CASE("induced group embeds homomorphically") {
  FiniteGroup s4 = symmetric(4);
  SubgroupHandle a4 = derived_subgroup(s4);
  InducedGroup ig = induced_group(a4);
  CHECK(ig.group.order() == 12);
  for (Elem x = 0; x < ig.group.order(); ++x)
    for (Elem y = 0; y < ig.group.order(); ++y)
      CHECK(ig.embedding[ig.group.mul(x, y)] == s4.mul(ig.embedding[x], ig.embedding[y]));
}

TEST_CASE("centre, derived subgroup, Frattini subgroup") {
  CHECK(center(generalized_quaternion(8)).order() == 2);
  CHECK(center(symmetric(4)).order() == 1);
  CHECK(derived_subgroup(symmetric(4)).order() == 12);
  CHECK(derived_subgroup(alternating(5)).order() == 60);
  CHECK(frattini_pgroup(dihedral(8), 2).order() == 2);
  CHECK(frattini_pgroup(elementary_abelian(3, 3), 3).order() == 1);
  CHECK(frattini_pgroup(cyclic(27), 3).order() == 9);
  CHECK_THROWS_AS(frattini_pgroup(symmetric(3), 3), std::invalid_argument);
}

TEST_CASE("conjugacy classes partition the group") {
  FiniteGroup s5 = symmetric(5);
  ConjugacyClasses cc = conjugacy_classes(s5);
  CHECK(cc.classes.size() == 7);
  std::size_t total = 0;
  for (const auto& c : cc.classes) total += c.size();
  CHECK(total == 120);
  CHECK(conjugacy_classes(alternating(5)).classes.size() == 5);
}

TEST_CASE("simplicity") {
  CHECK(is_simple(alternating(5)));
  CHECK(is_simple(cyclic(7)));
  CHECK_FALSE(is_simple(alternating(4)));
  CHECK_FALSE(is_simple(symmetric(5)));
}

TEST_CASE("groups above the dense threshold use the multiplication engine") {
  FiniteGroup s8 = symmetric(8);
  CHECK(s8.order() == 40320);
  CHECK_FALSE(s8.dense());
  CHECK_FALSE(verify_group_axioms(s8, 20000).has_value());
  CHECK(element_order(s8, s8.generators().back()) > 1);
}

TEST_CASE("greedy generators generate") {
  for (const FiniteGroup& g : {symmetric(4), dihedral(16), elementary_abelian(2, 4), alternating(5)}) {
    auto gens = greedy_generators(g);
    CHECK(generated_subgroup(g, gens).size() == g.order());
  }
  CHECK(greedy_generators(elementary_abelian(3, 3)).size() == 3);
}

TEST_CASE("isomorphism testing") {
  CHECK_FALSE(is_isomorphic(dihedral(8), generalized_quaternion(8)));
  CHECK_FALSE(is_isomorphic(cyclic(4), elementary_abelian(2, 2)));
  CHECK(is_isomorphic(dihedral(6), symmetric(3)));
  CHECK(is_isomorphic(dihedral(4), elementary_abelian(2, 2)));
  FiniteGroup a = direct_product(cyclic(4), cyclic(2)), b = direct_product(cyclic(2), cyclic(4));
  auto map = find_isomorphism(a, b);
  REQUIRE(map.has_value());
  CHECK(is_isomorphism(a, b, *map));
  CHECK(fingerprint(semidihedral(16)) != fingerprint(dihedral(16)));
}

TEST_CASE("exact set cover matches exhaustive search on random instances") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + rng() % 10, m = 2 + rng() % 9;
    std::vector<Bitset> sets;
    std::vector<std::uint32_t> masks;
    for (std::size_t s = 0; s < m; ++s) {
      Bitset b(n);
      std::uint32_t mask = 0;
      for (std::size_t e = 0; e < n; ++e)
        if (rng() % 3 == 0) {
          b.set(e);
          mask |= 1u << e;
        }
      sets.push_back(b);
      masks.push_back(mask);
    }
    const std::uint32_t full = (1u << n) - 1;
    std::size_t best = 100;
    for (std::uint32_t pick = 0; pick < (1u << m); ++pick) {
      std::uint32_t u = 0;
      for (std::size_t s = 0; s < m; ++s)
        if (pick >> s & 1) u |= masks[s];
      if (u == full) best = std::min<std::size_t>(best, __builtin_popcount(pick));
    }
    SetCoverResult r = min_set_cover(n, sets);
    CHECK(r.feasible == (best != 100));
    if (r.feasible) {
      CHECK(r.chosen.size() == best);
      std::uint32_t u = 0;
      for (std::size_t s : r.chosen) u |= masks[s];
      CHECK(u == full);
    }
  }
}
