#include <algorithm>

#include "doctest.h"
#include "ncc/covering.hpp"
#include "ncc/isomorphism.hpp"
#include "ncc/pgroup_lab.hpp"
#include "oracles.hpp"

using namespace ncc;

TEST_CASE("catalog orders") {
  CHECK(cyclic(12).order() == 12);
  CHECK(elementary_abelian(3, 3).order() == 27);
  CHECK(dihedral(16).order() == 16);
  CHECK(generalized_quaternion(32).order() == 32);
  CHECK(semidihedral(16).order() == 16);
  CHECK(modular_maximal_cyclic(16).order() == 16);
  CHECK(extraspecial(3, 3).order() == 27);
  CHECK(extraspecial(5, 25).order() == 125);
  CHECK(symmetric(5).order() == 120);
  CHECK(alternating(5).order() == 60);
  CHECK(dihedral_central_product_c4(16).order() == 16);
  CHECK(metacyclic(7, 3, 2, 0, "C7:C3").order() == 21);
}

TEST_CASE("catalog parameter errors") {
  CHECK_THROWS_AS(dihedral(7), std::invalid_argument);
  CHECK_THROWS_AS(generalized_quaternion(4), std::invalid_argument);
  CHECK_THROWS_AS(semidihedral(8), std::invalid_argument);
  CHECK_THROWS_AS(extraspecial(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(extraspecial(3, 27), std::invalid_argument);
  CHECK_THROWS_AS(construct("nonsense", {}), std::invalid_argument);
}

TEST_CASE("catalog groups are pairwise distinct where expected") {
  CHECK_FALSE(is_isomorphic(dihedral(16), semidihedral(16)));
  CHECK_FALSE(is_isomorphic(dihedral(16), generalized_quaternion(16)));
  CHECK_FALSE(is_isomorphic(semidihedral(16), modular_maximal_cyclic(16)));
  CHECK_FALSE(is_isomorphic(extraspecial(3, 3), extraspecial(3, 9)));
  CHECK(is_abelian(elementary_abelian(5, 2)));
  CHECK_FALSE(is_abelian(extraspecial(3, 9)));
  CHECK(center(extraspecial(3, 3)).order() == 3);
  CHECK(center(dihedral_central_product_c4(16)).order() == 4);
  CHECK(is_isomorphic(construct("dihedral", {8}), dihedral(8)));
}

TEST_CASE("ncc of catalog groups against brute force") {
  CHECK(ncc::ncc(dihedral(8)).value == 3);
  CHECK(oracle::ncc(dihedral(8)) == 3);
  CHECK(ncc::ncc(generalized_quaternion(16)).value == 3);
  CHECK(oracle::ncc(generalized_quaternion(16)) == 3);
  CHECK(ncc::ncc(elementary_abelian(3, 2)).value == 4);
  for (const FiniteGroup& g : {semidihedral(16), semidihedral(32), dihedral(32), generalized_quaternion(32),
                               extraspecial(3, 3), extraspecial(3, 9), dihedral_central_product_c4(16)}) {
    CAPTURE(g.label());
    CHECK(ncc::ncc(g).value == oracle::ncc(g));
  }
}

TEST_CASE("d(P) matches the number of presentation generators") {
  CHECK(d_min_generators(dihedral(16), 2) == 2);
  CHECK(d_min_generators(generalized_quaternion(16), 2) == 2);
  CHECK(d_min_generators(cyclic(32), 2) == 1);
  CHECK(d_min_generators(elementary_abelian(3, 3), 3) == 3);
  CHECK(d_min_generators(extraspecial(3, 3), 3) == 2);
  CHECK(d_min_generators(dihedral_central_product_c4(16), 2) == 3);
}

TEST_CASE("central order-p subgroups inside the Frattini subgroup") {
  CHECK(central_order_p_in_frattini(elementary_abelian(2, 3), 2).empty());
  CHECK(central_order_p_in_frattini(elementary_abelian(3, 2), 3).empty());
  CHECK(central_order_p_in_frattini(cyclic(9), 3).size() == 1);
  auto q8 = central_order_p_in_frattini(generalized_quaternion(8), 2);
  REQUIRE(q8.size() == 1);
  CHECK(q8[0].elements == center(generalized_quaternion(8)).elements);
  CHECK(central_order_p(elementary_abelian(2, 3), 2).size() == 7);
}

TEST_CASE("ncc of modular maximal-cyclic groups exceeds 3") {
  for (std::size_t order : {16, 32, 64}) {
    FiniteGroup m = modular_maximal_cyclic(order);
    CHECK(ncc::ncc(m).value > 3);
  }
}

TEST_CASE("the smallest ncc among non-cyclic 2-groups is 3") {
  for (const FiniteGroup& g : pgroup_corpus(2, 32)) {
    if (is_cyclic(g)) continue;
    CAPTURE(g.label());
    CHECK(ncc::ncc(g).value >= 3);
  }
}

TEST_CASE("non-cyclic odd p-groups have ncc at least p+1") {
  for (std::uint64_t p : {3, 5}) {
    for (const FiniteGroup& g : pgroup_corpus(p, 125)) {
      if (is_cyclic(g)) continue;
      CAPTURE(g.label());
      CHECK(ncc::ncc(g).value >= p + 1);
    }
  }
}

TEST_CASE("gamma graph for p=2, d=2, k=3 up to order 16") {
  GammaGraph g = build_gamma_graph(2, 2, 3, 16);
  REQUIRE(g.root.has_value());
  const PGroupVertex& root = g.vertices[*g.root];
  CHECK(root.order == 4);
  CHECK(root.ncc == 3);
  CHECK(is_isomorphic(root.group, elementary_abelian(2, 2)));
  CHECK(g.root_reachable_from_all());

  auto d16 = g.find(dihedral(16)), d8 = g.find(dihedral(8));
  REQUIRE(d16.has_value());
  REQUIRE(d8.has_value());
  auto has_edge = [&](std::size_t s, std::size_t t) {
    return std::any_of(g.edges.begin(), g.edges.end(),
                       [&](const GammaEdge& e) { return e.source == s && e.target == t; });
  };
  CHECK(has_edge(*d16, *d8));
  CHECK(has_edge(*d8, *g.root));
  CHECK(g.find(generalized_quaternion(8)).has_value());
  CHECK(g.find(generalized_quaternion(16)).has_value());
  CHECK(g.find(semidihedral(16)).has_value());
  CHECK_FALSE(g.find(modular_maximal_cyclic(16)).has_value());

  for (const PGroupVertex& v : g.vertices) {
    CHECK(v.ncc <= 3);
    CHECK(v.d == 2);
  }
  for (std::size_t v = 0; v + 1 < g.vertices.size(); ++v) CHECK(g.vertices[v].order <= g.vertices[v + 1].order);
  for (const GammaEdge& e : g.edges) CHECK(g.vertices[e.source].order == 2 * g.vertices[e.target].order);
}

TEST_CASE("gamma graph edges are central Frattini quotients") {
  GammaGraph g = build_gamma_graph(2, 2, 3, 32);
  for (const GammaEdge& e : g.edges) {
    const FiniteGroup& src = g.vertices[e.source].group;
    std::size_t count = 0;
    for (const SubgroupHandle& z : central_order_p_in_frattini(src, 2))
      if (is_isomorphic(quotient(src, z).group, g.vertices[e.target].group)) ++count;
    CHECK(count == e.multiplicity);
  }
  const std::string dot = gamma_to_dot(g);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(gamma_to_text(g).find("ncc=3") != std::string::npos);
}

TEST_CASE("gamma graph for p=3 has no order-27 vertex") {
  GammaGraph g = build_gamma_graph(3, 2, 3, 27);
  for (const PGroupVertex& v : g.vertices) CHECK(v.order < 27);
  CHECK(ncc::ncc(extraspecial(3, 3)).value > 3);
  CHECK(ncc::ncc(extraspecial(3, 9)).value > 3);
}

TEST_CASE("branch lemma at small n") {
  for (int n : {3, 4, 5}) {
    BranchReport r = branch_lemma_check(n);
    CAPTURE(n);
    for (const auto& f : r.failures) CAPTURE(f);
    CHECK(r.ok);
    CHECK(r.dihedral_children.size() == 3);
    CHECK(r.quaternion_children.empty());
    CHECK(r.semidihedral_children.empty());
    CHECK(r.modular_quotients.size() == 1);
  }
  CHECK_THROWS_AS(branch_lemma_check(2), std::invalid_argument);
}
