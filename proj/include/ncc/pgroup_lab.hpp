#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ncc/group.hpp"
#include "ncc/isomorphism.hpp"

namespace ncc {

// ---------------------------------------------------------------------------
// Catalog. Every constructor returns a permutation group (regular
// representation unless noted) with its order checked.

FiniteGroup cyclic(std::size_t n);
/// (Z/p)^d, as d disjoint p-cycles.
FiniteGroup elementary_abelian(std::uint64_t p, int d);
/// Dihedral group of the given order (order >= 4, even).
FiniteGroup dihedral(std::size_t order);
/// Generalized quaternion group of order 2^n, n >= 3.
FiniteGroup generalized_quaternion(std::size_t order);
/// Semidihedral group of order 2^n, n >= 4.
FiniteGroup semidihedral(std::size_t order);
/// <x, y | x^(2^(n-1)), y^2, y x y^-1 = x^(1 + 2^(n-2))>, order 2^n, n >= 4.
FiniteGroup modular_maximal_cyclic(std::size_t order);
/// Extraspecial group of order p^3 for odd p: exponent p (Heisenberg) or p^2.
FiniteGroup extraspecial(std::uint64_t p, std::uint64_t exponent);
/// <x, y | x^m, y^n = x^s, y x y^-1 = x^r>, order m n.
FiniteGroup metacyclic(std::size_t m, std::size_t n, std::size_t r, std::size_t s, std::string label);
FiniteGroup symmetric(std::size_t n);
FiniteGroup alternating(std::size_t n);
/// D_{order/2} x C4 with the two central involutions identified (order >= 16).
FiniteGroup dihedral_central_product_c4(std::size_t order);

/// Builds a catalog group from a name and integer arguments, e.g.
/// ("dihedral", {8}). Throws std::invalid_argument for unknown names.
FiniteGroup construct(const std::string& name, const std::vector<std::uint64_t>& args);
/// Names accepted by construct().
std::vector<std::string> catalog_names();

/// Catalog p-groups up to max_order plus quaternion quotient towers within it.
std::vector<FiniteGroup> pgroup_corpus(std::uint64_t p, std::size_t max_order);

// ---------------------------------------------------------------------------
// Central quotient graph

/// Order-p subgroups of Z(P) cap Phi(P).
std::vector<SubgroupHandle> central_order_p_in_frattini(const FiniteGroup& pgroup, std::uint64_t p);
/// Order-p subgroups of Z(P).
std::vector<SubgroupHandle> central_order_p(const FiniteGroup& pgroup, std::uint64_t p);

struct PGroupVertex {
  FiniteGroup group;
  IsoFingerprint fingerprint;
  std::size_t ncc = 0;
  int d = 0;
  std::size_t order = 0;
  std::string name;
};

struct GammaEdge {
  std::size_t source = 0;  ///< P
  std::size_t target = 0;  ///< P/Z
  std::size_t multiplicity = 1;  ///< number of central Z giving this quotient
};

struct GammaGraph {
  std::uint64_t p = 2;
  std::size_t k = 3;
  int d = 2;
  std::size_t max_order = 0;
  std::vector<PGroupVertex> vertices;  ///< ordered by order, fingerprint, discovery
  std::vector<GammaEdge> edges;        ///< sorted by (source, target)
  std::optional<std::size_t> root;     ///< the vertex (Z/p)^d
  /// Spanning tree towards the root, by breadth-first discovery: tree_parent[v]
  /// is the target of the tree edge leaving v (none for the root).
  std::vector<std::optional<std::size_t>> tree_parent;

  std::optional<std::size_t> find(const FiniteGroup& g) const;
  /// Every vertex reaches the root along edges.
  bool root_reachable_from_all() const;
};

GammaGraph build_gamma_graph(std::uint64_t p, int d, std::size_t k, std::size_t max_order);
std::string gamma_to_text(const GammaGraph& graph);
std::string gamma_to_dot(const GammaGraph& graph);

struct BranchReport {
  bool ok = true;
  int n = 0;
  std::vector<std::string> dihedral_children;  ///< names of order-2^(n+1) ncc<=3 extensions of D_{2^n}
  std::vector<std::string> quaternion_children;
  std::vector<std::string> semidihedral_children;
  std::vector<std::string> modular_quotients;  ///< order-2^n central quotients of M_{2^(n+1)}
  std::vector<std::string> failures;
};

/// Checks the branching of the dihedral path at D_{2^n} within the order-2^(n+1)
/// corpus (central extensions by Z/2 with ncc <= k).
BranchReport branch_lemma_check(int n, std::size_t k = 3);

}  // namespace ncc
