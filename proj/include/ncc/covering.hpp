#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ncc/group.hpp"

namespace ncc {

/// One cyclic subgroup, identified by its least-index generator.
struct CyclicSubgroup {
  Elem generator = 0;
  Elem order = 1;
  std::vector<Elem> elements;  ///< sorted
};

/// Every cyclic subgroup of a group, with the element -> subgroup map and the
/// maximality flags under inclusion.
struct CyclicLattice {
  std::vector<std::uint32_t> id_of;  ///< element -> index of <element> in `subgroups`
  std::vector<CyclicSubgroup> subgroups;
  std::vector<char> maximal;
};

CyclicLattice cyclic_lattice(const FiniteGroup& g);
std::vector<SubgroupHandle> cyclic_subgroups(const FiniteGroup& g);
std::vector<SubgroupHandle> maximal_cyclic_subgroups(const FiniteGroup& g);

/// A group Phi acting on `group` by automorphisms, given by the images of a
/// generating set of Phi as permutations of element indices.
struct AutAction {
  enum class Kind { inner, explicit_automorphisms };

  FiniteGroup group;
  std::vector<Permutation> actors;
  Kind kind = Kind::inner;

  /// Conjugation of g by its own generators.
  static AutAction inner(const FiniteGroup& g);
  /// Conjugation by the ambient group on a normal subgroup; `sub` is the
  /// subgroup realised as a group (see induced_group). Throws NotNormalError.
  static AutAction conjugation_on(const FiniteGroup& ambient, const SubgroupHandle& normal,
                                  const InducedGroup& sub);
};

/// Checks that every actor is a bijective homomorphism (all pairs up to order
/// 500, random pairs above). Returns a description of the first failure.
std::optional<std::string> verify_action(const AutAction& action, std::size_t random_pairs = 100000);

/// A covering number together with the subgroups realising it.
struct CoverCertificate {
  std::size_t value = 0;
  std::vector<SubgroupHandle> witnesses;
  std::size_t orbit_count = 0;  ///< orbits of maximal cyclic (resp. abelian) subgroups
};

/// CC(G, Phi): the number of Phi-orbits of maximal cyclic subgroups, with one
/// representative per orbit.
CoverCertificate cc(const AutAction& action);
CoverCertificate ncc(const FiniteGroup& g);

/// True iff the union of the full Phi-orbits of the witnesses is the whole group.
bool verify_cover(const AutAction& action, const CoverCertificate& cert);

/// Exact NCC by branch-and-bound over covers by conjugacy classes of all cyclic
/// subgroups, with raw elements as the universe. Independent of cc().
std::size_t ncc_oracle(const FiniteGroup& g);

/// Maximal cliques of the commuting graph, each verified to be a subgroup.
std::vector<SubgroupHandle> maximal_abelian_subgroups(const FiniteGroup& g);

/// Smallest number of abelian subgroups whose conjugates cover g.
CoverCertificate nac(const FiniteGroup& g);

/// Orders of maximal cyclic subgroups.
std::vector<std::uint64_t> peo(const FiniteGroup& g);
/// Element orders k > 1 with no element of order a proper multiple of k.
std::vector<std::uint64_t> meo(const FiniteGroup& g);

/// d(P) from |P / Phi(P)| = p^d.
int d_min_generators(const FiniteGroup& pgroup, std::uint64_t p);

// ---------------------------------------------------------------------------
// Hereditary-law harness

struct LawReport {
  bool ok = true;
  std::string law;
  std::string detail;
};

/// ncc(GxH) >= ncc(G) ncc(H), with equality for coprime orders.
LawReport check_product_law(const FiniteGroup& g, const FiniteGroup& h);
/// ncc(H) <= [G:H] ncc(G).
LawReport check_index_bound(const FiniteGroup& g, const SubgroupHandle& h);
/// ncc(G/N) <= ncc(G).
LawReport check_quotient_monotone(const FiniteGroup& g, const SubgroupHandle& n);
/// cc(H, conjugation by G) <= ncc(G) for normal H.
LawReport check_normal_subgroup_bound(const FiniteGroup& g, const SubgroupHandle& h);
/// For nonabelian simple S: ncc(S^k) >= k and cc(S^k, inner x factor permutations) >= k.
LawReport check_simple_power_bound(const FiniteGroup& s, int k);

/// S^k as an iterated direct product, factor 0 most significant in the index.
FiniteGroup direct_power(const FiniteGroup& s, int k);

}  // namespace ncc
