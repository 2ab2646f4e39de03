#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ncc {

using Elem = std::uint32_t;
using Permutation = std::vector<std::uint32_t>;

/// Construction limits. The defaults keep every built-in computation at desk scale.
struct Limits {
  std::size_t order_cap = 50000;     ///< largest group any constructor will build
  std::size_t dense_threshold = 5000;///< groups up to this order carry a full Cayley table
  std::size_t iso_cap = 2048;
  std::size_t oracle_cap = 500;
  std::size_t nac_cap = 800;
};

Limits& limits();

class SizeError : public std::runtime_error {
 public:
  SizeError(const std::string& what, std::size_t requested, std::size_t cap)
      : std::runtime_error(what + ": order " + std::to_string(requested) + " exceeds cap " +
                           std::to_string(cap)),
        requested_(requested), cap_(cap) {}
  std::size_t requested() const noexcept { return requested_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t requested_;
  std::size_t cap_;
};

/// Multiplication backend for groups too large for a dense table.
class MulEngine {
 public:
  virtual ~MulEngine() = default;
  virtual Elem mul(Elem a, Elem b) const = 0;
};

/// A finite group on element indices 0..order-1. Index 0 is always the identity.
///
/// Instances are immutable handles onto shared state, so copying is cheap and
/// concurrent readers need no synchronisation.
class FiniteGroup {
 public:
  FiniteGroup() = default;

  std::size_t order() const { return impl_ ? impl_->order : 0; }
  static constexpr Elem identity() { return 0; }
  Elem mul(Elem a, Elem b) const {
    const Impl& s = *impl_;
    if (!s.table.empty()) return s.table[static_cast<std::size_t>(a) * s.order + b];
    return s.engine->mul(a, b);
  }
  Elem inv(Elem a) const { return impl_->inv[a]; }
  /// g^-1 x g
  Elem conj(Elem x, Elem g) const { return mul(mul(inv(g), x), g); }
  Elem pow(Elem a, std::uint64_t e) const;
  const std::vector<Elem>& generators() const { return impl_->gens; }
  const std::string& label() const { return label_; }
  bool dense() const { return !impl_->table.empty(); }
  /// Same group under a different label.
  FiniteGroup relabeled(std::string label) const;

  /// Builds a group from an arbitrary multiplication callback. `inverse` may be
  /// empty, in which case inverses are found from element powers.
  static FiniteGroup from_callback(std::size_t order, std::function<Elem(Elem, Elem)> mul,
                                   std::vector<Elem> gens, std::string label,
                                   std::vector<Elem> inverse = {});

  /// Wraps a precomputed right-multiplication Cayley graph; `right[x * ngens + s]`
  /// is x * gens[s], and every element must be reachable from 0 via the BFS
  /// `parent`/`via` arrays. Used by the closure builders.
  static FiniteGroup from_cayley_graph(std::size_t order, std::vector<Elem> gens,
                                       const std::vector<Elem>& right,
                                       const std::vector<Elem>& parent,
                                       const std::vector<std::uint32_t>& via,
                                       std::shared_ptr<const MulEngine> engine, std::string label);

 private:
  struct Impl {
    std::size_t order = 0;
    std::vector<std::uint16_t> table;
    std::shared_ptr<const MulEngine> engine;
    std::vector<Elem> inv;
    std::vector<Elem> gens;
    std::string label;
  };
  explicit FiniteGroup(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)), label_(impl_->label) {}
  static std::vector<Elem> inverses_by_powers(std::size_t order,
                                              const std::function<Elem(Elem, Elem)>& mul);

  std::shared_ptr<const Impl> impl_;
  std::string label_;
};

/// A subgroup of a parent group, stored as a sorted element-index set.
struct SubgroupHandle {
  FiniteGroup parent;
  std::vector<Elem> elements;

  std::size_t order() const { return elements.size(); }
  bool contains(Elem g) const;
};

/// Raised by quotient() for a non-normal subgroup. Carries g, n with g^-1 n g outside N.
class NotNormalError : public std::invalid_argument {
 public:
  NotNormalError(Elem g, Elem n)
      : std::invalid_argument("subgroup is not normal: conjugate of " + std::to_string(n) +
                              " by " + std::to_string(g) + " leaves it"),
        g(g), n(n) {}
  Elem g;
  Elem n;
};

// ---------------------------------------------------------------------------
// Construction

/// Closure of permutations on {0..degree-1}. Elements are indexed in breadth-first
/// discovery order from the identity, right-multiplying by generators.
FiniteGroup from_generators(std::size_t degree, const std::vector<Permutation>& gens,
                            std::string label = "perm");

/// Group from an explicit multiplication table (row-major, order x order). The
/// table is validated: closure, identity, inverses, associativity.
FiniteGroup from_table(std::size_t order, const std::vector<Elem>& table,
                       std::string label = "table");

FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);

struct Quotient {
  FiniteGroup group;
  std::vector<Elem> projection;  ///< element of G -> coset index
};
Quotient quotient(const FiniteGroup& g, const SubgroupHandle& n);

struct InducedGroup {
  FiniteGroup group;
  std::vector<Elem> embedding;  ///< subgroup index -> parent index
};
/// The subgroup as a group in its own right (elements in increasing parent order).
InducedGroup induced_group(const SubgroupHandle& h);

/// Generic closure over element objects with a value hash, used by the
/// permutation and quaternion builders. If `elements_out` is given it receives
/// the element objects in index order.
template <class E, class Hash, class Mul>
FiniteGroup close_elements(const E& identity, const std::vector<E>& gens, Mul mul,
                           std::string label, std::vector<E>* elements_out = nullptr);

// ---------------------------------------------------------------------------
// Structure

Permutation compose(const Permutation& a, const Permutation& b);  ///< apply a then b
bool is_permutation(std::span<const std::uint32_t> p);

std::vector<Elem> element_orders(const FiniteGroup& g);
std::uint64_t element_order(const FiniteGroup& g, Elem x);

/// Sorted closure of `gens` inside g.
std::vector<Elem> generated_subgroup(const FiniteGroup& g, std::span<const Elem> gens);
SubgroupHandle subgroup(const FiniteGroup& g, std::span<const Elem> gens);
SubgroupHandle whole(const FiniteGroup& g);
SubgroupHandle trivial(const FiniteGroup& g);
SubgroupHandle normal_closure(const FiniteGroup& g, std::span<const Elem> gens);

/// Exhaustive normality test; returns a witness (g, n) on failure.
std::optional<std::pair<Elem, Elem>> normality_witness(const SubgroupHandle& n);
bool is_normal(const SubgroupHandle& n);

struct ConjugacyClasses {
  std::vector<std::vector<Elem>> classes;  ///< each sorted; ordered by least element
  std::vector<std::uint32_t> class_of;
};
ConjugacyClasses conjugacy_classes(const FiniteGroup& g);

SubgroupHandle centralizer(const FiniteGroup& g, Elem x);
SubgroupHandle center(const FiniteGroup& g);
SubgroupHandle derived_subgroup(const FiniteGroup& g);

bool is_abelian(const FiniteGroup& g);
bool is_cyclic(const FiniteGroup& g);

/// Returns p if |g| = p^n for a prime p (n >= 1), 0 otherwise (1 for the trivial group).
std::uint64_t prime_of_pgroup(std::size_t order);

/// Frattini subgroup [P,P]P^p of a p-group. Throws std::invalid_argument otherwise.
SubgroupHandle frattini_pgroup(const FiniteGroup& pgroup, std::uint64_t p);

/// No proper nontrivial normal subgroup; checked by normal closure of each class.
bool is_simple(const FiniteGroup& g);

/// A small generating set found greedily (largest element orders first).
std::vector<Elem> greedy_generators(const FiniteGroup& g);

/// Verifies associativity (exhaustive up to order 200, random triples above),
/// identity and inverse laws. Returns an explanation on failure.
std::optional<std::string> verify_group_axioms(const FiniteGroup& g, std::size_t random_triples = 100000);

}  // namespace ncc

#include "ncc/group_closure.ipp"
