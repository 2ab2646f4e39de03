#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ncc/group.hpp"
#include "ncc/quaternion.hpp"

namespace ncc {

enum class QuatVariant { GL, GL1, PGL, PGL1, SL1 };

std::string to_string(QuatVariant v);
QuatVariant parse_variant(const std::string& s);

/// Finite congruence quotient of a unit group of O_D.
///
/// GL and PGL use the congruence depth `lower_level` as given; GL1 and PGL1
/// are the same families with the depth raised to at least 1. SL1 keeps the
/// given depth. The quotient is taken modulo pi^k.
struct QuotientGroupSpec {
  std::uint64_t p = 3;
  int k = 1;
  QuatVariant variant = QuatVariant::GL;
  int lower_level = 0;

  int depth() const;
  bool projective() const { return variant == QuatVariant::PGL || variant == QuatVariant::PGL1; }
  /// "quat:p=5,k=3,variant=PGL1,i=1"
  std::string to_string() const;
  static QuotientGroupSpec parse(const std::string& s);
  /// Throws std::invalid_argument for unsupported parameters.
  void validate() const;
  bool operator==(const QuotientGroupSpec&) const = default;
};

/// Closed-form order of the quotient.
std::uint64_t predicted_order(const QuotientGroupSpec& spec);

/// A built quotient with the canonical quaternion representative of each element.
struct QuaternionQuotient {
  QuotientGroupSpec spec;
  FiniteGroup group;
  std::vector<QuaternionIntegral> reps;
};

/// Canonical representative of x in the quotient described by spec (PGL variants
/// pick the lexicographically least central rescaling).
QuaternionIntegral canonical_rep(const QuotientGroupSpec& spec, const QuaternionIntegral& x);

/// Reference implementation of canonical_rep trying every admissible scalar.
QuaternionIntegral canonical_rep_brute(const QuotientGroupSpec& spec, const QuaternionIntegral& x);

QuaternionQuotient build_quotient_with_reps(const QuotientGroupSpec& spec);
FiniteGroup build_quotient(const QuotientGroupSpec& spec);

struct QuaternionCheck {
  bool ok = false;
  std::string detail;
};

/// GL_i / GL_{i+1} formed as a quotient of the built GL_i / GL_k; checks that it
/// is elementary abelian of order p^2.
QuaternionCheck check_graded_structure(std::uint64_t p, int i, int k);
/// SL1 and PGL quotients at depth i and level k are isomorphic (p odd).
QuaternionCheck check_sl_pgl_iso(std::uint64_t p, int i, int k);

/// Subgroups of index p of a p-group: kernels of the nonzero functionals on
/// the Frattini quotient, one per hyperplane.
std::vector<SubgroupHandle> index_p_subgroups(const FiniteGroup& g, std::uint64_t p);

// ---------------------------------------------------------------------------
// Towers

struct TowerRow {
  int k = 0;
  std::optional<std::size_t> order;
  std::optional<std::size_t> ncc;
  std::string note;  ///< set when the row was skipped
  /// ncc of each index-p subgroup, columns matched across k by their image
  /// modulo pi^(depth+1).
  std::vector<std::optional<std::size_t>> subgroup_ncc;
};

struct TowerReport {
  QuotientGroupSpec base;  ///< spec with k = kmin
  int kmin = 0;
  int kmax = 0;
  std::vector<TowerRow> rows;
  bool nondecreasing = true;
  bool strictly_increasing = true;
  std::optional<int> stabilization_level;  ///< first k whose value equals every later value
  std::size_t subgroup_columns = 0;
};

/// ncc over k in [kmin, kmax]. With `subgroup_columns`, also ncc of each
/// index-p subgroup of every p-group row (needs depth >= 1).
TowerReport tower(std::uint64_t p, QuatVariant variant, int i, int kmin, int kmax,
                  bool subgroup_columns = false);

}  // namespace ncc
