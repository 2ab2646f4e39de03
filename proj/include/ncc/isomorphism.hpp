#pragma once

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ncc/group.hpp"

namespace ncc {

/// Isomorphism invariants. Equal fingerprints are necessary for isomorphism.
struct IsoFingerprint {
  std::size_t order = 0;
  std::vector<std::pair<Elem, std::size_t>> order_histogram;  ///< (element order, count)
  std::vector<std::size_t> class_sizes;                       ///< sorted
  std::size_t center_order = 0;
  std::vector<std::size_t> derived_series;  ///< orders of G', G'', ... down to stabilisation
  int frattini_rank = -1;                   ///< d(P) for p-groups, -1 otherwise

  auto operator<=>(const IsoFingerprint&) const = default;
  std::string summary() const;
};

IsoFingerprint fingerprint(const FiniteGroup& g);

/// An isomorphism G -> H as an index map, or nullopt. Throws SizeError when the
/// orders agree and exceed limits().iso_cap.
std::optional<std::vector<Elem>> find_isomorphism(const FiniteGroup& g, const FiniteGroup& h);
bool is_isomorphic(const FiniteGroup& g, const FiniteGroup& h);

/// True if `map` is a bijective homomorphism G -> H.
bool is_isomorphism(const FiniteGroup& g, const FiniteGroup& h, const std::vector<Elem>& map);

}  // namespace ncc
