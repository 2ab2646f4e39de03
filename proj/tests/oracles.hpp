// Test-side reference computations. Everything here works straight from the
// definitions, using only FiniteGroup::mul, and shares no code with the library
// algorithms it is compared against.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

#include "ncc/group.hpp"

namespace oracle {

using ncc::Elem;
using ncc::FiniteGroup;

inline std::set<Elem> cyclic_of(const FiniteGroup& g, Elem x) {
  std::set<Elem> s;
  Elem y = 0;
  do {
    s.insert(y);
    y = g.mul(y, x);
  } while (y != 0);
  return s;
}

inline std::set<std::set<Elem>> all_cyclic(const FiniteGroup& g) {
  std::set<std::set<Elem>> out;
  for (Elem x = 0; x < g.order(); ++x) out.insert(cyclic_of(g, x));
  return out;
}

inline std::vector<std::set<Elem>> maximal_cyclic(const FiniteGroup& g) {
  auto all = all_cyclic(g);
  std::vector<std::set<Elem>> out;
  for (const auto& c : all) {
    bool maximal = true;
    for (const auto& d : all)
      if (d.size() > c.size() && std::includes(d.begin(), d.end(), c.begin(), c.end())) maximal = false;
    if (maximal) out.push_back(c);
  }
  return out;
}

/// x^-1 found by search, so no reliance on the stored inverse table.
inline Elem inverse(const FiniteGroup& g, Elem x) {
  for (Elem y = 0; y < g.order(); ++y)
    if (g.mul(x, y) == 0) return y;
  return 0;
}

inline std::set<Elem> conjugate(const FiniteGroup& g, const std::set<Elem>& s, Elem t) {
  const Elem ti = inverse(g, t);
  std::set<Elem> out;
  for (Elem x : s) out.insert(g.mul(g.mul(ti, x), t));
  return out;
}

/// Number of conjugacy classes of maximal cyclic subgroups, straight from the definition.
inline std::size_t ncc(const FiniteGroup& g) {
  auto maxc = maximal_cyclic(g);
  std::set<std::set<Elem>> remaining(maxc.begin(), maxc.end());
  std::size_t classes = 0;
  while (!remaining.empty()) {
    const std::set<Elem> c = *remaining.begin();
    for (Elem t = 0; t < g.order(); ++t) remaining.erase(conjugate(g, c, t));
    ++classes;
  }
  return classes;
}

inline std::size_t order_of(const FiniteGroup& g, Elem x) { return cyclic_of(g, x).size(); }

inline std::vector<std::uint64_t> peo(const FiniteGroup& g) {
  std::set<std::uint64_t> s;
  for (const auto& c : maximal_cyclic(g)) s.insert(c.size());
  return {s.begin(), s.end()};
}

inline std::vector<std::uint64_t> meo(const FiniteGroup& g) {
  std::set<std::uint64_t> orders;
  for (Elem x = 0; x < g.order(); ++x) orders.insert(order_of(g, x));
  std::vector<std::uint64_t> out;
  for (auto k : orders) {
    bool maximal = true;
    for (auto m : orders)
      if (m != k && m % k == 0) maximal = false;
    if (maximal) out.push_back(k);
  }
  return out;
}

/// Smallest number of generators, by trying all subsets of growing size.
inline int rank(const FiniteGroup& g) {
  const std::size_t n = g.order();
  if (n == 1) return 0;
  auto closure = [&](const std::vector<Elem>& gens) {
    std::set<Elem> s{0};
    std::vector<Elem> q{0};
    for (std::size_t i = 0; i < q.size(); ++i)
      for (Elem x : gens) {
        Elem y = g.mul(q[i], x);
        if (s.insert(y).second) q.push_back(y);
      }
    return s.size();
  };
  for (int r = 1; r <= 4; ++r) {
    std::vector<Elem> pick(r, 0);
    std::function<bool(int, Elem)> go = [&](int i, Elem from) -> bool {
      if (i == r) return closure(pick) == n;
      for (Elem x = from; x < n; ++x) {
        pick[i] = x;
        if (go(i + 1, x + 1)) return true;
      }
      return false;
    };
    if (go(0, 1)) return r;
  }
  return -1;
}

/// Multiplication table of all permutations of {0..n-1} (even ones only if asked),
/// composed left to right; the identity comes first.
inline std::vector<Elem> permutation_table(int n, bool even_only, std::size_t& order) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) inversions += p[i] > p[j];
    if (!even_only || inversions % 2 == 0) perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  order = perms.size();
  std::vector<Elem> table(order * order);
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b) {
      std::vector<int> c(n);
      for (int i = 0; i < n; ++i) c[i] = perms[b][perms[a][i]];
      table[a * order + b] = static_cast<Elem>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return table;
}

}  // namespace oracle
