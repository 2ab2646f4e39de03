#include "ncc/covering.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <unordered_set>

#include "ncc/set_cover.hpp"

namespace ncc {

namespace {

constexpr std::uint32_t kUnset = ~std::uint32_t{0};

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q * q <= n; ++q)
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  if (n > 1) out.push_back(n);
  return out;
}

Permutation conjugation_perm(const FiniteGroup& g, Elem by) {
  Permutation p(g.order());
  for (Elem x = 0; x < g.order(); ++x) p[x] = g.conj(x, by);
  return p;
}

std::vector<Elem> image_of(const Permutation& phi, const std::vector<Elem>& elems) {
  std::vector<Elem> out;
  out.reserve(elems.size());
  for (Elem x : elems) out.push_back(phi[x]);
  std::sort(out.begin(), out.end());
  return out;
}

struct VecHash {
  std::size_t operator()(const std::vector<Elem>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto x : v) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

// Orbit representatives: union-find over maximal cyclic subgroup ids.
struct Orbits {
  std::vector<std::uint32_t> orbit_of;  ///< lattice id -> orbit index (maximal only)
  std::vector<std::uint32_t> reps;      ///< orbit index -> lattice id
};

Orbits maximal_cyclic_orbits(const CyclicLattice& lat, const AutAction& action) {
  std::vector<std::uint32_t> parent(lat.subgroups.size());
  std::iota(parent.begin(), parent.end(), 0u);
  std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::uint32_t id = 0; id < lat.subgroups.size(); ++id) {
    if (!lat.maximal[id]) continue;
    for (const auto& phi : action.actors) {
      std::uint32_t a = find(id), b = find(lat.id_of[phi[lat.subgroups[id].generator]]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  Orbits o;
  o.orbit_of.assign(lat.subgroups.size(), kUnset);
  for (std::uint32_t id = 0; id < lat.subgroups.size(); ++id) {
    if (!lat.maximal[id]) continue;
    std::uint32_t root = find(id);
    if (o.orbit_of[root] == kUnset) {
      o.orbit_of[root] = static_cast<std::uint32_t>(o.reps.size());
      o.reps.push_back(root);
    }
    o.orbit_of[id] = o.orbit_of[root];
  }
  return o;
}

}  // namespace

// ---------------------------------------------------------------------------
// Cyclic subgroups

CyclicLattice cyclic_lattice(const FiniteGroup& g) {
  const std::size_t n = g.order();
  CyclicLattice lat;
  lat.id_of.assign(n, kUnset);
  std::vector<Elem> powers;
  for (Elem x = 0; x < n; ++x) {
    if (lat.id_of[x] != kUnset) continue;
    // x is the least generator of <x>: any smaller generator would have claimed it
    powers.assign(1, 0);
    for (Elem y = x; y != 0; y = g.mul(y, x)) powers.push_back(y);
    const auto ord = static_cast<Elem>(powers.size());
    const auto id = static_cast<std::uint32_t>(lat.subgroups.size());
    for (Elem j = 1; j < ord; ++j)
      if (std::gcd(j, ord) == 1) lat.id_of[powers[j]] = id;
    if (ord == 1) lat.id_of[0] = id;
    CyclicSubgroup c{x, ord, powers};
    std::sort(c.elements.begin(), c.elements.end());
    lat.subgroups.push_back(std::move(c));
  }
  lat.maximal.assign(lat.subgroups.size(), 1);
  for (const auto& c : lat.subgroups) {
    if (c.order == 1) continue;
    for (std::uint64_t q : prime_factors(c.order)) lat.maximal[lat.id_of[g.pow(c.generator, q)]] = 0;
  }
  if (n > 1) lat.maximal[lat.id_of[0]] = 0;
  return lat;
}

std::vector<SubgroupHandle> cyclic_subgroups(const FiniteGroup& g) {
  std::vector<SubgroupHandle> out;
  for (auto& c : cyclic_lattice(g).subgroups) out.push_back({g, std::move(c.elements)});
  return out;
}

std::vector<SubgroupHandle> maximal_cyclic_subgroups(const FiniteGroup& g) {
  CyclicLattice lat = cyclic_lattice(g);
  std::vector<SubgroupHandle> out;
  for (std::size_t i = 0; i < lat.subgroups.size(); ++i)
    if (lat.maximal[i]) out.push_back({g, std::move(lat.subgroups[i].elements)});
  return out;
}

// ---------------------------------------------------------------------------
// Actions and covers

AutAction AutAction::inner(const FiniteGroup& g) {
  AutAction a;
  a.group = g;
  a.kind = Kind::inner;
  for (Elem s : g.generators()) a.actors.push_back(conjugation_perm(g, s));
  return a;
}

AutAction AutAction::conjugation_on(const FiniteGroup& ambient, const SubgroupHandle& normal,
                                    const InducedGroup& sub) {
  if (auto w = normality_witness(normal)) throw NotNormalError(w->first, w->second);
  std::vector<Elem> pos(ambient.order(), kUnset);
  for (Elem i = 0; i < sub.embedding.size(); ++i) pos[sub.embedding[i]] = i;
  AutAction a;
  a.group = sub.group;
  a.kind = Kind::inner;
  for (Elem s : ambient.generators()) {
    Permutation p(sub.group.order());
    for (Elem i = 0; i < p.size(); ++i) p[i] = pos[ambient.conj(sub.embedding[i], s)];
    a.actors.push_back(std::move(p));
  }
  return a;
}

std::optional<std::string> verify_action(const AutAction& action, std::size_t random_pairs) {
  const FiniteGroup& g = action.group;
  const std::size_t n = g.order();
  for (std::size_t k = 0; k < action.actors.size(); ++k) {
    const Permutation& phi = action.actors[k];
    if (phi.size() != n || !is_permutation(phi))
      return "actor " + std::to_string(k) + " is not a permutation of the group";
    auto bad = [&](Elem a, Elem b) { return phi[g.mul(a, b)] != g.mul(phi[a], phi[b]); };
    if (n <= 500) {
      for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
          if (bad(a, b)) return "actor " + std::to_string(k) + " is not multiplicative";
    } else {
      std::mt19937_64 rng(k + 17);
      std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(n - 1));
      for (std::size_t i = 0; i < random_pairs; ++i)
        if (bad(pick(rng), pick(rng))) return "actor " + std::to_string(k) + " is not multiplicative";
    }
  }
  return std::nullopt;
}

CoverCertificate cc(const AutAction& action) {
  const FiniteGroup& g = action.group;
  CyclicLattice lat = cyclic_lattice(g);
  Orbits orbits = maximal_cyclic_orbits(lat, action);
  CoverCertificate cert;
  cert.orbit_count = orbits.reps.size();
  cert.value = cert.orbit_count;
  for (std::uint32_t id : orbits.reps) cert.witnesses.push_back({g, lat.subgroups[id].elements});
  return cert;
}

CoverCertificate ncc(const FiniteGroup& g) { return cc(AutAction::inner(g)); }

bool verify_cover(const AutAction& action, const CoverCertificate& cert) {
  const FiniteGroup& g = action.group;
  std::vector<char> covered(g.order(), 0);
  for (const auto& w : cert.witnesses) {
    std::unordered_set<std::vector<Elem>, VecHash> seen{w.elements};
    std::vector<std::vector<Elem>> queue{w.elements};
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (Elem x : queue[i]) covered[x] = 1;
      for (const auto& phi : action.actors) {
        auto img = image_of(phi, queue[i]);
        if (seen.insert(img).second) queue.push_back(std::move(img));
      }
    }
  }
  return std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });
}

std::size_t ncc_oracle(const FiniteGroup& g) {
  const std::size_t n = g.order();
  if (n > limits().oracle_cap) throw SizeError("ncc_oracle", n, limits().oracle_cap);
  // every cyclic subgroup as an element bitset
  std::set<Bitset> cyclic;
  for (Elem x = 0; x < n; ++x) {
    Bitset b(n);
    Elem y = 0;
    do {
      b.set(y);
      y = g.mul(y, x);
    } while (y != 0);
    cyclic.insert(std::move(b));
  }
  // union of each conjugacy class of cyclic subgroups, conjugating by every element
  std::set<Bitset> classes;
  for (const Bitset& c : cyclic) {
    Bitset u(n);
    for (Elem t = 0; t < n; ++t)
      for (Elem x = c.next(0); x < n; x = c.next(x + 1)) u.set(g.conj(x, t));
    classes.insert(std::move(u));
  }
  std::vector<Bitset> family(classes.begin(), classes.end());
  SetCoverResult r = min_set_cover(n, family);
  if (!r.feasible) throw std::logic_error("ncc_oracle: cyclic subgroups fail to cover the group");
  return r.chosen.size();
}

std::vector<SubgroupHandle> maximal_abelian_subgroups(const FiniteGroup& g) {
  const std::size_t n = g.order();
  if (n > limits().nac_cap) throw SizeError("maximal_abelian_subgroups", n, limits().nac_cap);
  SubgroupHandle z = center(g);
  Bitset central(n);
  for (Elem x : z.elements) central.set(x);
  std::vector<Bitset> adj(n, Bitset(n));
  for (Elem a = 0; a < n; ++a)
    for (Elem b = a + 1; b < n; ++b)
      if (g.mul(a, b) == g.mul(b, a)) {
        adj[a].set(b);
        adj[b].set(a);
      }
  std::vector<SubgroupHandle> out;
  auto report = [&](const Bitset& r) {
    std::vector<Elem> elems;
    for (Elem x = 0; x < n; ++x)
      if (r.test(x) || central.test(x)) elems.push_back(x);
    for (Elem a : elems)
      for (Elem b : elems)
        if (!std::binary_search(elems.begin(), elems.end(), g.mul(a, b)))
          throw std::logic_error("maximal commuting set is not closed");
    out.push_back({g, std::move(elems)});
  };
  // Bron-Kerbosch with Tomita pivoting on the noncentral elements
  std::function<void(Bitset&, Bitset, Bitset)> expand = [&](Bitset& r, Bitset p, Bitset x) {
    if (p.none() && x.none()) {
      report(r);
      return;
    }
    std::size_t pivot = n, best = 0;
    for (Bitset* side : {&p, &x})
      for (std::size_t u = side->next(0); u < n; u = side->next(u + 1)) {
        std::size_t c = p.count_and(adj[u]);
        if (pivot == n || c > best) {
          pivot = u;
          best = c;
        }
      }
    Bitset todo = p;
    todo.subtract(adj[pivot]);
    for (std::size_t v = todo.next(0); v < n; v = todo.next(v + 1)) {
      Bitset np = p, nx = x;
      np &= adj[v];
      nx &= adj[v];
      r.set(v);
      expand(r, std::move(np), std::move(nx));
      r.reset(v);
      p.reset(v);
      x.set(v);
    }
  };
  Bitset p(n), r(n), x(n);
  for (Elem e = 0; e < n; ++e)
    if (!central.test(e)) p.set(e);
  expand(r, p, x);
  std::sort(out.begin(), out.end(),
            [](const SubgroupHandle& a, const SubgroupHandle& b) { return a.elements < b.elements; });
  return out;
}

CoverCertificate nac(const FiniteGroup& g) {
  const std::size_t n = g.order();
  if (n > limits().nac_cap) throw SizeError("nac", n, limits().nac_cap);
  AutAction inner = AutAction::inner(g);
  CyclicLattice lat = cyclic_lattice(g);
  Orbits orbits = maximal_cyclic_orbits(lat, inner);
  std::vector<SubgroupHandle> abelians = maximal_abelian_subgroups(g);

  // conjugacy classes of maximal abelian subgroups
  std::unordered_set<std::vector<Elem>, VecHash> seen;
  std::vector<std::size_t> class_reps;
  for (std::size_t i = 0; i < abelians.size(); ++i) {
    if (seen.count(abelians[i].elements)) continue;
    class_reps.push_back(i);
    std::vector<std::vector<Elem>> queue{abelians[i].elements};
    seen.insert(abelians[i].elements);
    for (std::size_t q = 0; q < queue.size(); ++q)
      for (const auto& phi : inner.actors) {
        auto img = image_of(phi, queue[q]);
        if (seen.insert(img).second) queue.push_back(std::move(img));
      }
  }
  // universe: conjugacy classes of maximal cyclic subgroups
  const std::size_t m = orbits.reps.size();
  std::vector<Bitset> family;
  for (std::size_t rep : class_reps) {
    Bitset b(m);
    for (Elem x : abelians[rep].elements) {
      std::uint32_t id = lat.id_of[x];
      if (lat.maximal[id]) b.set(orbits.orbit_of[id]);
    }
    family.push_back(std::move(b));
  }
  SetCoverResult r = min_set_cover(m, family);
  if (!r.feasible) throw std::logic_error("nac: abelian subgroups fail to cover the group");
  CoverCertificate cert;
  cert.value = r.chosen.size();
  cert.orbit_count = class_reps.size();
  for (std::size_t k : r.chosen) cert.witnesses.push_back(abelians[class_reps[k]]);
  return cert;
}

std::vector<std::uint64_t> peo(const FiniteGroup& g) {
  CyclicLattice lat = cyclic_lattice(g);
  std::set<std::uint64_t> out;
  for (std::size_t i = 0; i < lat.subgroups.size(); ++i)
    if (lat.maximal[i]) out.insert(lat.subgroups[i].order);
  return {out.begin(), out.end()};
}

std::vector<std::uint64_t> meo(const FiniteGroup& g) {
  std::set<std::uint64_t> orders;
  for (Elem o : element_orders(g)) orders.insert(o);
  std::vector<std::uint64_t> out;
  for (auto k : orders) {
    bool dominated = false;
    for (auto m : orders)
      if (m != k && m % k == 0) dominated = true;
    if (!dominated) out.push_back(k);
  }
  return out;
}

int d_min_generators(const FiniteGroup& pgroup, std::uint64_t p) {
  std::size_t index = pgroup.order() / frattini_pgroup(pgroup, p).order();
  int d = 0;
  while (index > 1) {
    index /= p;
    ++d;
  }
  return d;
}

// ---------------------------------------------------------------------------
// Hereditary laws

LawReport check_product_law(const FiniteGroup& g, const FiniteGroup& h) {
  LawReport r;
  r.law = "product";
  const std::size_t a = ncc(g).value, b = ncc(h).value;
  const std::size_t ab = ncc(direct_product(g, h)).value;
  const bool coprime = std::gcd(g.order(), h.order()) == 1;
  r.ok = ab >= a * b && (!coprime || ab == a * b);
  r.detail = "ncc(GxH)=" + std::to_string(ab) + " ncc(G)ncc(H)=" + std::to_string(a * b) +
             (coprime ? " coprime" : "");
  return r;
}

LawReport check_index_bound(const FiniteGroup& g, const SubgroupHandle& h) {
  LawReport r;
  r.law = "index";
  const std::size_t nh = ncc(induced_group(h).group).value, ng = ncc(g).value;
  const std::size_t index = g.order() / h.order();
  r.ok = nh <= index * ng;
  r.detail = "ncc(H)=" + std::to_string(nh) + " [G:H]ncc(G)=" + std::to_string(index * ng);
  return r;
}

LawReport check_quotient_monotone(const FiniteGroup& g, const SubgroupHandle& n) {
  LawReport r;
  r.law = "quotient";
  const std::size_t nq = ncc(quotient(g, n).group).value, ng = ncc(g).value;
  r.ok = nq <= ng;
  r.detail = "ncc(G/N)=" + std::to_string(nq) + " ncc(G)=" + std::to_string(ng);
  return r;
}

LawReport check_normal_subgroup_bound(const FiniteGroup& g, const SubgroupHandle& h) {
  LawReport r;
  r.law = "normal-subgroup";
  InducedGroup sub = induced_group(h);
  const std::size_t c = cc(AutAction::conjugation_on(g, h, sub)).value, ng = ncc(g).value;
  r.ok = c <= ng;
  r.detail = "cc(H,G)=" + std::to_string(c) + " ncc(G)=" + std::to_string(ng);
  return r;
}

FiniteGroup direct_power(const FiniteGroup& s, int k) {
  if (k <= 0) return from_generators(1, {}, "trivial");
  FiniteGroup out = s;
  for (int i = 1; i < k; ++i) out = direct_product(out, s);
  return out;
}

LawReport check_simple_power_bound(const FiniteGroup& s, int k) {
  LawReport r;
  r.law = "simple-power";
  if (k <= 0) {
    r.detail = "k=0 vacuous";
    return r;
  }
  if (is_abelian(s) || !is_simple(s)) throw std::invalid_argument("S must be nonabelian simple");
  std::size_t total = 1;
  for (int i = 0; i < k; ++i) {
    total *= s.order();
    if (total > limits().order_cap) throw SizeError("S^k", total, limits().order_cap);
  }
  FiniteGroup power = direct_power(s, k);
  const std::size_t inner_value = ncc(power).value;

  // inner automorphisms plus permutations of the factors
  AutAction full = AutAction::inner(power);
  full.kind = AutAction::Kind::explicit_automorphisms;
  const std::size_t ns = s.order();
  auto digits = [&](Elem x) {
    std::vector<Elem> d(k);
    for (int i = k - 1; i >= 0; --i) {
      d[i] = static_cast<Elem>(x % ns);
      x = static_cast<Elem>(x / ns);
    }
    return d;
  };
  auto undigits = [&](const std::vector<Elem>& d) {
    Elem x = 0;
    for (int i = 0; i < k; ++i) x = static_cast<Elem>(x * ns + d[i]);
    return x;
  };
  if (k > 1) {
    std::vector<std::vector<int>> factor_perms;
    std::vector<int> swap01(k), cycle(k);
    std::iota(swap01.begin(), swap01.end(), 0);
    std::swap(swap01[0], swap01[1]);
    for (int i = 0; i < k; ++i) cycle[i] = (i + 1) % k;
    factor_perms = {swap01, cycle};
    for (const auto& fp : factor_perms) {
      Permutation phi(power.order());
      for (Elem x = 0; x < power.order(); ++x) {
        auto d = digits(x), e = d;
        for (int i = 0; i < k; ++i) e[fp[i]] = d[i];
        phi[x] = undigits(e);
      }
      full.actors.push_back(std::move(phi));
    }
  }
  const std::size_t full_value = cc(full).value;
  r.ok = inner_value >= static_cast<std::size_t>(k) && full_value >= static_cast<std::size_t>(k);
  r.detail = "ncc(S^k)=" + std::to_string(inner_value) + " cc(S^k,Aut)=" + std::to_string(full_value) +
             " k=" + std::to_string(k);
  return r;
}

}  // namespace ncc
