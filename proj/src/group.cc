#include "ncc/group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <string_view>

namespace ncc {

Limits& limits() {
  static Limits instance;
  return instance;
}

namespace {

struct PermHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto v : p) h = (h ^ v) * 1099511628211ull;
    return h;
  }
};

class CallbackEngine final : public MulEngine {
 public:
  explicit CallbackEngine(std::function<Elem(Elem, Elem)> f) : f_(std::move(f)) {}
  Elem mul(Elem a, Elem b) const override { return f_(a, b); }

 private:
  std::function<Elem(Elem, Elem)> f_;
};

std::vector<Elem> sorted_unique(std::vector<Elem> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// FiniteGroup

Elem FiniteGroup::pow(Elem a, std::uint64_t e) const {
  Elem result = identity();
  Elem base = a;
  while (e) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

std::vector<Elem> FiniteGroup::inverses_by_powers(std::size_t order,
                                                  const std::function<Elem(Elem, Elem)>& mul) {
  constexpr Elem kUnset = ~Elem{0};
  std::vector<Elem> inv(order, kUnset);
  inv[0] = 0;
  std::vector<Elem> powers;
  for (Elem x = 1; x < order; ++x) {
    if (inv[x] != kUnset) continue;
    powers.assign(1, x);
    while (powers.back() != 0) {
      powers.push_back(mul(powers.back(), x));
      if (powers.size() > order) throw std::logic_error("element of infinite order");
    }
    // powers[j] = x^(j+1); (x^a)^-1 = x^(n-a) with n = powers.size()
    const std::size_t n = powers.size();
    for (std::size_t a = 1; a < n; ++a) inv[powers[a - 1]] = powers[n - a - 1];
  }
  return inv;
}

FiniteGroup FiniteGroup::from_callback(std::size_t order, std::function<Elem(Elem, Elem)> mul,
                                       std::vector<Elem> gens, std::string label,
                                       std::vector<Elem> inverse) {
  auto impl = std::make_shared<Impl>();
  impl->order = order;
  impl->label = std::move(label);
  impl->gens = std::move(gens);
  if (order <= limits().dense_threshold) {
    impl->table.resize(order * order);
    for (std::size_t a = 0; a < order; ++a)
      for (std::size_t b = 0; b < order; ++b)
        impl->table[a * order + b] =
            static_cast<std::uint16_t>(mul(static_cast<Elem>(a), static_cast<Elem>(b)));
  } else {
    impl->engine = std::make_shared<CallbackEngine>(mul);
  }
  if (inverse.empty()) {
    if (!impl->table.empty()) {
      const Impl& s = *impl;
      inverse = inverses_by_powers(order, [&s](Elem a, Elem b) -> Elem {
        return s.table[static_cast<std::size_t>(a) * s.order + b];
      });
    } else {
      inverse = inverses_by_powers(order, mul);
    }
  }
  impl->inv = std::move(inverse);
  return FiniteGroup(std::move(impl));
}

FiniteGroup FiniteGroup::relabeled(std::string label) const {
  FiniteGroup g = *this;
  g.label_ = std::move(label);
  return g;
}

FiniteGroup FiniteGroup::from_cayley_graph(std::size_t order, std::vector<Elem> gens,
                                           const std::vector<Elem>& right,
                                           const std::vector<Elem>& parent,
                                           const std::vector<std::uint32_t>& via,
                                           std::shared_ptr<const MulEngine> engine,
                                           std::string label) {
  auto impl = std::make_shared<Impl>();
  impl->order = order;
  impl->label = std::move(label);
  const std::size_t ng = gens.size();
  impl->gens = sorted_unique(gens);
  impl->gens.erase(std::remove(impl->gens.begin(), impl->gens.end(), Elem{0}), impl->gens.end());
  if (!engine) {
    // x * y_j = (x * y_parent(j)) * gen_via(j); children follow parents in BFS order.
    impl->table.resize(order * order);
    for (std::size_t x = 0; x < order; ++x) {
      std::uint16_t* row = impl->table.data() + x * order;
      row[0] = static_cast<std::uint16_t>(x);
      for (std::size_t j = 1; j < order; ++j)
        row[j] = static_cast<std::uint16_t>(right[static_cast<std::size_t>(row[parent[j]]) * ng + via[j]]);
    }
    impl->inv.assign(order, 0);
    for (std::size_t x = 0; x < order; ++x) {
      const std::uint16_t* row = impl->table.data() + x * order;
      for (std::size_t y = 0; y < order; ++y)
        if (row[y] == 0) {
          impl->inv[x] = static_cast<Elem>(y);
          break;
        }
    }
  } else {
    impl->engine = std::move(engine);
    const MulEngine* e = impl->engine.get();
    impl->inv = inverses_by_powers(order, [e](Elem a, Elem b) { return e->mul(a, b); });
  }
  return FiniteGroup(std::move(impl));
}

bool SubgroupHandle::contains(Elem g) const {
  return std::binary_search(elements.begin(), elements.end(), g);
}

// ---------------------------------------------------------------------------
// Construction

Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = b[a[i]];
  return r;
}

bool is_permutation(std::span<const std::uint32_t> p) {
  std::vector<bool> seen(p.size(), false);
  for (auto v : p) {
    if (v >= p.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

FiniteGroup from_generators(std::size_t degree, const std::vector<Permutation>& gens,
                            std::string label) {
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].size() != degree || !is_permutation(gens[i]))
      throw std::invalid_argument("generator " + std::to_string(i) +
                                  " is not a permutation of degree " + std::to_string(degree));
  }
  Permutation id(degree);
  std::iota(id.begin(), id.end(), 0u);
  return close_elements<Permutation, PermHash>(id, gens, compose, std::move(label));
}

FiniteGroup from_table(std::size_t order, const std::vector<Elem>& table, std::string label) {
  if (order == 0 || table.size() != order * order)
    throw std::invalid_argument("table size does not match order " + std::to_string(order));
  if (order > limits().order_cap) throw SizeError("table", order, limits().order_cap);
  for (std::size_t i = 0; i < table.size(); ++i)
    if (table[i] >= order)
      throw std::invalid_argument("table entry " + std::to_string(table[i]) + " at row " +
                                  std::to_string(i / order) + " is out of range");
  // find the identity and relabel it to 0 by swapping labels
  std::optional<Elem> e;
  for (Elem x = 0; x < order && !e; ++x) {
    bool ok = true;
    for (Elem y = 0; y < order && ok; ++y)
      ok = table[x * order + y] == y && table[y * order + x] == y;
    if (ok) e = x;
  }
  if (!e) throw std::invalid_argument("table has no two-sided identity");
  std::vector<Elem> relabel(order);
  std::iota(relabel.begin(), relabel.end(), 0u);
  std::swap(relabel[0], relabel[*e]);  // old -> new (an involution)
  std::vector<Elem> t(order * order);
  for (Elem a = 0; a < order; ++a)
    for (Elem b = 0; b < order; ++b)
      t[relabel[a] * order + relabel[b]] = relabel[table[a * order + b]];
  for (Elem a = 0; a < order; ++a) {
    std::vector<bool> row(order, false), col(order, false);
    for (Elem b = 0; b < order; ++b) {
      if (row[t[a * order + b]] || col[t[b * order + a]])
        throw std::invalid_argument("table is not a Latin square at element " + std::to_string(a));
      row[t[a * order + b]] = col[t[b * order + a]] = true;
    }
  }
  auto mul = [t, order](Elem a, Elem b) { return t[a * order + b]; };
  FiniteGroup g = FiniteGroup::from_callback(order, mul, {}, label);
  if (auto err = verify_group_axioms(g)) throw std::invalid_argument("table: " + *err);
  std::vector<Elem> gens = greedy_generators(g);
  return FiniteGroup::from_callback(order, mul, std::move(gens), std::move(label));
}

FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const std::size_t ng = g.order(), nh = h.order();
  const std::size_t n = ng * nh;
  if (n > limits().order_cap) throw SizeError("direct product", n, limits().order_cap);
  std::vector<Elem> gens;
  for (Elem x : g.generators()) gens.push_back(static_cast<Elem>(x * nh));
  for (Elem y : h.generators()) gens.push_back(y);
  std::vector<Elem> inv(n);
  for (std::size_t x = 0; x < ng; ++x)
    for (std::size_t y = 0; y < nh; ++y)
      inv[x * nh + y] = static_cast<Elem>(g.inv(static_cast<Elem>(x)) * nh + h.inv(static_cast<Elem>(y)));
  auto mul = [g, h, nh](Elem a, Elem b) -> Elem {
    return static_cast<Elem>(g.mul(static_cast<Elem>(a / nh), static_cast<Elem>(b / nh)) * nh +
                             h.mul(static_cast<Elem>(a % nh), static_cast<Elem>(b % nh)));
  };
  return FiniteGroup::from_callback(n, mul, std::move(gens), g.label() + " x " + h.label(),
                                    std::move(inv));
}

Quotient quotient(const FiniteGroup& g, const SubgroupHandle& n) {
  if (auto w = normality_witness(n)) throw NotNormalError(w->first, w->second);
  const std::size_t order = g.order();
  constexpr Elem kUnset = ~Elem{0};
  std::vector<Elem> proj(order, kUnset);
  std::vector<Elem> reps;
  for (Elem x = 0; x < order; ++x) {
    if (proj[x] != kUnset) continue;
    const Elem c = static_cast<Elem>(reps.size());
    reps.push_back(x);
    for (Elem m : n.elements) proj[g.mul(x, m)] = c;
  }
  std::vector<Elem> gens;
  for (Elem s : g.generators())
    if (proj[s] != 0) gens.push_back(proj[s]);
  gens = sorted_unique(gens);
  std::vector<Elem> inv(reps.size());
  for (std::size_t c = 0; c < reps.size(); ++c) inv[c] = proj[g.inv(reps[c])];
  auto mul = [g, reps, proj](Elem a, Elem b) { return proj[g.mul(reps[a], reps[b])]; };
  FiniteGroup q = FiniteGroup::from_callback(reps.size(), mul, std::move(gens),
                                             g.label() + "/N" + std::to_string(n.order()),
                                             std::move(inv));
  return {std::move(q), std::move(proj)};
}

InducedGroup induced_group(const SubgroupHandle& h) {
  const FiniteGroup& g = h.parent;
  std::vector<Elem> emb = h.elements;
  std::vector<Elem> pos(g.order(), ~Elem{0});
  for (std::size_t i = 0; i < emb.size(); ++i) pos[emb[i]] = static_cast<Elem>(i);
  if (emb.empty() || emb[0] != 0) throw std::invalid_argument("subgroup lacks the identity");
  std::vector<Elem> inv(emb.size());
  for (std::size_t i = 0; i < emb.size(); ++i) inv[i] = pos[g.inv(emb[i])];
  auto mul = [g, emb, pos](Elem a, Elem b) { return pos[g.mul(emb[a], emb[b])]; };
  FiniteGroup sub = FiniteGroup::from_callback(emb.size(), mul, {}, g.label() + ".sub",
                                               std::move(inv));
  std::vector<Elem> gens = greedy_generators(sub);
  FiniteGroup with_gens = FiniteGroup::from_callback(
      emb.size(), [sub](Elem a, Elem b) { return sub.mul(a, b); }, std::move(gens),
      g.label() + ".sub" + std::to_string(emb.size()),
      [&] {
        std::vector<Elem> v(emb.size());
        for (Elem i = 0; i < emb.size(); ++i) v[i] = sub.inv(i);
        return v;
      }());
  return {std::move(with_gens), std::move(emb)};
}

// ---------------------------------------------------------------------------
// Structure

std::uint64_t element_order(const FiniteGroup& g, Elem x) {
  std::uint64_t k = 1;
  for (Elem y = x; y != 0; y = g.mul(y, x)) ++k;
  return k;
}

std::vector<Elem> element_orders(const FiniteGroup& g) {
  std::vector<Elem> ord(g.order(), 0);
  ord[0] = 1;
  std::vector<Elem> powers;
  for (Elem x = 1; x < g.order(); ++x) {
    if (ord[x]) continue;
    powers.assign(1, x);
    while (powers.back() != 0) powers.push_back(g.mul(powers.back(), x));
    const Elem n = static_cast<Elem>(powers.size());
    for (Elem j = 1; j < n; ++j)
      if (!ord[powers[j - 1]]) ord[powers[j - 1]] = n / std::gcd(n, j);
  }
  return ord;
}

std::vector<Elem> generated_subgroup(const FiniteGroup& g, std::span<const Elem> gens) {
  std::vector<char> in(g.order(), 0);
  std::vector<Elem> out{0};
  in[0] = 1;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (Elem s : gens) {
      Elem y = g.mul(out[i], s);
      if (!in[y]) {
        in[y] = 1;
        out.push_back(y);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

SubgroupHandle subgroup(const FiniteGroup& g, std::span<const Elem> gens) {
  return {g, generated_subgroup(g, gens)};
}

SubgroupHandle whole(const FiniteGroup& g) {
  std::vector<Elem> all(g.order());
  std::iota(all.begin(), all.end(), 0u);
  return {g, std::move(all)};
}

SubgroupHandle trivial(const FiniteGroup& g) { return {g, {0}}; }

SubgroupHandle normal_closure(const FiniteGroup& g, std::span<const Elem> gens) {
  std::vector<char> in(g.order(), 0);
  std::vector<Elem> conjugates;
  for (Elem s : gens) {
    if (in[s]) continue;
    std::vector<Elem> orbit{s};
    in[s] = 1;
    for (std::size_t i = 0; i < orbit.size(); ++i)
      for (Elem t : g.generators()) {
        Elem y = g.conj(orbit[i], t);
        if (!in[y]) {
          in[y] = 1;
          orbit.push_back(y);
        }
      }
    conjugates.insert(conjugates.end(), orbit.begin(), orbit.end());
  }
  return subgroup(g, conjugates);
}

std::optional<std::pair<Elem, Elem>> normality_witness(const SubgroupHandle& n) {
  const FiniteGroup& g = n.parent;
  std::vector<char> in(g.order(), 0);
  for (Elem x : n.elements) in[x] = 1;
  for (Elem x = 0; x < g.order(); ++x)
    for (Elem m : n.elements)
      if (!in[g.conj(m, x)]) return std::make_pair(x, m);
  return std::nullopt;
}

bool is_normal(const SubgroupHandle& n) { return !normality_witness(n).has_value(); }

ConjugacyClasses conjugacy_classes(const FiniteGroup& g) {
  ConjugacyClasses cc;
  constexpr std::uint32_t kUnset = ~std::uint32_t{0};
  cc.class_of.assign(g.order(), kUnset);
  for (Elem x = 0; x < g.order(); ++x) {
    if (cc.class_of[x] != kUnset) continue;
    const auto id = static_cast<std::uint32_t>(cc.classes.size());
    std::vector<Elem> orbit{x};
    cc.class_of[x] = id;
    for (std::size_t i = 0; i < orbit.size(); ++i)
      for (Elem s : g.generators()) {
        Elem y = g.conj(orbit[i], s);
        if (cc.class_of[y] == kUnset) {
          cc.class_of[y] = id;
          orbit.push_back(y);
        }
      }
    std::sort(orbit.begin(), orbit.end());
    cc.classes.push_back(std::move(orbit));
  }
  return cc;
}

SubgroupHandle centralizer(const FiniteGroup& g, Elem x) {
  SubgroupHandle c{g, {}};
  for (Elem y = 0; y < g.order(); ++y)
    if (g.mul(x, y) == g.mul(y, x)) c.elements.push_back(y);
  return c;
}

SubgroupHandle center(const FiniteGroup& g) {
  SubgroupHandle z{g, {}};
  for (Elem y = 0; y < g.order(); ++y) {
    bool central = true;
    for (Elem s : g.generators())
      if (g.mul(s, y) != g.mul(y, s)) {
        central = false;
        break;
      }
    if (central) z.elements.push_back(y);
  }
  return z;
}

SubgroupHandle derived_subgroup(const FiniteGroup& g) {
  // normal closure of commutators of generators
  std::vector<Elem> comms;
  const auto& gens = g.generators();
  for (Elem a : gens)
    for (Elem b : gens) {
      Elem c = g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b));
      if (c != 0) comms.push_back(c);
    }
  return normal_closure(g, comms);
}

bool is_abelian(const FiniteGroup& g) {
  const auto& gens = g.generators();
  for (Elem a : gens)
    for (Elem b : gens)
      if (g.mul(a, b) != g.mul(b, a)) return false;
  return true;
}

bool is_cyclic(const FiniteGroup& g) {
  if (!is_abelian(g)) return false;
  for (Elem o : element_orders(g))
    if (o == g.order()) return true;
  return false;
}

std::uint64_t prime_of_pgroup(std::size_t order) {
  if (order == 1) return 1;
  std::uint64_t p = 0;
  for (std::uint64_t q = 2; q * q <= order; ++q)
    if (order % q == 0) {
      p = q;
      break;
    }
  if (p == 0) return order;  // prime order
  std::size_t n = order;
  while (n % p == 0) n /= p;
  return n == 1 ? p : 0;
}

SubgroupHandle frattini_pgroup(const FiniteGroup& pgroup, std::uint64_t p) {
  const std::uint64_t q = prime_of_pgroup(pgroup.order());
  if (pgroup.order() > 1 && q != p)
    throw std::invalid_argument("frattini_pgroup: order " + std::to_string(pgroup.order()) +
                                " is not a power of " + std::to_string(p));
  std::vector<Elem> gens;
  const auto& s = pgroup.generators();
  for (Elem a : s) {
    Elem pw = pgroup.pow(a, p);
    if (pw) gens.push_back(pw);
    for (Elem b : s) {
      Elem c = pgroup.mul(pgroup.mul(pgroup.inv(a), pgroup.inv(b)), pgroup.mul(a, b));
      if (c) gens.push_back(c);
    }
  }
  // P^p is generated by all p-th powers, not only those of generators
  for (Elem x = 1; x < pgroup.order(); ++x) {
    Elem pw = pgroup.pow(x, p);
    if (pw) gens.push_back(pw);
  }
  gens = sorted_unique(gens);
  return normal_closure(pgroup, gens);
}

bool is_simple(const FiniteGroup& g) {
  if (g.order() == 1) return false;
  ConjugacyClasses cc = conjugacy_classes(g);
  for (const auto& cls : cc.classes) {
    if (cls.front() == 0) continue;
    Elem rep = cls.front();
    if (normal_closure(g, std::span<const Elem>(&rep, 1)).order() != g.order()) return false;
  }
  return true;
}

std::vector<Elem> greedy_generators(const FiniteGroup& g) {
  const std::size_t n = g.order();
  if (n == 1) return {};
  std::vector<Elem> ord = element_orders(g);
  std::vector<Elem> cand(n - 1);
  std::iota(cand.begin(), cand.end(), 1u);
  std::stable_sort(cand.begin(), cand.end(), [&](Elem a, Elem b) { return ord[a] > ord[b]; });
  std::vector<Elem> gens;
  std::vector<char> in(n, 0);
  in[0] = 1;
  std::size_t covered = 1;
  for (Elem c : cand) {
    if (covered == n) break;
    if (in[c]) continue;
    gens.push_back(c);
    std::vector<Elem> sub = generated_subgroup(g, gens);
    covered = sub.size();
    std::fill(in.begin(), in.end(), 0);
    for (Elem x : sub) in[x] = 1;
  }
  return gens;
}

std::optional<std::string> verify_group_axioms(const FiniteGroup& g, std::size_t random_triples) {
  const std::size_t n = g.order();
  for (Elem x = 0; x < n; ++x) {
    if (g.mul(0, x) != x || g.mul(x, 0) != x) return "identity fails at " + std::to_string(x);
    if (g.mul(g.inv(x), x) != 0 || g.mul(x, g.inv(x)) != 0)
      return "inverse fails at " + std::to_string(x);
  }
  auto check = [&](Elem a, Elem b, Elem c) -> std::optional<std::string> {
    if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
      return "associativity fails at (" + std::to_string(a) + "," + std::to_string(b) + "," +
             std::to_string(c) + ")";
    return std::nullopt;
  };
  if (n <= 200) {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        for (Elem c = 0; c < n; ++c)
          if (auto e = check(a, b, c)) return e;
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(n - 1));
    for (std::size_t i = 0; i < random_triples; ++i)
      if (auto e = check(pick(rng), pick(rng), pick(rng))) return e;
  }
  return std::nullopt;
}

}  // namespace ncc
