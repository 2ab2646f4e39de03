#include "ncc/pgroup_lab.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "ncc/covering.hpp"
#include "ncc/quotient_groups.hpp"

namespace ncc {

namespace {

bool is_power_of_two(std::size_t n) { return n >= 1 && (n & (n - 1)) == 0; }

std::string num(std::size_t n) { return std::to_string(n); }

/// Right regular representation of a group given by its multiplication on 0..order-1.
template <class Mul>
FiniteGroup regular_group(std::size_t order, Mul mul, const std::vector<std::size_t>& gens,
                          std::string label) {
  std::vector<Permutation> perms;
  for (std::size_t g : gens) {
    Permutation perm(order);
    for (std::size_t e = 0; e < order; ++e) perm[e] = static_cast<std::uint32_t>(mul(e, g));
    perms.push_back(std::move(perm));
  }
  FiniteGroup out = from_generators(order, perms, label);
  if (out.order() != order)
    throw std::logic_error(label + ": generated order " + num(out.order()) + ", expected " + num(order));
  return out;
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  for (; e; e >>= 1) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
  }
  return r;
}

/// Named 2-groups of one order, used by the branch checks.
std::vector<FiniteGroup> two_group_family(std::size_t order) {
  std::vector<FiniteGroup> out;
  out.push_back(cyclic(order));
  if (order >= 8) {
    out.push_back(dihedral(order));
    out.push_back(generalized_quaternion(order));
    out.push_back(direct_product(cyclic(order / 2), cyclic(2)).relabeled("C" + num(order / 2) + "xC2"));
  }
  if (order >= 16) {
    out.push_back(semidihedral(order));
    out.push_back(modular_maximal_cyclic(order));
    out.push_back(direct_product(dihedral(order / 2), cyclic(2)).relabeled("D" + num(order / 2) + "xC2"));
    out.push_back(direct_product(generalized_quaternion(order / 2), cyclic(2))
                      .relabeled("Q" + num(order / 2) + "xC2"));
    out.push_back(direct_product(cyclic(order / 4), cyclic(4)).relabeled("C" + num(order / 4) + "xC4"));
    out.push_back(dihedral_central_product_c4(order));
  }
  return out;
}

std::string identify(const FiniteGroup& g, const std::vector<FiniteGroup>& known) {
  const IsoFingerprint f = fingerprint(g);
  for (const FiniteGroup& h : known)
    if (h.order() == g.order() && fingerprint(h) == f && is_isomorphic(g, h)) return h.label();
  return "?";
}

void push_unique(std::vector<std::string>& v, const std::string& s) {
  if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
}

}  // namespace

// ---------------------------------------------------------------------------
// Catalog

FiniteGroup cyclic(std::size_t n) {
  if (n < 1) throw std::invalid_argument("cyclic: n must be positive");
  Permutation cycle(n);
  for (std::size_t i = 0; i < n; ++i) cycle[i] = static_cast<std::uint32_t>((i + 1) % n);
  std::vector<Permutation> gens;
  if (n > 1) gens.push_back(cycle);
  return from_generators(n, gens, "C" + num(n));
}

FiniteGroup elementary_abelian(std::uint64_t p, int d) {
  if (!is_prime(p) || d < 0) throw std::invalid_argument("elementary_abelian: need prime p and d >= 0");
  const std::size_t degree = std::max<std::size_t>(1, p * d);
  std::vector<Permutation> gens;
  for (int j = 0; j < d; ++j) {
    Permutation g(degree);
    std::iota(g.begin(), g.end(), 0u);
    for (std::uint64_t i = 0; i < p; ++i) g[j * p + i] = static_cast<std::uint32_t>(j * p + (i + 1) % p);
    gens.push_back(std::move(g));
  }
  std::size_t expect = 1;
  for (int j = 0; j < d; ++j) expect *= p;
  if (expect > limits().order_cap) throw SizeError("elementary_abelian", expect, limits().order_cap);
  return from_generators(degree, gens, "C" + num(p) + "^" + num(d));
}

FiniteGroup metacyclic(std::size_t m, std::size_t n, std::size_t r, std::size_t s, std::string label) {
  if (m < 1 || n < 1) throw std::invalid_argument("metacyclic: m and n must be positive");
  if (std::gcd(r % m, m) != 1 && m > 1) throw std::invalid_argument("metacyclic: r must be a unit mod m");
  if (pow_mod(r, n, m) != 1 % m) throw std::invalid_argument("metacyclic: r^n must be 1 mod m");
  if ((r * s) % m != s % m) throw std::invalid_argument("metacyclic: y^n = x^s must commute with y");
  const std::size_t order = m * n;
  if (order > limits().order_cap) throw SizeError(label, order, limits().order_cap);
  std::vector<std::size_t> rpow(n);
  for (std::size_t j = 0; j < n; ++j) rpow[j] = pow_mod(r, j, m);
  // x^i y^j  <->  i + m j
  auto mul = [=](std::size_t a, std::size_t b) {
    const std::size_t i = a % m, j = a / m, k = b % m, l = b / m;
    std::size_t ni = i + k * rpow[j], nj = j + l;
    if (nj >= n) {
      nj -= n;
      ni += s;
    }
    return ni % m + m * nj;
  };
  std::vector<std::size_t> gens;
  if (m > 1) gens.push_back(1);
  if (n > 1) gens.push_back(m);
  return regular_group(order, mul, gens, std::move(label));
}

FiniteGroup dihedral(std::size_t order) {
  if (order < 4 || order % 2) throw std::invalid_argument("dihedral: order must be even and >= 4");
  const std::size_t m = order / 2;
  return metacyclic(m, 2, m - 1, 0, "D" + num(order));
}

FiniteGroup generalized_quaternion(std::size_t order) {
  if (order < 8 || !is_power_of_two(order))
    throw std::invalid_argument("generalized_quaternion: order must be 2^n with n >= 3");
  const std::size_t m = order / 2;
  return metacyclic(m, 2, m - 1, m / 2, "Q" + num(order));
}

FiniteGroup semidihedral(std::size_t order) {
  if (order < 16 || !is_power_of_two(order))
    throw std::invalid_argument("semidihedral: order must be 2^n with n >= 4");
  const std::size_t m = order / 2;
  return metacyclic(m, 2, m / 2 - 1, 0, "SD" + num(order));
}

FiniteGroup modular_maximal_cyclic(std::size_t order) {
  if (order < 16 || !is_power_of_two(order))
    throw std::invalid_argument("modular_maximal_cyclic: order must be 2^n with n >= 4");
  const std::size_t m = order / 2;
  return metacyclic(m, 2, m / 2 + 1, 0, "M" + num(order));
}

FiniteGroup extraspecial(std::uint64_t p, std::uint64_t exponent) {
  if (!is_prime(p) || p == 2) throw std::invalid_argument("extraspecial: p must be an odd prime");
  if (exponent == p * p) return metacyclic(p * p, p, 1 + p, 0, "C" + num(p * p) + ":C" + num(p));
  if (exponent != p) throw std::invalid_argument("extraspecial: exponent must be p or p^2");
  // unitriangular (a, b, c) <-> a + p b + p^2 c
  auto mul = [p](std::size_t x, std::size_t y) {
    const std::size_t a = x % p, b = x / p % p, c = x / (p * p);
    const std::size_t a2 = y % p, b2 = y / p % p, c2 = y / (p * p);
    return (a + a2) % p + p * ((b + b2) % p) + p * p * ((c + c2 + a * b2) % p);
  };
  return regular_group(p * p * p, mul, {1, p}, "He" + num(p));
}

FiniteGroup symmetric(std::size_t n) {
  if (n < 1) throw std::invalid_argument("symmetric: n must be positive");
  std::vector<Permutation> gens;
  if (n >= 2) {
    Permutation t(n), c(n);
    std::iota(t.begin(), t.end(), 0u);
    std::swap(t[0], t[1]);
    for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<std::uint32_t>((i + 1) % n);
    gens = {t, c};
  }
  return from_generators(n, gens, "S" + num(n));
}

FiniteGroup alternating(std::size_t n) {
  if (n < 1) throw std::invalid_argument("alternating: n must be positive");
  std::vector<Permutation> gens;
  for (std::size_t i = 2; i < n; ++i) {
    Permutation g(n);
    std::iota(g.begin(), g.end(), 0u);
    g[0] = 1;
    g[1] = static_cast<std::uint32_t>(i);
    g[i] = 0;
    gens.push_back(std::move(g));
  }
  return from_generators(n, gens, "A" + num(n));
}

FiniteGroup dihedral_central_product_c4(std::size_t order) {
  if (order < 16 || !is_power_of_two(order))
    throw std::invalid_argument("dihedral_central_product_c4: order must be 2^n with n >= 4");
  const FiniteGroup d = dihedral(order / 2), c4 = cyclic(4);
  const FiniteGroup prod = direct_product(d, c4);
  const SubgroupHandle zd = center(d);
  Elem z = 0, w = 0;
  for (Elem x : zd.elements)
    if (x != 0) z = x;
  for (Elem x = 1; x < 4; ++x)
    if (element_order(c4, x) == 2) w = x;
  const Elem gen = static_cast<Elem>(z * c4.order() + w);
  Quotient q = quotient(prod, subgroup(prod, std::vector<Elem>{gen}));
  return q.group.relabeled("D" + num(order / 2) + "oC4");
}

std::vector<std::string> catalog_names() {
  return {"alternating", "cyclic", "dihedral", "dihedral_central_product_c4", "elementary_abelian",
          "extraspecial", "generalized_quaternion", "metacyclic", "modular_maximal_cyclic",
          "semidihedral", "symmetric"};
}

FiniteGroup construct(const std::string& name, const std::vector<std::uint64_t>& args) {
  auto need = [&](std::size_t count) {
    if (args.size() != count)
      throw std::invalid_argument(name + " takes " + num(count) + " argument(s), got " + num(args.size()));
  };
  if (name == "cyclic") return need(1), cyclic(args[0]);
  if (name == "elementary_abelian") return need(2), elementary_abelian(args[0], static_cast<int>(args[1]));
  if (name == "dihedral") return need(1), dihedral(args[0]);
  if (name == "generalized_quaternion") return need(1), generalized_quaternion(args[0]);
  if (name == "semidihedral") return need(1), semidihedral(args[0]);
  if (name == "modular_maximal_cyclic") return need(1), modular_maximal_cyclic(args[0]);
  if (name == "extraspecial") return need(2), extraspecial(args[0], args[1]);
  if (name == "metacyclic") {
    need(4);
    return metacyclic(args[0], args[1], args[2], args[3],
                      "Meta(" + num(args[0]) + "," + num(args[1]) + "," + num(args[2]) + "," + num(args[3]) + ")");
  }
  if (name == "symmetric") return need(1), symmetric(args[0]);
  if (name == "alternating") return need(1), alternating(args[0]);
  if (name == "dihedral_central_product_c4") return need(1), dihedral_central_product_c4(args[0]);
  throw std::invalid_argument("unknown catalog group '" + name + "'");
}

std::vector<FiniteGroup> pgroup_corpus(std::uint64_t p, std::size_t max_order) {
  if (!is_prime(p)) throw std::invalid_argument("pgroup_corpus: p must be prime");
  std::vector<FiniteGroup> out;
  for (std::size_t n = p; n <= max_order; n *= p) out.push_back(cyclic(n));
  for (int d = 2; d <= 4; ++d) {
    std::size_t n = 1;
    for (int j = 0; j < d; ++j) n *= p;
    if (n <= max_order) out.push_back(elementary_abelian(p, d));
  }
  if (p == 2) {
    for (std::size_t n = 8; n <= max_order; n *= 2)
      for (const FiniteGroup& g : two_group_family(n))
        if (g.label() != "C" + num(n)) out.push_back(g);
  } else {
    for (std::size_t a = p * p; a <= max_order; a *= p)
      for (std::size_t b = p; b <= a && a * b <= max_order; b *= p)
        out.push_back(direct_product(cyclic(a), cyclic(b)).relabeled("C" + num(a) + "xC" + num(b)));
    if (p * p * p <= max_order) {
      out.push_back(extraspecial(p, p));
      out.push_back(extraspecial(p, p * p));
    }
    if (p * p * p * p <= max_order) {
      out.push_back(direct_product(extraspecial(p, p), cyclic(p)).relabeled("He" + num(p) + "xC" + num(p)));
      out.push_back(direct_product(extraspecial(p, p * p), cyclic(p))
                        .relabeled("C" + num(p * p) + ":C" + num(p) + "xC" + num(p)));
    }
  }
  std::vector<QuatVariant> variants{QuatVariant::GL1};
  if (p != 2) variants.push_back(QuatVariant::PGL1);
  for (QuatVariant v : variants) {
    for (int k = 2;; ++k) {
      QuotientGroupSpec spec{p, k, v, 1};
      std::uint64_t order = 0;
      try {
        order = predicted_order(spec);
      } catch (const std::invalid_argument&) {
        break;
      }
      if (order > max_order) break;
      out.push_back(build_quotient(spec));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Central quotient graph

std::vector<SubgroupHandle> central_order_p(const FiniteGroup& pgroup, std::uint64_t p) {
  const SubgroupHandle z = center(pgroup);
  std::set<std::vector<Elem>> seen;
  std::vector<SubgroupHandle> out;
  for (Elem x : z.elements) {
    if (x == 0 || element_order(pgroup, x) != p) continue;
    std::vector<Elem> h = generated_subgroup(pgroup, std::vector<Elem>{x});
    if (seen.insert(h).second) out.push_back({pgroup, std::move(h)});
  }
  std::sort(out.begin(), out.end(),
            [](const SubgroupHandle& a, const SubgroupHandle& b) { return a.elements < b.elements; });
  return out;
}

std::vector<SubgroupHandle> central_order_p_in_frattini(const FiniteGroup& pgroup, std::uint64_t p) {
  if (pgroup.order() == 1) return {};
  const SubgroupHandle phi = frattini_pgroup(pgroup, p);
  std::vector<SubgroupHandle> out;
  for (SubgroupHandle& h : central_order_p(pgroup, p)) {
    bool inside = std::all_of(h.elements.begin(), h.elements.end(), [&](Elem x) { return phi.contains(x); });
    if (inside) out.push_back(std::move(h));
  }
  return out;
}

std::optional<std::size_t> GammaGraph::find(const FiniteGroup& g) const {
  const IsoFingerprint f = fingerprint(g);
  for (std::size_t v = 0; v < vertices.size(); ++v)
    if (vertices[v].fingerprint == f && is_isomorphic(vertices[v].group, g)) return v;
  return std::nullopt;
}

bool GammaGraph::root_reachable_from_all() const {
  if (vertices.empty()) return true;
  if (!root) return false;
  std::vector<char> reach(vertices.size(), 0);
  reach[*root] = 1;
  for (bool changed = true; changed;) {
    changed = false;
    for (const GammaEdge& e : edges)
      if (reach[e.target] && !reach[e.source]) reach[e.source] = changed = true;
  }
  return std::all_of(reach.begin(), reach.end(), [](char c) { return c != 0; });
}

GammaGraph build_gamma_graph(std::uint64_t p, int d, std::size_t k, std::size_t max_order) {
  if (max_order > limits().iso_cap) throw SizeError("gamma graph", max_order, limits().iso_cap);
  GammaGraph graph;
  graph.p = p;
  graph.d = d;
  graph.k = k;
  graph.max_order = max_order;

  std::vector<PGroupVertex> found;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> multiplicity;
  auto add = [&](const FiniteGroup& g, std::size_t value, std::string name) {
    IsoFingerprint f = fingerprint(g);
    for (std::size_t v = 0; v < found.size(); ++v)
      if (found[v].fingerprint == f && is_isomorphic(found[v].group, g)) return v;
    found.push_back({g, std::move(f), value, d, g.order(), std::move(name)});
    return found.size() - 1;
  };

  for (const FiniteGroup& g : pgroup_corpus(p, max_order)) {
    if (g.order() == 1 || prime_of_pgroup(g.order()) != p) continue;
    if (d_min_generators(g, p) != d) continue;
    const std::size_t value = ncc(g).value;
    if (value <= k) add(g, value, g.label());
  }
  for (std::size_t v = 0; v < found.size(); ++v) {
    const FiniteGroup parent = found[v].group;
    const std::string parent_name = found[v].name;
    const std::size_t parent_ncc = found[v].ncc;
    for (const SubgroupHandle& z : central_order_p_in_frattini(parent, p)) {
      const FiniteGroup q = quotient(parent, z).group;
      const std::size_t value = ncc(q).value;
      if (value > parent_ncc) throw std::logic_error("quotient of " + parent_name + " has larger ncc");
      if (d_min_generators(q, p) != d) throw std::logic_error("central Frattini quotient changed d");
      const std::size_t target = add(q, value, parent_name + "/Z");
      ++multiplicity[{v, target}];
    }
  }

  std::vector<std::size_t> perm(found.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    if (found[a].order != found[b].order) return found[a].order < found[b].order;
    return found[a].fingerprint < found[b].fingerprint;
  });
  std::vector<std::size_t> where(found.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    where[perm[i]] = i;
    graph.vertices.push_back(found[perm[i]]);
  }
  for (const auto& [key, count] : multiplicity) graph.edges.push_back({where[key.first], where[key.second], count});
  std::sort(graph.edges.begin(), graph.edges.end(), [](const GammaEdge& a, const GammaEdge& b) {
    return std::pair(a.source, a.target) < std::pair(b.source, b.target);
  });

  std::size_t root_order = 1;
  for (int j = 0; j < d; ++j) root_order *= p;
  for (std::size_t v = 0; v < graph.vertices.size(); ++v)
    if (graph.vertices[v].order == root_order) graph.root = v;

  graph.tree_parent.assign(graph.vertices.size(), std::nullopt);
  if (graph.root) {
    std::vector<char> seen(graph.vertices.size(), 0);
    seen[*graph.root] = 1;
    std::vector<std::size_t> queue{*graph.root};
    for (std::size_t idx = 0; idx < queue.size(); ++idx) {
      const std::size_t v = queue[idx];
      for (const GammaEdge& e : graph.edges) {
        if (e.target != v || seen[e.source]) continue;
        seen[e.source] = 1;
        graph.tree_parent[e.source] = v;
        queue.push_back(e.source);
      }
    }
  }
  return graph;
}

std::string gamma_to_text(const GammaGraph& graph) {
  std::ostringstream os;
  os << "gamma p=" << graph.p << " d=" << graph.d << " k=" << graph.k << " max_order=" << graph.max_order << "\n";
  os << "vertices " << graph.vertices.size() << "\n";
  for (std::size_t v = 0; v < graph.vertices.size(); ++v) {
    const PGroupVertex& x = graph.vertices[v];
    os << "v" << v << " " << x.name << " order=" << x.order << " ncc=" << x.ncc << " d=" << x.d
       << (graph.root == v ? " root" : "") << "\n";
  }
  os << "edges " << graph.edges.size() << "\n";
  for (const GammaEdge& e : graph.edges)
    os << "v" << e.source << " -> v" << e.target << " x" << e.multiplicity << "\n";
  os << "tree\n";
  for (std::size_t v = 0; v < graph.tree_parent.size(); ++v)
    if (graph.tree_parent[v]) os << "v" << v << " -> v" << *graph.tree_parent[v] << "\n";
  return os.str();
}

std::string gamma_to_dot(const GammaGraph& graph) {
  std::ostringstream os;
  os << "digraph gamma_p" << graph.p << "_d" << graph.d << "_k" << graph.k << " {\n";
  os << "  rankdir=BT;\n";
  for (std::size_t v = 0; v < graph.vertices.size(); ++v) {
    const PGroupVertex& x = graph.vertices[v];
    os << "  v" << v << " [label=\"" << x.name << "\\n|G|=" << x.order << " ncc=" << x.ncc << "\"";
    if (graph.root == v) os << ", shape=box";
    os << "];\n";
  }
  for (const GammaEdge& e : graph.edges) {
    const bool tree = graph.tree_parent[e.source] == e.target;
    os << "  v" << e.source << " -> v" << e.target;
    std::vector<std::string> attrs;
    if (e.multiplicity > 1) attrs.push_back("label=\"" + num(e.multiplicity) + "\"");
    if (!tree) attrs.push_back("style=dashed");
    if (!attrs.empty()) {
      os << " [";
      for (std::size_t i = 0; i < attrs.size(); ++i) os << (i ? ", " : "") << attrs[i];
      os << "]";
    }
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

BranchReport branch_lemma_check(int n, std::size_t k) {
  if (n < 3 || n > 12) throw std::invalid_argument("branch_lemma_check: n out of range");
  BranchReport report;
  report.n = n;
  const std::size_t order = std::size_t{1} << n, big = order * 2;
  const FiniteGroup d = dihedral(order), q = generalized_quaternion(order);
  std::optional<FiniteGroup> sd;
  if (order >= 16) sd = semidihedral(order);
  const IsoFingerprint fd = fingerprint(d), fq = fingerprint(q);
  const std::optional<IsoFingerprint> fsd = sd ? std::optional(fingerprint(*sd)) : std::nullopt;

  for (const FiniteGroup& e : two_group_family(big)) {
    if (ncc(e).value > k) continue;
    for (const SubgroupHandle& z : central_order_p(e, 2)) {
      const FiniteGroup quo = quotient(e, z).group;
      const IsoFingerprint f = fingerprint(quo);
      if (f == fd && is_isomorphic(quo, d)) push_unique(report.dihedral_children, e.label());
      if (f == fq && is_isomorphic(quo, q)) push_unique(report.quaternion_children, e.label());
      if (fsd && f == *fsd && is_isomorphic(quo, *sd)) push_unique(report.semidihedral_children, e.label());
    }
  }
  std::vector<std::string> expected{"D" + num(big), "Q" + num(big), "SD" + num(big)};
  std::vector<std::string> got = report.dihedral_children;
  std::sort(got.begin(), got.end());
  std::sort(expected.begin(), expected.end());
  if (got != expected) report.failures.push_back("children of D" + num(order) + " differ from {D, Q, SD}");
  if (!report.quaternion_children.empty()) report.failures.push_back("Q" + num(order) + " has an ncc<=k child");
  if (!report.semidihedral_children.empty()) report.failures.push_back("SD" + num(order) + " has an ncc<=k child");

  if (big >= 16) {
    const FiniteGroup m = modular_maximal_cyclic(big);
    const std::vector<FiniteGroup> known = two_group_family(order);
    for (const SubgroupHandle& z : central_order_p(m, 2))
      push_unique(report.modular_quotients, identify(quotient(m, z).group, known));
    const std::string want = "C" + num(order / 2) + "xC2";
    if (report.modular_quotients != std::vector<std::string>{want})
      report.failures.push_back("M" + num(big) + " has a central quotient other than " + want);
  }
  report.ok = report.failures.empty();
  return report;
}

}  // namespace ncc
