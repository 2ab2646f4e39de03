#include "ncc/isomorphism.hpp"

#include <algorithm>
#include <map>

namespace ncc {

namespace {

std::vector<std::size_t> class_size_of(const FiniteGroup& g) {
  ConjugacyClasses cc = conjugacy_classes(g);
  std::vector<std::size_t> out(g.order());
  for (Elem x = 0; x < g.order(); ++x) out[x] = cc.classes[cc.class_of[x]].size();
  return out;
}

}  // namespace

std::string IsoFingerprint::summary() const {
  std::string s = "order=" + std::to_string(order) + " orders={";
  for (std::size_t i = 0; i < order_histogram.size(); ++i)
    s += (i ? "," : "") + std::to_string(order_histogram[i].first) + ":" +
         std::to_string(order_histogram[i].second);
  s += "} z=" + std::to_string(center_order) + " classes=" + std::to_string(class_sizes.size());
  return s;
}

IsoFingerprint fingerprint(const FiniteGroup& g) {
  IsoFingerprint fp;
  fp.order = g.order();
  std::map<Elem, std::size_t> hist;
  for (Elem o : element_orders(g)) ++hist[o];
  fp.order_histogram.assign(hist.begin(), hist.end());
  for (const auto& c : conjugacy_classes(g).classes) fp.class_sizes.push_back(c.size());
  std::sort(fp.class_sizes.begin(), fp.class_sizes.end());
  fp.center_order = center(g).order();
  FiniteGroup h = g;
  while (h.order() > 1) {
    SubgroupHandle d = derived_subgroup(h);
    if (d.order() == h.order()) break;
    fp.derived_series.push_back(d.order());
    h = induced_group(d).group;
  }
  if (std::uint64_t p = prime_of_pgroup(g.order()); p > 1) {
    std::size_t index = g.order() / frattini_pgroup(g, p).order();
    int d = 0;
    while (index > 1) {
      index /= p;
      ++d;
    }
    fp.frattini_rank = d;
  }
  return fp;
}

bool is_isomorphism(const FiniteGroup& g, const FiniteGroup& h, const std::vector<Elem>& map) {
  if (g.order() != h.order() || map.size() != g.order()) return false;
  std::vector<char> hit(h.order(), 0);
  for (Elem x : map) {
    if (x >= h.order() || hit[x]) return false;
    hit[x] = 1;
  }
  for (Elem a = 0; a < g.order(); ++a)
    for (Elem s : g.generators())
      if (map[g.mul(a, s)] != h.mul(map[a], map[s])) return false;
  return true;
}

std::optional<std::vector<Elem>> find_isomorphism(const FiniteGroup& g, const FiniteGroup& h) {
  if (g.order() != h.order()) return std::nullopt;
  if (g.order() > limits().iso_cap) throw SizeError("isomorphism test", g.order(), limits().iso_cap);
  const std::size_t n = g.order();
  if (n == 1) return std::vector<Elem>{0};
  if (fingerprint(g) != fingerprint(h)) return std::nullopt;

  const std::vector<Elem> ord_g = element_orders(g), ord_h = element_orders(h);
  const std::vector<std::size_t> cls_g = class_size_of(g), cls_h = class_size_of(h);
  const std::vector<Elem> gens = greedy_generators(g);

  std::vector<std::vector<Elem>> candidates(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (Elem y = 1; y < n; ++y)
      if (ord_h[y] == ord_g[gens[i]] && cls_h[y] == cls_g[gens[i]]) candidates[i].push_back(y);

  constexpr Elem kUnset = ~Elem{0};
  std::vector<Elem> images(gens.size(), kUnset);
  std::vector<Elem> map(n, kUnset);
  std::vector<char> used(n, 0);

  // Extends the map from the identity over <gens[0..depth]>; false on conflict.
  auto extend = [&](std::size_t depth) -> bool {
    std::fill(map.begin(), map.end(), kUnset);
    std::fill(used.begin(), used.end(), 0);
    map[0] = 0;
    used[0] = 1;
    std::vector<Elem> queue{0};
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const Elem x = queue[q];
      for (std::size_t i = 0; i <= depth; ++i) {
        const Elem y = g.mul(x, gens[i]);
        const Elem img = h.mul(map[x], images[i]);
        if (map[y] == kUnset) {
          if (used[img]) return false;
          map[y] = img;
          used[img] = 1;
          queue.push_back(y);
        } else if (map[y] != img) {
          return false;
        }
      }
    }
    return true;
  };

  std::function<bool(std::size_t)> search = [&](std::size_t depth) -> bool {
    for (Elem c : candidates[depth]) {
      images[depth] = c;
      if (!extend(depth)) continue;
      if (depth + 1 == gens.size() || search(depth + 1)) return true;
    }
    return false;
  };
  if (!search(0)) return std::nullopt;
  extend(gens.size() - 1);
  return map;
}

bool is_isomorphic(const FiniteGroup& g, const FiniteGroup& h) {
  return find_isomorphism(g, h).has_value();
}

}  // namespace ncc
