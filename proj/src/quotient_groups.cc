#include "ncc/quotient_groups.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>
#include <unordered_set>

#include "ncc/covering.hpp"
#include "ncc/isomorphism.hpp"

namespace ncc {

namespace {

struct QuatHash {
  std::size_t operator()(const QuaternionIntegral& q) const {
    std::uint64_t z = q.key() + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return static_cast<std::size_t>(z ^ (z >> 31));
  }
};

int ceil_half(int n) { return (n + 1) / 2; }

std::int64_t valuation_int(std::int64_t x, std::int64_t p) {
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

/// Size of the image of the scalars Z_p^x cap GL_t in the level-k quotient.
std::uint64_t scalar_image_order(std::uint64_t p, int k, int t) {
  const int m = QuaternionIntegral::a_precision(k);
  if (t == 0) return (p - 1) * static_cast<std::uint64_t>(ipow(static_cast<std::int64_t>(p), m - 1));
  return static_cast<std::uint64_t>(ipow(static_cast<std::int64_t>(p), m - ceil_half(t)));
}

std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t> tuple_of(const QuaternionIntegral& x) {
  return {x.a().a0(), x.a().a1(), x.b().a0(), x.b().a1()};
}

}  // namespace

std::string to_string(QuatVariant v) {
  switch (v) {
    case QuatVariant::GL: return "GL";
    case QuatVariant::GL1: return "GL1";
    case QuatVariant::PGL: return "PGL";
    case QuatVariant::PGL1: return "PGL1";
    case QuatVariant::SL1: return "SL1";
  }
  return "?";
}

QuatVariant parse_variant(const std::string& s) {
  for (QuatVariant v : {QuatVariant::GL, QuatVariant::GL1, QuatVariant::PGL, QuatVariant::PGL1,
                        QuatVariant::SL1})
    if (to_string(v) == s) return v;
  throw std::invalid_argument("unknown quaternion variant '" + s + "'");
}

int QuotientGroupSpec::depth() const {
  if (variant == QuatVariant::GL1 || variant == QuatVariant::PGL1) return std::max(lower_level, 1);
  return lower_level;
}

std::string QuotientGroupSpec::to_string() const {
  return "quat:p=" + std::to_string(p) + ",k=" + std::to_string(k) +
         ",variant=" + ncc::to_string(variant) + ",i=" + std::to_string(lower_level);
}

QuotientGroupSpec QuotientGroupSpec::parse(const std::string& text) {
  const std::string prefix = "quat:";
  if (text.rfind(prefix, 0) != 0) throw std::invalid_argument("quotient spec must start with 'quat:'");
  QuotientGroupSpec spec;
  bool seen_p = false, seen_k = false, seen_variant = false;
  std::stringstream ss(text.substr(prefix.size()));
  std::string field;
  while (std::getline(ss, field, ',')) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("expected key=value, got '" + field + "'");
    const std::string key = field.substr(0, eq), value = field.substr(eq + 1);
    auto number = [&]() -> long long {
      std::size_t used = 0;
      long long v = 0;
      try {
        v = std::stoll(value, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != value.size() || v < 0)
        throw std::invalid_argument("bad value for " + key + ": '" + value + "'");
      return v;
    };
    if (key == "p") {
      spec.p = static_cast<std::uint64_t>(number());
      seen_p = true;
    } else if (key == "k") {
      spec.k = static_cast<int>(number());
      seen_k = true;
    } else if (key == "variant") {
      spec.variant = parse_variant(value);
      seen_variant = true;
    } else if (key == "i") {
      spec.lower_level = static_cast<int>(number());
    } else {
      throw std::invalid_argument("unknown key '" + key + "' in quotient spec");
    }
  }
  if (!seen_p || !seen_k || !seen_variant)
    throw std::invalid_argument("quotient spec needs p, k and variant");
  spec.validate();
  return spec;
}

void QuotientGroupSpec::validate() const {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime, got " + std::to_string(p));
  if (p > 251) throw std::invalid_argument("p too large for packed residues");
  if (k < 1) throw std::invalid_argument("level k must be at least 1");
  if (lower_level < 0 || lower_level > 3) throw std::invalid_argument("i must lie in 0..3");
  if (depth() > k) throw std::invalid_argument("congruence depth exceeds level k");
  if (p == 2 && variant != QuatVariant::GL && variant != QuatVariant::GL1)
    throw std::invalid_argument("p = 2 supports only the GL and GL1 variants");
  if (ipow(static_cast<std::int64_t>(p), QuaternionIntegral::a_precision(k)) >= (1 << 16))
    throw std::invalid_argument("level too high for packed residues");
}

std::uint64_t predicted_order(const QuotientGroupSpec& spec) {
  spec.validate();
  const auto p = spec.p;
  const int t = spec.depth();
  if (t >= spec.k) return 1;
  const auto pp = static_cast<std::int64_t>(p);
  std::uint64_t gl = t == 0 ? (p * p - 1) * static_cast<std::uint64_t>(ipow(pp, 2 * (spec.k - 1)))
                            : static_cast<std::uint64_t>(ipow(pp, 2 * (spec.k - t)));
  switch (spec.variant) {
    case QuatVariant::GL:
    case QuatVariant::GL1: return gl;
    // the reduced norm maps GL_t onto the same subgroup of (Z/p^M)^x that
    // the scalars occupy, so both quotients shrink by the same factor
    case QuatVariant::PGL:
    case QuatVariant::PGL1:
    case QuatVariant::SL1: return gl / scalar_image_order(p, spec.k, t);
  }
  return gl;
}

QuaternionIntegral canonical_rep_brute(const QuotientGroupSpec& spec, const QuaternionIntegral& x) {
  if (!spec.projective()) return x;
  const auto p = static_cast<std::int64_t>(spec.p);
  const int m = QuaternionIntegral::a_precision(spec.k);
  const std::int64_t mod = ipow(p, m);
  const std::int64_t step = spec.depth() == 0 ? 1 : ipow(p, ceil_half(spec.depth()));
  QuaternionIntegral best = x;
  for (std::int64_t lambda = 1; lambda < mod; lambda += step) {
    if (lambda % p == 0) continue;
    QuaternionIntegral y = x.scaled(lambda);
    if (tuple_of(y) < tuple_of(best)) best = y;
  }
  return best;
}

QuaternionIntegral canonical_rep(const QuotientGroupSpec& spec, const QuaternionIntegral& x) {
  if (!spec.projective()) return x;
  const auto p = static_cast<std::int64_t>(spec.p);
  const int m = QuaternionIntegral::a_precision(x.level());
  const std::int64_t mod = ipow(p, m);
  const std::int64_t a0 = x.a().a0(), a1 = x.a().a1();
  if (a0 % p != 0) return x.scaled(inverse_mod(a0, mod));
  // a0 is a non-unit, so a1 is a unit (x is a unit); only reachable at depth 0
  if (a0 == 0) return x.scaled(inverse_mod(a1, mod));
  const auto v = static_cast<int>(valuation_int(a0, p));
  const std::int64_t low_mod = ipow(p, m - v), high_mod = ipow(p, v);
  const std::int64_t u = a0 / high_mod;
  // lambda = u^-1 mod p^(m-v) makes lambda*a0 = p^v, the least value reachable;
  // the remaining freedom lambda + p^(m-v) t clears the high digits of lambda*a1
  const std::int64_t lambda0 = inverse_mod(u, low_mod);
  const std::int64_t w = (lambda0 * a1) % mod;
  const std::int64_t w_high = w / low_mod;
  std::int64_t t = (-(w_high % high_mod) * inverse_mod(a1, high_mod)) % high_mod;
  if (t < 0) t += high_mod;
  return x.scaled((lambda0 + low_mod * t) % mod);
}

QuaternionQuotient build_quotient_with_reps(const QuotientGroupSpec& spec) {
  const std::uint64_t predicted = predicted_order(spec);
  const std::size_t cap = limits().order_cap;
  if (predicted > cap) throw SizeError(spec.to_string(), predicted, cap);

  const auto p = static_cast<std::int64_t>(spec.p);
  const int k = spec.k, t = spec.depth();
  const std::int64_t mod_a = ipow(p, QuaternionIntegral::a_precision(k));
  const std::int64_t mod_b = ipow(p, QuaternionIntegral::b_precision(k));
  const std::int64_t step_a = t == 0 ? 1 : ipow(p, ceil_half(t));
  const std::int64_t step_b = ipow(p, t / 2);
  const std::int64_t raw = (mod_a / step_a) * (mod_a / step_a) * (mod_b / step_b) * (mod_b / step_b);
  if (raw > static_cast<std::int64_t>(64 * cap)) throw SizeError(spec.to_string() + " (enumeration)", raw, 64 * cap);

  std::vector<QuaternionIntegral> members;
  members.reserve(predicted);
  for (std::int64_t a0 = 0; a0 < mod_a; a0 += step_a) {
    for (std::int64_t a1 = 0; a1 < mod_a; a1 += step_a) {
      for (std::int64_t b0 = 0; b0 < mod_b; b0 += step_b) {
        for (std::int64_t b1 = 0; b1 < mod_b; b1 += step_b) {
          // depth t >= 1 shifts a0 onto the coset 1 + p^ceil(t/2)
          QuaternionIntegral x = QuaternionIntegral::make(spec.p, k, t == 0 ? a0 : a0 + 1, a1, b0, b1);
          if (!x.is_unit()) continue;
          if (spec.variant == QuatVariant::SL1 && x.reduced_norm() != 1 % mod_a) continue;
          if (spec.projective() && !(canonical_rep(spec, x) == x)) continue;
          members.push_back(x);
        }
      }
    }
  }
  if (members.size() != predicted)
    throw std::logic_error(spec.to_string() + ": enumerated " + std::to_string(members.size()) +
                           " representatives, closed form gives " + std::to_string(predicted));

  auto mul = [spec](const QuaternionIntegral& x, const QuaternionIntegral& y) {
    return canonical_rep(spec, x * y);
  };
  const QuaternionIntegral one = QuaternionIntegral::one(spec.p, k);

  // greedy generators, shallowest congruence depth first
  std::vector<QuaternionIntegral> candidates = members;
  auto depth_of = [&](const QuaternionIntegral& x) {
    auto v = (x - one).valuation();
    return v ? *v : k;
  };
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](const QuaternionIntegral& x, const QuaternionIntegral& y) {
                     const int dx = depth_of(x), dy = depth_of(y);
                     if (dx != dy) return dx < dy;
                     return tuple_of(x) < tuple_of(y);
                   });
  std::vector<QuaternionIntegral> gens;
  std::unordered_set<QuaternionIntegral, QuatHash> closure{one};
  for (const QuaternionIntegral& c : candidates) {
    if (closure.size() == members.size()) break;
    if (closure.count(c)) continue;
    gens.push_back(c);
    std::vector<QuaternionIntegral> frontier(closure.begin(), closure.end());
    for (std::size_t idx = 0; idx < frontier.size(); ++idx) {
      for (const QuaternionIntegral& g : gens) {
        QuaternionIntegral y = mul(frontier[idx], g);
        if (closure.insert(y).second) frontier.push_back(y);
      }
    }
  }

  QuaternionQuotient out;
  out.spec = spec;
  out.group = close_elements<QuaternionIntegral, QuatHash>(one, gens, mul, spec.to_string(), &out.reps);
  if (out.group.order() != predicted)
    throw std::logic_error(spec.to_string() + ": closure order " + std::to_string(out.group.order()) +
                           " differs from " + std::to_string(predicted));
  return out;
}

FiniteGroup build_quotient(const QuotientGroupSpec& spec) { return build_quotient_with_reps(spec).group; }

QuaternionCheck check_graded_structure(std::uint64_t p, int i, int k) {
  QuaternionCheck report;
  if (i < 1 || k < i + 1) throw std::invalid_argument("graded structure needs 1 <= i < k");
  QuotientGroupSpec spec{p, k, QuatVariant::GL, i};
  QuaternionQuotient q = build_quotient_with_reps(spec);
  SubgroupHandle n{q.group, {}};
  for (Elem x = 0; x < q.group.order(); ++x)
    if (q.reps[x].congruent_one(i + 1)) n.elements.push_back(x);
  Quotient piece = quotient(q.group, n);
  const FiniteGroup& g = piece.group;
  bool exponent_p = true;
  for (Elem x = 0; x < g.order(); ++x) exponent_p = exponent_p && g.pow(x, p) == 0;
  const bool abelian = is_abelian(g);
  report.ok = g.order() == p * p && abelian && exponent_p;
  std::ostringstream os;
  os << "GL^" << i << "/GL^" << i + 1 << " (from level " << k << "): order " << g.order()
     << (abelian ? ", abelian" : ", nonabelian") << (exponent_p ? ", exponent p" : ", exponent > p");
  report.detail = os.str();
  return report;
}

QuaternionCheck check_sl_pgl_iso(std::uint64_t p, int i, int k) {
  if (p == 2) throw std::invalid_argument("SL1/PGL comparison needs odd p");
  if (i < 1) throw std::invalid_argument("SL1/PGL comparison needs i >= 1");
  FiniteGroup sl = build_quotient({p, k, QuatVariant::SL1, i});
  FiniteGroup pgl = build_quotient({p, k, QuatVariant::PGL, i});
  QuaternionCheck report;
  auto map = find_isomorphism(sl, pgl);
  report.ok = map.has_value() && is_isomorphism(sl, pgl, *map);
  report.detail = "SL1 order " + std::to_string(sl.order()) + ", PGL order " + std::to_string(pgl.order()) +
                  (report.ok ? ": isomorphic" : ": not isomorphic");
  return report;
}

std::vector<SubgroupHandle> index_p_subgroups(const FiniteGroup& g, std::uint64_t p) {
  if (g.order() == 1) return {};
  if (prime_of_pgroup(g.order()) != p)
    throw std::invalid_argument("index_p_subgroups: group of order " + std::to_string(g.order()) +
                                " is not a " + std::to_string(p) + "-group");
  Quotient fq = quotient(g, frattini_pgroup(g, p));
  const FiniteGroup& q = fq.group;
  const std::vector<Elem> basis = greedy_generators(q);
  const std::size_t d = basis.size();
  std::vector<std::vector<std::uint64_t>> coords(q.order());
  std::vector<char> seen(q.order(), 0);
  coords[0].assign(d, 0);
  seen[0] = 1;
  std::vector<Elem> queue{0};
  for (std::size_t idx = 0; idx < queue.size(); ++idx) {
    const Elem y = queue[idx];
    for (std::size_t j = 0; j < d; ++j) {
      const Elem z = q.mul(y, basis[j]);
      std::vector<std::uint64_t> c = coords[y];
      c[j] = (c[j] + 1) % p;
      if (!seen[z]) {
        seen[z] = 1;
        coords[z] = std::move(c);
        queue.push_back(z);
      } else if (coords[z] != c) {
        throw std::logic_error("Frattini quotient is not elementary abelian on the chosen basis");
      }
    }
  }

  std::vector<SubgroupHandle> out;
  std::vector<std::uint64_t> f(d, 0);
  // functionals with leading nonzero coordinate 1, in lexicographic order
  std::uint64_t total = 1;
  for (std::size_t j = 0; j < d; ++j) total *= p;
  for (std::uint64_t code = 1; code < total; ++code) {
    std::uint64_t c = code;
    for (std::size_t j = d; j-- > 0;) {
      f[j] = c % p;
      c /= p;
    }
    auto lead = std::find_if(f.begin(), f.end(), [](std::uint64_t v) { return v != 0; });
    if (*lead != 1) continue;
    SubgroupHandle h{g, {}};
    for (Elem x = 0; x < g.order(); ++x) {
      const auto& cx = coords[fq.projection[x]];
      std::uint64_t s = 0;
      for (std::size_t j = 0; j < d; ++j) s += f[j] * cx[j];
      if (s % p == 0) h.elements.push_back(x);
    }
    out.push_back(std::move(h));
  }
  return out;
}

TowerReport tower(std::uint64_t p, QuatVariant variant, int i, int kmin, int kmax, bool subgroup_columns) {
  if (kmin > kmax) throw std::invalid_argument("tower: kmin exceeds kmax");
  TowerReport report;
  report.base = {p, kmin, variant, i};
  report.base.validate();
  report.kmin = kmin;
  report.kmax = kmax;
  const int t = report.base.depth();
  if (subgroup_columns && t < 1) throw std::invalid_argument("subgroup columns need congruence depth >= 1");

  std::vector<std::map<std::vector<std::uint64_t>, std::size_t>> per_row;
  std::map<std::vector<std::uint64_t>, int> all_keys;
  for (int k = kmin; k <= kmax; ++k) {
    TowerRow row;
    row.k = k;
    QuotientGroupSpec spec{p, k, variant, i};
    per_row.emplace_back();
    std::uint64_t predicted = 0;
    try {
      predicted = predicted_order(spec);
    } catch (const std::invalid_argument& e) {
      row.note = e.what();
      report.rows.push_back(row);
      continue;
    }
    if (predicted > limits().order_cap) {
      row.note = "order " + std::to_string(predicted) + " exceeds cap " + std::to_string(limits().order_cap);
      report.rows.push_back(row);
      continue;
    }
    QuaternionQuotient q = build_quotient_with_reps(spec);
    row.order = q.group.order();
    row.ncc = ncc(q.group).value;
    if (subgroup_columns && k > t && q.group.order() > 1) {
      const QuotientGroupSpec top{p, t + 1, variant, i};
      for (const SubgroupHandle& h : index_p_subgroups(q.group, p)) {
        std::vector<std::uint64_t> image;
        for (Elem x : h.elements) image.push_back(canonical_rep(top, q.reps[x].reduced(t + 1)).key());
        std::sort(image.begin(), image.end());
        image.erase(std::unique(image.begin(), image.end()), image.end());
        const std::size_t value = ncc(induced_group(h).group).value;
        if (!per_row.back().emplace(image, value).second)
          throw std::logic_error("index-p subgroups share an image modulo pi^" + std::to_string(t + 1));
        all_keys.emplace(image, 0);
      }
    }
    report.rows.push_back(std::move(row));
  }
  int col = 0;
  for (auto& [key, idx] : all_keys) idx = col++;
  report.subgroup_columns = all_keys.size();
  for (std::size_t r = 0; r < report.rows.size(); ++r) {
    report.rows[r].subgroup_ncc.assign(all_keys.size(), std::nullopt);
    for (const auto& [key, value] : per_row[r]) report.rows[r].subgroup_ncc[all_keys.at(key)] = value;
  }

  std::vector<std::pair<int, std::size_t>> values;
  for (const TowerRow& row : report.rows)
    if (row.ncc) values.emplace_back(row.k, *row.ncc);
  for (std::size_t j = 1; j < values.size(); ++j) {
    if (values[j].second < values[j - 1].second) report.nondecreasing = false;
    if (values[j].second <= values[j - 1].second) report.strictly_increasing = false;
  }
  for (std::size_t j = 0; j + 1 < values.size(); ++j) {
    bool same = true;
    for (std::size_t l = j + 1; l < values.size(); ++l) same = same && values[l].second == values[j].second;
    if (same) {
      report.stabilization_level = values[j].first;
      break;
    }
  }
  return report;
}

}  // namespace ncc
