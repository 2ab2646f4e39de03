#include <map>
#include <random>

#include "doctest.h"
#include "ncc/covering.hpp"
#include "ncc/isomorphism.hpp"
#include "ncc/pgroup_lab.hpp"
#include "ncc/quotient_groups.hpp"
#include "oracles.hpp"

using namespace ncc;

namespace {

// Independent model: O_W / p^M as pairs with explicit reduction by w^2 = c
// (odd p) or w^2 = -1 - w (p = 2), and a + pi b as the 2x2 matrix
// [[a, p s(b)], [b, s(a)]] over O_W.
struct W {
  std::int64_t x, y;
};

struct Model {
  std::int64_t p, mod, c;

  std::int64_t r(std::int64_t v) const { return ((v % mod) + mod) % mod; }
  W add(W a, W b) const { return {r(a.x + b.x), r(a.y + b.y)}; }
  W mul(W a, W b) const {
    if (p == 2) return {r(a.x * b.x - a.y * b.y), r(a.x * b.y + a.y * b.x - a.y * b.y)};
    return {r(a.x * b.x + c * a.y * b.y), r(a.x * b.y + a.y * b.x)};
  }
  W sigma(W a) const { return p == 2 ? W{r(a.x - a.y), r(-a.y)} : W{a.x, r(-a.y)}; }
  W scal(W a, std::int64_t s) const { return {r(a.x * s), r(a.y * s)}; }
};

std::int64_t smallest_nonresidue(std::int64_t p) {
  for (std::int64_t c = 2;; ++c) {
    bool square = false;
    for (std::int64_t x = 0; x < p; ++x) square |= (x * x - c) % p == 0;
    if (!square) return c;
  }
}

QuaternionIntegral random_element(std::mt19937& rng, std::uint64_t p, int level) {
  const std::int64_t ma = ipow(p, QuaternionIntegral::a_precision(level));
  const std::int64_t mb = ipow(p, QuaternionIntegral::b_precision(level));
  return QuaternionIntegral::make(p, level, rng() % ma, rng() % ma, rng() % mb, rng() % mb);
}

/// Count of units congruent to 1 mod pi^t at level k, by direct valuation tests.
std::uint64_t brute_unit_count(std::int64_t p, int k, int t) {
  const std::int64_t ma = ipow(p, (k + 1) / 2), mb = ipow(p, k / 2);
  auto vp = [p](std::int64_t v, std::int64_t m) {
    if (v % m == 0) return 1000;
    int e = 0;
    while (v % p == 0) {
      v /= p;
      ++e;
    }
    return e;
  };
  std::uint64_t count = 0;
  for (std::int64_t a0 = 0; a0 < ma; ++a0)
    for (std::int64_t a1 = 0; a1 < ma; ++a1)
      for (std::int64_t b0 = 0; b0 < mb; ++b0)
        for (std::int64_t b1 = 0; b1 < mb; ++b1) {
          // unit iff a is nonzero mod p in the residue field F_{p^2}
          const bool unit = !(a0 % p == 0 && a1 % p == 0);
          if (!unit) continue;
          const int va = std::min(vp(a0 - 1, ma), vp(a1, ma));
          const int vb = std::min(vp(b0, mb), vp(b1, mb));
          const int nu = std::min(va >= 1000 ? 1000 : 2 * va, vb >= 1000 ? 1000 : 1 + 2 * vb);
          if (nu >= t) ++count;
        }
  return count;
}

}  // namespace

TEST_CASE("Frobenius is an involutive ring automorphism lifting x -> x^p") {
  for (std::uint64_t p : {2, 3, 5, 7}) {
    for (std::int64_t a0 = 0; a0 < static_cast<std::int64_t>(p); ++a0)
      for (std::int64_t a1 = 0; a1 < static_cast<std::int64_t>(p); ++a1) {
        UnramifiedQuadraticInt w(p, 1, a0, a1);
        UnramifiedQuadraticInt power(p, 1, 1, 0);
        for (std::uint64_t i = 0; i < p; ++i) power = power * w;
        CHECK(w.frobenius() == power);
        CHECK(w.frobenius().frobenius() == w);
      }
    std::mt19937 rng(11);
    for (int t = 0; t < 200; ++t) {
      UnramifiedQuadraticInt a(p, 3, rng(), rng()), b(p, 3, rng(), rng());
      CHECK((a * b).frobenius() == a.frobenius() * b.frobenius());
      CHECK((a + b).frobenius() == a.frobenius() + b.frobenius());
    }
  }
}

TEST_CASE("omega satisfies its minimal polynomial") {
  UnramifiedQuadraticInt w5 = UnramifiedQuadraticInt::omega(5, 2);
  CHECK(w5 * w5 == UnramifiedQuadraticInt(5, 2, 2, 0));  // 2 is the least non-residue mod 5
  UnramifiedQuadraticInt w2 = UnramifiedQuadraticInt::omega(2, 2);
  CHECK(w2 * w2 + w2 + UnramifiedQuadraticInt(2, 2, 1, 0) == UnramifiedQuadraticInt(2, 2, 0, 0));
  CHECK(UnramifiedQuadraticInt::nonresidue(7) == 3);
  CHECK(UnramifiedQuadraticInt::nonresidue(3) == 2);
}

TEST_CASE("units invert") {
  UnramifiedQuadraticInt a(7, 3, 5, 11);
  CHECK(a * a.inverse() == UnramifiedQuadraticInt(7, 3, 1, 0));
  CHECK_THROWS_AS(UnramifiedQuadraticInt(7, 3, 7, 14).inverse(), std::domain_error);
}

TEST_CASE("quaternion product matches the matrix model") {
  std::mt19937 rng(3);
  for (std::int64_t p : {2, 3, 5, 7}) {
    for (int level = 1; level <= 6; ++level) {
      const int ma = QuaternionIntegral::a_precision(level);
      Model m{p, ipow(p, ma), p == 2 ? 0 : smallest_nonresidue(p)};
      for (int t = 0; t < 300; ++t) {
        QuaternionIntegral x = random_element(rng, p, level), y = random_element(rng, p, level);
        W a{x.a().a0(), x.a().a1()}, b{x.b().a0(), x.b().a1()};
        W c{y.a().a0(), y.a().a1()}, d{y.b().a0(), y.b().a1()};
        // first column of [[a, p s(b)], [b, s(a)]] * [[c, p s(d)], [d, s(c)]]
        W top = m.add(m.mul(a, c), m.scal(m.mul(m.sigma(b), d), p));
        W bottom = m.add(m.mul(b, c), m.mul(m.sigma(a), d));
        QuaternionIntegral z = x * y;
        CHECK(z.a().a0() == top.x);
        CHECK(z.a().a1() == top.y);
        const std::int64_t mb = ipow(p, QuaternionIntegral::b_precision(level));
        CHECK(z.b().a0() == bottom.x % mb);
        CHECK(z.b().a1() == bottom.y % mb);
        // reduced norm is the determinant
        W det = m.add(m.mul(a, m.sigma(a)), m.scal(m.mul(m.sigma(b), b), -p));
        CHECK(det.y == 0);
        CHECK(x.reduced_norm() == det.x);
      }
    }
  }
}

TEST_CASE("quat_mul examples and errors") {
  const std::uint64_t p = 5;
  const int k = 4;
  QuaternionIntegral pi = QuaternionIntegral::pi(p, k);
  CHECK(pi * pi == QuaternionIntegral::make(p, k, 5, 0, 0, 0));
  QuaternionIntegral w = QuaternionIntegral::from_w(UnramifiedQuadraticInt::omega(p, 2), k);
  UnramifiedQuadraticInt sw = UnramifiedQuadraticInt::omega(p, 2).frobenius();
  CHECK(w * pi == QuaternionIntegral::make(p, k, 0, 0, sw.a0(), sw.a1()));
  CHECK(w * pi == QuaternionIntegral::make(p, k, 0, 0, 0, -1));
  std::mt19937 rng(5);
  QuaternionIntegral x = random_element(rng, p, k);
  CHECK(QuaternionIntegral::one(p, k) * x == x);
  CHECK_THROWS_AS(x * QuaternionIntegral::one(p, k + 1), std::invalid_argument);
  CHECK_THROWS_AS(x * QuaternionIntegral::one(3, k), std::invalid_argument);
}

TEST_CASE("reduced norm and trace examples") {
  for (std::uint64_t p : {3, 5, 7}) {
    const int k = 5;
    const std::int64_t m = ipow(p, 3);
    CHECK(QuaternionIntegral::pi(p, k).reduced_norm() == m - static_cast<std::int64_t>(p));
    CHECK(QuaternionIntegral::one(p, k).reduced_norm() == 1);
    CHECK(QuaternionIntegral::one(p, k).reduced_trace() == 2);
    for (std::int64_t alpha : {2, 4, 6, 10}) {
      QuaternionIntegral a = QuaternionIntegral::make(p, k, alpha, 0, 0, 0);
      CHECK(a.reduced_norm() == (alpha * alpha) % m);
      CHECK(a.reduced_trace() == (2 * alpha) % m);
    }
  }
}

TEST_CASE("valuation examples") {
  CHECK(QuaternionIntegral::one(3, 5).valuation() == 0);
  CHECK(QuaternionIntegral::pi(3, 5).valuation() == 1);
  CHECK(QuaternionIntegral::make(3, 5, 3, 0, 0, 0).valuation() == 2);
  CHECK_FALSE(QuaternionIntegral::make(3, 2, 3, 0, 0, 0).valuation().has_value());
  CHECK_FALSE(QuaternionIntegral::make(3, 4, 0, 0, 0, 0).valuation().has_value());
}

TEST_CASE("norm and valuation are multiplicative on random pairs") {
  std::mt19937 rng(17);
  for (std::uint64_t p : {2, 3, 5}) {
    for (int level = 1; level <= 6; ++level) {
      for (int t = 0; t < 10000; ++t) {
        QuaternionIntegral x = random_element(rng, p, level), y = random_element(rng, p, level);
        const std::int64_t m = x.a().modulus();
        CHECK((x * y).reduced_norm() == (x.reduced_norm() * y.reduced_norm()) % m);
        auto vx = x.valuation(), vy = y.valuation(), vxy = (x * y).valuation();
        if (vx && vy && *vx + *vy < level) {
          REQUIRE(vxy.has_value());
          CHECK(*vxy == *vx + *vy);
        } else {
          CHECK((!vxy || *vxy >= level || (vx && vy && *vxy >= std::min(level, *vx + *vy))));
        }
      }
    }
  }
}

TEST_CASE("quotient spec strings round-trip") {
  QuotientGroupSpec s = QuotientGroupSpec::parse("quat:p=5,k=3,variant=PGL1,i=1");
  CHECK(s.p == 5);
  CHECK(s.k == 3);
  CHECK(s.variant == QuatVariant::PGL1);
  CHECK(s.lower_level == 1);
  CHECK(QuotientGroupSpec::parse(s.to_string()) == s);
  CHECK_THROWS_AS(QuotientGroupSpec::parse("quat:p=4,k=3,variant=GL"), std::invalid_argument);
  CHECK_THROWS_AS(QuotientGroupSpec::parse("quat:p=5,k=3,variant=XX"), std::invalid_argument);
  CHECK_THROWS_AS(QuotientGroupSpec::parse("quat:p=5,k=3,variant=GL,i=4"), std::invalid_argument);
  CHECK_THROWS_AS(QuotientGroupSpec::parse("quat:p=2,k=3,variant=PGL1,i=1"), std::invalid_argument);
  CHECK_THROWS_AS(QuotientGroupSpec::parse("quat:p=5,variant=GL"), std::invalid_argument);
}

TEST_CASE("build_quotient examples") {
  CHECK(build_quotient({5, 1, QuatVariant::GL, 0}).order() == 24);
  CHECK(is_cyclic(build_quotient({5, 1, QuatVariant::GL, 0})));
  CHECK(build_quotient({5, 3, QuatVariant::GL1, 1}).order() == 625);
  CHECK(build_quotient({5, 3, QuatVariant::PGL1, 1}).order() == 125);
  CHECK(build_quotient({2, 3, QuatVariant::GL1, 1}).order() == 16);
  CHECK(build_quotient({2, 2, QuatVariant::GL, 0}).order() == 12);
  CHECK_THROWS_AS(build_quotient({2, 3, QuatVariant::SL1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(build_quotient({7, 4, QuatVariant::GL1, 1}), SizeError);
}

TEST_CASE("unit counts agree with brute-force enumeration") {
  for (std::uint64_t p : {2, 3, 5}) {
    for (int k = 1; k <= 4; ++k) {
      for (int t = 0; t <= std::min(k, 3); ++t) {
        QuotientGroupSpec spec{p, k, QuatVariant::GL, t};
        CAPTURE(spec.to_string());
        CHECK(predicted_order(spec) == brute_unit_count(p, k, t));
      }
    }
  }
}

TEST_CASE("projective orders agree with counting scalar orbits") {
  for (std::uint64_t p : {3, 5}) {
    for (int k = 1; k <= 4; ++k) {
      for (int t = 0; t <= std::min(k - 1, 2); ++t) {
        QuotientGroupSpec gl{p, k, QuatVariant::GL, t}, pgl{p, k, QuatVariant::PGL, t};
        if (predicted_order(gl) > 20000) continue;
        QuaternionQuotient q = build_quotient_with_reps(gl);
        std::set<std::vector<std::uint64_t>> orbits;
        const std::int64_t m = ipow(p, QuaternionIntegral::a_precision(k));
        for (const QuaternionIntegral& x : q.reps) {
          std::vector<std::uint64_t> orbit;
          for (std::int64_t s = 1; s < m; ++s) {
            if (s % static_cast<std::int64_t>(p) != 0 &&
                (t == 0 || (s - 1) % ipow(p, (t + 1) / 2) == 0))
              orbit.push_back(x.scaled(s).key());
          }
          std::sort(orbit.begin(), orbit.end());
          orbits.insert(orbit);
        }
        CAPTURE(pgl.to_string());
        CHECK(orbits.size() == predicted_order(pgl));
        CHECK(build_quotient(pgl).order() == orbits.size());
      }
    }
  }
}

TEST_CASE("closed-form canonical representative equals the brute-force one") {
  for (std::uint64_t p : {3, 5, 7}) {
    for (int k = 1; k <= 5; ++k) {
      QuotientGroupSpec spec{p, k, QuatVariant::PGL, 0};
      if (predicted_order({p, k, QuatVariant::GL, 0}) > 200000) continue;
      std::mt19937 rng(static_cast<unsigned>(p * 10 + k));
      for (int t = 0; t < 3000; ++t) {
        QuaternionIntegral x = random_element(rng, p, k);
        if (!x.is_unit()) continue;
        if (t % 2 == 0) {
          // force a non-unit a0 to exercise the second branch
          x = QuaternionIntegral::make(p, k, p * (rng() % 50), 1 + rng() % (p - 1), x.b().a0(), x.b().a1());
        }
        CHECK(canonical_rep(spec, x) == canonical_rep_brute(spec, x));
      }
    }
  }
}

TEST_CASE("quotient multiplication is canonicalised quaternion multiplication") {
  QuotientGroupSpec spec{3, 4, QuatVariant::PGL, 0};
  QuaternionQuotient q = build_quotient_with_reps(spec);
  CHECK_FALSE(verify_group_axioms(q.group).has_value());
  for (Elem x = 0; x < q.group.order(); x += 3)
    for (Elem y = 0; y < q.group.order(); y += 7)
      CHECK(q.reps[q.group.mul(x, y)] == canonical_rep_brute(spec, q.reps[x] * q.reps[y]));
}

TEST_CASE("SL1 membership is norm one") {
  QuaternionQuotient q = build_quotient_with_reps({5, 4, QuatVariant::SL1, 1});
  for (const auto& x : q.reps) CHECK(x.reduced_norm() == 1);
  CHECK(q.group.order() == predicted_order({5, 4, QuatVariant::SL1, 1}));
}

TEST_CASE("graded pieces are elementary abelian of order p^2") {
  CHECK(check_graded_structure(5, 1, 3).ok);
  CHECK(check_graded_structure(3, 2, 4).ok);
  CHECK(check_graded_structure(7, 1, 3).ok);
  CHECK(check_graded_structure(2, 1, 3).ok);
}

TEST_CASE("SL1 and PGL quotients are isomorphic for odd p") {
  CHECK(check_sl_pgl_iso(5, 1, 3).ok);
  CHECK(check_sl_pgl_iso(3, 1, 3).ok);
  CHECK(check_sl_pgl_iso(3, 2, 4).ok);
  CHECK_THROWS_AS(check_sl_pgl_iso(2, 1, 3), std::invalid_argument);
}

TEST_CASE("index-p subgroups") {
  CHECK(index_p_subgroups(elementary_abelian(3, 2), 3).size() == 4);
  CHECK(index_p_subgroups(cyclic(9), 3).size() == 1);
  CHECK(index_p_subgroups(elementary_abelian(2, 3), 2).size() == 7);
  for (int k : {2, 3, 4}) {
    FiniteGroup g = build_quotient({3, k, QuatVariant::PGL1, 1});
    auto subs = index_p_subgroups(g, 3);
    CHECK(subs.size() == 4);
    for (const auto& h : subs) {
      CHECK(h.order() * 3 == g.order());
      CHECK(is_normal(h));
      CHECK(generated_subgroup(g, h.elements).size() == h.order());
    }
  }
  CHECK_THROWS_AS(index_p_subgroups(symmetric(3), 3), std::invalid_argument);
}

TEST_CASE("tower report verdicts") {
  TowerReport r = tower(5, QuatVariant::PGL1, 1, 2, 3);
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[0].order == 25u);
  CHECK(r.rows[1].order == 125u);
  CHECK(r.rows[0].ncc == oracle::ncc(build_quotient({5, 2, QuatVariant::PGL1, 1})));
  CHECK(r.rows[1].ncc == oracle::ncc(build_quotient({5, 3, QuatVariant::PGL1, 1})));
  CHECK(r.nondecreasing);

  TowerReport capped = tower(11, QuatVariant::PGL1, 1, 2, 4);
  REQUIRE(capped.rows.size() == 3);
  CHECK_FALSE(capped.rows[2].ncc.has_value());
  CHECK_FALSE(capped.rows[2].note.empty());
}
