#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace ncc {

bool is_prime(std::uint64_t n);
std::int64_t ipow(std::int64_t base, int exp);

/// Element of O_W / p^M, where W is the unramified quadratic extension of Q_p,
/// written a0 + a1*w. For odd p, w^2 = c with c the least positive quadratic
/// non-residue mod p; for p = 2, w^2 + w + 1 = 0.
class UnramifiedQuadraticInt {
 public:
  UnramifiedQuadraticInt() = default;
  UnramifiedQuadraticInt(std::uint64_t p, int precision, std::int64_t a0 = 0, std::int64_t a1 = 0);

  static UnramifiedQuadraticInt omega(std::uint64_t p, int precision);
  /// Least positive quadratic non-residue mod an odd prime.
  static std::int64_t nonresidue(std::uint64_t p);

  std::uint64_t p() const { return p_; }
  int precision() const { return precision_; }
  std::int64_t modulus() const { return modulus_; }
  std::int64_t a0() const { return a0_; }
  std::int64_t a1() const { return a1_; }

  UnramifiedQuadraticInt operator+(const UnramifiedQuadraticInt& o) const;
  UnramifiedQuadraticInt operator-(const UnramifiedQuadraticInt& o) const;
  UnramifiedQuadraticInt operator-() const;
  UnramifiedQuadraticInt operator*(const UnramifiedQuadraticInt& o) const;
  UnramifiedQuadraticInt scaled(std::int64_t s) const;
  bool operator==(const UnramifiedQuadraticInt& o) const = default;

  /// The nontrivial Galois automorphism (Frobenius), reduced to this precision.
  UnramifiedQuadraticInt frobenius() const;
  /// a * frobenius(a), an element of Z/p^M.
  std::int64_t norm() const;
  std::int64_t trace() const;
  bool is_zero() const { return a0_ == 0 && a1_ == 0; }
  bool is_unit() const;
  UnramifiedQuadraticInt inverse() const;
  /// Reduction to a lower precision.
  UnramifiedQuadraticInt reduced(int precision) const;
  /// Same residues carried at a higher precision (digits above the old precision are zero).
  UnramifiedQuadraticInt lifted(int precision) const;
  /// p-adic valuation of the element; nullopt for zero at this precision.
  std::optional<int> valuation() const;

 private:
  void check_compatible(const UnramifiedQuadraticInt& o) const;
  std::int64_t mod(std::int64_t v) const {
    v %= modulus_;
    return v < 0 ? v + modulus_ : v;
  }

  std::uint64_t p_ = 2;
  int precision_ = 0;
  std::int64_t modulus_ = 1;
  std::int64_t c_ = 0;  ///< w^2 = c for odd p
  std::int64_t a0_ = 0;
  std::int64_t a1_ = 0;
};

std::int64_t inverse_mod(std::int64_t a, std::int64_t m);

/// Element a + pi*b of O_D / pi^level for the quaternion division algebra D
/// over Q_p, with pi^2 = p and pi w = frobenius(w) pi. `a` is carried mod
/// p^ceil(level/2) and `b` mod p^floor(level/2).
class QuaternionIntegral {
 public:
  QuaternionIntegral() = default;
  QuaternionIntegral(UnramifiedQuadraticInt a, UnramifiedQuadraticInt b, int level);
  static QuaternionIntegral make(std::uint64_t p, int level, std::int64_t a0, std::int64_t a1,
                                 std::int64_t b0, std::int64_t b1);
  static QuaternionIntegral one(std::uint64_t p, int level);
  static QuaternionIntegral pi(std::uint64_t p, int level);
  static QuaternionIntegral from_w(const UnramifiedQuadraticInt& w, int level);

  static int a_precision(int level) { return (level + 1) / 2; }
  static int b_precision(int level) { return level / 2; }

  const UnramifiedQuadraticInt& a() const { return a_; }
  const UnramifiedQuadraticInt& b() const { return b_; }
  int level() const { return level_; }
  std::uint64_t p() const { return a_.p(); }

  /// (a,b)(c,d) = (ac + p frob(b) d, frob(a) d + bc)
  QuaternionIntegral operator*(const QuaternionIntegral& o) const;
  QuaternionIntegral operator+(const QuaternionIntegral& o) const;
  QuaternionIntegral operator-(const QuaternionIntegral& o) const;
  bool operator==(const QuaternionIntegral& o) const = default;

  /// a frob(a) - p b frob(b), mod p^ceil(level/2).
  std::int64_t reduced_norm() const;
  /// a + frob(a), mod p^ceil(level/2).
  std::int64_t reduced_trace() const;
  /// min(2 v(a), 1 + 2 v(b)); nullopt when the element is 0 mod pi^level.
  std::optional<int> valuation() const;
  bool is_unit() const { return a_.is_unit(); }
  /// x - 1 lies in pi^depth O_D.
  bool congruent_one(int depth) const;
  QuaternionIntegral reduced(int level) const;
  /// Multiplication by a central scalar of Z_p.
  QuaternionIntegral scaled(std::int64_t s) const;

  /// Injective packing of the four residues (each below 2^16).
  std::uint64_t key() const;
  static QuaternionIntegral from_key(std::uint64_t p, int level, std::uint64_t key);
  std::string to_string() const;

 private:
  UnramifiedQuadraticInt a_;
  UnramifiedQuadraticInt b_;
  int level_ = 0;
};

}  // namespace ncc
