#include "ncc/quaternion.hpp"

#include <stdexcept>

namespace ncc {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  if (m == 1) return 0;
  std::int64_t old_r = ((a % m) + m) % m, r = m, old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw std::domain_error("inverse_mod: not invertible");
  return ((old_s % m) + m) % m;
}

// ---------------------------------------------------------------------------
// UnramifiedQuadraticInt

std::int64_t UnramifiedQuadraticInt::nonresidue(std::uint64_t p) {
  if (p == 2 || !is_prime(p)) throw std::invalid_argument("nonresidue needs an odd prime");
  const auto q = static_cast<std::int64_t>(p);
  for (std::int64_t c = 2; c < q; ++c) {
    bool square = false;
    for (std::int64_t x = 1; x < q && !square; ++x) square = (x * x) % q == c;
    if (!square) return c;
  }
  throw std::logic_error("no quadratic non-residue");
}

UnramifiedQuadraticInt::UnramifiedQuadraticInt(std::uint64_t p, int precision, std::int64_t a0,
                                               std::int64_t a1)
    : p_(p), precision_(precision), modulus_(ipow(static_cast<std::int64_t>(p), precision)) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime, got " + std::to_string(p));
  if (precision < 0) throw std::invalid_argument("negative precision");
  if (modulus_ > (std::int64_t{1} << 30)) throw std::invalid_argument("precision too large");
  c_ = p == 2 ? 0 : nonresidue(p);
  a0_ = mod(a0);
  a1_ = mod(a1);
}

UnramifiedQuadraticInt UnramifiedQuadraticInt::omega(std::uint64_t p, int precision) {
  return {p, precision, 0, 1};
}

void UnramifiedQuadraticInt::check_compatible(const UnramifiedQuadraticInt& o) const {
  if (p_ != o.p_ || precision_ != o.precision_)
    throw std::invalid_argument("mismatched prime or precision in O_W arithmetic");
}

UnramifiedQuadraticInt UnramifiedQuadraticInt::operator+(const UnramifiedQuadraticInt& o) const {
  check_compatible(o);
  UnramifiedQuadraticInt r = *this;
  r.a0_ = mod(a0_ + o.a0_);
  r.a1_ = mod(a1_ + o.a1_);
  return r;
}

UnramifiedQuadraticInt UnramifiedQuadraticInt::operator-(const UnramifiedQuadraticInt& o) const {
  check_compatible(o);
  UnramifiedQuadraticInt r = *this;
  r.a0_ = mod(a0_ - o.a0_);
  r.a1_ = mod(a1_ - o.a1_);
  return r;
}

UnramifiedQuadraticInt UnramifiedQuadraticInt::operator-() const {
  UnramifiedQuadraticInt r = *this;
  r.a0_ = mod(-a0_);
  r.a1_ = mod(-a1_);
  return r;
}

UnramifiedQuadraticInt UnramifiedQuadraticInt::operator*(const UnramifiedQuadraticInt& o) const {
  check_compatible(o);
  UnramifiedQuadraticInt r = *this;
  const std::int64_t hi = mod(a1_ * o.a1_);
  if (p_ == 2) {
    // w^2 = -1 - w
    r.a0_ = mod(a0_ * o.a0_ - hi);
    r.a1_ = mod(a0_ * o.a1_ + a1_ * o.a0_ - hi);
  } else {
    r.a0_ = mod(a0_ * o.a0_ + c_ * hi);
    r.a1_ = mod(a0_ * o.a1_ + a1_ * o.a0_);
  }
  return r;
}

UnramifiedQuadraticInt UnramifiedQuadraticInt::scaled(std::int64_t s) const {
  UnramifiedQuadraticInt r = *this;
  s = mod(s);
  r.a0_ = mod(a0_ * s);
  r.a1_ = mod(a1_ * s);
  return r;
}

UnramifiedQuadraticInt UnramifiedQuadraticInt::frobenius() const {
  UnramifiedQuadraticInt r = *this;
  if (p_ == 2) {
    // w -> w^2 = -1 - w
    r.a0_ = mod(a0_ - a1_);
    r.a1_ = mod(-a1_);
  } else {
    r.a1_ = mod(-a1_);
  }
  return r;
}

std::int64_t UnramifiedQuadraticInt::norm() const {
  UnramifiedQuadraticInt n = *this * frobenius();
  return n.a0_;
}

std::int64_t UnramifiedQuadraticInt::trace() const { return (*this + frobenius()).a0_; }

bool UnramifiedQuadraticInt::is_unit() const {
  if (precision_ == 0) return true;
  const auto q = static_cast<std::int64_t>(p_);
  return norm() % q != 0;
}

UnramifiedQuadraticInt UnramifiedQuadraticInt::inverse() const {
  if (!is_unit()) throw std::domain_error("inverse of a non-unit in O_W");
  return frobenius().scaled(inverse_mod(norm(), modulus_));
}

UnramifiedQuadraticInt UnramifiedQuadraticInt::reduced(int precision) const {
  if (precision > precision_) throw std::invalid_argument("cannot reduce to a higher precision");
  return {p_, precision, a0_, a1_};
}

UnramifiedQuadraticInt UnramifiedQuadraticInt::lifted(int precision) const {
  if (precision < precision_) throw std::invalid_argument("cannot lift to a lower precision");
  return {p_, precision, a0_, a1_};
}

std::optional<int> UnramifiedQuadraticInt::valuation() const {
  if (is_zero()) return std::nullopt;
  const auto q = static_cast<std::int64_t>(p_);
  int v = 0;
  std::int64_t x = a0_, y = a1_;
  while (x % q == 0 && y % q == 0) {
    x /= q;
    y /= q;
    ++v;
  }
  return v;
}

// ---------------------------------------------------------------------------
// QuaternionIntegral

QuaternionIntegral::QuaternionIntegral(UnramifiedQuadraticInt a, UnramifiedQuadraticInt b, int level)
    : a_(std::move(a)), b_(std::move(b)), level_(level) {
  if (level < 0) throw std::invalid_argument("negative level");
  if (a_.precision() != a_precision(level) || b_.precision() != b_precision(level) || a_.p() != b_.p())
    throw std::invalid_argument("component precision does not match level " + std::to_string(level));
}

QuaternionIntegral QuaternionIntegral::make(std::uint64_t p, int level, std::int64_t a0,
                                            std::int64_t a1, std::int64_t b0, std::int64_t b1) {
  return {UnramifiedQuadraticInt(p, a_precision(level), a0, a1),
          UnramifiedQuadraticInt(p, b_precision(level), b0, b1), level};
}

QuaternionIntegral QuaternionIntegral::one(std::uint64_t p, int level) {
  return make(p, level, 1, 0, 0, 0);
}

QuaternionIntegral QuaternionIntegral::pi(std::uint64_t p, int level) {
  return make(p, level, 0, 0, 1, 0);
}

QuaternionIntegral QuaternionIntegral::from_w(const UnramifiedQuadraticInt& w, int level) {
  return make(w.p(), level, w.a0(), w.a1(), 0, 0);
}

QuaternionIntegral QuaternionIntegral::operator*(const QuaternionIntegral& o) const {
  if (p() != o.p() || level_ != o.level_)
    throw std::invalid_argument("mismatched prime or level in quaternion product");
  const int ma = a_precision(level_);
  const int mb = b_precision(level_);
  // work at the a-precision throughout; b digits beyond floor(level/2) are zero
  const UnramifiedQuadraticInt b = b_.lifted(ma), d = o.b_.lifted(ma);
  const UnramifiedQuadraticInt& a = a_;
  const UnramifiedQuadraticInt& c = o.a_;
  const auto p_int = static_cast<std::int64_t>(p());
  UnramifiedQuadraticInt new_a = a * c + (b.frobenius() * d).scaled(p_int);
  UnramifiedQuadraticInt new_b = a.frobenius() * d + b * c;
  return {new_a, new_b.reduced(mb), level_};
}

QuaternionIntegral QuaternionIntegral::operator+(const QuaternionIntegral& o) const {
  return {a_ + o.a_, b_ + o.b_, level_};
}

QuaternionIntegral QuaternionIntegral::operator-(const QuaternionIntegral& o) const {
  return {a_ - o.a_, b_ - o.b_, level_};
}

std::int64_t QuaternionIntegral::reduced_norm() const {
  const int ma = a_precision(level_);
  const UnramifiedQuadraticInt b = b_.lifted(ma);
  const std::int64_t m = a_.modulus();
  const std::int64_t v = (a_.norm() - static_cast<std::int64_t>(p()) * b.norm()) % m;
  return v < 0 ? v + m : v;
}

std::int64_t QuaternionIntegral::reduced_trace() const { return a_.trace(); }

std::optional<int> QuaternionIntegral::valuation() const {
  std::optional<int> best;
  if (auto va = a_.valuation()) best = 2 * *va;
  if (auto vb = b_.valuation()) {
    int v = 1 + 2 * *vb;
    if (!best || v < *best) best = v;
  }
  return best;
}

bool QuaternionIntegral::congruent_one(int depth) const {
  QuaternionIntegral diff = *this - one(p(), level_);
  auto v = diff.valuation();
  return !v || *v >= depth;
}

QuaternionIntegral QuaternionIntegral::reduced(int level) const {
  if (level > level_) throw std::invalid_argument("cannot reduce to a higher level");
  return {a_.reduced(a_precision(level)), b_.reduced(b_precision(level)), level};
}

QuaternionIntegral QuaternionIntegral::scaled(std::int64_t s) const {
  return {a_.scaled(s), b_.scaled(s), level_};
}

std::uint64_t QuaternionIntegral::key() const {
  return static_cast<std::uint64_t>(a_.a0()) | static_cast<std::uint64_t>(a_.a1()) << 16 |
         static_cast<std::uint64_t>(b_.a0()) << 32 | static_cast<std::uint64_t>(b_.a1()) << 48;
}

QuaternionIntegral QuaternionIntegral::from_key(std::uint64_t p, int level, std::uint64_t key) {
  auto part = [key](int i) { return static_cast<std::int64_t>((key >> (16 * i)) & 0xffff); };
  return make(p, level, part(0), part(1), part(2), part(3));
}

std::string QuaternionIntegral::to_string() const {
  return "(" + std::to_string(a_.a0()) + "+" + std::to_string(a_.a1()) + "w) + pi(" +
         std::to_string(b_.a0()) + "+" + std::to_string(b_.a1()) + "w)";
}

}  // namespace ncc
