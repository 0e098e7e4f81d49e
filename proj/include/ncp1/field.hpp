#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include "ncp1/errors.hpp"

namespace ncp1 {

enum class FieldKind { Rationals, Prime, Quadratic };

/// Raw field element. The interpretation depends on the owning Field:
///  - rationals: `a` in lowest terms, `b` = 0
///  - prime field: `a` an integer residue in [0, p), `b` = 0
///  - quadratic extension: `a + b*sqrt(d)` with `a`, `b` in the base field
///
/// Representations are canonical, so `==` on Elem is equality in the field.
struct Elem {
  mpq_class a;
  mpq_class b;

  Elem() = default;
  Elem(mpq_class x) : a(std::move(x)) {}
  Elem(mpq_class x, mpq_class y) : a(std::move(x)), b(std::move(y)) {}

  bool is_zero() const { return sgn(a) == 0 && sgn(b) == 0; }
  friend bool operator==(const Elem& l, const Elem& r) { return l.a == r.a && l.b == r.b; }
};

namespace detail {

inline bool is_prime(long p) {
  if (p < 2) return false;
  for (long q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

// Arithmetic in the prime field (p > 0) or in Q (p == 0).
inline mpq_class base_reduce(long p, const mpq_class& x) {
  if (p == 0) {
    mpq_class c(x);
    c.canonicalize();
    return c;
  }
  mpz_class num = x.get_num();
  mpz_class den = x.get_den();
  mpz_class m(p);
  mpz_class r = num % m;
  if (r < 0) r += m;
  if (den != 1) {
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0)
      throw DomainError("denominator not invertible modulo " + std::to_string(p));
    r = (r * inv) % m;
  }
  return mpq_class(r);
}

inline mpq_class base_add(long p, const mpq_class& x, const mpq_class& y) {
  if (p == 0) return x + y;
  mpz_class r = x.get_num() + y.get_num();
  if (r >= p) r -= p;
  return mpq_class(r);
}

inline mpq_class base_sub(long p, const mpq_class& x, const mpq_class& y) {
  if (p == 0) return x - y;
  mpz_class r = x.get_num() - y.get_num();
  if (r < 0) r += p;
  return mpq_class(r);
}

inline mpq_class base_mul(long p, const mpq_class& x, const mpq_class& y) {
  if (p == 0) return x * y;
  mpz_class r = (x.get_num() * y.get_num()) % p;
  return mpq_class(r);
}

inline mpq_class base_neg(long p, const mpq_class& x) {
  if (p == 0) return -x;
  if (sgn(x) == 0) return x;
  return mpq_class(mpz_class(p) - x.get_num());
}

inline mpq_class base_inv(long p, const mpq_class& x) {
  if (sgn(x) == 0) throw NotInvertible("division by zero");
  if (p == 0) return 1 / x;
  mpz_class inv;
  mpz_class m(p);
  mpz_invert(inv.get_mpz_t(), x.get_num_mpz_t(), m.get_mpz_t());
  return mpq_class(inv);
}

inline bool base_is_square(long p, const mpq_class& x) {
  if (sgn(x) == 0) return true;
  if (p == 0) {
    if (sgn(x) < 0) return false;
    return mpz_perfect_square_p(x.get_num_mpz_t()) && mpz_perfect_square_p(x.get_den_mpz_t());
  }
  // exhaustive over the residues
  const long r = x.get_num().get_si();
  for (long y = 1; y < p; ++y)
    if ((y * y) % p == r) return true;
  return false;
}

inline std::string base_format(const mpq_class& x) { return x.get_str(); }

}  // namespace detail

/// Immutable description of a supported base field.
struct FieldDescriptor {
  FieldKind kind = FieldKind::Rationals;
  long p = 0;        // prime for Prime; base prime for Quadratic (0 = over Q)
  mpq_class d = 0;   // Quadratic only: nonsquare in the base

  friend bool operator==(const FieldDescriptor& l, const FieldDescriptor& r) {
    return l.kind == r.kind && l.p == r.p && l.d == r.d;
  }
};

/// Handle to a field descriptor plus the arithmetic on Elem.
///
/// Cheap to copy. All arithmetic is exact.
class Field {
 public:
  Field() : desc_(rationals_desc()) {}

  static Field rationals() { return Field(); }

  static Field prime(long p) {
    if (!detail::is_prime(p) || p == 2)
      throw DomainError("prime field requires an odd prime, got " + std::to_string(p));
    if (p > (1L << 31)) throw DomainError("prime field modulus too large");
    FieldDescriptor d;
    d.kind = FieldKind::Prime;
    d.p = p;
    return Field(std::make_shared<const FieldDescriptor>(d));
  }

  /// Quadratic extension base(sqrt(d)). The base must be Q or a prime field.
  static Field quadratic(const Field& base, const mpq_class& d) {
    if (base.kind() == FieldKind::Quadratic)
      throw DomainError("towers of quadratic extensions are not supported");
    mpq_class dd = detail::base_reduce(base.prime(), d);
    if (detail::base_is_square(base.prime(), dd))
      throw DomainError("quadratic extension parameter " + dd.get_str() + " is a square in the base");
    FieldDescriptor desc;
    desc.kind = FieldKind::Quadratic;
    desc.p = base.prime();
    desc.d = dd;
    return Field(std::make_shared<const FieldDescriptor>(desc));
  }

  FieldKind kind() const { return desc_->kind; }
  /// Characteristic (0 for Q and extensions of Q).
  long prime() const { return desc_->p; }
  long characteristic() const { return desc_->p; }
  const mpq_class& d() const { return desc_->d; }
  const FieldDescriptor& descriptor() const { return *desc_; }

  bool is_quadratic() const { return kind() == FieldKind::Quadratic; }

  Field base() const {
    if (!is_quadratic()) return *this;
    return desc_->p == 0 ? rationals() : prime(desc_->p);
  }

  friend bool operator==(const Field& l, const Field& r) {
    return l.desc_ == r.desc_ || *l.desc_ == *r.desc_;
  }
  friend bool operator!=(const Field& l, const Field& r) { return !(l == r); }

  Elem zero() const { return Elem(); }
  Elem one() const { return Elem(mpq_class(1)); }
  Elem from_int(long v) const { return Elem(detail::base_reduce(prime(), mpq_class(v))); }
  Elem from_rational(const mpq_class& v) const { return Elem(detail::base_reduce(prime(), v)); }
  /// a + b*sqrt(d); only meaningful for quadratic fields.
  Elem make(const mpq_class& a, const mpq_class& b) const {
    if (!is_quadratic() && sgn(b) != 0) throw DomainError("field has no sqrt(d) coordinate");
    return Elem(detail::base_reduce(prime(), a), detail::base_reduce(prime(), b));
  }
  /// Embeds an element of base() into this field.
  Elem embed(const Elem& x) const { return x; }

  Elem add(const Elem& x, const Elem& y) const {
    const long p = prime();
    if (!is_quadratic()) return Elem(detail::base_add(p, x.a, y.a));
    return Elem(detail::base_add(p, x.a, y.a), detail::base_add(p, x.b, y.b));
  }
  Elem sub(const Elem& x, const Elem& y) const {
    const long p = prime();
    if (!is_quadratic()) return Elem(detail::base_sub(p, x.a, y.a));
    return Elem(detail::base_sub(p, x.a, y.a), detail::base_sub(p, x.b, y.b));
  }
  Elem neg(const Elem& x) const {
    const long p = prime();
    if (!is_quadratic()) return Elem(detail::base_neg(p, x.a));
    return Elem(detail::base_neg(p, x.a), detail::base_neg(p, x.b));
  }
  Elem mul(const Elem& x, const Elem& y) const {
    const long p = prime();
    if (!is_quadratic()) return Elem(detail::base_mul(p, x.a, y.a));
    if (sgn(x.b) == 0 && sgn(y.b) == 0) return Elem(detail::base_mul(p, x.a, y.a));
    using namespace detail;
    mpq_class re = base_add(p, base_mul(p, x.a, y.a), base_mul(p, d(), base_mul(p, x.b, y.b)));
    mpq_class im = base_add(p, base_mul(p, x.a, y.b), base_mul(p, x.b, y.a));
    return Elem(std::move(re), std::move(im));
  }
  /// acc += x*y
  void fma(Elem& acc, const Elem& x, const Elem& y) const {
    if (prime() == 0 && !is_quadratic()) {
      acc.a += x.a * y.a;
      return;
    }
    acc = add(acc, mul(x, y));
  }
  Elem inv(const Elem& x) const {
    const long p = prime();
    if (x.is_zero()) throw NotInvertible("division by zero");
    if (!is_quadratic() || sgn(x.b) == 0) return Elem(detail::base_inv(p, x.a));
    using namespace detail;
    // (a - b sqrt d) / (a^2 - d b^2)
    mpq_class norm = base_sub(p, base_mul(p, x.a, x.a), base_mul(p, d(), base_mul(p, x.b, x.b)));
    mpq_class ninv = base_inv(p, norm);
    return Elem(base_mul(p, x.a, ninv), base_neg(p, base_mul(p, x.b, ninv)));
  }
  Elem div(const Elem& x, const Elem& y) const { return mul(x, inv(y)); }

  bool is_one(const Elem& x) const { return x.a == 1 && sgn(x.b) == 0; }

  std::string format(const Elem& x) const {
    if (!is_quadratic()) return x.a.get_str();
    std::ostringstream os;
    os << x.a.get_str() << (sgn(x.b) < 0 ? "-" : "+") << mpq_class(abs(x.b)).get_str() << "*sqrt(" << d().get_str() << ")";
    return os.str();
  }

  std::string describe() const {
    switch (kind()) {
      case FieldKind::Rationals:
        return "Q";
      case FieldKind::Prime:
        return "F_" + std::to_string(prime());
      case FieldKind::Quadratic:
        return (prime() == 0 ? std::string("Q") : "F_" + std::to_string(prime())) + "(sqrt(" + d().get_str() + "))";
    }
    return "?";
  }

 private:
  explicit Field(std::shared_ptr<const FieldDescriptor> d) : desc_(std::move(d)) {}

  static std::shared_ptr<const FieldDescriptor> rationals_desc() {
    static const auto q = std::make_shared<const FieldDescriptor>();
    return q;
  }

  std::shared_ptr<const FieldDescriptor> desc_;
};

inline void require_same_field(const Field& a, const Field& b, const char* where) {
  if (a != b) throw FieldMismatch(std::string(where) + ": mixed field descriptors " + a.describe() + " vs " + b.describe());
}

/// Field element bundled with its field.
class Scalar {
 public:
  Scalar(Field f, Elem v) : field_(std::move(f)), value_(std::move(v)) {}

  const Field& field() const { return field_; }
  const Elem& value() const { return value_; }

  friend Scalar operator+(const Scalar& x, const Scalar& y) {
    require_same_field(x.field_, y.field_, "Scalar +");
    return {x.field_, x.field_.add(x.value_, y.value_)};
  }
  friend Scalar operator-(const Scalar& x, const Scalar& y) {
    require_same_field(x.field_, y.field_, "Scalar -");
    return {x.field_, x.field_.sub(x.value_, y.value_)};
  }
  friend Scalar operator*(const Scalar& x, const Scalar& y) {
    require_same_field(x.field_, y.field_, "Scalar *");
    return {x.field_, x.field_.mul(x.value_, y.value_)};
  }
  friend Scalar operator/(const Scalar& x, const Scalar& y) {
    require_same_field(x.field_, y.field_, "Scalar /");
    return {x.field_, x.field_.div(x.value_, y.value_)};
  }
  Scalar operator-() const { return {field_, field_.neg(value_)}; }
  Scalar inverse() const { return {field_, field_.inv(value_)}; }
  bool is_zero() const { return value_.is_zero(); }

  friend bool operator==(const Scalar& x, const Scalar& y) { return x.field_ == y.field_ && x.value_ == y.value_; }
  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.field_.format(s.value_); }

 private:
  Field field_;
  Elem value_;
};

}  // namespace ncp1
