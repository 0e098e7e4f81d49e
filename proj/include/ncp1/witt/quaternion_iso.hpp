#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <vector>

#include "ncp1/algebra.hpp"
#include "ncp1/witt/local.hpp"

namespace ncp1::witt {

/// (a1,b1) and (a2,b2) over Q are isomorphic iff their ramification sets agree.
inline bool quaternion_iso(const mpq_class& a1, const mpq_class& b1, const mpq_class& a2, const mpq_class& b2) {
  return ramification_set(a1, b1) == ramification_set(a2, b2);
}

namespace detail {

inline std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return std::nullopt;
  mpz_class n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  return mpq_class(n, d);
}

// integers by height: 0, 1, -1, 2, -2, ...
inline std::vector<long> signed_range(long h) {
  std::vector<long> out{0};
  for (long t = 1; t <= h; ++t) {
    out.push_back(t);
    out.push_back(-t);
  }
  return out;
}

}  // namespace detail

/// Explicit isomorphism (a1,b1) -> (a2,b2) of standard quaternion algebras over Q,
/// found by a bounded integer search: a pure x with x^2 = a1, then a pure z
/// anticommuting with x with z^2 = b1; 1, i, j, k map to 1, x, z, xz.
/// Row r of the result holds the image of standard basis element r.
inline std::optional<Matrix> explicit_quaternion_iso(const mpq_class& a1, const mpq_class& b1, const mpq_class& a2,
                                                     const mpq_class& b2, long bound = 40) {
  const Field q = Field::rationals();
  const Algebra src = make_quaternion(q, q.from_rational(a1), q.from_rational(b1));
  const Algebra dst = make_quaternion(q, q.from_rational(a2), q.from_rational(b2));
  const mpq_class ab2 = a2 * b2;
  // quadratic form of pure quaternions in (a2,b2)
  auto form = [&](const std::vector<mpq_class>& u, const std::vector<mpq_class>& v) -> mpq_class {
    return a2 * u[0] * v[0] + b2 * u[1] * v[1] - ab2 * u[2] * v[2];
  };
  auto to_vec = [&](const std::vector<mpq_class>& p) {
    return Vec{q.zero(), q.from_rational(p[0]), q.from_rational(p[1]), q.from_rational(p[2])};
  };
  for (long h = 1; h <= bound; ++h) {
    const auto range = detail::signed_range(h);
    for (long w = 1; w <= h; ++w)
      for (long y2 : range)
        for (long y3 : range) {
          if (std::max({w, std::labs(y2), std::labs(y3)}) != h) continue;
          // a2 Y1^2 = a1 w^2 - b2 Y2^2 + a2 b2 Y3^2
          const mpq_class rhs = (a1 * w * w - b2 * y2 * y2 + ab2 * y3 * y3) / a2;
          auto y1 = detail::rational_sqrt(rhs);
          if (!y1) continue;
          const std::vector<mpq_class> x{*y1 / w, mpq_class(y2) / w, mpq_class(y3) / w};
          // orthogonal complement of x among pure quaternions
          const Matrix cons = Matrix::from_rows(
              q, {Vec{q.from_rational(a2 * x[0]), q.from_rational(b2 * x[1]), q.from_rational(-ab2 * x[2])}}, 3);
          const Subspace perp = kernel(cons);
          if (perp.dim() != 2) continue;
          std::vector<mpq_class> u(3), v(3);
          for (int c = 0; c < 3; ++c) {
            u[c] = perp.basis()(0, c).a;
            v[c] = perp.basis()(1, c).a;
          }
          if (sgn(form(u, u)) == 0) {
            if (sgn(form(v, v)) != 0) {
              std::swap(u, v);
            } else {
              for (int c = 0; c < 3; ++c) u[c] += v[c];
            }
          }
          const mpq_class qu = form(u, u);
          if (sgn(qu) == 0) continue;
          const mpq_class coef = form(u, v) / qu;
          for (int c = 0; c < 3; ++c) v[c] -= coef * u[c];
          const mpq_class qv = form(v, v);
          if (sgn(qv) == 0) continue;
          for (long h2 = 1; h2 <= bound; ++h2)
            for (long r = 1; r <= h2; ++r)
              for (long t : detail::signed_range(h2)) {
                if (std::max(r, std::labs(t)) != h2) continue;
                // S^2 qu + t^2 qv = b1 r^2
                auto s = detail::rational_sqrt((b1 * r * r - qv * t * t) / qu);
                if (!s) continue;
                std::vector<mpq_class> z(3);
                for (int c = 0; c < 3; ++c) z[c] = (*s * u[c] + mpq_class(t) * v[c]) / r;
                const Vec xv = to_vec(x), zv = to_vec(z);
                Matrix m = Matrix::from_rows(q, {dst.unit(), xv, zv, dst.multiply(xv, zv)}, 4);
                if (is_unital_hom(src, dst, m) && is_invertible(m)) return m;
              }
        }
  }
  return std::nullopt;
}

/// Algebra isomorphism A -> B (row convention) when A == B (identity) or both
/// are recognisable quaternion algebras over Q with equal ramification sets.
inline std::optional<Matrix> quaternion_algebra_isomorphism(const Algebra& a, const Algebra& b, long bound = 40) {
  if (a == b) return Matrix::identity(a.field(), a.dim());
  if (a.field() != b.field() || a.field().kind() != FieldKind::Rationals) return std::nullopt;
  auto ra = recognize_quaternion(a);
  auto rb = recognize_quaternion(b);
  if (!ra || !rb) return std::nullopt;
  const mpq_class a1 = ra->params.a.a, b1 = ra->params.b.a, a2 = rb->params.a.a, b2 = rb->params.b.a;
  if (!quaternion_iso(a1, b1, a2, b2)) return std::nullopt;
  auto m = explicit_quaternion_iso(a1, b1, a2, b2, bound);
  if (!m) return std::nullopt;
  Matrix phi = ra->from_algebra * *m * rb->to_algebra;
  if (!is_unital_hom(a, b, phi)) return std::nullopt;
  return phi;
}

}  // namespace ncp1::witt
