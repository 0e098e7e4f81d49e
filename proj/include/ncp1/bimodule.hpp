#pragma once

#include <cstddef>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "ncp1/algebra.hpp"

namespace ncp1 {

/// k-central R-S bimodule on k^m.
///
/// Module elements are coordinate rows. The action of a in R is the matrix
/// Lambda_a with coords(a.n) = coords(n) * Lambda_a, hence
/// Lambda_{ab} = Lambda_b * Lambda_a. The action of b in S is P_b with
/// coords(n.b) = coords(n) * P_b, hence P_{bc} = P_b * P_c.
class Bimodule {
 public:
  Bimodule() = default;
  Bimodule(Algebra left, Algebra right, std::size_t dim, std::vector<Matrix> left_action,
           std::vector<Matrix> right_action)
      : left_(std::move(left)),
        right_(std::move(right)),
        dim_(dim),
        lambda_(std::move(left_action)),
        rho_(std::move(right_action)) {}

  const Algebra& left_algebra() const { return left_; }
  const Algebra& right_algebra() const { return right_; }
  const Field& field() const { return left_.field(); }
  std::size_t dim() const { return dim_; }
  const std::vector<Matrix>& left_actions() const { return lambda_; }
  const std::vector<Matrix>& right_actions() const { return rho_; }
  const Matrix& left_action(std::size_t i) const { return lambda_.at(i); }
  const Matrix& right_action(std::size_t i) const { return rho_.at(i); }

  /// Lambda_a for an arbitrary element a of R.
  Matrix left_action_of(const Vec& a) const { return combine(lambda_, a); }
  /// P_b for an arbitrary element b of S.
  Matrix right_action_of(const Vec& b) const { return combine(rho_, b); }

  /// Checks shapes, unit laws, the homomorphism property of both actions and
  /// their commutation. Throws ValidationError naming the axiom and indices.
  void validate() const {
    if (left_.field() != right_.field()) throw FieldMismatch("bimodule algebras over different fields");
    if (lambda_.size() != left_.dim() || rho_.size() != right_.dim())
      throw ValidationError("action family size does not match algebra dimension");
    for (const auto* fam : {&lambda_, &rho_})
      for (std::size_t i = 0; i < fam->size(); ++i) {
        const Matrix& m = (*fam)[i];
        if (m.rows() != dim_ || m.cols() != dim_)
          throw ValidationError("action matrix " + std::to_string(i) + " has wrong shape");
        require_same_field(m.field(), field(), "bimodule action");
      }
    const Matrix id = Matrix::identity(field(), dim_);
    if (left_action_of(left_.unit()) != id) throw ValidationError("left unit law fails");
    if (right_action_of(right_.unit()) != id) throw ValidationError("right unit law fails");
    for (std::size_t i = 0; i < left_.dim(); ++i)
      for (std::size_t j = 0; j < left_.dim(); ++j)
        if (left_action_of(left_.multiply(left_.basis(i), left_.basis(j))) != lambda_[j] * lambda_[i])
          throw ValidationError("left action is not multiplicative at (" + std::to_string(i) + "," +
                                std::to_string(j) + ")");
    for (std::size_t i = 0; i < right_.dim(); ++i)
      for (std::size_t j = 0; j < right_.dim(); ++j)
        if (right_action_of(right_.multiply(right_.basis(i), right_.basis(j))) != rho_[i] * rho_[j])
          throw ValidationError("right action is not multiplicative at (" + std::to_string(i) + "," +
                                std::to_string(j) + ")");
    for (std::size_t i = 0; i < left_.dim(); ++i)
      for (std::size_t j = 0; j < right_.dim(); ++j)
        if (lambda_[i] * rho_[j] != rho_[j] * lambda_[i])
          throw ValidationError("left and right actions do not commute at (" + std::to_string(i) + "," +
                                std::to_string(j) + ")");
  }

  friend bool operator==(const Bimodule& x, const Bimodule& y) {
    return x.left_ == y.left_ && x.right_ == y.right_ && x.dim_ == y.dim_ && x.lambda_ == y.lambda_ &&
           x.rho_ == y.rho_;
  }
  friend bool operator!=(const Bimodule& x, const Bimodule& y) { return !(x == y); }

 private:
  Matrix combine(const std::vector<Matrix>& fam, const Vec& c) const {
    const Field& f = field();
    Matrix out(f, dim_, dim_);
    for (std::size_t i = 0; i < fam.size(); ++i) {
      if (c[i].is_zero()) continue;
      for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t s = 0; s < dim_; ++s)
          if (!fam[i](r, s).is_zero()) f.fma(out(r, s), c[i], fam[i](r, s));
    }
    return out;
  }

  Algebra left_;
  Algebra right_;
  std::size_t dim_ = 0;
  std::vector<Matrix> lambda_;
  std::vector<Matrix> rho_;
};

/// _A A_k: the algebra acting on itself from the left, k on the right.
inline Bimodule regular_bimodule(const Algebra& a) {
  const Field& f = a.field();
  RegularRepresentation reg = regular_representation(a);
  return Bimodule(a, field_algebra(f), a.dim(), std::move(reg.left), {Matrix::identity(f, a.dim())});
}

/// k^n over (k, k).
inline Bimodule free_bimodule(const Field& f, std::size_t n) {
  const Algebra k = field_algebra(f);
  return Bimodule(k, k, n, {Matrix::identity(f, n)}, {Matrix::identity(f, n)});
}

/// Left dimension over R and right dimension over S, when the end is a division algebra.
struct DimensionPair {
  std::optional<std::size_t> left;
  std::optional<std::size_t> right;

  std::string to_string() const {
    auto s = [](const std::optional<std::size_t>& x) { return x ? std::to_string(*x) : std::string("?"); };
    return "(" + s(left) + "," + s(right) + ")";
  }
  friend bool operator==(const DimensionPair& x, const DimensionPair& y) {
    return x.left == y.left && x.right == y.right;
  }
};

inline DimensionPair dimension_pair(const Bimodule& n) {
  DimensionPair p;
  auto side = [&](const Algebra& a) -> std::optional<std::size_t> {
    if (a.dim() == 0 || n.dim() % a.dim() != 0) return std::nullopt;
    if (is_division_algebra(a) != std::optional<bool>(true)) return std::nullopt;
    return n.dim() / a.dim();
  };
  p.left = side(n.left_algebra());
  p.right = side(n.right_algebra());
  return p;
}

/// Result of a tensor product over the middle algebra, with its presentation
/// as a quotient of the k-tensor product (index s*dim(right)+t).
struct TensorProduct {
  Bimodule module;
  Quotient quotient;
  std::size_t left_dim = 0;
  std::size_t right_dim = 0;
};

/// Largest k-dimension any tensor construction may reach (env NCP1_MAX_TENSOR_DIM).
inline std::size_t max_tensor_dim() {
  if (const char* env = std::getenv("NCP1_MAX_TENSOR_DIM")) {
    try {
      return static_cast<std::size_t>(std::stoull(env));
    } catch (...) {
      throw DomainError(std::string("NCP1_MAX_TENSOR_DIM is not a number: ") + env);
    }
  }
  return 5000;
}

inline TensorProduct tensor_over(const Bimodule& nl, const Bimodule& nr) {
  if (nl.right_algebra() != nr.left_algebra()) throw DomainError("tensor_over: middle algebras differ");
  const Field& f = nl.field();
  const std::size_t dl = nl.dim(), dr = nr.dim(), amb = dl * dr;
  if (amb > max_tensor_dim()) throw ResourceGuard("tensor dimension " + std::to_string(amb) + " exceeds guard", amb);
  const Algebra& mid = nl.right_algebra();
  std::vector<Vec> rels;
  rels.reserve(dl * dr * mid.dim());
  for (std::size_t a = 0; a < mid.dim(); ++a) {
    const Matrix& p = nl.right_action(a);
    const Matrix& l = nr.left_action(a);
    for (std::size_t s = 0; s < dl; ++s)
      for (std::size_t t = 0; t < dr; ++t) {
        Vec v(amb);
        for (std::size_t u = 0; u < dl; ++u)
          if (!p(s, u).is_zero()) v[u * dr + t] = f.add(v[u * dr + t], p(s, u));
        for (std::size_t u = 0; u < dr; ++u)
          if (!l(t, u).is_zero()) v[s * dr + u] = f.sub(v[s * dr + u], l(t, u));
        if (!vec_is_zero(v)) rels.push_back(std::move(v));
      }
  }
  Quotient q = quotient_space(amb, Subspace::span(Matrix::from_rows(f, rels, amb)));
  const Matrix idl = Matrix::identity(f, dl), idr = Matrix::identity(f, dr);
  std::vector<Matrix> lam, rho;
  for (const auto& m : nl.left_actions()) lam.push_back(q.section * kron(m, idr) * q.project);
  for (const auto& m : nr.right_actions()) rho.push_back(q.section * kron(idl, m) * q.project);
  TensorProduct out{Bimodule(nl.left_algebra(), nr.right_algebra(), q.dim, std::move(lam), std::move(rho)),
                    std::move(q), dl, dr};
  return out;
}

/// N (x)_k k' for a quadratic extension k' of the base field.
inline Bimodule base_change(const Bimodule& n, const Field& kp) {
  std::vector<Matrix> lam, rho;
  for (const auto& m : n.left_actions()) lam.push_back(m.over(kp));
  for (const auto& m : n.right_actions()) rho.push_back(m.over(kp));
  return Bimodule(base_change(n.left_algebra(), kp), base_change(n.right_algebra(), kp), n.dim(), std::move(lam),
                  std::move(rho));
}

// ---------------------------------------------------------------------------
// Morita reduction

enum class Side { Left, Right };

/// Idempotent e with span{a e b} = A.
inline bool is_full_idempotent(const AlgebraElement& e) {
  const Algebra& a = e.parent;
  if (e.is_zero() || a.multiply(e.coords, e.coords) != e.coords) return false;
  std::vector<Vec> gens;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const Vec ae = a.multiply(a.basis(i), e.coords);
    for (std::size_t j = 0; j < a.dim(); ++j) gens.push_back(a.multiply(ae, a.basis(j)));
  }
  return rank(Matrix::from_rows(a.field(), gens, a.dim())) == a.dim();
}

/// Idempotent e = w z built from a zero divisor z (z w z = z), or nullopt.
inline std::optional<AlgebraElement> idempotent_from_zero_divisor(const AlgebraElement& z) {
  const Algebra& a = z.parent;
  auto w = solve_left(a.left_mult(z.coords) * a.right_mult(z.coords), z.coords);
  if (!w) return std::nullopt;
  AlgebraElement e(a, a.multiply(*w, z.coords));
  if (e.is_zero() || a.multiply(e.coords, e.coords) != e.coords) return std::nullopt;
  return e;
}

/// The corner algebra eAe on its canonical basis.
struct Corner {
  Algebra algebra;
  Matrix embedding;  // dim(eAe) x dim(A)
};

inline Corner corner_algebra(const AlgebraElement& e) {
  const Algebra& a = e.parent;
  const Field& f = a.field();
  std::vector<Vec> gens;
  for (std::size_t i = 0; i < a.dim(); ++i) gens.push_back(a.multiply(a.multiply(e.coords, a.basis(i)), e.coords));
  const Subspace s = Subspace::span(Matrix::from_rows(f, gens, a.dim()));
  const std::size_t d = s.dim();
  std::vector<Elem> c(d * d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const Vec p = a.multiply(s.basis().row(i), s.basis().row(j));
      const Vec co = *s.coordinates(p);
      for (std::size_t k = 0; k < d; ++k) c[(i * d + j) * d + k] = co[k];
    }
  Vec unit = *s.coordinates(e.coords);
  Algebra::Data data;
  data.field = f;
  data.dim = d;
  data.constants = std::move(c);
  data.unit = std::move(unit);
  if (d == 1) data.kind = AlgebraKind::Field;
  return {Algebra(std::move(data)), s.basis()};
}

/// The corner bimodule eN over (eRe, S) for side Left, or Ne over (R, eSe) for side Right.
inline Bimodule morita_reduce(const Bimodule& n, Side side, const AlgebraElement& e) {
  const Algebra& base = side == Side::Left ? n.left_algebra() : n.right_algebra();
  if (e.parent != base) throw DomainError("morita_reduce: idempotent lives in the wrong algebra");
  if (!is_full_idempotent(e)) throw DomainError("morita_reduce: element is not a full idempotent");
  if (e.coords == base.unit()) return n;
  const Field& f = n.field();
  const Corner c = corner_algebra(e);
  const Matrix act = side == Side::Left ? n.left_action_of(e.coords) : n.right_action_of(e.coords);
  const Subspace sub = image(act);
  const Matrix& b = sub.basis();
  auto restrict = [&](const Matrix& m) {
    Matrix out(f, sub.dim(), sub.dim());
    for (std::size_t r = 0; r < sub.dim(); ++r) out.set_row(r, *sub.coordinates(row_times(b.row(r), m)));
    return out;
  };
  std::vector<Matrix> lam, rho;
  if (side == Side::Left) {
    for (std::size_t i = 0; i < c.algebra.dim(); ++i) lam.push_back(restrict(n.left_action_of(c.embedding.row(i))));
    for (const auto& m : n.right_actions()) rho.push_back(restrict(m));
    return Bimodule(c.algebra, n.right_algebra(), sub.dim(), std::move(lam), std::move(rho));
  }
  for (const auto& m : n.left_actions()) lam.push_back(restrict(m));
  for (std::size_t i = 0; i < c.algebra.dim(); ++i) rho.push_back(restrict(n.right_action_of(c.embedding.row(i))));
  return Bimodule(n.left_algebra(), c.algebra, sub.dim(), std::move(lam), std::move(rho));
}

// ---------------------------------------------------------------------------
// Isomorphisms with twists

struct TwistVerdict {
  bool ok = false;
  std::string reason;
};

/// psi(a.m.b) = phi1(a).psi(m).phi2(b) with phi1, phi2 unital algebra maps
/// (given as matrices in row convention) and psi bijective.
inline TwistVerdict iso_with_twists_verify(const Bimodule& m, const Bimodule& n, const Matrix& phi1, const Matrix& phi2,
                                           const Matrix& psi) {
  if (m.dim() != n.dim()) return {false, "module dimensions differ"};
  if (m.left_algebra().dim() != n.left_algebra().dim() || m.right_algebra().dim() != n.right_algebra().dim())
    return {false, "algebra dimensions differ"};
  if (phi1.rows() != m.left_algebra().dim() || phi1.cols() != n.left_algebra().dim() ||
      phi2.rows() != m.right_algebra().dim() || phi2.cols() != n.right_algebra().dim() || psi.rows() != m.dim() ||
      psi.cols() != n.dim())
    throw DomainError("iso_with_twists_verify: map shapes do not match the bimodules");
  if (!is_unital_hom(m.left_algebra(), n.left_algebra(), phi1)) return {false, "phi1 is not a unital algebra map"};
  if (!is_unital_hom(m.right_algebra(), n.right_algebra(), phi2)) return {false, "phi2 is not a unital algebra map"};
  if (!is_invertible(psi)) return {false, "psi is not bijective"};
  for (std::size_t a = 0; a < m.left_algebra().dim(); ++a) {
    const Matrix na = n.left_action_of(phi1.row(a));
    for (std::size_t b = 0; b < m.right_algebra().dim(); ++b) {
      const Matrix nb = n.right_action_of(phi2.row(b));
      if (m.right_action(b) * m.left_action(a) * psi != psi * nb * na)
        return {false, "intertwining fails at algebra basis pair (" + std::to_string(a) + "," + std::to_string(b) + ")"};
    }
  }
  return {true, "verified"};
}

}  // namespace ncp1
