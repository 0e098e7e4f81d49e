#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ncp1/linalg.hpp"
#include "ncp1/witt/local.hpp"

namespace ncp1 {

enum class AlgebraKind { Generic, Quaternion, Matrix, Field };

/// Parameters of the quaternion algebra with i^2 = a, j^2 = b, ij = -ji.
struct QuaternionParams {
  Elem a;
  Elem b;
};

/// Finite-dimensional unital associative algebra given by structure constants
/// e_i e_j = sum_k c[i][j][k] e_k.
class Algebra {
 public:
  struct Data {
    Field field;
    std::size_t dim = 0;
    std::vector<Elem> constants;  // (i*dim + j)*dim + k
    Vec unit;
    AlgebraKind kind = AlgebraKind::Generic;
    QuaternionParams quaternion;  // Quaternion only
    std::size_t matrix_order = 0; // Matrix only
  };

  Algebra() : data_(std::make_shared<const Data>()) {}
  explicit Algebra(Data d) : data_(std::make_shared<const Data>(std::move(d))) {
    if (data_->constants.size() != data_->dim * data_->dim * data_->dim)
      throw DomainError("structure constant array has wrong size");
    if (data_->unit.size() != data_->dim) throw DomainError("unit vector has wrong size");
  }

  const Field& field() const { return data_->field; }
  std::size_t dim() const { return data_->dim; }
  const Elem& constant(std::size_t i, std::size_t j, std::size_t k) const {
    return data_->constants[(i * dim() + j) * dim() + k];
  }
  const std::vector<Elem>& constants() const { return data_->constants; }
  const Vec& unit() const { return data_->unit; }
  AlgebraKind kind() const { return data_->kind; }
  const QuaternionParams& quaternion_params() const { return data_->quaternion; }
  std::size_t matrix_order() const { return data_->matrix_order; }
  const Data& data() const { return *data_; }

  Vec basis(std::size_t i) const { return unit_vector(field(), dim(), i); }

  Vec multiply(const Vec& x, const Vec& y) const {
    const Field& f = field();
    const std::size_t n = dim();
    Vec out(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (y[j].is_zero()) continue;
        const Elem xy = f.mul(x[i], y[j]);
        for (std::size_t k = 0; k < n; ++k) {
          const Elem& c = constant(i, j, k);
          if (!c.is_zero()) f.fma(out[k], xy, c);
        }
      }
    }
    return out;
  }

  /// L with coords(x*y) = coords(y) * L.
  Matrix left_mult(const Vec& x) const {
    const Field& f = field();
    const std::size_t n = dim();
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          const Elem& c = constant(i, j, k);
          if (!c.is_zero()) f.fma(m(j, k), x[i], c);
        }
    }
    return m;
  }

  /// R with coords(x*y) = coords(x) * R.
  Matrix right_mult(const Vec& y) const {
    const Field& f = field();
    const std::size_t n = dim();
    Matrix m(f, n, n);
    for (std::size_t j = 0; j < n; ++j) {
      if (y[j].is_zero()) continue;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
          const Elem& c = constant(i, j, k);
          if (!c.is_zero()) f.fma(m(i, k), y[j], c);
        }
    }
    return m;
  }

  /// Throws ValidationError naming the failing axiom and basis indices.
  void validate() const {
    const std::size_t n = dim();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec e = basis(i);
      if (multiply(unit(), e) != e || multiply(e, unit()) != e)
        throw ValidationError("unit law fails at basis element " + std::to_string(i));
    }
    std::vector<Matrix> right(n);
    for (std::size_t k = 0; k < n; ++k) right[k] = right_mult(basis(k));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Vec eij = multiply(basis(i), basis(j));
        for (std::size_t k = 0; k < n; ++k) {
          const Vec lhs = row_times(eij, right[k]);
          const Vec rhs = multiply(basis(i), row_times(basis(j), right[k]));
          if (lhs != rhs)
            throw ValidationError("associativity fails at basis triple (" + std::to_string(i) + "," +
                                  std::to_string(j) + "," + std::to_string(k) + ")");
        }
      }
  }

  std::string describe() const {
    switch (kind()) {
      case AlgebraKind::Quaternion:
        return "(" + field().format(data_->quaternion.a) + "," + field().format(data_->quaternion.b) + ")/" +
               field().describe();
      case AlgebraKind::Matrix:
        return "M_" + std::to_string(matrix_order()) + "(" + field().describe() + ")";
      case AlgebraKind::Field:
        return field().describe();
      case AlgebraKind::Generic:
        break;
    }
    return "algebra of dim " + std::to_string(dim()) + " over " + field().describe();
  }

  /// Equality of structure (field, constants, unit); tags are ignored.
  friend bool operator==(const Algebra& x, const Algebra& y) {
    return x.data_ == y.data_ || (x.field() == y.field() && x.dim() == y.dim() &&
                                  x.constants() == y.constants() && x.unit() == y.unit());
  }
  friend bool operator!=(const Algebra& x, const Algebra& y) { return !(x == y); }

 private:
  std::shared_ptr<const Data> data_;
};

inline Algebra make_quaternion(const Field& f, const Elem& a, const Elem& b) {
  if (a.is_zero() || b.is_zero()) throw DomainError("quaternion parameters must be nonzero");
  if (f.is_quadratic()) throw DomainError("quaternion constructor expects Q or a prime field; use base_change");
  Algebra::Data d;
  d.field = f;
  d.dim = 4;
  d.constants.assign(64, Elem());
  d.unit = unit_vector(f, 4, 0);
  d.kind = AlgebraKind::Quaternion;
  d.quaternion = {a, b};
  auto set = [&](std::size_t i, std::size_t j, std::size_t k, const Elem& v) { d.constants[(i * 4 + j) * 4 + k] = v; };
  const Elem one = f.one();
  const Elem ab = f.mul(a, b);
  // basis 1, i, j, k = ij
  for (std::size_t t = 0; t < 4; ++t) {
    set(0, t, t, one);
    set(t, 0, t, one);
  }
  set(1, 1, 0, a);
  set(2, 2, 0, b);
  set(3, 3, 0, f.neg(ab));
  set(1, 2, 3, one);
  set(2, 1, 3, f.neg(one));
  set(1, 3, 2, a);
  set(3, 1, 2, f.neg(a));
  set(2, 3, 1, f.neg(b));
  set(3, 2, 1, b);
  return Algebra(std::move(d));
}

inline Algebra make_quaternion(const Field& f, long a, long b) { return make_quaternion(f, f.from_int(a), f.from_int(b)); }

inline Algebra make_quaternion(const Field& f, const QuaternionParams& p) { return make_quaternion(f, p.a, p.b); }

/// M_n(k) on matrix units e_{uv} (basis index u*n+v).
inline Algebra make_matrix_algebra(const Field& f, std::size_t n) {
  if (n == 0) throw DomainError("matrix algebra of order 0");
  const std::size_t dim = n * n;
  Algebra::Data d;
  d.field = f;
  d.dim = dim;
  d.constants.assign(dim * dim * dim, Elem());
  d.unit.assign(dim, Elem());
  d.kind = n == 1 ? AlgebraKind::Field : AlgebraKind::Matrix;
  d.matrix_order = n;
  for (std::size_t u = 0; u < n; ++u) {
    d.unit[u * n + u] = f.one();
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t x = 0; x < n; ++x) d.constants[((u * n + v) * dim + (v * n + x)) * dim + (u * n + x)] = f.one();
  }
  return Algebra(std::move(d));
}

inline Algebra field_algebra(const Field& f) { return make_matrix_algebra(f, 1); }

inline Algebra algebra_from_constants(const Field& f, std::size_t dim, std::vector<Elem> constants, Vec unit) {
  Algebra::Data d;
  d.field = f;
  d.dim = dim;
  d.constants = std::move(constants);
  d.unit = std::move(unit);
  Algebra a(std::move(d));
  a.validate();
  return a;
}

/// A (x) k' with the same structure constants, viewed over the extension kp.
inline Algebra base_change(const Algebra& a, const Field& kp) {
  if (!kp.is_quadratic() || kp.base() != a.field())
    throw DomainError("base change supports only a quadratic extension of " + a.field().describe());
  Algebra::Data d = a.data();
  d.field = kp;
  return Algebra(std::move(d));
}

/// Element of an algebra.
struct AlgebraElement {
  Algebra parent;
  Vec coords;

  AlgebraElement(Algebra a, Vec c) : parent(std::move(a)), coords(std::move(c)) {
    if (coords.size() != parent.dim()) throw DomainError("element length does not match algebra dimension");
  }

  static AlgebraElement one(const Algebra& a) { return {a, a.unit()}; }
  static AlgebraElement basis(const Algebra& a, std::size_t i) { return {a, a.basis(i)}; }

  bool is_zero() const { return vec_is_zero(coords); }

  friend AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y) {
    if (x.parent != y.parent) throw DomainError("product of elements of different algebras");
    return {x.parent, x.parent.multiply(x.coords, y.coords)};
  }
  friend AlgebraElement operator+(const AlgebraElement& x, const AlgebraElement& y) {
    return {x.parent, vec_add(x.parent.field(), x.coords, y.coords)};
  }
  friend AlgebraElement operator-(const AlgebraElement& x, const AlgebraElement& y) {
    return {x.parent, vec_sub(x.parent.field(), x.coords, y.coords)};
  }
  friend bool operator==(const AlgebraElement& x, const AlgebraElement& y) {
    return x.parent == y.parent && x.coords == y.coords;
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords.size(); ++i) s += (i ? ", " : "") + parent.field().format(coords[i]);
    return s + ")";
  }
};

/// Two-sided inverse via the left-regular linear system; throws NotInvertible.
inline AlgebraElement invert(const AlgebraElement& x) {
  const Algebra& a = x.parent;
  if (x.is_zero()) throw NotInvertible("zero element is not invertible");
  auto y = solve_left(a.left_mult(x.coords), a.unit());
  if (!y) throw NotInvertible("element " + x.to_string() + " is a zero divisor");
  AlgebraElement inv(a, *y);
  if (a.multiply(inv.coords, x.coords) != a.unit()) throw NotInvertible("left and right inverses differ");
  return inv;
}

inline bool is_invertible(const AlgebraElement& x) {
  return !x.is_zero() && is_invertible(x.parent.left_mult(x.coords));
}

struct RegularRepresentation {
  std::vector<Matrix> left;   // left[i]: x -> e_i x
  std::vector<Matrix> right;  // right[i]: x -> x e_i
};

inline RegularRepresentation regular_representation(const Algebra& a) {
  RegularRepresentation r;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    r.left.push_back(a.left_mult(a.basis(i)));
    r.right.push_back(a.right_mult(a.basis(i)));
  }
  return r;
}

/// A k-linear map A -> B as a dimA x dimB matrix (row convention).
inline bool is_unital_hom(const Algebra& a, const Algebra& b, const Matrix& m) {
  if (a.field() != b.field() || m.rows() != a.dim() || m.cols() != b.dim()) return false;
  if (row_times(a.unit(), m) != b.unit()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      const Vec lhs = row_times(a.multiply(a.basis(i), a.basis(j)), m);
      const Vec rhs = b.multiply(m.row(i), m.row(j));
      if (lhs != rhs) return false;
    }
  return true;
}

/// Gram matrix of the trace form tr(L_{e_i e_j}).
inline Matrix trace_form(const Algebra& a) {
  const Field& f = a.field();
  std::vector<Elem> tr(a.dim());
  for (std::size_t k = 0; k < a.dim(); ++k) {
    const Matrix l = a.left_mult(a.basis(k));
    for (std::size_t t = 0; t < a.dim(); ++t) tr[k] = f.add(tr[k], l(t, t));
  }
  Matrix g(f, a.dim(), a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      const Vec p = a.multiply(a.basis(i), a.basis(j));
      for (std::size_t k = 0; k < a.dim(); ++k)
        if (!p[k].is_zero()) f.fma(g(i, j), p[k], tr[k]);
    }
  return g;
}

/// Nondegenerate trace form: a certificate of semisimplicity.
inline bool trace_form_nondegenerate(const Algebra& a) { return is_invertible(trace_form(a)); }

// ---------------------------------------------------------------------------
// Low-height enumeration

/// Field values in the fixed order 0, 1, -1, 2, -2, ... For quadratic fields
/// the values x + y*sqrt(d) are grouped by max level of x and y.
/// `level_end[h]` is the number of values of level <= h.
struct HeightValues {
  std::vector<Elem> values;
  std::vector<std::size_t> level_end;
};

inline HeightValues height_values(const Field& f, std::size_t max_level) {
  HeightValues hv;
  auto base_level = [&](std::size_t h) {
    std::vector<mpq_class> out;
    if (h == 0) return std::vector<mpq_class>{0};
    out.push_back(mpq_class(static_cast<long>(h)));
    out.push_back(mpq_class(-static_cast<long>(h)));
    return out;
  };
  auto seen = [&](const Elem& e) {
    for (const auto& v : hv.values)
      if (v == e) return true;
    return false;
  };
  std::vector<std::vector<mpq_class>> levels;
  for (std::size_t h = 0; h <= max_level; ++h) {
    levels.push_back(base_level(h));
    if (!f.is_quadratic()) {
      for (const auto& x : levels[h]) {
        Elem e = f.from_rational(x);
        if (!seen(e)) hv.values.push_back(e);
      }
    } else {
      // pairs (x, y) with max(level x, level y) == h
      for (std::size_t hx = 0; hx <= h; ++hx)
        for (const auto& x : levels[hx])
          for (std::size_t hy = 0; hy <= h; ++hy) {
            if (hx != h && hy != h) continue;
            for (const auto& y : levels[hy]) {
              Elem e = f.make(x, y);
              if (!seen(e)) hv.values.push_back(e);
            }
          }
    }
    hv.level_end.push_back(hv.values.size());
  }
  return hv;
}

/// Calls visit(coords) on vectors of length n by increasing height level
/// (1, 2, ...), lexicographic within a level, skipping zero. Stops when visit
/// returns true or after `budget` candidates. Returns true iff stopped by visit.
inline bool enumerate_low_height(const Field& f, std::size_t n, std::size_t budget,
                                 const std::function<bool(const Vec&)>& visit, std::size_t max_level = 6) {
  const HeightValues hv = height_values(f, max_level);
  std::size_t used = 0;
  for (std::size_t h = 1; h <= max_level; ++h) {
    const std::size_t count = hv.level_end[h];
    const std::size_t prev = hv.level_end[h - 1];
    if (count == prev) continue;
    std::vector<std::size_t> idx(n, 0);
    while (true) {
      bool fresh = false;
      for (auto i : idx) fresh = fresh || i >= prev;
      if (fresh) {
        Vec v(n);
        for (std::size_t t = 0; t < n; ++t) v[t] = hv.values[idx[t]];
        if (visit(v)) return true;
        if (++used >= budget) return false;
      }
      std::size_t pos = n;
      while (pos > 0) {
        --pos;
        if (++idx[pos] < count) break;
        idx[pos] = 0;
        if (pos == 0) {
          pos = n + 1;
          break;
        }
      }
      if (pos == n + 1 || n == 0) break;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Quaternion recognition

/// A presentation of a 4-dimensional algebra as a standard quaternion algebra:
/// row r of `to_algebra` holds the coordinates of the r-th standard basis
/// element (1, i, j, ij) of (a,b).
struct QuaternionRecognition {
  QuaternionParams params;
  Matrix to_algebra;    // 4x4, standard -> A
  Matrix from_algebra;  // inverse
};

inline std::optional<QuaternionRecognition> recognize_quaternion(const Algebra& alg) {
  const Field& f = alg.field();
  if (alg.dim() != 4) return std::nullopt;
  if (alg.kind() == AlgebraKind::Quaternion) {
    return QuaternionRecognition{alg.quaternion_params(), Matrix::identity(f, 4), Matrix::identity(f, 4)};
  }
  // scalar coefficient of x when x lies in k*1
  auto scalar = [&](const Vec& x) -> std::optional<Elem> {
    std::size_t piv = 0;
    while (piv < 4 && alg.unit()[piv].is_zero()) ++piv;
    const Elem s = f.div(x[piv], alg.unit()[piv]);
    if (vec_scale(f, s, alg.unit()) != x) return std::nullopt;
    return s;
  };
  // trace-zero subspace of the left-regular trace
  Matrix trace_row(f, 4, 1);
  for (std::size_t k = 0; k < 4; ++k) {
    const Matrix l = alg.left_mult(alg.basis(k));
    for (std::size_t t = 0; t < 4; ++t) trace_row(k, 0) = f.add(trace_row(k, 0), l(t, t));
  }
  const Subspace pure = kernel(transpose(trace_row));
  if (pure.dim() != 3) return std::nullopt;
  std::vector<Vec> u;
  for (std::size_t r = 0; r < 3; ++r) u.push_back(pure.basis().row(r));
  const Elem half = f.inv(f.from_int(2));
  auto form = [&](const Vec& x, const Vec& y) -> std::optional<Elem> {
    auto s = scalar(vec_add(f, alg.multiply(x, y), alg.multiply(y, x)));
    if (!s) return std::nullopt;
    return f.mul(*s, half);
  };
  // orthogonalise u with respect to the symmetric form
  for (std::size_t t = 0; t < 3; ++t) {
    auto q = form(u[t], u[t]);
    if (!q) return std::nullopt;
    if (q->is_zero()) {
      bool fixed = false;
      for (std::size_t s = t + 1; s < 3 && !fixed; ++s) {
        auto qs = form(u[s], u[s]);
        if (!qs) return std::nullopt;
        if (!qs->is_zero()) {
          std::swap(u[t], u[s]);
          fixed = true;
        }
      }
      for (std::size_t s = t + 1; s < 3 && !fixed; ++s) {
        auto b = form(u[t], u[s]);
        if (!b) return std::nullopt;
        if (!b->is_zero()) {
          u[t] = vec_add(f, u[t], u[s]);
          fixed = true;
        }
      }
      if (!fixed) return std::nullopt;
      q = form(u[t], u[t]);
    }
    for (std::size_t s = t + 1; s < 3; ++s) {
      auto b = form(u[t], u[s]);
      if (!b) return std::nullopt;
      u[s] = vec_sub(f, u[s], vec_scale(f, f.div(*b, *q), u[t]));
    }
  }
  auto qa = form(u[0], u[0]);
  auto qb = form(u[1], u[1]);
  if (!qa || !qb || qa->is_zero() || qb->is_zero()) return std::nullopt;
  Matrix to = Matrix::from_rows(f, {alg.unit(), u[0], u[1], alg.multiply(u[0], u[1])}, 4);
  auto from = inverse(to);
  if (!from) return std::nullopt;
  const Algebra std_alg = make_quaternion(f, *qa, *qb);
  if (!is_unital_hom(std_alg, alg, to)) return std::nullopt;
  return QuaternionRecognition{{*qa, *qb}, std::move(to), std::move(*from)};
}

// ---------------------------------------------------------------------------
// Zero divisors

struct ZeroDivisorResult {
  std::optional<AlgebraElement> element;
  bool certified_division = false;  // no zero divisor exists (decision, not search)
  std::string method;
};

/// Searches for a nonzero non-invertible element. Quaternion algebras over Q
/// are decided through their ramification set and the conic point search;
/// dimension-one algebras are fields; everything else runs a budgeted
/// low-height search (absence is then only "not found").
inline ZeroDivisorResult find_zero_divisor(const Algebra& alg, std::size_t budget = 20000) {
  const Field& f = alg.field();
  ZeroDivisorResult res;
  if (alg.dim() <= 1) {
    res.certified_division = alg.dim() == 1;
    res.method = "field";
    return res;
  }
  if (f.kind() == FieldKind::Rationals) {
    if (auto rec = recognize_quaternion(alg)) {
      const mpq_class a = rec->params.a.a, b = rec->params.b.a;
      res.method = "ramification";
      if (!witt::ramification_set(a, b).empty()) {
        res.certified_division = true;
        return res;
      }
      const auto conic = witt::Conic::from_rationals(a, b);
      auto pt = witt::conic_point_search(conic);
      if (!pt) throw ValidationError("split quaternion algebra without a conic point");
      const auto p = witt::point_on_original(conic, *pt);
      // Z + X i + Y j has reduced norm Z^2 - aX^2 - bY^2 = 0
      const Vec std_coords{f.from_rational(mpq_class(p[2])), f.from_rational(mpq_class(p[0])),
                           f.from_rational(mpq_class(p[1])), f.zero()};
      res.element = AlgebraElement(alg, row_times(std_coords, rec->to_algebra));
      return res;
    }
  }
  res.method = "search";
  enumerate_low_height(f, alg.dim(), budget, [&](const Vec& v) {
    if (rank(alg.left_mult(v)) < alg.dim()) {
      res.element = AlgebraElement(alg, v);
      return true;
    }
    return false;
  });
  return res;
}

/// Division decision where one is available: nullopt when undecided.
inline std::optional<bool> is_division_algebra(const Algebra& alg) {
  if (alg.dim() == 0) return false;
  if (alg.dim() == 1) return true;
  if (alg.field().kind() == FieldKind::Rationals && recognize_quaternion(alg)) {
    return find_zero_divisor(alg).certified_division;
  }
  if (alg.kind() == AlgebraKind::Matrix) return false;
  // finite division rings are commutative
  if (alg.field().characteristic() != 0) {
    for (std::size_t i = 0; i < alg.dim(); ++i)
      for (std::size_t j = 0; j < alg.dim(); ++j)
        if (alg.multiply(alg.basis(i), alg.basis(j)) != alg.multiply(alg.basis(j), alg.basis(i))) return false;
  }
  if (find_zero_divisor(alg, 2000).element) return false;
  return std::nullopt;
}

}  // namespace ncp1
