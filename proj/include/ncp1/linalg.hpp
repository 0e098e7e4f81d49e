#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "ncp1/matrix.hpp"

namespace ncp1 {

/// Reduced row-echelon form of a matrix together with its pivot columns.
struct Rref {
  Matrix reduced;                    // only the nonzero rows
  std::vector<std::size_t> pivots;   // strictly increasing
};

inline Rref rref(const Matrix& m) {
  const Field& f = m.field();
  std::vector<Vec> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Vec v = m.row(r);
    if (!vec_is_zero(v)) rows.push_back(std::move(v));
  }
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < rows.size(); ++col) {
    std::size_t sel = rank;
    while (sel < rows.size() && rows[sel][col].is_zero()) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[rank], rows[sel]);
    Vec& prow = rows[rank];
    if (!f.is_one(prow[col])) {
      const Elem inv = f.inv(prow[col]);
      for (std::size_t j = col; j < prow.size(); ++j)
        if (!prow[j].is_zero()) prow[j] = f.mul(inv, prow[j]);
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col].is_zero()) continue;
      const Elem factor = rows[r][col];
      Vec& target = rows[r];
      for (std::size_t j = col; j < prow.size(); ++j) {
        if (prow[j].is_zero()) continue;
        target[j] = f.sub(target[j], f.mul(factor, prow[j]));
      }
    }
    pivots.push_back(col);
    ++rank;
  }
  rows.resize(rank);
  return {Matrix::from_rows(f, rows, m.cols()), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

/// A subspace of k^n, stored as its canonical reduced row-echelon basis.
///
/// Two subspaces are equal iff their Subspace values compare equal.
class Subspace {
 public:
  Subspace() = default;

  /// Zero subspace of k^n.
  static Subspace zero(const Field& f, std::size_t ambient) {
    Subspace s;
    s.basis_ = Matrix(f, 0, ambient);
    return s;
  }

  static Subspace full(const Field& f, std::size_t ambient) {
    return span(Matrix::identity(f, ambient));
  }

  /// Row space of the generators.
  static Subspace span(const Matrix& generators) {
    Rref r = rref(generators);
    Subspace s;
    s.basis_ = std::move(r.reduced);
    s.pivots_ = std::move(r.pivots);
    return s;
  }

  const Field& field() const { return basis_.field(); }
  std::size_t ambient_dim() const { return basis_.cols(); }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Remainder of v after reduction against the basis.
  Vec reduce(const Vec& v) const {
    const Field& f = field();
    Vec out = v;
    for (std::size_t r = 0; r < pivots_.size(); ++r) {
      const Elem c = out[pivots_[r]];
      if (c.is_zero()) continue;
      for (std::size_t j = 0; j < out.size(); ++j) {
        const Elem& b = basis_(r, j);
        if (!b.is_zero()) out[j] = f.sub(out[j], f.mul(c, b));
      }
    }
    return out;
  }

  bool contains(const Vec& v) const {
    if (v.size() != ambient_dim()) throw DomainError("contains: ambient mismatch");
    return vec_is_zero(reduce(v));
  }

  /// Coordinates of v in the canonical basis; nullopt if v is not in the subspace.
  std::optional<Vec> coordinates(const Vec& v) const {
    if (!contains(v)) return std::nullopt;
    Vec c(dim());
    for (std::size_t r = 0; r < pivots_.size(); ++r) c[r] = v[pivots_[r]];
    return c;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

 private:
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

/// Row space of m in canonical form.
inline Subspace canonical_basis(const Matrix& m) { return Subspace::span(m); }

/// Right null space {x : m x^T = 0}, i.e. vectors annihilated by every row of m.
inline Subspace kernel(const Matrix& m) {
  const Field& f = m.field();
  Rref r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<Vec> gens;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v(m.cols());
    v[free] = f.one();
    for (std::size_t row = 0; row < r.pivots.size(); ++row) {
      const Elem& e = r.reduced(row, free);
      if (!e.is_zero()) v[r.pivots[row]] = f.neg(e);
    }
    gens.push_back(std::move(v));
  }
  return Subspace::span(Matrix::from_rows(f, gens, m.cols()));
}

/// {v : v * m = 0}
inline Subspace left_kernel(const Matrix& m) { return kernel(transpose(m)); }

/// Image of the map v -> v * m.
inline Subspace image(const Matrix& m) { return Subspace::span(m); }

/// Image of a subspace under v -> v * m.
inline Subspace image_of(const Subspace& s, const Matrix& m) { return Subspace::span(s.basis() * m); }

struct SubspaceOps {
  Subspace sum;
  Subspace intersection;
  bool contains = false;  // b is contained in a
};

inline Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DomainError("subspace sum: ambient mismatch");
  return Subspace::span(vstack(a.basis(), b.basis()));
}

inline Subspace subspace_intersection(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DomainError("subspace intersection: ambient mismatch");
  // annihilator of (ann a + ann b)
  Subspace ann_a = kernel(a.basis());
  Subspace ann_b = kernel(b.basis());
  if (a.dim() == 0 || b.dim() == 0) return Subspace::zero(a.field(), a.ambient_dim());
  return kernel(vstack(ann_a.basis(), ann_b.basis()));
}

inline bool subspace_contains(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DomainError("subspace contains: ambient mismatch");
  for (std::size_t r = 0; r < b.dim(); ++r)
    if (!a.contains(b.basis().row(r))) return false;
  return true;
}

inline SubspaceOps subspace_ops(const Subspace& a, const Subspace& b) {
  require_same_field(a.field(), b.field(), "subspace_ops");
  return {subspace_sum(a, b), subspace_intersection(a, b), subspace_contains(a, b)};
}

/// Row-major indexing of basis pairs of u (x) v.
struct TensorIndex {
  std::size_t u = 0;
  std::size_t v = 0;

  std::size_t dim() const { return u * v; }
  std::size_t operator()(std::size_t i, std::size_t j) const { return i * v + j; }
  std::pair<std::size_t, std::size_t> split(std::size_t k) const { return {k / v, k % v}; }
};

inline TensorIndex tensor_space(std::size_t u, std::size_t v) { return {u, v}; }

/// Quotient of k^ambient by a relation subspace.
///
/// Row convention: `project` is ambient x dim and sends v to its quotient
/// coordinates v * project; `section` is dim x ambient and lifts quotient
/// coordinates onto the coordinate complement of the relation pivots, so
/// section * project is the identity.
struct Quotient {
  std::size_t dim = 0;
  Matrix project;
  Matrix section;
  std::vector<std::size_t> complement;  // ambient coordinates kept by the section
};

inline Quotient quotient_space(std::size_t ambient, const Subspace& rels) {
  if (rels.ambient_dim() != ambient) throw DomainError("quotient_space: relations live in a different ambient");
  const Field& f = rels.field();
  std::vector<long> slot(ambient, -1);
  for (std::size_t r = 0; r < rels.pivots().size(); ++r) slot[rels.pivots()[r]] = -2 - static_cast<long>(r);
  Quotient q;
  for (std::size_t c = 0; c < ambient; ++c)
    if (slot[c] == -1) {
      slot[c] = static_cast<long>(q.complement.size());
      q.complement.push_back(c);
    }
  q.dim = q.complement.size();
  q.project = Matrix(f, ambient, q.dim);
  q.section = Matrix(f, q.dim, ambient);
  for (std::size_t i = 0; i < q.dim; ++i) q.section(i, q.complement[i]) = f.one();
  for (std::size_t c = 0; c < ambient; ++c) {
    if (slot[c] >= 0) {
      q.project(c, static_cast<std::size_t>(slot[c])) = f.one();
    } else {
      // e_c = rels_row + (e_c - rels_row); the remainder lives on the complement.
      const std::size_t r = static_cast<std::size_t>(-2 - slot[c]);
      for (std::size_t i = 0; i < q.dim; ++i) {
        const Elem& e = rels.basis()(r, q.complement[i]);
        if (!e.is_zero()) q.project(c, i) = f.neg(e);
      }
    }
  }
  return q;
}

/// Some X with X * a = b (row convention), or nullopt if inconsistent.
inline std::optional<Matrix> solve_left(const Matrix& a, const Matrix& b) {
  require_same_field(a.field(), b.field(), "solve_left");
  if (a.cols() != b.cols()) throw DomainError("solve_left: shape mismatch");
  const Field& f = a.field();
  // X a = b  <=>  a^T X^T = b^T ; reduce [a^T | b^T]
  Matrix aug = hstack(transpose(a), transpose(b));
  Rref r = rref(aug);
  const std::size_t n = a.rows();
  Matrix x(f, b.rows(), n);
  for (std::size_t row = 0; row < r.pivots.size(); ++row) {
    const std::size_t p = r.pivots[row];
    if (p >= n) return std::nullopt;
    for (std::size_t j = 0; j < b.rows(); ++j) x(j, p) = r.reduced(row, n + j);
  }
  return x;
}

inline std::optional<Vec> solve_left(const Matrix& a, const Vec& b) {
  auto x = solve_left(a, Matrix::row_vector(a.field(), b));
  if (!x) return std::nullopt;
  return x->row(0);
}

inline std::optional<Matrix> inverse(const Matrix& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  if (rank(a) != a.rows()) return std::nullopt;
  return solve_left(a, Matrix::identity(a.field(), a.rows()));
}

inline bool is_invertible(const Matrix& a) { return a.rows() == a.cols() && rank(a) == a.rows(); }

/// Linear equations (one row each, unknowns flattened row-major) expressing
/// A_k X = X B_k for an m x s unknown X.
inline std::vector<Vec> intertwiner_rows(const Field& f, std::size_t m, std::size_t s, const std::vector<Matrix>& as,
                                         const std::vector<Matrix>& bs) {
  std::vector<Vec> rows;
  for (std::size_t k = 0; k < as.size(); ++k) {
    const Matrix& a = as[k];
    const Matrix& b = bs[k];
    for (std::size_t u = 0; u < m; ++u)
      for (std::size_t v = 0; v < s; ++v) {
        Vec r(m * s);
        for (std::size_t w = 0; w < m; ++w)
          if (!a(u, w).is_zero()) r[w * s + v] = f.add(r[w * s + v], a(u, w));
        for (std::size_t w = 0; w < s; ++w)
          if (!b(w, v).is_zero()) r[u * s + w] = f.sub(r[u * s + w], b(w, v));
        if (!vec_is_zero(r)) rows.push_back(std::move(r));
      }
  }
  return rows;
}

/// Solutions X (m x s) of A_k X = X B_k for every k, flattened row-major.
inline Subspace intertwiner_space(const Field& f, std::size_t m, std::size_t s, const std::vector<Matrix>& as,
                                  const std::vector<Matrix>& bs) {
  return kernel(Matrix::from_rows(f, intertwiner_rows(f, m, s, as, bs), m * s));
}

}  // namespace ncp1
