#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ncp1/field.hpp"

namespace ncp1 {

/// Row vector of field elements.
using Vec = std::vector<Elem>;

/// Dense matrix over a Field.
///
/// Linear maps are stored in row convention throughout the library:
/// a map f: k^n -> k^m is an n x m matrix F with f(v) = v * F.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Field f, std::size_t rows, std::size_t cols)
      : field_(std::move(f)), rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(const Field& f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
    return m;
  }

  static Matrix from_rows(const Field& f, const std::vector<Vec>& rows, std::size_t cols) {
    Matrix m(f, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) throw DomainError("from_rows: ragged rows");
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
  }

  static Matrix from_ints(const Field& f, const std::vector<std::vector<long>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    Matrix m(f, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = f.from_int(rows[r].at(c));
    return m;
  }

  static Matrix row_vector(const Field& f, const Vec& v) {
    Matrix m(f, 1, v.size());
    for (std::size_t c = 0; c < v.size(); ++c) m(0, c) = v[c];
    return m;
  }

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Elem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Elem& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vec row(std::size_t r) const { return Vec(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_); }
  void set_row(std::size_t r, const Vec& v) {
    for (std::size_t c = 0; c < cols_; ++c) data_[r * cols_ + c] = v[c];
  }

  bool is_zero() const {
    for (const auto& e : data_)
      if (!e.is_zero()) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  /// Same entries, reinterpreted over an extension field.
  Matrix over(const Field& f) const {
    Matrix m = *this;
    m.field_ = f;
    return m;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t r = 0; r < rows_; ++r) {
      s += "[";
      for (std::size_t c = 0; c < cols_; ++c) s += (c ? " " : "") + field_.format((*this)(r, c));
      s += "]\n";
    }
    return s;
  }

 private:
  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

inline Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_field(a.field(), b.field(), "matrix product");
  if (a.cols() != b.rows()) throw DomainError("matrix product: shape mismatch");
  const Field& f = a.field();
  Matrix out(f, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Elem& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const Elem& y = b(k, j);
        if (y.is_zero()) continue;
        f.fma(out(i, j), x, y);
      }
    }
  return out;
}

inline Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_field(a.field(), b.field(), "matrix sum");
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DomainError("matrix sum: shape mismatch");
  Matrix out(a.field(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a.field().add(a(i, j), b(i, j));
  return out;
}

inline Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_field(a.field(), b.field(), "matrix difference");
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DomainError("matrix difference: shape mismatch");
  Matrix out(a.field(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a.field().sub(a(i, j), b(i, j));
  return out;
}

inline Matrix scale(const Elem& s, const Matrix& a) {
  Matrix out(a.field(), a.rows(), a.cols());
  if (s.is_zero()) return out;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero()) out(i, j) = a.field().mul(s, a(i, j));
  return out;
}

inline Matrix transpose(const Matrix& a) {
  Matrix out(a.field(), a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

inline Matrix vstack(const Matrix& a, const Matrix& b) {
  require_same_field(a.field(), b.field(), "vstack");
  if (a.cols() != b.cols()) throw DomainError("vstack: column mismatch");
  Matrix out(a.field(), a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, j) = b(i, j);
  return out;
}

inline Matrix hstack(const Matrix& a, const Matrix& b) {
  require_same_field(a.field(), b.field(), "hstack");
  if (a.rows() != b.rows()) throw DomainError("hstack: row mismatch");
  Matrix out(a.field(), a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

/// Kronecker product; row (i*b.rows()+k), column (j*b.cols()+l).
inline Matrix kron(const Matrix& a, const Matrix& b) {
  require_same_field(a.field(), b.field(), "kron");
  const Field& f = a.field();
  Matrix out(f, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Elem& x = a(i, j);
      if (x.is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) {
          const Elem& y = b(k, l);
          if (y.is_zero()) continue;
          out(i * b.rows() + k, j * b.cols() + l) = f.mul(x, y);
        }
    }
  return out;
}

inline Vec kron(const Field& f, const Vec& x, const Vec& y) {
  Vec out(x.size() * y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (!y[j].is_zero()) out[i * y.size() + j] = f.mul(x[i], y[j]);
  }
  return out;
}

/// v * M for a row vector v.
inline Vec row_times(const Vec& v, const Matrix& m) {
  if (v.size() != m.rows()) throw DomainError("row_times: shape mismatch");
  const Field& f = m.field();
  Vec out(m.cols());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k].is_zero()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Elem& y = m(k, j);
      if (!y.is_zero()) f.fma(out[j], v[k], y);
    }
  }
  return out;
}

inline Vec vec_add(const Field& f, const Vec& x, const Vec& y) {
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = f.add(x[i], y[i]);
  return out;
}

inline Vec vec_sub(const Field& f, const Vec& x, const Vec& y) {
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = f.sub(x[i], y[i]);
  return out;
}

inline Vec vec_scale(const Field& f, const Elem& s, const Vec& x) {
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) out[i] = f.mul(s, x[i]);
  return out;
}

inline bool vec_is_zero(const Vec& v) {
  for (const auto& e : v)
    if (!e.is_zero()) return false;
  return true;
}

inline Vec unit_vector(const Field& f, std::size_t n, std::size_t i) {
  Vec v(n);
  v[i] = f.one();
  return v;
}

/// Row-major flattening of a matrix into a vector.
inline Vec flatten(const Matrix& m) {
  Vec out;
  out.reserve(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
  return out;
}

inline Matrix unflatten(const Field& f, const Vec& v, std::size_t rows, std::size_t cols) {
  if (v.size() != rows * cols) throw DomainError("unflatten: size mismatch");
  Matrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = v[i * cols + j];
  return m;
}

}  // namespace ncp1
