#pragma once

// Independent reference computations used by the tests and the acceptance
// runner. They share only the exact linear algebra kernel with the library.

#include <cstddef>
#include <map>
#include <vector>

#include "ncp1/duality.hpp"
#include "ncp1/linalg.hpp"

namespace oracle {

using namespace ncp1;

// Relations x.a (x) y - x (x) a.y in X (x)_k Y, one family per basis element a.
inline Matrix balancing_rows(const Bimodule& x, const Bimodule& y) {
  const Field& f = x.field();
  const std::size_t dx = x.dim(), dy = y.dim();
  std::vector<Vec> rows;
  for (std::size_t a = 0; a < x.right_algebra().dim(); ++a)
    for (std::size_t s = 0; s < dx; ++s)
      for (std::size_t t = 0; t < dy; ++t) {
        Vec v = kron(f, x.right_action(a).row(s), unit_vector(f, dy, t));
        v = vec_sub(f, v, kron(f, unit_vector(f, dx, s), y.left_action(a).row(t)));
        if (!vec_is_zero(v)) rows.push_back(v);
      }
  return Matrix::from_rows(f, rows, dx * dy);
}

// dim_k of span{Lambda_a}: the dimension of the unit image inside X (x) X^*.
inline std::size_t unit_image_rank(const Bimodule& x) {
  std::vector<Vec> rows;
  for (const auto& m : x.left_actions()) rows.push_back(flatten(m));
  return rank(Matrix::from_rows(x.field(), rows, x.dim() * x.dim()));
}

// Z = Theta^{-1}(span{Lambda_a}) inside X (x)_k X^*, where
// Theta(x (x) psi) is the endomorphism v |-> x . psi(v) of X.
inline Subspace theta_preimage(const Bimodule& x, const RealizedDual& dual) {
  const Field& f = x.field();
  const std::size_t dx = x.dim(), dy = dual.module.dim();
  Matrix theta(f, dx * dy, dx * dx);
  for (std::size_t t = 0; t < dy; ++t) {
    const Matrix h = dual.hom_map(t);  // row u = psi_t(e_u) in F
    for (std::size_t s = 0; s < dx; ++s) {
      Matrix img(f, dx, dx);
      for (std::size_t u = 0; u < dx; ++u) img.set_row(u, x.right_action_of(h.row(u)).row(s));
      theta.set_row(s * dy + t, flatten(img));
    }
  }
  std::vector<Vec> lam;
  for (const auto& m : x.left_actions()) lam.push_back(flatten(m));
  const Subspace target = Subspace::span(Matrix::from_rows(f, lam, dx * dx));
  const Subspace annihilator = kernel(target.basis());
  if (annihilator.dim() == 0) return Subspace::full(f, dx * dy);
  return left_kernel(theta * transpose(annihilator.basis()));
}

/// dim_k A_ij for lo <= i <= j <= hi (lo >= 0), computed as the full k-tensor
/// power K_ij = X_i (x)_k ... (x)_k X_{j-1} modulo balancing relations at
/// every junction and the preimages Z_m placed at every position.
inline std::map<std::pair<int, int>, std::size_t> hilbert_dims(const Bimodule& n, int lo, int hi) {
  if (lo < 0) throw DomainError("oracle handles nonnegative windows only");
  const Field& f = n.field();
  std::map<int, Bimodule> x;
  std::map<int, RealizedDual> dual;
  x.emplace(0, n);
  for (int m = 1; m <= hi; ++m) {
    RealizedDual d = right_dual_realized(x.at(m - 1));
    x.emplace(m, d.module);
    dual.emplace(m, std::move(d));
  }
  std::map<std::pair<int, int>, std::size_t> out;
  for (int i = lo; i <= hi; ++i) out[{i, i}] = x.at(i).left_algebra().dim();
  auto kdim = [&](int i, int j) {
    std::size_t d = 1;
    for (int m = i; m < j; ++m) d *= x.at(m).dim();
    return d;
  };
  std::map<int, Matrix> bal;   // at junction m: X_{m-1} (x) X_m
  std::map<int, Subspace> z;   // at m: X_m (x) X_{m+1}
  for (int m = lo + 1; m < hi; ++m) bal.emplace(m, balancing_rows(x.at(m - 1), x.at(m)));
  for (int m = lo; m + 1 < hi; ++m) z.emplace(m, theta_preimage(x.at(m), dual.at(m + 1)));
  for (int i = lo; i < hi; ++i) {
    out[{i, i + 1}] = x.at(i).dim();
    for (int j = i + 2; j <= hi; ++j) {
      const std::size_t total = kdim(i, j);
      std::vector<Matrix> blocks;
      for (int m = i + 1; m < j; ++m)
        blocks.push_back(kron(kron(Matrix::identity(f, kdim(i, m - 1)), bal.at(m)), Matrix::identity(f, kdim(m + 1, j))));
      for (int m = i; m + 2 <= j; ++m)
        blocks.push_back(
            kron(kron(Matrix::identity(f, kdim(i, m)), z.at(m).basis()), Matrix::identity(f, kdim(m + 2, j))));
      Matrix all(f, 0, total);
      for (const auto& b : blocks) all = vstack(all, b);
      out[{i, j}] = total - rank(all);
    }
  }
  return out;
}

/// Binomial reference for k^2: dim A_{i,i+n} = n + 1.
inline std::size_t projective_line(int n) { return static_cast<std::size_t>(n + 1); }

}  // namespace oracle
