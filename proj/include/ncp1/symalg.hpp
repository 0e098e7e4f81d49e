#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ncp1/duality.hpp"
#include "ncp1/zalgebra.hpp"

namespace ncp1 {

/// The truncated noncommutative symmetric algebra of N together with the
/// data of its presentation: A_ij = T_ij / R_ij where T_ij is the tensor
/// product of the duals N^{i*} ... N^{(j-1)*} over the diagonal algebras.
struct SymConstruction {
  TruncatedZAlgebra algebra;
  std::map<TruncatedZAlgebra::Index2, std::size_t> tensor_dims;
  std::map<TruncatedZAlgebra::Index2, Subspace> relations;  // R_ij inside T_ij, j >= i+2
  std::map<TruncatedZAlgebra::Index2, Quotient> quotients;   // T_ij -> A_ij, j >= i+2
  std::map<int, Subspace> unit_images;                       // Q_i inside T_{i,i+2}
  std::map<TruncatedZAlgebra::Index3, Matrix> concatenation; // T_im (x)_k T_mj -> T_ij
};

/// Sym(N) on the window [lo, hi]. Throws DomainError for degenerate shapes,
/// ValidationError when N is not admissible on the window, and ResourceGuard
/// when a tensor product exceeds max_tensor_dim().
inline SymConstruction sym_algebra(const Bimodule& n, int lo, int hi) {
  using I2 = TruncatedZAlgebra::Index2;
  if (hi < lo) throw DomainError("sym_algebra: empty window");
  if (n.dim() == 0) throw DomainError("shape guard: N is zero");
  {
    const DimensionPair p = dimension_pair(n);
    if (p.left && p.right && *p.left * *p.right <= 1)
      throw DomainError("shape guard: N has shape " + p.to_string() + ", Sym(N) is degenerate");
  }
  const int top = std::max(hi - 1, lo);
  {
    const Verdict adm = is_admissible(n, lo, top);
    if (!adm.ok) throw ValidationError("sym_algebra: N is not admissible: " + adm.reason);
  }
  const Field& f = n.field();
  const DualChain chain(n, lo, top);

  SymConstruction out;
  std::vector<Algebra> diag;
  for (int i = lo; i < hi; ++i) diag.push_back(chain.level(i).left_algebra());
  diag.push_back(hi > lo ? chain.level(hi - 1).right_algebra() : chain.level(lo).left_algebra());
  auto F = [&](int i) -> const Algebra& { return diag[static_cast<std::size_t>(i - lo)]; };

  std::map<I2, TensorProduct> tensor;  // j >= i+2
  std::map<I2, Bimodule> tmod;         // j >= i+1
  std::map<I2, Subspace> lpart;        // Q_i (x) T_{i+2,j} inside T_ij
  std::map<I2, std::size_t> adim;
  auto& cat = out.concatenation;

  for (int i = lo; i <= hi; ++i) adim[{i, i}] = F(i).dim();
  for (int i = lo; i < hi; ++i) {
    tmod.emplace(I2{i, i + 1}, chain.level(i));
    out.tensor_dims[{i, i + 1}] = chain.level(i).dim();
    adim[{i, i + 1}] = chain.level(i).dim();
  }
  for (int d = 2; d <= hi - lo; ++d)
    for (int i = lo; i + d <= hi; ++i) {
      const int j = i + d;
      const Bimodule& last = tmod.at({j - 1, j});
      std::optional<UnitImages> u;
      if (d == 2) u = ncp1::unit_images(chain, i);
      TensorProduct t = u ? u->tensor : tensor_over(tmod.at({i, j - 1}), last);
      const std::size_t tij = t.module.dim();
      out.tensor_dims[{i, j}] = tij;
      const std::size_t a = last.dim();
      cat[{i, j - 1, j}] = t.quotient.project;
      for (int m = i + 1; m <= j - 2; ++m) {
        const std::size_t tim = tmod.at({i, m}).dim();
        const Matrix& sec = tensor.at({m, j}).quotient.section;
        cat[{i, m, j}] = kron(Matrix::identity(f, tim), sec) * kron(cat.at({i, m, j - 1}), Matrix::identity(f, a)) *
                         t.quotient.project;
      }
      Subspace rel = Subspace::zero(f, tij);
      if (d == 2) {
        out.unit_images.emplace(i, u->q);
        lpart.emplace(I2{i, j}, u->q);
        rel = u->q;
      } else {
        const Subspace& q = out.unit_images.at(i);
        const std::size_t trest = tmod.at({i + 2, j}).dim();
        const Subspace l =
            Subspace::span(kron(q.basis(), Matrix::identity(f, trest)) * cat.at({i, i + 2, j}));
        lpart.emplace(I2{i, j}, l);
        rel = l;
        for (int m = i + 1; m <= j - 2; ++m) {
          const std::size_t tim = tmod.at({i, m}).dim();
          const Subspace part =
              Subspace::span(kron(Matrix::identity(f, tim), lpart.at({m, j}).basis()) * cat.at({i, m, j}));
          rel = subspace_sum(rel, part);
        }
      }
      Quotient quo = quotient_space(tij, rel);
      adim[{i, j}] = quo.dim;
      out.relations.emplace(I2{i, j}, std::move(rel));
      out.quotients.emplace(I2{i, j}, std::move(quo));
      tmod.emplace(I2{i, j}, t.module);
      tensor.emplace(I2{i, j}, std::move(t));
    }

  // sigma: A_ij -> T_ij and pi: T_ij -> A_ij (identity in width one)
  auto sigma = [&](int i, int j) -> Matrix {
    if (j - i >= 2) return out.quotients.at({i, j}).section;
    return Matrix::identity(f, adim.at({i, j}));
  };
  auto pi = [&](int i, int j) -> Matrix {
    if (j - i >= 2) return out.quotients.at({i, j}).project;
    return Matrix::identity(f, adim.at({i, j}));
  };

  std::map<TruncatedZAlgebra::Index3, Matrix> mult;
  for (int i = lo; i <= hi; ++i)
    for (int j = i; j <= hi; ++j)
      for (int k = j; k <= hi; ++k) {
        if (i == j && j == k) {
          const Algebra& alg = F(i);
          Matrix m(f, alg.dim() * alg.dim(), alg.dim());
          for (std::size_t x = 0; x < alg.dim(); ++x)
            for (std::size_t y = 0; y < alg.dim(); ++y)
              m.set_row(x * alg.dim() + y, alg.multiply(alg.basis(x), alg.basis(y)));
          mult[{i, j, k}] = std::move(m);
        } else if (i == j) {
          const Bimodule& t = tmod.at({i, k});
          const std::size_t da = F(i).dim(), dk = adim.at({i, k});
          const Matrix s = sigma(i, k), p = pi(i, k);
          Matrix m(f, da * dk, dk);
          for (std::size_t x = 0; x < da; ++x) {
            const Matrix act = s * t.left_action(x) * p;
            for (std::size_t y = 0; y < dk; ++y) m.set_row(x * dk + y, act.row(y));
          }
          mult[{i, j, k}] = std::move(m);
        } else if (j == k) {
          const Bimodule& t = tmod.at({i, j});
          const std::size_t db = F(j).dim(), dk = adim.at({i, j});
          const Matrix s = sigma(i, j), p = pi(i, j);
          Matrix m(f, dk * db, dk);
          for (std::size_t y = 0; y < db; ++y) {
            const Matrix act = s * t.right_action(y) * p;
            for (std::size_t x = 0; x < dk; ++x) m.set_row(x * db + y, act.row(x));
          }
          mult[{i, j, k}] = std::move(m);
        } else {
          mult[{i, j, k}] = kron(sigma(i, j), sigma(j, k)) * cat.at({i, j, k}) * pi(i, k);
        }
      }

  out.algebra = TruncatedZAlgebra(lo, hi, std::move(diag), std::move(adim), std::move(mult));
  const AxiomReport rep = check_axioms(out.algebra);
  if (!rep.ok) throw ValidationError("sym_algebra: constructed Z-algebra fails its axioms: " + rep.failure);
  return out;
}

struct ShiftDualReport {
  HilbertTable shifted;   // Sym(N) on [lo+1, hi+1], shifted by 1
  HilbertTable dual;      // Sym(N^*) on [lo, hi]
  bool tables_equal = false;
  ZIsomorphism witness;
};

/// Compares Sym(N)(1) with Sym(N^*) on [lo, hi].
inline ShiftDualReport shift_dual_check(const Bimodule& n, int lo, int hi) {
  const TruncatedZAlgebra a = shift(sym_algebra(n, lo + 1, hi + 1).algebra, 1);
  const TruncatedZAlgebra b = sym_algebra(right_dual(n), lo, hi).algebra;
  ShiftDualReport r;
  r.shifted = hilbert_table(a);
  r.dual = hilbert_table(b);
  r.tables_equal = r.shifted == r.dual;
  r.witness = zalgebra_isomorphism(a, b);
  return r;
}

}  // namespace ncp1
