#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncp1/bimodule.hpp"

namespace ncp1 {

/// A dual bimodule together with its realisation as a space of k-linear maps.
///
/// Basis element t of the dual is the map with matrix hom_map(t) (rows x cols,
/// row convention), i.e. row hom.basis().row(t) reshaped row-major.
struct RealizedDual {
  Bimodule module;
  Subspace hom;
  std::size_t rows = 0;
  std::size_t cols = 0;

  Matrix hom_map(std::size_t t) const { return unflatten(hom.field(), hom.basis().row(t), rows, cols); }
  Vec coordinates(const Matrix& map) const {
    auto c = hom.coordinates(flatten(map));
    if (!c) throw ValidationError("map does not lie in the realised dual");
    return *c;
  }
};

namespace detail {

inline Matrix induced_action(const RealizedDual& d, const std::function<Matrix(const Matrix&)>& op) {
  const std::size_t n = d.hom.dim();
  Matrix out(d.hom.field(), n, n);
  for (std::size_t t = 0; t < n; ++t) out.set_row(t, d.coordinates(op(d.hom_map(t))));
  return out;
}

}  // namespace detail

/// N* = Hom_S(N_S, S) with (a.psi.b)(n) = a psi(b n).
inline RealizedDual right_dual_realized(const Bimodule& n) {
  const Field& f = n.field();
  const Algebra& s = n.right_algebra();
  const Algebra& r = n.left_algebra();
  std::vector<Matrix> rs;
  for (std::size_t b = 0; b < s.dim(); ++b) rs.push_back(s.right_mult(s.basis(b)));
  RealizedDual d;
  d.rows = n.dim();
  d.cols = s.dim();
  d.hom = intertwiner_space(f, d.rows, d.cols, n.right_actions(), rs);
  std::vector<Matrix> lam, rho;
  for (std::size_t a = 0; a < s.dim(); ++a) {
    const Matrix la = s.left_mult(s.basis(a));
    lam.push_back(detail::induced_action(d, [&](const Matrix& psi) { return psi * la; }));
  }
  for (std::size_t b = 0; b < r.dim(); ++b)
    rho.push_back(detail::induced_action(d, [&](const Matrix& psi) { return n.left_action(b) * psi; }));
  d.module = Bimodule(s, r, d.hom.dim(), std::move(lam), std::move(rho));
  return d;
}

/// *N = Hom_R(_R N, R) with (a.phi.b)(n) = phi(n a) b.
inline RealizedDual left_dual_realized(const Bimodule& n) {
  const Field& f = n.field();
  const Algebra& s = n.right_algebra();
  const Algebra& r = n.left_algebra();
  std::vector<Matrix> ls;
  for (std::size_t a = 0; a < r.dim(); ++a) ls.push_back(r.left_mult(r.basis(a)));
  RealizedDual d;
  d.rows = n.dim();
  d.cols = r.dim();
  d.hom = intertwiner_space(f, d.rows, d.cols, n.left_actions(), ls);
  std::vector<Matrix> lam, rho;
  for (std::size_t a = 0; a < s.dim(); ++a)
    lam.push_back(detail::induced_action(d, [&](const Matrix& phi) { return n.right_action(a) * phi; }));
  for (std::size_t b = 0; b < r.dim(); ++b) {
    const Matrix rb = r.right_mult(r.basis(b));
    rho.push_back(detail::induced_action(d, [&](const Matrix& phi) { return phi * rb; }));
  }
  d.module = Bimodule(s, r, d.hom.dim(), std::move(lam), std::move(rho));
  return d;
}

inline Bimodule right_dual(const Bimodule& n) { return right_dual_realized(n).module; }
inline Bimodule left_dual(const Bimodule& n) { return left_dual_realized(n).module; }

/// N^{i*}: right duals for i > 0, left duals for i < 0.
inline Bimodule iterated_dual(const Bimodule& n, int i) {
  Bimodule cur = n;
  for (int t = 0; t < i; ++t) cur = right_dual(cur);
  for (int t = 0; t > i; --t) cur = left_dual(cur);
  return cur;
}

/// k-bilinear evaluation pairing between consecutive iterated duals, valued
/// in F_{m+1}: entry(s, t) is the pairing of basis x_s of N^{m*} with basis
/// y_t of N^{(m+1)*}.
struct Pairing {
  Algebra algebra;
  std::size_t left_dim = 0;
  std::size_t right_dim = 0;
  std::vector<Vec> entries;  // s * right_dim + t

  const Vec& entry(std::size_t s, std::size_t t) const { return entries[s * right_dim + t]; }

  Vec evaluate(const Vec& x, const Vec& y) const {
    const Field& f = algebra.field();
    Vec out(algebra.dim());
    for (std::size_t s = 0; s < left_dim; ++s) {
      if (x[s].is_zero()) continue;
      for (std::size_t t = 0; t < right_dim; ++t) {
        if (y[t].is_zero()) continue;
        const Elem c = f.mul(x[s], y[t]);
        const Vec& e = entry(s, t);
        for (std::size_t r = 0; r < e.size(); ++r)
          if (!e[r].is_zero()) f.fma(out[r], c, e[r]);
      }
    }
    return out;
  }
};

/// The iterated duals N^{m*} for m in [lo, hi] (always computed outward from
/// N = N^{0*}) with the evaluation pairings between neighbours.
class DualChain {
 public:
  DualChain(const Bimodule& n, int lo, int hi) : lo_(std::min(lo, 0)), hi_(std::max(hi, 0)) {
    levels_[0] = n;
    for (int m = 1; m <= hi_; ++m) {
      RealizedDual d = right_dual_realized(levels_[m - 1]);
      levels_[m] = d.module;
      realized_[m] = std::move(d);
    }
    for (int m = -1; m >= lo_; --m) {
      RealizedDual d = left_dual_realized(levels_[m + 1]);
      levels_[m] = d.module;
      realized_[m] = std::move(d);
    }
  }

  int lo() const { return lo_; }
  int hi() const { return hi_; }

  const Bimodule& level(int m) const {
    auto it = levels_.find(m);
    if (it == levels_.end()) throw DomainError("dual chain level " + std::to_string(m) + " outside the window");
    return it->second;
  }

  /// Pairing between levels m and m+1.
  Pairing pairing(int m) const {
    const Bimodule& x = level(m);
    const Bimodule& y = level(m + 1);
    Pairing p{x.right_algebra(), x.dim(), y.dim(), {}};
    p.entries.resize(x.dim() * y.dim());
    if (m >= 0) {
      const RealizedDual& d = realized_.at(m + 1);
      for (std::size_t t = 0; t < y.dim(); ++t) {
        const Matrix h = d.hom_map(t);
        for (std::size_t s = 0; s < x.dim(); ++s) p.entries[s * y.dim() + t] = h.row(s);
      }
    } else {
      const RealizedDual& d = realized_.at(m);
      for (std::size_t s = 0; s < x.dim(); ++s) {
        const Matrix g = d.hom_map(s);
        for (std::size_t t = 0; t < y.dim(); ++t) p.entries[s * y.dim() + t] = g.row(t);
      }
    }
    return p;
  }

 private:
  int lo_;
  int hi_;
  std::map<int, Bimodule> levels_;
  std::map<int, RealizedDual> realized_;
};

/// Greedy basis of a module that is free over the algebra on the given side.
/// Accepts v when dim(vF) = dim F and the sum with the accepted part stays
/// direct; tries unit vectors first, then low-height vectors.
inline std::optional<std::vector<Vec>> free_basis(const Bimodule& x, Side side, std::size_t budget = 4000) {
  const Field& f = x.field();
  const Algebra& alg = side == Side::Right ? x.right_algebra() : x.left_algebra();
  const auto& acts = side == Side::Right ? x.right_actions() : x.left_actions();
  const std::size_t n = x.dim();
  if (alg.dim() == 0 || n % alg.dim() != 0) return std::nullopt;
  std::vector<Vec> accepted;
  Subspace span = Subspace::zero(f, n);
  auto try_vec = [&](const Vec& v) {
    if (vec_is_zero(v)) return false;
    std::vector<Vec> orbit;
    for (const auto& m : acts) orbit.push_back(row_times(v, m));
    const Matrix om = Matrix::from_rows(f, orbit, n);
    if (rank(om) != alg.dim()) return false;
    Subspace next = Subspace::span(vstack(span.basis(), om));
    if (next.dim() != span.dim() + alg.dim()) return false;
    accepted.push_back(v);
    span = std::move(next);
    return span.dim() == n;
  };
  if (n == 0) return accepted;
  for (std::size_t i = 0; i < n; ++i)
    if (try_vec(unit_vector(f, n, i))) return accepted;
  if (enumerate_low_height(f, n, budget, try_vec, 3)) return accepted;
  return std::nullopt;
}

/// Right basis {phi_j} of N^{i*} over F_{i+1}, dual left basis {f_j} of
/// N^{(i+1)*} and the dual-of-dual basis {phi'_j} of *(N^{(i+1)*}).
struct DualBasisPair {
  std::vector<Vec> phis;
  std::vector<Vec> fs;
  std::vector<Vec> phiprimes;
};

namespace detail {

// Rows u of the solution X of <b_v, X_u> = delta_uv * 1, where
// gram[t] lists the values of candidate t against every b_v.
inline std::vector<Vec> solve_dual_rows(const Algebra& alg, std::size_t n, const std::vector<Vec>& gram) {
  const Field& f = alg.field();
  const std::size_t cols = n * alg.dim();
  Matrix a = Matrix::from_rows(f, gram, cols);
  Matrix b(f, n, cols);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t r = 0; r < alg.dim(); ++r) b(u, u * alg.dim() + r) = alg.unit()[r];
  auto x = solve_left(a, b);
  if (!x) throw ValidationError("dual basis does not exist: the module is not free on this side");
  std::vector<Vec> out;
  for (std::size_t u = 0; u < n; ++u) out.push_back(x->row(u));
  return out;
}

}  // namespace detail

inline DualBasisPair dual_bases(const DualChain& chain, int i) {
  const Bimodule& x = chain.level(i);
  const Bimodule& y = chain.level(i + 1);
  const Pairing pair = chain.pairing(i);
  const Algebra& fa = x.right_algebra();
  auto phis = free_basis(x, Side::Right);
  if (!phis) throw ValidationError("N^{" + std::to_string(i) + "*} is not free over its right algebra");
  DualBasisPair out;
  out.phis = *phis;
  const std::size_t n = out.phis.size();
  std::vector<Vec> gram;
  for (std::size_t t = 0; t < y.dim(); ++t) {
    Vec row;
    const Vec yt = unit_vector(y.field(), y.dim(), t);
    for (std::size_t v = 0; v < n; ++v) {
      const Vec val = pair.evaluate(out.phis[v], yt);
      row.insert(row.end(), val.begin(), val.end());
    }
    gram.push_back(std::move(row));
  }
  out.fs = detail::solve_dual_rows(fa, n, gram);
  const RealizedDual z = left_dual_realized(y);
  std::vector<Vec> gram2;
  for (std::size_t t = 0; t < z.hom.dim(); ++t) {
    const Matrix g = z.hom_map(t);
    Vec row;
    for (std::size_t v = 0; v < n; ++v) {
      const Vec val = row_times(out.fs[v], g);
      row.insert(row.end(), val.begin(), val.end());
    }
    gram2.push_back(std::move(row));
  }
  out.phiprimes = detail::solve_dual_rows(fa, n, gram2);
  return out;
}

inline DualBasisPair dual_bases(const Bimodule& n, int i) { return dual_bases(DualChain(n, i, i + 1), i); }

/// Images Q_i and Q'_i of the unit maps and the identification T' -> T
/// induced by evaluation N^{i*} -> *(N^{(i+1)*}).
struct UnitImages {
  TensorProduct tensor;        // N^{i*} (x)_{F_{i+1}} N^{(i+1)*}
  TensorProduct tensor_prime;  // *(N^{(i+1)*}) (x)_{F_{i+1}} N^{(i+1)*}
  DualBasisPair bases;
  Vec canonical;               // eta_i(1) in tensor coordinates
  Subspace q;
  Subspace qprime;
  Matrix evaluation;           // N^{i*} -> *(N^{(i+1)*})
  Matrix identification;       // tensor_prime -> tensor
};

namespace detail {

inline Matrix evaluation_map(const Pairing& pair, const RealizedDual& z) {
  const Field& f = z.hom.field();
  Matrix ev(f, pair.left_dim, z.hom.dim());
  for (std::size_t s = 0; s < pair.left_dim; ++s) {
    Matrix phi(f, pair.right_dim, pair.algebra.dim());
    for (std::size_t t = 0; t < pair.right_dim; ++t) phi.set_row(t, pair.entry(s, t));
    ev.set_row(s, z.coordinates(phi));
  }
  return ev;
}

inline Vec canonical_element(const Field& f, const std::vector<Vec>& left, const std::vector<Vec>& right,
                             const Quotient& q) {
  Vec sum(left.empty() ? 0 : left[0].size() * right[0].size());
  for (std::size_t j = 0; j < left.size(); ++j) sum = vec_add(f, sum, kron(f, left[j], right[j]));
  return row_times(sum, q.project);
}

inline Subspace orbit_span(const Vec& c, const std::vector<Matrix>& acts, const Field& f, std::size_t dim) {
  std::vector<Vec> gens;
  for (const auto& m : acts) gens.push_back(row_times(c, m));
  return Subspace::span(Matrix::from_rows(f, gens, dim));
}

}  // namespace detail

inline UnitImages unit_images(const DualChain& chain, int i) {
  const Bimodule& x = chain.level(i);
  const Bimodule& y = chain.level(i + 1);
  const Field& f = x.field();
  UnitImages u;
  u.bases = dual_bases(chain, i);
  u.tensor = tensor_over(x, y);
  u.canonical = detail::canonical_element(f, u.bases.phis, u.bases.fs, u.tensor.quotient);
  u.q = detail::orbit_span(u.canonical, u.tensor.module.left_actions(), f, u.tensor.module.dim());
  const RealizedDual z = left_dual_realized(y);
  u.tensor_prime = tensor_over(z.module, y);
  const Vec cp = detail::canonical_element(f, u.bases.phiprimes, u.bases.fs, u.tensor_prime.quotient);
  u.qprime = detail::orbit_span(cp, u.tensor_prime.module.left_actions(), f, u.tensor_prime.module.dim());
  u.evaluation = detail::evaluation_map(chain.pairing(i), z);
  const Matrix forward = u.tensor.quotient.section * kron(u.evaluation, Matrix::identity(f, y.dim())) *
                         u.tensor_prime.quotient.project;
  auto inv = inverse(forward);
  if (!inv) throw ValidationError("evaluation does not induce an isomorphism of tensor products");
  u.identification = std::move(*inv);
  return u;
}

inline UnitImages unit_images(const Bimodule& n, int i) { return unit_images(DualChain(n, i, i + 1), i); }

struct Verdict {
  bool ok = false;
  std::string reason;
};

/// The evaluation map N^{i*} -> *(N^{(i+1)*}) is a bijective bimodule map.
inline Verdict double_dual_check(const DualChain& chain, int i) {
  const Bimodule& x = chain.level(i);
  const RealizedDual z = left_dual_realized(chain.level(i + 1));
  if (x.left_algebra() != z.module.left_algebra() || x.right_algebra() != z.module.right_algebra())
    return {false, "end algebras differ"};
  const Matrix ev = detail::evaluation_map(chain.pairing(i), z);
  if (!is_invertible(ev)) return {false, "evaluation map is not bijective"};
  for (std::size_t a = 0; a < x.left_algebra().dim(); ++a)
    if (x.left_action(a) * ev != ev * z.module.left_action(a))
      return {false, "evaluation map does not commute with left basis element " + std::to_string(a)};
  for (std::size_t b = 0; b < x.right_algebra().dim(); ++b)
    if (x.right_action(b) * ev != ev * z.module.right_action(b))
      return {false, "evaluation map does not commute with right basis element " + std::to_string(b)};
  return {true, "bijective bimodule map"};
}

inline Verdict double_dual_check(const Bimodule& n, int i) { return double_dual_check(DualChain(n, i, i + 1), i); }

/// Admissibility over [lo, hi]: certified outright when both ends are
/// division algebras, otherwise every N^{m*} in the window must be free on
/// both sides.
inline Verdict is_admissible(const Bimodule& n, int lo, int hi) {
  const auto dl = is_division_algebra(n.left_algebra());
  const auto dr = is_division_algebra(n.right_algebra());
  if (dl == std::optional<bool>(true) && dr == std::optional<bool>(true)) return {true, "division bases"};
  const DualChain chain(n, lo, hi);
  for (int m = lo; m <= hi; ++m) {
    const Bimodule& x = chain.level(m);
    if (!free_basis(x, Side::Left)) return {false, "N^{" + std::to_string(m) + "*} is not free on the left"};
    if (!free_basis(x, Side::Right)) return {false, "N^{" + std::to_string(m) + "*} is not free on the right"};
  }
  return {true, "free on both sides in window [" + std::to_string(lo) + "," + std::to_string(hi) + "]"};
}

}  // namespace ncp1
