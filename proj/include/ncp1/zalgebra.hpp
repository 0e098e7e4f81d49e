#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ncp1/algebra.hpp"
#include "ncp1/witt/quaternion_iso.hpp"

namespace ncp1 {

/// Truncation of a Z-algebra to the window [lo, hi]: components A_ij for
/// lo <= i <= j <= hi, diagonal algebras A_ii, and multiplication matrices
/// mu(i,j,k) of shape (dim A_ij * dim A_jk) x dim A_ik acting on
/// kron(x, y) row vectors.
class TruncatedZAlgebra {
 public:
  using Index2 = std::pair<int, int>;
  using Index3 = std::tuple<int, int, int>;

  TruncatedZAlgebra() = default;
  TruncatedZAlgebra(int lo, int hi, std::vector<Algebra> diagonal, std::map<Index2, std::size_t> dims,
                    std::map<Index3, Matrix> mult)
      : lo_(lo), hi_(hi), diag_(std::move(diagonal)), dims_(std::move(dims)), mult_(std::move(mult)) {
    if (hi < lo) throw DomainError("empty Z-algebra window");
    if (diag_.size() != static_cast<std::size_t>(hi - lo + 1)) throw DomainError("diagonal list does not fit window");
  }

  int lo() const { return lo_; }
  int hi() const { return hi_; }
  int width() const { return hi_ - lo_ + 1; }
  const Field& field() const { return diag_.front().field(); }
  bool in_window(int i) const { return lo_ <= i && i <= hi_; }

  const Algebra& diagonal(int i) const {
    check(i);
    return diag_[static_cast<std::size_t>(i - lo_)];
  }
  const std::vector<Algebra>& diagonals() const { return diag_; }

  std::size_t dim(int i, int j) const {
    check(i);
    check(j);
    if (i > j) return 0;
    return dims_.at({i, j});
  }

  const Matrix& mult(int i, int j, int k) const {
    check(i);
    check(j);
    check(k);
    if (!(i <= j && j <= k)) throw DomainError("mult: indices must satisfy i <= j <= k");
    return mult_.at({i, j, k});
  }

  const std::map<Index2, std::size_t>& dims() const { return dims_; }
  const std::map<Index3, Matrix>& mults() const { return mult_; }

  /// x in A_ij times y in A_lk; zero when j != l.
  Vec multiply(int i, int j, const Vec& x, int l, int k, const Vec& y) const {
    check(i);
    check(j);
    check(l);
    check(k);
    if (x.size() != dim(i, j) || y.size() != dim(l, k)) throw DomainError("multiply: element length mismatch");
    if (j != l || i > j || l > k) return Vec(i <= k ? dim(i, k) : 0);
    return row_times(kron(field(), x, y), mult(i, j, k));
  }

  Vec unit(int i) const { return diagonal(i).unit(); }

  friend bool operator==(const TruncatedZAlgebra& a, const TruncatedZAlgebra& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_ && a.diag_ == b.diag_ && a.dims_ == b.dims_ && a.mult_ == b.mult_;
  }

 private:
  void check(int i) const {
    if (!in_window(i))
      throw DomainError("index " + std::to_string(i) + " outside window [" + std::to_string(lo_) + "," +
                        std::to_string(hi_) + "]");
  }

  int lo_ = 0;
  int hi_ = -1;
  std::vector<Algebra> diag_;
  std::map<Index2, std::size_t> dims_;
  std::map<Index3, Matrix> mult_;
};

struct AxiomReport {
  bool ok = true;
  std::string failure;
  std::size_t checks = 0;
};

/// Grading and shapes, local units, and associativity on every composable
/// basis triple of the window.
inline AxiomReport check_axioms(const TruncatedZAlgebra& z) {
  AxiomReport rep;
  const Field& f = z.field();
  auto fail = [&](std::string msg) {
    rep.ok = false;
    rep.failure = std::move(msg);
    return rep;
  };
  auto tag3 = [](int i, int j, int k) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
  };
  for (int i = z.lo(); i <= z.hi(); ++i) {
    if (z.dim(i, i) != z.diagonal(i).dim()) return fail("diagonal dimension mismatch at " + std::to_string(i));
    for (int j = i; j <= z.hi(); ++j)
      for (int k = j; k <= z.hi(); ++k) {
        const Matrix& m = z.mult(i, j, k);
        if (m.rows() != z.dim(i, j) * z.dim(j, k) || m.cols() != z.dim(i, k))
          return fail("multiplication " + tag3(i, j, k) + " has the wrong shape");
        ++rep.checks;
      }
    const Algebra& a = z.diagonal(i);
    for (std::size_t x = 0; x < a.dim(); ++x)
      for (std::size_t y = 0; y < a.dim(); ++y)
        if (z.multiply(i, i, a.basis(x), i, i, a.basis(y)) != a.multiply(a.basis(x), a.basis(y)))
          return fail("diagonal multiplication differs from the algebra at " + std::to_string(i));
  }
  for (int i = z.lo(); i <= z.hi(); ++i)
    for (int j = i; j <= z.hi(); ++j)
      for (std::size_t x = 0; x < z.dim(i, j); ++x) {
        const Vec e = unit_vector(f, z.dim(i, j), x);
        if (z.multiply(i, i, z.unit(i), i, j, e) != e)
          return fail("left local unit fails on basis " + std::to_string(x) + " of A_" + std::to_string(i) + "," +
                      std::to_string(j));
        if (z.multiply(i, j, e, j, j, z.unit(j)) != e)
          return fail("right local unit fails on basis " + std::to_string(x) + " of A_" + std::to_string(i) + "," +
                      std::to_string(j));
        ++rep.checks;
      }
  for (int i = z.lo(); i <= z.hi(); ++i)
    for (int j = i; j <= z.hi(); ++j)
      for (int k = j; k <= z.hi(); ++k)
        for (int l = k; l <= z.hi(); ++l) {
          const std::size_t dij = z.dim(i, j), djk = z.dim(j, k), dkl = z.dim(k, l);
          const Matrix lhs = kron(z.mult(i, j, k), Matrix::identity(f, dkl)) * z.mult(i, k, l);
          const Matrix rhs = kron(Matrix::identity(f, dij), z.mult(j, k, l)) * z.mult(i, j, l);
          rep.checks += dij * djk * dkl;
          if (lhs == rhs) continue;
          for (std::size_t r = 0; r < lhs.rows(); ++r)
            if (lhs.row(r) != rhs.row(r)) {
              const std::size_t x = r / (djk * dkl), y = (r / dkl) % djk, w = r % dkl;
              return fail("associativity fails for indices (" + std::to_string(i) + "," + std::to_string(j) + "," +
                          std::to_string(k) + "," + std::to_string(l) + ") on basis triple (" + std::to_string(x) +
                          "," + std::to_string(y) + "," + std::to_string(w) + ")");
            }
        }
  return rep;
}

/// A(s)_{jk} = A_{s+j, s+k}; the window moves to [lo - s, hi - s].
inline TruncatedZAlgebra shift(const TruncatedZAlgebra& z, int s) {
  if (s == 0) return z;
  std::vector<Algebra> diag = z.diagonals();
  std::map<TruncatedZAlgebra::Index2, std::size_t> dims;
  std::map<TruncatedZAlgebra::Index3, Matrix> mult;
  for (const auto& [k, v] : z.dims()) dims[{k.first - s, k.second - s}] = v;
  for (const auto& [k, v] : z.mults()) mult[{std::get<0>(k) - s, std::get<1>(k) - s, std::get<2>(k) - s}] = v;
  return TruncatedZAlgebra(z.lo() - s, z.hi() - s, std::move(diag), std::move(dims), std::move(mult));
}

/// The sub-window [lo, hi].
inline TruncatedZAlgebra restrict_window(const TruncatedZAlgebra& z, int lo, int hi) {
  if (lo < z.lo() || hi > z.hi() || hi < lo) throw DomainError("restrict_window: sub-window outside the window");
  std::vector<Algebra> diag;
  for (int i = lo; i <= hi; ++i) diag.push_back(z.diagonal(i));
  std::map<TruncatedZAlgebra::Index2, std::size_t> dims;
  std::map<TruncatedZAlgebra::Index3, Matrix> mult;
  for (int i = lo; i <= hi; ++i)
    for (int j = i; j <= hi; ++j) {
      dims[{i, j}] = z.dim(i, j);
      for (int k = j; k <= hi; ++k) mult[{i, j, k}] = z.mult(i, j, k);
    }
  return TruncatedZAlgebra(lo, hi, std::move(diag), std::move(dims), std::move(mult));
}

/// The even components A_{2i,2j}, reindexed by i.
inline TruncatedZAlgebra veronese2(const TruncatedZAlgebra& z) {
  auto even_ceil = [](int x) { return x % 2 == 0 ? x : x + 1; };
  const int e0 = even_ceil(z.lo());
  if (e0 > z.hi()) throw DomainError("veronese2: the window contains no even index");
  const int lo = e0 / 2;
  const int hi = (z.hi() % 2 == 0 ? z.hi() : z.hi() - 1) / 2;
  std::vector<Algebra> diag;
  for (int i = lo; i <= hi; ++i) diag.push_back(z.diagonal(2 * i));
  std::map<TruncatedZAlgebra::Index2, std::size_t> dims;
  std::map<TruncatedZAlgebra::Index3, Matrix> mult;
  for (int i = lo; i <= hi; ++i)
    for (int j = i; j <= hi; ++j) {
      dims[{i, j}] = z.dim(2 * i, 2 * j);
      for (int k = j; k <= hi; ++k) mult[{i, j, k}] = z.mult(2 * i, 2 * j, 2 * k);
    }
  return TruncatedZAlgebra(lo, hi, std::move(diag), std::move(dims), std::move(mult));
}

/// dim_k A_ij over the window (zero for i > j), with dimensions over the
/// diagonal algebras where those are certified division algebras.
struct HilbertTable {
  int lo = 0;
  int hi = -1;
  std::vector<std::size_t> entries;                 // (i-lo)*width + (j-lo)
  std::vector<std::optional<std::size_t>> left;     // over A_ii
  std::vector<std::optional<std::size_t>> right;    // over A_jj

  int width() const { return hi - lo + 1; }
  std::size_t at(int i, int j) const {
    return entries.at(static_cast<std::size_t>((i - lo) * width() + (j - lo)));
  }

  std::string to_tsv() const {
    std::string s = "i\\j";
    for (int j = lo; j <= hi; ++j) s += "\t" + std::to_string(j);
    s += "\n";
    for (int i = lo; i <= hi; ++i) {
      s += std::to_string(i);
      for (int j = lo; j <= hi; ++j) s += "\t" + std::to_string(at(i, j));
      s += "\n";
    }
    return s;
  }

  friend bool operator==(const HilbertTable& a, const HilbertTable& b) {
    return a.lo == b.lo && a.hi == b.hi && a.entries == b.entries;
  }
  friend bool operator!=(const HilbertTable& a, const HilbertTable& b) { return !(a == b); }
};

inline HilbertTable hilbert_table(const TruncatedZAlgebra& z) {
  HilbertTable t;
  t.lo = z.lo();
  t.hi = z.hi();
  const std::size_t w = static_cast<std::size_t>(z.width());
  t.entries.assign(w * w, 0);
  t.left.assign(w * w, std::nullopt);
  t.right.assign(w * w, std::nullopt);
  std::vector<bool> division(w);
  for (int i = z.lo(); i <= z.hi(); ++i)
    division[static_cast<std::size_t>(i - z.lo())] = is_division_algebra(z.diagonal(i)) == std::optional<bool>(true);
  for (int i = z.lo(); i <= z.hi(); ++i)
    for (int j = i; j <= z.hi(); ++j) {
      const std::size_t idx = static_cast<std::size_t>((i - z.lo()) * z.width() + (j - z.lo()));
      const std::size_t d = z.dim(i, j);
      t.entries[idx] = d;
      const std::size_t di = z.diagonal(i).dim(), dj = z.diagonal(j).dim();
      if (division[static_cast<std::size_t>(i - z.lo())] && d % di == 0) t.left[idx] = d / di;
      if (division[static_cast<std::size_t>(j - z.lo())] && d % dj == 0) t.right[idx] = d / dj;
    }
  return t;
}

// ---------------------------------------------------------------------------
// Isomorphisms of truncated Z-algebras

enum class IsoStatus { Found, Refuted, Inconclusive };

inline const char* to_string(IsoStatus s) {
  switch (s) {
    case IsoStatus::Found:
      return "found";
    case IsoStatus::Refuted:
      return "refuted";
    case IsoStatus::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

/// Component-wise isomorphism g_ij: A_ij -> B_ij (row convention).
struct ZIsomorphism {
  IsoStatus status = IsoStatus::Inconclusive;
  std::string reason;
  std::map<TruncatedZAlgebra::Index2, Matrix> maps;
};

/// Independent check: every g_ij is bijective and
/// kron(g_ij, g_jk) * mu'_ijk = mu_ijk * g_ik for all i <= j <= k.
inline bool verify_zalgebra_isomorphism(const TruncatedZAlgebra& a, const TruncatedZAlgebra& b,
                                        const std::map<TruncatedZAlgebra::Index2, Matrix>& g, std::string* why = nullptr) {
  auto no = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (a.lo() != b.lo() || a.hi() != b.hi()) return no("windows differ");
  for (int i = a.lo(); i <= a.hi(); ++i)
    for (int j = i; j <= a.hi(); ++j) {
      auto it = g.find({i, j});
      if (it == g.end()) return no("missing component map");
      const Matrix& m = it->second;
      if (m.rows() != a.dim(i, j) || m.cols() != b.dim(i, j) || (m.rows() > 0 && !is_invertible(m)))
        return no("component map (" + std::to_string(i) + "," + std::to_string(j) + ") is not bijective");
    }
  for (int i = a.lo(); i <= a.hi(); ++i)
    for (int j = i; j <= a.hi(); ++j)
      for (int k = j; k <= a.hi(); ++k) {
        const Matrix lhs = kron(g.at({i, j}), g.at({j, k})) * b.mult(i, j, k);
        const Matrix rhs = a.mult(i, j, k) * g.at({i, k});
        if (lhs != rhs)
          return no("multiplication (" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) +
                    ") is not intertwined");
      }
  return true;
}

namespace detail {

// Action of an element a of A_ii on A_ij (i < j): row x is a.x.
inline Matrix z_left_action(const TruncatedZAlgebra& z, int i, int j, const Vec& a) {
  const std::size_t d = z.dim(i, j);
  Matrix m(z.field(), d, d);
  for (std::size_t x = 0; x < d; ++x) m.set_row(x, z.multiply(i, i, a, i, j, unit_vector(z.field(), d, x)));
  return m;
}

inline Matrix z_right_action(const TruncatedZAlgebra& z, int i, int j, const Vec& b) {
  const std::size_t d = z.dim(i, j);
  Matrix m(z.field(), d, d);
  for (std::size_t x = 0; x < d; ++x) m.set_row(x, z.multiply(i, j, unit_vector(z.field(), d, x), j, j, b));
  return m;
}

// Equations saying G: A_{i,i+1} -> B_{i,i+1} intertwines the diagonal actions
// twisted by the diagonal isomorphisms hi, hj.
inline std::vector<Vec> twisted_bimodule_rows(const TruncatedZAlgebra& a, const TruncatedZAlgebra& b, int i, int j,
                                              const Matrix& hi, const Matrix& hj) {
  std::vector<Matrix> as, bs;
  const Algebra& ai = a.diagonal(i);
  const Algebra& aj = a.diagonal(j);
  for (std::size_t t = 0; t < ai.dim(); ++t) {
    as.push_back(z_left_action(a, i, j, ai.basis(t)));
    bs.push_back(z_left_action(b, i, j, hi.row(t)));
  }
  for (std::size_t t = 0; t < aj.dim(); ++t) {
    as.push_back(z_right_action(a, i, j, aj.basis(t)));
    bs.push_back(z_right_action(b, i, j, hj.row(t)));
  }
  return intertwiner_rows(a.field(), a.dim(i, j), b.dim(i, j), as, bs);
}

// Equations on G2 = g_{t,t+1} given G1 = g_{t-1,t}: the kernel of mu_{t-1,t,t+1}
// must map into the kernel of mu'_{t-1,t,t+1}.
inline std::vector<Vec> relation_rows(const TruncatedZAlgebra& a, const TruncatedZAlgebra& b, int t,
                                      const Matrix& g1) {
  const Field& f = a.field();
  const std::size_t d1 = a.dim(t - 1, t), d2 = a.dim(t, t + 1);
  const std::size_t e1 = b.dim(t - 1, t), e2 = b.dim(t, t + 1);
  const Matrix& mub = b.mult(t - 1, t, t + 1);
  const Subspace rel = left_kernel(a.mult(t - 1, t, t + 1));
  std::vector<Vec> rows;
  for (std::size_t r = 0; r < rel.dim(); ++r) {
    const Vec rv = rel.basis().row(r);
    // W_y = sum_x r[x,y] G1.row(x)
    std::vector<Vec> w(d2, Vec(e1));
    for (std::size_t x = 0; x < d1; ++x)
      for (std::size_t y = 0; y < d2; ++y) {
        const Elem& c = rv[x * d2 + y];
        if (c.is_zero()) continue;
        for (std::size_t u = 0; u < e1; ++u)
          if (!g1(x, u).is_zero()) f.fma(w[y][u], c, g1(x, u));
      }
    for (std::size_t o = 0; o < mub.cols(); ++o) {
      Vec eq(d2 * e2);
      for (std::size_t y = 0; y < d2; ++y)
        for (std::size_t c = 0; c < e2; ++c)
          for (std::size_t u = 0; u < e1; ++u) {
            if (w[y][u].is_zero()) continue;
            const Elem& m = mub(u * e2 + c, o);
            if (!m.is_zero()) f.fma(eq[y * e2 + c], w[y][u], m);
          }
      if (!vec_is_zero(eq)) rows.push_back(std::move(eq));
    }
  }
  return rows;
}

// Invertible elements of a space of d x e matrices: the identity first when it
// belongs to the space, then low-height combinations of the canonical basis.
inline std::vector<Matrix> invertible_candidates(const Subspace& space, std::size_t d, std::size_t e,
                                                 std::size_t max_count, std::size_t budget) {
  const Field& f = space.field();
  std::vector<Matrix> out;
  if (d != e || space.dim() == 0) return out;
  if (d == 0) return {Matrix(f, 0, 0)};
  const Vec id = flatten(Matrix::identity(f, d));
  if (space.contains(id)) out.push_back(Matrix::identity(f, d));
  enumerate_low_height(f, space.dim(), budget, [&](const Vec& c) {
    if (out.size() >= max_count) return true;
    const Matrix g = unflatten(f, row_times(c, space.basis()), d, e);
    if (is_invertible(g) && (out.empty() || g != out.front())) out.push_back(g);
    return out.size() >= max_count;
  });
  return out;
}

}  // namespace detail

/// Searches for a degree-preserving isomorphism A -> B within the common
/// window: equal Hilbert tables first, then diagonal algebra isomorphisms
/// (identity or an explicit quaternion isomorphism), then degree-one maps by
/// linear algebra with bounded backtracking; higher components are solved
/// from the multiplication and everything is verified independently.
inline ZIsomorphism zalgebra_isomorphism(const TruncatedZAlgebra& a, const TruncatedZAlgebra& b,
                                         std::size_t budget = 256) {
  ZIsomorphism res;
  if (a.lo() != b.lo() || a.hi() != b.hi()) throw DomainError("zalgebra_isomorphism: windows differ");
  if (a.field() != b.field()) throw FieldMismatch("zalgebra_isomorphism: base fields differ");
  const HilbertTable ta = hilbert_table(a), tb = hilbert_table(b);
  for (int i = a.lo(); i <= a.hi(); ++i)
    for (int j = i; j <= a.hi(); ++j)
      if (ta.at(i, j) != tb.at(i, j)) {
        res.status = IsoStatus::Refuted;
        res.reason = "Hilbert tables differ at (" + std::to_string(i) + "," + std::to_string(j) + ")";
        return res;
      }
  std::map<TruncatedZAlgebra::Index2, Matrix> g;
  for (int i = a.lo(); i <= a.hi(); ++i) {
    const Algebra& x = a.diagonal(i);
    const Algebra& y = b.diagonal(i);
    auto h = witt::quaternion_algebra_isomorphism(x, y);
    if (!h) {
      auto rx = x.field().kind() == FieldKind::Rationals ? recognize_quaternion(x) : std::nullopt;
      auto ry = y.field().kind() == FieldKind::Rationals ? recognize_quaternion(y) : std::nullopt;
      if (rx && ry && !witt::quaternion_iso(rx->params.a.a, rx->params.b.a, ry->params.a.a, ry->params.b.a)) {
        res.status = IsoStatus::Refuted;
        res.reason = "diagonal algebras at " + std::to_string(i) + " have different ramification sets";
      } else {
        res.status = IsoStatus::Inconclusive;
        res.reason = "no diagonal algebra isomorphism candidate at " + std::to_string(i);
      }
      return res;
    }
    g[{i, i}] = *h;
  }
  std::size_t nodes = 0;
  std::function<bool(int)> extend = [&](int t) -> bool {
    if (t == a.hi()) {
      for (int d = 2; d < a.width(); ++d)
        for (int i = a.lo(); i + d <= a.hi(); ++i) {
          const int k = i + d;
          const Matrix rhs = kron(g.at({i, i + 1}), g.at({i + 1, k})) * b.mult(i, i + 1, k);
          auto x = solve_left(transpose(a.mult(i, i + 1, k)), transpose(rhs));
          if (!x) return false;
          g[{i, k}] = transpose(*x);
        }
      return verify_zalgebra_isomorphism(a, b, g);
    }
    if (++nodes > budget) return false;
    std::vector<Vec> rows = detail::twisted_bimodule_rows(a, b, t, t + 1, g.at({t, t}), g.at({t + 1, t + 1}));
    if (t > a.lo()) {
      auto more = detail::relation_rows(a, b, t, g.at({t - 1, t}));
      rows.insert(rows.end(), more.begin(), more.end());
    }
    const std::size_t d = a.dim(t, t + 1), e = b.dim(t, t + 1);
    const Subspace space = kernel(Matrix::from_rows(a.field(), rows, d * e));
    for (const Matrix& cand : detail::invertible_candidates(space, d, e, 4, 2000)) {
      g[{t, t + 1}] = cand;
      if (extend(t + 1)) return true;
    }
    g.erase({t, t + 1});
    return false;
  };
  if (extend(a.lo())) {
    res.status = IsoStatus::Found;
    res.reason = "witness verified at truncation";
    res.maps = std::move(g);
  } else {
    res.status = IsoStatus::Inconclusive;
    res.reason = "Hilbert tables agree but no witness was found within the search budget";
  }
  return res;
}

/// Is Z isomorphic to Z(s) on the overlap [lo, hi - s] of the truncation?
inline ZIsomorphism periodicity_check(const TruncatedZAlgebra& z, int s) {
  if (s < 0) throw DomainError("periodicity_check: s must be nonnegative");
  if (s == 0) {
    ZIsomorphism r;
    r.status = IsoStatus::Found;
    r.reason = "s = 0: identity";
    for (int i = z.lo(); i <= z.hi(); ++i)
      for (int j = i; j <= z.hi(); ++j) r.maps[{i, j}] = Matrix::identity(z.field(), z.dim(i, j));
    return r;
  }
  if (z.hi() - s < z.lo() + 1) throw DomainError("periodicity_check: window too small for shift " + std::to_string(s));
  const TruncatedZAlgebra a = restrict_window(z, z.lo(), z.hi() - s);
  const TruncatedZAlgebra b = restrict_window(shift(z, s), z.lo(), z.hi() - s);
  return zalgebra_isomorphism(a, b);
}

}  // namespace ncp1
