#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ncp1/bimodule.hpp"
#include "ncp1/witt/quaternion_iso.hpp"
#include "ncp1/zalgebra.hpp"

namespace ncp1 {

/// Outcome of a search for (phi1, phi2, psi) with psi(a.m.b) = phi1(a).psi(m).phi2(b).
struct TwistSearchResult {
  IsoStatus status = IsoStatus::Inconclusive;
  bool certified = false;  // decided inside the quaternion (1,4) domain
  std::string reason;
  std::optional<Matrix> phi1;
  std::optional<Matrix> phi2;
  std::optional<Matrix> psi;
};

namespace detail {

// Quaternion algebra over Q acting on a 4-dim module with right algebra k.
inline bool in_quaternion_domain(const Bimodule& m) {
  return m.field().kind() == FieldKind::Rationals && m.dim() == 4 && m.right_algebra().dim() == 1 &&
         recognize_quaternion(m.left_algebra()).has_value();
}

// v with {v.e_i} a basis, as the matrix whose row i is v.e_i; unit vectors first.
inline std::optional<Matrix> cyclic_generator(const Bimodule& m) {
  const Field& f = m.field();
  auto try_vec = [&](const Vec& v) -> std::optional<Matrix> {
    std::vector<Vec> rows;
    for (const auto& a : m.left_actions()) rows.push_back(row_times(v, a));
    Matrix g = Matrix::from_rows(f, rows, m.dim());
    if (is_invertible(g)) return g;
    return std::nullopt;
  };
  for (std::size_t i = 0; i < m.dim(); ++i)
    if (auto g = try_vec(unit_vector(f, m.dim(), i))) return g;
  std::optional<Matrix> found;
  enumerate_low_height(f, m.dim(), 4000, [&](const Vec& v) {
    found = try_vec(v);
    return found.has_value();
  });
  return found;
}

inline std::optional<Matrix> diagonal_candidate(const Algebra& a, const Algebra& b) {
  if (a.field() != b.field()) return std::nullopt;
  return witt::quaternion_algebra_isomorphism(a, b);
}

}  // namespace detail

/// Certified on (1,4) quaternion bimodules over Q (decided by ramification
/// sets, witness built from an explicit algebra isomorphism); budgeted and
/// possibly inconclusive elsewhere. Any returned triple passes the verifier.
inline TwistSearchResult iso_with_twists_search(const Bimodule& m, const Bimodule& n) {
  TwistSearchResult r;
  if (m.field() != n.field()) {
    r.status = IsoStatus::Refuted;
    r.certified = true;
    r.reason = "base fields differ";
    return r;
  }
  if (m.dim() != n.dim() || m.left_algebra().dim() != n.left_algebra().dim() ||
      m.right_algebra().dim() != n.right_algebra().dim()) {
    r.status = IsoStatus::Refuted;
    r.certified = true;
    r.reason = "dimensions differ: " + dimension_pair(m).to_string() + " vs " + dimension_pair(n).to_string();
    return r;
  }
  auto accept = [&](Matrix p1, Matrix p2, Matrix ps, bool certified, const std::string& why) {
    const TwistVerdict v = iso_with_twists_verify(m, n, p1, p2, ps);
    if (!v.ok) return false;
    r.status = IsoStatus::Found;
    r.certified = certified;
    r.reason = why;
    r.phi1 = std::move(p1);
    r.phi2 = std::move(p2);
    r.psi = std::move(ps);
    return true;
  };
  const Field& f = m.field();

  if (detail::in_quaternion_domain(m) && detail::in_quaternion_domain(n) && m.right_algebra() == n.right_algebra()) {
    const auto rm = recognize_quaternion(m.left_algebra());
    const auto rn = recognize_quaternion(n.left_algebra());
    const mpq_class a1 = rm->params.a.a, b1 = rm->params.b.a, a2 = rn->params.a.a, b2 = rn->params.b.a;
    if (!witt::quaternion_iso(a1, b1, a2, b2)) {
      r.status = IsoStatus::Refuted;
      r.certified = true;
      r.reason = "ramification sets differ: " + witt::ramification_set(a1, b1).to_string() + " vs " +
                 witt::ramification_set(a2, b2).to_string();
      return r;
    }
    const auto phi1 = witt::quaternion_algebra_isomorphism(m.left_algebra(), n.left_algebra());
    const auto gm = detail::cyclic_generator(m);
    const auto gn = detail::cyclic_generator(n);
    if (phi1 && gm && gn) {
      const Matrix psi = *inverse(*gm) * *phi1 * *gn;
      if (accept(*phi1, Matrix::identity(f, 1), psi, true, "explicit quaternion isomorphism"))
        return r;
    }
    r.status = IsoStatus::Inconclusive;
    r.reason = "ramification sets agree but the explicit construction failed within its bound";
    return r;
  }

  if (dimension_pair(m) != dimension_pair(n)) {
    r.status = IsoStatus::Refuted;
    r.certified = true;
    r.reason = "dimension pairs differ: " + dimension_pair(m).to_string() + " vs " + dimension_pair(n).to_string();
    return r;
  }
  // heuristic: algebra maps from the identity or explicit quaternion isomorphisms,
  // then an invertible element of the intertwiner space
  const auto phi1 = detail::diagonal_candidate(m.left_algebra(), n.left_algebra());
  const auto phi2 = detail::diagonal_candidate(m.right_algebra(), n.right_algebra());
  if (!phi1 || !phi2) {
    r.reason = "no candidate algebra isomorphism outside the certified domain";
    return r;
  }
  std::vector<Matrix> as, bs;
  for (std::size_t a = 0; a < m.left_algebra().dim(); ++a) {
    as.push_back(m.left_action(a));
    bs.push_back(n.left_action_of(phi1->row(a)));
  }
  for (std::size_t b = 0; b < m.right_algebra().dim(); ++b) {
    as.push_back(m.right_action(b));
    bs.push_back(n.right_action_of(phi2->row(b)));
  }
  const Subspace space = intertwiner_space(f, m.dim(), n.dim(), as, bs);
  for (const Matrix& psi : detail::invertible_candidates(space, m.dim(), n.dim(), 1, 4000))
    if (accept(*phi1, *phi2, psi, false, "intertwiner search")) return r;
  r.reason = "no isomorphism found by the budgeted search";
  return r;
}

}  // namespace ncp1
