#pragma once

#include <optional>
#include <string>

#include "ncp1/bimodule.hpp"
#include "ncp1/duality.hpp"

namespace ncp1 {

/// Does base change to kp commute with both duals of N, exactly on the
/// canonical bases, with identity maps passing the twist verifier?
inline Verdict dual_base_change_compatible(const Bimodule& n, const Field& kp) {
  const Bimodule nk = base_change(n, kp);
  const Bimodule a = right_dual(nk), b = base_change(right_dual(n), kp);
  const Bimodule c = left_dual(nk), d = base_change(left_dual(n), kp);
  auto same = [&](const Bimodule& x, const Bimodule& y, const char* which) -> Verdict {
    if (dimension_pair(x) != dimension_pair(y)) return {false, std::string(which) + ": dimension pairs differ"};
    if (x.dim() != y.dim()) return {false, std::string(which) + ": dimensions differ"};
    const TwistVerdict v =
        iso_with_twists_verify(x, y, Matrix::identity(kp, x.left_algebra().dim()),
                               Matrix::identity(kp, x.right_algebra().dim()), Matrix::identity(kp, x.dim()));
    if (!v.ok) return {false, std::string(which) + ": " + v.reason};
    if (x != y) return {false, std::string(which) + ": canonical bases differ"};
    return {true, ""};
  };
  if (Verdict v = same(a, b, "right dual"); !v.ok) return v;
  if (Verdict v = same(c, d, "left dual"); !v.ok) return v;
  return {true, "base change commutes with both duals"};
}

struct BaseChangeReport {
  Field extension;
  Bimodule changed;                        // N (x)_k k'
  bool split = false;                      // left algebra over k' has a zero divisor
  std::string method;
  std::optional<AlgebraElement> zero_divisor;
  std::optional<AlgebraElement> idempotent;
  std::optional<Bimodule> reduced;         // e N_{k'} over (e F e, k')
  std::optional<Verdict> duals;
};

/// Base change of N to k(sqrt d); when the left algebra becomes split,
/// exhibits a zero divisor, the idempotent it generates, and the Morita
/// reduction by that idempotent.
inline BaseChangeReport base_change_analysis(const Bimodule& n, const mpq_class& d, bool check_duals = false) {
  const Field kp = Field::quadratic(n.field(), d);
  BaseChangeReport r{kp, base_change(n, kp), false, "", std::nullopt, std::nullopt, std::nullopt, std::nullopt};
  const Algebra& left = r.changed.left_algebra();
  if (left.dim() > 1) {
    const ZeroDivisorResult z = find_zero_divisor(left);
    r.method = z.method;
    if (z.element) {
      r.split = true;
      r.zero_divisor = z.element;
      r.idempotent = idempotent_from_zero_divisor(*z.element);
      if (r.idempotent && is_full_idempotent(*r.idempotent))
        r.reduced = morita_reduce(r.changed, Side::Left, *r.idempotent);
    }
  } else {
    r.method = "field";
  }
  if (check_duals) r.duals = dual_base_change_compatible(n, kp);
  return r;
}

/// e11 in M_n(k) on the standard matrix-unit basis.
inline AlgebraElement matrix_unit_e11(const Algebra& mn) {
  if (mn.kind() != AlgebraKind::Matrix && mn.kind() != AlgebraKind::Field)
    throw DomainError("matrix_unit_e11: not a matrix algebra");
  return AlgebraElement(mn, mn.basis(0));
}

}  // namespace ncp1
