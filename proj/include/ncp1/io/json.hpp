#pragma once

#include <json.hpp>

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ncp1/bimodule.hpp"
#include "ncp1/zalgebra.hpp"

namespace ncp1::io {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------------------
// scalars and fields

inline mpq_class parse_rational(const json& j) {
  if (j.is_number_integer()) return mpq_class(j.get<long>());
  if (!j.is_string()) throw ValidationError("expected a rational \"n/d\", got " + j.dump());
  mpq_class q;
  if (q.set_str(j.get<std::string>(), 10) != 0 || q.get_den() == 0)
    throw ValidationError("malformed rational " + j.dump());
  q.canonicalize();
  return q;
}

inline json field_to_json(const Field& f) {
  switch (f.kind()) {
    case FieldKind::Rationals:
      return {{"kind", "rationals"}};
    case FieldKind::Prime:
      return {{"kind", "prime"}, {"p", f.prime()}};
    case FieldKind::Quadratic:
      return {{"kind", "quadratic"}, {"base", field_to_json(f.base())}, {"d", f.d().get_str()}};
  }
  return {};
}

inline Field field_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "rationals") return Field::rationals();
  if (kind == "prime") return Field::prime(j.at("p").get<long>());
  if (kind == "quadratic") return Field::quadratic(field_from_json(j.at("base")), parse_rational(j.at("d")));
  throw ValidationError("unknown field kind " + kind);
}

inline json elem_to_json(const Field& f, const Elem& e) {
  if (f.is_quadratic()) return json::array({e.a.get_str(), e.b.get_str()});
  return e.a.get_str();
}

inline Elem elem_from_json(const Field& f, const json& j) {
  if (f.is_quadratic()) {
    if (j.is_array() && j.size() == 2) return f.make(parse_rational(j[0]), parse_rational(j[1]));
    return f.from_rational(parse_rational(j));
  }
  return f.from_rational(parse_rational(j));
}

inline json vec_to_json(const Field& f, const Vec& v) {
  json out = json::array();
  for (const Elem& e : v) out.push_back(elem_to_json(f, e));
  return out;
}

inline Vec vec_from_json(const Field& f, const json& j) {
  Vec v;
  for (const auto& e : j) v.push_back(elem_from_json(f, e));
  return v;
}

inline json matrix_to_json(const Matrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vec_to_json(m.field(), m.row(r)));
  return out;
}

inline Matrix matrix_from_json(const Field& f, const json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows) throw ValidationError("matrix must have " + std::to_string(rows) + " rows");
  std::vector<Vec> rs;
  for (const auto& r : j) {
    Vec v = vec_from_json(f, r);
    if (v.size() != cols) throw ValidationError("matrix row must have " + std::to_string(cols) + " entries");
    rs.push_back(std::move(v));
  }
  return Matrix::from_rows(f, rs, cols);
}

// ---------------------------------------------------------------------------
// algebras

inline json algebra_to_json(const Algebra& a) {
  const Field& f = a.field();
  switch (a.kind()) {
    case AlgebraKind::Quaternion: {
      // parameters live in the base field
      const Field pf = f.base();
      return {{"name", "quaternion"},
              {"a", elem_to_json(pf, a.quaternion_params().a)},
              {"b", elem_to_json(pf, a.quaternion_params().b)}};
    }
    case AlgebraKind::Matrix:
      return {{"name", "matrix"}, {"n", a.matrix_order()}};
    case AlgebraKind::Field:
      if (a.dim() == 1 && a.unit() == Vec{f.one()} && a.constant(0, 0, 0) == f.one()) return {{"name", "field"}};
      break;
    case AlgebraKind::Generic:
      break;
  }
  json c = json::array();
  for (const Elem& e : a.constants()) c.push_back(elem_to_json(f, e));
  return {{"dim", a.dim()}, {"constants", c}, {"unit", vec_to_json(f, a.unit())}};
}

inline Algebra algebra_from_json(const Field& f, const json& j) {
  if (j.contains("name")) {
    const std::string name = j.at("name").get<std::string>();
    if (name == "quaternion") {
      if (f.is_quadratic()) {
        const Field b = f.base();
        return base_change(make_quaternion(b, elem_from_json(b, j.at("a")), elem_from_json(b, j.at("b"))), f);
      }
      return make_quaternion(f, elem_from_json(f, j.at("a")), elem_from_json(f, j.at("b")));
    }
    if (name == "matrix") return make_matrix_algebra(f, j.at("n").get<std::size_t>());
    if (name == "field") return field_algebra(f);
    throw ValidationError("unknown named algebra " + name);
  }
  const std::size_t n = j.at("dim").get<std::size_t>();
  std::vector<Elem> c;
  for (const auto& e : j.at("constants")) c.push_back(elem_from_json(f, e));
  if (c.size() != n * n * n) throw ValidationError("structure constants must have dim^3 entries");
  Vec unit = vec_from_json(f, j.at("unit"));
  if (unit.size() != n) throw ValidationError("unit must have dim entries");
  return algebra_from_constants(f, n, std::move(c), std::move(unit));
}

// ---------------------------------------------------------------------------
// bimodules

inline json bimodule_to_json(const Bimodule& n) {
  json lam = json::array(), rho = json::array();
  for (const auto& m : n.left_actions()) lam.push_back(matrix_to_json(m));
  for (const auto& m : n.right_actions()) rho.push_back(matrix_to_json(m));
  return {{"schema_version", kSchemaVersion},
          {"type", "bimodule"},
          {"field", field_to_json(n.field())},
          {"left", algebra_to_json(n.left_algebra())},
          {"right", algebra_to_json(n.right_algebra())},
          {"dim", n.dim()},
          {"left_actions", lam},
          {"right_actions", rho}};
}

/// Accepts full documents and the named shortcuts
/// {"named": "regular", "field": F, "algebra": A} and {"named": "free", "field": F, "n": n}.
inline Bimodule bimodule_from_json(const json& j) {
  if (j.contains("schema_version") && j.at("schema_version").get<int>() != kSchemaVersion)
    throw ValidationError("unsupported schema_version " + j.at("schema_version").dump());
  const Field f = j.contains("field") ? field_from_json(j.at("field")) : Field::rationals();
  if (j.contains("named")) {
    const std::string name = j.at("named").get<std::string>();
    if (name == "regular") return regular_bimodule(algebra_from_json(f, j.at("algebra")));
    if (name == "free") return free_bimodule(f, j.at("n").get<std::size_t>());
    throw ValidationError("unknown named bimodule " + name);
  }
  const Algebra l = algebra_from_json(f, j.at("left"));
  const Algebra r = algebra_from_json(f, j.at("right"));
  const std::size_t d = j.at("dim").get<std::size_t>();
  std::vector<Matrix> lam, rho;
  if (j.at("left_actions").size() != l.dim()) throw ValidationError("one left action per left algebra basis element");
  if (j.at("right_actions").size() != r.dim()) throw ValidationError("one right action per right algebra basis element");
  for (const auto& m : j.at("left_actions")) lam.push_back(matrix_from_json(f, m, d, d));
  for (const auto& m : j.at("right_actions")) rho.push_back(matrix_from_json(f, m, d, d));
  Bimodule b(l, r, d, std::move(lam), std::move(rho));
  b.validate();
  return b;
}

// ---------------------------------------------------------------------------
// Z-algebras and tables

inline json zalgebra_to_json(const TruncatedZAlgebra& z) {
  json diag = json::array(), dims = json::array(), mult = json::array();
  for (const auto& a : z.diagonals()) diag.push_back(algebra_to_json(a));
  for (const auto& [k, v] : z.dims()) dims.push_back({k.first, k.second, v});
  for (const auto& [k, m] : z.mults())
    mult.push_back({{"i", std::get<0>(k)}, {"j", std::get<1>(k)}, {"k", std::get<2>(k)}, {"matrix", matrix_to_json(m)}});
  return {{"schema_version", kSchemaVersion},
          {"type", "zalgebra"},
          {"field", field_to_json(z.field())},
          {"window", {z.lo(), z.hi()}},
          {"diag", diag},
          {"dims", dims},
          {"mult", mult}};
}

inline TruncatedZAlgebra zalgebra_from_json(const json& j) {
  if (j.at("schema_version").get<int>() != kSchemaVersion)
    throw ValidationError("unsupported schema_version " + j.at("schema_version").dump());
  const Field f = field_from_json(j.at("field"));
  const int lo = j.at("window").at(0).get<int>(), hi = j.at("window").at(1).get<int>();
  std::vector<Algebra> diag;
  for (const auto& a : j.at("diag")) diag.push_back(algebra_from_json(f, a));
  std::map<TruncatedZAlgebra::Index2, std::size_t> dims;
  for (const auto& d : j.at("dims")) dims[{d.at(0).get<int>(), d.at(1).get<int>()}] = d.at(2).get<std::size_t>();
  std::map<TruncatedZAlgebra::Index3, Matrix> mult;
  for (const auto& m : j.at("mult")) {
    const int i = m.at("i").get<int>(), jj = m.at("j").get<int>(), k = m.at("k").get<int>();
    const std::size_t rows = dims.at({i, jj}) * dims.at({jj, k}), cols = dims.at({i, k});
    mult[{i, jj, k}] = matrix_from_json(f, m.at("matrix"), rows, cols);
  }
  TruncatedZAlgebra z(lo, hi, std::move(diag), std::move(dims), std::move(mult));
  const AxiomReport rep = check_axioms(z);
  if (!rep.ok) throw ValidationError("Z-algebra document fails its axioms: " + rep.failure);
  return z;
}

inline json hilbert_to_json(const HilbertTable& t) {
  json rows = json::array(), left = json::array(), right = json::array();
  for (int i = t.lo; i <= t.hi; ++i) {
    json r = json::array(), l = json::array(), rr = json::array();
    for (int j = t.lo; j <= t.hi; ++j) {
      const std::size_t idx = static_cast<std::size_t>((i - t.lo) * t.width() + (j - t.lo));
      r.push_back(t.entries[idx]);
      l.push_back(t.left[idx] ? json(*t.left[idx]) : json(nullptr));
      rr.push_back(t.right[idx] ? json(*t.right[idx]) : json(nullptr));
    }
    rows.push_back(r);
    left.push_back(l);
    right.push_back(rr);
  }
  return {{"window", {t.lo, t.hi}}, {"entries", rows}, {"left_dims", left}, {"right_dims", right}};
}

inline json axioms_to_json(const AxiomReport& r) {
  return {{"ok", r.ok}, {"checks", r.checks}, {"failure", r.failure}};
}

inline json zmaps_to_json(const std::map<TruncatedZAlgebra::Index2, Matrix>& g) {
  json out = json::array();
  for (const auto& [k, m] : g) out.push_back({{"i", k.first}, {"j", k.second}, {"matrix", matrix_to_json(m)}});
  return out;
}

}  // namespace ncp1::io
