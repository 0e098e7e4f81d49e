// Acceptance runner: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "ncp1/basechange.hpp"
#include "ncp1/io/json.hpp"
#include "ncp1/symalg.hpp"
#include "ncp1/witt/harness.hpp"
#include "oracles.hpp"

using namespace ncp1;
using io::json;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;
  json report = json::object();

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
};

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;
  std::function<Outcome()> run;
};

Bimodule k2() { return free_bimodule(Field::rationals(), 2); }
Bimodule quaternion_regular() { return regular_bimodule(make_quaternion(Field::rationals(), -1, -1)); }

json table_rows(const HilbertTable& t) { return io::hilbert_to_json(t).at("entries"); }

Outcome hilbert_row_k2() {
  Outcome o;
  const SymConstruction s = sym_algebra(k2(), 0, 7);
  const HilbertTable t = hilbert_table(s.algebra);
  for (int i = 0; i <= 7; ++i)
    for (int n = 0; i + n <= 7; ++n)
      o.require(t.at(i, i + n) == static_cast<std::size_t>(n + 1),
                "dim A_{" + std::to_string(i) + "," + std::to_string(i + n) + "} = " + std::to_string(t.at(i, i + n)));
  o.require(check_axioms(s.algebra).ok, "axioms fail");
  o.report = {{"table", table_rows(t)}};
  return o;
}

Outcome quaternion_family() {
  Outcome o;
  const Bimodule n = quaternion_regular();
  const SymConstruction s = sym_algebra(n, 0, 3);
  const AxiomReport ax = check_axioms(s.algebra);
  o.require(ax.ok, "axioms: " + ax.failure);
  const auto ref = oracle::hilbert_dims(n, 0, 3);
  for (const auto& [k, v] : ref)
    o.require(s.algebra.dim(k.first, k.second) == v,
              "oracle disagrees at (" + std::to_string(k.first) + "," + std::to_string(k.second) + ")");
  for (int i = 0; i + 1 <= 3; ++i) o.require(s.algebra.dim(i, i + 1) == 4, "dim A_{i,i+1} != 4");
  // A_{i,i+2} = 12 where F_i = D (even i), 3 where F_i = k (odd i)
  for (int i = 0; i + 2 <= 3; ++i) {
    const std::size_t expect = s.algebra.diagonal(i).dim() == 4 ? 12 : 3;
    o.require(s.algebra.dim(i, i + 2) == expect, "dim A_{" + std::to_string(i) + "," + std::to_string(i + 2) + "}");
  }
  o.report = {{"table", table_rows(hilbert_table(s.algebra))}, {"axiom_checks", ax.checks}};
  return o;
}

Outcome shift_dual() {
  Outcome o;
  const ShiftDualReport a = shift_dual_check(k2(), 0, 7);
  const ShiftDualReport b = shift_dual_check(quaternion_regular(), 0, 3);
  o.require(a.tables_equal, "k^2 tables differ");
  o.require(b.tables_equal, "quaternion tables differ");
  o.report = {{"k2", {{"tables_equal", a.tables_equal}, {"witness", to_string(a.witness.status)}}},
              {"quaternion", {{"tables_equal", b.tables_equal}, {"witness", to_string(b.witness.status)}}},
              {"quaternion_table", table_rows(b.dual)}};
  return o;
}

Outcome unit_images_check() {
  Outcome o;
  json rows = json::array();
  for (const auto& [name, n] : std::vector<std::pair<std::string, Bimodule>>{{"k2", k2()}, {"quaternion", quaternion_regular()}}) {
    const DualChain chain(n, 0, 3);
    for (int i = 0; i <= 2; ++i) {
      const Verdict v = double_dual_check(chain, i);
      const UnitImages u = unit_images(chain, i);
      const std::size_t fdim = chain.level(i).left_algebra().dim();
      const Subspace carried = Subspace::span(u.qprime.basis() * u.identification);
      const std::size_t oracle_dim = oracle::unit_image_rank(chain.level(i));
      const std::string at = name + " i=" + std::to_string(i);
      o.require(v.ok, at + ": double dual check: " + v.reason);
      o.require(u.q.dim() == fdim, at + ": dim Q != dim F");
      o.require(oracle_dim == fdim, at + ": oracle rank != dim F");
      o.require(carried == u.q, at + ": identification does not carry Q' onto Q");
      rows.push_back({{"bimodule", name}, {"i", i}, {"dim_Q", u.q.dim()}, {"dim_F", fdim}, {"carried", carried == u.q}});
    }
  }
  o.report = {{"rows", rows}};
  return o;
}

Outcome base_change_morita() {
  Outcome o;
  const Bimodule n = quaternion_regular();
  const BaseChangeReport b = base_change_analysis(n, -1, true);
  o.require(b.split && b.zero_divisor.has_value(), "no zero divisor over Q(sqrt(-1))");
  if (b.zero_divisor) {
    const Algebra& a = b.zero_divisor->parent;
    o.require(!b.zero_divisor->is_zero() && rank(a.left_mult(b.zero_divisor->coords)) < a.dim(),
              "exhibited element is not a zero divisor");
  }
  o.require(b.reduced.has_value(), "no Morita reduction");
  const Field kp = b.extension;
  const Bimodule m2 = regular_bimodule(make_matrix_algebra(kp, 2));
  const Bimodule red = morita_reduce(m2, Side::Left, matrix_unit_e11(m2.left_algebra()));
  const DimensionPair want{2, 2};
  o.require(dimension_pair(red) == want, "e11 reduction is " + dimension_pair(red).to_string());
  const HilbertTable t = hilbert_table(sym_algebra(red, 0, 5).algebra);
  for (int j = 0; j <= 5; ++j) o.require(t.at(0, j) == static_cast<std::size_t>(j + 1), "Hilbert row of e11 N");
  json reduced_row = json::array();
  if (b.reduced) {
    o.require(dimension_pair(*b.reduced) == want, "zero-divisor reduction is " + dimension_pair(*b.reduced).to_string());
    const HilbertTable t2 = hilbert_table(sym_algebra(*b.reduced, 0, 5).algebra);
    for (int j = 0; j <= 5; ++j) reduced_row.push_back(t2.at(0, j));
    for (int j = 0; j <= 5; ++j) o.require(t2.at(0, j) == static_cast<std::size_t>(j + 1), "Hilbert row of eN");
  }
  o.require(b.duals && b.duals->ok, "dual/base-change compatibility");
  const Verdict k2dual = dual_base_change_compatible(k2(), kp);
  o.require(k2dual.ok, "k^2 dual/base-change compatibility");
  o.report = {{"zero_divisor", b.zero_divisor ? io::vec_to_json(kp, b.zero_divisor->coords) : json(nullptr)},
              {"e11_row", table_rows(t).at(0)},
              {"zero_divisor_row", reduced_row},
              {"duals", b.duals && b.duals->ok}};
  return o;
}

Outcome witt_catalog() {
  Outcome o;
  const auto cat = witt::default_catalog();
  o.require(cat.size() >= 200, "catalog too small");
  const witt::WittReport r = witt::witt_harness(cat);
  o.require(r.passed, r.failure);
  o.require(r.assertions.size() == 4, "not all assertions ran");
  o.require(r.triples_verified > 0, "no isomorphism triple was verified");
  json a = json::array();
  for (const auto& x : r.assertions) a.push_back({{"name", x.name}, {"ok", x.ok}});
  json classes = json::array();
  for (const auto& c : r.classes) classes.push_back(c.to_string());
  o.report = {{"pairs", cat.size()}, {"assertions", a}, {"classes", classes}, {"triples_verified", r.triples_verified}};
  return o;
}

Outcome symbols() {
  Outcome o;
  const witt::OracleAgreement g = witt::symbol_oracle_agreement(witt::default_catalog());
  o.require(g.mismatches.empty(), g.mismatches.empty() ? "" : g.mismatches.front());
  o.require(g.at_two == witt::default_catalog().size(), "some pair skipped the place 2");
  o.report = {{"checked", g.checked}, {"at_two", g.at_two}, {"mismatches", g.mismatches.size()}};
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Hilbert row of Sym(k^2), width 8", 5, hilbert_row_k2},
      {2, "quaternion (1,4) family, width 4", 60, quaternion_family},
      {3, "shifted Sym(M) vs Sym(M*)", 60, shift_dual},
      {4, "double duals and unit images", 30, unit_images_check},
      {5, "base change and Morita reduction", 60, base_change_morita},
      {6, "Witt harness on the default catalog", 120, witt_catalog},
      {7, "Hilbert symbol oracle agreement", 120, symbols},
  };
  bool all = true;
  std::vector<std::string> first;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.note = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s > c.limit_seconds) {
      o.ok = false;
      o.note = "took " + std::to_string(s) + " s, limit " + std::to_string(c.limit_seconds) + " s";
    }
    first.push_back(o.report.dump());
    all = all && o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << " [" << c.id << "] " << c.title << " (" << std::to_string(s).substr(0, 5)
              << " s)" << (o.ok ? "" : " -- " + o.note) << "\n";
  }
  // criterion 8: byte-identical reports on a rerun
  bool same = true;
  std::string where;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string again;
    try {
      again = criteria[i].run().report.dump();
    } catch (const std::exception& e) {
      again = std::string("exception: ") + e.what();
    }
    if (again != first[i] && same) {
      same = false;
      where = "criterion " + std::to_string(criteria[i].id);
    }
  }
  all = all && same;
  std::cout << (same ? "PASS" : "FAIL") << " [8] rerun reports are byte-identical" << (same ? "" : " -- " + where)
            << "\n";
  return all ? 0 : 1;
}
