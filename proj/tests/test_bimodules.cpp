#include <catch_amalgamated.hpp>

#include "ncp1/basechange.hpp"
#include "ncp1/io/json.hpp"
#include "ncp1/isomorphism.hpp"
#include "oracles.hpp"

using namespace ncp1;

namespace {

const Field Q = Field::rationals();

Bimodule quaternion_regular(long a, long b) { return regular_bimodule(make_quaternion(Q, a, b)); }

AlgebraElement elem(const Algebra& a, std::vector<long> c) {
  Vec v;
  for (long x : c) v.push_back(a.field().from_int(x));
  return {a, v};
}

}  // namespace

TEST_CASE("dimension pairs of iterated duals") {
  const Bimodule d = quaternion_regular(-1, -1);
  REQUIRE(dimension_pair(d) == DimensionPair{1, 4});
  REQUIRE(dimension_pair(iterated_dual(d, 1)) == DimensionPair{4, 1});
  REQUIRE(dimension_pair(iterated_dual(d, 2)) == DimensionPair{1, 4});
  REQUIRE(dimension_pair(iterated_dual(d, -1)) == DimensionPair{4, 1});
  const Bimodule k2 = free_bimodule(Q, 2);
  for (int i : {-2, -1, 0, 1, 2}) REQUIRE(dimension_pair(iterated_dual(k2, i)) == DimensionPair{2, 2});
}

TEST_CASE("duals are valid bimodules and double duals are canonical") {
  for (const Bimodule& n : {quaternion_regular(-1, -1), quaternion_regular(2, 3), free_bimodule(Q, 3)}) {
    REQUIRE_NOTHROW(right_dual(n).validate());
    REQUIRE_NOTHROW(left_dual(n).validate());
    for (int i : {-1, 0, 1}) {
      const Verdict v = double_dual_check(n, i);
      INFO(v.reason);
      REQUIRE(v.ok);
    }
  }
}

TEST_CASE("unit images have the dimension of the end algebra") {
  for (const Bimodule& n : {quaternion_regular(-1, -1), free_bimodule(Q, 2)}) {
    const DualChain chain(n, 0, 2);
    for (int i = 0; i <= 1; ++i) {
      const UnitImages u = unit_images(chain, i);
      const std::size_t fdim = chain.level(i).left_algebra().dim();
      REQUIRE(u.q.dim() == fdim);
      REQUIRE(u.qprime.dim() == fdim);
      REQUIRE(oracle::unit_image_rank(chain.level(i)) == fdim);
      REQUIRE(Subspace::span(u.qprime.basis() * u.identification) == u.q);
    }
  }
}

TEST_CASE("twist verifier accepts conjugation by a unit") {
  const Algebra h = make_quaternion(Q, -1, -1);
  const Bimodule m = regular_bimodule(h);
  const auto u = elem(h, {1, 2, 0, -1});
  const auto uinv = invert(u);
  // phi1(a) = u a u^-1 and psi(x) = u x
  const Matrix phi1 = h.left_mult(u.coords) * h.right_mult(uinv.coords);
  const Matrix psi = h.left_mult(u.coords);
  const Matrix id1 = Matrix::identity(Q, 1);
  const TwistVerdict ok = iso_with_twists_verify(m, m, phi1, id1, psi);
  INFO(ok.reason);
  REQUIRE(ok.ok);
  const TwistVerdict bad = iso_with_twists_verify(m, m, phi1, id1, Matrix::identity(Q, 4));
  REQUIRE_FALSE(bad.ok);
  REQUIRE(bad.reason.find("intertwining fails") != std::string::npos);
  REQUIRE_FALSE(iso_with_twists_verify(m, m, phi1, id1, Matrix(Q, 4, 4)).ok);
}

TEST_CASE("(1,4) and (4,1) bimodules are not isomorphic") {
  const Bimodule d = quaternion_regular(-1, -1);
  const Bimodule dual = right_dual(d);
  const TwistSearchResult r = iso_with_twists_search(d, dual);
  REQUIRE(r.status == IsoStatus::Refuted);
  REQUIRE(r.certified);
  REQUIRE(r.reason.find("(1,4) vs (4,1)") != std::string::npos);
}

TEST_CASE("isomorphism search on quaternion bimodules") {
  const Bimodule d = quaternion_regular(-1, -1);
  SECTION("same bimodule") {
    const TwistSearchResult r = iso_with_twists_search(d, d);
    REQUIRE(r.status == IsoStatus::Found);
    REQUIRE(iso_with_twists_verify(d, d, *r.phi1, *r.phi2, *r.psi).ok);
  }
  SECTION("(-1,-1) and (-1,-4) are isomorphic") {
    const Bimodule e = quaternion_regular(-1, -4);
    const TwistSearchResult r = iso_with_twists_search(d, e);
    REQUIRE(r.status == IsoStatus::Found);
    REQUIRE(r.certified);
    REQUIRE(iso_with_twists_verify(d, e, *r.phi1, *r.phi2, *r.psi).ok);
  }
  SECTION("(-1,-1) and (1,1) differ at 2 and infinity") {
    const TwistSearchResult r = iso_with_twists_search(d, quaternion_regular(1, 1));
    REQUIRE(r.status == IsoStatus::Refuted);
    REQUIRE(r.reason == "ramification sets differ: {2,inf} vs {}");
  }
  SECTION("free bimodules") {
    const Bimodule k2 = free_bimodule(Q, 2);
    const TwistSearchResult r = iso_with_twists_search(k2, k2);
    REQUIRE(r.status == IsoStatus::Found);
    REQUIRE(iso_with_twists_search(k2, free_bimodule(Q, 3)).status == IsoStatus::Refuted);
  }
}

TEST_CASE("validation errors name the failing axiom") {
  const Algebra k = field_algebra(Q);
  const Bimodule bad_unit(k, k, 1, {Matrix::from_ints(Q, {{2}})}, {Matrix::identity(Q, 1)});
  REQUIRE_THROWS_WITH(bad_unit.validate(), Catch::Matchers::ContainsSubstring("left unit law"));

  const Algebra h = make_quaternion(Q, -1, -1);
  auto lam = regular_bimodule(h).left_actions();
  std::swap(lam[1], lam[2]);
  const Bimodule swapped(h, k, 4, lam, {Matrix::identity(Q, 4)});
  REQUIRE_THROWS_WITH(swapped.validate(), Catch::Matchers::ContainsSubstring("not multiplicative"));

  const Algebra m2 = make_matrix_algebra(Q, 2);
  const Bimodule reg = regular_bimodule(m2);
  const Bimodule noncommuting(m2, m2, 4, reg.left_actions(), reg.left_actions());
  REQUIRE_THROWS_AS(noncommuting.validate(), ValidationError);
}

TEST_CASE("bimodule JSON round trip is exact") {
  const Field kp = Field::quadratic(Q, -1);
  for (const Bimodule& n : {quaternion_regular(-1, -1), right_dual(quaternion_regular(2, -5)), free_bimodule(Q, 3),
                            base_change(quaternion_regular(-1, -1), kp), regular_bimodule(make_matrix_algebra(Q, 2))}) {
    const auto doc = io::bimodule_to_json(n);
    const Bimodule back = io::bimodule_from_json(doc);
    REQUIRE(back == n);
    REQUIRE(io::bimodule_to_json(back).dump() == doc.dump());
  }
  auto doc = io::bimodule_to_json(free_bimodule(Q, 1));
  doc["left_actions"][0][0][0] = "3";
  REQUIRE_THROWS_AS(io::bimodule_from_json(doc), ValidationError);
  doc["schema_version"] = 99;
  REQUIRE_THROWS_WITH(io::bimodule_from_json(doc), Catch::Matchers::ContainsSubstring("schema_version"));
}

TEST_CASE("Morita reduction by a full idempotent") {
  const Algebra m2 = make_matrix_algebra(Q, 2);
  const Bimodule n = regular_bimodule(m2);
  const AlgebraElement e11 = matrix_unit_e11(m2);
  REQUIRE(is_full_idempotent(e11));
  const Bimodule r = morita_reduce(n, Side::Left, e11);
  REQUIRE_NOTHROW(r.validate());
  REQUIRE(r.dim() == 2);
  REQUIRE(r.left_algebra().dim() == 1);
  REQUIRE(dimension_pair(r) == DimensionPair{2, 2});
  REQUIRE(morita_reduce(n, Side::Left, AlgebraElement::one(m2)) == n);
  REQUIRE_THROWS_AS(morita_reduce(n, Side::Left, elem(m2, {2, 0, 0, 0})), DomainError);

  // a non-full idempotent of k x k
  std::vector<Elem> c(8);
  c[0] = Q.one();
  c[7] = Q.one();
  const Algebra kk = algebra_from_constants(Q, 2, c, Vec{Q.one(), Q.one()});
  REQUIRE_FALSE(is_full_idempotent(AlgebraElement(kk, Vec{Q.one(), Q.zero()})));

  // idempotent generated by a zero divisor
  const auto z = elem(m2, {1, 2, 2, 4});
  const auto e = idempotent_from_zero_divisor(z);
  REQUIRE(e);
  REQUIRE(is_full_idempotent(*e));
}

TEST_CASE("base change commutes with duals") {
  const Field kp = Field::quadratic(Q, -1);
  REQUIRE(dual_base_change_compatible(quaternion_regular(-1, -1), kp).ok);
  REQUIRE(dual_base_change_compatible(free_bimodule(Q, 2), kp).ok);
  REQUIRE(dual_base_change_compatible(quaternion_regular(2, 3), Field::quadratic(Q, 5)).ok);
}

TEST_CASE("base change splits the Hamilton quaternions over Q(sqrt(-1))") {
  const BaseChangeReport r = base_change_analysis(quaternion_regular(-1, -1), -1, false);
  REQUIRE(r.split);
  REQUIRE(r.zero_divisor);
  REQUIRE(rank(r.zero_divisor->parent.left_mult(r.zero_divisor->coords)) < 4);
  REQUIRE(r.idempotent);
  REQUIRE(r.reduced);
  REQUIRE(dimension_pair(*r.reduced) == DimensionPair{2, 2});
  // over Q(sqrt 3), a field where (-1,-1) stays a division algebra at infinity
  const BaseChangeReport s = base_change_analysis(quaternion_regular(-1, -1), 3, false);
  REQUIRE(s.method == "search");
}

TEST_CASE("tensor product over the middle algebra") {
  const Bimodule d = quaternion_regular(-1, -1);
  const TensorProduct t = tensor_over(d, right_dual(d));
  REQUIRE(t.module.dim() == 16);
  REQUIRE_NOTHROW(t.module.validate());
  REQUIRE_THROWS_AS(tensor_over(d, d), DomainError);
}
