#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <random>

#include "ncp1/io/json.hpp"
#include "ncp1/symalg.hpp"
#include "oracles.hpp"

using namespace ncp1;

namespace {

const Field Q = Field::rationals();

Bimodule k2() { return free_bimodule(Q, 2); }
Bimodule hamilton() { return regular_bimodule(make_quaternion(Q, -1, -1)); }

// built once, shared by several cases
const SymConstruction& sym_k2() {
  static const SymConstruction s = sym_algebra(k2(), 0, 5);
  return s;
}
const SymConstruction& sym_hamilton() {
  static const SymConstruction s = sym_algebra(hamilton(), 0, 3);
  return s;
}

Vec random_vec(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<int> d(-3, 3);
  Vec v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(Q.from_int(d(rng)));
  return v;
}

void require_matches_oracle(const Bimodule& n, const TruncatedZAlgebra& z) {
  for (const auto& [k, v] : oracle::hilbert_dims(n, z.lo(), z.hi())) {
    INFO("A_" << k.first << "," << k.second);
    REQUIRE(z.dim(k.first, k.second) == v);
  }
}

}  // namespace

TEST_CASE("Hilbert tables agree with the tensor oracle") {
  require_matches_oracle(k2(), sym_k2().algebra);
  require_matches_oracle(hamilton(), sym_hamilton().algebra);
  const Bimodule k3 = free_bimodule(Q, 3);
  require_matches_oracle(k3, sym_algebra(k3, 0, 3).algebra);
  const Bimodule q23 = regular_bimodule(make_quaternion(Q, 2, 3));
  require_matches_oracle(q23, sym_algebra(q23, 0, 3).algebra);
}

TEST_CASE("k^2 gives the projective line") {
  const HilbertTable t = hilbert_table(sym_k2().algebra);
  for (int i = 0; i <= 5; ++i)
    for (int j = 0; j <= 5; ++j) REQUIRE(t.at(i, j) == (j < i ? 0 : oracle::projective_line(j - i)));
}

TEST_CASE("the Hamilton quaternion table") {
  const HilbertTable t = hilbert_table(sym_hamilton().algebra);
  const std::vector<std::size_t> want{4, 4, 12, 8, 0, 1, 4, 3, 0, 0, 4, 4, 0, 0, 0, 1};
  REQUIRE(t.entries == want);
  REQUIRE(t.right[static_cast<std::size_t>(0 * 4 + 1)] == std::optional<std::size_t>(4));
  REQUIRE(t.left[static_cast<std::size_t>(0 * 4 + 1)] == std::optional<std::size_t>(1));
}

TEST_CASE("local units and zero products") {
  const TruncatedZAlgebra& z = sym_hamilton().algebra;
  for (int i = 0; i <= 3; ++i)
    for (int j = i; j <= 3; ++j)
      for (std::size_t x = 0; x < z.dim(i, j); ++x) {
        const Vec e = unit_vector(Q, z.dim(i, j), x);
        REQUIRE(z.multiply(i, i, z.unit(i), i, j, e) == e);
        REQUIRE(z.multiply(i, j, e, j, j, z.unit(j)) == e);
      }
  const Vec a01 = unit_vector(Q, z.dim(0, 1), 0), a23 = unit_vector(Q, z.dim(2, 3), 0);
  REQUIRE(vec_is_zero(z.multiply(0, 1, a01, 2, 3, a23)));
  REQUIRE(z.multiply(0, 1, a01, 2, 3, a23).size() == z.dim(0, 3));
  REQUIRE_THROWS_AS(z.dim(0, 4), DomainError);
}

TEST_CASE("multiplication is associative on random triples") {
  std::mt19937 rng(2024);
  for (const TruncatedZAlgebra* z : {&sym_k2().algebra, &sym_hamilton().algebra}) {
    for (int trial = 0; trial < 60; ++trial) {
      std::vector<int> idx(4);
      for (auto& t : idx) t = z->lo() + static_cast<int>(rng() % static_cast<unsigned>(z->width()));
      std::sort(idx.begin(), idx.end());
      const int i = idx[0], j = idx[1], k = idx[2], l = idx[3];
      const Vec x = random_vec(rng, z->dim(i, j)), y = random_vec(rng, z->dim(j, k)), w = random_vec(rng, z->dim(k, l));
      const Vec lhs = z->multiply(i, k, z->multiply(i, j, x, j, k, y), k, l, w);
      const Vec rhs = z->multiply(i, j, x, j, l, z->multiply(j, k, y, k, l, w));
      REQUIRE(lhs == rhs);
    }
  }
}

TEST_CASE("a corrupted multiplication is located") {
  const TruncatedZAlgebra& z = sym_k2().algebra;
  auto mult = z.mults();
  Matrix& m = mult.at({0, 1, 2});
  m(0, 0) = Q.add(m(0, 0), Q.one());
  const TruncatedZAlgebra bad(z.lo(), z.hi(), z.diagonals(), z.dims(), mult);
  const AxiomReport r = check_axioms(bad);
  REQUIRE_FALSE(r.ok);
  REQUIRE_THAT(r.failure, Catch::Matchers::StartsWith("associativity fails for indices (0,"));
  REQUIRE_THAT(r.failure, Catch::Matchers::ContainsSubstring("on basis triple"));
  REQUIRE(check_axioms(z).ok);
}

TEST_CASE("shifts") {
  const TruncatedZAlgebra& z = sym_hamilton().algebra;
  for (int s : {-3, -1, 1, 2}) {
    const TruncatedZAlgebra y = shift(z, s);
    REQUIRE(y.lo() == z.lo() - s);
    REQUIRE(shift(y, -s) == z);
    const HilbertTable t = hilbert_table(y), u = hilbert_table(z);
    for (int i = y.lo(); i <= y.hi(); ++i)
      for (int j = i; j <= y.hi(); ++j) REQUIRE(t.at(i, j) == u.at(i + s, j + s));
  }
  REQUIRE(shift(z, 0) == z);
}

TEST_CASE("2-Veronese of Sym(k^2)") {
  const TruncatedZAlgebra v = veronese2(sym_k2().algebra);
  REQUIRE(v.lo() == 0);
  REQUIRE(v.hi() == 2);
  REQUIRE(v.dim(0, 1) == 3);
  REQUIRE(v.dim(0, 2) == 5);
  REQUIRE(check_axioms(v).ok);
  const ZIsomorphism p = periodicity_check(v, 1);
  REQUIRE(p.status == IsoStatus::Found);
  REQUIRE(verify_zalgebra_isomorphism(restrict_window(v, 0, 1), restrict_window(shift(v, 1), 0, 1), p.maps));
}

TEST_CASE("periodicity") {
  SECTION("k^2 is 1-periodic") {
    const ZIsomorphism p = periodicity_check(sym_k2().algebra, 1);
    REQUIRE(p.status == IsoStatus::Found);
  }
  SECTION("Hamilton quaternions are 2-periodic, not 1-periodic") {
    const TruncatedZAlgebra z = sym_algebra(hamilton(), 0, 4).algebra;
    REQUIRE(periodicity_check(z, 2).status == IsoStatus::Found);
    const ZIsomorphism one = periodicity_check(z, 1);
    REQUIRE(one.status == IsoStatus::Refuted);
    REQUIRE(one.reason == "Hilbert tables differ at (0,0)");
  }
  SECTION("degenerate arguments") {
    const TruncatedZAlgebra& z = sym_hamilton().algebra;
    REQUIRE(periodicity_check(z, 0).status == IsoStatus::Found);
    REQUIRE_THROWS_AS(periodicity_check(z, -1), DomainError);
    REQUIRE_THROWS_WITH(periodicity_check(z, 3), Catch::Matchers::ContainsSubstring("window too small"));
  }
}

TEST_CASE("relations contain the unit images") {
  for (const SymConstruction* s : {&sym_k2(), &sym_hamilton()}) {
    REQUIRE_FALSE(s->unit_images.empty());
    REQUIRE_FALSE(s->relations.empty());
    for (const auto& [i, q] : s->unit_images) {
      const auto it = s->relations.find({i, i + 2});
      if (it == s->relations.end()) continue;
      REQUIRE(subspace_contains(it->second, q));
      REQUIRE(q.dim() == s->algebra.diagonal(i).dim());
    }
    for (const auto& [k, r] : s->relations) {
      REQUIRE(s->tensor_dims.at(k) - r.dim() == s->algebra.dim(k.first, k.second));
    }
  }
}

TEST_CASE("relations are closed under concatenation") {
  for (const SymConstruction* s : {&sym_k2(), &sym_hamilton()}) {
    const TruncatedZAlgebra& z = s->algebra;
    std::size_t checked = 0;
    for (const auto& [key, cat] : s->concatenation) {
      const auto [i, m, j] = key;
      const auto rij = s->relations.find({i, j});
      if (rij == s->relations.end()) continue;
      const std::size_t tim = s->tensor_dims.count({i, m}) ? s->tensor_dims.at({i, m}) : z.dim(i, m);
      const std::size_t tmj = s->tensor_dims.count({m, j}) ? s->tensor_dims.at({m, j}) : z.dim(m, j);
      if (const auto rim = s->relations.find({i, m}); rim != s->relations.end()) {
        const Matrix img = kron(rim->second.basis(), Matrix::identity(Q, tmj)) * cat;
        REQUIRE(subspace_contains(rij->second, Subspace::span(img)));
        ++checked;
      }
      if (const auto rmj = s->relations.find({m, j}); rmj != s->relations.end()) {
        const Matrix img = kron(Matrix::identity(Q, tim), rmj->second.basis()) * cat;
        REQUIRE(subspace_contains(rij->second, Subspace::span(img)));
        ++checked;
      }
    }
    REQUIRE(checked > 0);
  }
}

TEST_CASE("multiplication maps are surjective") {
  for (const TruncatedZAlgebra* z : {&sym_k2().algebra, &sym_hamilton().algebra})
    for (int i = z->lo(); i <= z->hi(); ++i)
      for (int j = i + 1; j <= z->hi(); ++j)
        for (int k = j + 1; k <= z->hi(); ++k) REQUIRE(rank(z->mult(i, j, k)) == z->dim(i, k));
}

TEST_CASE("Hilbert tables are invariant under base change") {
  const Field kp = Field::quadratic(Q, -1);
  const HilbertTable a = hilbert_table(sym_hamilton().algebra);
  const HilbertTable b = hilbert_table(sym_algebra(base_change(hamilton(), kp), 0, 3).algebra);
  REQUIRE(a == b);
  const HilbertTable c = hilbert_table(sym_algebra(base_change(k2(), kp), 0, 4).algebra);
  REQUIRE(c == hilbert_table(restrict_window(sym_k2().algebra, 0, 4)));
}

TEST_CASE("shifted Sym(N) matches Sym of the dual") {
  const ShiftDualReport r = shift_dual_check(hamilton(), 0, 3);
  REQUIRE(r.tables_equal);
  REQUIRE(r.witness.status == IsoStatus::Found);
}

TEST_CASE("tensor dimension guard") {
  ::setenv("NCP1_MAX_TENSOR_DIM", "16", 1);
  try {
    sym_algebra(k2(), 0, 8);
    ::unsetenv("NCP1_MAX_TENSOR_DIM");
    FAIL("no ResourceGuard");
  } catch (const ResourceGuard& e) {
    ::unsetenv("NCP1_MAX_TENSOR_DIM");
    REQUIRE(e.offending() > 16);
  }
  REQUIRE_NOTHROW(sym_algebra(k2(), 0, 3));
}

TEST_CASE("shape guard") {
  REQUIRE_THROWS_WITH(sym_algebra(free_bimodule(Q, 1), 0, 3), Catch::Matchers::StartsWith("shape guard"));
  REQUIRE_THROWS_AS(sym_algebra(k2(), 2, 1), DomainError);
}

TEST_CASE("Z-algebra JSON round trip") {
  const TruncatedZAlgebra& z = sym_hamilton().algebra;
  const auto doc = io::zalgebra_to_json(z);
  const TruncatedZAlgebra back = io::zalgebra_from_json(doc);
  REQUIRE(back == z);
  REQUIRE(io::zalgebra_to_json(back).dump() == doc.dump());
  auto broken = doc;
  broken["mult"][3]["matrix"][0][0] = "7";
  REQUIRE_THROWS_AS(io::zalgebra_from_json(broken), ValidationError);
}
