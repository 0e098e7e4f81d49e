#include <catch_amalgamated.hpp>

#include <random>

#include "ncp1/linalg.hpp"

using namespace ncp1;

namespace {

Matrix random_matrix(const Field& f, std::mt19937& rng, std::size_t r, std::size_t c, int spread, int zero_bias) {
  std::uniform_int_distribution<int> d(-spread, spread);
  std::uniform_int_distribution<int> z(0, 9);
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = z(rng) < zero_bias ? f.zero() : f.from_int(d(rng));
  return m;
}

// determinant by cofactor expansion over the integers mod p
long det_mod(const std::vector<std::vector<long>>& a, long p) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return ((a[0][0] % p) + p) % p;
  long acc = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<long>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<long> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(a[r][k]);
      minor.push_back(row);
    }
    const long term = (((a[0][c] % p) + p) % p) * det_mod(minor, p) % p;
    acc = (c % 2 == 0) ? (acc + term) % p : (acc - term + p) % p;
  }
  return acc;
}

// rank as the largest nonvanishing minor
std::size_t minor_rank(const std::vector<std::vector<long>>& a, long p) {
  const std::size_t r = a.size(), c = a[0].size();
  for (std::size_t k = std::min(r, c); k > 0; --k) {
    std::vector<std::size_t> rows(k), cols(k);
    std::function<bool(std::size_t, std::size_t, std::size_t)> pick_rows;
    auto try_cols = [&]() {
      std::function<bool(std::size_t, std::size_t)> pc = [&](std::size_t start, std::size_t depth) -> bool {
        if (depth == k) {
          std::vector<std::vector<long>> m(k, std::vector<long>(k));
          for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) m[i][j] = a[rows[i]][cols[j]];
          return det_mod(m, p) != 0;
        }
        for (std::size_t x = start; x < c; ++x) {
          cols[depth] = x;
          if (pc(x + 1, depth + 1)) return true;
        }
        return false;
      };
      return pc(0, 0);
    };
    pick_rows = [&](std::size_t start, std::size_t depth, std::size_t) -> bool {
      if (depth == k) return try_cols();
      for (std::size_t x = start; x < r; ++x) {
        rows[depth] = x;
        if (pick_rows(x + 1, depth + 1, 0)) return true;
      }
      return false;
    };
    if (pick_rows(0, 0, 0)) return k;
  }
  return 0;
}

}  // namespace

TEST_CASE("kernel of the identity is zero") {
  const Field q = Field::rationals();
  for (std::size_t n : {1u, 3u, 6u}) REQUIRE(kernel(Matrix::identity(q, n)).dim() == 0);
}

TEST_CASE("rank plus nullity equals the number of columns") {
  std::mt19937 rng(7);
  for (const Field& f : {Field::rationals(), Field::prime(7), Field::quadratic(Field::rationals(), -1)}) {
    for (int trial = 0; trial < 25; ++trial) {
      const std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
      const Matrix m = random_matrix(f, rng, r, c, 3, 4);
      const Subspace k = kernel(m);
      REQUIRE(rank(m) + k.dim() == c);
      for (std::size_t i = 0; i < k.dim(); ++i) REQUIRE(vec_is_zero(row_times(k.basis().row(i), transpose(m))));
    }
  }
}

TEST_CASE("canonical basis does not depend on the generators") {
  const Field q = Field::rationals();
  const Matrix a = Matrix::from_ints(q, {{1, 2, 3}, {0, 1, 1}});
  const Matrix b = Matrix::from_ints(q, {{1, 3, 4}, {2, 5, 7}, {1, 1, 2}});
  REQUIRE(canonical_basis(a) == canonical_basis(b));
  REQUIRE(canonical_basis(a).basis() == Matrix::from_ints(q, {{1, 0, 1}, {0, 1, 1}}));
}

TEST_CASE("rank over F_7 matches the largest nonvanishing minor") {
  const Field f = Field::prime(7);
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> d(0, 6);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t r = 2 + rng() % 3, c = 2 + rng() % 3;
    std::vector<std::vector<long>> a(r, std::vector<long>(c));
    for (auto& row : a)
      for (auto& x : row) x = (rng() % 3 == 0) ? 0 : d(rng);
    // make some rank drops likely
    if (trial % 3 == 0)
      for (std::size_t j = 0; j < c; ++j) a[r - 1][j] = (a[0][j] * 3 + a[1][j]) % 7;
    REQUIRE(rank(Matrix::from_ints(f, a)) == minor_rank(a, 7));
  }
}

TEST_CASE("subspace sum, intersection and containment") {
  const Field q = Field::rationals();
  const Subspace a = Subspace::span(Matrix::from_ints(q, {{1, 0, 0, 0}, {0, 1, 0, 0}}));
  const Subspace b = Subspace::span(Matrix::from_ints(q, {{0, 1, 0, 0}, {0, 0, 1, 0}}));
  const SubspaceOps ops = subspace_ops(a, b);
  REQUIRE(ops.sum.dim() == 3);
  REQUIRE(ops.intersection.dim() == 1);
  REQUIRE(ops.intersection.contains(Vec{q.zero(), q.one(), q.zero(), q.zero()}));
  REQUIRE_FALSE(ops.contains);
  REQUIRE(subspace_contains(ops.sum, a));
  REQUIRE_THROWS_AS(subspace_sum(a, Subspace::zero(q, 3)), DomainError);
}

TEST_CASE("tensor indexing is row-major") {
  const TensorIndex t = tensor_space(3, 4);
  REQUIRE(t.dim() == 12);
  REQUIRE(t(2, 1) == 9);
  REQUIRE(t.split(9) == std::pair<std::size_t, std::size_t>{2, 1});
  const TensorIndex one = tensor_space(1, 5);
  for (std::size_t j = 0; j < 5; ++j) REQUIRE(one(0, j) == j);
}

TEST_CASE("quotient section and projection") {
  const Field q = Field::rationals();
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng() % 5;
    const Matrix gens = random_matrix(q, rng, 1 + rng() % n, n, 2, 3);
    const Subspace rel = Subspace::span(gens);
    const Quotient quo = quotient_space(n, rel);
    REQUIRE(quo.dim == n - rel.dim());
    REQUIRE(quo.section * quo.project == Matrix::identity(q, quo.dim));
    for (std::size_t i = 0; i < rel.dim(); ++i) REQUIRE(vec_is_zero(row_times(rel.basis().row(i), quo.project)));
  }
  const Quotient z = quotient_space(3, Subspace::zero(q, 3));
  REQUIRE(z.project == Matrix::identity(q, 3));
}

TEST_CASE("mixed fields are rejected") {
  const Matrix a = Matrix::identity(Field::rationals(), 2);
  const Matrix b = Matrix::identity(Field::prime(5), 2);
  REQUIRE_THROWS_AS(a * b, FieldMismatch);
  REQUIRE_THROWS_AS(vstack(a, b), FieldMismatch);
}

TEST_CASE("quadratic field arithmetic") {
  const Field k = Field::quadratic(Field::rationals(), -1);
  const Elem i = k.make(0, 1);
  REQUIRE(k.mul(i, i) == k.from_int(-1));
  const Elem x = k.make(mpq_class(1, 2), 3);
  REQUIRE(k.mul(x, k.inv(x)) == k.one());
  REQUIRE_THROWS_AS(Field::quadratic(Field::rationals(), 4), DomainError);
  const Field f = Field::quadratic(Field::prime(7), 3);
  const Elem s = f.make(0, 1);
  REQUIRE(f.mul(s, s) == f.from_int(3));
}

TEST_CASE("solve_left and inverse") {
  const Field q = Field::rationals();
  const Matrix a = Matrix::from_ints(q, {{2, 1}, {1, 1}});
  const auto inv = inverse(a);
  REQUIRE(inv);
  REQUIRE(*inv * a == Matrix::identity(q, 2));
  REQUIRE_FALSE(inverse(Matrix::from_ints(q, {{1, 2}, {2, 4}})));
  const auto x = solve_left(a, Vec{q.from_int(3), q.from_int(2)});
  REQUIRE(x);
  REQUIRE(row_times(*x, a) == Vec{q.from_int(3), q.from_int(2)});
}
