#include <doctest.h>

#include <zhukit/linalg.hpp>

#include <random>

using namespace zhukit;

namespace {

Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int spread = 3) {
  std::uniform_int_distribution<int> d(-spread, spread);
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = make_rat(d(rng), 1 + (d(rng) + spread) % 3);
  return m;
}

}  // namespace

TEST_CASE("rank of a product of full-rank factors") {
  // A (4x2) * B (2x5) has rank at most 2; random integer factors give exactly 2
  // unless the 2x2 minors all vanish, which the identity block rules out.
  Matrix a(4, 2), b(2, 5);
  a(0, 0) = 1; a(1, 1) = 1; a(2, 0) = 3; a(2, 1) = -2; a(3, 1) = Rat(1, 2);
  b(0, 0) = 1; b(1, 1) = 1; b(0, 3) = 7; b(1, 4) = Rat(-5, 3);
  CHECK(rank(a * b) == 2);
}

TEST_CASE("nullspace vectors are annihilated and count matches rank-nullity") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t) {
    Matrix m = random_matrix(rng, 3 + t % 3, 5);
    auto ns = nullspace(m);
    CHECK(ns.size() + rank(m) == m.cols());
    for (const auto& v : ns) CHECK(is_zero(m.apply(v)));
  }
}

TEST_CASE("solve finds a solution exactly when b is in the column space") {
  std::mt19937_64 rng(5);
  Matrix m = random_matrix(rng, 4, 3);
  Vec x{Rat(1, 2), Rat(-3), Rat(2, 7)};
  Vec b = m.apply(x);
  auto sol = solve(m, b);
  REQUIRE(sol);
  CHECK(m.apply(*sol) == b);

  Matrix low(2, 2);
  low(0, 0) = 1; low(0, 1) = 2; low(1, 0) = 2; low(1, 1) = 4;
  CHECK_FALSE(solve(low, Vec{Rat(1), Rat(0)}));
}

TEST_CASE("subspace reduction leaves representatives on the complement") {
  Subspace s(4, {3, 2, 1, 0});
  s.add(Vec{1, 1, 0, 0});
  s.add(Vec{0, 1, 0, 1});
  // Priority order prefers coordinate 3 then 2 as pivots.
  CHECK(s.dim() == 2);
  auto comp = s.complement();
  REQUIRE(comp.size() == 2);
  Vec r = s.reduce(Vec{0, 0, 0, 5});
  for (auto p : s.pivots()) CHECK(sgn(r[p]) == 0);
  CHECK(s.contains(Vec{1, 2, 0, 1}));
  CHECK_FALSE(s.contains(Vec{0, 0, 1, 0}));
}

TEST_CASE("kron matches entrywise definition") {
  Matrix a = Matrix::identity(2);
  a(0, 1) = 3;
  Matrix b(1, 2);
  b(0, 0) = 2;
  b(0, 1) = -1;
  Matrix k = kron(a, b);
  CHECK(k.rows() == 2);
  CHECK(k.cols() == 4);
  CHECK(k(0, 2) == 6);
  CHECK(k(0, 3) == -3);
  CHECK(k(1, 2) == 2);
}
