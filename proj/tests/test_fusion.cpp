#include <doctest.h>

#include <zhukit/fusion.hpp>
#include <zhukit/induce.hpp>

using namespace zhukit;

namespace {

FinModule trivial_module(const FinAlgebra& a, std::size_t dim) {
  FinModule m;
  m.dim = dim;
  for (std::size_t i = 0; i < a.dim; ++i) m.action.push_back(sgn(a.unit[i]) ? Matrix::identity(dim) : Matrix(dim, dim));
  return m;
}

FinBimodule trivial_bimodule(std::size_t dim) {
  return FinBimodule{dim, {Matrix::identity(dim)}, {Matrix::identity(dim)}};
}

// Q x Q with idempotent basis e1, e2.
FinAlgebra split_algebra() {
  FinAlgebra a;
  a.dim = 2;
  a.c = {{unit_vec(2, 0), Vec(2)}, {Vec(2), unit_vec(2, 1)}};
  a.unit = Vec{Rat(1), Rat(1)};
  a.theta = Matrix::identity(2);
  return a;
}

FinModule line(std::size_t which) {
  FinModule m;
  m.dim = 1;
  Matrix on = Matrix::identity(1), off(1, 1);
  m.action = which == 0 ? std::vector<Matrix>{on, off} : std::vector<Matrix>{off, on};
  return m;
}

// M_2(Q) with matrix units E_ij at index 2i + j, theta = transpose.
FinAlgebra matrix_algebra() {
  FinAlgebra a;
  a.dim = 4;
  a.c.assign(4, std::vector<Vec>(4, Vec(4)));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k) a.c[2 * i + j][2 * j + k] = unit_vec(4, 2 * i + k);
  a.unit = unit_vec(4, 0);
  a.unit[3] = 1;
  Matrix th(4, 4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) th(2 * j + i, 2 * i + j) = 1;
  a.theta = th;
  return a;
}

FinModule column_module() {
  FinModule m;
  m.dim = 2;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      Matrix e(2, 2);
      e(i, j) = 1;
      m.action.push_back(e);
    }
  return m;
}

}  // namespace

TEST_CASE("unit algebra closed forms") {
  auto a = unit_algebra();
  CHECK(algebra_check(a).passed());
  for (std::size_t b = 0; b <= 3; ++b)
    for (std::size_t u1 = 1; u1 <= 2; ++u1)
      for (std::size_t u2 = 1; u2 <= 2; ++u2) {
        auto B = trivial_bimodule(b);
        auto U1 = trivial_module(a, u1), U2 = trivial_module(a, u2);
        CHECK(tensor_over_algebra(a, B, U1).dim == b * u1);
        CHECK(hom_dim(U1, U2) == u1 * u2);
        CHECK(fusion_dim(a, B, U1, U2) == b * u1 * u2);
        auto d = d_iso_check(a, B, U1, U2);
        CHECK(d.lhs == b * u1 * u2);
        CHECK(d.equal());
      }
}

TEST_CASE("idempotent bookkeeping in Q x Q") {
  auto a = split_algebra();
  REQUIRE(algebra_check(a).passed());
  auto b = regular_bimodule(a);
  CHECK(bimodule_check(a, b).passed());
  CHECK(tensor_over_algebra(a, b, line(0)).dim == 1);
  CHECK(fusion_dim(a, b, line(0), line(0)) == 1);
  CHECK(fusion_dim(a, b, line(0), line(1)) == 0);
  auto d = d_iso_check(a, b, line(0), line(0));
  CHECK(d.lhs == 1);
  CHECK(d.rhs == 1);
  auto dual = dual_module(a, line(0));
  CHECK(hom_dim(dual, line(0)) == 1);
  CHECK(dual.dim == 1);
  FinBimodule zero{0, std::vector<Matrix>(2, Matrix(0, 0)), std::vector<Matrix>(2, Matrix(0, 0))};
  CHECK(tensor_over_algebra(a, zero, line(0)).dim == 0);
}

TEST_CASE("Schur's lemma over a full matrix algebra") {
  auto a = matrix_algebra();
  REQUIRE(algebra_check(a).passed());
  auto col = column_module();
  REQUIRE(module_check(a, col).passed());
  CHECK(hom_dim(col, col) == 1);
  CHECK(hom_dim(regular_module(a), col) == 2);
  CHECK(double_dual_isomorphic(a, col));
  CHECK(d_iso_check(a, regular_bimodule(a), col, col).equal());
}

TEST_CASE("d-isomorphism on seeded random instances") {
  std::map<std::string, int> families;
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    auto inst = random_fusion_instance(seed);
    ++families[inst.family];
    REQUIRE(algebra_check(inst.a).passed());
    REQUIRE(module_check(inst.a, inst.u1).passed());
    REQUIRE(module_check(inst.a, inst.u2).passed());
    REQUIRE(bimodule_check(inst.a, inst.b).passed());
    CHECK(inst.a.dim <= 4);
    auto d = d_iso_check(inst.a, inst.b, inst.u1, inst.u2);
    CHECK(d.equal());
    CHECK(double_dual_isomorphic(inst.a, inst.u1));
    // additivity in both module slots
    auto s1 = module_direct_sum(inst.u1, inst.u2);
    CHECK(fusion_dim(inst.a, inst.b, s1, inst.u2) ==
          fusion_dim(inst.a, inst.b, inst.u1, inst.u2) + fusion_dim(inst.a, inst.b, inst.u2, inst.u2));
    CHECK(fusion_dim(inst.a, inst.b, inst.u1, s1) ==
          fusion_dim(inst.a, inst.b, inst.u1, inst.u1) + fusion_dim(inst.a, inst.b, inst.u1, inst.u2));
  }
  CHECK(families.size() == 4);
}

TEST_CASE("fusion from Zhu-module data is independent of the basis order") {
  auto a = zhu_algebra(make_virasoro(make_rat(5, 7), 6));
  Matrix h0(1, 1), h1(1, 1);
  h1(0, 0) = 1;
  auto u0 = zhu_module_from_generators(a, {h0});
  auto u1 = zhu_module_from_generators(a, {h1});
  // Omega of F(C_0) holds u and the singular vector L(-1)u
  auto f0 = f_module(a, u0, 3);
  auto om = omega_subspace(*f0.module, a);
  ZhuModule omega_top{om.basis.size(), {}, om.action};
  CHECK(omega_top.dim == 2);

  std::vector<std::size_t> forward, backward;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    forward.push_back(i);
    backward.push_back(a.dim() - 1 - i);
  }
  for (const auto& order : {forward, backward}) {
    CHECK(fusion_from_zhu(u1, omega_top, order) == 1);
    CHECK(fusion_from_zhu(u0, omega_top, order) == 1);
    CHECK(fusion_from_zhu(u0, u1, order) == 0);
    CHECK(fusion_from_zhu(u1, u1, order) == 1);
  }
}
