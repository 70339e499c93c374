#include <doctest.h>

#include <zhukit/dualrep.hpp>

#include <random>

using namespace zhukit;

namespace {

Rat small_rat(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
  return make_rat(num(rng), den(rng));
}

Matrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = small_rat(rng);
  return m;
}

struct Fixture {
  VOAPtr voa;
  ZhuAlgebra a;
  ZhuBimodule b;
};

Fixture fixture(const VOAPtr& voa, const Rat& z) {
  auto a = zhu_algebra(voa);
  auto b = bimodule_build(voa->adjoint(), z, a);
  return {voa, std::move(a), std::move(b)};
}

// theta(v) *_{P(z)} w, summed over the homogeneous parts of theta(v).
Vec theta_left(const ModulePresentation& W, std::size_t v, const Vec& w, const Rat& z) {
  const auto& V = W.voa();
  Vec out(W.dim());
  for (const auto& [wt, part] : V.homogeneous_parts(theta(V, unit_vec(V.dim(), v)))) axpy(out, Rat(1), left_pz(W, part, w, z));
  return out;
}

}  // namespace

TEST_CASE("lifted functionals satisfy the residue identities") {
  std::mt19937_64 rng(11);
  for (const Rat& z : {Rat(-1), Rat(2)}) {
    for (auto voa : {make_virasoro(make_rat(1, 2), 5), make_heisenberg(5)}) {
      auto fx = fixture(voa, z);
      const auto& W = *fx.b.module;
      const auto& V = *voa;
      for (int trial = 0; trial < 3; ++trial) {
        auto f = lift_functional(random_matrix(2, fx.b.dim(), rng), fx.b);
        for (std::size_t v = 0; v < V.dim(); ++v) {
          const long wt = V.weight(v);
          if (wt > 3) continue;
          auto right = dual_act(Side::Right, v, f, wt - 1, wt - 1);
          auto left = dual_act(Side::Left, v, f, wt - 1, wt - 1);
          for (std::size_t w = 0; w < W.dim(); ++w) {
            if (W.basis().level(w) > right.domain) continue;
            const Vec ew = unit_vec(W.dim(), w);
            CHECK(right.modes.at(wt - 1).f.col(w) == f(theta_left(W, v, ew, z)));
            CHECK(left.modes.at(wt - 1).f.col(w) == f(right_pz(W, ew, unit_vec(V.dim(), v), z)));
          }
        }
      }
    }
  }
}

TEST_CASE("the vacuum acts as the identity on both sides") {
  std::mt19937_64 rng(3);
  auto fx = fixture(make_virasoro(Rat(1), 5), Rat(2));
  auto f = lift_functional(random_matrix(1, fx.b.dim(), rng), fx.b);
  const std::size_t one = fx.voa->vacuum();
  for (Side side : {Side::Left, Side::Right}) {
    auto r = dual_act(side, one, f, -3, 3);
    CHECK(r.domain == 5);
    for (const auto& [n, img] : r.modes) {
      if (n == -1)
        CHECK(img.f == f.f);
      else
        CHECK(img.f.is_zero());
    }
  }
}

TEST_CASE("dual action does not depend on the certificate") {
  std::mt19937_64 rng(5);
  auto fx = fixture(make_virasoro(make_rat(1, 2), 7), Rat(-1));
  auto f = lift_functional(random_matrix(1, fx.b.dim(), rng), fx.b);
  const std::size_t om = fx.voa->generator_vectors()[0];
  auto g = f;
  g.certificates[om] = {3, 3};
  CHECK_FALSE(check_certificate(g, om, g.certificates[om]));
  for (Side side : {Side::Left, Side::Right}) {
    auto a = dual_act(side, om, f, -2, 2);
    auto b = dual_act(side, om, g, -2, 2);
    REQUIRE(b.domain == a.domain - 2);
    for (long n = -2; n <= 2; ++n)
      for (std::size_t w = 0; w < fx.b.module->dim(); ++w)
        if (fx.b.module->basis().level(w) <= b.domain) CHECK(a.modes.at(n).f.col(w) == b.modes.at(n).f.col(w));
  }
  auto c = find_certificate(f, om, 3);
  REQUIRE(c);
  CHECK(c->k + c->l <= 4);
}

TEST_CASE("Omega membership separates lifted functionals from O-violating ones") {
  std::mt19937_64 rng(17);
  auto fx = fixture(make_virasoro(make_rat(1, 2), 5), Rat(-1));
  const auto& W = *fx.b.module;
  for (int trial = 0; trial < 4; ++trial) {
    auto f = lift_functional(random_matrix(1, fx.b.dim(), rng), fx.b);
    auto m = omega_membership(f);
    CHECK(m.member);
    CHECK(m.vanishes_on_o);

    DualElement bad = f;
    bad.f = random_matrix(1, W.dim(), rng);
    bad.certificates.clear();
    auto mb = omega_membership(bad);
    CHECK_FALSE(mb.member);
    CHECK_FALSE(mb.vanishes_on_o);
    CHECK(mb.witness);
  }
  DualElement zero;
  zero.module = fx.b.module;
  zero.f = Matrix(1, W.dim());
  zero.domain = W.cutoff();
  CHECK(omega_membership(zero).member);
}

TEST_CASE("three-term identity") {
  std::mt19937_64 rng(23);
  for (auto voa : {make_virasoro(Rat(26), 6), make_heisenberg(6)}) {
    for (const Rat& z : {Rat(-1), make_rat(1, 3)}) {
      auto fx = fixture(voa, z);
      auto f = lift_functional(random_matrix(1, fx.b.dim(), rng), fx.b);
      for (std::size_t v = 0; v < voa->dim(); ++v) {
        if (voa->weight(v) > 2) continue;
        auto t = three_term_check(f, v, -2, 2, -3, 3);
        CHECK(t.passed());
        CHECK(t.checked > 0);
        if (!t.passed()) MESSAGE(t.witness);
      }
    }
  }
}

TEST_CASE("depth-one generation from a Virasoro top") {
  const Rat h = make_rat(3, 7);
  auto voa = make_virasoro(make_rat(2, 5), 6);
  auto a = zhu_algebra(voa);
  Matrix om(1, 1);
  om(0, 0) = h;
  auto u = zhu_module_from_generators(a, {om});
  auto gen = induced_generate(a, u, 2, 2);
  CHECK(gen.u_vectors_in_omega);
  CHECK(gen.omega_images_are_lifts);
  CHECK(gen.positive_modes_vanish);
  CHECK(gen.degree_dims.at(0) == 1);
  CHECK(gen.degree_dims.at(1) == 1);
}

TEST_CASE("left and right dual actions commute") {
  std::mt19937_64 rng(29);
  for (auto voa : {make_virasoro(make_rat(1, 2), 7), make_heisenberg(6)}) {
    for (const Rat& z : {Rat(-1), Rat(2)}) {
      auto fx = fixture(voa, z);
      auto f = lift_functional(random_matrix(1, fx.b.dim(), rng), fx.b);
      const std::size_t g = voa->generator_vectors()[0];
      auto t = commutativity_check(f, g, g, -1, 2, 3);
      CHECK(t.passed());
      if (!t.passed()) MESSAGE(t.witness);
      CHECK(t.checked > 0);
      MESSAGE("checked " << t.checked << " skipped " << t.skipped);
    }
  }
}
