#include <doctest.h>

#include <zhukit/zhu.hpp>

using namespace zhukit;

namespace {

Vec e(const VOAPresentation& v, std::size_t i) { return unit_vec(v.dim(), i); }

// Rank of the projected powers [g]^{*k}, computed by repeated Zhu products.
std::size_t power_rank(const ZhuAlgebra& a, std::size_t gen, long gen_weight) {
  const auto& V = a.voa();
  std::vector<Vec> powers;
  Vec cur = e(V, V.vacuum());
  for (long k = 0; k * gen_weight <= a.cutoff(); ++k) {
    powers.push_back(a.project(cur));
    if ((k + 1) * gen_weight <= a.cutoff()) cur = zhu_star(V, e(V, gen), cur);
  }
  return rank_of(powers, a.dim());
}

}  // namespace

TEST_CASE("Zhu algebra dimensions with the power-generation oracle") {
  auto h = make_heisenberg(5);
  auto ah = zhu_algebra(h);
  CHECK(ah.dim() == 6);
  CHECK(power_rank(ah, h->generator_vectors()[0], 1) == 6);
  for (const Rat& c : {make_rat(1, 2), Rat(1), Rat(26)}) {
    auto v = make_virasoro(c, 6);
    auto av = zhu_algebra(v);
    CHECK(av.dim() == 4);
    CHECK(power_rank(av, v->generator_vectors()[0], 2) == 4);
  }
  CHECK(zhu_algebra(make_heisenberg(0)).dim() == 1);
  CHECK(zhu_algebra(make_virasoro(Rat(3), 0)).dim() == 1);
}

TEST_CASE("truncated Zhu dimensions are nondecreasing and grow by one per generator weight") {
  std::size_t prev = 0;
  for (int n = 0; n <= 7; ++n) {
    auto a = zhu_algebra(make_heisenberg(n));
    CHECK(a.dim() >= prev);
    CHECK(a.dim() == static_cast<std::size_t>(n + 1));
    prev = a.dim();
  }
  prev = 0;
  for (int n = 0; n <= 8; ++n) {
    auto a = zhu_algebra(make_virasoro(make_rat(1, 2), n));
    CHECK(a.dim() >= prev);
    CHECK(a.dim() == static_cast<std::size_t>(n / 2 + 1));
    prev = a.dim();
  }
}

TEST_CASE("Zhu products and O(V) elements at desk scale") {
  const Rat c = make_rat(1, 2);
  auto v = make_virasoro(c, 6);
  const Vec& w = v->omega();
  const Vec one = e(*v, v->vacuum());
  // omega * omega = L(-2)omega + 2 L(-1)omega + 2 omega
  Vec expect = v->virasoro(-2, w) + Rat(2) * v->virasoro(-1, w) + Rat(2) * w;
  CHECK(zhu_star(*v, w, w) == expect);
  CHECK(zhu_star(*v, one, w) == w);
  CHECK(zhu_star(*v, w, one) == w);
  // L(-1)omega + 2 omega lies in O(V)
  auto a = zhu_algebra(v);
  CHECK(o_element(v->adjoint(), w, one, Rat(-1)) == v->virasoro(-1, w) + Rat(2) * w);
  CHECK(a.o().contains(v->virasoro(-1, w) + Rat(2) * w));
  // v *_{P(z)} 1 = (-z)^{-wt v} v
  for (const Rat& z : {Rat(-1), Rat(2), make_rat(1, 3)}) {
    for (std::size_t i = 0; i < v->dim(); ++i)
      CHECK(left_pz(v->adjoint(), e(*v, i), one, z) == ipow(-z, -v->weight(i)) * e(*v, i));
  }
}

TEST_CASE("theta") {
  auto v = make_virasoro(Rat(1), 6);
  CHECK(theta(*v, e(*v, v->vacuum())) == e(*v, v->vacuum()));
  CHECK(theta(*v, v->omega()) == v->omega());
  auto h = make_heisenberg(4);
  const std::size_t a = h->generator_vectors()[0];
  CHECK(theta(*h, e(*h, a)) == Rat(-1) * e(*h, a));
  Matrix t = theta_matrix(*h);
  CHECK(t * t == Matrix::identity(h->dim()));
}

TEST_CASE("Zhu algebra checks pass on every in-cutoff triple") {
  auto h = make_heisenberg(5);
  auto ch = zhu_checks(zhu_algebra(h));
  CHECK(ch.passed());
  CHECK(ch.assoc.checked > 0);
  CHECK(ch.ideal.checked > 0);
  CHECK(ch.central.checked > 0);
  for (const Rat& c : {make_rat(1, 2), Rat(1), Rat(26)}) {
    auto cv = zhu_checks(zhu_algebra(make_virasoro(c, 6)));
    CHECK(cv.passed());
    CHECK(cv.theta.checked > 0);
  }
}

TEST_CASE("O-membership of the shifted residues") {
  for (const Rat& z : {Rat(-1), Rat(2), make_rat(1, 3)}) {
    auto v = make_virasoro(make_rat(1, 2), 7);
    auto adj = v->adjoint();
    Subspace o = o_subspace(adj, z);
    std::size_t tested = 0;
    for (std::size_t i = 0; i < v->dim(); ++i)
      for (std::size_t j = 0; j < v->dim(); ++j)
        for (long n = 0; n <= 2; ++n)
          for (long m = 0; m <= n; ++m) {
            // top level of the element is wt v + wt w + n + 1
            if (v->weight(i) + v->weight(j) + n + 1 > v->cutoff()) continue;
            CHECK(o.contains(o_element(adj, e(*v, i), e(*v, j), z, n, m)));
            CHECK(o.contains(o_element_twisted(adj, e(*v, i), e(*v, j), z, n, m)));
            ++tested;
          }
    CHECK(tested > 20);
  }
}

TEST_CASE("generalized bimodule") {
  auto h = make_heisenberg(5);
  auto a = zhu_algebra(h);
  for (const Rat& z : {Rat(-1), Rat(2), make_rat(1, 3)}) {
    auto b = bimodule_build(h->adjoint(), z, a);
    auto checks = bimodule_checks(b, a);
    CHECK(checks.passed());
    CHECK(checks.left_assoc.checked > 0);
    // left action of [1] is the identity wherever defined
    for (std::size_t j = 0; j < b.dim(); ++j) {
      REQUIRE(b.left[a.unit()][j].has_value());
      CHECK(*b.left[a.unit()][j] == unit_vec(b.dim(), j));
    }
    // the bimodule of (W, Y^(-1/z)) at -1 coincides with that of W at z
    auto rescaled = rescale_module(h->adjoint(), -1 / z);
    auto b2 = bimodule_build(rescaled, Rat(-1), a);
    CHECK(b2.reps == b.reps);
    CHECK(b2.left == b.left);
    CHECK(b2.right == b.right);
  }
  auto v = make_virasoro(make_rat(1, 2), 6);
  auto av = zhu_algebra(v);
  CHECK(bimodule_checks(bimodule_build(v->adjoint(), Rat(2), av), av).passed());
  // at z = -1 the adjoint bimodule is A(V) itself
  CHECK(bimodule_build(v->adjoint(), Rat(-1), av).reps == av.representatives());
}

TEST_CASE("residue identity for the rescaled structure") {
  auto v = make_virasoro(make_rat(1, 2), 6);
  auto adj = v->adjoint();
  std::size_t compared = 0;
  for (const Rat& z : {Rat(2), make_rat(-1, 3)}) {
    auto r = rescale_module(adj, -1 / z);
    for (std::size_t i = 0; i < v->dim(); ++i)
      for (std::size_t j = 0; j < v->dim(); ++j)
        for (long m = -3; m <= 3; ++m)
          for (long n = -3; n <= 3; ++n) {
            const long wt = v->weight(i);
            // every term v_{m+k} w has level <= wt + wt w - m - 1
            if (wt + v->weight(j) - m - 1 > v->cutoff()) continue;
            Vec lhs = ipow(-z, -wt) * binomial_residue(adj, e(*v, i), e(*v, j), m, n, z);
            Vec rhs = ipow(-z, -m - 1) * binomial_residue(r, e(*v, i), e(*v, j), m, n, Rat(-1));
            CHECK(lhs == rhs);
            ++compared;
          }
  }
  CHECK(compared > 100);
}

TEST_CASE("Omega") {
  auto h = make_heisenberg(4);
  auto a = zhu_algebra(h);
  auto om = omega_subspace(h->adjoint(), a);
  REQUIRE(om.basis.size() == 1);
  CHECK(om.basis[0] == e(*h, h->vacuum()));
  // tensor product: Omega of the tensor equals the intersection of the factor Omegas
  auto t = tensor_voa(h, h, 4);
  auto tm = t->adjoint();
  auto pairs = tensor_pairs(h->basis(), h->basis(), 4);
  std::vector<std::size_t> first, second;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (pairs[i].second == h->vacuum()) first.push_back(i);
    if (pairs[i].first == h->vacuum()) second.push_back(i);
  }
  auto full = omega_vectors(tm);
  auto o1 = omega_vectors(tm, first);
  auto o2 = omega_vectors(tm, second);
  // intersection of two spans via the kernel of [B1 | -B2]
  std::vector<Vec> cols = o1;
  for (const auto& x : o2) cols.push_back(Rat(-1) * x);
  auto ker = nullspace(Matrix::from_columns(t->dim(), cols));
  std::vector<Vec> inter;
  for (const auto& k : ker) {
    Vec x(t->dim());
    for (std::size_t i = 0; i < o1.size(); ++i) axpy(x, k[i], o1[i]);
    inter.push_back(x);
  }
  CHECK(same_span(full, inter, t->dim()));
  CHECK(full.size() == 1);
}

TEST_CASE("Zhu modules from generator data agree with zero modes on a top level") {
  const Rat c = make_rat(7, 10), hw = make_rat(3, 5);
  auto v = make_virasoro(c, 6);
  auto a = zhu_algebra(v);
  Matrix g(1, 1);
  g(0, 0) = hw;
  auto u = zhu_module_from_generators(a, {g});
  CHECK(zhu_module_check(a, u).passed());
  auto m = make_highest_weight_module(v, {g}, 2, hw);
  auto om = omega_subspace(m, a);
  REQUIRE(om.basis.size() == 1);
  for (std::size_t i = 0; i < a.dim(); ++i) CHECK(om.action[i] == u.basis_action[i]);
}
