#include <doctest.h>

#include <zhukit/induce.hpp>

#include <random>

using namespace zhukit;

namespace {

Matrix scalar(const Rat& x) {
  Matrix m(1, 1);
  m(0, 0) = x;
  return m;
}

// Partitions of n into positive parts, by the standard recurrence.
std::vector<std::size_t> partition_counts(int n) {
  std::vector<std::size_t> p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = 1;
  for (int part = 1; part <= n; ++part)
    for (int m = part; m <= n; ++m) p[static_cast<std::size_t>(m)] += p[static_cast<std::size_t>(m - part)];
  return p;
}

// Seeded rational avoiding small denominators' degenerate values.
Rat generic_rat(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(1, 400);
  std::uniform_int_distribution<long> den(13, 97);
  return make_rat(num(rng), den(rng));
}

}  // namespace

TEST_CASE("F(C_h) over Virasoro has partition level dimensions") {
  std::mt19937_64 rng(2024);
  const Rat c = generic_rat(rng), h = generic_rat(rng);
  auto a = zhu_algebra(make_virasoro(c, 8));
  auto u = zhu_module_from_generators(a, {scalar(h)});
  auto f = f_module(a, u, 4);
  CHECK(f.level_dims == std::vector<std::size_t>{1, 1, 2, 3, 5});
  CHECK(f.relation_rank == 0);
  CHECK(f.relations_checked > 0);
  CHECK(f.lowest_weight == h);

  // L(0) acts on level n by h + n
  const auto& F = *f.module;
  const Vec om = a.voa().omega();
  for (std::size_t x = 0; x < F.dim(); ++x) {
    Vec img = F.act(om, 1, unit_vec(F.dim(), x));
    CHECK(img == (h + F.basis().level(x)) * unit_vec(F.dim(), x));
  }
  CHECK(axiom_check(F, 400, 1).passed);

  auto l = l_module(f);
  CHECK(l.level_dims == f.level_dims);
  for (const auto& k : top_annihilated(F)) CHECK(k.dim() == 0);
}

TEST_CASE("F(C) over Heisenberg matches the Fock space") {
  auto a = zhu_algebra(make_heisenberg(5));
  auto u = zhu_module_from_generators(a, {scalar(make_rat(3, 11))});
  auto f = f_module(a, u, 5);
  auto p = partition_counts(5);
  CHECK(f.level_dims == p);
  CHECK(f.relation_rank == 0);
  CHECK(f.lowest_weight == make_rat(9, 242));
}

TEST_CASE("U = 0 induces zero") {
  auto a = zhu_algebra(make_virasoro(Rat(1), 4));
  ZhuModule zero;
  zero.generator_action = {Matrix(0, 0)};
  zero.basis_action.assign(a.dim(), Matrix(0, 0));
  auto f = f_module(a, zero, 3);
  CHECK(!f.module);
  CHECK(f.level_dims == std::vector<std::size_t>{0, 0, 0, 0});
  CHECK(l_module(f).level_dims == f.level_dims);
  CHECK(frobenius_check(a, f, make_virasoro(Rat(1), 4)->adjoint()).module_maps == 0);
}

TEST_CASE("L(C_0) kills L(-1)u") {
  auto a = zhu_algebra(make_virasoro(make_rat(7, 3), 6));
  auto u = zhu_module_from_generators(a, {scalar(Rat(0))});
  auto f = f_module(a, u, 3);
  auto k = top_annihilated(*f.module);
  CHECK(k[1].dim() == 1);
  auto l = l_module(f);
  CHECK(l.level_dims[1] == 0);
  CHECK(axiom_check(*l.module, 300, 2).passed);
  // nothing left to quotient
  for (std::size_t n = 1; n < l.level_dims.size(); ++n) CHECK(top_annihilated(*l.module)[n].dim() == 0);
}

TEST_CASE("Frobenius reciprocity on fixtures") {
  const Rat c = make_rat(37, 19);
  auto a = zhu_algebra(make_virasoro(c, 6));
  auto cu = [&](const Rat& h) { return zhu_module_from_generators(a, {scalar(h)}); };
  const Rat h = make_rat(53, 29);

  auto f = f_module(a, cu(h), 3);
  auto same = frobenius_check(a, f, *f.module);
  CHECK(same.equal());
  CHECK(same.module_maps == 1);

  auto other = f_module(a, cu(make_rat(11, 31)), 3);
  auto diff = frobenius_check(a, f, *other.module);
  CHECK(diff.equal());
  CHECK(diff.module_maps == 0);

  // the singular vector L(-1)u in F(C_0) receives F(C_1)
  auto f0 = f_module(a, cu(Rat(0)), 3);
  auto f1 = f_module(a, cu(Rat(1)), 2);
  auto emb = frobenius_check(a, f1, *f0.module);
  CHECK(emb.equal());
  CHECK(emb.top_maps == 1);
}

TEST_CASE("direct sums and tensor factorization") {
  std::mt19937_64 rng(9);
  const Rat c = generic_rat(rng), h1 = generic_rat(rng), h2 = generic_rat(rng);
  auto a = zhu_algebra(make_virasoro(c, 6));
  auto u1 = zhu_module_from_generators(a, {scalar(h1)});
  auto u2 = zhu_module_from_generators(a, {scalar(h2)});
  auto sum = f_module(a, direct_sum(u1, u2), 3);
  auto d1 = f_module(a, u1, 3).level_dims, d2 = f_module(a, u2, 3).level_dims;
  for (std::size_t n = 0; n < 4; ++n) CHECK(sum.level_dims[n] == d1[n] + d2[n]);

  auto ah = zhu_algebra(make_heisenberg(4));
  auto fh = f_module(ah, zhu_module_from_generators(ah, {scalar(h1)}), 3);
  auto both = make_free_field_voa(
      {GeneratorSpec{GeneratorKind::Heisenberg, 0, "a"}, GeneratorSpec{GeneratorKind::Virasoro, c, "L"}}, 4);
  auto at = zhu_algebra(both);
  auto ft = f_module(at, zhu_module_from_generators(at, {scalar(h1), scalar(h2)}), 3);
  CHECK(ft.level_dims == convolve_dims(fh.level_dims, d2));
}
