#include <doctest.h>

#include <zhukit/voa.hpp>

#include <map>
#include <string>
#include <vector>

using namespace zhukit;

namespace {

// Number of partitions of n into parts >= min_part, by the standard DP.
long partitions(long n, long min_part) {
  std::vector<long> ways(static_cast<std::size_t>(n + 1), 0);
  ways[0] = 1;
  for (long p = min_part; p <= n; ++p)
    for (long k = p; k <= n; ++k) ways[static_cast<std::size_t>(k)] += ways[static_cast<std::size_t>(k - p)];
  return ways[static_cast<std::size_t>(n)];
}

// Fock space of one free boson as polynomials in x_1, x_2, ...; a monomial is
// the multiset of parts, stored descending.
using Mono = std::vector<long>;
using Poly = std::map<Mono, Rat>;

Mono parse_label(const std::string& label) {
  Mono m;
  std::size_t pos = 0;
  while ((pos = label.find("a(-", pos)) != std::string::npos) {
    pos += 3;
    m.push_back(std::stol(label.substr(pos)));
  }
  return m;
}

// a_n on the Fock space: n > 0 is n d/dx_n, n < 0 multiplies by x_{-n}, a_0 = 0.
Poly heis_mode(long n, const Poly& p) {
  Poly out;
  for (const auto& [m, c] : p) {
    if (n < 0) {
      Mono k = m;
      k.push_back(-n);
      std::sort(k.rbegin(), k.rend());
      out[k] += c;
    } else if (n > 0) {
      long mult = 0;
      for (long x : m) mult += (x == n);
      if (mult == 0) continue;
      Mono k = m;
      k.erase(std::find(k.begin(), k.end(), n));
      out[k] += c * n * mult;
    }
  }
  std::erase_if(out, [](const auto& kv) { return sgn(kv.second) == 0; });
  return out;
}

// L(n) = 1/2 sum_j :a_j a_{n-j}: on the Fock space.
Poly sugawara(long n, const Poly& p, long level_bound) {
  Poly out;
  for (long j = -level_bound - 2; j <= level_bound + 2 + std::abs(n); ++j) {
    const long k = n - j;
    // normal order: annihilators (positive index) to the right
    Poly t = j <= k ? heis_mode(j, heis_mode(k, p)) : heis_mode(k, heis_mode(j, p));
    for (const auto& [m, c] : t) out[m] += c / 2;
  }
  std::erase_if(out, [](const auto& kv) { return sgn(kv.second) == 0; });
  return out;
}

Poly to_poly(const VOAPresentation& v, const Vec& x) {
  Poly p;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (sgn(x[i]) != 0) p[parse_label(v.basis().label(i))] += x[i];
  return p;
}

}  // namespace

TEST_CASE("graded dimensions match partition counts") {
  auto heis = make_heisenberg(8);
  for (long n = 0; n <= 8; ++n) CHECK(static_cast<long>(heis->basis().dim(n)) == partitions(n, 1));
  auto vir = make_virasoro(make_rat(1, 2), 9);
  for (long n = 0; n <= 9; ++n) CHECK(static_cast<long>(vir->basis().dim(n)) == partitions(n, 2));
  CHECK(heis->basis().dims() == std::vector<std::size_t>{1, 1, 2, 3, 5, 7, 11, 15, 22});
  CHECK(vir->basis().dims() == std::vector<std::size_t>{1, 0, 1, 1, 2, 2, 4, 4, 7, 8});
}

TEST_CASE("Heisenberg generator and conformal vector") {
  auto v = make_heisenberg(5);
  const std::size_t a = v->generator_vectors()[0];
  CHECK(v->basis().label(a) == "a(-1)1");
  CHECK(v->mode(a, 1, a) == unit_vec(v->dim(), v->vacuum()));
  CHECK(is_zero(v->mode(a, 0, a)));
  CHECK(v->central_charge() == 1);
  const Vec& w = v->omega();
  CHECK(v->act(w, 3, w) == Rat(1, 2) * unit_vec(v->dim(), v->vacuum()));
  CHECK(v->act(w, 1, w) == Rat(2) * w);
  Matrix l0 = v->l0_matrix();
  for (std::size_t i = 0; i < v->dim(); ++i) CHECK(l0(i, i) == v->weight(i));
}

TEST_CASE("Heisenberg Virasoro modes agree with the Sugawara construction on the Fock space") {
  auto v = make_heisenberg(6);
  for (std::size_t j = 0; j < v->dim(); ++j) {
    const long wt = v->weight(j);
    for (long n = -2; n <= wt; ++n) {
      if (wt - n > v->cutoff()) continue;
      Vec got = v->virasoro(n, unit_vec(v->dim(), j));
      Poly expect = sugawara(n, to_poly(*v, unit_vec(v->dim(), j)), 6);
      CHECK(to_poly(*v, got) == expect);
    }
  }
}

TEST_CASE("Virasoro vacuum module relations") {
  const Rat c = make_rat(-22, 5);
  auto v = make_virasoro(c, 6);
  const Vec& w = v->omega();
  CHECK(v->act(w, 3, w) == (c / 2) * unit_vec(v->dim(), v->vacuum()));
  CHECK(v->act(w, 1, w) == Rat(2) * w);
  CHECK(v->act(w, 0, w) == v->virasoro(-1, w));
  CHECK(is_zero(v->virasoro(-1, unit_vec(v->dim(), v->vacuum()))));
  Matrix l0 = v->l0_matrix();
  for (std::size_t i = 0; i < v->dim(); ++i) CHECK(l0(i, i) == v->weight(i));
  CHECK(v->l1_matrix().apply(w) == zero_vec(v->dim()));
}

TEST_CASE("axioms hold exhaustively on small presentations") {
  auto heis = make_heisenberg(4);
  auto r = axiom_check(heis->adjoint(), 0, 0);
  CHECK(r.exhaustive);
  CHECK(r.passed);
  CHECK(r.checked > 0);
  auto vir = make_virasoro(make_rat(1, 2), 6);
  auto rv = axiom_check(vir->adjoint(), 0, 0);
  CHECK(rv.exhaustive);
  CHECK(rv.passed);
}

TEST_CASE("sampled axioms on larger presentations and induced modules") {
  auto heis = make_heisenberg(7);
  CHECK(axiom_check(heis->adjoint(), 400, 7).passed);
  Matrix z(1, 1);
  z(0, 0) = make_rat(3, 2);
  auto m = make_highest_weight_module(heis, {z}, 5, make_rat(9, 8));
  CHECK(m.basis().dims() == std::vector<std::size_t>{1, 1, 2, 3, 5, 7});
  CHECK(axiom_check(m, 400, 3).passed);
  // L(0) on the top is lambda^2 / 2
  Vec top = unit_vec(m.dim(), 0);
  CHECK(m.virasoro(0, top) == make_rat(9, 8) * top);

  auto vir = make_virasoro(make_rat(7, 10), 6);
  Matrix h(1, 1);
  h(0, 0) = make_rat(3, 5);
  auto vm = make_highest_weight_module(vir, {h}, 5, make_rat(3, 5));
  CHECK(vm.basis().dims() == std::vector<std::size_t>{1, 1, 2, 3, 5, 7});
  CHECK(vm.virasoro(0, unit_vec(vm.dim(), 0)) == make_rat(3, 5) * unit_vec(vm.dim(), 0));
  CHECK(axiom_check(vm, 300, 11).passed);
}

TEST_CASE("a corrupted structure constant is detected with a witness") {
  auto heis = make_heisenberg(4);
  auto adj = heis->adjoint();
  const std::size_t a = heis->generator_vectors()[0];
  // a_{-1} a lives at level 2; perturb its first coordinate
  auto bad = corrupt_module(adj, a, a, 2, 0, Rat(1));
  auto r = axiom_check(bad, 0, 0);
  CHECK_FALSE(r.passed);
  REQUIRE(r.witness.has_value());
  CHECK(!r.witness->law.empty());
}

TEST_CASE("opposite vertex operator") {
  auto v = make_virasoro(make_rat(1, 2), 7);
  auto adj = v->adjoint();
  const Vec one = unit_vec(v->dim(), v->vacuum());
  // vacuum acts trivially
  auto s1 = y_opposite(adj, one, v->omega());
  for (long e = s1.window().lo; e <= s1.window().hi; ++e) {
    if (e == 0) {
      CHECK(s1.coeff(e) == v->omega());
    } else {
      CHECK(is_zero(s1.coeff(e)));
    }
  }
  // Y°(omega, x)1 = x^{-4} (omega + x^{-1} L(-1) omega + ...)
  auto s = y_opposite(adj, v->omega(), one);
  CHECK(s.region() == Region::AtInfinity);
  CHECK(s.coeff(-4) == v->omega());
  CHECK(s.coeff(-5) == v->virasoro(-1, v->omega()));
  CHECK(s.coeff(-6) == Rat(1, 2) * v->virasoro(-1, v->virasoro(-1, v->omega())));
  CHECK(is_zero(s.coeff(-3)));
}

TEST_CASE("applying the opposite twist twice recovers Y") {
  auto v = make_virasoro(make_rat(1, 2), 7);
  auto adj = v->adjoint();
  const long N = v->cutoff();
  Matrix l1 = v->l1_matrix();
  for (std::size_t iv = 0; iv < v->dim(); ++iv) {
    const long wt = v->weight(iv);
    for (std::size_t iw = 0; iw < v->dim(); ++iw) {
      const long lw = v->weight(iw);
      if (wt + lw > N) continue;
      const Vec w = unit_vec(v->dim(), iw);
      std::vector<VectorSeries> parts;
      Vec lj = unit_vec(v->dim(), iv);
      for (long j = 0; j <= wt; ++j) {
        parts.push_back(y_opposite(adj, lj, w));
        lj = l1.apply(lj);
      }
      for (long t = -wt - lw; t <= N - lw - wt; ++t) {
        Vec acc = zero_vec(v->dim());
        for (long j = 0; j <= wt; ++j) {
          const Rat sgnw = (wt % 2) ? -1 : 1;
          const Vec& sj = parts[static_cast<std::size_t>(j)].coeff(j - 2 * wt - t);
          if (!sj.empty()) axpy(acc, sgnw / factorial(j), sj);
        }
        CHECK(acc == v->mode(iv, -t - 1, iw));
      }
    }
  }
}

TEST_CASE("argument shift of the opposite operator") {
  auto v = make_heisenberg(5);
  auto adj = v->adjoint();
  const std::size_t a = v->generator_vectors()[0];
  const Vec one = unit_vec(v->dim(), v->vacuum());
  // Y°(a, y)1 = -y^{-2} a - y^{-3} a(-2)1 - ... ; check the x^{-2} coefficient after y = x + 3
  auto s = y_opposite(adj, unit_vec(v->dim(), a), one);
  auto sh = shift_series(s, Rat(3));
  // coefficient x^{-2} collects s_{-2}, s_{-3}, ... down to the window bottom
  Vec full = zero_vec(v->dim());
  for (long e = -2; e >= s.window().lo; --e) axpy(full, binomial(e, e + 2) * ipow(Rat(3), e + 2), s.coeff(e));
  CHECK(sh.coeff(-2) == full);
}

TEST_CASE("rescaled structures satisfy the axioms") {
  auto heis = make_heisenberg(4);
  for (const Rat& z : {Rat(2), make_rat(1, 3)}) {
    auto r = rescale_module(heis->adjoint(), z);
    CHECK(axiom_check(r, 0, 0).passed);
    // Y^(z)(a, x) = z Y(a, zx): a_n scales by z^{-n}
    const std::size_t a = heis->generator_vectors()[0];
    CHECK(r.mode(a, 1, a) == (1 / z) * heis->mode(a, 1, a));
    CHECK(r.mode(a, -1, a) == z * heis->mode(a, -1, a));
  }
  auto vir = make_virasoro(make_rat(1, 2), 6);
  CHECK(axiom_check(rescale_module(vir->adjoint(), make_rat(-5, 7)), 0, 0).passed);
}

TEST_CASE("tensor products") {
  auto h = make_heisenberg(4);
  auto t = tensor_voa(h, h, 4);
  CHECK(t->central_charge() == 2);
  for (long n = 0; n <= 4; ++n) {
    long expect = 0;
    for (long k = 0; k <= n; ++k) expect += partitions(k, 1) * partitions(n - k, 1);
    CHECK(static_cast<long>(t->basis().dim(n)) == expect);
  }
  CHECK(axiom_check(t->adjoint(), 300, 5).passed);
  CHECK(t->act(t->omega(), 3, t->omega()) == Rat(1) * unit_vec(t->dim(), t->vacuum()));
  auto tm = tensor_module(h->adjoint(), h->adjoint(), t, 3);
  CHECK(axiom_check(tm, 300, 9).passed);
}

TEST_CASE("quotient by a generated submodule") {
  // The Virasoro vacuum module at c = 1/2 has a singular vector at weight 6.
  auto vir = make_virasoro(make_rat(1, 2), 7);
  auto adj = vir->adjoint();
  const long lvl = 6;
  std::vector<Vec> level6;
  Matrix l1 = vir->l1_matrix();
  Matrix l2(vir->dim(), vir->dim());
  for (std::size_t j = 0; j < vir->dim(); ++j) l2.set_col(j, vir->virasoro(2, unit_vec(vir->dim(), j)));
  // vectors at level 6 killed by L(1) and L(2)
  const std::size_t off = vir->basis().offset(lvl), d = vir->basis().dim(lvl);
  Matrix stacked(2 * vir->dim(), d);
  for (std::size_t k = 0; k < d; ++k) {
    Vec c1 = l1.col(off + k), c2 = l2.col(off + k);
    for (std::size_t r = 0; r < vir->dim(); ++r) {
      stacked(r, k) = c1[r];
      stacked(vir->dim() + r, k) = c2[r];
    }
  }
  auto ns = nullspace(stacked);
  REQUIRE(ns.size() == 1);
  Vec sing = vir->basis().embed(ns[0], lvl);
  auto q = quotient_module(adj, {sing});
  CHECK(q.module.basis().dim(6) == vir->basis().dim(6) - 1);
  CHECK(q.module.basis().dim(7) == vir->basis().dim(7) - 1);
  CHECK(axiom_check(q.module, 300, 1).passed);
}
