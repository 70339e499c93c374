#include <doctest.h>

#include <zhukit/liealg.hpp>

using namespace zhukit;

namespace {

LieElement single(std::size_t v, long m, const Rat& c = Rat(1)) { return LieElement{{ModeSymbol{v, m}, c}}; }

}  // namespace

TEST_CASE("Heisenberg bracket") {
  auto h = make_heisenberg(4);
  BorcherdsLie g(h);
  const std::size_t a = h->generator_vectors()[0];
  CHECK(g.bracket(ModeSymbol{a, 1}, ModeSymbol{a, -1}) == single(h->vacuum(), -1));
  CHECK(g.bracket(ModeSymbol{a, 2}, ModeSymbol{a, -2}) == single(h->vacuum(), -1, Rat(2)));
  CHECK(g.bracket(ModeSymbol{a, 1}, ModeSymbol{a, 1}).empty());
  for (long m = 0; m <= 3; ++m) CHECK(g.bracket(ModeSymbol{h->vacuum(), m}, ModeSymbol{a, -2}).empty());
}

TEST_CASE("D-relation normal form") {
  auto v = make_virasoro(make_rat(1, 2), 6);
  BorcherdsLie g(v);
  const Vec& w = v->omega();
  const std::size_t om = v->generator_vectors()[0];
  CHECK(g.d_normalize(w, 2) == single(om, 1, Rat(-2)));
  CHECK(g.d_normalize(w, 0).empty());
  // (L(-1)^2 v)(m) = m(m-1) v(m-2)
  for (long m = -3; m <= 4; ++m) {
    LieElement expect;
    if (m * (m - 1) != 0) expect = single(om, m - 2, Rat(m * (m - 1)));
    CHECK(g.normalize(v->virasoro(-1, v->virasoro(-1, w)), m) == expect);
  }
  // the vacuum contributes only 1(-1)
  CHECK(g.symbol(v->vacuum(), 0).empty());
  CHECK(g.symbol(v->vacuum(), -1) == single(v->vacuum(), -1));
  // [omega(2), omega(0)] = 2 omega(1)
  CHECK(g.bracket(ModeSymbol{om, 2}, ModeSymbol{om, 0}) == single(om, 1, Rat(2)));
}

TEST_CASE("Virasoro relations with the central term") {
  const Rat c = make_rat(-22, 5);
  auto v = make_virasoro(c, 6);
  BorcherdsLie g(v);
  const std::size_t om = v->generator_vectors()[0];
  for (long m = -3; m <= 3; ++m)
    for (long n = -3; n <= 3; ++n) {
      LieElement lhs = g.bracket(ModeSymbol{om, m + 1}, ModeSymbol{om, n + 1});
      LieElement rhs;
      if (m != n) rhs = single(om, m + n + 1, Rat(m - n));
      if (m + n == 0) add_to(rhs, c * Rat(m * m * m - m) / 12, single(v->vacuum(), -1));
      CHECK(lhs == rhs);
    }
}

TEST_CASE("antisymmetry, Jacobi identity, and degree additivity") {
  auto v = make_virasoro(make_rat(1, 2), 6);
  BorcherdsLie g(v);
  std::vector<ModeSymbol> syms;
  for (auto s : g.section())
    for (long m = -2; m <= 3; ++m) syms.push_back(ModeSymbol{s, m});
  std::size_t jacobi = 0;
  for (const auto& x : syms)
    for (const auto& y : syms) {
      LieElement xy, yx;
      try {
        xy = g.bracket(x, y);
        yx = g.bracket(y, x);
      } catch (const CutoffError&) {
        continue;
      }
      LieElement sum = xy;
      add_to(sum, Rat(1), yx);
      CHECK(sum.empty());
      for (const auto& [s, c] : xy) CHECK(g.degree(s) == g.degree(x) + g.degree(y));
    }
  for (std::size_t i = 0; i < syms.size(); i += 3)
    for (std::size_t j = 1; j < syms.size(); j += 4)
      for (std::size_t k = 2; k < syms.size(); k += 5) {
        const LieElement x{{syms[i], 1}}, y{{syms[j], 1}}, z{{syms[k], 1}};
        try {
          LieElement t = g.bracket(x, g.bracket(y, z));
          add_to(t, Rat(1), g.bracket(y, g.bracket(z, x)));
          add_to(t, Rat(1), g.bracket(z, g.bracket(x, y)));
          CHECK(t.empty());
          ++jacobi;
        } catch (const CutoffError&) {
        }
      }
  CHECK(jacobi > 50);
}
