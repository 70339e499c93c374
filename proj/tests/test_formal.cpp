#include <doctest.h>

#include <zhukit/formal.hpp>

#include <random>

using namespace zhukit;

namespace {

// Geometric-series oracle: 1/(x - z) at zero is -sum z^{-e-1} x^e, at
// infinity sum z^{-e-1} x^e over e <= -1.  Powers are built by repeated
// convolution rather than binomial coefficients.
std::map<long, Rat> geometric_power(const Rat& z, long k, Region region, long lo, long hi) {
  std::map<long, Rat> acc{{0, Rat(1)}};
  for (long step = 0; step < k; ++step) {
    std::map<long, Rat> next;
    for (const auto& [e, c] : acc) {
      if (region == Region::AtZero) {
        for (long j = 0; e + j <= hi; ++j) next[e + j] += c * (-ipow(z, -j - 1));
      } else {
        for (long j = -1; e + j >= lo; --j) next[e + j] += c * ipow(z, -j - 1);
      }
    }
    acc = next;
  }
  return acc;
}

RationalForm random_form(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coef(-4, 4), deg(0, 3), pole(0, 3), zs(1, 5);
  RationalForm rf;
  int d = deg(rng);
  for (int e = 0; e <= d; ++e) {
    Rat c = make_rat(coef(rng), 1 + (coef(rng) + 4) % 3);
    if (sgn(c) != 0) rf.g[e] = c;
  }
  if (rf.g.empty()) rf.g[0] = 1;
  rf.l = pole(rng);
  rf.k = pole(rng);
  rf.z = make_rat(zs(rng) * ((coef(rng) >= 0) ? 1 : -1), zs(rng));
  return rf;
}

}  // namespace

TEST_CASE("binom_expand examples") {
  auto s = binom_expand(BinomBase::XMinusZ, -1, Rat(1), {-6, -1});
  CHECK(s.region() == Region::AtInfinity);
  for (long e = -6; e <= -1; ++e) CHECK(s.coeff(e) == 1);
  CHECK(s.terms().size() == 6);

  auto p = binom_expand(BinomBase::XMinusZ, 2, Rat(3), {0, 2});
  CHECK(p.region() == Region::LaurentPoly);
  CHECK(p.coeff(2) == 1);
  CHECK(p.coeff(1) == -6);
  CHECK(p.coeff(0) == 9);
  auto q = binom_expand(BinomBase::ZMinusX, 2, Rat(3), {0, 2});
  // (3 - x)^2 = (x - 3)^2
  CHECK(q.terms() == p.terms());

  auto t = binom_expand(BinomBase::ZMinusX, -1, Rat(2), {0, 4});
  CHECK(t.region() == Region::AtZero);
  for (long i = 0; i <= 4; ++i) CHECK(t.coeff(i) == ipow(Rat(2), -1 - i));
  CHECK_THROWS_AS(t.coeff(5), WindowError);

  CHECK_THROWS_AS(binom_expand(BinomBase::XMinusZ, -2, Rat(0), {-3, 0}), std::domain_error);
}

TEST_CASE("two-variable binomial keeps nonnegative powers of the second variable") {
  auto s = binom_expand_two(-2, {-5, -2});
  // (x1 - x2)^{-2} = sum (i+1) x1^{-2-i} x2^i
  for (long i = 0; i <= 3; ++i) {
    auto c = s.coeff(-2 - i);
    REQUIRE(c.size() == 1);
    CHECK(c.at(i) == i + 1);
  }
}

TEST_CASE("iota_expand examples") {
  RationalForm rf{{{0, Rat(1)}}, 0, 1, Rat(1)};
  auto inf = iota_expand(rf, Region::AtInfinity, {-4, -1});
  for (long e = -4; e <= -1; ++e) CHECK(inf.coeff(e) == 1);
  auto zero = iota_expand(rf, Region::AtZero, {0, 3});
  for (long e = 0; e <= 3; ++e) CHECK(zero.coeff(e) == -1);

  RationalForm mono{{{0, Rat(1)}}, 1, 0, Rat(1)};
  CHECK(iota_expand(mono, Region::AtZero, {-2, 2}).terms() == iota_expand(mono, Region::AtInfinity, {-2, 2}).terms());
  CHECK(iota_expand(mono, Region::AtZero, {-2, 2}).coeff(-1) == 1);
}

TEST_CASE("iota_expand agrees with the convolution oracle") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 40; ++t) {
    RationalForm rf = random_form(rng);
    for (Region region : {Region::AtZero, Region::AtInfinity}) {
      const long lo = -12, hi = 6;
      auto s = iota_expand(rf, region, {lo, hi});
      auto geo = geometric_power(rf.z, rf.k, region, lo - 10, hi + 10);
      for (long e = lo; e <= hi; ++e) {
        Rat expect(0);
        for (const auto& [j, gj] : rf.g)
          for (const auto& [i, ci] : geo)
            if (j - rf.l + i == e) expect += gj * ci;
        CHECK(s.coeff(e) == expect);
      }
    }
  }
}

TEST_CASE("recompose examples") {
  auto s = binom_expand(BinomBase::XMinusZ, -1, Rat(1), {-6, -1});
  auto rf = recompose(s, 0, 1, Rat(1));
  CHECK(rf.g == LaurentPolynomial{{0, Rat(1)}});

  auto poly = monomial(2);
  CHECK(recompose(poly, 0, 0, Rat(1)).g == LaurentPolynomial{{2, Rat(1)}});

  RationalForm target{{{3, Rat(1)}, {0, Rat(1)}}, 2, 1, Rat(2)};
  auto expanded = iota_expand(target, Region::AtInfinity, {-10, 5});
  CHECK(recompose(expanded, 2, 1, Rat(2)) == target);
}

TEST_CASE("recompose rejects a violated certificate with the exponent") {
  auto s = binom_expand(BinomBase::XMinusZ, -2, Rat(1), {-8, -1});
  try {
    recompose(s, 0, 1, Rat(1));
    FAIL("expected a certificate failure");
  } catch (const CertificateError& e) {
    CHECK(e.exponent() < 0);
  }
  CHECK_THROWS_AS(recompose(binom_expand(BinomBase::XMinusZ, -1, Rat(1), {-1, -1}), 0, 3, Rat(1)), WindowError);
}

TEST_CASE("residue examples") {
  auto s = add(monomial(-1, 3), monomial(2));
  CHECK(residue(s) == 3);
  CHECK(residue(binom_expand(BinomBase::XMinusZ, -1, Rat(1), {-3, -1})) == 1);
  RationalForm rf{{{0, Rat(1)}}, 0, 1, Rat(1)};
  CHECK(residue(iota_expand(rf, Region::AtZero, {0, 3})) == 0);
  auto narrow = binom_expand(BinomBase::XMinusZ, -1, Rat(1), {0, 4});
  CHECK_THROWS_AS(residue(narrow), WindowError);
}

TEST_CASE("products refuse to mix expansion regions") {
  auto a = binom_expand(BinomBase::XMinusZ, -1, Rat(1), {-3, -1});
  auto b = binom_expand(BinomBase::ZMinusX, -1, Rat(1), {0, 3});
  CHECK_THROWS_AS(multiply(a, b), std::domain_error);
}
