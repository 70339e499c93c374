#include <zhukit/formal.hpp>

#include <limits>

namespace zhukit {

std::string region_name(Region r) {
  switch (r) {
    case Region::AtZero: return "at-zero";
    case Region::AtInfinity: return "at-infinity";
    case Region::LaurentPoly: return "laurent-poly";
  }
  return "?";
}

Region parse_region(const std::string& name) {
  if (name == "at-zero") return Region::AtZero;
  if (name == "at-infinity") return Region::AtInfinity;
  if (name == "laurent-poly") return Region::LaurentPoly;
  throw std::invalid_argument("unknown series region: " + name);
}

std::pair<Region, Window> product_shape(Region ra, Window wa, Region rb, Window wb) {
  if (ra == Region::LaurentPoly && rb == Region::LaurentPoly)
    return {Region::LaurentPoly, {wa.lo + wb.lo, wa.hi + wb.hi}};
  if (ra == Region::LaurentPoly || rb == Region::LaurentPoly) {
    const Window& poly = ra == Region::LaurentPoly ? wa : wb;
    const Window& ser = ra == Region::LaurentPoly ? wb : wa;
    Region r = ra == Region::LaurentPoly ? rb : ra;
    if (r == Region::AtZero) return {r, {ser.lo + poly.lo, ser.hi + poly.lo}};
    return {r, {ser.lo + poly.hi, ser.hi + poly.hi}};
  }
  if (ra != rb) throw std::domain_error("cannot multiply an at-zero series by an at-infinity series");
  if (ra == Region::AtZero) return {ra, {wa.lo + wb.lo, std::min(wa.hi + wb.lo, wb.hi + wa.lo)}};
  return {ra, {std::max(wa.lo + wb.hi, wb.lo + wa.hi), wa.hi + wb.hi}};
}

std::pair<Region, Window> sum_shape(Region ra, Window wa, Region rb, Window wb) {
  if (ra == Region::LaurentPoly && rb == Region::LaurentPoly)
    return {Region::LaurentPoly, {std::min(wa.lo, wb.lo), std::max(wa.hi, wb.hi)}};
  if (ra == Region::LaurentPoly || rb == Region::LaurentPoly) {
    const Window& poly = ra == Region::LaurentPoly ? wa : wb;
    const Window& ser = ra == Region::LaurentPoly ? wb : wa;
    Region r = ra == Region::LaurentPoly ? rb : ra;
    if (r == Region::AtZero) return {r, {std::min(poly.lo, ser.lo), ser.hi}};
    return {r, {ser.lo, std::max(poly.hi, ser.hi)}};
  }
  if (ra != rb) throw std::domain_error("cannot add an at-zero series to an at-infinity series");
  if (ra == Region::AtZero) return {ra, {std::min(wa.lo, wb.lo), std::min(wa.hi, wb.hi)}};
  return {ra, {std::max(wa.lo, wb.lo), std::max(wa.hi, wb.hi)}};
}

ScalarSeries laurent_series(const LaurentPolynomial& p) {
  Window w{0, -1};
  if (!p.empty()) w = {p.begin()->first, p.rbegin()->first};
  ScalarSeries s(Region::LaurentPoly, w);
  for (const auto& [e, c] : p) s.set(e, c);
  return s;
}

ScalarSeries monomial(long e, const Rat& c) {
  ScalarSeries s(Region::LaurentPoly, {e, e});
  s.set(e, c);
  return s;
}

ScalarSeries binom_expand(BinomBase base, long n, const Rat& z, Window window) {
  if (n >= 0) {
    ScalarSeries s(Region::LaurentPoly, {0, n});
    for (long i = 0; i <= n; ++i) {
      Rat c = binomial(n, i);
      if (base == BinomBase::XMinusZ) {
        s.add_to(n - i, c * ipow(-z, i), Rat(1));
      } else {
        // (z - x)^n = sum C(n,i) z^{n-i} (-x)^i
        s.add_to(i, c * ipow(z, n - i) * ((i % 2) ? -1 : 1), Rat(1));
      }
    }
    return s;
  }
  if (sgn(z) == 0) throw std::domain_error("negative power of a binomial with z = 0");
  if (base == BinomBase::XMinusZ) {
    ScalarSeries s(Region::AtInfinity, {window.lo, std::max(window.hi, n)});
    for (long i = 0; n - i >= window.lo; ++i) s.set(n - i, binomial(n, i) * ipow(-z, i));
    return s;
  }
  ScalarSeries s(Region::AtZero, {std::min(window.lo, 0L), window.hi});
  for (long i = 0; i <= window.hi; ++i) s.set(i, binomial(n, i) * ipow(z, n - i) * ((i % 2) ? -1 : 1));
  return s;
}

WindowedSeries<LaurentPolynomial> binom_expand_two(long n, Window window) {
  Region r = n >= 0 ? Region::LaurentPoly : Region::AtInfinity;
  Window w = n >= 0 ? Window{0, n} : Window{window.lo, std::max(window.hi, n)};
  WindowedSeries<LaurentPolynomial> s(r, w);
  long last = n >= 0 ? n : n - window.lo;
  for (long i = 0; i <= last; ++i) {
    LaurentPolynomial c{{i, binomial(n, i) * ((i % 2) ? -1 : 1)}};
    s.set(n - i, c);
  }
  return s;
}

ScalarSeries iota_expand(const RationalForm& rf, Region region, Window window) {
  if (rf.l < 0 || rf.k < 0) throw std::invalid_argument("rational form exponents must be nonnegative");
  if (rf.k == 0 || region == Region::LaurentPoly) {
    if (rf.k != 0) throw std::invalid_argument("a pole at z has no laurent-poly expansion");
    LaurentPolynomial p;
    for (const auto& [e, c] : rf.g) p[e - rf.l] = c;
    return laurent_series(p);
  }
  if (sgn(rf.z) == 0) throw std::domain_error("rational form with k > 0 needs z != 0");
  if (rf.g.empty()) return ScalarSeries(region, window);
  const long gmin = rf.g.begin()->first;
  const long gmax = rf.g.rbegin()->first;
  if (region == Region::AtZero) {
    // (-z + x)^{-k} = sum_i C(-k,i) (-z)^{-k-i} x^i
    ScalarSeries s(region, {std::min(window.lo, gmin - rf.l), window.hi});
    for (const auto& [j, gj] : rf.g) {
      for (long i = 0; j - rf.l + i <= window.hi; ++i)
        s.add_to(j - rf.l + i, gj * binomial(-rf.k, i) * ipow(-rf.z, -rf.k - i), Rat(1));
    }
    return s;
  }
  // (x - z)^{-k} = sum_i C(-k,i) (-z)^i x^{-k-i}
  ScalarSeries s(region, {window.lo, std::max(window.hi, gmax - rf.l - rf.k)});
  for (const auto& [j, gj] : rf.g) {
    for (long i = 0; j - rf.l - rf.k - i >= window.lo; ++i)
      s.add_to(j - rf.l - rf.k - i, gj * binomial(-rf.k, i) * ipow(-rf.z, i), Rat(1));
  }
  return s;
}

RationalForm recompose(const ScalarSeries& s, long l, long k, const Rat& z) {
  if (l < 0 || k < 0) throw std::invalid_argument("certificate exponents must be nonnegative");
  if (k > 0 && sgn(z) == 0) throw std::domain_error("certificate with k > 0 needs z != 0");
  if (s.region() == Region::AtZero) throw std::domain_error("recompose expects an at-infinity series");
  ScalarSeries factor = multiply(binom_expand(BinomBase::XMinusZ, k, z, {0, k}), monomial(l));
  ScalarSeries t = multiply(factor, s);
  long from = std::numeric_limits<long>::min();
  if (t.region() == Region::AtInfinity) {
    from = t.window().lo;
    if (from > 0) {
      throw WindowError("window starting at " + std::to_string(s.window().lo) +
                        " is too short to recover the numerator with certificate (" + std::to_string(l) + "," +
                        std::to_string(k) + ")");
    }
  }
  RationalForm rf;
  rf.l = l;
  rf.k = k;
  rf.z = z;
  for (const auto& [e, c] : t.terms()) {
    if (e < from) continue;
    if (e < 0) {
      throw CertificateError("certificate (" + std::to_string(l) + "," + std::to_string(k) +
                                 ") violated: nonzero coefficient at x^" + std::to_string(e),
                             e);
    }
    rf.g[e] = c;
  }
  return rf;
}

}  // namespace zhukit
