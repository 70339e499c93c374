#ifndef ZHUKIT_FORMAL_HPP
#define ZHUKIT_FORMAL_HPP

#include <zhukit/linalg.hpp>
#include <zhukit/rational.hpp>

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace zhukit {

/// Finite Laurent polynomial: exponent -> nonzero coefficient.
using LaurentPolynomial = std::map<long, Rat>;

/// Where a series came from, which decides which side of its window is
/// known to be zero.
///
/// AtZero: lower-truncated; no terms below window.lo, coefficients are
/// certified for every exponent <= window.hi.
/// AtInfinity: upper-truncated; no terms above window.hi, coefficients are
/// certified for every exponent >= window.lo.
/// LaurentPoly: finite support inside the window, known everywhere.
enum class Region { AtZero, AtInfinity, LaurentPoly };

std::string region_name(Region r);
Region parse_region(const std::string& name);

struct Window {
  long lo = 0;
  long hi = -1;
  bool contains(long e) const { return lo <= e && e <= hi; }
  bool empty() const { return lo > hi; }
  friend bool operator==(const Window&, const Window&) = default;
};

// Coefficient helpers so the series template works for scalars, graded
// vectors and polynomial coefficients alike.
namespace coeff_ops {

inline bool zero(const Rat& q) { return sgn(q) == 0; }
inline bool zero(const Vec& v) { return is_zero(v); }
inline bool zero(const LaurentPolynomial& p) { return p.empty(); }

inline void add_scaled(Rat& acc, const Rat& s, const Rat& x) { acc += s * x; }
inline void add_scaled(Vec& acc, const Rat& s, const Vec& x) {
  if (acc.empty()) acc.assign(x.size(), Rat(0));
  axpy(acc, s, x);
}
inline void add_scaled(LaurentPolynomial& acc, const Rat& s, const LaurentPolynomial& x) {
  for (const auto& [e, c] : x) {
    Rat& slot = acc[e];
    slot += s * c;
    if (sgn(slot) == 0) acc.erase(e);
  }
}

}  // namespace coeff_ops

/// Bilateral formal series with a certified window of exponents.
template <class T>
class WindowedSeries {
 public:
  WindowedSeries() = default;
  WindowedSeries(Region region, Window window) : region_(region), window_(window) {}

  Region region() const { return region_; }
  Window window() const { return window_; }

  bool known(long e) const {
    switch (region_) {
      case Region::AtZero: return e <= window_.hi;
      case Region::AtInfinity: return e >= window_.lo;
      case Region::LaurentPoly: return true;
    }
    return false;
  }

  /// Coefficient of x^e; throws WindowError when e is not certified.
  T coeff(long e) const {
    if (!known(e)) {
      throw WindowError("exponent " + std::to_string(e) + " outside certified window [" +
                        std::to_string(window_.lo) + "," + std::to_string(window_.hi) + "]");
    }
    auto it = terms_.find(e);
    return it == terms_.end() ? T{} : it->second;
  }

  /// Stores a coefficient; e must lie in [lo, hi].
  void set(long e, T value) {
    if (!window_.contains(e)) throw WindowError("cannot store exponent " + std::to_string(e) + " outside window");
    if (coeff_ops::zero(value)) {
      terms_.erase(e);
    } else {
      terms_[e] = std::move(value);
    }
  }

  void add_to(long e, const Rat& s, const T& value) {
    if (!window_.contains(e)) throw WindowError("cannot store exponent " + std::to_string(e) + " outside window");
    T& slot = terms_[e];
    coeff_ops::add_scaled(slot, s, value);
    if (coeff_ops::zero(slot)) terms_.erase(e);
  }

  /// Nonzero terms, ascending by exponent.
  const std::map<long, T>& terms() const { return terms_; }

  /// Same region, narrower certified window (dropping terms outside it).
  WindowedSeries restrict_to(Window w) const {
    Window nw{std::max(w.lo, window_.lo), std::min(w.hi, window_.hi)};
    WindowedSeries out(region_, nw);
    for (const auto& [e, c] : terms_)
      if (nw.contains(e)) out.terms_[e] = c;
    return out;
  }

 private:
  Region region_ = Region::LaurentPoly;
  Window window_{};
  std::map<long, T> terms_;
};

using ScalarSeries = WindowedSeries<Rat>;
using VectorSeries = WindowedSeries<Vec>;

/// Region and window of a product of two series; throws std::domain_error
/// for an at-zero times at-infinity product.
std::pair<Region, Window> product_shape(Region ra, Window wa, Region rb, Window wb);
std::pair<Region, Window> sum_shape(Region ra, Window wa, Region rb, Window wb);

/// a(x) * b(x) with scalar a, on the intersection of what both certify.
template <class T>
WindowedSeries<T> multiply(const ScalarSeries& a, const WindowedSeries<T>& b) {
  auto [region, window] = product_shape(a.region(), a.window(), b.region(), b.window());
  WindowedSeries<T> out(region, window);
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) {
      long e = ea + eb;
      if (window.contains(e)) out.add_to(e, ca, cb);
    }
  return out;
}

template <class T>
WindowedSeries<T> add(const WindowedSeries<T>& a, const WindowedSeries<T>& b, const Rat& sb = Rat(1)) {
  auto [region, window] = sum_shape(a.region(), a.window(), b.region(), b.window());
  WindowedSeries<T> out(region, window);
  for (const auto& [e, c] : a.terms())
    if (window.contains(e)) out.add_to(e, Rat(1), c);
  for (const auto& [e, c] : b.terms())
    if (window.contains(e)) out.add_to(e, sb, c);
  return out;
}

template <class T>
WindowedSeries<T> scale(const Rat& s, const WindowedSeries<T>& a) {
  WindowedSeries<T> out(a.region(), a.window());
  for (const auto& [e, c] : a.terms()) out.add_to(e, s, c);
  return out;
}

ScalarSeries laurent_series(const LaurentPolynomial& p);
ScalarSeries monomial(long e, const Rat& c = Rat(1));

/// Which binomial is being expanded.
enum class BinomBase {
  XMinusZ,  // (x - z)^n, nonnegative powers of z: at infinity
  ZMinusX,  // (z - x)^n, nonnegative powers of x: at zero
};

/// Convention-mandated expansion of (x-z)^n or (z-x)^n over the window.
/// Nonnegative n yields the polynomial itself (LaurentPoly region).
ScalarSeries binom_expand(BinomBase base, long n, const Rat& z, Window window);

/// (x1 - x2)^n as a series in x1 with polynomial-in-x2 coefficients,
/// expanded in nonnegative powers of x2.
WindowedSeries<LaurentPolynomial> binom_expand_two(long n, Window window);

/// x^{-l} (x - z)^{-k} g(x).
struct RationalForm {
  LaurentPolynomial g;
  long l = 0;
  long k = 0;
  Rat z = 1;
  friend bool operator==(const RationalForm&, const RationalForm&) = default;
};

/// Laurent expansion of rf at 0 or at infinity, certified on the window.
ScalarSeries iota_expand(const RationalForm& rf, Region region, Window window);

/// Recovers g from the at-infinity series s with certificate (l, k).
/// Throws CertificateError naming the first exponent that survives below
/// the polynomial range, WindowError when the window cannot determine g.
RationalForm recompose(const ScalarSeries& s, long l, long k, const Rat& z);

class CertificateError : public std::runtime_error {
 public:
  CertificateError(const std::string& what, long exponent) : std::runtime_error(what), exponent_(exponent) {}
  long exponent() const { return exponent_; }

 private:
  long exponent_;
};

template <class T>
T residue(const WindowedSeries<T>& s) {
  return s.coeff(-1);
}

}  // namespace zhukit

#endif  // ZHUKIT_FORMAL_HPP
