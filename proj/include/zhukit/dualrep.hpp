#ifndef ZHUKIT_DUALREP_HPP
#define ZHUKIT_DUALREP_HPP

#include <zhukit/formal.hpp>
#include <zhukit/linalg.hpp>
#include <zhukit/voa.hpp>
#include <zhukit/zhu.hpp>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace zhukit {

/// (k, l): x^l (x - z)^k f Y°(v,x) w is a polynomial.
struct Certificate {
  long k = 0;
  long l = 0;
  friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// A U-valued functional on W_{<= domain} carrying pole certificates.
struct DualElement {
  std::shared_ptr<const ModulePresentation> module;
  Matrix f;  // dim U x dim W; columns above `domain` are unused
  int domain = 0;
  Rat z = -1;
  std::map<std::size_t, Certificate> certificates;  // by V basis index

  std::size_t u_dim() const { return f.rows(); }
  /// f(w) for a W-vector supported on levels <= domain.
  Vec operator()(const Vec& w) const;
};

/// Where a certificate check failed.
struct CertificateViolation {
  std::size_t v = 0;
  std::size_t w = 0;
  long exponent = 0;
  std::string describe() const;
};

enum class Side { Left, Right };

/// f Y°(v,x) w as a U-valued at-infinity series, certified on levels <= domain.
VectorSeries dual_fyo(const DualElement& f, std::size_t v, std::size_t w);

/// Validates certificate (k,l) for v on every w the window can decide.
/// Returns the first violation, if any.
std::optional<CertificateViolation> check_certificate(const DualElement& f, std::size_t v, const Certificate& c);

/// Largest W level on which Y^L(v,x)f and Y^R(v,x)f are determined.
int reduced_domain(const DualElement& f, std::size_t v, const Certificate& c);

/// (Y^side(v,x) f)(w) expanded at 0 through exponent `hi`, per U coordinate.
VectorSeries dual_series(Side side, const DualElement& f, std::size_t v, std::size_t w, long hi);

/// Mode coefficients of Y^side(v,x) f: entry n is the coefficient of
/// x^{-n-1}, a functional on W_{<= reduced domain}.
struct ModeActionResult {
  int domain = 0;
  std::map<long, DualElement> modes;
};
ModeActionResult dual_act(Side side, std::size_t v, const DualElement& f, long n_min, long n_max);

/// f = phi o projection, phi given on the A(W,z) quotient basis (dim U x dim A(W,z)),
/// with certificates (wt v, wt v) attached and validated for every basis v.
DualElement lift_functional(const Matrix& phi, const ZhuBimodule& b);

/// Result of the Omega-membership test.
struct MembershipResult {
  bool member = false;           // (wt v, wt v) regularity for every v
  bool vanishes_on_o = false;    // f kills the computed O(W,z) on its domain
  std::optional<CertificateViolation> witness;
  bool consistent() const { return member == vanishes_on_o; }
};
MembershipResult omega_membership(const DualElement& f);

/// Smallest certificate (by k + l) with k, l <= bound that validates. When
/// several splits of that total validate, returns their join instead.
std::optional<Certificate> find_certificate(const DualElement& f, std::size_t v, long bound);

/// The three-term identity at every (x^e, x0^{-n-1}) bicoefficient with
/// n in [n_lo, n_hi], e in [e_lo, e_hi], on each w the windows determine:
///   [x^e](x-z)^n fY°(v,x)w - (-1)^n [x^e](z-x)^n (Y^R(v,x)f)(w)
///     = sum_i z^{-e-i-1} C(e+i,i) (-1)^i (v^L_{n+i} f)(w).
CheckTally three_term_check(const DualElement& f, std::size_t v, long n_lo, long n_hi, long e_lo, long e_hi);

/// u^L_m v^R_n f = v^R_n u^L_m f for m, n in [lo, hi], compared on the common
/// domain.  The inner images carry no certificates of their own, so the
/// smallest one validated on their window (up to `bound`) is attached;
/// pairs without one are counted as skipped.
CheckTally commutativity_check(const DualElement& f, std::size_t u, std::size_t v, long lo, long hi, long bound);

/// Depth-one generation of Ind U inside D_{P(-1)}(W,U) for W = V.
struct InducedGeneration {
  std::vector<DualElement> u_vectors;  // images of a basis of U
  /// depth-one images v^L_n f_u by degree wt v - n - 1.
  std::map<long, std::vector<DualElement>> images;
  int image_domain = 0;
  /// dimension of the span of the degree-d images on the common domain
  std::map<long, std::size_t> degree_dims;
  bool u_vectors_in_omega = false;
  bool omega_images_are_lifts = false;
  bool positive_modes_vanish = false;
};
InducedGeneration induced_generate(const ZhuAlgebra& a, const ZhuModule& u, int max_weight, long max_degree);

}  // namespace zhukit

#endif  // ZHUKIT_DUALREP_HPP
