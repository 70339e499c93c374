#ifndef ZHUKIT_LIEALG_HPP
#define ZHUKIT_LIEALG_HPP

#include <zhukit/linalg.hpp>
#include <zhukit/voa.hpp>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace zhukit {

/// v(m) = v (x) t^m for a basis index v; deg v(m) = wt v - m - 1.
struct ModeSymbol {
  std::size_t v = 0;
  long m = 0;
  friend auto operator<=>(const ModeSymbol&, const ModeSymbol&) = default;
};

/// Element of g(V) in normal form: a combination of mode symbols whose
/// vectors are section basis vectors (not in the image of L(-1)).
using LieElement = std::map<ModeSymbol, Rat>;

/// The Lie algebra g(V) = V (x) C[t, t^{-1}] / D(...) for a truncated VOA.
class BorcherdsLie {
 public:
  explicit BorcherdsLie(VOAPtr voa);

  const VOAPresentation& voa() const { return *voa_; }

  /// Basis indices spanning the chosen section of V / L(-1)V, per weight.
  const std::vector<std::size_t>& section() const { return section_; }

  long degree(const ModeSymbol& s) const { return voa_->weight(s.v) - s.m - 1; }

  /// Normal form of x(m) for an arbitrary V-vector x.
  LieElement normalize(const Vec& x, long m) const;
  LieElement symbol(std::size_t v, long m) const { return normalize(unit_vec(voa_->dim(), v), m); }
  /// Normal form of (L(-1)x)(m), which equals -m x(m-1).
  LieElement d_normalize(const Vec& x, long m) const;

  /// [u(m), v(n)] = sum_i C(m,i) (u_i v)(m+n-i); CutoffError when some u_i v
  /// lies above the cutoff.
  LieElement bracket(const ModeSymbol& a, const ModeSymbol& b) const;
  LieElement bracket(const LieElement& a, const LieElement& b) const;

  /// The central symbol 1(-1).
  ModeSymbol central() const { return ModeSymbol{voa_->vacuum(), -1}; }

  std::string to_string(const LieElement& e) const;

 private:
  VOAPtr voa_;
  std::vector<std::size_t> section_;
  // per weight k >= 1: L(-1) from V_{k-1} to V_k (local coordinates) and its image
  std::vector<Matrix> lminus1_;
  std::vector<Subspace> image_;
};

void add_to(LieElement& acc, const Rat& s, const LieElement& x);

}  // namespace zhukit

#endif  // ZHUKIT_LIEALG_HPP
