#ifndef ZHUKIT_ZHU_HPP
#define ZHUKIT_ZHU_HPP

#include <zhukit/linalg.hpp>
#include <zhukit/voa.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace zhukit {

/// Res_x x^m (1 - z x)^n Y(v,x) w = sum_i C(n,i) (-z)^i v_{m+i} w for a
/// homogeneous-or-not v; CutoffError when a term leaves the cutoff.
Vec binomial_residue(const ModulePresentation& w_module, const Vec& v, const Vec& w, long m, long n, const Rat& z);

/// The spanning element Res_x x^{-n-2}(1 - zx)^{wt v + m} Y(v,x) w (n = m = 0
/// gives the defining generators of O(W,z)); v must be homogeneous.
Vec o_element(const ModulePresentation& w_module, const Vec& v, const Vec& w, const Rat& z, long n = 0, long m = 0);

/// Same with e^{x^{-1}L(1)} inserted in front of v.
Vec o_element_twisted(const ModulePresentation& w_module, const Vec& v, const Vec& w, const Rat& z, long n, long m);

/// u * v = Res_x x^{-1}(1+x)^{wt u} Y(u,x) v.
Vec zhu_star(const VOAPresentation& voa, const Vec& u, const Vec& v);
/// v *_{P(z)} w.
Vec left_pz(const ModulePresentation& w_module, const Vec& v, const Vec& w, const Rat& z);
/// w *_{P(z)} v.
Vec right_pz(const ModulePresentation& w_module, const Vec& w, const Vec& v, const Rat& z);

/// theta(v) = e^{L(1)} (-1)^{L(0)} v.
Vec theta(const VOAPresentation& voa, const Vec& v);
Matrix theta_matrix(const VOAPresentation& voa);

/// Pivot order used for every quotient of a graded space: higher levels are
/// eliminated first, so coset representatives have the lowest available level.
std::vector<std::size_t> quotient_priority(const GradedBasis& basis);

/// Span of the O(W,z) generators whose top level stays within `top`
/// (default: the cutoff).
Subspace o_subspace(const ModulePresentation& w_module, const Rat& z, int top = -1);

/// Pass/fail tally of one family of exact checks.
struct CheckTally {
  std::uint64_t checked = 0;
  std::uint64_t skipped = 0;
  std::uint64_t failed = 0;
  std::string witness;

  bool passed() const { return failed == 0; }
  void fail(const std::string& what) {
    ++failed;
    if (witness.empty()) witness = what;
  }
  void merge(const CheckTally& other);
};

struct ZhuChecks {
  CheckTally identity;
  CheckTally ideal;
  CheckTally assoc;
  CheckTally central;
  CheckTally theta;
  bool passed() const {
    return identity.passed() && ideal.passed() && assoc.passed() && central.passed() && theta.passed();
  }
};

/// A_N(V) = V_{<=N} / O_N(V).
class ZhuAlgebra {
 public:
  ZhuAlgebra(VOAPtr voa, Subspace o);

  const VOAPresentation& voa() const { return *voa_; }
  const VOAPtr& voa_ptr() const { return voa_; }
  int cutoff() const { return voa_->cutoff(); }
  const Subspace& o() const { return o_; }
  std::size_t dim() const { return reps_.size(); }
  /// Basis indices of V representing the quotient basis.
  const std::vector<std::size_t>& representatives() const { return reps_; }
  long rep_weight(std::size_t i) const { return voa_->weight(reps_[i]); }
  std::size_t unit() const { return unit_; }

  Vec project(const Vec& v) const { return o_.quotient_coords(v); }
  Vec lift(const Vec& q) const;

  /// Coordinates of [rep_i] * [rep_j], when the product stays within the cutoff.
  std::optional<Vec> product(std::size_t i, std::size_t j) const;
  /// Coset product of arbitrary quotient vectors (CutoffError if a term escapes).
  Vec multiply(const Vec& a, const Vec& b) const;
  /// theta on the quotient.
  const Matrix& theta() const { return theta_; }

 private:
  VOAPtr voa_;
  Subspace o_;
  std::vector<std::size_t> reps_;
  std::size_t unit_ = 0;
  Matrix theta_;
};

ZhuAlgebra zhu_algebra(const VOAPtr& voa);
/// Ideal, associativity, identity, centrality, and theta checks on all
/// in-cutoff basis triples (total weight <= N).
ZhuChecks zhu_checks(const ZhuAlgebra& a);

/// A word in the generator classes of A(V): generator indices applied left
/// to right, [g_{i1}] * [g_{i2}] * ...
using ZhuWord = std::vector<std::size_t>;

/// Expresses every quotient basis element as a combination of generator
/// words of total weight <= N.  Column j of `coefficients` holds the word
/// coefficients of quotient basis element j.  `spans` is false when words
/// do not span the quotient.
struct GeneratorExpansion {
  std::vector<ZhuWord> words;
  std::vector<Vec> word_vectors;  // quotient coordinates of each word
  Matrix coefficients;
  bool spans = false;
};
GeneratorExpansion expand_in_generators(const ZhuAlgebra& a);

/// A finite-dimensional A(V)-module, given by the action of each
/// generator class [g_c] and of each quotient basis element.
struct ZhuModule {
  std::size_t dim = 0;
  std::vector<Matrix> generator_action;
  std::vector<Matrix> basis_action;
};

/// Builds the module from generator matrices through the word expansion.
ZhuModule zhu_module_from_generators(const ZhuAlgebra& a, const std::vector<Matrix>& generator_action);
/// Checks rho(a) rho(b) = rho(a*b) on every in-cutoff pair and rho([1]) = 1.
CheckTally zhu_module_check(const ZhuAlgebra& a, const ZhuModule& u);

/// A_N(W,z) with its A_N(V)-bimodule actions.  Action entries whose
/// computation would leave the cutoff are absent.
struct ZhuBimodule {
  std::shared_ptr<const ModulePresentation> module;
  Rat z;
  Subspace o;
  std::vector<std::size_t> reps;  // W basis indices
  /// left[a][j], right[a][j]: quotient coordinates of [rep_a] . [w_j] and [w_j] . [rep_a].
  std::vector<std::vector<std::optional<Vec>>> left;
  std::vector<std::vector<std::optional<Vec>>> right;

  std::size_t dim() const { return reps.size(); }
  Vec project(const Vec& w) const { return o.quotient_coords(w); }
};

struct BimoduleChecks {
  CheckTally well_defined;
  CheckTally left_assoc;
  CheckTally right_assoc;
  CheckTally commute;
  CheckTally unit;
  bool passed() const {
    return well_defined.passed() && left_assoc.passed() && right_assoc.passed() && commute.passed() &&
           unit.passed();
  }
};

ZhuBimodule bimodule_build(const ModulePresentation& w_module, const Rat& z, const ZhuAlgebra& a);
BimoduleChecks bimodule_checks(const ZhuBimodule& b, const ZhuAlgebra& a);

/// Omega(W) with the A(V)-action o(v) = v_{wt v - 1}.
struct OmegaSpace {
  std::vector<Vec> basis;          // global W vectors in reduced echelon form
  std::vector<long> levels;        // level of each basis vector
  std::vector<Matrix> action;      // per A(V) quotient basis element, on basis coordinates
};
OmegaSpace omega_subspace(const ModulePresentation& w_module, const ZhuAlgebra& a);
/// Omega(W) alone, without the algebra action.  When `only` is nonempty the
/// kernel condition uses just those V basis vectors (Omega for a subalgebra
/// such as V1 (x) 1 inside a tensor product).
std::vector<Vec> omega_vectors(const ModulePresentation& w_module, const std::vector<std::size_t>& only = {});

}  // namespace zhukit

#endif  // ZHUKIT_ZHU_HPP
