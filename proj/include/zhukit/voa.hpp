#ifndef ZHUKIT_VOA_HPP
#define ZHUKIT_VOA_HPP

#include <zhukit/formal.hpp>
#include <zhukit/linalg.hpp>
#include <zhukit/rational.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace zhukit {

enum class GeneratorKind { Heisenberg, Virasoro };

/// A free generating field: a Heisenberg field a (weight 1, a_1 a = 1) or a
/// Virasoro field (weight 2, central charge c).  Distinct generators of one
/// presentation commute.
struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::Heisenberg;
  Rat c = 0;
  std::string name = "a";

  long weight() const { return kind == GeneratorKind::Heisenberg ? 1 : 2; }
  friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

/// Basis of a graded space truncated at a cutoff level, listed level by
/// level.  A module's weights are h + level.
class GradedBasis {
 public:
  GradedBasis() = default;
  GradedBasis(Rat h, std::vector<std::size_t> dims, std::vector<std::string> labels);

  const Rat& lowest_weight() const { return h_; }
  int cutoff() const { return static_cast<int>(dims_.size()) - 1; }
  std::size_t size() const { return labels_.size(); }
  std::size_t dim(long level) const;
  std::size_t offset(long level) const { return offsets_.at(static_cast<std::size_t>(level)); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  long level(std::size_t index) const { return levels_.at(index); }
  const std::string& label(std::size_t index) const { return labels_.at(index); }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Coordinates of the level-l component of a global vector.
  Vec component(const Vec& v, long level) const;
  /// Embeds a level-local vector into a global one.
  Vec embed(const Vec& local, long level) const;
  /// Levels carrying a nonzero component of v.
  std::vector<long> support_levels(const Vec& v) const;

 private:
  Rat h_ = 0;
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> offsets_;
  std::vector<long> levels_;
  std::vector<std::string> labels_;
};

/// Mode products v_n w for every basis v of V and basis w of W whose
/// result level lies in [0, cutoff]; stored per result level.
class ActionTable {
 public:
  ActionTable() = default;
  ActionTable(std::size_t v_count, std::size_t w_count, int result_cutoff);

  std::size_t v_count() const { return v_count_; }
  std::size_t w_count() const { return w_count_; }
  int result_cutoff() const { return result_cutoff_; }

  /// Level-local coordinates; an empty vector means zero.
  const Vec& get(std::size_t v, std::size_t w, long r) const;
  void set(std::size_t v, std::size_t w, long r, Vec local);

 private:
  std::size_t v_count_ = 0;
  std::size_t w_count_ = 0;
  int result_cutoff_ = -1;
  std::vector<Vec> data_;
};

class VOAPresentation;

/// Weak module W over a truncated VOA presentation.
class ModulePresentation {
 public:
  ModulePresentation() = default;
  ModulePresentation(std::shared_ptr<const VOAPresentation> voa, GradedBasis basis,
                     std::shared_ptr<const ActionTable> table);

  const VOAPresentation& voa() const { return *voa_; }
  const std::shared_ptr<const VOAPresentation>& voa_ptr() const { return voa_; }
  const GradedBasis& basis() const { return basis_; }
  const ActionTable& table() const { return *table_; }
  int cutoff() const { return basis_.cutoff(); }
  std::size_t dim() const { return basis_.size(); }

  /// Level of v_n w for basis v, basis w.
  long result_level(std::size_t v, long n, std::size_t w) const;
  /// v_n w as a global vector; CutoffError when its level exceeds the cutoff.
  Vec mode(std::size_t v, long n, std::size_t w) const;
  /// Level-local result, empty when zero.
  const Vec& mode_local(std::size_t v, long n, std::size_t w) const;
  /// Bilinear extension to arbitrary V-vectors and W-vectors.
  Vec act(const Vec& v, long n, const Vec& w) const;

  /// L(n) = omega_{n+1}.
  Vec virasoro(long n, const Vec& w) const;

 private:
  std::shared_ptr<const VOAPresentation> voa_;
  GradedBasis basis_;
  std::shared_ptr<const ActionTable> table_;
};

/// How a basis vector of a generator-built VOA factors: X_color(-part) applied
/// to the basis vector `rest`.
struct BasisFactor {
  int color = -1;
  long part = 0;
  std::size_t rest = 0;
};

class VOAPresentation : public std::enable_shared_from_this<VOAPresentation> {
 public:
  VOAPresentation(GradedBasis basis, std::shared_ptr<const ActionTable> table, std::size_t vacuum, Vec omega,
                  Rat central_charge);

  const GradedBasis& basis() const { return basis_; }
  int cutoff() const { return basis_.cutoff(); }
  std::size_t dim() const { return basis_.size(); }
  long weight(std::size_t index) const { return basis_.level(index); }
  std::size_t vacuum() const { return vacuum_; }
  const Vec& omega() const { return omega_; }
  const Rat& central_charge() const { return c_; }
  const std::shared_ptr<const ActionTable>& table_ptr() const { return table_; }

  /// Generator data when the presentation was built from free fields.
  const std::vector<GeneratorSpec>& generators() const { return generators_; }
  /// Basis index of each generator field.
  const std::vector<std::size_t>& generator_vectors() const { return generator_vectors_; }
  const std::vector<BasisFactor>& factors() const { return factors_; }
  void set_generators(std::vector<GeneratorSpec> gens, std::vector<std::size_t> vectors,
                      std::vector<BasisFactor> factors);

  /// V as a module over itself.
  ModulePresentation adjoint() const;

  /// u_n v inside V.
  Vec mode(std::size_t u, long n, std::size_t v) const { return adjoint().mode(u, n, v); }
  Vec act(const Vec& u, long n, const Vec& v) const { return adjoint().act(u, n, v); }

  /// L(n) on V.
  Vec virasoro(long n, const Vec& v) const { return adjoint().virasoro(n, v); }
  /// Matrices of L(0) and L(1) on V_{<=N}.  L(1) is stored explicitly so
  /// that it is available even when omega lies above the cutoff.
  Matrix l0_matrix() const;
  const Matrix& l1_matrix() const;
  Vec l1(const Vec& v) const { return l1_matrix().apply(v); }
  void set_l1(Matrix l1);
  /// Matrix of L(-1) from V_{<=N-1} into V_{<=N}; columns of top-level
  /// vectors are zero (their images lie above the cutoff).
  Matrix lminus1_matrix() const;

  /// Homogeneous components of v, as (weight, global vector) pairs.
  std::vector<std::pair<long, Vec>> homogeneous_parts(const Vec& v) const;

 private:
  GradedBasis basis_;
  std::shared_ptr<const ActionTable> table_;
  std::size_t vacuum_;
  Vec omega_;
  Rat c_;
  std::vector<GeneratorSpec> generators_;
  std::vector<std::size_t> generator_vectors_;
  std::vector<BasisFactor> factors_;
  std::optional<Matrix> l1_;
};

using VOAPtr = std::shared_ptr<const VOAPresentation>;

/// Heisenberg vacuum VOA M(1) through weight N; omega = a(-1)^2 1 / 2.
VOAPtr make_heisenberg(int cutoff);
/// Universal Virasoro vacuum VOA of central charge c through weight N.
VOAPtr make_virasoro(const Rat& c, int cutoff);
/// Vacuum VOA of several mutually commuting free generators.
VOAPtr make_free_field_voa(const std::vector<GeneratorSpec>& gens, int cutoff);

/// The same presentation restricted to weights <= cutoff.
VOAPtr truncate(const VOAPtr& voa, int cutoff);

/// Module induced from a top space carrying zero-mode matrices, built by
/// normal ordering of generator modes (all creation modes of part >= 1).
ModulePresentation make_highest_weight_module(const VOAPtr& voa, const std::vector<Matrix>& zero_modes,
                                              int cutoff, const Rat& lowest_weight = Rat(0),
                                              std::vector<std::string> top_labels = {});

/// Y(v,x)w = sum_m (v_m w) x^{-m-1}, lower truncated, certified where every
/// coefficient stays within the cutoff.
VectorSeries vertex_act(const ModulePresentation& w_module, const Vec& v, const Vec& w);

/// Y°(v,x)w = Y(e^{xL(1)}(-x^{-2})^{L(0)}v, x^{-1})w, upper truncated.
VectorSeries y_opposite(const ModulePresentation& w_module, const Vec& v, const Vec& w);

/// (Y°(v,y)w)|_{y = x + z0}, re-expanded in nonnegative powers of z0.
VectorSeries shift_series(const VectorSeries& s, const Rat& z0);
ScalarSeries shift_series(const ScalarSeries& s, const Rat& z0);

/// Y^(z)(v,x) = Y(z^{L(0)}v, zx).
ModulePresentation rescale_module(const ModulePresentation& w, const Rat& z);

/// V1 (x) V2 through total weight N.
VOAPtr tensor_voa(const VOAPtr& v1, const VOAPtr& v2, int cutoff);
/// W1 (x) W2 as a module over tensor_voa(V1, V2); basis pairs ordered by
/// total level, then first index, then second index.
ModulePresentation tensor_module(const ModulePresentation& w1, const ModulePresentation& w2, const VOAPtr& tensor,
                                 int cutoff);
/// Basis index pairs of a tensor basis, in order.
std::vector<std::pair<std::size_t, std::size_t>> tensor_pairs(const GradedBasis& b1, const GradedBasis& b2,
                                                               int cutoff);

/// Quotient of W by a submodule given by spanning vectors (closed under
/// all modes within the cutoff).  Representatives are the non-pivot basis
/// vectors of each level.
struct QuotientModule {
  ModulePresentation module;
  /// Per level: the subspace quotiented out and the chosen representatives.
  std::vector<Subspace> kernels;
  std::vector<std::vector<std::size_t>> representatives;
  /// Global projection W -> quotient.
  Vec project(const Vec& w) const;
};
QuotientModule quotient_module(const ModulePresentation& w, const std::vector<Vec>& submodule_span);

/// Smallest mode-stable subspace containing the given vectors (levels
/// <= cutoff, using every basis mode that stays within the cutoff).
std::vector<Subspace> generated_submodule(const ModulePresentation& w, const std::vector<Vec>& seeds);

struct AxiomWitness {
  std::string law;
  std::size_t u = 0, v = 0, w = 0;
  long p = 0, q = 0;
};

struct AxiomReport {
  bool passed = true;
  std::uint64_t checked = 0;
  std::uint64_t cutoff_skips = 0;
  std::uint64_t triples = 0;
  bool exhaustive = false;
  std::optional<AxiomWitness> witness;
};

/// Commutator formula, the associativity reduction of u_p v_q w, and the
/// vacuum/creation axioms on homogeneous basis triples.  Exhaustive when
/// dim V * dim W * dim V stays small (basis <= 12), otherwise sampled.
AxiomReport axiom_check(const ModulePresentation& w, std::size_t samples, std::uint64_t seed);

/// The associativity reduction of u_p v_q w at one (u,v,w,p,q) with the
/// smallest valid k and n.  nullopt when a term leaves the cutoff.
std::optional<bool> lemma_reduction_holds(const ModulePresentation& w, std::size_t u, std::size_t v,
                                          std::size_t wi, long p, long q);

/// Changes one stored structure constant (fault injection for tests).
ModulePresentation corrupt_module(const ModulePresentation& w, std::size_t v, std::size_t wi, long r,
                                  std::size_t coord, const Rat& delta);

/// Worker count from ZHUKIT_THREADS (default: hardware concurrency, at least 1).
unsigned worker_count();

}  // namespace zhukit

#endif  // ZHUKIT_VOA_HPP
