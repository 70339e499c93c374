#ifndef ZHUKIT_SRC_PBW_HPP
#define ZHUKIT_SRC_PBW_HPP

#include <zhukit/linalg.hpp>
#include <zhukit/voa.hpp>

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace zhukit::detail {

/// One creation mode X_color(-part).
struct Part {
  long part;
  int color;
  friend auto operator<=>(const Part&, const Part&) = default;
};

/// Creation modes in normal order: part descending, color ascending on ties.
using Monomial = std::vector<Part>;

struct PbwKey {
  Monomial mono;
  int top;
  friend auto operator<=>(const PbwKey&, const PbwKey&) = default;
};

using PbwState = std::map<PbwKey, Rat>;

long level_of(const Monomial& m);

/// Mode algebra of a list of free generators (Heisenberg or Virasoro
/// fields, mutually commuting) acting on a module induced from a
/// finite-dimensional top space.  Modes are X_c(m); the vertex-operator
/// mode g_j of the generator field is X_c(j - wt g + 1).
class PbwEngine {
 public:
  PbwEngine(std::vector<GeneratorSpec> gens, std::size_t top_dim, std::vector<Matrix> zero_modes,
            std::vector<long> min_part, std::vector<std::string> top_labels);

  const std::vector<GeneratorSpec>& generators() const { return gens_; }
  std::size_t top_dim() const { return top_dim_; }

  /// X_color(m) applied to a basis state.
  const PbwState& apply(int color, long m, const PbwKey& key);
  PbwState apply(int color, long m, const PbwState& state);

  /// Normal-ordered basis of a level, in the deterministic order used
  /// throughout (monomials descending, top index inner).
  std::vector<PbwKey> level_basis(long level) const;
  std::string label(const PbwKey& key) const;

 private:
  bool precedes_or_equal(const Part& a, const Part& b) const;
  void enumerate(long remaining, std::optional<Part> bound, Monomial& cur, std::vector<Monomial>& out) const;

  std::vector<GeneratorSpec> gens_;
  std::size_t top_dim_;
  std::vector<Matrix> zero_modes_;
  std::vector<long> min_part_;
  std::vector<std::string> top_labels_;
  std::map<std::tuple<int, long, PbwKey>, PbwState> memo_;
};

void add_state(PbwState& acc, const Rat& s, const PbwState& x);

}  // namespace zhukit::detail

#endif  // ZHUKIT_SRC_PBW_HPP
