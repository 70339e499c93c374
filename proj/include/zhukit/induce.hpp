#ifndef ZHUKIT_INDUCE_HPP
#define ZHUKIT_INDUCE_HPP

#include <zhukit/voa.hpp>
#include <zhukit/zhu.hpp>

#include <cstdint>
#include <memory>
#include <vector>

namespace zhukit {

/// F(U) or L(U) truncated at a depth.  `module` is null when U = 0.
struct InducedModule {
  std::shared_ptr<const ModulePresentation> module;
  ZhuModule base;
  int depth = 0;
  Rat lowest_weight = 0;
  std::vector<std::size_t> level_dims;
  // Jacobi-relation pass: in-window commutator and iterate relations
  // evaluated on the PBW span, and the rank of what they cut out.
  std::uint64_t relations_checked = 0;
  std::uint64_t relations_skipped = 0;
  std::size_t relation_rank = 0;
};

/// F(U) through level `depth`: generator modes acting freely on U, with the
/// zero modes of the generators given by U's generator action, followed by
/// the relation pass.
InducedModule f_module(const ZhuAlgebra& a, const ZhuModule& u, int depth);

/// K_n = {w at level n : v_{wt v + n - 1} w = 0 for every basis v}.
/// Reaching every lowering word at level n takes V through weight
/// n * (largest generator weight); CutoffError otherwise.
std::vector<Subspace> top_annihilated(const ModulePresentation& w);

/// F(U) modulo its maximal graded submodule meeting level 0 trivially.
InducedModule l_module(const InducedModule& f);

struct FrobeniusResult {
  std::size_t module_maps = 0;  // graded V-maps F(U)_{<=D} -> W
  std::size_t top_maps = 0;     // Hom_{A(V)}(U, Omega(W))
  bool equal() const { return module_maps == top_maps; }
};
FrobeniusResult frobenius_check(const ZhuAlgebra& a, const InducedModule& f, const ModulePresentation& w);

/// U1 (+) U2 with block-diagonal actions.
ZhuModule direct_sum(const ZhuModule& u1, const ZhuModule& u2);

/// (d1 * d2)(n) = sum_i d1(i) d2(n - i) through the shorter length.
std::vector<std::size_t> convolve_dims(const std::vector<std::size_t>& d1, const std::vector<std::size_t>& d2);

/// The scalar of [omega] on U when it acts as a multiple of the identity.
std::optional<Rat> omega_scalar(const ZhuAlgebra& a, const ZhuModule& u);

}  // namespace zhukit

#endif  // ZHUKIT_INDUCE_HPP
