#ifndef ZHUKIT_FUSION_HPP
#define ZHUKIT_FUSION_HPP

#include <zhukit/linalg.hpp>
#include <zhukit/zhu.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace zhukit {

/// A finite-dimensional associative algebra by structure constants:
/// e_i e_j = sum_k c[i][j][k] e_k.
struct FinAlgebra {
  std::size_t dim = 0;
  std::vector<std::vector<Vec>> c;
  Vec unit;
  std::optional<Matrix> theta;  // an anti-automorphism, column j = theta(e_j)

  Vec multiply(const Vec& a, const Vec& b) const;
  /// Left multiplication by e_i as a matrix.
  Matrix left_mult(std::size_t i) const;
  Matrix right_mult(std::size_t i) const;
};

/// A left module: action[i] is the matrix of e_i.
struct FinModule {
  std::size_t dim = 0;
  std::vector<Matrix> action;
  /// Matrix of an arbitrary algebra element.
  Matrix act(const Vec& a) const;
};

struct FinBimodule {
  std::size_t dim = 0;
  std::vector<Matrix> left;
  std::vector<Matrix> right;  // right[i] is w -> w e_i
};

/// Associativity, unit laws, and (when present) theta(ab) = theta(b) theta(a), theta^2 = 1.
CheckTally algebra_check(const FinAlgebra& a);
CheckTally module_check(const FinAlgebra& a, const FinModule& m);
CheckTally bimodule_check(const FinAlgebra& a, const FinBimodule& b);

FinAlgebra unit_algebra();
/// A acting on itself from both sides.
FinBimodule regular_bimodule(const FinAlgebra& a);
FinModule regular_module(const FinAlgebra& a);

/// B (x)_A U = (B (x) U) / span{b.a (x) u - b (x) a.u}, with B's left action.
FinModule tensor_over_algebra(const FinAlgebra& a, const FinBimodule& b, const FinModule& u);
/// dim Hom_A(M1, M2).
std::size_t hom_dim(const FinModule& m1, const FinModule& m2);
std::size_t fusion_dim(const FinAlgebra& a, const FinBimodule& b, const FinModule& u1, const FinModule& u2);
/// U* with (a f)(u) = f(theta(a) u).
FinModule dual_module(const FinAlgebra& a, const FinModule& u);
/// A -> End(U*) -> ... : U is isomorphic to its double dual.
bool double_dual_isomorphic(const FinAlgebra& a, const FinModule& u);

struct DIsoResult {
  std::size_t lhs = 0;  // dim Hom_A(B (x)_A U1, U2)
  std::size_t rhs = 0;  // dim Hom_{A(x)A}(U1 (x) U2*, B*)
  bool equal() const { return lhs == rhs; }
};
DIsoResult d_iso_check(const FinAlgebra& a, const FinBimodule& b, const FinModule& u1, const FinModule& u2);

FinModule module_direct_sum(const FinModule& m1, const FinModule& m2);
/// The same module in the basis P^{-1} (.) P for an invertible P.
FinModule change_basis(const FinModule& m, const Matrix& p, const Matrix& p_inv);

/// A seeded random instance: algebra (dim <= 4, with theta), bimodule, and two modules.
struct FusionInstance {
  FinAlgebra a;
  FinBimodule b;
  FinModule u1;
  FinModule u2;
  std::string family;
};
FusionInstance random_fusion_instance(std::uint64_t seed);

/// The subalgebra of End(Q^n) generated by the given matrices and the
/// identity, as a FinAlgebra with theta absent; `basis` holds its matrices.
struct ImageAlgebra {
  FinAlgebra algebra;
  std::vector<Matrix> basis;
  /// Coordinates of a matrix lying in the image.
  Vec coords(const Matrix& m) const;
};
ImageAlgebra image_algebra(const std::vector<Matrix>& generators);

/// The fusion dimension for A(V)-modules U1, U2 given by Zhu-module data,
/// through the finite image of A_N(V) in End(U1 (+) U2) and its regular
/// bimodule.  `order` permutes the quotient basis of A_N(V) before use.
std::size_t fusion_from_zhu(const ZhuModule& u1, const ZhuModule& u2, const std::vector<std::size_t>& order = {});

}  // namespace zhukit

#endif  // ZHUKIT_FUSION_HPP
