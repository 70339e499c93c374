#include <zhukit/fusion.hpp>

#include <map>
#include <random>
#include <stdexcept>

namespace zhukit {

namespace {

Vec flatten(const Matrix& m) {
  Vec out;
  out.reserve(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
  return out;
}

// dim of {T : T src[a] = tgt[a] T for all a}, T of shape tgt_dim x src_dim.
std::size_t intertwiner_dim(std::size_t src_dim, const std::vector<Matrix>& src, std::size_t tgt_dim,
                            const std::vector<Matrix>& tgt) {
  const std::size_t n = src_dim * tgt_dim;
  if (n == 0) return 0;
  Subspace rows(n);
  for (std::size_t a = 0; a < src.size(); ++a)
    for (std::size_t r = 0; r < tgt_dim; ++r)
      for (std::size_t c = 0; c < src_dim; ++c) {
        Vec row(n);
        for (std::size_t k = 0; k < src_dim; ++k) row[r * src_dim + k] += src[a](k, c);
        for (std::size_t k = 0; k < tgt_dim; ++k) row[k * src_dim + c] -= tgt[a](r, k);
        rows.add(row);
      }
  return n - rows.dim();
}

Matrix theta_of(const FinAlgebra& a, std::size_t i, const std::vector<Matrix>& action, std::size_t dim) {
  Matrix m(dim, dim);
  for (std::size_t j = 0; j < a.dim; ++j)
    if (sgn((*a.theta)(j, i)) != 0) m = m + (*a.theta)(j, i) * action[j];
  return m;
}

}  // namespace

// ---------------------------------------------------------------- algebra

Vec FinAlgebra::multiply(const Vec& x, const Vec& y) const {
  Vec out(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < dim; ++j)
      if (sgn(y[j]) != 0) axpy(out, x[i] * y[j], c[i][j]);
  }
  return out;
}

Matrix FinAlgebra::left_mult(std::size_t i) const {
  Matrix m(dim, dim);
  for (std::size_t j = 0; j < dim; ++j) m.set_col(j, c[i][j]);
  return m;
}

Matrix FinAlgebra::right_mult(std::size_t i) const {
  Matrix m(dim, dim);
  for (std::size_t j = 0; j < dim; ++j) m.set_col(j, c[j][i]);
  return m;
}

Matrix FinModule::act(const Vec& a) const {
  Matrix m(dim, dim);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0) m = m + a[i] * action[i];
  return m;
}

CheckTally algebra_check(const FinAlgebra& a) {
  CheckTally t;
  auto e = [&](std::size_t i) { return unit_vec(a.dim, i); };
  for (std::size_t i = 0; i < a.dim; ++i) {
    ++t.checked;
    if (a.multiply(a.unit, e(i)) != e(i) || a.multiply(e(i), a.unit) != e(i)) t.fail("unit law at " + std::to_string(i));
    for (std::size_t j = 0; j < a.dim; ++j)
      for (std::size_t k = 0; k < a.dim; ++k) {
        ++t.checked;
        if (a.multiply(a.multiply(e(i), e(j)), e(k)) != a.multiply(e(i), a.multiply(e(j), e(k))))
          t.fail("associativity at (" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")");
      }
  }
  if (a.theta) {
    const Matrix& th = *a.theta;
    ++t.checked;
    if (!(th * th == Matrix::identity(a.dim))) t.fail("theta is not an involution");
    for (std::size_t i = 0; i < a.dim; ++i)
      for (std::size_t j = 0; j < a.dim; ++j) {
        ++t.checked;
        if (th.apply(a.multiply(e(i), e(j))) != a.multiply(th.col(j), th.col(i)))
          t.fail("theta is not an anti-automorphism at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
  }
  return t;
}

CheckTally module_check(const FinAlgebra& a, const FinModule& m) {
  CheckTally t;
  ++t.checked;
  if (!(m.act(a.unit) == Matrix::identity(m.dim))) t.fail("unit does not act as the identity");
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = 0; j < a.dim; ++j) {
      ++t.checked;
      if (!(m.action[i] * m.action[j] == m.act(a.c[i][j])))
        t.fail("module law at (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  return t;
}

CheckTally bimodule_check(const FinAlgebra& a, const FinBimodule& b) {
  CheckTally t = module_check(a, FinModule{b.dim, b.left});
  Matrix ru(b.dim, b.dim);
  for (std::size_t i = 0; i < a.dim; ++i)
    if (sgn(a.unit[i]) != 0) ru = ru + a.unit[i] * b.right[i];
  ++t.checked;
  if (!(ru == Matrix::identity(b.dim))) t.fail("unit does not act as the identity on the right");
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = 0; j < a.dim; ++j) {
      ++t.checked;
      Matrix rij(b.dim, b.dim);
      for (std::size_t k = 0; k < a.dim; ++k)
        if (sgn(a.c[i][j][k]) != 0) rij = rij + a.c[i][j][k] * b.right[k];
      if (!(b.right[j] * b.right[i] == rij)) t.fail("right module law at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      ++t.checked;
      if (!(b.left[i] * b.right[j] == b.right[j] * b.left[i]))
        t.fail("left and right actions do not commute at (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  return t;
}

FinAlgebra unit_algebra() {
  FinAlgebra a;
  a.dim = 1;
  a.c = {{Vec{Rat(1)}}};
  a.unit = Vec{Rat(1)};
  a.theta = Matrix::identity(1);
  return a;
}

FinBimodule regular_bimodule(const FinAlgebra& a) {
  FinBimodule b;
  b.dim = a.dim;
  for (std::size_t i = 0; i < a.dim; ++i) {
    b.left.push_back(a.left_mult(i));
    b.right.push_back(a.right_mult(i));
  }
  return b;
}

FinModule regular_module(const FinAlgebra& a) {
  FinModule m;
  m.dim = a.dim;
  for (std::size_t i = 0; i < a.dim; ++i) m.action.push_back(a.left_mult(i));
  return m;
}

// ---------------------------------------------------------------- Hom, tensor

FinModule tensor_over_algebra(const FinAlgebra& a, const FinBimodule& b, const FinModule& u) {
  const std::size_t n = b.dim * u.dim;
  FinModule out;
  out.action.assign(a.dim, Matrix());
  if (n == 0) {
    for (auto& m : out.action) m = Matrix(0, 0);
    return out;
  }
  const Matrix ib = Matrix::identity(b.dim), iu = Matrix::identity(u.dim);
  Subspace rel(n);
  for (std::size_t i = 0; i < a.dim; ++i) {
    Matrix r = kron(b.right[i], iu) - kron(ib, u.action[i]);
    for (std::size_t col = 0; col < n; ++col) rel.add(r.col(col));
  }
  const auto reps = rel.complement();
  out.dim = reps.size();
  for (std::size_t i = 0; i < a.dim; ++i) {
    Matrix l = kron(b.left[i], iu);
    Matrix m(out.dim, out.dim);
    for (std::size_t j = 0; j < reps.size(); ++j) m.set_col(j, rel.quotient_coords(l.col(reps[j])));
    out.action[i] = m;
  }
  return out;
}

std::size_t hom_dim(const FinModule& m1, const FinModule& m2) {
  if (m1.action.size() != m2.action.size()) throw std::invalid_argument("modules over different algebras");
  return intertwiner_dim(m1.dim, m1.action, m2.dim, m2.action);
}

std::size_t fusion_dim(const FinAlgebra& a, const FinBimodule& b, const FinModule& u1, const FinModule& u2) {
  return hom_dim(tensor_over_algebra(a, b, u1), u2);
}

FinModule dual_module(const FinAlgebra& a, const FinModule& u) {
  if (!a.theta) throw std::invalid_argument("the dual module needs theta");
  FinModule d;
  d.dim = u.dim;
  for (std::size_t i = 0; i < a.dim; ++i) d.action.push_back(theta_of(a, i, u.action, u.dim).transpose());
  return d;
}

bool double_dual_isomorphic(const FinAlgebra& a, const FinModule& u) {
  FinModule dd = dual_module(a, dual_module(a, u));
  if (dd.dim != u.dim) return false;
  for (std::size_t i = 0; i < a.dim; ++i)
    if (!(dd.action[i] == u.action[i])) return false;
  return true;
}

DIsoResult d_iso_check(const FinAlgebra& a, const FinBimodule& b, const FinModule& u1, const FinModule& u2) {
  if (!a.theta) throw std::invalid_argument("the d-isomorphism needs theta");
  DIsoResult r;
  r.lhs = fusion_dim(a, b, u1, u2);
  const std::size_t d1 = u1.dim, d2 = u2.dim;
  const Matrix i1 = Matrix::identity(d1), i2 = Matrix::identity(d2);
  std::vector<Matrix> src, tgt;
  for (std::size_t i = 0; i < a.dim; ++i) {
    // (e_i, 1): u1 side and g -> g(. e_i)
    src.push_back(kron(u1.action[i], i2));
    tgt.push_back(b.right[i].transpose());
  }
  for (std::size_t i = 0; i < a.dim; ++i) {
    // (1, e_i): U2* side and g -> g(theta(e_i) .)
    src.push_back(kron(i1, theta_of(a, i, u2.action, d2).transpose()));
    tgt.push_back(theta_of(a, i, b.left, b.dim).transpose());
  }
  r.rhs = intertwiner_dim(d1 * d2, src, b.dim, tgt);
  return r;
}

FinModule module_direct_sum(const FinModule& m1, const FinModule& m2) {
  FinModule out;
  out.dim = m1.dim + m2.dim;
  for (std::size_t i = 0; i < m1.action.size(); ++i) out.action.push_back(block_diag(m1.action[i], m2.action[i]));
  return out;
}

FinModule change_basis(const FinModule& m, const Matrix& p, const Matrix& p_inv) {
  FinModule out;
  out.dim = m.dim;
  for (const auto& x : m.action) out.action.push_back(p_inv * x * p);
  return out;
}

// ---------------------------------------------------------------- image algebras

Vec ImageAlgebra::coords(const Matrix& m) const {
  std::vector<Vec> cols;
  for (const auto& b : basis) cols.push_back(flatten(b));
  auto sol = solve(Matrix::from_columns(m.rows() * m.cols(), cols), flatten(m));
  if (!sol) throw std::invalid_argument("matrix lies outside the image algebra");
  return *sol;
}

namespace {

struct Closure {
  ImageAlgebra img;
  std::vector<std::vector<std::size_t>> words;  // generator indices, left to right
};

Closure close_under_products(const std::vector<Matrix>& gens, std::size_t n) {
  Closure cl;
  Subspace span(n * n);
  auto try_add = [&](const Matrix& m, std::vector<std::size_t> word) {
    if (!span.add(flatten(m))) return false;
    cl.img.basis.push_back(m);
    cl.words.push_back(std::move(word));
    return true;
  };
  try_add(Matrix::identity(n), {});
  for (std::size_t next = 0; next < cl.img.basis.size(); ++next)
    for (std::size_t g = 0; g < gens.size(); ++g) {
      auto w = cl.words[next];
      w.push_back(g);
      try_add(cl.img.basis[next] * gens[g], std::move(w));
    }
  auto& A = cl.img.algebra;
  A.dim = cl.img.basis.size();
  A.unit = unit_vec(A.dim, 0);
  A.c.assign(A.dim, std::vector<Vec>(A.dim));
  for (std::size_t i = 0; i < A.dim; ++i)
    for (std::size_t j = 0; j < A.dim; ++j) A.c[i][j] = cl.img.coords(cl.img.basis[i] * cl.img.basis[j]);
  return cl;
}

FinModule represent(const Closure& cl, const std::vector<Matrix>& gen_images, std::size_t dim) {
  FinModule m;
  m.dim = dim;
  for (const auto& w : cl.words) {
    Matrix x = Matrix::identity(dim);
    for (auto g : w) x = x * gen_images[g];
    m.action.push_back(x);
  }
  return m;
}

Matrix block(const Matrix& m, std::size_t off, std::size_t len) {
  Matrix out(len, len);
  for (std::size_t i = 0; i < len; ++i)
    for (std::size_t j = 0; j < len; ++j) out(i, j) = m(off + i, off + j);
  return out;
}

}  // namespace

ImageAlgebra image_algebra(const std::vector<Matrix>& generators) {
  const std::size_t n = generators.empty() ? 0 : generators.front().rows();
  return close_under_products(generators, n).img;
}

std::size_t fusion_from_zhu(const ZhuModule& u1, const ZhuModule& u2, const std::vector<std::size_t>& order) {
  if (u1.basis_action.size() != u2.basis_action.size()) throw std::invalid_argument("modules over different algebras");
  std::vector<std::size_t> idx = order;
  if (idx.empty())
    for (std::size_t i = 0; i < u1.basis_action.size(); ++i) idx.push_back(i);
  std::vector<Matrix> gens;
  for (auto i : idx) gens.push_back(block_diag(u1.basis_action.at(i), u2.basis_action.at(i)));
  const std::size_t n = u1.dim + u2.dim;
  if (n == 0) return 0;
  Closure cl = close_under_products(gens, n);
  std::vector<Matrix> g1, g2;
  for (const auto& g : gens) {
    g1.push_back(block(g, 0, u1.dim));
    g2.push_back(block(g, u1.dim, u2.dim));
  }
  const auto& A = cl.img.algebra;
  return fusion_dim(A, regular_bimodule(A), represent(cl, g1, u1.dim), represent(cl, g2, u2.dim));
}

// ---------------------------------------------------------------- random instances

namespace {

Matrix random_unimodular(std::size_t n, std::mt19937_64& rng, Matrix& inv) {
  std::uniform_int_distribution<long> d(-3, 3);
  Matrix lower = Matrix::identity(n), upper = Matrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      lower(i, j) = Rat(d(rng));
      upper(j, i) = Rat(d(rng));
    }
  Matrix p = lower * upper;
  inv = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) inv.set_col(j, *solve(p, unit_vec(n, j)));
  return p;
}

// A random representation of the algebra given by its generator relations,
// as generator images on Q^dim.
using RepSampler = std::vector<Matrix> (*)(std::size_t, std::mt19937_64&, const std::vector<long>&);

// Q[x]/(p): x acts by Jordan blocks at roots of p, sizes bounded by multiplicity.
std::vector<Matrix> sample_poly_rep(std::size_t dim, std::mt19937_64& rng, const std::vector<long>& roots) {
  std::map<long, std::size_t> mult;
  for (long r : roots) ++mult[r];
  std::vector<long> distinct;
  for (const auto& [r, m] : mult) distinct.push_back(r);
  Matrix j(dim, dim);
  std::size_t pos = 0;
  while (pos < dim) {
    long r = distinct[std::uniform_int_distribution<std::size_t>(0, distinct.size() - 1)(rng)];
    std::size_t size = std::min<std::size_t>(dim - pos, std::uniform_int_distribution<std::size_t>(1, mult[r])(rng));
    for (std::size_t k = 0; k < size; ++k) {
      j(pos + k, pos + k) = Rat(r);
      if (k + 1 < size) j(pos + k, pos + k + 1) = Rat(1);
    }
    pos += size;
  }
  Matrix inv;
  Matrix p = random_unimodular(dim, rng, inv);
  return {p * j * inv};
}

// Upper-triangular 2x2 matrices: generators E11, E12, E22 on V1 (+) V2.
std::vector<Matrix> sample_triangular_rep(std::size_t dim, std::mt19937_64& rng, const std::vector<long>&) {
  const std::size_t d1 = std::uniform_int_distribution<std::size_t>(0, dim)(rng);
  Matrix e11(dim, dim), e22(dim, dim), e12(dim, dim);
  std::uniform_int_distribution<long> d(-2, 2);
  for (std::size_t i = 0; i < d1; ++i) e11(i, i) = 1;
  for (std::size_t i = d1; i < dim; ++i) e22(i, i) = 1;
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t k = d1; k < dim; ++k) e12(i, k) = Rat(d(rng));
  Matrix inv;
  Matrix p = random_unimodular(dim, rng, inv);
  return {p * e11 * inv, p * e12 * inv, p * e22 * inv};
}

// Q x Q: one idempotent.
std::vector<Matrix> sample_split_rep(std::size_t dim, std::mt19937_64& rng, const std::vector<long>&) {
  Matrix e(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    if (std::uniform_int_distribution<int>(0, 1)(rng)) e(i, i) = 1;
  Matrix inv;
  Matrix p = random_unimodular(dim, rng, inv);
  return {p * e * inv};
}

}  // namespace

FusionInstance random_fusion_instance(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  FusionInstance inst;
  const int family = std::uniform_int_distribution<int>(0, 3)(rng);
  std::vector<Matrix> faithful;
  std::vector<long> roots;
  RepSampler sampler = nullptr;
  Matrix flip;  // theta on the faithful representation: M -> J M^T J, or identity
  bool transpose_theta = false;
  switch (family) {
    case 0: {
      inst.family = "commutative";
      std::uniform_int_distribution<long> r(-2, 2);
      roots = {r(rng), r(rng), r(rng)};
      // companion-type faithful model: one Jordan block per distinct root, full multiplicity
      std::map<long, std::size_t> mult;
      for (long x : roots) ++mult[x];
      Matrix j(3, 3);
      std::size_t pos = 0;
      for (const auto& [x, m] : mult) {
        for (std::size_t k = 0; k < m; ++k) {
          j(pos + k, pos + k) = Rat(x);
          if (k + 1 < m) j(pos + k, pos + k + 1) = Rat(1);
        }
        pos += m;
      }
      faithful = {j};
      sampler = sample_poly_rep;
      break;
    }
    case 1: {
      inst.family = "triangular";
      Matrix e11(2, 2), e12(2, 2), e22(2, 2);
      e11(0, 0) = 1;
      e12(0, 1) = 1;
      e22(1, 1) = 1;
      faithful = {e11, e12, e22};
      sampler = sample_triangular_rep;
      transpose_theta = true;
      break;
    }
    case 2: {
      inst.family = "split";
      Matrix e(2, 2);
      e(0, 0) = 1;
      faithful = {e};
      sampler = sample_split_rep;
      break;
    }
    default: {
      inst.family = "unit";
      faithful = {};
      sampler = nullptr;
      break;
    }
  }
  const std::size_t fdim = faithful.empty() ? 1 : faithful.front().rows();
  Closure cl = close_under_products(faithful, fdim);
  inst.a = cl.img.algebra;
  Matrix th(inst.a.dim, inst.a.dim);
  for (std::size_t i = 0; i < inst.a.dim; ++i) {
    Matrix m = cl.img.basis[i];
    if (transpose_theta) {
      Matrix j(fdim, fdim);
      for (std::size_t k = 0; k < fdim; ++k) j(k, fdim - 1 - k) = 1;
      m = j * m.transpose() * j;
    }
    th.set_col(i, cl.img.coords(m));
  }
  inst.a.theta = th;

  auto sample = [&](std::size_t dim) {
    if (!sampler) {
      FinModule m;
      m.dim = dim;
      m.action = {Matrix::identity(dim)};
      return m;
    }
    return represent(cl, sampler(dim, rng, roots), dim);
  };
  std::uniform_int_distribution<std::size_t> small(1, 2), tiny(1, 2);
  inst.u1 = sample(small(rng));
  inst.u2 = sample(small(rng));
  // B = M (x) N with N made a right module through theta
  FinModule m = sample(tiny(rng));
  FinModule n = sample(tiny(rng));
  inst.b.dim = m.dim * n.dim;
  const Matrix im = Matrix::identity(m.dim), in = Matrix::identity(n.dim);
  for (std::size_t i = 0; i < inst.a.dim; ++i) {
    inst.b.left.push_back(kron(m.action[i], in));
    inst.b.right.push_back(kron(im, theta_of(inst.a, i, n.action, n.dim)));
  }
  return inst;
}

}  // namespace zhukit
