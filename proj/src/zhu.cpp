#include <zhukit/zhu.hpp>

#include "parallel.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace zhukit {

namespace {

long homogeneous_weight(const VOAPresentation& voa, const Vec& v) {
  auto levels = voa.basis().support_levels(v);
  if (levels.size() > 1) throw std::invalid_argument("expected a homogeneous vector");
  return levels.empty() ? 0 : levels.front();
}

long max_level(const GradedBasis& b, const Vec& w) {
  auto levels = b.support_levels(w);
  return levels.empty() ? -1 : levels.back();
}

std::string index_triple(std::size_t a, std::size_t b, std::size_t c) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

}  // namespace

void CheckTally::merge(const CheckTally& other) {
  checked += other.checked;
  skipped += other.skipped;
  failed += other.failed;
  if (witness.empty()) witness = other.witness;
}

Vec binomial_residue(const ModulePresentation& wm, const Vec& v, const Vec& w, long m, long n, const Rat& z) {
  Vec out(wm.dim());
  const long lw = max_level(wm.basis(), w);
  if (lw < 0) return out;
  for (const auto& [wt, part] : wm.voa().homogeneous_parts(v)) {
    const long imax = wt + lw - m - 1;
    Rat zi(1);
    const Rat mz = -z;
    for (long i = 0; i <= imax; ++i, zi *= mz) {
      Rat c = binomial(Rat(n), i) * zi;
      if (sgn(c) == 0) continue;
      axpy(out, c, wm.act(part, m + i, w));
    }
  }
  return out;
}

Vec o_element(const ModulePresentation& wm, const Vec& v, const Vec& w, const Rat& z, long n, long m) {
  const long wt = homogeneous_weight(wm.voa(), v);
  return binomial_residue(wm, v, w, -n - 2, wt + m, z);
}

Vec o_element_twisted(const ModulePresentation& wm, const Vec& v, const Vec& w, const Rat& z, long n, long m) {
  const auto& voa = wm.voa();
  const long wt = homogeneous_weight(voa, v);
  Vec out(wm.dim());
  Vec cur = v;
  for (long i = 0; i <= wt && !is_zero(cur); ++i) {
    axpy(out, 1 / factorial(i), binomial_residue(wm, cur, w, -n - i - 2, wt + m, z));
    cur = voa.l1(cur);
  }
  return out;
}

Vec zhu_star(const VOAPresentation& voa, const Vec& u, const Vec& v) {
  auto adj = voa.adjoint();
  Vec out(voa.dim());
  for (const auto& [wt, part] : voa.homogeneous_parts(u)) axpy(out, Rat(1), binomial_residue(adj, part, v, -1, wt, Rat(-1)));
  return out;
}

Vec left_pz(const ModulePresentation& wm, const Vec& v, const Vec& w, const Rat& z) {
  Vec out(wm.dim());
  for (const auto& [wt, part] : wm.voa().homogeneous_parts(v))
    axpy(out, ipow(-z, -wt), binomial_residue(wm, part, w, -1, wt, z));
  return out;
}

Vec right_pz(const ModulePresentation& wm, const Vec& w, const Vec& v, const Rat& z) {
  Vec out(wm.dim());
  for (const auto& [wt, part] : wm.voa().homogeneous_parts(v))
    axpy(out, ipow(-z, -wt), binomial_residue(wm, part, w, -1, wt - 1, z));
  return out;
}

Vec theta(const VOAPresentation& voa, const Vec& v) {
  Vec out(voa.dim());
  for (const auto& [wt, part] : voa.homogeneous_parts(v)) {
    const Rat sign = (wt % 2) ? -1 : 1;
    Vec cur = part;
    for (long i = 0; i <= wt && !is_zero(cur); ++i) {
      axpy(out, sign / factorial(i), cur);
      cur = voa.l1(cur);
    }
  }
  return out;
}

Matrix theta_matrix(const VOAPresentation& voa) {
  Matrix m(voa.dim(), voa.dim());
  for (std::size_t j = 0; j < voa.dim(); ++j) m.set_col(j, theta(voa, unit_vec(voa.dim(), j)));
  return m;
}

std::vector<std::size_t> quotient_priority(const GradedBasis& basis) {
  std::vector<std::size_t> order(basis.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return basis.level(a) > basis.level(b); });
  return order;
}

Subspace o_subspace(const ModulePresentation& wm, const Rat& z, int top) {
  if (sgn(z) == 0) throw std::domain_error("O(W,z) needs z != 0");
  const auto& voa = wm.voa();
  const int N = top < 0 ? wm.cutoff() : std::min(top, wm.cutoff());
  std::vector<std::vector<Vec>> rows(voa.dim());
  detail::parallel_for(voa.dim(), [&](std::size_t v) {
    const Vec vv = unit_vec(voa.dim(), v);
    for (std::size_t w = 0; w < wm.dim(); ++w) {
      if (voa.weight(v) + wm.basis().level(w) + 1 > N) continue;
      rows[v].push_back(o_element(wm, vv, unit_vec(wm.dim(), w), z));
    }
  });
  Subspace o(wm.dim(), quotient_priority(wm.basis()));
  for (const auto& r : rows) o.add_all(r);
  return o;
}

// ---------------------------------------------------------------- A(V)

ZhuAlgebra::ZhuAlgebra(VOAPtr voa, Subspace o) : voa_(std::move(voa)), o_(std::move(o)) {
  reps_ = o_.complement();
  auto it = std::find(reps_.begin(), reps_.end(), voa_->vacuum());
  if (it == reps_.end()) throw std::logic_error("the vacuum lies in O(V)");
  unit_ = static_cast<std::size_t>(it - reps_.begin());
  theta_ = Matrix(dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j) theta_.set_col(j, project(zhukit::theta(*voa_, unit_vec(voa_->dim(), reps_[j]))));
}

Vec ZhuAlgebra::lift(const Vec& q) const {
  Vec out(voa_->dim());
  for (std::size_t i = 0; i < q.size(); ++i) out[reps_[i]] = q[i];
  return out;
}

std::optional<Vec> ZhuAlgebra::product(std::size_t i, std::size_t j) const {
  if (rep_weight(i) + rep_weight(j) > cutoff()) return std::nullopt;
  return project(zhu_star(*voa_, unit_vec(voa_->dim(), reps_[i]), unit_vec(voa_->dim(), reps_[j])));
}

Vec ZhuAlgebra::multiply(const Vec& a, const Vec& b) const {
  Vec out(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (sgn(b[j]) == 0) continue;
      auto p = product(i, j);
      if (!p) throw CutoffError("Zhu product of weights " + std::to_string(rep_weight(i)) + " and " +
                                std::to_string(rep_weight(j)) + " exceeds the cutoff");
      axpy(out, a[i] * b[j], *p);
    }
  }
  return out;
}

ZhuAlgebra zhu_algebra(const VOAPtr& voa) { return ZhuAlgebra(voa, o_subspace(voa->adjoint(), Rat(-1))); }

ZhuChecks zhu_checks(const ZhuAlgebra& a) {
  const auto& V = a.voa();
  const int N = a.cutoff();
  const std::size_t d = V.dim();
  const Subspace& O = a.o();
  auto e = [&](std::size_t i) { return unit_vec(d, i); };
  const Vec one = e(V.vacuum());

  // O(V) generators with their top weights
  std::vector<std::pair<long, Vec>> gens;
  for (std::size_t v = 0; v < d; ++v)
    for (std::size_t w = 0; w < d; ++w) {
      const long top = V.weight(v) + V.weight(w) + 1;
      if (top <= N) gens.emplace_back(top, o_element(V.adjoint(), e(v), e(w), Rat(-1)));
    }

  std::vector<ZhuChecks> per(d);
  detail::parallel_for(d, [&](std::size_t u) {
    ZhuChecks& c = per[u];
    const long wu = V.weight(u);
    const Vec uv = e(u);
    // identity
    ++c.identity.checked;
    if (zhu_star(V, one, uv) != uv) c.identity.fail("1*v != v at v=" + std::to_string(u));
    ++c.identity.checked;
    if (!O.contains(zhu_star(V, uv, one) - uv)) c.identity.fail("v*1 - v not in O(V) at v=" + std::to_string(u));
    // two-sided ideal
    for (std::size_t g = 0; g < gens.size(); ++g) {
      if (wu + gens[g].first > N) continue;
      c.ideal.checked += 2;
      if (!O.contains(zhu_star(V, uv, gens[g].second)))
        c.ideal.fail("u*o not in O(V) at u=" + std::to_string(u) + ", generator " + std::to_string(g));
      if (!O.contains(zhu_star(V, gens[g].second, uv)))
        c.ideal.fail("o*u not in O(V) at u=" + std::to_string(u) + ", generator " + std::to_string(g));
    }
    // associativity
    for (std::size_t v = 0; v < d; ++v)
      for (std::size_t w = 0; w < d; ++w) {
        if (wu + V.weight(v) + V.weight(w) > N) continue;
        ++c.assoc.checked;
        Vec lhs = zhu_star(V, zhu_star(V, uv, e(v)), e(w));
        Vec rhs = zhu_star(V, uv, zhu_star(V, e(v), e(w)));
        if (!O.contains(lhs - rhs)) c.assoc.fail("associativity fails at " + index_triple(u, v, w));
      }
    // centrality of omega
    if (!is_zero(V.omega()) && wu + 2 <= N) {
      ++c.central.checked;
      if (!O.contains(zhu_star(V, V.omega(), uv) - zhu_star(V, uv, V.omega())))
        c.central.fail("[omega] does not commute with v=" + std::to_string(u));
    }
    // theta
    ++c.theta.checked;
    if (theta(V, theta(V, uv)) != uv) c.theta.fail("theta^2 != id at v=" + std::to_string(u));
    for (std::size_t v = 0; v < d; ++v) {
      if (wu + V.weight(v) > N) continue;
      ++c.theta.checked;
      Vec lhs = theta(V, zhu_star(V, uv, e(v)));
      Vec rhs = zhu_star(V, theta(V, e(v)), theta(V, uv));
      if (!O.contains(lhs - rhs)) c.theta.fail("theta is not an anti-homomorphism at (" + std::to_string(u) + "," +
                                               std::to_string(v) + ")");
    }
  });
  ZhuChecks out;
  for (const auto& c : per) {
    out.identity.merge(c.identity);
    out.ideal.merge(c.ideal);
    out.assoc.merge(c.assoc);
    out.central.merge(c.central);
    out.theta.merge(c.theta);
  }
  for (std::size_t g = 0; g < gens.size(); ++g) {
    ++out.theta.checked;
    if (!O.contains(theta(V, gens[g].second))) out.theta.fail("theta(O(V)) escapes O(V) at generator " + std::to_string(g));
  }
  return out;
}

// ---------------------------------------------------------------- generator words

GeneratorExpansion expand_in_generators(const ZhuAlgebra& a) {
  const auto& V = a.voa();
  const int N = a.cutoff();
  const auto& gv = V.generator_vectors();
  GeneratorExpansion ex;
  // breadth-first in word length; vectors computed as g_{i1} * (g_{i2} * ...)
  std::vector<std::pair<ZhuWord, Vec>> frontier{{ZhuWord{}, unit_vec(V.dim(), V.vacuum())}};
  std::vector<std::pair<ZhuWord, Vec>> all = frontier;
  while (!frontier.empty()) {
    std::vector<std::pair<ZhuWord, Vec>> next;
    for (const auto& [word, vec] : frontier) {
      long wt = 0;
      for (auto g : word) wt += V.generators()[g].weight();
      for (std::size_t g = 0; g < gv.size(); ++g) {
        if (gv[g] >= V.dim() || wt + V.generators()[g].weight() > N) continue;
        ZhuWord w2{g};
        w2.insert(w2.end(), word.begin(), word.end());
        next.emplace_back(w2, zhu_star(V, unit_vec(V.dim(), gv[g]), vec));
      }
    }
    for (const auto& p : next) all.push_back(p);
    frontier = std::move(next);
  }
  std::stable_sort(all.begin(), all.end(), [](const auto& x, const auto& y) { return x.first.size() < y.first.size(); });
  for (auto& [w, v] : all) {
    ex.words.push_back(w);
    ex.word_vectors.push_back(a.project(v));
  }
  // choose independent words greedily and solve for the quotient basis
  const std::size_t d = a.dim();
  std::vector<std::size_t> chosen;
  {
    std::vector<Vec> acc;
    for (std::size_t i = 0; i < ex.words.size() && chosen.size() < d; ++i) {
      acc.push_back(ex.word_vectors[i]);
      if (rank_of(acc, d) == acc.size()) {
        chosen.push_back(i);
      } else {
        acc.pop_back();
      }
    }
  }
  ex.coefficients = Matrix(ex.words.size(), d);
  ex.spans = chosen.size() == d;
  if (!ex.spans) return ex;
  std::vector<Vec> cols;
  for (auto i : chosen) cols.push_back(ex.word_vectors[i]);
  Matrix basis = Matrix::from_columns(d, cols);
  for (std::size_t j = 0; j < d; ++j) {
    auto sol = solve(basis, unit_vec(d, j));
    if (!sol) throw std::logic_error("generator words fail to express a quotient basis element");
    for (std::size_t k = 0; k < chosen.size(); ++k) ex.coefficients(chosen[k], j) = (*sol)[k];
  }
  return ex;
}

ZhuModule zhu_module_from_generators(const ZhuAlgebra& a, const std::vector<Matrix>& generator_action) {
  if (generator_action.size() != a.voa().generators().size())
    throw std::invalid_argument("one action matrix per generator is required");
  ZhuModule u;
  u.dim = generator_action.empty() ? 0 : generator_action.front().rows();
  u.generator_action = generator_action;
  auto ex = expand_in_generators(a);
  if (!ex.spans) throw std::runtime_error("generator words do not span the truncated Zhu algebra");
  std::vector<Matrix> word_action;
  for (const auto& w : ex.words) {
    Matrix m = Matrix::identity(u.dim);
    for (auto g : w) m = m * generator_action[g];
    word_action.push_back(m);
  }
  for (std::size_t j = 0; j < a.dim(); ++j) {
    Matrix acc(u.dim, u.dim);
    for (std::size_t w = 0; w < ex.words.size(); ++w) {
      const Rat& c = ex.coefficients(w, j);
      if (sgn(c) == 0) continue;
      for (std::size_t r = 0; r < u.dim; ++r)
        for (std::size_t s = 0; s < u.dim; ++s) acc(r, s) += c * word_action[w](r, s);
    }
    u.basis_action.push_back(acc);
  }
  return u;
}

CheckTally zhu_module_check(const ZhuAlgebra& a, const ZhuModule& u) {
  CheckTally t;
  ++t.checked;
  if (!(u.basis_action.at(a.unit()) == Matrix::identity(u.dim))) t.fail("[1] does not act as the identity");
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      auto p = a.product(i, j);
      if (!p) {
        ++t.skipped;
        continue;
      }
      ++t.checked;
      Matrix rhs(u.dim, u.dim);
      for (std::size_t k = 0; k < a.dim(); ++k)
        if (sgn((*p)[k]) != 0) rhs = rhs + (*p)[k] * u.basis_action[k];
      if (!(u.basis_action[i] * u.basis_action[j] == rhs))
        t.fail("module action is not multiplicative at (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  return t;
}

// ---------------------------------------------------------------- A(W,z)

ZhuBimodule bimodule_build(const ModulePresentation& wm, const Rat& z, const ZhuAlgebra& a) {
  ZhuBimodule b;
  b.module = std::make_shared<ModulePresentation>(wm);
  b.z = z;
  b.o = o_subspace(wm, z);
  b.reps = b.o.complement();
  const int N = wm.cutoff();
  const auto& V = a.voa();
  b.left.assign(a.dim(), std::vector<std::optional<Vec>>(b.dim()));
  b.right.assign(a.dim(), std::vector<std::optional<Vec>>(b.dim()));
  detail::parallel_for(a.dim(), [&](std::size_t i) {
    const Vec v = unit_vec(V.dim(), a.representatives()[i]);
    for (std::size_t j = 0; j < b.dim(); ++j) {
      if (a.rep_weight(i) + wm.basis().level(b.reps[j]) > N) continue;
      const Vec w = unit_vec(wm.dim(), b.reps[j]);
      b.left[i][j] = b.project(left_pz(wm, v, w, z));
      b.right[i][j] = b.project(right_pz(wm, w, v, z));
    }
  });
  return b;
}

BimoduleChecks bimodule_checks(const ZhuBimodule& b, const ZhuAlgebra& a) {
  const auto& W = *b.module;
  const auto& V = a.voa();
  const int N = W.cutoff();
  const Rat& z = b.z;
  const Subspace& O = b.o;
  auto ev = [&](std::size_t i) { return unit_vec(V.dim(), i); };
  auto ew = [&](std::size_t i) { return unit_vec(W.dim(), i); };

  std::vector<std::pair<long, Vec>> ow;  // O(W,z) generators
  for (std::size_t v = 0; v < V.dim(); ++v)
    for (std::size_t w = 0; w < W.dim(); ++w) {
      const long top = V.weight(v) + W.basis().level(w) + 1;
      if (top <= N) ow.emplace_back(top, o_element(W, ev(v), ew(w), z));
    }
  std::vector<std::pair<long, Vec>> ov;  // O(V) generators
  for (std::size_t v = 0; v < V.dim(); ++v)
    for (std::size_t w = 0; w < V.dim(); ++w) {
      const long top = V.weight(v) + V.weight(w) + 1;
      if (top <= N) ov.emplace_back(top, o_element(V.adjoint(), ev(v), ev(w), Rat(-1)));
    }

  std::vector<BimoduleChecks> per(V.dim());
  detail::parallel_for(V.dim(), [&](std::size_t u) {
    BimoduleChecks& c = per[u];
    const long wu = V.weight(u);
    const Vec uv = ev(u);
    for (std::size_t g = 0; g < ow.size(); ++g) {
      if (wu + ow[g].first > N) continue;
      c.well_defined.checked += 2;
      if (!O.contains(left_pz(W, uv, ow[g].second, z)))
        c.well_defined.fail("v . O(W,z) escapes O(W,z) at v=" + std::to_string(u));
      if (!O.contains(right_pz(W, ow[g].second, uv, z)))
        c.well_defined.fail("O(W,z) . v escapes O(W,z) at v=" + std::to_string(u));
    }
    for (std::size_t w = 0; w < W.dim(); ++w) {
      const long lw = W.basis().level(w);
      const Vec wv = ew(w);
      if (u == V.vacuum()) {
        c.unit.checked += 2;
        if (!O.contains(left_pz(W, uv, wv, z) - wv)) c.unit.fail("1 . w != w at w=" + std::to_string(w));
        if (!O.contains(right_pz(W, wv, uv, z) - wv)) c.unit.fail("w . 1 != w at w=" + std::to_string(w));
      }
      for (std::size_t v = 0; v < V.dim(); ++v) {
        if (wu + V.weight(v) + lw > N) continue;
        const Vec vv = ev(v);
        const Vec uvv = zhu_star(V, uv, vv);
        ++c.left_assoc.checked;
        if (!O.contains(left_pz(W, uv, left_pz(W, vv, wv, z), z) - left_pz(W, uvv, wv, z)))
          c.left_assoc.fail("u.(v.w) != (u*v).w at " + index_triple(u, v, w));
        ++c.right_assoc.checked;
        if (!O.contains(right_pz(W, right_pz(W, wv, uv, z), vv, z) - right_pz(W, wv, uvv, z)))
          c.right_assoc.fail("(w.u).v != w.(u*v) at " + index_triple(u, v, w));
        ++c.commute.checked;
        if (!O.contains(right_pz(W, left_pz(W, uv, wv, z), vv, z) - left_pz(W, uv, right_pz(W, wv, vv, z), z)))
          c.commute.fail("(u.w).v != u.(w.v) at " + index_triple(u, v, w));
      }
    }
  });
  BimoduleChecks out;
  for (const auto& c : per) {
    out.well_defined.merge(c.well_defined);
    out.left_assoc.merge(c.left_assoc);
    out.right_assoc.merge(c.right_assoc);
    out.commute.merge(c.commute);
    out.unit.merge(c.unit);
  }
  for (std::size_t g = 0; g < ov.size(); ++g)
    for (std::size_t w = 0; w < W.dim(); ++w) {
      if (ov[g].first + W.basis().level(w) > N) continue;
      out.well_defined.checked += 2;
      if (!O.contains(left_pz(W, ov[g].second, ew(w), z)))
        out.well_defined.fail("O(V) . w escapes O(W,z) at w=" + std::to_string(w));
      if (!O.contains(right_pz(W, ew(w), ov[g].second, z)))
        out.well_defined.fail("w . O(V) escapes O(W,z) at w=" + std::to_string(w));
    }
  return out;
}

// ---------------------------------------------------------------- Omega

std::vector<Vec> omega_vectors(const ModulePresentation& wm, const std::vector<std::size_t>& only) {
  const auto& V = wm.voa();
  const auto& B = wm.basis();
  std::vector<Vec> out;
  for (long l = 0; l <= wm.cutoff(); ++l) {
    const std::size_t dl = B.dim(l);
    if (dl == 0) continue;
    std::vector<Vec> rows;  // each row: one coordinate of one lowering mode, as a functional on level l
    for (std::size_t v = 0; v < V.dim(); ++v)
      for (long r = 0; r < l; ++r) {
        if (!only.empty() && std::find(only.begin(), only.end(), v) == only.end()) break;
        const long n = V.weight(v) + l - r - 1;
        const std::size_t dr = B.dim(r);
        if (dr == 0) continue;
        std::vector<Vec> block(dr, Vec(dl));
        bool any = false;
        for (std::size_t k = 0; k < dl; ++k) {
          const Vec& loc = wm.mode_local(v, n, B.offset(l) + k);
          for (std::size_t s = 0; s < loc.size(); ++s)
            if (sgn(loc[s]) != 0) {
              block[s][k] = loc[s];
              any = true;
            }
        }
        if (any)
          for (auto& row : block)
            if (!is_zero(row)) rows.push_back(std::move(row));
      }
    std::vector<Vec> kernel;
    if (rows.empty()) {
      for (std::size_t k = 0; k < dl; ++k) kernel.push_back(unit_vec(dl, k));
    } else {
      kernel = nullspace(Matrix::from_rows(dl, rows));
    }
    for (const auto& k : kernel) out.push_back(B.embed(k, l));
  }
  return out;
}

OmegaSpace omega_subspace(const ModulePresentation& wm, const ZhuAlgebra& a) {
  OmegaSpace om;
  om.basis = omega_vectors(wm);
  for (const auto& v : om.basis) om.levels.push_back(wm.basis().support_levels(v).front());
  const auto& V = a.voa();
  const std::size_t d = om.basis.size();
  Matrix basis_cols = Matrix::from_columns(wm.dim(), om.basis);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const std::size_t rep = a.representatives()[i];
    const long n = V.weight(rep) - 1;
    Matrix act(d, d);
    for (std::size_t j = 0; j < d; ++j) {
      Vec img = wm.act(unit_vec(V.dim(), rep), n, om.basis[j]);
      auto sol = solve(basis_cols, img);
      if (!sol) throw std::logic_error("o(v) does not preserve Omega(W)");
      act.set_col(j, *sol);
    }
    om.action.push_back(act);
  }
  return om;
}

}  // namespace zhukit
