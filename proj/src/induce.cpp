#include <zhukit/induce.hpp>

#include "parallel.hpp"

#include <algorithm>
#include <stdexcept>

namespace zhukit {

namespace {

std::vector<std::size_t> dims_of(const ModulePresentation& m) {
  std::vector<std::size_t> out;
  for (long l = 0; l <= m.cutoff(); ++l) out.push_back(m.basis().dim(l));
  return out;
}

struct RelationBatch {
  std::vector<Vec> rows;
  std::uint64_t checked = 0;
  std::uint64_t skipped = 0;
};

// In-window commutator and iterate relations with u fixed.
RelationBatch relations_for(const ModulePresentation& F, std::size_t u) {
  const auto& V = F.voa();
  const long D = F.cutoff();
  const long Vcut = V.cutoff();
  const long wu = V.weight(u);
  RelationBatch batch;
  auto level_ok = [&](long l) { return l <= D; };
  for (std::size_t v = 0; v < V.dim(); ++v) {
    const long wv = V.weight(v);
    for (std::size_t x = 0; x < F.dim(); ++x) {
      const long lx = F.basis().level(x);
      const Vec ex = unit_vec(F.dim(), x);
      for (long du = -D; du <= D; ++du)
        for (long dv = -D; dv <= D; ++dv) {
          const long target = lx + du + dv;
          if (target < 0 || target > D) continue;
          if (!level_ok(lx + du) || !level_ok(lx + dv)) {
            ++batch.skipped;
            continue;
          }
          const long p = wu - du - 1;
          const long q = wv - dv - 1;
          // [u_p, v_q] x = sum_i C(p,i) (u_i v)_{p+q-i} x
          bool escaped = false;
          Vec rel = F.act(unit_vec(V.dim(), u), p, F.act(unit_vec(V.dim(), v), q, ex));
          axpy(rel, Rat(-1), F.act(unit_vec(V.dim(), v), q, F.act(unit_vec(V.dim(), u), p, ex)));
          for (long i = 0; wu + wv - i - 1 >= 0; ++i) {
            if (wu + wv - i - 1 > Vcut) {
              escaped = true;
              break;
            }
            const Vec uiv = V.mode(u, i, v);
            if (is_zero(uiv)) continue;
            axpy(rel, -binomial(p, i), F.act(uiv, p + q - i, ex));
          }
          if (escaped) {
            ++batch.skipped;
          } else {
            ++batch.checked;
            if (!is_zero(rel)) batch.rows.push_back(std::move(rel));
          }
          if (p < 0) continue;
          // (u_p v)_q x = sum_{i=0}^{p} (-1)^i C(p,i) (u_{p-i} v_{q+i} x - (-1)^p v_{p+q-i} u_i x)
          if (wu + wv - p - 1 > Vcut || lx + wv - q - 1 > D || lx + wu - 1 > D) {
            ++batch.skipped;
            continue;
          }
          Vec it = F.act(V.mode(u, p, v), q, ex);
          const Rat sp = (p % 2) ? Rat(-1) : Rat(1);
          for (long i = 0; i <= p; ++i) {
            const Rat si = (i % 2) ? Rat(-1) : Rat(1);
            const Rat c = si * binomial(p, i);
            axpy(it, -c, F.act(unit_vec(V.dim(), u), p - i, F.act(unit_vec(V.dim(), v), q + i, ex)));
            axpy(it, c * sp, F.act(unit_vec(V.dim(), v), p + q - i, F.act(unit_vec(V.dim(), u), i, ex)));
          }
          ++batch.checked;
          if (!is_zero(it)) batch.rows.push_back(std::move(it));
        }
    }
  }
  return batch;
}

}  // namespace

std::optional<Rat> omega_scalar(const ZhuAlgebra& a, const ZhuModule& u) {
  if (u.dim == 0) return std::nullopt;
  const Vec p = a.project(a.voa().omega());
  Matrix rho(u.dim, u.dim);
  for (std::size_t j = 0; j < p.size(); ++j)
    if (sgn(p[j]) != 0) rho = rho + p[j] * u.basis_action[j];
  const Rat h = rho(0, 0);
  if (!(rho == h * Matrix::identity(u.dim))) return std::nullopt;
  return h;
}

InducedModule f_module(const ZhuAlgebra& a, const ZhuModule& u, int depth) {
  if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
  InducedModule out;
  out.base = u;
  out.depth = depth;
  if (u.dim == 0) {
    out.level_dims.assign(static_cast<std::size_t>(depth) + 1, 0);
    return out;
  }
  out.lowest_weight = omega_scalar(a, u).value_or(Rat(0));
  auto F = std::make_shared<ModulePresentation>(
      make_highest_weight_module(a.voa_ptr(), u.generator_action, depth, out.lowest_weight));

  const auto& V = a.voa();
  std::vector<RelationBatch> batches(V.dim());
  detail::parallel_for(V.dim(), [&](std::size_t i) { batches[i] = relations_for(*F, i); });
  std::vector<Vec> rows;
  for (auto& b : batches) {
    out.relations_checked += b.checked;
    out.relations_skipped += b.skipped;
    for (auto& r : b.rows) rows.push_back(std::move(r));
  }
  out.relation_rank = rank_of(rows, F->dim());
  if (out.relation_rank > 0) {
    auto q = quotient_module(*F, rows);
    F = std::make_shared<ModulePresentation>(q.module);
  }
  out.module = F;
  out.level_dims = dims_of(*F);
  return out;
}

std::vector<Subspace> top_annihilated(const ModulePresentation& w) {
  const auto& V = w.voa();
  const auto& B = w.basis();
  long gen_weight = 0;
  for (const auto& g : V.generators()) gen_weight = std::max(gen_weight, g.weight());
  if (V.cutoff() < gen_weight * w.cutoff())
    throw CutoffError("single-mode annihilator test at level " + std::to_string(w.cutoff()) + " needs V through weight " +
                      std::to_string(gen_weight * w.cutoff()));
  std::vector<Subspace> out;
  out.emplace_back(B.dim(0));
  for (long n = 1; n <= w.cutoff(); ++n) {
    // rows: one per (v, top coordinate); K_n is the common kernel
    std::vector<Vec> rows;
    for (std::size_t v = 0; v < V.dim(); ++v) {
      const long m = V.weight(v) + n - 1;
      std::vector<Vec> images;
      for (std::size_t j = 0; j < B.dim(n); ++j) images.push_back(w.mode_local(v, m, B.offset(n) + j));
      for (std::size_t k = 0; k < B.dim(0); ++k) {
        Vec row(B.dim(n));
        for (std::size_t j = 0; j < B.dim(n); ++j)
          if (!images[j].empty()) row[j] = images[j][k];
        if (!is_zero(row)) rows.push_back(std::move(row));
      }
    }
    Subspace k(B.dim(n));
    if (rows.empty()) {
      for (std::size_t j = 0; j < B.dim(n); ++j) k.add(unit_vec(B.dim(n), j));
    } else {
      k.add_all(nullspace(Matrix::from_rows(B.dim(n), rows)));
    }
    out.push_back(std::move(k));
  }
  return out;
}

InducedModule l_module(const InducedModule& f) {
  InducedModule out = f;
  if (!f.module) return out;
  const auto& W = *f.module;
  auto ks = top_annihilated(W);
  std::vector<Vec> span;
  for (long n = 1; n <= W.cutoff(); ++n)
    for (const auto& k : ks[static_cast<std::size_t>(n)].basis()) span.push_back(W.basis().embed(k, n));
  if (span.empty()) return out;
  auto q = quotient_module(W, span);
  out.module = std::make_shared<ModulePresentation>(q.module);
  out.level_dims = dims_of(*out.module);
  return out;
}

FrobeniusResult frobenius_check(const ZhuAlgebra& a, const InducedModule& f, const ModulePresentation& w) {
  FrobeniusResult res;
  if (!f.module) return res;
  const auto& F = *f.module;
  const auto& V = a.voa();
  if (w.voa().dim() != V.dim()) throw std::invalid_argument("modules over different vertex algebras");
  const auto& FB = F.basis();
  const auto& WB = w.basis();
  const long Wcut = w.cutoff();

  for (long s = 0; s <= Wcut; ++s) {
    const long top = std::min<long>(F.cutoff(), Wcut - s);
    // unknown phi_n(k, i): W level n+s coordinate k, F level n coordinate i
    std::vector<std::size_t> block(static_cast<std::size_t>(top) + 2, 0);
    for (long n = 0; n <= top; ++n)
      block[static_cast<std::size_t>(n) + 1] = block[static_cast<std::size_t>(n)] + WB.dim(n + s) * FB.dim(n);
    const std::size_t unknowns = block.back();
    if (unknowns == 0) continue;
    auto var = [&](long n, std::size_t k, std::size_t i) {
      return block[static_cast<std::size_t>(n)] + k * FB.dim(n) + i;
    };
    std::vector<std::vector<Vec>> rows(V.dim());
    detail::parallel_for(V.dim(), [&](std::size_t v) {
      const long wt = V.weight(v);
      for (long n = 0; n <= top; ++n)
        for (std::size_t i = 0; i < FB.dim(n); ++i) {
          const std::size_t x = FB.offset(n) + i;
          for (long t = -s; t <= top; ++t) {
            const long m = wt + n - t - 1;
            std::vector<Vec> wimg(WB.dim(n + s));
            for (std::size_t j = 0; j < wimg.size(); ++j) wimg[j] = w.mode_local(v, m, WB.offset(n + s) + j);
            const Vec& fimg = F.mode_local(v, m, x);
            for (std::size_t k = 0; k < WB.dim(t + s); ++k) {
              Vec row(unknowns);
              if (t >= 0 && !fimg.empty())
                for (std::size_t r = 0; r < fimg.size(); ++r)
                  if (sgn(fimg[r]) != 0) row[var(t, k, r)] += fimg[r];
              for (std::size_t j = 0; j < wimg.size(); ++j)
                if (!wimg[j].empty() && sgn(wimg[j][k]) != 0) row[var(n, j, i)] -= wimg[j][k];
              if (!is_zero(row)) rows[v].push_back(std::move(row));
            }
          }
        }
    });
    Subspace span(unknowns);
    for (const auto& r : rows) span.add_all(r);
    res.module_maps += unknowns - span.dim();
  }

  auto om = omega_subspace(w, a);
  const std::size_t d = om.basis.size();
  const std::size_t du = f.base.dim;
  if (d > 0 && du > 0) {
    std::vector<Vec> rows;
    for (std::size_t j = 0; j < a.dim(); ++j) {
      const Matrix& ru = f.base.basis_action[j];
      const Matrix& ro = om.action[j];
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < du; ++c) {
          // (T ru - ro T)(r, c), T(r', c') at r' * du + c'
          Vec row(d * du);
          for (std::size_t k = 0; k < du; ++k) row[r * du + k] += ru(k, c);
          for (std::size_t k = 0; k < d; ++k) row[k * du + c] -= ro(r, k);
          if (!is_zero(row)) rows.push_back(std::move(row));
        }
    }
    res.top_maps = d * du - rank_of(rows, d * du);
  }
  return res;
}

ZhuModule direct_sum(const ZhuModule& u1, const ZhuModule& u2) {
  ZhuModule out;
  out.dim = u1.dim + u2.dim;
  auto join = [&](const Matrix& x, const Matrix& y) {
    Matrix m(out.dim, out.dim);
    for (std::size_t i = 0; i < u1.dim; ++i)
      for (std::size_t j = 0; j < u1.dim; ++j) m(i, j) = x(i, j);
    for (std::size_t i = 0; i < u2.dim; ++i)
      for (std::size_t j = 0; j < u2.dim; ++j) m(u1.dim + i, u1.dim + j) = y(i, j);
    return m;
  };
  for (std::size_t c = 0; c < u1.generator_action.size(); ++c)
    out.generator_action.push_back(join(u1.generator_action[c], u2.generator_action[c]));
  for (std::size_t j = 0; j < u1.basis_action.size(); ++j)
    out.basis_action.push_back(join(u1.basis_action[j], u2.basis_action[j]));
  return out;
}

std::vector<std::size_t> convolve_dims(const std::vector<std::size_t>& d1, const std::vector<std::size_t>& d2) {
  const std::size_t len = std::min(d1.size(), d2.size());
  std::vector<std::size_t> out(len, 0);
  for (std::size_t n = 0; n < len; ++n)
    for (std::size_t i = 0; i <= n; ++i) out[n] += d1[i] * d2[n - i];
  return out;
}

}  // namespace zhukit
