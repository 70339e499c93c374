#include <zhukit/dualrep.hpp>

#include "parallel.hpp"

#include <algorithm>
#include <stdexcept>

namespace zhukit {

namespace {

ScalarSeries coordinate(const VectorSeries& s, std::size_t u) {
  ScalarSeries out(s.region(), s.window());
  for (const auto& [e, c] : s.terms())
    if (u < c.size() && sgn(c[u]) != 0) out.set(e, c[u]);
  return out;
}

Matrix restrict_columns(const Matrix& f, const GradedBasis& basis, int domain) {
  Matrix out(f.rows(), f.cols());
  for (std::size_t j = 0; j < f.cols(); ++j)
    if (basis.level(j) <= domain) out.set_col(j, f.col(j));
  return out;
}

// g(x) -> g(x + z) for a polynomial g.
LaurentPolynomial shift_polynomial(const LaurentPolynomial& g, const Rat& z) {
  LaurentPolynomial out;
  for (const auto& [j, gj] : g) {
    if (j < 0) throw std::logic_error("numerator with a negative exponent");
    for (long i = 0; i <= j; ++i) {
      Rat& slot = out[i];
      slot += gj * binomial(j, i) * ipow(z, j - i);
    }
  }
  for (auto it = out.begin(); it != out.end();) it = sgn(it->second) == 0 ? out.erase(it) : std::next(it);
  return out;
}

const Certificate& certificate_for(const DualElement& f, std::size_t v) {
  auto it = f.certificates.find(v);
  if (it == f.certificates.end())
    throw std::invalid_argument("no pole certificate recorded for V basis vector " + std::to_string(v));
  return it->second;
}

}  // namespace

Vec DualElement::operator()(const Vec& w) const {
  const auto& basis = module->basis();
  for (long lw : basis.support_levels(w))
    if (lw > domain) throw CutoffError("functional evaluated above its domain level " + std::to_string(domain));
  return f.apply(w);
}

std::string CertificateViolation::describe() const {
  return "v=" + std::to_string(v) + " w=" + std::to_string(w) + " exponent=" + std::to_string(exponent);
}

VectorSeries dual_fyo(const DualElement& f, std::size_t v, std::size_t w) {
  const auto& W = *f.module;
  const auto& V = W.voa();
  const long wt = V.weight(v);
  const long lw = W.basis().level(w);
  VectorSeries y = y_opposite(W, unit_vec(V.dim(), v), unit_vec(W.dim(), w));
  y = y.restrict_to({lw - wt - f.domain, lw - wt});
  VectorSeries out(Region::AtInfinity, y.window());
  for (const auto& [e, c] : y.terms()) out.set(e, f.f.apply(c));
  return out;
}

int reduced_domain(const DualElement& f, std::size_t v, const Certificate& c) {
  const long wt = f.module->voa().weight(v);
  return static_cast<int>(std::min<long>(f.domain + wt - c.k - c.l, f.module->cutoff()));
}

std::optional<CertificateViolation> check_certificate(const DualElement& f, std::size_t v, const Certificate& c) {
  const auto& W = *f.module;
  const int top = reduced_domain(f, v, c);
  for (std::size_t w = 0; w < W.dim(); ++w) {
    if (W.basis().level(w) > top) continue;
    VectorSeries s = dual_fyo(f, v, w);
    for (std::size_t u = 0; u < f.u_dim(); ++u) {
      try {
        recompose(coordinate(s, u), c.l, c.k, f.z);
      } catch (const CertificateError& err) {
        return CertificateViolation{v, w, err.exponent()};
      }
    }
  }
  return std::nullopt;
}

VectorSeries dual_series(Side side, const DualElement& f, std::size_t v, std::size_t w, long hi) {
  const Certificate& c = certificate_for(f, v);
  if (f.module->basis().level(w) > reduced_domain(f, v, c))
    throw CutoffError("w lies above the domain the certificate determines");
  VectorSeries s = dual_fyo(f, v, w);
  const long lo = -std::max(c.k, c.l);
  VectorSeries out(Region::AtZero, {lo, hi});
  for (std::size_t u = 0; u < f.u_dim(); ++u) {
    RationalForm rf = recompose(coordinate(s, u), c.l, c.k, f.z);
    if (side == Side::Left) rf = RationalForm{shift_polynomial(rf.g, f.z), c.k, c.l, -f.z};
    ScalarSeries e = iota_expand(rf, Region::AtZero, {lo, hi});
    for (const auto& [x, q] : e.terms()) {
      if (x < lo || x > hi) continue;
      Vec slot = out.coeff(x);
      if (slot.empty()) slot.assign(f.u_dim(), Rat(0));
      slot[u] += q;
      out.set(x, slot);
    }
  }
  return out;
}

ModeActionResult dual_act(Side side, std::size_t v, const DualElement& f, long n_min, long n_max) {
  const auto& W = *f.module;
  ModeActionResult res;
  res.domain = reduced_domain(f, v, certificate_for(f, v));
  if (res.domain < 0) throw CutoffError("the certificate leaves no domain for the image");
  for (long n = n_min; n <= n_max; ++n) {
    DualElement img;
    img.module = f.module;
    img.f = Matrix(f.u_dim(), W.dim());
    img.domain = res.domain;
    img.z = f.z;
    res.modes.emplace(n, std::move(img));
  }
  std::vector<std::size_t> ws;
  for (std::size_t w = 0; w < W.dim(); ++w)
    if (W.basis().level(w) <= res.domain) ws.push_back(w);
  std::vector<VectorSeries> series(ws.size());
  detail::parallel_for(ws.size(), [&](std::size_t i) { series[i] = dual_series(side, f, v, ws[i], -n_min - 1); });
  for (std::size_t i = 0; i < ws.size(); ++i)
    for (auto& [n, img] : res.modes) {
      Vec c = series[i].coeff(-n - 1);
      if (!c.empty()) img.f.set_col(ws[i], c);
    }
  return res;
}

DualElement lift_functional(const Matrix& phi, const ZhuBimodule& b) {
  if (phi.cols() != b.dim()) throw std::invalid_argument("functional width does not match A(W,z)");
  const auto& W = *b.module;
  DualElement f;
  f.module = b.module;
  f.z = b.z;
  f.domain = W.cutoff();
  f.f = Matrix(phi.rows(), W.dim());
  for (std::size_t j = 0; j < W.dim(); ++j) f.f.set_col(j, phi.apply(b.project(unit_vec(W.dim(), j))));
  const auto& V = W.voa();
  std::vector<std::optional<CertificateViolation>> bad(V.dim());
  detail::parallel_for(V.dim(), [&](std::size_t v) {
    const long wt = V.weight(v);
    if (wt > f.domain) return;
    bad[v] = check_certificate(f, v, {wt, wt});
  });
  for (std::size_t v = 0; v < V.dim(); ++v) {
    if (bad[v]) throw CertificateError("lifted functional fails its certificate at " + bad[v]->describe(), bad[v]->exponent);
    const long wt = V.weight(v);
    if (wt <= f.domain) f.certificates[v] = {wt, wt};
  }
  return f;
}

MembershipResult omega_membership(const DualElement& f) {
  const auto& W = *f.module;
  const auto& V = W.voa();
  MembershipResult r;
  std::vector<std::optional<CertificateViolation>> bad(V.dim());
  detail::parallel_for(V.dim(), [&](std::size_t v) {
    const long wt = V.weight(v);
    if (wt > f.domain) return;
    bad[v] = check_certificate(f, v, {wt, wt});
  });
  for (const auto& b : bad)
    if (b) {
      r.witness = b;
      break;
    }
  r.member = !r.witness;
  const Matrix g = restrict_columns(f.f, W.basis(), f.domain);
  r.vanishes_on_o = true;
  const Subspace o_span = o_subspace(W, f.z, f.domain);
  for (const auto& o : o_span.basis())
    if (!is_zero(g.apply(o))) {
      r.vanishes_on_o = false;
      break;
    }
  return r;
}

std::optional<Certificate> find_certificate(const DualElement& f, std::size_t v, long bound) {
  for (long total = 0; total <= 2 * bound; ++total) {
    std::optional<Certificate> join;
    for (long k = std::max(0L, total - bound); k <= std::min(total, bound); ++k) {
      Certificate c{k, total - k};
      if (reduced_domain(f, v, c) < 0) continue;
      if (check_certificate(f, v, c)) continue;
      if (!join) join = c;
      else join = Certificate{std::max(join->k, c.k), std::max(join->l, c.l)};
    }
    if (!join) continue;
    // several splits of the same total fit the window: the data cannot tell
    // them apart, so fall back to their join, which dominates each of them
    if (join->k <= bound && join->l <= bound && reduced_domain(f, v, *join) >= 0 && !check_certificate(f, v, *join))
      return join;
    return std::nullopt;
  }
  return std::nullopt;
}

CheckTally commutativity_check(const DualElement& f, std::size_t u, std::size_t v, long lo, long hi, long bound) {
  CheckTally t;
  const auto& W = *f.module;
  auto right = dual_act(Side::Right, v, f, lo, hi);
  auto left = dual_act(Side::Left, u, f, lo, hi);
  // u^L acting on each v^R_n f, and v^R acting on each u^L_m f
  std::map<long, std::optional<ModeActionResult>> lr, rl;
  auto attach = [&](const DualElement& g, std::size_t x, Side side) -> std::optional<ModeActionResult> {
    auto c = find_certificate(g, x, bound);
    if (!c) return std::nullopt;
    DualElement h = g;
    h.certificates[x] = *c;
    if (reduced_domain(h, x, *c) < 0) return std::nullopt;
    return dual_act(side, x, h, lo, hi);
  };
  for (long n = lo; n <= hi; ++n) lr[n] = attach(right.modes.at(n), u, Side::Left);
  for (long m = lo; m <= hi; ++m) rl[m] = attach(left.modes.at(m), v, Side::Right);
  for (long m = lo; m <= hi; ++m)
    for (long n = lo; n <= hi; ++n) {
      if (!lr[n] || !rl[m]) {
        ++t.skipped;
        continue;
      }
      const int domain = std::min(lr[n]->domain, rl[m]->domain);
      const auto& a = lr[n]->modes.at(m);
      const auto& b = rl[m]->modes.at(n);
      for (std::size_t w = 0; w < W.dim(); ++w) {
        if (W.basis().level(w) > domain) continue;
        ++t.checked;
        if (a.f.col(w) != b.f.col(w))
          t.fail("u^L_" + std::to_string(m) + " v^R_" + std::to_string(n) + " f differs from v^R_" + std::to_string(n) +
                 " u^L_" + std::to_string(m) + " f at u=" + std::to_string(u) + ", v=" + std::to_string(v) +
                 ", w=" + std::to_string(w));
      }
    }
  return t;
}

InducedGeneration induced_generate(const ZhuAlgebra& a, const ZhuModule& u, int max_weight, long max_degree) {
  const auto& V = a.voa();
  const int N = V.cutoff();
  if (max_weight > N) throw CutoffError("generating weight exceeds the cutoff");
  auto W = std::make_shared<ModulePresentation>(V.adjoint());
  const Rat z(-1);
  InducedGeneration out;
  out.image_domain = N - max_weight;

  // f_u(w) = [w] . u, an A(V)-module map A(V) -> U
  for (std::size_t i = 0; i < u.dim; ++i) {
    DualElement f;
    f.module = W;
    f.z = z;
    f.domain = N;
    f.f = Matrix(u.dim, W->dim());
    for (std::size_t w = 0; w < W->dim(); ++w) {
      const Vec p = a.project(unit_vec(V.dim(), w));
      Vec col(u.dim);
      for (std::size_t j = 0; j < p.size(); ++j)
        if (sgn(p[j]) != 0) axpy(col, p[j], u.basis_action[j].col(i));
      f.f.set_col(w, col);
    }
    for (std::size_t v = 0; v < V.dim(); ++v)
      if (V.weight(v) <= N) f.certificates[v] = {V.weight(v), V.weight(v)};
    out.u_vectors.push_back(std::move(f));
  }

  out.u_vectors_in_omega = true;
  for (const auto& f : out.u_vectors) {
    auto m = omega_membership(f);
    if (!m.member || !m.vanishes_on_o) out.u_vectors_in_omega = false;
  }

  out.positive_modes_vanish = true;
  out.omega_images_are_lifts = true;
  std::vector<std::pair<long, DualElement>> imgs;
  for (std::size_t v = 0; v < V.dim(); ++v) {
    const long wt = V.weight(v);
    if (wt > max_weight) continue;
    for (const auto& f : out.u_vectors) {
      auto res = dual_act(Side::Left, v, f, wt - 1 - max_degree, wt + 1);
      for (auto& [n, img] : res.modes) {
        const long degree = wt - n - 1;
        if (degree < 0) {
          if (!img.f.is_zero()) out.positive_modes_vanish = false;
          continue;
        }
        img.f = restrict_columns(img.f, W->basis(), out.image_domain);
        img.domain = out.image_domain;
        imgs.emplace_back(degree, std::move(img));
      }
    }
  }
  std::vector<MembershipResult> verdicts(imgs.size());
  detail::parallel_for(imgs.size(), [&](std::size_t i) { verdicts[i] = omega_membership(imgs[i].second); });
  for (std::size_t i = 0; i < imgs.size(); ++i)
    if (verdicts[i].member && !verdicts[i].vanishes_on_o) out.omega_images_are_lifts = false;

  for (auto& [d, img] : imgs) out.images[d].push_back(img);
  for (const auto& [d, list] : out.images) {
    std::vector<Vec> flat;
    for (const auto& img : list) {
      Vec x;
      for (std::size_t w = 0; w < W->dim(); ++w)
        if (W->basis().level(w) <= out.image_domain)
          for (std::size_t r = 0; r < img.f.rows(); ++r) x.push_back(img.f(r, w));
      flat.push_back(std::move(x));
    }
    out.degree_dims[d] = flat.empty() ? 0 : rank_of(flat, flat.front().size());
  }
  return out;
}

}  // namespace zhukit

namespace zhukit {

CheckTally three_term_check(const DualElement& f, std::size_t v, long n_lo, long n_hi, long e_lo, long e_hi) {
  const auto& W = *f.module;
  const long wt = W.voa().weight(v);
  const Certificate& c = certificate_for(f, v);
  const int top = reduced_domain(f, v, c);
  CheckTally tally;
  const Rat& z = f.z;
  for (std::size_t w = 0; w < W.dim(); ++w) {
    const long lw = W.basis().level(w);
    if (lw > top) continue;
    const VectorSeries fyo = dual_fyo(f, v, w);
    const VectorSeries right = dual_series(Side::Right, f, v, w, e_hi);
    const VectorSeries left = dual_series(Side::Left, f, v, w, -n_lo - 1);
    const long lo = fyo.window().lo;
    auto acc = [&](Vec& into, const Rat& s, const Vec& x) {
      if (!x.empty()) axpy(into, s, x);
    };
    for (long n = n_lo; n <= n_hi; ++n)
      for (long e = e_lo; e <= e_hi; ++e) {
        if (e - n < lo) {
          ++tally.skipped;
          continue;
        }
        Vec lhs(f.u_dim());
        // (x - z)^n at infinity: sum_j C(n,j) (-z)^j x^{n-j}
        for (long j = 0; e - n + j <= lw - wt; ++j) {
          if (n >= 0 && j > n) break;
          acc(lhs, binomial(n, j) * ipow(-z, j), fyo.coeff(e - n + j));
        }
        // (z - x)^n at zero: sum_j C(n,j) z^{n-j} (-x)^j
        const Rat sign = (n % 2 == 0) ? Rat(1) : Rat(-1);
        for (long j = 0; e - j >= -c.l; ++j) {
          if (n >= 0 && j > n) break;
          acc(lhs, -sign * binomial(n, j) * ipow(z, n - j) * ((j % 2) ? Rat(-1) : Rat(1)), right.coeff(e - j));
        }
        Vec rhs(f.u_dim());
        for (long i = 0; -(n + i) - 1 >= -c.k; ++i)
          acc(rhs, ipow(z, -e - i - 1) * binomial(e + i, i) * ((i % 2) ? Rat(-1) : Rat(1)), left.coeff(-(n + i) - 1));
        ++tally.checked;
        if (lhs != rhs)
          tally.fail("three-term mismatch at v=" + std::to_string(v) + " w=" + std::to_string(w) +
                     " n=" + std::to_string(n) + " e=" + std::to_string(e));
      }
  }
  return tally;
}

}  // namespace zhukit
