#include <zhukit/dualrep.hpp>
#include <zhukit/fusion.hpp>
#include <zhukit/induce.hpp>
#include <zhukit/liealg.hpp>
#include <zhukit/suites.hpp>

#include <sstream>

namespace zhukit {

namespace {

template <class... Args>
std::string cat(const Args&... args) {
  std::ostringstream os;
  (os << ... << args);
  return os.str();
}

template <class What>
void expect(CheckTally& t, bool ok, What&& what) {
  ++t.checked;
  if (!ok) t.fail(what());
}

Rat small_rat(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
  return make_rat(num(rng), den(rng));
}

Rat nonzero_rat(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(1, 6), den(1, 5), sign(0, 1);
  return make_rat(sign(rng) ? num(rng) : -num(rng), den(rng));
}

Matrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = small_rat(rng);
  return m;
}

Vec random_vec(std::size_t n, std::mt19937_64& rng) {
  Vec v(n);
  for (auto& x : v) x = small_rat(rng);
  return v;
}

Matrix scalar(const Rat& x) {
  Matrix m(1, 1);
  m(0, 0) = x;
  return m;
}

Vec e(std::size_t n, std::size_t i) { return unit_vec(n, i); }

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) { return seed * 0x9E3779B97F4A7C15ULL + salt; }

// ---------------------------------------------------------------- formal

RationalForm random_form(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coef(-4, 4), deg(0, 3), pole(0, 3);
  RationalForm rf;
  const int d = deg(rng);
  for (int k = 0; k <= d; ++k) {
    Rat c = make_rat(coef(rng), 1 + (coef(rng) + 4) % 3);
    if (sgn(c) != 0) rf.g[k] = c;
  }
  if (rf.g.empty()) rf.g[0] = 1;
  rf.l = pole(rng);
  rf.k = pole(rng);
  rf.z = nonzero_rat(rng);
  return rf;
}

// (x - z)^k s at exponent e, from the certified coefficients of s.
Rat times_binomial(const ScalarSeries& s, long k, const Rat& z, long e) {
  Rat acc(0);
  for (long i = 0; i <= k; ++i) acc += binomial(k, i) * ipow(-z, i) * s.coeff(e - k + i);
  return acc;
}

// Vector-valued R(x) = x^{-l}(x-z)^{-k} Q(x) with Q's coefficients in a
// random plane U1 of Q^4.  f and g are the two expansions of R, so
// (x-z)^k f = (x-z)^k g; the coefficients of f must lie in the span of the
// coefficients of g on the side the expansion direction dictates.
CheckTally confinement_instance(std::mt19937_64& rng, int index) {
  CheckTally t;
  const std::size_t dim = 4;
  const Vec b1 = random_vec(dim, rng), b2 = random_vec(dim, rng);
  std::uniform_int_distribution<long> kd(1, 3), ld(0, 2), dd(0, 3);
  const long k = kd(rng), l = ld(rng), deg = dd(rng);
  const Rat z = nonzero_rat(rng);
  std::vector<LaurentPolynomial> q(dim);
  for (long d = 0; d <= deg; ++d) {
    const Rat alpha = small_rat(rng), beta = small_rat(rng);
    for (std::size_t j = 0; j < dim; ++j) {
      Rat c = alpha * b1[j] + beta * b2[j];
      if (sgn(c) != 0) q[j][d] = c;
    }
  }
  const Window win{-30, 8};
  std::vector<ScalarSeries> at0, atinf;
  for (std::size_t j = 0; j < dim; ++j) {
    RationalForm rf{q[j], l, k, z};
    at0.push_back(iota_expand(rf, Region::AtZero, win));
    atinf.push_back(iota_expand(rf, Region::AtInfinity, win));
  }
  auto coeff = [&](const std::vector<ScalarSeries>& s, long ex) {
    Vec v(dim);
    for (std::size_t j = 0; j < dim; ++j) v[j] = s[j].coeff(ex);
    return v;
  };
  Subspace u1(dim);
  u1.add(b1);
  u1.add(b2);
  const long margin = k + l + deg + 4;

  // f at zero, g at infinity: f_e lies in span{g_e' : e' <= e}.
  Subspace below(dim);
  for (long ex = win.lo; ex <= win.hi; ++ex) {
    below.add(coeff(atinf, ex));
    const Vec f = coeff(at0, ex);
    expect(t, u1.contains(f), [&] { return cat("instance ", index, ": at-zero coefficient x^", ex, " leaves U1"); });
    if (ex - win.lo >= margin)
      expect(t, below.contains(f), [&] { return cat("instance ", index, ": at-zero x^", ex, " outside lower span"); });
  }
  // f at infinity, g at zero: f_e lies in span{g_e' : e' >= e}.
  Subspace above(dim);
  for (long ex = win.hi; ex >= win.lo; --ex) {
    above.add(coeff(at0, ex));
    const Vec f = coeff(atinf, ex);
    expect(t, u1.contains(f), [&] { return cat("instance ", index, ": at-infinity x^", ex, " leaves U1"); });
    if (win.hi - ex >= margin)
      expect(t, above.contains(f), [&] { return cat("instance ", index, ": at-infinity x^", ex, " outside upper span"); });
  }
  return t;
}

// ---------------------------------------------------------------- zhu

std::size_t power_rank(const ZhuAlgebra& a, std::size_t gen, long gen_weight) {
  const auto& V = a.voa();
  std::vector<Vec> powers;
  Vec cur = e(V.dim(), V.vacuum());
  for (long k = 0; k * gen_weight <= a.cutoff(); ++k) {
    powers.push_back(a.project(cur));
    if ((k + 1) * gen_weight <= a.cutoff()) cur = zhu_star(V, e(V.dim(), gen), cur);
  }
  return rank_of(powers, a.dim());
}

struct NamedVOA {
  std::string label;
  VOAPtr voa;
};

// theta(v) *_{P(z)} w, summed over the homogeneous parts of theta(v).
Vec theta_left(const ModulePresentation& W, std::size_t v, const Vec& w, const Rat& z) {
  const auto& V = W.voa();
  Vec out(W.dim());
  for (const auto& [wt, part] : V.homogeneous_parts(theta(V, e(V.dim(), v)))) axpy(out, Rat(1), left_pz(W, part, w, z));
  return out;
}

std::optional<DualElement> try_lift(const Matrix& phi, const ZhuBimodule& b, CheckTally& t) {
  try {
    auto f = lift_functional(phi, b);
    ++t.checked;
    return f;
  } catch (const CertificateError& ex) {
    t.fail(cat("lifted functional rejected its certificate: ", ex.what()));
    return std::nullopt;
  }
}

Matrix invert(const Matrix& p) {
  const std::size_t n = p.rows();
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto col = solve(p, e(n, i));
    if (!col) throw std::logic_error("matrix is singular");
    inv.set_col(i, *col);
  }
  return inv;
}

// Unit lower times unit upper triangular: always invertible.
Matrix random_invertible(std::size_t n, std::mt19937_64& rng) {
  Matrix lo = Matrix::identity(n), up = Matrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      lo(i, j) = small_rat(rng);
      up(j, i) = small_rat(rng);
    }
  return lo * up;
}

FinModule trivial_module(const FinAlgebra& a, std::size_t dim) {
  FinModule m;
  m.dim = dim;
  for (std::size_t i = 0; i < a.dim; ++i) m.action.push_back(sgn(a.unit[i]) ? Matrix::identity(dim) : Matrix(dim, dim));
  return m;
}

Json dims_json(const std::vector<std::size_t>& d) {
  Json j = Json::array();
  for (auto x : d) j.push_back(x);
  return j;
}

}  // namespace

// ---------------------------------------------------------------- samplers

bool kac_degenerate(const Rat& c, const Rat& h, int max_level) {
  // c = 13 - 6(t + 1/t); h_{r,s} = ((r^2-1)t + (s^2-1)/t)/4 - (rs-1)/2.
  const Rat sigma = (Rat(13) - c) / 6;
  for (long r = 1; r <= max_level; ++r)
    for (long s = r; r * s <= max_level; ++s) {
      const Rat a(r * r - 1), b(s * s - 1), kk = Rat(r * s - 1) / 2;
      if (r == s) {
        if (h == a * sigma / 4 - kk) return true;
        continue;
      }
      const Rat sum = (a + b) * sigma / 4 - 2 * kk;
      const Rat prod = (a * b * (sigma * sigma - 2) + a * a + b * b) / 16 - kk * (a + b) * sigma / 4 + kk * kk;
      if (h * h - h * sum + prod == 0) return true;
    }
  return false;
}

Rat sample_rat(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(1, 400), den(13, 97);
  return make_rat(num(rng), den(rng));
}

std::pair<Rat, Rat> generic_virasoro_pair(std::mt19937_64& rng, int max_level) {
  for (;;) {
    Rat c = sample_rat(rng), h = sample_rat(rng);
    if (!kac_degenerate(c, h, max_level)) return {c, h};
  }
}

// ---------------------------------------------------------------- shared tallies

CheckTally residue_identity_tally(const VOAPtr& voa, const Rat& z, std::size_t count, long max_v_weight,
                                  std::mt19937_64& rng) {
  CheckTally t;
  auto a = zhu_algebra(voa);
  auto b = bimodule_build(voa->adjoint(), z, a);
  const auto& W = *b.module;
  const auto& V = *voa;
  for (std::size_t trial = 0; trial < count; ++trial) {
    auto f = try_lift(random_matrix(1 + trial % 2, b.dim(), rng), b, t);
    if (!f) continue;
    for (std::size_t v = 0; v < V.dim(); ++v) {
      const long wt = V.weight(v);
      if (wt > max_v_weight) continue;
      auto right = dual_act(Side::Right, v, *f, wt - 1, wt - 1);
      auto left = dual_act(Side::Left, v, *f, wt - 1, wt - 1);
      for (std::size_t w = 0; w < W.dim(); ++w) {
        const Vec ew = e(W.dim(), w);
        const long lw = W.basis().level(w);
        if (lw <= right.domain)
          expect(t, right.modes.at(wt - 1).f.col(w) == (*f)(theta_left(W, v, ew, z)),
                 [&] { return cat("R-side residue identity fails: functional ", trial, ", v=", v, ", w=", w); });
        if (lw <= left.domain)
          expect(t, left.modes.at(wt - 1).f.col(w) == (*f)(right_pz(W, ew, e(V.dim(), v), z)),
                 [&] { return cat("L-side residue identity fails: functional ", trial, ", v=", v, ", w=", w); });
      }
    }
  }
  return t;
}

CheckTally three_term_tally(const VOAPtr& voa, const Rat& z, std::size_t count, long max_v_weight,
                            std::mt19937_64& rng) {
  CheckTally t;
  auto a = zhu_algebra(voa);
  auto b = bimodule_build(voa->adjoint(), z, a);
  for (std::size_t trial = 0; trial < count; ++trial) {
    CheckTally lift;
    auto f = try_lift(random_matrix(1, b.dim(), rng), b, lift);
    if (!f) {
      t.merge(lift);
      continue;
    }
    for (std::size_t v = 0; v < voa->dim(); ++v) {
      if (voa->weight(v) > max_v_weight) continue;
      auto r = three_term_check(*f, v, -2, 2, -3, 3);
      if (r.checked == 0) r.fail(cat("no bicoefficient decided for v=", v));
      t.merge(r);
    }
  }
  return t;
}

// ---------------------------------------------------------------- suites

SuiteResult suite_formal(std::uint64_t seed) {
  SuiteResult r;
  r.key = "formal";
  std::mt19937_64 rng(mix(seed, 1));
  CheckTally roundtrip, region, confine;
  const Window win{-16, 6};
  const int instances = 200;
  for (int t = 0; t < instances; ++t) {
    const RationalForm rf = random_form(rng);
    const auto inf = iota_expand(rf, Region::AtInfinity, win);
    const auto zero = iota_expand(rf, Region::AtZero, win);
    try {
      expect(roundtrip, recompose(inf, rf.l, rf.k, rf.z) == rf, [&] { return cat("recompose round trip, instance ", t); });
    } catch (const std::exception& ex) {
      ++roundtrip.checked;
      roundtrip.fail(cat("recompose threw on instance ", t, ": ", ex.what()));
    }
    for (const ScalarSeries* s : {&inf, &zero})
      for (long ex = win.lo + rf.k; ex <= win.hi; ++ex) {
        auto it = rf.g.find(ex + rf.l);
        const Rat want = it == rf.g.end() ? Rat(0) : it->second;
        expect(region, times_binomial(*s, rf.k, rf.z, ex) == want, [&] {
          return cat("(x-z)^k iota(f) != x^-l g at x^", ex, ", instance ", t, ", ", region_name(s->region()));
        });
      }
    confine.merge(confinement_instance(rng, t));
  }
  r.tally.merge(roundtrip);
  r.tally.merge(region);
  r.tally.merge(confine);
  r.details = {{"instances", instances},
               {"roundTripChecks", roundtrip.checked},
               {"regionChecks", region.checked},
               {"confinementChecks", confine.checked}};
  return r;
}

SuiteResult suite_zhu(std::uint64_t) {
  SuiteResult r;
  r.key = "zhu";
  struct Case {
    std::string label;
    VOAPtr voa;
    std::size_t expected;
    long gen_weight;
  };
  std::vector<Case> cases{{"heisenberg N=5", make_heisenberg(5), 6, 1},
                          {"virasoro c=1/2 N=6", make_virasoro(make_rat(1, 2), 6), 4, 2},
                          {"virasoro c=1 N=6", make_virasoro(Rat(1), 6), 4, 2},
                          {"virasoro c=26 N=6", make_virasoro(Rat(26), 6), 4, 2}};
  for (const auto& cs : cases) {
    auto a = zhu_algebra(cs.voa);
    auto ch = zhu_checks(a);
    CheckTally all;
    for (const auto* part : {&ch.identity, &ch.ideal, &ch.assoc, &ch.central, &ch.theta}) all.merge(*part);
    const double coverage =
        all.checked + all.skipped == 0 ? 0.0 : double(all.checked) / double(all.checked + all.skipped);
    r.tally.merge(all);
    expect(r.tally, coverage >= 0.9, [&] { return cat(cs.label, ": in-cutoff coverage below 90%"); });
    expect(r.tally, a.dim() == cs.expected, [&] { return cat(cs.label, ": quotient dim ", a.dim()); });
    const std::size_t pr = power_rank(a, cs.voa->generator_vectors()[0], cs.gen_weight);
    expect(r.tally, pr == a.dim(), [&] { return cat(cs.label, ": power-generation rank ", pr); });
    r.details[cs.label] = {{"quotientDim", a.dim()},
                           {"powerRank", pr},
                           {"checked", all.checked},
                           {"cutoffSkips", all.skipped},
                           {"coveragePercent", static_cast<long>(coverage * 100)}};
  }
  return r;
}

SuiteResult suite_bimodule(std::uint64_t seed) {
  SuiteResult r;
  r.key = "bimodule";
  std::mt19937_64 rng(mix(seed, 3));
  CheckTally axioms, rescale, residue;
  std::vector<NamedVOA> voas{{"heisenberg", make_heisenberg(5)}, {"virasoro c=1/2", make_virasoro(make_rat(1, 2), 5)}};
  for (const auto& [label, voa] : voas) {
    auto a = zhu_algebra(voa);
    const auto adj = voa->adjoint();
    const std::size_t d = voa->dim();
    for (const Rat& z : {Rat(-1), Rat(2), make_rat(1, 3)}) {
      const std::string tag = cat(label, " z=", to_string(z));
      auto b = bimodule_build(adj, z, a);
      auto ch = bimodule_checks(b, a);
      for (const auto* part : {&ch.well_defined, &ch.left_assoc, &ch.right_assoc, &ch.commute, &ch.unit})
        axioms.merge(*part);
      auto b2 = bimodule_build(rescale_module(adj, -1 / z), Rat(-1), a);
      expect(rescale, b2.reps == b.reps && b2.left == b.left && b2.right == b.right,
             [&] { return cat(tag, ": rescaled bimodule differs"); });
      r.details[tag] = {{"dim", b.dim()}};

      // residue identity between W at z and the rescaled W at -1
      const auto res = rescale_module(adj, -1 / z);
      std::uniform_int_distribution<std::size_t> pick(0, d - 1);
      for (int s = 0; s < 12; ++s) {
        const std::size_t i = pick(rng), j = pick(rng);
        const long wt = voa->weight(i);
        for (long m = -3; m <= 3; ++m)
          for (long n = -3; n <= 3; ++n) {
            if (wt + voa->weight(j) - m - 1 > voa->cutoff()) continue;
            Vec lhs = ipow(-z, -wt) * binomial_residue(adj, e(d, i), e(d, j), m, n, z);
            Vec rhs = ipow(-z, -m - 1) * binomial_residue(res, e(d, i), e(d, j), m, n, Rat(-1));
            expect(residue, lhs == rhs, [&] { return cat(tag, ": residue identity at (", i, ",", j, ",", m, ",", n, ")"); });
          }
      }
    }
  }
  // dim A_N(V,-1) as N grows; reported, not asserted
  Json growth = Json::object();
  for (int n = 1; n <= 5; ++n) {
    for (const auto& [label, voa] :
         std::vector<NamedVOA>{{"heisenberg", make_heisenberg(n)}, {"virasoro c=1/2", make_virasoro(make_rat(1, 2), n)}})
      growth[label].push_back(bimodule_build(voa->adjoint(), Rat(-1), zhu_algebra(voa)).dim());
  }
  r.details["stabilization"] = growth;
  r.tally.merge(axioms);
  r.tally.merge(rescale);
  r.tally.merge(residue);
  r.details["axiomChecks"] = axioms.checked;
  r.details["rescaleChecks"] = rescale.checked;
  r.details["residueChecks"] = residue.checked;
  return r;
}

SuiteResult suite_o_membership(std::uint64_t) {
  SuiteResult r;
  r.key = "o_membership";
  std::vector<NamedVOA> voas{{"virasoro c=1/2", make_virasoro(make_rat(1, 2), 7)}, {"heisenberg", make_heisenberg(6)}};
  std::size_t plain = 0, twisted = 0;
  for (const auto& [label, voa] : voas) {
    const auto adj = voa->adjoint();
    const std::size_t d = voa->dim();
    for (const Rat& z : {Rat(-1), Rat(2), make_rat(1, 3)}) {
      const Subspace o = o_subspace(adj, z);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          for (long n = 0; n <= 2; ++n)
            for (long m = 0; m <= n; ++m) {
              if (voa->weight(i) + voa->weight(j) + n + 1 > voa->cutoff()) continue;
              auto where = [&] { return cat(label, " z=", to_string(z), " (v,w,n,m)=(", i, ",", j, ",", n, ",", m, ")"); };
              expect(r.tally, o.contains(o_element(adj, e(d, i), e(d, j), z, n, m)),
                     [&] { return "shifted residue outside O(W,z): " + where(); });
              expect(r.tally, o.contains(o_element_twisted(adj, e(d, i), e(d, j), z, n, m)),
                     [&] { return "twisted residue outside O(W,z): " + where(); });
              ++plain;
              ++twisted;
            }
    }
  }
  expect(r.tally, plain >= 100, [&] { return cat("only ", plain, " instances"); });
  r.details = {{"shiftedInstances", plain}, {"twistedInstances", twisted}};
  return r;
}

SuiteResult suite_residue(std::uint64_t seed) {
  SuiteResult r;
  r.key = "residue";
  std::mt19937_64 rng(mix(seed, 5));
  const std::size_t per = 13;
  std::size_t functionals = 0;
  std::vector<NamedVOA> voas{{"virasoro c=1/2", make_virasoro(make_rat(1, 2), 4)}, {"heisenberg", make_heisenberg(4)}};
  for (const auto& [label, voa] : voas)
    for (const Rat& z : {Rat(-1), Rat(2)}) {
      auto t = residue_identity_tally(voa, z, per, 3, rng);
      r.details[cat(label, " z=", to_string(z))] = {{"functionals", per}, {"checks", t.checked}};
      r.tally.merge(t);
      functionals += per;
    }
  expect(r.tally, functionals >= 50, [&] { return cat("only ", functionals, " functionals"); });
  r.details["functionals"] = functionals;
  return r;
}

SuiteResult suite_omega_population(std::uint64_t seed) {
  SuiteResult r;
  r.key = "omega_population";
  std::mt19937_64 rng(mix(seed, 6));
  std::size_t population = 0, misclassified = 0, lifted_count = 0;
  std::vector<NamedVOA> voas{{"virasoro c=1/2", make_virasoro(make_rat(1, 2), 4)}, {"heisenberg", make_heisenberg(4)}};
  for (const auto& [label, voa] : voas)
    for (const Rat& z : {Rat(-1), Rat(2)}) {
      auto a = zhu_algebra(voa);
      auto b = bimodule_build(voa->adjoint(), z, a);
      const auto& W = *b.module;
      const Subspace& o = b.o;
      for (int t = 0; t < 26; ++t) {
        auto base = try_lift(random_matrix(1, b.dim(), rng), b, r.tally);
        if (!base) continue;
        DualElement f = *base;
        bool lifted = true;
        if (t >= 10) {
          Matrix g(1, W.dim());
          if (t < 18 || o.dim() == 0) {
            g = random_matrix(1, W.dim(), rng);
          } else {
            // nonzero on exactly one O basis vector
            g(0, o.pivots()[static_cast<std::size_t>(t) % o.dim()]) = nonzero_rat(rng);
          }
          f.f = f.f + g;
          f.certificates.clear();
          for (const auto& x : o.basis())
            if (!is_zero(g.apply(x))) lifted = false;
        }
        auto m = omega_membership(f);
        ++population;
        if (lifted) ++lifted_count;
        expect(r.tally, m.member == lifted, [&] {
          return cat(label, " z=", to_string(z), ": functional ", t, " misclassified",
                     m.witness ? " (" + m.witness->describe() + ")" : std::string());
        });
        if (m.member != lifted) ++misclassified;
        expect(r.tally, m.consistent(),
               [&] { return cat(label, " z=", to_string(z), ": certificate test disagrees with O-vanishing at ", t); });
      }
    }
  expect(r.tally, population >= 100, [&] { return cat("population of ", population); });
  r.details = {{"population", population}, {"lifted", lifted_count}, {"misclassified", misclassified}};
  return r;
}

SuiteResult suite_three_term(std::uint64_t seed) {
  SuiteResult r;
  r.key = "three_term";
  std::mt19937_64 rng(mix(seed, 7));
  std::size_t samples = 0;
  std::vector<NamedVOA> voas{{"virasoro c=26", make_virasoro(Rat(26), 6)}, {"heisenberg", make_heisenberg(6)}};
  for (const auto& [label, voa] : voas) {
    std::size_t low = 0;
    for (std::size_t v = 0; v < voa->dim(); ++v)
      if (voa->weight(v) <= 2) ++low;
    for (const Rat& z : {Rat(-1), make_rat(1, 3)}) {
      auto t = three_term_tally(voa, z, 3, 2, rng);
      r.details[cat(label, " z=", to_string(z))] = {{"samples", 3 * low}, {"bicoefficients", t.checked}};
      r.tally.merge(t);
      samples += 3 * low;
    }
  }
  expect(r.tally, samples >= 20, [&] { return cat("only ", samples, " samples"); });
  r.details["samples"] = samples;

  // the two dual actions commute, and do not depend on the certificate used
  CheckTally commute, independence;
  std::vector<NamedVOA> small{{"virasoro c=1/2", make_virasoro(make_rat(1, 2), 7)}, {"heisenberg", make_heisenberg(6)}};
  for (const auto& [label, voa] : small)
    for (const Rat& z : {Rat(-1), Rat(2)}) {
      auto a = zhu_algebra(voa);
      auto b = bimodule_build(voa->adjoint(), z, a);
      auto f = try_lift(random_matrix(1, b.dim(), rng), b, r.tally);
      if (!f) continue;
      const std::size_t g = voa->generator_vectors()[0];
      commute.merge(commutativity_check(*f, g, g, -1, 2, 3));
      const long wt = voa->weight(g);
      DualElement loose = *f;
      loose.certificates[g] = {wt + 1, wt + 1};
      for (Side side : {Side::Left, Side::Right}) {
        auto tight = dual_act(side, g, *f, -2, 2);
        auto wide = dual_act(side, g, loose, -2, 2);
        const auto& W = *b.module;
        for (long n = -2; n <= 2; ++n)
          for (std::size_t w = 0; w < W.dim(); ++w)
            if (W.basis().level(w) <= wide.domain)
              expect(independence, tight.modes.at(n).f.col(w) == wide.modes.at(n).f.col(w),
                     [&] { return cat(label, ": dual action depends on the certificate at n=", n, ", w=", w); });
      }
    }
  expect(commute, commute.checked > 0, [&] { return "no commutativity coefficient was decided"; });
  r.tally.merge(commute);
  r.tally.merge(independence);
  r.details["commutativityChecks"] = commute.checked;
  r.details["certificateIndependenceChecks"] = independence.checked;
  return r;
}

SuiteResult suite_liealg(std::uint64_t seed) {
  SuiteResult r;
  r.key = "liealg";
  std::mt19937_64 rng(mix(seed, 8));
  CheckTally anti, jacobi, degree, virasoro;
  std::vector<NamedVOA> voas{{"virasoro c=1/2", make_virasoro(make_rat(1, 2), 6)}, {"heisenberg", make_heisenberg(5)}};
  for (const auto& [label, voa] : voas) {
    BorcherdsLie g(voa);
    std::vector<ModeSymbol> syms;
    for (auto s : g.section())
      for (long m = -2; m <= 2; ++m) syms.push_back(ModeSymbol{s, m});
    std::uint64_t skipped = 0;
    for (const auto& x : syms)
      for (const auto& y : syms) {
        try {
          LieElement sum = g.bracket(x, y);
          for (const auto& [s, c] : sum)
            expect(degree, g.degree(s) == g.degree(x) + g.degree(y), [&] { return label + ": bracket breaks degree"; });
          add_to(sum, Rat(1), g.bracket(y, x));
          expect(anti, sum.empty(), [&] { return label + ": antisymmetry fails"; });
        } catch (const CutoffError&) {
          ++skipped;
        }
      }
    for (const auto& x : syms)
      for (const auto& y : syms)
        for (const auto& z : syms) {
          const LieElement ex{{x, 1}}, ey{{y, 1}}, ez{{z, 1}};
          try {
            LieElement t = g.bracket(ex, g.bracket(ey, ez));
            add_to(t, Rat(1), g.bracket(ey, g.bracket(ez, ex)));
            add_to(t, Rat(1), g.bracket(ez, g.bracket(ex, ey)));
            expect(jacobi, t.empty(), [&] {
              return cat(label, ": Jacobi fails at ", g.to_string(ex), ", ", g.to_string(ey), ", ", g.to_string(ez));
            });
          } catch (const CutoffError&) {
            ++skipped;
          }
        }
    r.details[label] = {{"symbols", syms.size()}, {"cutoffSkips", skipped}};
  }
  std::vector<Rat> charges{make_rat(-22, 5), sample_rat(rng)};
  for (const Rat& c : charges) {
    auto v = make_virasoro(c, 6);
    BorcherdsLie g(v);
    const std::size_t om = v->generator_vectors()[0];
    for (long m = -3; m <= 3; ++m)
      for (long n = -3; n <= 3; ++n) {
        LieElement lhs = g.bracket(ModeSymbol{om, m + 1}, ModeSymbol{om, n + 1});
        LieElement rhs;
        if (m != n) rhs[ModeSymbol{om, m + n + 1}] = Rat(m - n);
        if (m + n == 0 && m * m * m != m) add_to(rhs, c * Rat(m * m * m - m) / 12, LieElement{{g.central(), 1}});
        expect(virasoro, lhs == rhs, [&] { return cat("[L(", m, "),L(", n, ")] wrong at c=", to_string(c)); });
      }
  }
  r.tally.merge(anti);
  r.tally.merge(degree);
  r.tally.merge(jacobi);
  r.tally.merge(virasoro);
  r.details["antisymmetryChecks"] = anti.checked;
  r.details["jacobiChecks"] = jacobi.checked;
  r.details["virasoroChecks"] = virasoro.checked;
  return r;
}

SuiteResult suite_reduction(std::uint64_t seed) {
  SuiteResult r;
  r.key = "reduction";
  std::mt19937_64 rng(mix(seed, 9));
  auto [c, h] = generic_virasoro_pair(rng, 4);
  auto heis = make_heisenberg(5);
  auto vir = make_virasoro(make_rat(1, 2), 6);
  auto virg = make_virasoro(c, 5);
  const Rat mu = sample_rat(rng);
  struct Case {
    std::string label;
    ModulePresentation w;
  };
  std::vector<Case> cases{{"heisenberg adjoint", heis->adjoint()},
                          {"virasoro adjoint", vir->adjoint()},
                          {"virasoro highest weight", make_highest_weight_module(virg, {scalar(h)}, 3, h)},
                          {"heisenberg fock", make_highest_weight_module(heis, {scalar(mu)}, 4, mu * mu / 2)}};
  std::size_t valid_total = 0;
  for (const auto& cs : cases) {
    const auto& W = cs.w;
    std::uniform_int_distribution<std::size_t> pv(0, W.voa().dim() - 1), pw(0, W.dim() - 1);
    std::uniform_int_distribution<long> pm(-3, 3);
    std::size_t valid = 0, attempts = 0;
    while (valid < 60 && attempts < 20000) {
      ++attempts;
      const std::size_t u = pv(rng), v = pv(rng), w = pw(rng);
      const long p = pm(rng), q = pm(rng);
      auto ok = lemma_reduction_holds(W, u, v, w, p, q);
      if (!ok) continue;
      ++valid;
      expect(r.tally, *ok, [&] { return cat(cs.label, ": reduction fails at (u,v,w,p,q)=(", u, ",", v, ",", w, ",", p, ",", q, ")"); });
    }
    r.details[cs.label] = {{"instances", valid}, {"attempts", attempts}};
    valid_total += valid;
  }
  expect(r.tally, valid_total >= 200, [&] { return cat("only ", valid_total, " valid instances"); });
  r.details["instances"] = valid_total;
  return r;
}

SuiteResult suite_induction(std::uint64_t seed) {
  SuiteResult r;
  r.key = "induction";
  std::mt19937_64 rng(mix(seed, 10));
  auto& t = r.tally;

  // generic Verma-type dimensions, L(0) eigenvalues, and L = F
  auto [c, h] = generic_virasoro_pair(rng, 4);
  auto a8 = zhu_algebra(make_virasoro(c, 8));
  auto f = f_module(a8, zhu_module_from_generators(a8, {scalar(h)}), 4);
  expect(t, f.level_dims == std::vector<std::size_t>{1, 1, 2, 3, 5}, [&] { return "generic F(C_h) level dims"; });
  expect(t, f.relation_rank == 0, [&] { return "relation pass cut the generic module"; });
  const auto& F = *f.module;
  for (std::size_t x = 0; x < F.dim(); ++x)
    expect(t, F.act(a8.voa().omega(), 1, e(F.dim(), x)) == (h + F.basis().level(x)) * e(F.dim(), x),
           [&] { return cat("L(0) is not h+n on basis vector ", x); });
  auto ax = axiom_check(F, 300, mix(seed, 11));
  expect(t, ax.passed, [&] { return "axioms fail on F(C_h)"; });
  auto lg = l_module(f);
  expect(t, lg.level_dims.size() > 1 && lg.level_dims[1] == 1, [&] { return "L(C_h) level 1 at generic h"; });
  expect(t, lg.level_dims == f.level_dims, [&] { return "generic L(C_h) differs from F(C_h)"; });
  r.details["generic"] = {{"c", to_string(c)}, {"h", to_string(h)}, {"levels", dims_json(f.level_dims)},
                          {"quotientLevels", dims_json(lg.level_dims)}};

  // Heisenberg Fock space
  auto ah = zhu_algebra(make_heisenberg(5));
  const Rat mu = sample_rat(rng);
  auto fh = f_module(ah, zhu_module_from_generators(ah, {scalar(mu)}), 5);
  expect(t, fh.level_dims == std::vector<std::size_t>{1, 1, 2, 3, 5, 7}, [&] { return "Fock level dims"; });

  // h = 0: L(-1)u is killed
  auto a6 = zhu_algebra(make_virasoro(c, 6));
  auto cu = [&](const Rat& x) { return zhu_module_from_generators(a6, {scalar(x)}); };
  auto f0 = f_module(a6, cu(Rat(0)), 3);
  auto l0 = l_module(f0);
  expect(t, l0.level_dims[1] == 0, [&] { return "L(C_0) level 1 is not zero"; });
  expect(t, axiom_check(*l0.module, 200, mix(seed, 12)).passed, [&] { return "axioms fail on L(C_0)"; });
  r.details["h0"] = {{"levels", dims_json(f0.level_dims)}, {"quotientLevels", dims_json(l0.level_dims)}};

  // Frobenius reciprocity on three fixtures
  auto fh3 = f_module(a6, cu(h), 3);
  const Rat h2 = h + make_rat(1, 7);
  auto fo = f_module(a6, cu(h2), 3);
  auto f1 = f_module(a6, cu(Rat(1)), 2);
  struct Fx {
    std::string label;
    FrobeniusResult res;
    std::size_t expected;
  };
  std::vector<Fx> fixtures{{"F(C_h) -> F(C_h)", frobenius_check(a6, fh3, *fh3.module), 1},
                           {"F(C_h) -> F(C_h')", frobenius_check(a6, fh3, *fo.module), 0},
                           {"F(C_1) -> F(C_0)", frobenius_check(a6, f1, *f0.module), 1}};
  Json fr = Json::object();
  for (const auto& fx : fixtures) {
    expect(t, fx.res.equal(), [&] { return fx.label + ": Frobenius dimensions differ"; });
    expect(t, fx.res.top_maps == fx.expected, [&] { return fx.label + ": unexpected Hom dimension"; });
    fr[fx.label] = {{"dim1", fx.res.module_maps}, {"dim2", fx.res.top_maps}};
  }
  r.details["frobenius"] = fr;

  // direct sum and tensor factorization
  auto d1 = fh3.level_dims, d2 = fo.level_dims;
  auto sum = f_module(a6, direct_sum(cu(h), cu(h2)), 3);
  for (std::size_t n = 0; n < 4; ++n)
    expect(t, sum.level_dims[n] == d1[n] + d2[n], [&] { return cat("direct sum level ", n); });
  auto ah4 = zhu_algebra(make_heisenberg(4));
  auto fhe = f_module(ah4, zhu_module_from_generators(ah4, {scalar(mu)}), 3);
  auto both = make_free_field_voa(
      {GeneratorSpec{GeneratorKind::Heisenberg, 0, "a"}, GeneratorSpec{GeneratorKind::Virasoro, c, "L"}}, 4);
  auto at = zhu_algebra(both);
  auto ft = f_module(at, zhu_module_from_generators(at, {scalar(mu), scalar(h2)}), 3);
  expect(t, ft.level_dims == convolve_dims(fhe.level_dims, d2), [&] { return "tensor factorization"; });
  r.details["tensorLevels"] = dims_json(ft.level_dims);
  return r;
}

SuiteResult suite_sandwich(std::uint64_t seed) {
  SuiteResult r;
  r.key = "sandwich";
  std::mt19937_64 rng(mix(seed, 13));
  auto [c, h] = generic_virasoro_pair(rng, 4);
  std::vector<std::pair<Rat, Rat>> fixtures{{c, h}, {make_rat(2, 5), make_rat(3, 7)}, {c, Rat(0)}};
  Json list = Json::array();
  for (const auto& [cc, hh] : fixtures) {
    auto a = zhu_algebra(make_virasoro(cc, 6));
    auto u = zhu_module_from_generators(a, {scalar(hh)});
    auto gen = induced_generate(a, u, 2, 2);
    const std::string tag = cat("c=", to_string(cc), " h=", to_string(hh));
    expect(r.tally, gen.u_vectors_in_omega, [&] { return tag + ": U-vectors fail Omega membership"; });
    expect(r.tally, gen.omega_images_are_lifts, [&] { return tag + ": depth-one Omega element outside Hom(A(V),U)"; });
    expect(r.tally, gen.positive_modes_vanish, [&] { return tag + ": positive-degree image is nonzero"; });
    expect(r.tally, gen.degree_dims.count(0) && gen.degree_dims.at(0) == 1, [&] { return tag + ": degree-0 image"; });
    Json dd = Json::object();
    for (const auto& [d, n] : gen.degree_dims) dd[std::to_string(d)] = n;
    list.push_back({{"c", to_string(cc)}, {"h", to_string(hh)}, {"degreeDims", dd}});
  }
  r.details["fixtures"] = list;
  return r;
}

SuiteResult suite_fusion(std::uint64_t seed) {
  SuiteResult r;
  r.key = "fusion";
  std::mt19937_64 rng(mix(seed, 14));
  auto& t = r.tally;
  std::map<std::string, int> families;
  const std::uint64_t count = 120;
  for (std::uint64_t i = 0; i < count; ++i) {
    auto inst = random_fusion_instance(mix(seed, 1000 + i));
    ++families[inst.family];
    auto valid = algebra_check(inst.a);
    valid.merge(module_check(inst.a, inst.u1));
    valid.merge(module_check(inst.a, inst.u2));
    valid.merge(bimodule_check(inst.a, inst.b));
    t.merge(valid);
    auto d = d_iso_check(inst.a, inst.b, inst.u1, inst.u2);
    expect(t, d.equal(), [&] { return cat("d-isomorphism fails on instance ", i, " (", inst.family, ")"); });
    expect(t, double_dual_isomorphic(inst.a, inst.u1), [&] { return cat("double dual, instance ", i); });
    // basis-order independence
    const Matrix p = random_invertible(inst.u1.dim, rng), q = random_invertible(inst.u2.dim, rng);
    auto v1 = change_basis(inst.u1, p, invert(p));
    auto v2 = change_basis(inst.u2, q, invert(q));
    const std::size_t base = fusion_dim(inst.a, inst.b, inst.u1, inst.u2);
    expect(t, fusion_dim(inst.a, inst.b, v1, v2) == base, [&] { return cat("fusion_dim changes with basis, instance ", i); });
  }
  expect(t, families.size() == 4, [&] { return "instance families missing"; });

  auto unit = unit_algebra();
  for (std::size_t b = 0; b <= 3; ++b)
    for (std::size_t u1 = 1; u1 <= 2; ++u1)
      for (std::size_t u2 = 1; u2 <= 2; ++u2) {
        FinBimodule bm{b, {Matrix::identity(b)}, {Matrix::identity(b)}};
        auto d = d_iso_check(unit, bm, trivial_module(unit, u1), trivial_module(unit, u2));
        expect(t, d.lhs == b * u1 * u2 && d.rhs == d.lhs, [&] { return cat("unit closed form at ", b, ",", u1, ",", u2); });
      }

  // end-to-end from Zhu-module data, under two quotient basis orders
  auto a = zhu_algebra(make_virasoro(make_rat(5, 7), 6));
  auto u0 = zhu_module_from_generators(a, {scalar(Rat(0))});
  auto u1 = zhu_module_from_generators(a, {scalar(Rat(1))});
  auto f0 = f_module(a, u0, 3);
  auto om = omega_subspace(*f0.module, a);
  ZhuModule omega_top{om.basis.size(), {}, om.action};
  std::vector<std::size_t> forward, backward;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    forward.push_back(i);
    backward.push_back(a.dim() - 1 - i);
  }
  Json pipeline = Json::object();
  struct Pair {
    std::string label;
    const ZhuModule* left;
    const ZhuModule* right;
    std::size_t expected;
  };
  const std::vector<Pair> pairs{{"C_1,Omega", &u1, &omega_top, 1},
                                {"C_0,Omega", &u0, &omega_top, 1},
                                {"C_0,C_1", &u0, &u1, 0},
                                {"C_1,C_1", &u1, &u1, 1}};
  for (const auto& [label, left, right, expected] : pairs) {
    const std::size_t fwd = fusion_from_zhu(*left, *right, forward);
    const std::size_t bwd = fusion_from_zhu(*left, *right, backward);
    expect(t, fwd == bwd, [&] { return label + ": fusion dimension depends on basis order"; });
    expect(t, fwd == expected, [&] { return cat(label, ": fusion dimension ", fwd); });
    pipeline[label] = fwd;
  }
  Json fam = Json::object();
  for (const auto& [k, v] : families) fam[k] = v;
  r.details = {{"instances", count}, {"families", fam}, {"omegaTopDim", omega_top.dim}, {"pipeline", pipeline}};
  return r;
}

// ---------------------------------------------------------------- registry

const std::vector<SuiteEntry>& suite_registry() {
  static const std::vector<SuiteEntry> entries{
      {1, "formal", "formal calculus: region identities, recompose, support confinement", 5, suite_formal},
      {2, "zhu", "Zhu algebra checks and quotient dimensions", 60, suite_zhu},
      {3, "bimodule", "generalized bimodule, rescaling equivalence, residue identity", 60, suite_bimodule},
      {4, "o_membership", "shifted and twisted residues lie in O(W,z)", 30, suite_o_membership},
      {5, "residue", "dual-action residue identities on lifted functionals", 120, suite_residue},
      {6, "omega_population", "Omega membership on a mixed population", 30, suite_omega_population},
      {7, "three_term", "three-term identity, L/R commutativity, certificate independence", 30, suite_three_term},
      {8, "liealg", "g(V) antisymmetry, Jacobi, Virasoro relations", 10, suite_liealg},
      {9, "reduction", "associativity reduction of u_p v_q w", 30, suite_reduction},
      {10, "induction", "induced modules, quotients, Frobenius reciprocity, dimension laws", 120, suite_induction},
      {11, "sandwich", "depth-one generation inside D(W,U)", 60, suite_sandwich},
      {12, "fusion", "d-isomorphism, unit closed form, basis-order independence", 30, suite_fusion},
  };
  return entries;
}

Json suite_to_json(const SuiteResult& r, const SuiteEntry& entry) {
  Json j = {{"id", entry.id},
            {"key", entry.key},
            {"title", entry.title},
            {"passed", r.passed()},
            {"checked", r.tally.checked},
            {"skipped", r.tally.skipped},
            {"failed", r.tally.failed}};
  j["witness"] = r.tally.witness.empty() ? Json(nullptr) : Json(r.tally.witness);
  j["details"] = r.details;
  return j;
}

Json verify_report(std::uint64_t seed) {
  Json suites = Json::array();
  bool all = true;
  for (const auto& entry : suite_registry()) {
    SuiteResult r;
    try {
      r = entry.run(seed);
    } catch (const std::exception& ex) {
      r.key = entry.key;
      r.tally.fail(cat("suite aborted: ", ex.what()));
    }
    all = all && r.passed();
    suites.push_back(suite_to_json(r, entry));
  }
  return {{"format", "zhukit-verify"}, {"seed", seed}, {"passed", all}, {"suites", suites}};
}

}  // namespace zhukit
