#include <zhukit/voa.hpp>

#include "parallel.hpp"
#include "pbw.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <random>
#include <stdexcept>
#include <thread>

namespace zhukit {

namespace {
const Vec kEmpty;
}

// ---------------------------------------------------------------- GradedBasis

GradedBasis::GradedBasis(Rat h, std::vector<std::size_t> dims, std::vector<std::string> labels)
    : h_(std::move(h)), dims_(std::move(dims)), labels_(std::move(labels)) {
  std::size_t total = 0;
  for (std::size_t l = 0; l < dims_.size(); ++l) {
    offsets_.push_back(total);
    for (std::size_t i = 0; i < dims_[l]; ++i) levels_.push_back(static_cast<long>(l));
    total += dims_[l];
  }
  if (total != labels_.size()) throw std::invalid_argument("GradedBasis: label count does not match dimensions");
}

std::size_t GradedBasis::dim(long level) const {
  if (level < 0 || level > cutoff()) return 0;
  return dims_[static_cast<std::size_t>(level)];
}

Vec GradedBasis::component(const Vec& v, long level) const {
  Vec out(dim(level));
  if (out.empty()) return out;
  const std::size_t off = offset(level);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = v.at(off + i);
  return out;
}

Vec GradedBasis::embed(const Vec& local, long level) const {
  Vec out(size());
  if (local.empty()) return out;
  const std::size_t off = offset(level);
  for (std::size_t i = 0; i < local.size(); ++i) out[off + i] = local[i];
  return out;
}

std::vector<long> GradedBasis::support_levels(const Vec& v) const {
  std::vector<long> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sgn(v[i]) == 0) continue;
    long l = level(i);
    if (out.empty() || out.back() != l) out.push_back(l);
  }
  return out;
}

// ---------------------------------------------------------------- ActionTable

ActionTable::ActionTable(std::size_t v_count, std::size_t w_count, int result_cutoff)
    : v_count_(v_count),
      w_count_(w_count),
      result_cutoff_(result_cutoff),
      data_(v_count * w_count * static_cast<std::size_t>(result_cutoff + 1)) {}

const Vec& ActionTable::get(std::size_t v, std::size_t w, long r) const {
  return data_[(v * w_count_ + w) * static_cast<std::size_t>(result_cutoff_ + 1) + static_cast<std::size_t>(r)];
}

void ActionTable::set(std::size_t v, std::size_t w, long r, Vec local) {
  if (is_zero(local)) local.clear();
  data_[(v * w_count_ + w) * static_cast<std::size_t>(result_cutoff_ + 1) + static_cast<std::size_t>(r)] =
      std::move(local);
}

// ---------------------------------------------------------------- ModulePresentation

ModulePresentation::ModulePresentation(std::shared_ptr<const VOAPresentation> voa, GradedBasis basis,
                                       std::shared_ptr<const ActionTable> table)
    : voa_(std::move(voa)), basis_(std::move(basis)), table_(std::move(table)) {
  if (table_->v_count() != voa_->dim() || table_->w_count() != basis_.size() ||
      table_->result_cutoff() != basis_.cutoff())
    throw std::invalid_argument("ModulePresentation: action table does not match the bases");
}

long ModulePresentation::result_level(std::size_t v, long n, std::size_t w) const {
  return voa_->weight(v) + basis_.level(w) - n - 1;
}

const Vec& ModulePresentation::mode_local(std::size_t v, long n, std::size_t w) const {
  const long r = result_level(v, n, w);
  if (r < 0) return kEmpty;
  if (r > cutoff()) {
    throw CutoffError("mode " + voa_->basis().label(v) + "_" + std::to_string(n) + " on " + basis_.label(w) +
                      " needs level " + std::to_string(r) + " above cutoff " + std::to_string(cutoff()));
  }
  return table_->get(v, w, r);
}

Vec ModulePresentation::mode(std::size_t v, long n, std::size_t w) const {
  const Vec& local = mode_local(v, n, w);
  return basis_.embed(local, result_level(v, n, w));
}

Vec ModulePresentation::act(const Vec& v, long n, const Vec& w) const {
  Vec out(dim());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sgn(v[i]) == 0) continue;
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (sgn(w[j]) == 0) continue;
      const Vec& local = mode_local(i, n, j);
      if (local.empty()) continue;
      const std::size_t off = basis_.offset(result_level(i, n, j));
      Rat s = v[i] * w[j];
      for (std::size_t k = 0; k < local.size(); ++k)
        if (sgn(local[k]) != 0) out[off + k] += s * local[k];
    }
  }
  return out;
}

Vec ModulePresentation::virasoro(long n, const Vec& w) const {
  if (is_zero(voa_->omega())) throw CutoffError("the Virasoro vector lies above the cutoff");
  return act(voa_->omega(), n + 1, w);
}

// ---------------------------------------------------------------- VOAPresentation

VOAPresentation::VOAPresentation(GradedBasis basis, std::shared_ptr<const ActionTable> table, std::size_t vacuum,
                                 Vec omega, Rat central_charge)
    : basis_(std::move(basis)),
      table_(std::move(table)),
      vacuum_(vacuum),
      omega_(std::move(omega)),
      c_(std::move(central_charge)) {
  if (omega_.size() != basis_.size()) throw std::invalid_argument("VOAPresentation: omega has the wrong size");
  if (basis_.level(vacuum_) != 0) throw std::invalid_argument("VOAPresentation: vacuum must have weight 0");
  if (!zhukit::is_zero(omega_)) {
    Matrix m(dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j) {
      Vec col(dim());
      for (std::size_t i = 0; i < dim(); ++i) {
        if (sgn(omega_[i]) == 0) continue;
        const long r = basis_.level(i) + basis_.level(j) - 3;
        if (r < 0) continue;
        const Vec& loc = table_->get(i, j, r);
        for (std::size_t k = 0; k < loc.size(); ++k) col[basis_.offset(r) + k] += omega_[i] * loc[k];
      }
      m.set_col(j, col);
    }
    l1_ = std::move(m);
  }
}

void VOAPresentation::set_generators(std::vector<GeneratorSpec> gens, std::vector<std::size_t> vectors,
                                     std::vector<BasisFactor> factors) {
  generators_ = std::move(gens);
  generator_vectors_ = std::move(vectors);
  factors_ = std::move(factors);
}

ModulePresentation VOAPresentation::adjoint() const { return ModulePresentation(shared_from_this(), basis_, table_); }

Matrix VOAPresentation::l0_matrix() const {
  Matrix m(dim(), dim());
  auto adj = adjoint();
  for (std::size_t j = 0; j < dim(); ++j) m.set_col(j, adj.virasoro(0, unit_vec(dim(), j)));
  return m;
}

const Matrix& VOAPresentation::l1_matrix() const {
  if (!l1_) throw CutoffError("L(1) is unknown: the Virasoro vector lies above the cutoff");
  return *l1_;
}

void VOAPresentation::set_l1(Matrix l1) {
  if (l1.rows() != dim() || l1.cols() != dim()) throw std::invalid_argument("L(1) matrix has the wrong size");
  l1_ = std::move(l1);
}

Matrix VOAPresentation::lminus1_matrix() const {
  Matrix m(dim(), dim());
  auto adj = adjoint();
  for (std::size_t j = 0; j < dim(); ++j) {
    if (weight(j) >= cutoff()) continue;
    m.set_col(j, adj.virasoro(-1, unit_vec(dim(), j)));
  }
  return m;
}

std::vector<std::pair<long, Vec>> VOAPresentation::homogeneous_parts(const Vec& v) const {
  std::vector<std::pair<long, Vec>> out;
  for (long l : basis_.support_levels(v)) out.emplace_back(l, basis_.embed(basis_.component(v, l), l));
  return out;
}

// ---------------------------------------------------------------- construction by normal ordering

namespace {

struct VSide {
  std::vector<long> weights;
  std::vector<BasisFactor> factors;  // color -1 marks the vacuum
  std::vector<GeneratorSpec> gens;
};

long depth_of(const VSide& vs, std::size_t v) {
  long d = 0;
  while (vs.factors[v].color >= 0) {
    v = vs.factors[v].rest;
    ++d;
  }
  return d;
}

/// Computes v_n w for every V basis vector v and every engine basis vector
/// w with result level <= result_cutoff, by the iterate formula
/// (g_P v')_q = sum_i (-1)^i C(P,i) [g_{P-i} v'_{q+i} - (-1)^P v'_{P+q-i} g_i].
class ModeBuilder {
 public:
  ModeBuilder(const VSide& vs, detail::PbwEngine& engine, int w_cutoff) : vs_(vs), engine_(engine), n_(w_cutoff) {
    long max_depth = 0;
    long max_excess = 0;
    for (std::size_t v = 0; v < vs_.weights.size(); ++v) max_depth = std::max(max_depth, depth_of(vs_, v));
    for (const auto& g : vs_.gens) max_excess = std::max(max_excess, g.weight() - 1);
    excess_ = max_excess;
    max_depth_ = max_depth;
    ext_ = n_ + max_depth * max_excess + max_excess + 1;
    for (long l = 0; l <= ext_; ++l) {
      level_offset_.push_back(keys_.size());
      auto lb = engine_.level_basis(l);
      level_dim_.push_back(lb.size());
      for (auto& k : lb) {
        index_[k] = keys_.size();
        key_level_.push_back(l);
        keys_.push_back(std::move(k));
      }
    }
    tab_.resize(vs_.weights.size());
  }

  void build() {
    for (std::size_t v = 0; v < vs_.weights.size(); ++v) build_one(v);
  }

  std::size_t level_dim(long l) const { return level_dim_.at(static_cast<std::size_t>(l)); }
  const detail::PbwKey& key(std::size_t i) const { return keys_[i]; }
  std::size_t basis_size_upto(long l) const { return level_offset_.at(static_cast<std::size_t>(l + 1)); }

  /// Result for basis v on ext basis w at result level r (level-local).
  const Vec& result(std::size_t v, std::size_t w, long r) const {
    return tab_[v][w][static_cast<std::size_t>(r)];
  }

 private:
  using Sparse = std::map<std::size_t, Rat>;

  long bound(std::size_t v) const { return n_ + (max_depth_ - depth_of(vs_, v)) * excess_; }

  Sparse to_sparse(const detail::PbwState& st) const {
    Sparse out;
    for (const auto& [k, c] : st) {
      auto it = index_.find(k);
      if (it == index_.end()) throw std::logic_error("normal-ordering state left the extended basis");
      out[it->second] = c;
    }
    return out;
  }

  static void add_sparse(Sparse& acc, const Rat& s, const Sparse& x) {
    if (sgn(s) == 0) return;
    for (const auto& [i, c] : x) {
      Rat& slot = acc[i];
      slot += s * c;
      if (sgn(slot) == 0) acc.erase(i);
    }
  }

  // g_j on a sparse vector, g = generator `color`.
  Sparse gen_mode(int color, long j, const Sparse& w) {
    const long m = j - vs_.gens[static_cast<std::size_t>(color)].weight() + 1;
    Sparse out;
    for (const auto& [i, c] : w) {
      const detail::PbwState& st = engine_.apply(color, m, keys_[i]);
      add_sparse(out, c, to_sparse(st));
    }
    return out;
  }

  // v_q on a sparse vector (v already tabulated).
  Sparse vmode(std::size_t v, long q, const Sparse& w) const {
    if (vs_.factors[v].color < 0) return q == -1 ? w : Sparse{};
    Sparse out;
    for (const auto& [i, c] : w) {
      const long lw = key_level_[i];
      const long r = vs_.weights[v] + lw - q - 1;
      if (r < 0) continue;
      if (r > n_ || lw > bound(v)) throw std::logic_error("iterate formula left its tabulated range");
      const Vec& loc = tab_[v][i][static_cast<std::size_t>(r)];
      const std::size_t off = level_offset_[static_cast<std::size_t>(r)];
      for (std::size_t k = 0; k < loc.size(); ++k)
        if (sgn(loc[k]) != 0) {
          Rat& slot = out[off + k];
          slot += c * loc[k];
          if (sgn(slot) == 0) out.erase(off + k);
        }
    }
    return out;
  }

  void build_one(std::size_t v) {
    const long bv = bound(v);
    const std::size_t wcount = basis_size_upto(bv);
    tab_[v].assign(wcount, std::vector<Vec>(static_cast<std::size_t>(n_ + 1)));
    const BasisFactor f = vs_.factors[v];
    for (std::size_t w = 0; w < wcount; ++w) {
      const long lw = key_level_[w];
      for (long r = 0; r <= n_; ++r) {
        const long q = vs_.weights[v] + lw - 1 - r;
        Sparse res;
        const Sparse wv{{w, Rat(1)}};
        if (f.color < 0) {
          if (q == -1) res = wv;
        } else {
          const std::size_t vp = f.rest;
          const long wtg = vs_.gens[static_cast<std::size_t>(f.color)].weight();
          const long P = -f.part + wtg - 1;
          const long wvp = vs_.weights[vp];
          const int signP = (P % 2 == 0) ? 1 : -1;
          for (long i = 0; i <= wvp + lw - q - 1; ++i) {
            Rat coef = binomial(P, i) * ((i % 2) ? -1 : 1);
            Sparse inner = vmode(vp, q + i, wv);
            if (inner.empty()) continue;
            add_sparse(res, coef, gen_mode(f.color, P - i, inner));
          }
          for (long i = 0; i <= lw + wtg - 1; ++i) {
            Rat coef = binomial(P, i) * ((i % 2) ? -1 : 1) * (-signP);
            Sparse gw = gen_mode(f.color, i, wv);
            if (gw.empty()) continue;
            add_sparse(res, coef, vmode(vp, P + q - i, gw));
          }
        }
        Vec loc(level_dim(r));
        const std::size_t off = level_offset_[static_cast<std::size_t>(r)];
        for (const auto& [i, c] : res) {
          if (key_level_[i] != r) throw std::logic_error("mode result has the wrong level");
          loc[i - off] = c;
        }
        if (is_zero(loc)) loc.clear();
        tab_[v][w][static_cast<std::size_t>(r)] = std::move(loc);
      }
    }
  }

  const VSide& vs_;
  detail::PbwEngine& engine_;
  long n_;
  long ext_ = 0;
  long excess_ = 0;
  long max_depth_ = 0;
  std::vector<detail::PbwKey> keys_;
  std::vector<long> key_level_;
  std::vector<std::size_t> level_offset_;
  std::vector<std::size_t> level_dim_;
  std::map<detail::PbwKey, std::size_t> index_;
  std::vector<std::vector<std::vector<Vec>>> tab_;
};

std::pair<GradedBasis, std::shared_ptr<ActionTable>> tabulate(const VSide& vs, detail::PbwEngine& engine,
                                                              int w_cutoff, const Rat& h) {
  ModeBuilder mb(vs, engine, w_cutoff);
  mb.build();
  std::vector<std::size_t> dims;
  std::vector<std::string> labels;
  for (long l = 0; l <= w_cutoff; ++l) dims.push_back(mb.level_dim(l));
  const std::size_t wcount = mb.basis_size_upto(w_cutoff);
  for (std::size_t i = 0; i < wcount; ++i) labels.push_back(engine.label(mb.key(i)));
  GradedBasis basis(h, dims, labels);
  auto table = std::make_shared<ActionTable>(vs.weights.size(), wcount, w_cutoff);
  for (std::size_t v = 0; v < vs.weights.size(); ++v)
    for (std::size_t w = 0; w < wcount; ++w)
      for (long r = 0; r <= w_cutoff; ++r) table->set(v, w, r, mb.result(v, w, r));
  return {basis, table};
}

std::vector<long> min_parts_vacuum(const std::vector<GeneratorSpec>& gens) {
  std::vector<long> out;
  for (const auto& g : gens) out.push_back(g.weight());
  return out;
}

}  // namespace

VOAPtr make_free_field_voa(const std::vector<GeneratorSpec>& gens, int cutoff) {
  if (cutoff < 0) throw std::invalid_argument("cutoff must be nonnegative");
  if (gens.empty()) throw std::invalid_argument("at least one generator is required");
  if (cutoff < 2) return truncate(make_free_field_voa(gens, 2), cutoff);
  std::vector<Matrix> zero(gens.size(), Matrix(1, 1));
  detail::PbwEngine engine(gens, 1, zero, min_parts_vacuum(gens), {"1"});

  VSide vs;
  vs.gens = gens;
  std::map<detail::PbwKey, std::size_t> index;
  std::vector<detail::PbwKey> keys;
  for (long l = 0; l <= cutoff; ++l)
    for (auto& k : engine.level_basis(l)) {
      index[k] = keys.size();
      keys.push_back(k);
    }
  for (const auto& k : keys) {
    vs.weights.push_back(detail::level_of(k.mono));
    if (k.mono.empty()) {
      vs.factors.push_back(BasisFactor{-1, 0, 0});
    } else {
      detail::PbwKey rest{detail::Monomial(k.mono.begin() + 1, k.mono.end()), k.top};
      vs.factors.push_back(BasisFactor{k.mono.front().color, k.mono.front().part, index.at(rest)});
    }
  }
  auto [basis, table] = tabulate(vs, engine, cutoff, Rat(0));

  Vec omega(keys.size());
  Rat c(0);
  std::vector<std::size_t> gen_vectors;
  for (std::size_t col = 0; col < gens.size(); ++col) {
    const int ci = static_cast<int>(col);
    const auto& g = gens[col];
    detail::PbwKey gk{{detail::Part{g.weight(), ci}}, 0};
    if (g.kind == GeneratorKind::Heisenberg) {
      c += 1;
      detail::PbwKey sq{{detail::Part{1, ci}, detail::Part{1, ci}}, 0};
      if (auto it = index.find(sq); it != index.end()) omega[it->second] += Rat(1, 2);
    } else {
      c += g.c;
      if (auto it = index.find(gk); it != index.end()) omega[it->second] += 1;
    }
    auto it = index.find(gk);
    gen_vectors.push_back(it == index.end() ? keys.size() : it->second);
  }
  auto voa = std::make_shared<VOAPresentation>(basis, table, 0, omega, c);
  voa->set_generators(gens, gen_vectors, vs.factors);
  return voa;
}

VOAPtr truncate(const VOAPtr& voa, int cutoff) {
  if (cutoff < 0 || cutoff > voa->cutoff()) throw std::invalid_argument("truncation cutoff out of range");
  const auto& B = voa->basis();
  std::vector<std::size_t> dims(B.dims().begin(), B.dims().begin() + cutoff + 1);
  const std::size_t n = cutoff + 1 < static_cast<int>(B.dims().size()) ? B.offset(cutoff + 1) : B.size();
  std::vector<std::string> labels(B.labels().begin(), B.labels().begin() + static_cast<std::ptrdiff_t>(n));
  GradedBasis nb(B.lowest_weight(), dims, labels);
  auto table = std::make_shared<ActionTable>(n, n, cutoff);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = 0; w < n; ++w)
      for (long r = 0; r <= cutoff; ++r) table->set(v, w, r, voa->table_ptr()->get(v, w, r));
  Vec omega(voa->omega().begin(), voa->omega().begin() + static_cast<std::ptrdiff_t>(n));
  auto out = std::make_shared<VOAPresentation>(nb, table, voa->vacuum(), omega, voa->central_charge());
  Matrix l1(n, n);
  const Matrix& big = voa->l1_matrix();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) l1(i, j) = big(i, j);
  out->set_l1(l1);
  if (!voa->generators().empty()) {
    std::vector<std::size_t> gv;
    for (auto g : voa->generator_vectors()) gv.push_back(g < n ? g : n);
    std::vector<BasisFactor> factors(voa->factors().begin(), voa->factors().begin() + static_cast<std::ptrdiff_t>(n));
    out->set_generators(voa->generators(), gv, factors);
  }
  return out;
}

VOAPtr make_heisenberg(int cutoff) { return make_free_field_voa({GeneratorSpec{GeneratorKind::Heisenberg, 0, "a"}}, cutoff); }

VOAPtr make_virasoro(const Rat& c, int cutoff) {
  return make_free_field_voa({GeneratorSpec{GeneratorKind::Virasoro, c, "L"}}, cutoff);
}

ModulePresentation make_highest_weight_module(const VOAPtr& voa, const std::vector<Matrix>& zero_modes, int cutoff,
                                              const Rat& lowest_weight, std::vector<std::string> top_labels) {
  if (voa->generators().empty()) throw std::invalid_argument("the VOA carries no generator data for induction");
  if (cutoff < 0) throw std::invalid_argument("cutoff must be nonnegative");
  const std::size_t d = zero_modes.empty() ? 0 : zero_modes.front().rows();
  if (zero_modes.size() != voa->generators().size())
    throw std::invalid_argument("one zero-mode matrix per generator is required");
  if (top_labels.empty()) {
    if (d == 1) {
      top_labels.push_back("u");
    } else {
      for (std::size_t i = 0; i < d; ++i) top_labels.push_back("u" + std::to_string(i));
    }
  }
  detail::PbwEngine engine(voa->generators(), d, zero_modes, std::vector<long>(voa->generators().size(), 1),
                           top_labels);
  VSide vs;
  vs.gens = voa->generators();
  vs.factors = voa->factors();
  for (std::size_t v = 0; v < voa->dim(); ++v) vs.weights.push_back(voa->weight(v));
  auto [basis, table] = tabulate(vs, engine, cutoff, lowest_weight);
  return ModulePresentation(voa, basis, table);
}

// ---------------------------------------------------------------- series

VectorSeries vertex_act(const ModulePresentation& wm, const Vec& v, const Vec& w) {
  const auto& V = wm.voa();
  const int N = wm.cutoff();
  std::optional<VectorSeries> total;
  for (const auto& [wt, vpart] : V.homogeneous_parts(v)) {
    for (long lw : wm.basis().support_levels(w)) {
      Vec wpart = wm.basis().embed(wm.basis().component(w, lw), lw);
      VectorSeries s(Region::AtZero, {-(wt + lw), N - wt - lw});
      for (long e = s.window().lo; e <= s.window().hi; ++e) s.set(e, wm.act(vpart, -e - 1, wpart));
      total = total ? add(*total, s) : s;
    }
  }
  if (!total) return VectorSeries(Region::LaurentPoly, {0, -1});
  return *total;
}

VectorSeries y_opposite(const ModulePresentation& wm, const Vec& v, const Vec& w) {
  const auto& V = wm.voa();
  const int N = wm.cutoff();
  std::optional<VectorSeries> total;
  for (const auto& [wt, vpart] : V.homogeneous_parts(v)) {
    // L(1)^i v / i! with the overall sign (-1)^{wt v}
    std::vector<Vec> lifts;
    Vec cur = vpart;
    for (long i = 0; i <= wt && !is_zero(cur); ++i) {
      lifts.push_back((Rat((wt % 2) ? -1 : 1) / factorial(i)) * cur);
      cur = V.l1(cur);
    }
    for (long lw : wm.basis().support_levels(w)) {
      Vec wpart = wm.basis().embed(wm.basis().component(w, lw), lw);
      VectorSeries s(Region::AtInfinity, {lw - wt - N, lw - wt});
      for (long e = s.window().lo; e <= s.window().hi; ++e) {
        Vec acc(wm.dim());
        for (long i = 0; i < static_cast<long>(lifts.size()); ++i) {
          const long m = e + 2 * wt - i - 1;
          axpy(acc, Rat(1), wm.act(lifts[static_cast<std::size_t>(i)], m, wpart));
        }
        s.set(e, acc);
      }
      total = total ? add(*total, s) : s;
    }
  }
  if (!total) return VectorSeries(Region::LaurentPoly, {0, -1});
  return *total;
}

namespace {
template <class T>
WindowedSeries<T> shift_impl(const WindowedSeries<T>& s, const Rat& z0) {
  if (s.region() == Region::AtZero) throw std::domain_error("argument shift needs an upper-truncated series");
  WindowedSeries<T> out(s.region(), s.window());
  if (s.terms().empty()) return out;
  const long top = s.terms().rbegin()->first;
  long lo = s.window().lo;
  if (s.region() == Region::LaurentPoly) lo = std::min(lo, s.terms().begin()->first);
  // y^n = (x + z0)^n = sum_i C(n,i) z0^i x^{n-i}; a Laurent polynomial with a
  // negative power still expands at infinity.
  if (s.region() == Region::LaurentPoly && s.terms().begin()->first < 0) {
    WindowedSeries<T> inf(Region::AtInfinity, {lo, std::max(top, s.window().hi)});
    for (const auto& [e, c] : s.terms()) inf.set(e, c);
    return shift_impl(inf, z0);
  }
  for (long f = lo; f <= top; ++f) {
    for (const auto& [e, c] : s.terms()) {
      if (e < f) continue;
      const long i = e - f;
      if (s.region() == Region::LaurentPoly && e >= 0 && f < 0) continue;
      out.add_to(f, binomial(e, i) * ipow(z0, i), c);
    }
  }
  return out;
}
}  // namespace

VectorSeries shift_series(const VectorSeries& s, const Rat& z0) { return shift_impl(s, z0); }
ScalarSeries shift_series(const ScalarSeries& s, const Rat& z0) { return shift_impl(s, z0); }

// ---------------------------------------------------------------- transforms

ModulePresentation rescale_module(const ModulePresentation& w, const Rat& z) {
  if (sgn(z) == 0) throw std::domain_error("rescaling needs z != 0");
  const auto& t = w.table();
  auto nt = std::make_shared<ActionTable>(t.v_count(), t.w_count(), t.result_cutoff());
  for (std::size_t v = 0; v < t.v_count(); ++v)
    for (std::size_t j = 0; j < t.w_count(); ++j) {
      const long lw = w.basis().level(j);
      for (long r = 0; r <= t.result_cutoff(); ++r) {
        const Vec& loc = t.get(v, j, r);
        if (loc.empty()) continue;
        nt->set(v, j, r, ipow(z, r - lw) * loc);
      }
    }
  return ModulePresentation(w.voa_ptr(), w.basis(), nt);
}

std::vector<std::pair<std::size_t, std::size_t>> tensor_pairs(const GradedBasis& b1, const GradedBasis& b2,
                                                               int cutoff) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (long total = 0; total <= cutoff; ++total)
    for (std::size_t i = 0; i < b1.size(); ++i) {
      const long l1 = b1.level(i);
      if (l1 > total) continue;
      const long l2 = total - l1;
      if (l2 > b2.cutoff()) continue;
      for (std::size_t k = 0; k < b2.dim(l2); ++k) out.emplace_back(i, b2.offset(l2) + k);
    }
  return out;
}

namespace {

struct TensorLayout {
  GradedBasis basis;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
};

TensorLayout tensor_layout(const GradedBasis& b1, const GradedBasis& b2, int cutoff) {
  if (b1.cutoff() < cutoff || b2.cutoff() < cutoff)
    throw std::invalid_argument("tensor factors must be presented at least up to the tensor cutoff");
  TensorLayout lay;
  lay.pairs = tensor_pairs(b1, b2, cutoff);
  std::vector<std::size_t> dims(static_cast<std::size_t>(cutoff + 1), 0);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < lay.pairs.size(); ++i) {
    const auto [a, b] = lay.pairs[i];
    dims[static_cast<std::size_t>(b1.level(a) + b2.level(b))]++;
    labels.push_back(b1.label(a) + "⊗" + b2.label(b));
    lay.index[lay.pairs[i]] = i;
  }
  lay.basis = GradedBasis(b1.lowest_weight() + b2.lowest_weight(), dims, labels);
  return lay;
}

// (a (x) b)_n (w1 (x) w2) at result level r = sum_{r1 + r2 = r} (a_j w1)_{r1} (x) (b_k w2)_{r2}.
std::shared_ptr<ActionTable> tensor_table(const ModulePresentation& w1, const ModulePresentation& w2,
                                          const std::vector<std::pair<std::size_t, std::size_t>>& vpairs,
                                          const TensorLayout& wl, int cutoff) {
  auto table = std::make_shared<ActionTable>(vpairs.size(), wl.pairs.size(), cutoff);
  detail::parallel_for(vpairs.size(), [&](std::size_t vi) {
    const auto [a, b] = vpairs[vi];
    for (std::size_t wi = 0; wi < wl.pairs.size(); ++wi) {
      const auto [x, y] = wl.pairs[wi];
      for (long r = 0; r <= cutoff; ++r) {
        Vec loc(wl.basis.dim(r));
        bool any = false;
        for (long r1 = 0; r1 <= r; ++r1) {
          const long r2 = r - r1;
          const Vec& p1 = w1.table().get(a, x, r1);
          if (p1.empty()) continue;
          const Vec& p2 = w2.table().get(b, y, r2);
          if (p2.empty()) continue;
          const std::size_t o1 = w1.basis().offset(r1), o2 = w2.basis().offset(r2);
          for (std::size_t i = 0; i < p1.size(); ++i) {
            if (sgn(p1[i]) == 0) continue;
            for (std::size_t k = 0; k < p2.size(); ++k) {
              if (sgn(p2[k]) == 0) continue;
              const std::size_t t = wl.index.at({o1 + i, o2 + k});
              loc[t - wl.basis.offset(r)] += p1[i] * p2[k];
              any = true;
            }
          }
        }
        if (any) table->set(vi, wi, r, std::move(loc));
      }
    }
  });
  return table;
}

}  // namespace

VOAPtr tensor_voa(const VOAPtr& v1, const VOAPtr& v2, int cutoff) {
  TensorLayout lay = tensor_layout(v1->basis(), v2->basis(), cutoff);
  auto table = tensor_table(v1->adjoint(), v2->adjoint(), lay.pairs, lay, cutoff);
  const std::size_t vac = lay.index.at({v1->vacuum(), v2->vacuum()});
  Vec omega(lay.pairs.size());
  for (std::size_t i = 0; i < v1->dim(); ++i)
    if (sgn(v1->omega()[i]) != 0) {
      auto it = lay.index.find({i, v2->vacuum()});
      if (it != lay.index.end()) omega[it->second] += v1->omega()[i];
    }
  for (std::size_t j = 0; j < v2->dim(); ++j)
    if (sgn(v2->omega()[j]) != 0) {
      auto it = lay.index.find({v1->vacuum(), j});
      if (it != lay.index.end()) omega[it->second] += v2->omega()[j];
    }
  return std::make_shared<VOAPresentation>(lay.basis, table, vac, omega,
                                           v1->central_charge() + v2->central_charge());
}

ModulePresentation tensor_module(const ModulePresentation& w1, const ModulePresentation& w2, const VOAPtr& tensor,
                                 int cutoff) {
  auto vpairs = tensor_pairs(w1.voa().basis(), w2.voa().basis(), tensor->cutoff());
  if (vpairs.size() != tensor->dim()) throw std::invalid_argument("tensor VOA does not match the factor VOAs");
  TensorLayout lay = tensor_layout(w1.basis(), w2.basis(), cutoff);
  auto table = tensor_table(w1, w2, vpairs, lay, cutoff);
  return ModulePresentation(tensor, lay.basis, table);
}

// ---------------------------------------------------------------- submodules and quotients

std::vector<Subspace> generated_submodule(const ModulePresentation& w, const std::vector<Vec>& seeds) {
  const auto& B = w.basis();
  const int N = w.cutoff();
  std::vector<Subspace> levels;
  for (long l = 0; l <= N; ++l) levels.emplace_back(B.dim(l));
  std::vector<std::pair<long, Vec>> queue;
  auto push = [&](const Vec& global) {
    for (long l : B.support_levels(global)) {
      Vec loc = B.component(global, l);
      Vec red = levels[static_cast<std::size_t>(l)].reduce(loc);
      if (is_zero(red)) continue;
      levels[static_cast<std::size_t>(l)].add(red);
      queue.emplace_back(l, red);
    }
  };
  for (const auto& s : seeds) push(s);
  const auto& V = w.voa();
  while (!queue.empty()) {
    auto [l, loc] = queue.back();
    queue.pop_back();
    Vec g = B.embed(loc, l);
    for (std::size_t v = 0; v < V.dim(); ++v) {
      const long wt = V.weight(v);
      for (long r = 0; r <= N; ++r) {
        const long n = wt + l - r - 1;
        push(w.act(unit_vec(V.dim(), v), n, g));
      }
    }
  }
  return levels;
}

Vec QuotientModule::project(const Vec& w) const {
  Vec out(module.dim());
  const auto& B = module.basis();
  std::size_t src = 0;
  for (std::size_t l = 0; l < kernels.size(); ++l) {
    const std::size_t d = kernels[l].ambient();
    Vec loc(w.begin() + static_cast<std::ptrdiff_t>(src), w.begin() + static_cast<std::ptrdiff_t>(src + d));
    Vec q = kernels[l].quotient_coords(loc);
    for (std::size_t i = 0; i < q.size(); ++i) out[B.offset(static_cast<long>(l)) + i] = q[i];
    src += d;
  }
  return out;
}

QuotientModule quotient_module(const ModulePresentation& w, const std::vector<Vec>& submodule_span) {
  QuotientModule q;
  q.kernels = generated_submodule(w, submodule_span);
  const auto& B = w.basis();
  std::vector<std::size_t> dims;
  std::vector<std::string> labels;
  std::vector<std::size_t> reps;  // global W indices
  for (long l = 0; l <= w.cutoff(); ++l) {
    auto comp = q.kernels[static_cast<std::size_t>(l)].complement();
    dims.push_back(comp.size());
    std::vector<std::size_t> lr;
    for (auto c : comp) {
      labels.push_back(B.label(B.offset(l) + c));
      reps.push_back(B.offset(l) + c);
      lr.push_back(B.offset(l) + c);
    }
    q.representatives.push_back(lr);
  }
  GradedBasis nb(B.lowest_weight(), dims, labels);
  const auto& V = w.voa();
  auto table = std::make_shared<ActionTable>(V.dim(), reps.size(), w.cutoff());
  for (std::size_t v = 0; v < V.dim(); ++v)
    for (std::size_t j = 0; j < reps.size(); ++j)
      for (long r = 0; r <= w.cutoff(); ++r) {
        const Vec& loc = w.table().get(v, reps[j], r);
        if (loc.empty()) continue;
        table->set(v, j, r, q.kernels[static_cast<std::size_t>(r)].quotient_coords(loc));
      }
  q.module = ModulePresentation(w.voa_ptr(), nb, table);
  return q;
}

// ---------------------------------------------------------------- axioms

unsigned worker_count() {
  if (const char* env = std::getenv("ZHUKIT_THREADS")) {
    long n = std::strtol(env, nullptr, 10);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : hc;
}

namespace {

// Smallest k with u_{k+m} w = 0 for all m >= 0, using the table.
std::optional<long> vanishing_start(const ModulePresentation& W, std::size_t u, std::size_t w) {
  const long wt = W.voa().weight(u);
  const long lw = W.basis().level(w);
  long k = wt + lw;  // level of u_k w is -1
  while (true) {
    const long j = k - 1;
    if (W.result_level(u, j, w) > W.cutoff()) return std::nullopt;
    if (!W.mode_local(u, j, w).empty()) return k;
    k = j;
  }
}

}  // namespace

std::optional<bool> lemma_reduction_holds(const ModulePresentation& W, std::size_t u, std::size_t v,
                                          std::size_t wi, long p, long q) {
  const auto& V = W.voa();
  const auto adj = V.adjoint();
  const int N = W.cutoff();
  const long wt_u = V.weight(u), wt_v = V.weight(v);
  const long lw = W.basis().level(wi);
  if (wt_v + lw - q - 1 > N) return std::nullopt;
  if (wt_u + wt_v + lw - p - q - 2 > N) return std::nullopt;
  auto ko = vanishing_start(W, u, wi);
  auto jo = vanishing_start(W, v, wi);
  if (!ko || !jo) return std::nullopt;
  const long k = *ko;
  const long n = std::max(0L, *jo - 1 - q);

  Vec vq = W.mode(v, q, wi);
  Vec lhs = W.act(unit_vec(V.dim(), u), p, vq);

  Vec rhs(W.dim());
  for (long i = 0; i <= n; ++i) {
    const Rat ci = binomial(Rat(p - k), i);
    if (sgn(ci) == 0) continue;
    const long jmax = k >= 0 ? k : wt_u + wt_v - p + k + i;
    for (long j = 0; j <= jmax; ++j) {
      const Rat cj = binomial(Rat(k), j);
      if (sgn(cj) == 0) continue;
      const long s = p - k - i + j;
      if (wt_u + wt_v - s - 1 < 0) continue;
      if (wt_u + wt_v - s - 1 > V.cutoff()) return std::nullopt;
      Vec uv = adj.mode(u, s, v);
      if (is_zero(uv)) continue;
      Vec term = W.act(uv, q + k + i - j, unit_vec(W.dim(), wi));
      axpy(rhs, ci * cj, term);
    }
  }
  return lhs == rhs;
}

namespace {

struct TripleResult {
  std::uint64_t checked = 0;
  std::uint64_t skips = 0;
  std::optional<AxiomWitness> witness;
};

TripleResult check_triple(const ModulePresentation& W, std::size_t u, std::size_t v, std::size_t wi,
                          bool adjoint_like) {
  TripleResult res;
  const auto& V = W.voa();
  const auto adj = V.adjoint();
  const int N = W.cutoff();
  const long wt_u = V.weight(u), wt_v = V.weight(v), lw = W.basis().level(wi);
  const Vec uvec = unit_vec(V.dim(), u), vvec = unit_vec(V.dim(), v), wvec = unit_vec(W.dim(), wi);
  auto fail = [&](const std::string& law, long p, long q) {
    if (!res.witness) res.witness = AxiomWitness{law, u, v, wi, p, q};
  };

  for (long q = wt_v + lw - 1 - N; q <= wt_v + lw - 1 + wt_u; ++q) {
    for (long p = wt_u + lw - 1 - N; p <= wt_u + lw - 1 + wt_v; ++p) {
      const long r = wt_u + wt_v + lw - p - q - 2;
      if (r < 0 || r > N) continue;
      if (wt_v + lw - q - 1 > N || wt_u + lw - p - 1 > N) {
        ++res.skips;
        continue;
      }
      try {
        // commutator formula
        Vec lhs = W.act(uvec, p, W.mode(v, q, wi)) - W.act(vvec, q, W.mode(u, p, wi));
        Vec rhs(W.dim());
        bool escaped = false;
        for (long i = 0; i <= wt_u + wt_v - 1; ++i) {
          if (wt_u + wt_v - i - 1 > V.cutoff()) {
            escaped = true;
            break;
          }
          Vec uv = adj.mode(u, i, v);
          if (is_zero(uv)) continue;
          axpy(rhs, binomial(Rat(p), i), W.act(uv, p + q - i, wvec));
        }
        if (escaped) {
          ++res.skips;
          continue;
        }
        ++res.checked;
        if (lhs != rhs) fail("commutator", p, q);
        auto lemma = lemma_reduction_holds(W, u, v, wi, p, q);
        if (!lemma) {
          ++res.skips;
        } else {
          ++res.checked;
          if (!*lemma) fail("associativity", p, q);
        }
      } catch (const CutoffError&) {
        ++res.skips;
      }
    }
  }
  // vacuum: 1_n w = delta_{n,-1} w
  if (u == V.vacuum()) {
    for (long n = lw - N; n <= lw; ++n) {
      ++res.checked;
      Vec got = W.mode(u, n, wi);
      Vec expect = n == -1 ? wvec : Vec(W.dim());
      if (got != expect) fail("vacuum", n, 0);
    }
  }
  // creation: v_n 1 = 0 for n >= 0 and v_{-1} 1 = v
  if (adjoint_like && wi == V.vacuum()) {
    for (long n = -1; n <= wt_u; ++n) {
      ++res.checked;
      Vec got = W.mode(u, n, wi);
      Vec expect = n == -1 ? unit_vec(W.dim(), u) : Vec(W.dim());
      if (got != expect) fail("creation", n, 0);
    }
  }
  return res;
}

}  // namespace

AxiomReport axiom_check(const ModulePresentation& W, std::size_t samples, std::uint64_t seed) {
  AxiomReport rep;
  const auto& V = W.voa();
  const bool adjoint_like = &W.table() == V.table_ptr().get();
  std::vector<std::array<std::size_t, 3>> triples;
  if (V.dim() <= 12 && W.dim() <= 12) {
    rep.exhaustive = true;
    for (std::size_t u = 0; u < V.dim(); ++u)
      for (std::size_t v = 0; v < V.dim(); ++v)
        for (std::size_t w = 0; w < W.dim(); ++w) triples.push_back({u, v, w});
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> du(0, V.dim() - 1), dw(0, W.dim() - 1);
    for (std::size_t s = 0; s < samples; ++s) {
      std::size_t u = du(rng), v = du(rng), w = dw(rng);
      triples.push_back({u, v, w});
    }
    if (W.dim() > 0) triples.push_back({V.vacuum(), V.vacuum(), 0});
  }
  std::vector<TripleResult> results(triples.size());
  detail::parallel_for(triples.size(), [&](std::size_t i) {
    results[i] = check_triple(W, triples[i][0], triples[i][1], triples[i][2], adjoint_like);
  });
  rep.triples = triples.size();
  for (const auto& r : results) {
    rep.checked += r.checked;
    rep.cutoff_skips += r.skips;
    if (r.witness && !rep.witness) rep.witness = r.witness;
  }
  rep.passed = !rep.witness.has_value();
  return rep;
}

ModulePresentation corrupt_module(const ModulePresentation& w, std::size_t v, std::size_t wi, long r,
                                  std::size_t coord, const Rat& delta) {
  auto nt = std::make_shared<ActionTable>(w.table());
  Vec loc = nt->get(v, wi, r);
  if (loc.empty()) loc.assign(w.basis().dim(r), Rat(0));
  loc.at(coord) += delta;
  nt->set(v, wi, r, loc);
  return ModulePresentation(w.voa_ptr(), w.basis(), nt);
}

}  // namespace zhukit
