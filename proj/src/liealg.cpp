#include <zhukit/liealg.hpp>

#include <stdexcept>

namespace zhukit {

void add_to(LieElement& acc, const Rat& s, const LieElement& x) {
  if (sgn(s) == 0) return;
  for (const auto& [k, c] : x) {
    Rat& slot = acc[k];
    slot += s * c;
    if (sgn(slot) == 0) acc.erase(k);
  }
}

BorcherdsLie::BorcherdsLie(VOAPtr voa) : voa_(std::move(voa)) {
  const auto& B = voa_->basis();
  const int N = voa_->cutoff();
  lminus1_.resize(static_cast<std::size_t>(N + 1));
  image_.resize(static_cast<std::size_t>(N + 1));
  if (B.dim(0) > 0) section_.push_back(voa_->vacuum());
  for (long k = 1; k <= N; ++k) {
    const std::size_t dk = B.dim(k), dp = B.dim(k - 1);
    Matrix m(dk, dp);
    for (std::size_t j = 0; j < dp; ++j) {
      Vec img = voa_->virasoro(-1, B.embed(unit_vec(dp, j), k - 1));
      Vec loc = B.component(img, k);
      for (std::size_t i = 0; i < dk; ++i) m(i, j) = loc[i];
    }
    Subspace img(dk);
    for (std::size_t j = 0; j < dp; ++j) img.add(m.col(j));
    for (auto c : img.complement()) section_.push_back(B.offset(k) + c);
    lminus1_[static_cast<std::size_t>(k)] = std::move(m);
    image_[static_cast<std::size_t>(k)] = std::move(img);
  }
}

LieElement BorcherdsLie::normalize(const Vec& x, long m) const {
  const auto& B = voa_->basis();
  LieElement out;
  for (long k : B.support_levels(x)) {
    Vec loc = B.component(x, k);
    if (k == 0) {
      // D(1 (x) t^{m+1}) = (m+1) 1(m): only 1(-1) survives
      if (m == -1) {
        const Rat c = loc[voa_->vacuum() - B.offset(0)];
        if (sgn(c) != 0) out[ModeSymbol{voa_->vacuum(), -1}] += c;
      }
      continue;
    }
    const Subspace& img = image_[static_cast<std::size_t>(k)];
    Vec r = img.reduce(loc);
    for (std::size_t i = 0; i < r.size(); ++i)
      if (sgn(r[i]) != 0) add_to(out, r[i], LieElement{{ModeSymbol{B.offset(k) + i, m}, Rat(1)}});
    Vec rest = loc - r;
    if (is_zero(rest)) continue;
    auto y = solve(lminus1_[static_cast<std::size_t>(k)], rest);
    if (!y) throw std::logic_error("normal form: image vector not reached by L(-1)");
    // (L(-1)y)(m) = -m y(m-1)
    if (m != 0) add_to(out, Rat(-m), normalize(B.embed(*y, k - 1), m - 1));
  }
  return out;
}

LieElement BorcherdsLie::d_normalize(const Vec& x, long m) const { return normalize(voa_->virasoro(-1, x), m); }

LieElement BorcherdsLie::bracket(const ModeSymbol& a, const ModeSymbol& b) const {
  const long wa = voa_->weight(a.v), wb = voa_->weight(b.v);
  LieElement out;
  auto adj = voa_->adjoint();
  for (long i = 0; i <= wa + wb - 1; ++i) {
    const Rat c = binomial(Rat(a.m), i);
    if (sgn(c) == 0) continue;
    if (wa + wb - i - 1 > voa_->cutoff())
      throw CutoffError("bracket needs u_" + std::to_string(i) + "v of weight " + std::to_string(wa + wb - i - 1));
    Vec uv = adj.mode(a.v, i, b.v);
    if (is_zero(uv)) continue;
    add_to(out, c, normalize(uv, a.m + b.m - i));
  }
  return out;
}

LieElement BorcherdsLie::bracket(const LieElement& a, const LieElement& b) const {
  LieElement out;
  for (const auto& [sa, ca] : a)
    for (const auto& [sb, cb] : b) add_to(out, ca * cb, bracket(sa, sb));
  return out;
}

std::string BorcherdsLie::to_string(const LieElement& e) const {
  if (e.empty()) return "0";
  std::string s;
  for (const auto& [sym, c] : e) {
    if (!s.empty()) s += " + ";
    s += zhukit::to_string(c) + "·[" + voa_->basis().label(sym.v) + "](" + std::to_string(sym.m) + ")";
  }
  return s;
}

}  // namespace zhukit
