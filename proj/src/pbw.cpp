#include "pbw.hpp"

#include <stdexcept>

namespace zhukit::detail {

long level_of(const Monomial& m) {
  long s = 0;
  for (const auto& p : m) s += p.part;
  return s;
}

void add_state(PbwState& acc, const Rat& s, const PbwState& x) {
  if (sgn(s) == 0) return;
  for (const auto& [k, c] : x) {
    Rat& slot = acc[k];
    slot += s * c;
    if (sgn(slot) == 0) acc.erase(k);
  }
}

PbwEngine::PbwEngine(std::vector<GeneratorSpec> gens, std::size_t top_dim, std::vector<Matrix> zero_modes,
                     std::vector<long> min_part, std::vector<std::string> top_labels)
    : gens_(std::move(gens)),
      top_dim_(top_dim),
      zero_modes_(std::move(zero_modes)),
      min_part_(std::move(min_part)),
      top_labels_(std::move(top_labels)) {
  if (zero_modes_.size() != gens_.size() || min_part_.size() != gens_.size())
    throw std::invalid_argument("PbwEngine: one zero mode and one minimal part per generator");
  for (const auto& z : zero_modes_)
    if (z.rows() != top_dim_ || z.cols() != top_dim_) throw std::invalid_argument("PbwEngine: zero mode size");
  if (top_labels_.size() != top_dim_) throw std::invalid_argument("PbwEngine: top label count");
}

bool PbwEngine::precedes_or_equal(const Part& a, const Part& b) const {
  // a may stand to the left of b in a normal-ordered monomial.
  return a.part > b.part || (a.part == b.part && a.color <= b.color);
}

const PbwState& PbwEngine::apply(int color, long m, const PbwKey& key) {
  auto memo_key = std::make_tuple(color, m, key);
  if (auto it = memo_.find(memo_key); it != memo_.end()) return it->second;

  PbwState out;
  const auto& gen = gens_.at(static_cast<std::size_t>(color));
  if (key.mono.empty()) {
    if (m == 0) {
      const Matrix& z = zero_modes_[static_cast<std::size_t>(color)];
      for (std::size_t s = 0; s < top_dim_; ++s) {
        const Rat& c = z(s, static_cast<std::size_t>(key.top));
        if (sgn(c) != 0) out[PbwKey{{}, static_cast<int>(s)}] = c;
      }
    } else if (m < 0 && -m >= min_part_[static_cast<std::size_t>(color)]) {
      out[PbwKey{{Part{-m, color}}, key.top}] = 1;
    }
  } else {
    const Part first = key.mono.front();
    if (m < 0 && precedes_or_equal(Part{-m, color}, first)) {
      PbwKey k = key;
      k.mono.insert(k.mono.begin(), Part{-m, color});
      out[k] = 1;
    } else {
      PbwKey rest{Monomial(key.mono.begin() + 1, key.mono.end()), key.top};
      // X(m) X1(-p) rest = X1(-p) X(m) rest + [X(m), X1(-p)] rest
      PbwState inner = apply(color, m, rest);
      for (const auto& [k, c] : inner) add_state(out, c, apply(first.color, -first.part, k));
      if (first.color == color) {
        const long p = first.part;
        if (gen.kind == GeneratorKind::Heisenberg) {
          if (m == p) add_state(out, Rat(m), PbwState{{rest, Rat(1)}});
        } else {
          if (m + p != 0) add_state(out, Rat(m + p), apply(color, m - p, rest));
          if (m == p) {
            Rat central = gen.c * Rat(m * m * m - m) / 12;
            add_state(out, central, PbwState{{rest, Rat(1)}});
          }
        }
      }
    }
  }
  return memo_.emplace(memo_key, std::move(out)).first->second;
}

PbwState PbwEngine::apply(int color, long m, const PbwState& state) {
  PbwState out;
  for (const auto& [k, c] : state) {
    PbwState part = apply(color, m, k);
    add_state(out, c, part);
  }
  return out;
}

void PbwEngine::enumerate(long remaining, std::optional<Part> bound, Monomial& cur,
                          std::vector<Monomial>& out) const {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  const long top = bound ? std::min(bound->part, remaining) : remaining;
  for (long p = top; p >= 1; --p) {
    for (int c = 0; c < static_cast<int>(gens_.size()); ++c) {
      if (p < min_part_[static_cast<std::size_t>(c)]) continue;
      Part next{p, c};
      if (bound && !precedes_or_equal(*bound, next)) continue;
      cur.push_back(next);
      enumerate(remaining - p, next, cur, out);
      cur.pop_back();
    }
  }
}

std::vector<PbwKey> PbwEngine::level_basis(long level) const {
  std::vector<Monomial> monos;
  Monomial cur;
  if (level >= 0) enumerate(level, std::nullopt, cur, monos);
  std::vector<PbwKey> out;
  for (const auto& mono : monos)
    for (std::size_t t = 0; t < top_dim_; ++t) out.push_back(PbwKey{mono, static_cast<int>(t)});
  return out;
}

std::string PbwEngine::label(const PbwKey& key) const {
  std::string s;
  for (const auto& p : key.mono) s += gens_[static_cast<std::size_t>(p.color)].name + "(-" + std::to_string(p.part) + ")";
  s += top_labels_[static_cast<std::size_t>(key.top)];
  return s;
}

}  // namespace zhukit::detail
