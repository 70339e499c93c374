#include <zhukit/linalg.hpp>

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace zhukit {

Vec zero_vec(std::size_t n) { return Vec(n); }

Vec unit_vec(std::size_t n, std::size_t i) {
  Vec v(n);
  v.at(i) = 1;
  return v;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& q) { return sgn(q) == 0; });
}

void axpy(Vec& y, const Rat& a, const Vec& x) {
  if (sgn(a) == 0) return;
  if (y.size() != x.size()) throw std::invalid_argument("axpy: size mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (sgn(x[i]) != 0) y[i] += a * x[i];
  }
}

Vec operator+(const Vec& a, const Vec& b) {
  Vec out = a;
  axpy(out, Rat(1), b);
  return out;
}

Vec operator-(const Vec& a, const Vec& b) {
  Vec out = a;
  axpy(out, Rat(-1), b);
  return out;
}

Vec operator*(const Rat& s, const Vec& v) {
  Vec out(v.size());
  if (sgn(s) == 0) return out;
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
  return out;
}

Rat dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  Rat s(0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  }
  return s;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vec>& cols) {
  Matrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) m.set_col(j, cols[j]);
  return m;
}

Matrix Matrix::from_rows(std::size_t cols, const std::vector<Vec>& rows) {
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("from_rows: size mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Vec Matrix::row(std::size_t i) const {
  return Vec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
             data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vec Matrix::col(std::size_t j) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Matrix::set_col(std::size_t j, const Vec& v) {
  if (v.size() != rows_) throw std::invalid_argument("set_col: size mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Vec Matrix::apply(const Vec& v) const {
  if (v.size() != cols_) throw std::invalid_argument("apply: size mismatch");
  Vec out(rows_);
  for (std::size_t j = 0; j < cols_; ++j) {
    if (sgn(v[j]) == 0) continue;
    for (std::size_t i = 0; i < rows_; ++i) {
      const Rat& a = (*this)(i, j);
      if (sgn(a) != 0) out[i] += a * v[j];
    }
  }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rat& q) { return sgn(q) == 0; });
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: size mismatch");
  Matrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rat& x = a(i, k);
      if (sgn(x) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Rat& y = b(k, j);
        if (sgn(y) != 0) c(i, j) += x * y;
      }
    }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum: size mismatch");
  Matrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) { return a + Rat(-1) * b; }

Matrix operator*(const Rat& s, const Matrix& a) {
  Matrix c = a;
  for (auto& x : c.data_) x *= s;
  return c;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (sgn(a(i, j)) == 0) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q) k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
    }
  return k;
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

std::size_t rank(const Matrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  if (rows == 0 || cols == 0) return 0;
  // Clear denominators row by row, then Bareiss on integers.
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < cols; ++j) {
      if (sgn(m(i, j)) != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    }
    for (std::size_t j = 0; j < cols; ++j) {
      Rat scaled = m(i, j) * l;
      a[i][j] = scaled.get_num();
    }
  }
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && sgn(a[piv][c]) == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        mpz_class t = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

std::size_t rank_of(const std::vector<Vec>& vectors, std::size_t dim) {
  if (vectors.empty()) return 0;
  return rank(Matrix::from_rows(dim, vectors));
}

namespace {

// In-place RREF; returns pivot columns.
std::vector<std::size_t> rref(Matrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t piv = r;
    while (piv < a.rows() && sgn(a(piv, c)) == 0) ++piv;
    if (piv == a.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(r, j));
    Rat inv = 1 / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || sgn(a(i, c)) == 0) continue;
      Rat f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j)
        if (sgn(a(r, j)) != 0) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::vector<Vec> nullspace(const Matrix& m) {
  Matrix a = m;
  auto pivots = rref(a);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vec> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec v(m.cols());
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(r, f);
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: size mismatch");
  Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  Vec x(m.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, m.cols());
  return x;
}

Subspace::Subspace(std::size_t ambient) : Subspace(ambient, {}) {}

Subspace::Subspace(std::size_t ambient, std::vector<std::size_t> priority)
    : ambient_(ambient), priority_(std::move(priority)), rank_of_coord_(ambient) {
  if (priority_.empty()) {
    priority_.resize(ambient_);
    std::iota(priority_.begin(), priority_.end(), std::size_t{0});
  }
  if (priority_.size() != ambient_) throw std::invalid_argument("Subspace: bad priority order");
  for (std::size_t r = 0; r < ambient_; ++r) rank_of_coord_[priority_[r]] = r;
}

Vec Subspace::reduce(const Vec& v) const {
  if (v.size() != ambient_) throw std::invalid_argument("Subspace::reduce: size mismatch");
  Vec out = v;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Rat& f = out[pivots_[r]];
    if (sgn(f) != 0) {
      Rat g = f;
      axpy(out, -g, rows_[r]);
    }
  }
  return out;
}

bool Subspace::contains(const Vec& v) const { return zhukit::is_zero(reduce(v)); }

bool Subspace::add(const Vec& v) {
  Vec w = reduce(v);
  std::size_t best = ambient_;
  for (std::size_t i = 0; i < ambient_; ++i) {
    if (sgn(w[i]) != 0 && (best == ambient_ || rank_of_coord_[i] < rank_of_coord_[best])) best = i;
  }
  if (best == ambient_) return false;
  Rat inv = 1 / w[best];
  for (auto& x : w) x *= inv;
  for (auto& row : rows_) {
    if (sgn(row[best]) != 0) {
      Rat f = row[best];
      axpy(row, -f, w);
    }
  }
  rows_.push_back(std::move(w));
  pivots_.push_back(best);
  return true;
}

void Subspace::add_all(const std::vector<Vec>& vs) {
  for (const auto& v : vs) add(v);
}

std::vector<std::size_t> Subspace::complement() const {
  std::vector<bool> piv(ambient_, false);
  for (auto p : pivots_) piv[p] = true;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < ambient_; ++i)
    if (!piv[i]) out.push_back(i);
  return out;
}

Vec Subspace::quotient_coords(const Vec& v) const {
  Vec r = reduce(v);
  auto comp = complement();
  Vec out(comp.size());
  for (std::size_t i = 0; i < comp.size(); ++i) out[i] = r[comp[i]];
  return out;
}

bool same_span(const std::vector<Vec>& a, const std::vector<Vec>& b, std::size_t dim) {
  Subspace sa(dim), sb(dim);
  sa.add_all(a);
  sb.add_all(b);
  if (sa.dim() != sb.dim()) return false;
  for (const auto& v : b)
    if (!sa.contains(v)) return false;
  return true;
}

}  // namespace zhukit
