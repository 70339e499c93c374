#ifndef ZHUKIT_LINALG_HPP
#define ZHUKIT_LINALG_HPP

#include <zhukit/rational.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace zhukit {

using Vec = std::vector<Rat>;

Vec zero_vec(std::size_t n);
Vec unit_vec(std::size_t n, std::size_t i);
bool is_zero(const Vec& v);
void axpy(Vec& y, const Rat& a, const Vec& x);  // y += a*x
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(const Rat& s, const Vec& v);
Rat dot(const Vec& a, const Vec& b);

/// Dense row-major matrix over Q.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);
  static Matrix from_columns(std::size_t rows, const std::vector<Vec>& cols);
  static Matrix from_rows(std::size_t cols, const std::vector<Vec>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vec row(std::size_t i) const;
  Vec col(std::size_t j) const;
  void set_col(std::size_t j, const Vec& v);

  Vec apply(const Vec& v) const;
  Matrix transpose() const;
  bool is_zero() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Rat& s, const Matrix& a);
  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> data_;
};

Matrix kron(const Matrix& a, const Matrix& b);
Matrix block_diag(const Matrix& a, const Matrix& b);

/// Rank by fraction-free (Bareiss) elimination on integer-scaled rows.
std::size_t rank(const Matrix& m);
std::size_t rank_of(const std::vector<Vec>& vectors, std::size_t dim);

/// Basis of {x : m x = 0}, one vector per free column of the RREF.
std::vector<Vec> nullspace(const Matrix& m);

/// A particular solution of m x = b, if one exists.
std::optional<Vec> solve(const Matrix& m, const Vec& b);

/// A subspace of Q^n kept in reduced row echelon form.
///
/// Pivots are chosen as the first nonzero coordinate in a fixed priority
/// order, so the non-pivot coordinates give a deterministic complement:
/// reducing a vector leaves a representative supported on the complement.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient = 0);
  Subspace(std::size_t ambient, std::vector<std::size_t> priority);

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return rows_.size(); }

  /// Returns true when v enlarged the subspace.
  bool add(const Vec& v);
  void add_all(const std::vector<Vec>& vs);

  Vec reduce(const Vec& v) const;
  bool contains(const Vec& v) const;

  const std::vector<Vec>& basis() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  /// Coordinates not used as pivots, in ascending index order.
  std::vector<std::size_t> complement() const;

  /// Coordinates of v modulo this subspace, with respect to complement().
  Vec quotient_coords(const Vec& v) const;

 private:
  std::size_t ambient_;
  std::vector<std::size_t> priority_;
  std::vector<std::size_t> rank_of_coord_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

bool same_span(const std::vector<Vec>& a, const std::vector<Vec>& b, std::size_t dim);

}  // namespace zhukit

#endif  // ZHUKIT_LINALG_HPP
