#pragma once

// Exact integer linear algebra on N = Z^d: vectors, matrices, the
// unimodularity and primitivity predicates, and the shear automorphisms.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "toricdef/errors.hpp"

namespace toricdef {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer abs_value(const Integer& x) { return x < 0 ? Integer(-x) : x; }

/// Column vector in N = Z^d.
class LatticeVector {
 public:
  LatticeVector() = default;
  explicit LatticeVector(std::size_t dimension) : entries_(dimension) {}
  explicit LatticeVector(std::vector<Integer> entries) : entries_(std::move(entries)) {}
  LatticeVector(std::initializer_list<long long> entries) {
    entries_.reserve(entries.size());
    for (long long x : entries) entries_.emplace_back(x);
  }

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  const Integer& operator[](std::size_t i) const { return entries_[i]; }
  Integer& operator[](std::size_t i) { return entries_[i]; }

  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  const std::vector<Integer>& entries() const noexcept { return entries_; }

  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Integer& x) { return x == 0; });
  }

  friend bool operator==(const LatticeVector& a, const LatticeVector& b) {
    return a.entries_ == b.entries_;
  }
  friend bool operator<(const LatticeVector& a, const LatticeVector& b) {
    return std::lexicographical_compare(a.entries_.begin(), a.entries_.end(), b.entries_.begin(),
                                        b.entries_.end());
  }

  LatticeVector& operator+=(const LatticeVector& o) {
    require_same_size(o);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
    return *this;
  }
  LatticeVector& operator-=(const LatticeVector& o) {
    require_same_size(o);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
    return *this;
  }
  friend LatticeVector operator+(LatticeVector a, const LatticeVector& b) { return a += b; }
  friend LatticeVector operator-(LatticeVector a, const LatticeVector& b) { return a -= b; }
  friend LatticeVector operator-(LatticeVector a) {
    for (auto& x : a.entries_) x = -x;
    return a;
  }
  friend LatticeVector operator*(const Integer& k, LatticeVector a) {
    for (auto& x : a.entries_) x *= k;
    return a;
  }

 private:
  void require_same_size(const LatticeVector& o) const {
    if (o.size() != size()) {
      throw Error(ErrorKind::DimensionMismatch, "vector lengths " + std::to_string(size()) +
                                                    " and " + std::to_string(o.size()));
    }
  }

  std::vector<Integer> entries_;
};

inline Integer dot(const LatticeVector& a, const LatticeVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "dot product");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline std::string to_string(const LatticeVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Matrix whose columns are the given vectors.
  static IntMatrix from_columns(std::span<const LatticeVector> cols, std::size_t dimension) {
    IntMatrix m(dimension, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (cols[c].size() != dimension) throw Error(ErrorKind::DimensionMismatch, "column length");
      for (std::size_t r = 0; r < dimension; ++r) m(r, c) = cols[c][r];
    }
    return m;
  }

  static IntMatrix from_rows(std::span<const LatticeVector> rows, std::size_t dimension) {
    IntMatrix m(rows.size(), dimension);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != dimension) throw Error(ErrorKind::DimensionMismatch, "row length");
      for (std::size_t c = 0; c < dimension; ++c) m(r, c) = rows[r][c];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  LatticeVector row(std::size_t r) const {
    LatticeVector v(cols_);
    for (std::size_t c = 0; c < cols_; ++c) v[c] = (*this)(r, c);
    return v;
  }
  LatticeVector column(std::size_t c) const {
    LatticeVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }
  // row[target] -= k * row[source]
  void add_row_multiple(std::size_t target, std::size_t source, const Integer& k) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(target, c) -= k * (*this)(source, c);
  }
  void add_col_multiple(std::size_t target, std::size_t source, const Integer& k) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, target) -= k * (*this)(r, source);
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product");
    IntMatrix p(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Integer& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) p(i, j) += aik * b(k, j);
      }
    return p;
  }

  friend LatticeVector operator*(const IntMatrix& a, const LatticeVector& v) {
    if (a.cols_ != v.size()) throw Error(ErrorKind::DimensionMismatch, "matrix-vector product");
    LatticeVector out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) out[i] += a(i, k) * v[k];
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

inline Integer gcd_of(const LatticeVector& v) {
  Integer g = 0;
  for (const auto& x : v) g = boost::multiprecision::gcd(g, abs_value(x));
  return g;
}

/// True iff the gcd of the entries is 1; the zero vector is not primitive.
inline bool is_primitive(const LatticeVector& v) { return !v.empty() && gcd_of(v) == 1; }

/// Fraction-free (Bareiss) determinant.
inline Integer determinant(IntMatrix a) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::DimensionMismatch, "determinant of non-square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      a.swap_rows(k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

/// Result of reducing a matrix to diagonal form by unimodular row and column
/// operations. `diagonal` holds the absolute values of the diagonal entries
/// (zeros for rank deficiency); `column_transform` is the unimodular V with
/// P * A * V diagonal. The entries are not normalized to satisfy the
/// divisibility chain of the Smith form.
struct Diagonalization {
  std::vector<Integer> diagonal;
  IntMatrix column_transform;
};

/// Pivots on the entry of minimal absolute value in the remaining block,
/// ties broken by lowest row then lowest column.
inline Diagonalization diagonalize(IntMatrix a) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  IntMatrix v = IntMatrix::identity(cols);
  const std::size_t steps = std::min(rows, cols);
  std::vector<Integer> diag;
  std::size_t t = 0;
  while (t < steps) {
    bool found = false;
    std::size_t pr = 0, pc = 0;
    Integer best;
    for (std::size_t r = t; r < rows; ++r)
      for (std::size_t c = t; c < cols; ++c) {
        if (a(r, c) == 0) continue;
        Integer m = abs_value(a(r, c));
        if (!found || m < best) {
          found = true;
          best = m;
          pr = r;
          pc = c;
        }
      }
    if (!found) break;
    a.swap_rows(t, pr);
    a.swap_cols(t, pc);
    v.swap_cols(t, pc);
    bool clean = true;
    for (std::size_t r = t + 1; r < rows; ++r) {
      if (a(r, t) == 0) continue;
      a.add_row_multiple(r, t, Integer(a(r, t) / a(t, t)));
      if (a(r, t) != 0) clean = false;
    }
    for (std::size_t c = t + 1; c < cols; ++c) {
      if (a(t, c) == 0) continue;
      Integer q = a(t, c) / a(t, t);
      a.add_col_multiple(c, t, q);
      v.add_col_multiple(c, t, q);
      if (a(t, c) != 0) clean = false;
    }
    if (clean) {
      diag.push_back(abs_value(a(t, t)));
      ++t;
    }
  }
  diag.resize(steps, Integer(0));
  return {std::move(diag), std::move(v)};
}

/// True iff the vectors form part of a Z-basis of Z^d, i.e. all invariant
/// factors of the matrix with these rows equal 1.
inline bool extends_to_basis(std::span<const LatticeVector> vs, std::size_t dimension) {
  for (const auto& v : vs)
    if (v.size() != dimension)
      throw Error(ErrorKind::DimensionMismatch, "vector " + to_string(v) + " is not in Z^" +
                                                    std::to_string(dimension));
  if (vs.size() > dimension) return false;
  if (vs.empty()) return true;
  auto d = diagonalize(IntMatrix::from_rows(vs, dimension));
  return std::all_of(d.diagonal.begin(), d.diagonal.end(), [](const Integer& x) { return x == 1; });
}

inline bool extends_to_basis(std::span<const LatticeVector> vs) {
  if (vs.empty()) return true;
  return extends_to_basis(vs, vs.front().size());
}

/// Inverse of a determinant +-1 matrix by integer Gauss-Jordan elimination.
inline IntMatrix inverse_unimodular(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::NotUnimodular, "matrix is not square");
  const std::size_t n = m.rows();
  IntMatrix a(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) a(r, c) = m(r, c);
    a(r, n + r) = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    for (;;) {
      std::size_t pivot = n;
      for (std::size_t r = c; r < n; ++r) {
        if (a(r, c) == 0) continue;
        if (pivot == n || abs_value(a(r, c)) < abs_value(a(pivot, c))) pivot = r;
      }
      if (pivot == n) throw Error(ErrorKind::NotUnimodular, "matrix is singular");
      a.swap_rows(c, pivot);
      bool clean = true;
      for (std::size_t r = c + 1; r < n; ++r) {
        if (a(r, c) == 0) continue;
        a.add_row_multiple(r, c, Integer(a(r, c) / a(c, c)));
        if (a(r, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (abs_value(a(c, c)) != 1) throw Error(ErrorKind::NotUnimodular, "determinant is not +-1");
  }
  for (std::size_t c = n; c-- > 0;) {
    if (a(c, c) < 0)
      for (std::size_t j = 0; j < 2 * n; ++j) a(c, j) = -a(c, j);
    for (std::size_t r = 0; r < c; ++r)
      if (a(r, c) != 0) a.add_row_multiple(r, c, Integer(a(r, c)));
  }
  IntMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = a(r, n + c);
  return inv;
}

/// Automorphism of N given by a determinant +-1 matrix acting on column vectors.
class UnimodularMap {
 public:
  UnimodularMap() = default;
  explicit UnimodularMap(IntMatrix matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols())
      throw Error(ErrorKind::NotUnimodular, "matrix is not square");
    Integer det = determinant(matrix_);
    if (det != 1 && det != -1)
      throw Error(ErrorKind::NotUnimodular, "determinant " + det.str() + " is not +-1");
  }

  static UnimodularMap identity(std::size_t d) { return UnimodularMap(IntMatrix::identity(d), 0); }

  std::size_t dimension() const noexcept { return matrix_.rows(); }
  const IntMatrix& matrix() const noexcept { return matrix_; }

  LatticeVector operator()(const LatticeVector& v) const { return matrix_ * v; }

  UnimodularMap inverse() const { return UnimodularMap(inverse_unimodular(matrix_), 0); }

  /// (f * g)(v) = f(g(v)).
  friend UnimodularMap operator*(const UnimodularMap& f, const UnimodularMap& g) {
    return UnimodularMap(f.matrix_ * g.matrix_, 0);
  }
  friend bool operator==(const UnimodularMap& a, const UnimodularMap& b) {
    return a.matrix_ == b.matrix_;
  }

 private:
  // Trusted constructor for products and inverses of unimodular matrices.
  UnimodularMap(IntMatrix matrix, int) : matrix_(std::move(matrix)) {}

  IntMatrix matrix_;
};

/// Solution of A X = B over Q, with A of size m x n and B of size m x k.
struct RationalSolution {
  bool consistent = false;
  std::size_t rank = 0;
  /// n x k; free variables are set to zero when the solution is not unique.
  std::vector<std::vector<Rational>> x;

  bool unique(std::size_t unknowns) const { return consistent && rank == unknowns; }
};

inline RationalSolution solve_rational(std::vector<std::vector<Rational>> a,
                                       std::vector<std::vector<Rational>> b) {
  const std::size_t m = a.size();
  const std::size_t n = m ? a.front().size() : 0;
  const std::size_t k = m ? b.front().size() : 0;
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t p = row;
    while (p < m && a[p][col] == 0) ++p;
    if (p == m) continue;
    std::swap(a[p], a[row]);
    std::swap(b[p], b[row]);
    const Rational piv = a[row][col];
    for (auto& x : a[row]) x /= piv;
    for (auto& x : b[row]) x /= piv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == row || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t c = 0; c < n; ++c) a[r][c] -= f * a[row][c];
      for (std::size_t c = 0; c < k; ++c) b[r][c] -= f * b[row][c];
    }
    pivot_cols.push_back(col);
    ++row;
  }
  RationalSolution sol;
  sol.rank = pivot_cols.size();
  sol.consistent = true;
  for (std::size_t r = sol.rank; r < m; ++r)
    for (std::size_t c = 0; c < k; ++c)
      if (b[r][c] != 0) sol.consistent = false;
  sol.x.assign(n, std::vector<Rational>(k, Rational(0)));
  if (!sol.consistent) return sol;
  for (std::size_t r = 0; r < sol.rank; ++r) sol.x[pivot_cols[r]] = b[r];
  return sol;
}

/// Identity except the last column, which is (q_1, ..., q_{d-1}, 1).
inline UnimodularMap shear_map(std::span<const Integer> q) {
  const std::size_t d = q.size() + 1;
  IntMatrix m = IntMatrix::identity(d);
  for (std::size_t i = 0; i < q.size(); ++i) m(i, d - 1) = q[i];
  return UnimodularMap(std::move(m));
}

inline UnimodularMap shear_map(std::initializer_list<long long> q) {
  std::vector<Integer> v(q.begin(), q.end());
  return shear_map(std::span<const Integer>(v));
}

}  // namespace toricdef
