#pragma once

#include <vector>

#include "wnaforge/jet.hpp"

namespace wnaforge {

using RationalMatrix = std::vector<std::vector<Rational>>;

inline size_t mat_rows(const RationalMatrix& m) { return m.size(); }
inline size_t mat_cols(const RationalMatrix& m) { return m.empty() ? 0 : m[0].size(); }

inline RationalMatrix mat_identity(size_t n) {
  RationalMatrix m(n, std::vector<Rational>(n, Rational(0)));
  for (size_t i = 0; i < n; ++i) m[i][i] = Rational(1);
  return m;
}

inline RationalMatrix mat_mul(const RationalMatrix& a, const RationalMatrix& b) {
  if (mat_cols(a) != mat_rows(b)) throw ConfigError("matrix size mismatch in product");
  RationalMatrix out(mat_rows(a), std::vector<Rational>(mat_cols(b), Rational(0)));
  for (size_t i = 0; i < mat_rows(a); ++i)
    for (size_t k = 0; k < mat_cols(a); ++k) {
      if (a[i][k].is_zero()) continue;
      for (size_t j = 0; j < mat_cols(b); ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

inline RationalMatrix mat_add(RationalMatrix a, const RationalMatrix& b) {
  if (mat_rows(a) != mat_rows(b) || mat_cols(a) != mat_cols(b))
    throw ConfigError("matrix shape mismatch in sum");
  for (size_t i = 0; i < mat_rows(a); ++i)
    for (size_t j = 0; j < mat_cols(a); ++j) a[i][j] += b[i][j];
  return a;
}

inline RationalMatrix mat_sub(RationalMatrix a, const RationalMatrix& b) {
  if (mat_rows(a) != mat_rows(b) || mat_cols(a) != mat_cols(b))
    throw ConfigError("matrix shape mismatch in difference");
  for (size_t i = 0; i < mat_rows(a); ++i)
    for (size_t j = 0; j < mat_cols(a); ++j) a[i][j] -= b[i][j];
  return a;
}

inline RationalMatrix mat_pow(const RationalMatrix& a, int n) {
  RationalMatrix out = mat_identity(mat_rows(a));
  for (int i = 0; i < n; ++i) out = mat_mul(out, a);
  return out;
}

// Gaussian elimination; throws on a singular input.
inline RationalMatrix mat_inverse(RationalMatrix a) {
  size_t n = mat_rows(a);
  if (mat_cols(a) != n) throw ConfigError("matrix inverse needs a square input");
  RationalMatrix inv = mat_identity(n);
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    while (pivot < n && a[pivot][col].is_zero()) ++pivot;
    if (pivot == n) throw ConfigError("matrix is singular");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    Rational d = Rational(1) / a[col][col];
    for (size_t j = 0; j < n; ++j) {
      a[col][j] *= d;
      inv[col][j] *= d;
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == col || a[i][col].is_zero()) continue;
      Rational f = a[i][col];
      for (size_t j = 0; j < n; ++j) {
        a[i][j] -= f * a[col][j];
        inv[i][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

inline size_t mat_rank(RationalMatrix a) {
  size_t rows = mat_rows(a), cols = mat_cols(a);
  size_t rank = 0;
  for (size_t col = 0; col < cols && rank < rows; ++col) {
    size_t pivot = rank;
    while (pivot < rows && a[pivot][col].is_zero()) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    Rational d = Rational(1) / a[rank][col];
    for (size_t j = col; j < cols; ++j) a[rank][j] *= d;
    for (size_t i = 0; i < rows; ++i) {
      if (i == rank || a[i][col].is_zero()) continue;
      Rational f = a[i][col];
      for (size_t j = col; j < cols; ++j) a[i][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

// Dense matrix over a jet ring.
class MatrixJet {
 public:
  MatrixJet() : rows_(0), cols_(0) {}
  MatrixJet(const JetRing& ring, size_t rows, size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, Jet(ring)) {}

  static MatrixJet identity(const JetRing& ring, size_t n) {
    MatrixJet m(ring, n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = Jet::scalar(ring, Rational(1));
    return m;
  }
  static MatrixJet constant(const JetRing& ring, const RationalMatrix& a) {
    MatrixJet m(ring, mat_rows(a), mat_cols(a));
    for (size_t i = 0; i < mat_rows(a); ++i)
      for (size_t j = 0; j < mat_cols(a); ++j) m.at(i, j) = Jet::scalar(ring, a[i][j]);
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Jet& at(size_t i, size_t j) { return entries_[i * cols_ + j]; }
  const Jet& at(size_t i, size_t j) const { return entries_[i * cols_ + j]; }
  const JetRing& ring() const {
    if (entries_.empty()) throw ConfigError("empty matrix has no ring");
    return entries_[0].ring();
  }

  bool is_zero() const {
    for (const Jet& e : entries_)
      if (!e.is_zero()) return false;
    return true;
  }

  MatrixJet& operator+=(const MatrixJet& o) {
    check_shape(o);
    for (size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
    return *this;
  }
  friend MatrixJet operator+(MatrixJet a, const MatrixJet& b) { return a += b; }
  friend MatrixJet operator-(MatrixJet a, const MatrixJet& b) {
    return a += Rational(-1) * b;
  }
  friend MatrixJet operator*(const Rational& c, MatrixJet m) {
    for (Jet& e : m.entries_) e = c * e;
    return m;
  }
  friend MatrixJet operator*(const Jet& c, MatrixJet m) {
    for (Jet& e : m.entries_) e = c * e;
    return m;
  }
  friend MatrixJet operator*(const MatrixJet& a, const MatrixJet& b) {
    if (a.cols_ != b.rows_) throw ConfigError("matrix size mismatch in product");
    MatrixJet out(a.ring(), a.rows_, b.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
      for (size_t k = 0; k < a.cols_; ++k) {
        if (a.at(i, k).is_zero()) continue;
        for (size_t j = 0; j < b.cols_; ++j)
          out.at(i, j) += a.at(i, k) * b.at(k, j);
      }
    return out;
  }
  friend bool operator==(const MatrixJet& a, const MatrixJet& b) {
    a.check_shape(b);
    return a.entries_ == b.entries_;
  }

  MatrixJet partial(const VarIndex& v) const {
    MatrixJet out = *this;
    for (Jet& e : out.entries_) e = e.partial(v);
    return out;
  }
  MatrixJet truncated(int max_weight) const {
    MatrixJet out = *this;
    for (Jet& e : out.entries_) e = e.truncated(max_weight);
    return out;
  }
  RationalMatrix constant_part() const {
    RationalMatrix out(rows_, std::vector<Rational>(cols_, Rational(0)));
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) out[i][j] = at(i, j).constant_term();
    return out;
  }

  Jet trace() const {
    if (rows_ != cols_) throw ConfigError("trace needs a square matrix");
    Jet t(ring());
    for (size_t i = 0; i < rows_; ++i) t += at(i, i);
    return t;
  }

  // Cofactor expansion; entries commute, so this is well defined.
  Jet det() const {
    if (rows_ != cols_) throw ConfigError("determinant needs a square matrix");
    if (rows_ == 0) throw ConfigError("determinant of an empty matrix");
    if (rows_ == 1) return at(0, 0);
    Jet d(ring());
    for (size_t j = 0; j < cols_; ++j) {
      if (at(0, j).is_zero()) continue;
      MatrixJet minor(ring(), rows_ - 1, cols_ - 1);
      for (size_t i = 1; i < rows_; ++i) {
        size_t cj = 0;
        for (size_t k = 0; k < cols_; ++k) {
          if (k == j) continue;
          minor.at(i - 1, cj++) = at(i, k);
        }
      }
      Rational sign(j % 2 == 0 ? 1 : -1);
      d += sign * (at(0, j) * minor.det());
    }
    return d;
  }

 private:
  void check_shape(const MatrixJet& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw ConfigError("matrix shape mismatch");
  }

  size_t rows_, cols_;
  std::vector<Jet> entries_;
};

}  // namespace wnaforge
