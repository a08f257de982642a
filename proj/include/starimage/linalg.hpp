#ifndef STARIMAGE_LINALG_HPP
#define STARIMAGE_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "starimage/matrix.hpp"

namespace starimage {

template <class S>
using Vec = std::vector<S>;

namespace detail {

// Pivot selection: exact backend takes any nonzero, real backend the
// largest magnitude below the column.
template <class S>
int pivot_row(const std::vector<Vec<S>>& rows, int from, int col, const S& scale) {
  if constexpr (scalar_traits<S>::exact) {
    for (int r = from; r < static_cast<int>(rows.size()); ++r)
      if (rows[r][col] != S(0)) return r;
    return -1;
  } else {
    int best = -1;
    S mag(0);
    for (int r = from; r < static_cast<int>(rows.size()); ++r) {
      S v = std::abs(rows[r][col]);
      if (v > mag) { mag = v; best = r; }
    }
    if (best >= 0 && !scalar_traits<S>::is_zero(mag, scale)) return best;
    return -1;
  }
}

}  // namespace detail

/// In-place reduced row echelon form; returns the pivot columns.
template <class S>
std::vector<int> rref(std::vector<Vec<S>>& rows) {
  std::vector<int> pivots;
  if (rows.empty()) return pivots;
  const int ncols = static_cast<int>(rows[0].size());
  S scale(1);
  if constexpr (!scalar_traits<S>::exact) {
    for (const auto& r : rows)
      for (const S& x : r) scale = std::max(scale, std::abs(x));
  }
  int row = 0;
  for (int col = 0; col < ncols && row < static_cast<int>(rows.size()); ++col) {
    int p = detail::pivot_row(rows, row, col, scale);
    if (p < 0) continue;
    std::swap(rows[row], rows[p]);
    S inv = S(1) / rows[row][col];
    for (int j = col; j < ncols; ++j) rows[row][j] *= inv;
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == row) continue;
      S f = rows[r][col];
      if (f == S(0)) continue;
      for (int j = col; j < ncols; ++j) rows[r][j] -= f * rows[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  rows.resize(pivots.size());
  return pivots;
}

/// Basis of the right nullspace of the matrix given as a list of rows.
template <class S>
std::vector<Vec<S>> nullspace(std::vector<Vec<S>> rows, int ncols) {
  if (rows.empty()) {
    std::vector<Vec<S>> basis;
    for (int j = 0; j < ncols; ++j) {
      Vec<S> v(ncols, S(0));
      v[j] = S(1);
      basis.push_back(std::move(v));
    }
    return basis;
  }
  std::vector<int> pivots = rref(rows);
  std::vector<bool> is_pivot(ncols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<Vec<S>> basis;
  for (int free_col = 0; free_col < ncols; ++free_col) {
    if (is_pivot[free_col]) continue;
    Vec<S> v(ncols, S(0));
    v[free_col] = S(1);
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -rows[r][free_col];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Inverse via Gauss-Jordan; nullopt when singular.
template <class S>
std::optional<Matrix<S>> try_inverse(const Matrix<S>& a) {
  const int n = a.dim();
  std::vector<Vec<S>> rows(n, Vec<S>(2 * n, S(0)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) rows[i][j] = a(i, j);
    rows[i][n + i] = S(1);
  }
  auto pivots = rref(rows);
  if (static_cast<int>(pivots.size()) != n || pivots.back() >= n)
    return std::nullopt;
  Matrix<S> inv(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = rows[i][n + j];
  return inv;
}

template <class S>
Matrix<S> inverse(const Matrix<S>& a) {
  auto inv = try_inverse(a);
  if (!inv) throw DomainError("matrix is singular");
  return *inv;
}

/// P^{-1} A P.
template <class S>
Matrix<S> conjugate(const Matrix<S>& a, const Matrix<S>& p) {
  return inverse(p) * a * p;
}

template <class S>
S determinant(const Matrix<S>& a) {
  const int n = a.dim();
  std::vector<Vec<S>> rows(n, Vec<S>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rows[i][j] = a(i, j);
  S det(1);
  for (int col = 0; col < n; ++col) {
    int p = -1;
    for (int r = col; r < n; ++r)
      if (rows[r][col] != S(0)) { p = r; break; }
    if (p < 0) return S(0);
    if (p != col) { std::swap(rows[p], rows[col]); det = -det; }
    det *= rows[col][col];
    S inv = S(1) / rows[col][col];
    for (int r = col + 1; r < n; ++r) {
      S f = rows[r][col] * inv;
      if (f == S(0)) continue;
      for (int j = col; j < n; ++j) rows[r][j] -= f * rows[col][j];
    }
  }
  return det;
}

/// Row-echelon basis of a subspace of M_n, in flattened entry coordinates.
/// The reduced echelon form is canonical, so equality of bases is equality
/// of subspaces.
template <class S>
class SubspaceBasis {
 public:
  SubspaceBasis() = default;
  explicit SubspaceBasis(int ambient_dim) : ncols_(ambient_dim) {}

  static SubspaceBasis from_vectors(int ambient_dim, std::vector<Vec<S>> vecs) {
    SubspaceBasis b(ambient_dim);
    rref(vecs);
    b.rows_ = std::move(vecs);
    return b;
  }

  static SubspaceBasis from_matrices(const std::vector<Matrix<S>>& mats) {
    if (mats.empty()) return SubspaceBasis(0);
    SubspaceBasis b(mats[0].dim() * mats[0].dim());
    std::vector<Vec<S>> vecs;
    for (const auto& m : mats) vecs.push_back(m.flat());
    rref(vecs);
    b.rows_ = std::move(vecs);
    return b;
  }

  int ambient_dim() const { return ncols_; }
  int dim() const { return static_cast<int>(rows_.size()); }
  const std::vector<Vec<S>>& rows() const { return rows_; }

  /// Adds a vector; returns true if the dimension grew.
  bool add(Vec<S> v) {
    std::vector<Vec<S>> all = rows_;
    all.push_back(std::move(v));
    rref(all);
    bool grew = all.size() > rows_.size();
    rows_ = std::move(all);
    return grew;
  }

  bool contains(Vec<S> v) const {
    // reduce v against the echelon rows
    for (const auto& r : rows_) {
      int lead = lead_col(r);
      if (lead < 0) continue;
      S f = v[lead];
      if (f == S(0)) continue;
      for (size_t j = 0; j < v.size(); ++j) v[j] -= f * r[j];
    }
    S mx(0);
    for (const S& x : v) {
      S a = x < S(0) ? S(-x) : x;
      if (a > mx) mx = a;
    }
    return scalar_traits<S>::is_zero(mx, S(1));
  }

  bool contains(const Matrix<S>& m) const { return contains(m.flat()); }

  bool operator==(const SubspaceBasis& o) const {
    if (dim() != o.dim()) return false;
    if constexpr (scalar_traits<S>::exact) {
      return rows_ == o.rows_;
    } else {
      for (const auto& r : rows_)
        if (!o.contains(r)) return false;
      return true;
    }
  }

  /// The basis rows reshaped as n x n matrices.
  std::vector<Matrix<S>> matrices(int n) const {
    std::vector<Matrix<S>> out;
    for (const auto& r : rows_) {
      Matrix<S> m(n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = r[static_cast<size_t>(i) * n + j];
      out.push_back(std::move(m));
    }
    return out;
  }

 private:
  static int lead_col(const Vec<S>& r) {
    for (size_t j = 0; j < r.size(); ++j)
      if (r[j] != S(0)) return static_cast<int>(j);
    return -1;
  }
  int ncols_ = 0;
  std::vector<Vec<S>> rows_;
};

// --- real-backend eigenroutines -------------------------------------------

struct EigenDecomposition {
  std::vector<double> values;   // eigenvalues
  Matrix<double> vectors;       // columns are the eigenvectors
};

/// Cyclic Jacobi iteration for a real symmetric matrix. Deterministic;
/// converges once the off-diagonal Frobenius norm drops below
/// 1e-12 * max(1, ||A||_F).
inline EigenDecomposition jacobi_eigen(const Matrix<double>& a_in) {
  const int n = a_in.dim();
  Matrix<double> a = a_in;
  Matrix<double> v = Matrix<double>::identity(n);
  double norm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) norm += a(i, j) * a(i, j);
  norm = std::sqrt(norm);
  const double thresh = 1e-12 * std::max(1.0, norm);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += 2.0 * a(i, j) * a(i, j);
    if (std::sqrt(off) <= thresh) break;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) <= thresh / (n * n)) continue;
        double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
  }
  EigenDecomposition d;
  d.vectors = v;
  d.values.resize(n);
  for (int i = 0; i < n; ++i) d.values[i] = a(i, i);
  return d;
}

/// Extends the given orthonormal columns to a full orthogonal matrix by
/// Gram-Schmidt against the standard basis.
inline Matrix<double> complete_orthogonal(int n, std::vector<Vec<double>> cols) {
  for (int e = 0; e < n && static_cast<int>(cols.size()) < n; ++e) {
    Vec<double> w(n, 0.0);
    w[e] = 1.0;
    for (const auto& c : cols) {
      double dot = 0.0;
      for (int i = 0; i < n; ++i) dot += c[i] * w[i];
      for (int i = 0; i < n; ++i) w[i] -= dot * c[i];
    }
    double nrm = 0.0;
    for (double x : w) nrm += x * x;
    nrm = std::sqrt(nrm);
    if (nrm < 1e-8) continue;
    for (double& x : w) x /= nrm;
    cols.push_back(std::move(w));
  }
  if (static_cast<int>(cols.size()) != n)
    throw InconsistencyError("could not complete orthogonal basis");
  Matrix<double> p(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) p(i, j) = cols[j][i];
  return p;
}

}  // namespace starimage

#endif
