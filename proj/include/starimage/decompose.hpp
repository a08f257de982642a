#ifndef STARIMAGE_DECOMPOSE_HPP
#define STARIMAGE_DECOMPOSE_HPP

#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "starimage/linalg.hpp"
#include "starimage/matrix.hpp"

namespace starimage {

enum class CommutatorKind { SymSkew, SymSym };

/// A = [B, C]. For SymSkew: B symmetric, C skew. For SymSym: both symmetric.
struct CommutatorPair {
  Matrix<double> B;
  Matrix<double> C;
  CommutatorKind kind;
  std::vector<double> block_lambdas;  // canonical block data (SymSym only)
};

namespace detail {

inline double frobenius(const Matrix<double>& a) {
  double s = 0.0;
  for (double x : a.flat()) s += x * x;
  return std::sqrt(s);
}

}  // namespace detail

/// Writes a real trace-zero symmetric matrix as [B, C] with B symmetric and
/// C skew-symmetric, recursing on dimension: a unit vector v with v^T A v = 0
/// is built from eigenvectors of a positive and a negative eigenvalue, the
/// problem is rotated so v is the first coordinate, and the displayed block
/// matrices are assembled around the (n-1)-dimensional solution.
namespace detail {

// Core recursion; expects ||A||_F = O(1).
inline CommutatorPair sym_traceless_core(const Matrix<double>& a) {
  const int n = a.dim();
  const double norm = frobenius(a);
  if (norm <= 1e-12 || n == 1)
    return {Matrix<double>(n), Matrix<double>(n), CommutatorKind::SymSkew, {}};

  EigenDecomposition eig = jacobi_eigen(a);
  int ip = 0, in = 0;
  for (int i = 1; i < n; ++i) {
    if (eig.values[i] > eig.values[ip]) ip = i;
    if (eig.values[i] < eig.values[in]) in = i;
  }
  double lp = eig.values[ip], ln = eig.values[in];
  if (!(lp > 0.0 && ln < 0.0))
    throw InconsistencyError("traceless symmetric matrix lacks signed spectrum");

  // v = sqrt(-l2) u+ + sqrt(l1) u-, normalized; then v^T A v = 0.
  Vec<double> v(n);
  double wp = std::sqrt(-ln), wn = std::sqrt(lp);
  for (int i = 0; i < n; ++i)
    v[i] = wp * eig.vectors(i, ip) + wn * eig.vectors(i, in);
  double vn = 0.0;
  for (double x : v) vn += x * x;
  vn = std::sqrt(vn);
  for (double& x : v) x /= vn;

  Matrix<double> p = complete_orthogonal(n, {v});
  Matrix<double> m = p.transpose() * a * p;  // m(0,0) ~= 0

  // trailing block and coupling vector
  Matrix<double> a0(n - 1);
  Vec<double> u(n - 1);
  for (int i = 1; i < n; ++i) {
    u[i - 1] = m(i, 0);
    for (int j = 1; j < n; ++j) a0(i - 1, j - 1) = m(i, j);
  }
  // symmetrize and retarget the trace before recursing
  a0 = (a0 + a0.transpose()) * 0.5;
  double tr0 = trace(a0);
  for (int i = 0; i < n - 1; ++i) a0(i, i) -= tr0 / (n - 1);

  CommutatorPair sub = sym_traceless_core(a0);
  Matrix<double> b0 = sub.B;
  double shift = 1.0 + detail::frobenius(b0);
  for (int i = 0; i < n - 1; ++i) b0(i, i) += shift;  // forces invertibility
  Matrix<double> b0inv = inverse(b0);

  Matrix<double> b1(n), c1(n);
  for (int i = 0; i < n - 1; ++i)
    for (int j = 0; j < n - 1; ++j) {
      b1(i + 1, j + 1) = b0(i, j);
      c1(i + 1, j + 1) = sub.C(i, j);
    }
  Vec<double> b0inv_u(n - 1, 0.0);
  for (int i = 0; i < n - 1; ++i)
    for (int j = 0; j < n - 1; ++j) b0inv_u[i] += b0inv(i, j) * u[j];
  for (int i = 0; i < n - 1; ++i) {
    c1(i + 1, 0) = b0inv_u[i];
    c1(0, i + 1) = -b0inv_u[i];
  }

  CommutatorPair out;
  out.kind = CommutatorKind::SymSkew;
  out.B = p * b1 * p.transpose();
  out.C = p * c1 * p.transpose();
  return out;
}

}  // namespace detail

/// Writes a real trace-zero symmetric matrix as [B, C] with B symmetric and
/// C skew-symmetric. The input is normalized to unit Frobenius norm first,
/// so residuals stay relative across scales.
inline CommutatorPair sym_traceless_to_commutator(const Matrix<double>& a) {
  const int n = a.dim();
  const double norm = detail::frobenius(a);
  const double tol = 1e-9 * std::max(1.0, norm);
  if (detail::frobenius(a - a.transpose()) > tol)
    throw DomainError("input is not symmetric");
  if (std::abs(trace(a)) > tol) throw DomainError("input trace is not zero");
  if (norm == 0.0)
    return {Matrix<double>(n), Matrix<double>(n), CommutatorKind::SymSkew, {}};

  CommutatorPair out = detail::sym_traceless_core(a * (1.0 / norm));
  out.B = out.B * norm;
  return out;
}

/// Writes a real skew-symmetric matrix as a commutator of two symmetric
/// matrices via its orthogonal block-diagonal canonical form: each
/// [[0,l],[-l,0]] block is [diag(l/2,-l/2), antidiag(1,1)].
inline CommutatorPair skew_to_sym_commutator(const Matrix<double>& a) {
  const int n = a.dim();
  const double norm = detail::frobenius(a);
  if (detail::frobenius(a + a.transpose()) > 1e-10 * std::max(1.0, norm))
    throw DomainError("input is not skew-symmetric");

  CommutatorPair out;
  out.kind = CommutatorKind::SymSym;
  if (norm == 0.0) {
    out.B = Matrix<double>(n);
    out.C = Matrix<double>(n);
    return out;
  }
  if (std::abs(norm - 1.0) > 1e-12) {
    out = skew_to_sym_commutator(a * (1.0 / norm));
    out.B = out.B * norm;
    for (double& l : out.block_lambdas) l *= norm;
    return out;
  }

  // A^T A is symmetric PSD with doubled eigenvalues lambda^2.
  EigenDecomposition eig = jacobi_eigen(a.transpose() * a);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return eig.values[x] > eig.values[y]; });

  const double zero_thresh = 1e-9 * norm;
  std::vector<Vec<double>> cols;
  std::vector<double> lambdas;
  for (int oi : order) {
    Vec<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = eig.vectors(i, oi);
    // remove components of already-paired columns (degenerate eigenvalues)
    for (const auto& c : cols) {
      double dot = 0.0;
      for (int i = 0; i < n; ++i) dot += c[i] * w[i];
      for (int i = 0; i < n; ++i) w[i] -= dot * c[i];
    }
    double wn = 0.0;
    for (double x : w) wn += x * x;
    wn = std::sqrt(wn);
    if (wn < 1e-6) continue;  // direction already consumed by a partner
    for (double& x : w) x /= wn;
    // lambda = ||A w|| measured directly: accurate even when the sqrt of
    // the computed eigenvalue of A^T A would be noise-dominated
    Vec<double> q(n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) q[i] += a(i, j) * w[j];
    double lambda = 0.0;
    for (double x : q) lambda += x * x;
    lambda = std::sqrt(lambda);
    if (lambda <= zero_thresh) continue;  // kernel direction
    for (double& x : q) x /= lambda;
    // ordering (q, w) gives the block [[0,l],[-l,0]]
    cols.push_back(q);
    cols.push_back(w);
    lambdas.push_back(lambda);
  }

  Matrix<double> p = complete_orthogonal(n, cols);
  Matrix<double> d(n), s(n);
  for (size_t b = 0; b < lambdas.size(); ++b) {
    int i = static_cast<int>(2 * b);
    d(i, i) = lambdas[b] / 2.0;
    d(i + 1, i + 1) = -lambdas[b] / 2.0;
    s(i, i + 1) = 1.0;
    s(i + 1, i) = 1.0;
  }
  out.B = p * d * p.transpose();
  out.C = p * s * p.transpose();
  out.block_lambdas = std::move(lambdas);
  return out;
}

/// Factors an arbitrary square matrix as a product of two symmetric
/// matrices. The symmetric S with S A = A^T S is found from the exact (or
/// tolerance-pivoted) nullspace of the linear system; random combinations of
/// the nullspace basis are tried until an invertible S appears. Returns
/// (S^{-1}, S A).
template <class S>
std::pair<Matrix<S>, Matrix<S>> two_symmetric_factors(const Matrix<S>& a,
                                                      uint64_t seed = 1) {
  const int n = a.dim();
  const int unknowns = n * (n + 1) / 2;
  auto uidx = [n](int i, int j) {
    if (i > j) std::swap(i, j);
    return i * n - i * (i - 1) / 2 + (j - i);
  };
  // rows: entries of S A - A^T S = 0 in the packed symmetric unknowns
  std::vector<Vec<S>> rows;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      Vec<S> eq(unknowns, S(0));
      for (int k = 0; k < n; ++k) {
        eq[uidx(r, k)] += a(k, c);        // (S A)_{rc}
        eq[uidx(k, c)] -= a(k, r);        // (A^T S)_{rc} = sum_k a(k,r) s(k,c)
      }
      rows.push_back(std::move(eq));
    }
  std::vector<Vec<S>> basis = nullspace(std::move(rows), unknowns);
  if (basis.empty())
    throw InconsistencyError("symmetric intertwiner space is empty");

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-5, 5);
  const int max_tries = 64;
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    Matrix<S> s(n);
    for (size_t b = 0; b < basis.size(); ++b) {
      // first pass tries each basis vector alone
      S c = attempt == 0 ? (b == 0 ? S(1) : S(0)) : S(coeff(rng));
      if (c == S(0)) continue;
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          s(i, j) += c * basis[b][uidx(i, j)];
          if (i != j) s(j, i) += c * basis[b][uidx(i, j)];
        }
    }
    auto sinv = try_inverse(s);
    if (!sinv) continue;
    return {*sinv, s * a};
  }
  throw DomainError(
      "no invertible symmetric intertwiner found after " +
      std::to_string(max_tries) + " tries (solution space dimension " +
      std::to_string(basis.size()) + ")");
}

}  // namespace starimage

#endif
