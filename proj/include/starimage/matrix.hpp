#ifndef STARIMAGE_MATRIX_HPP
#define STARIMAGE_MATRIX_HPP

#include <array>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "starimage/scalar.hpp"

namespace starimage {

enum class Involution { Transpose, Symplectic };

/// Involution context: transpose on any n, symplectic only on even n.
struct InvolutionCtx {
  Involution kind = Involution::Transpose;
  int n = 2;

  InvolutionCtx() = default;
  InvolutionCtx(Involution k, int dim) : kind(k), n(dim) {
    if (kind == Involution::Symplectic && n % 2 != 0)
      throw DomainError("symplectic involution requires even dimension");
  }
};

/// Dense square matrix over an exact-rational or real scalar backend.
template <class S>
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int n) : n_(n), a_(static_cast<size_t>(n) * n, S(0)) {}
  Matrix(int n, std::initializer_list<S> vals) : Matrix(n) {
    if (vals.size() != a_.size())
      throw DomainError("matrix initializer size mismatch");
    size_t i = 0;
    for (const S& v : vals) a_[i++] = v;
  }

  static Matrix identity(int n) {
    Matrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
  }
  static Matrix unit(int n, int i, int j) {
    Matrix m(n);
    m(i, j) = S(1);
    return m;
  }

  int dim() const { return n_; }
  S& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
  const S& operator()(int i, int j) const {
    return a_[static_cast<size_t>(i) * n_ + j];
  }

  Matrix operator+(const Matrix& o) const {
    check_dims(o);
    Matrix r(n_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
  }
  Matrix operator-(const Matrix& o) const {
    check_dims(o);
    Matrix r(n_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
  }
  Matrix operator-() const {
    Matrix r(n_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = -a_[i];
    return r;
  }
  Matrix operator*(const Matrix& o) const {
    check_dims(o);
    Matrix r(n_);
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < n_; ++k) {
        const S& aik = (*this)(i, k);
        if (aik == S(0)) continue;
        for (int j = 0; j < n_; ++j) r(i, j) += aik * o(k, j);
      }
    return r;
  }
  Matrix operator*(const S& c) const {
    Matrix r(n_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * c;
    return r;
  }
  Matrix& operator+=(const Matrix& o) { return *this = *this + o; }

  bool operator==(const Matrix& o) const { return n_ == o.n_ && a_ == o.a_; }

  Matrix transpose() const {
    Matrix r(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  /// Max-norm of the entries.
  S norm_inf() const {
    S m(0);
    for (const S& x : a_) {
      S v = x < S(0) ? S(-x) : x;
      if (v > m) m = v;
    }
    return m;
  }

  const std::vector<S>& flat() const { return a_; }
  std::vector<S>& flat() { return a_; }

 private:
  void check_dims(const Matrix& o) const {
    if (n_ != o.n_) throw DomainError("matrix dimension mismatch");
  }
  int n_ = 0;
  std::vector<S> a_;
};

template <class S>
Matrix<S> operator*(const S& c, const Matrix<S>& m) {
  return m * c;
}

template <class S>
S trace(const Matrix<S>& a) {
  S t(0);
  for (int i = 0; i < a.dim(); ++i) t += a(i, i);
  return t;
}

template <class S>
Matrix<S> commutator(const Matrix<S>& a, const Matrix<S>& b) {
  return a * b - b * a;
}

/// Applies the involution of the context: transpose, or the symplectic
/// block map (A B; C D) -> (D^t -B^t; -C^t A^t).
template <class S>
Matrix<S> involute(const Matrix<S>& a, const InvolutionCtx& ctx) {
  if (a.dim() != ctx.n) throw DomainError("matrix does not match context");
  if (ctx.kind == Involution::Transpose) return a.transpose();
  int k = ctx.n / 2;
  Matrix<S> r(ctx.n);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      r(i, j) = a(k + j, k + i);        // D^t
      r(i, k + j) = -a(j, k + i);       // -B^t
      r(k + i, j) = -a(k + j, i);       // -C^t
      r(k + i, k + j) = a(j, i);        // A^t
    }
  return r;
}

template <class S>
Matrix<S> sym_part(const Matrix<S>& a, const InvolutionCtx& ctx) {
  Matrix<S> s = a + involute(a, ctx);
  return s * (S(1) / S(2));
}

template <class S>
Matrix<S> skew_part(const Matrix<S>& a, const InvolutionCtx& ctx) {
  Matrix<S> s = a - involute(a, ctx);
  return s * (S(1) / S(2));
}

template <class S>
bool is_symmetric(const Matrix<S>& a, const InvolutionCtx& ctx) {
  Matrix<S> d = a - involute(a, ctx);
  return scalar_traits<S>::is_zero(d.norm_inf(), a.norm_inf());
}

template <class S>
bool is_skew(const Matrix<S>& a, const InvolutionCtx& ctx) {
  Matrix<S> d = a + involute(a, ctx);
  return scalar_traits<S>::is_zero(d.norm_inf(), a.norm_inf());
}

/// True iff a = c*I for some scalar c (possibly zero).
template <class S>
bool is_scalar_matrix(const Matrix<S>& a) {
  const S& c = a(0, 0);
  S scale = a.norm_inf();
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) {
      const S want = i == j ? c : S(0);
      if (!scalar_traits<S>::equal(a(i, j), want, scale)) return false;
    }
  return true;
}

template <class S>
bool is_zero_matrix(const Matrix<S>& a, const S& scale = S(0)) {
  return scalar_traits<S>::is_zero(a.norm_inf(), scale);
}

// --- fixed bases -----------------------------------------------------------

/// Basis {I, E, e1, e2} of the 2x2 matrices: e1 = diag(1,-1),
/// e2 = antidiag(1,1), E = e1*e2 = [[0,1],[-1,0]].
template <class S>
struct M2Basis {
  Matrix<S> I, E, e1, e2;
};

template <class S>
M2Basis<S> basis_m2() {
  M2Basis<S> b;
  b.I = Matrix<S>::identity(2);
  b.e1 = Matrix<S>(2, {S(1), S(0), S(0), S(-1)});
  b.e2 = Matrix<S>(2, {S(0), S(1), S(1), S(0)});
  b.E = b.e1 * b.e2;
  return b;
}

/// The three generators of the K1 component of the 4x4 skew matrices,
/// for coefficient tuples (a,b,c) = (1,0,0), (0,1,0), (0,0,1).
template <class S>
std::array<Matrix<S>, 3> basis_k1_m4() {
  auto mk = [](long a, long b, long c) {
    Matrix<S> m(4);
    m(0, 1) = S(a);  m(0, 2) = S(b);  m(0, 3) = S(c);
    m(1, 0) = S(-a); m(1, 2) = S(c);  m(1, 3) = S(-b);
    m(2, 0) = S(-b); m(2, 1) = S(-c); m(2, 3) = S(a);
    m(3, 0) = S(-c); m(3, 1) = S(b);  m(3, 2) = S(-a);
    return m;
  };
  return {mk(1, 0, 0), mk(0, 1, 0), mk(0, 0, 1)};
}

/// K2 generators, the partner component with the opposite lower-block signs.
template <class S>
std::array<Matrix<S>, 3> basis_k2_m4() {
  auto mk = [](long a, long b, long c) {
    Matrix<S> m(4);
    m(0, 1) = S(a);  m(0, 2) = S(b);  m(0, 3) = S(c);
    m(1, 0) = S(-a); m(1, 2) = S(-c); m(1, 3) = S(b);
    m(2, 0) = S(-b); m(2, 1) = S(c);  m(2, 3) = S(-a);
    m(3, 0) = S(-c); m(3, 1) = S(-b); m(3, 2) = S(a);
    return m;
  };
  return {mk(1, 0, 0), mk(0, 1, 0), mk(0, 0, 1)};
}

/// True iff conjugation by u is a *-automorphism, i.e. u * u^* is a nonzero
/// scalar matrix.
template <class S>
bool is_star_automorphism_witness(const Matrix<S>& u, const InvolutionCtx& ctx) {
  Matrix<S> p = u * involute(u, ctx);
  if (is_zero_matrix(p, u.norm_inf()))
    throw DomainError("singular witness candidate: u * u^* = 0");
  return is_scalar_matrix(p);
}

}  // namespace starimage

#endif
