#ifndef STARIMAGE_CONES_HPP
#define STARIMAGE_CONES_HPP

#include <cmath>
#include <string>

#include "starimage/matrix.hpp"

namespace starimage {

/// Coordinates of a 2x2 matrix in the basis {I, E, e1, e2}:
/// A = alpha0 I + alpha12 E + u1 e1 + u2 e2.
template <class S>
struct M2Decomp {
  S alpha0, alpha12, u1, u2;
};

/// The complete O(2)-orbit invariant: (alpha0, alpha12^2, ||u||^2).
/// Squares keep the exact backend radical-free.
template <class S>
struct OrbitInvariant {
  S alpha0, alpha12_sq, norm_u_sq;
};

enum class ConeTag { Zero, Scalar, Skew, TracelessSym, Diagonal, General };

/// Label of the irreducible O(2)-invariant cone through a matrix, with the
/// squared parameters of the diagonal/general families.
template <class S>
struct CanonicalCone {
  ConeTag tag;
  S a_sq = S(0);  // Diagonal, General
  S s_sq = S(0);  // General

  bool operator==(const CanonicalCone& o) const {
    if (tag != o.tag) return false;
    if (tag == ConeTag::Diagonal) return a_sq == o.a_sq;
    if (tag == ConeTag::General) return a_sq == o.a_sq && s_sq == o.s_sq;
    return true;
  }
};

inline std::string to_string(ConeTag t) {
  switch (t) {
    case ConeTag::Zero: return "Zero";
    case ConeTag::Scalar: return "Scalar";
    case ConeTag::Skew: return "Skew";
    case ConeTag::TracelessSym: return "TracelessSym";
    case ConeTag::Diagonal: return "Diagonal";
    case ConeTag::General: return "General";
  }
  return "?";
}

template <class S>
M2Decomp<S> decompose_m2(const Matrix<S>& a) {
  if (a.dim() != 2) throw DomainError("decompose_m2 needs a 2x2 matrix");
  M2Decomp<S> d;
  d.alpha0 = (a(0, 0) + a(1, 1)) / S(2);
  d.alpha12 = (a(0, 1) - a(1, 0)) / S(2);
  d.u1 = (a(0, 0) - a(1, 1)) / S(2);
  d.u2 = (a(0, 1) + a(1, 0)) / S(2);
  return d;
}

template <class S>
OrbitInvariant<S> orbit_invariant(const Matrix<S>& a) {
  M2Decomp<S> d = decompose_m2(a);
  return {d.alpha0, d.alpha12 * d.alpha12, d.u1 * d.u1 + d.u2 * d.u2};
}

/// Same O(2)-orbit iff alpha0, alpha12^2 and ||u||^2 all agree.
template <class S>
bool same_orbit(const Matrix<S>& a, const Matrix<S>& b) {
  OrbitInvariant<S> x = orbit_invariant(a), y = orbit_invariant(b);
  S scale = a.norm_inf() > b.norm_inf() ? a.norm_inf() : b.norm_inf();
  scale = scale * scale;
  return scalar_traits<S>::equal(x.alpha0, y.alpha0, scale) &&
         scalar_traits<S>::equal(x.alpha12_sq, y.alpha12_sq, scale) &&
         scalar_traits<S>::equal(x.norm_u_sq, y.norm_u_sq, scale);
}

/// Identifies the irreducible O(2)-invariant cone through A. The output is
/// unchanged by nonzero scaling of A and by O(2)-conjugation.
template <class S>
CanonicalCone<S> classify_cone(const Matrix<S>& a) {
  M2Decomp<S> d = decompose_m2(a);
  const S scale = a.norm_inf();
  auto zero = [&](const S& x) { return scalar_traits<S>::is_zero(x, scale); };
  const S gamma_sq = d.u1 * d.u1 + d.u2 * d.u2;
  const bool a0_zero = zero(d.alpha0);
  const bool a12_zero = zero(d.alpha12);
  const bool g_zero = zero(d.u1) && zero(d.u2);

  CanonicalCone<S> c{ConeTag::Zero};
  if (a12_zero) {
    if (g_zero) {
      c.tag = a0_zero ? ConeTag::Zero : ConeTag::Scalar;
    } else if (a0_zero) {
      c.tag = ConeTag::TracelessSym;
    } else {
      c.tag = ConeTag::Diagonal;
      c.a_sq = d.alpha0 * d.alpha0 / gamma_sq;
    }
  } else if (a0_zero && g_zero) {
    c.tag = ConeTag::Skew;
  } else {
    const S b_sq = d.alpha12 * d.alpha12;
    c.tag = ConeTag::General;
    c.a_sq = d.alpha0 * d.alpha0 / b_sq;
    c.s_sq = gamma_sq / b_sq;
  }
  return c;
}

/// The listed generator of the cone (real backend: the diagonal/general
/// families need square roots).
inline Matrix<double> representative(const CanonicalCone<double>& c) {
  auto b = basis_m2<double>();
  switch (c.tag) {
    case ConeTag::Zero: return Matrix<double>(2);
    case ConeTag::Scalar: return b.I;
    case ConeTag::Skew: return b.E;
    case ConeTag::TracelessSym: return b.e1;
    case ConeTag::Diagonal: {
      if (!(c.a_sq > 0)) throw DomainError("Diagonal cone needs a_sq > 0");
      double av = std::sqrt(c.a_sq);
      return Matrix<double>(2, {av + 1.0, 0.0, 0.0, av - 1.0});
    }
    case ConeTag::General: {
      if (c.a_sq < 0 || c.s_sq < 0 || (c.a_sq == 0 && c.s_sq == 0))
        throw DomainError("General cone needs a_sq, s_sq >= 0, not both zero");
      double av = std::sqrt(c.a_sq), sv = std::sqrt(c.s_sq);
      return Matrix<double>(2, {av + sv, 1.0, -1.0, av - sv});
    }
  }
  throw InconsistencyError("unreachable cone tag");
}

}  // namespace starimage

#endif
