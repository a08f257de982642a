#ifndef STARIMAGE_LIE4_HPP
#define STARIMAGE_LIE4_HPP

#include <array>
#include <set>
#include <string>
#include <vector>

#include "starimage/linalg.hpp"
#include "starimage/matrix.hpp"

namespace starimage {

enum class Component { Z, K1, K2, SK, K };

inline std::string to_string(Component c) {
  switch (c) {
    case Component::Z: return "Z";
    case Component::K1: return "K1";
    case Component::K2: return "K2";
    case Component::SK: return "SK";
    case Component::K: return "K";
  }
  return "?";
}

/// A Lie skew-ideal of M_4 written as a subset of the four irreducible
/// components {Z, K1, K2, SK}.
using ComponentSet = std::set<Component>;

/// Basis of one component of M_n under the transpose involution. K1/K2 exist
/// only for n = 4; K is the full skew space, SK the traceless symmetric one.
inline std::vector<Matrix<Rational>> component_basis(int n, Component comp) {
  using M = Matrix<Rational>;
  switch (comp) {
    case Component::Z:
      if (n < 2) throw DomainError("component basis needs n >= 2");
      return {M::identity(n)};
    case Component::K1: {
      if (n != 4) throw DomainError("K1 is defined only for n = 4");
      auto arr = basis_k1_m4<Rational>();
      return {arr.begin(), arr.end()};
    }
    case Component::K2: {
      if (n != 4) throw DomainError("K2 is defined only for n = 4");
      auto arr = basis_k2_m4<Rational>();
      return {arr.begin(), arr.end()};
    }
    case Component::K: {
      if (n < 2) throw DomainError("component basis needs n >= 2");
      std::vector<M> out;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          out.push_back(M::unit(n, i, j) - M::unit(n, j, i));
      return out;
    }
    case Component::SK: {
      if (n < 2) throw DomainError("component basis needs n >= 2");
      std::vector<M> out;
      for (int i = 0; i + 1 < n; ++i)
        out.push_back(M::unit(n, i, i) - M::unit(n, i + 1, i + 1));
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          out.push_back(M::unit(n, i, j) + M::unit(n, j, i));
      return out;
    }
  }
  throw InconsistencyError("unreachable component");
}

/// Exact coordinates of a 4x4 matrix in the decomposition
/// M_4 = Z + K1 + K2 + SK (dimensions 1 + 3 + 3 + 9 = 16).
struct M4Projection {
  Rational z;
  std::array<Rational, 3> k1, k2;
  std::array<Rational, 9> sk;
};

inline M4Projection project_m4(const Matrix<Rational>& a) {
  if (a.dim() != 4) throw DomainError("project_m4 needs a 4x4 matrix");
  std::vector<Matrix<Rational>> basis = component_basis(4, Component::Z);
  for (Component c : {Component::K1, Component::K2, Component::SK})
    for (auto& m : component_basis(4, c)) basis.push_back(std::move(m));
  // solve sum_j x_j basis_j = a as a 16x16 exact system
  std::vector<Vec<Rational>> rows(16, Vec<Rational>(17, Rational(0)));
  for (int e = 0; e < 16; ++e) {
    for (int j = 0; j < 16; ++j) rows[e][j] = basis[j].flat()[e];
    rows[e][16] = a.flat()[e];
  }
  auto pivots = rref(rows);
  if (pivots.size() != 16 || pivots.back() == 16)
    throw InconsistencyError("component bases do not span M_4");
  M4Projection p;
  p.z = rows[0][16];
  for (int i = 0; i < 3; ++i) p.k1[i] = rows[1 + i][16];
  for (int i = 0; i < 3; ++i) p.k2[i] = rows[4 + i][16];
  for (int i = 0; i < 9; ++i) p.sk[i] = rows[7 + i][16];
  return p;
}

/// Smallest subspace containing the given matrices and closed under
/// commutators with the skew basis of M_n, by closure iteration.
inline SubspaceBasis<Rational> generate_lie_skew_ideal(
    const std::vector<Matrix<Rational>>& gens, int n) {
  if (n > 8) throw DomainError("closure supported for n <= 8");
  SubspaceBasis<Rational> span = SubspaceBasis<Rational>::from_matrices(gens);
  if (gens.empty()) span = SubspaceBasis<Rational>(n * n);
  std::vector<Matrix<Rational>> skew = component_basis(n, Component::K);
  for (int round = 0; round < n * n; ++round) {
    bool grew = false;
    for (const auto& x : span.matrices(n))
      for (const auto& s : skew)
        if (span.add(commutator(x, s).flat())) grew = true;
    if (!grew) break;
  }
  return span;
}

/// True iff B is closed under commutation with every skew basis element.
inline bool is_lie_skew_ideal(const SubspaceBasis<Rational>& b, int n) {
  std::vector<Matrix<Rational>> skew = component_basis(n, Component::K);
  for (const auto& x : b.matrices(n))
    for (const auto& s : skew)
      if (!b.contains(commutator(x, s))) return false;
  return true;
}

/// Identifies a Lie skew-ideal of M_4 as a direct sum of components.
inline ComponentSet classify_lie_skew_ideal(const SubspaceBasis<Rational>& b) {
  const int n = 4;
  if (!is_lie_skew_ideal(b, n))
    throw DomainError("subspace is not a Lie skew-ideal");
  ComponentSet out;
  int dim_sum = 0;
  std::vector<Vec<Rational>> all_rows;
  for (Component c : {Component::Z, Component::K1, Component::K2, Component::SK}) {
    auto basis = component_basis(n, c);
    bool inside = true;
    for (const auto& m : basis)
      if (!b.contains(m)) { inside = false; break; }
    if (inside) {
      out.insert(c);
      dim_sum += static_cast<int>(basis.size());
      for (const auto& m : basis) all_rows.push_back(m.flat());
    }
  }
  if (dim_sum != b.dim())
    throw InconsistencyError(
        "Lie skew-ideal is not a sum of the four components");
  return out;
}

/// O(4)-invariance of a component set: K1 and K2 must come together, since
/// an explicit orthogonal P conjugates one onto the other.
struct O4Collapse {
  bool invariant;
  ComponentSet collapsed;
};

/// The orthogonal matrix with P^{-1} K1 P = K2.
inline Matrix<Rational> k_swap_matrix() {
  Matrix<Rational> p(4);
  p(0, 2) = 1;
  p(1, 3) = -1;
  p(2, 0) = 1;
  p(3, 1) = 1;
  return p;
}

inline O4Collapse o4_collapse(const ComponentSet& c) {
  // verify the swap on the component bases
  const Matrix<Rational> p = k_swap_matrix();
  if (!(p * p.transpose() == Matrix<Rational>::identity(4)))
    throw InconsistencyError("swap matrix is not orthogonal");
  auto k2 = SubspaceBasis<Rational>::from_matrices(
      component_basis(4, Component::K2));
  for (const auto& m : component_basis(4, Component::K1))
    if (!k2.contains(conjugate(m, p)))
      throw InconsistencyError("P does not map K1 into K2");

  O4Collapse out;
  out.collapsed = c;
  bool has1 = c.count(Component::K1) > 0, has2 = c.count(Component::K2) > 0;
  out.invariant = has1 == has2;
  if (has1 || has2) {
    out.collapsed.insert(Component::K1);
    out.collapsed.insert(Component::K2);
  }
  return out;
}

}  // namespace starimage

#endif
