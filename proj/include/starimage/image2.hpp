#ifndef STARIMAGE_IMAGE2_HPP
#define STARIMAGE_IMAGE2_HPP

#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "starimage/linalg.hpp"
#include "starimage/matrix.hpp"
#include "starimage/star_poly.hpp"

namespace starimage {

enum class ImageClass {
  // transpose case
  Zero,
  ScalarLine,
  SkewLine,
  TracelessSym2,
  ScalarPlusSkew,
  Sl2,
  Sym,
  ContainsBasis,
  // symplectic case reuses Zero, ScalarLine, Sl2 and adds
  Full,
};

enum class SpanLabel { Zero, Z, K, ZplusK, SK, S, Comm, A };

inline std::string to_string(ImageClass c) {
  switch (c) {
    case ImageClass::Zero: return "Zero";
    case ImageClass::ScalarLine: return "ScalarLine";
    case ImageClass::SkewLine: return "SkewLine";
    case ImageClass::TracelessSym2: return "TracelessSym2";
    case ImageClass::ScalarPlusSkew: return "ScalarPlusSkew";
    case ImageClass::Sl2: return "Sl2";
    case ImageClass::Sym: return "Sym";
    case ImageClass::ContainsBasis: return "ContainsBasis";
    case ImageClass::Full: return "Full";
  }
  return "?";
}

inline std::string to_string(SpanLabel l) {
  switch (l) {
    case SpanLabel::Zero: return "Zero";
    case SpanLabel::Z: return "Z";
    case SpanLabel::K: return "K";
    case SpanLabel::ZplusK: return "ZplusK";
    case SpanLabel::SK: return "SK";
    case SpanLabel::S: return "S";
    case SpanLabel::Comm: return "Comm";
    case SpanLabel::A: return "A";
  }
  return "?";
}

/// Human-facing description of each label for M_2.
inline std::string describe(SpanLabel l, Involution inv) {
  const bool t = inv == Involution::Transpose;
  switch (l) {
    case SpanLabel::Zero: return "0";
    case SpanLabel::Z: return "F*I (scalars)";
    case SpanLabel::K: return t ? "R*E (skew)" : "sl2 (skew)";
    case SpanLabel::ZplusK: return t ? "F + F*E" : "M2";
    case SpanLabel::SK: return t ? "[S,K] = <e1,e2>" : "[S,K] = 0";
    case SpanLabel::S: return t ? "symmetric matrices" : "scalars";
    case SpanLabel::Comm: return "[A,A] = sl2";
    case SpanLabel::A: return "M2";
  }
  return "?";
}

namespace detail {

template <class S>
S coeff_as(const Rational& c) {
  if constexpr (scalar_traits<S>::exact)
    return c;
  else
    return scalar_traits<Rational>::to_double(c);
}

}  // namespace detail

/// Evaluates p with the given variable assignment; symmetric variables must
/// receive ctx-symmetric matrices and skew variables ctx-skew ones.
template <class S>
Matrix<S> evaluate(const StarPolynomial& p,
                   const std::map<Variable, Matrix<S>>& assign,
                   const InvolutionCtx& ctx) {
  for (const Variable& v : p.variables()) {
    auto it = assign.find(v);
    if (it == assign.end())
      throw DomainError("missing assignment for variable " + v.name());
    if (it->second.dim() != ctx.n)
      throw DomainError("assigned matrix dimension mismatch for " + v.name());
    if (v.kind == VarKind::Symmetric && !is_symmetric(it->second, ctx))
      throw DomainError("variable " + v.name() +
                        " requires a symmetric matrix value");
    if (v.kind == VarKind::Skew && !is_skew(it->second, ctx))
      throw DomainError("variable " + v.name() + " requires a skew matrix value");
  }
  Matrix<S> acc(ctx.n);
  for (const auto& [w, c] : p.terms()) {
    Matrix<S> prod = Matrix<S>::identity(ctx.n);
    for (const Variable& v : w) prod = prod * assign.at(v);
    acc += prod * detail::coeff_as<S>(c);
  }
  return acc;
}

namespace detail {

/// Runs fn over every assignment of the polynomial's variables where kind
/// Symmetric ranges over sym_vals and kind Skew over skew_vals.
template <class S>
void for_each_basis_tuple(const StarPolynomial& p,
                          const std::vector<Matrix<S>>& sym_vals,
                          const std::vector<Matrix<S>>& skew_vals,
                          const std::function<void(const std::map<Variable, Matrix<S>>&)>& fn) {
  const std::set<Variable> var_set = p.variables();
  std::vector<Variable> vars(var_set.begin(), var_set.end());
  std::map<Variable, Matrix<S>> assign;
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == vars.size()) {
      fn(assign);
      return;
    }
    const auto& pool =
        vars[i].kind == VarKind::Symmetric ? sym_vals : skew_vals;
    for (const auto& m : pool) {
      assign[vars[i]] = m;
      rec(i + 1);
    }
  };
  rec(0);
}

}  // namespace detail

/// Span of all evaluations where variables range over the given pools.
/// For a multilinear polynomial this equals the span of the full image.
template <class S>
SubspaceBasis<S> image_span(const StarPolynomial& p,
                            const std::vector<Matrix<S>>& sym_vals,
                            const std::vector<Matrix<S>>& skew_vals,
                            const InvolutionCtx& ctx) {
  p.validate_multilinear();
  std::vector<Vec<S>> vecs;
  detail::for_each_basis_tuple<S>(
      p, sym_vals, skew_vals,
      [&](const std::map<Variable, Matrix<S>>& assign) {
        vecs.push_back(evaluate(p, assign, ctx).flat());
      });
  if (vecs.empty()) return SubspaceBasis<S>(ctx.n * ctx.n);
  return SubspaceBasis<S>::from_vectors(ctx.n * ctx.n, std::move(vecs));
}

/// Transpose context on M_2: symmetric variables range over {I, e1, e2},
/// skew variables over {E}.
inline SubspaceBasis<Rational> image_span_transpose(const StarPolynomial& p) {
  auto b = basis_m2<Rational>();
  return image_span<Rational>(p, {b.I, b.e1, b.e2}, {b.E},
                              InvolutionCtx(Involution::Transpose, 2));
}

/// Symplectic context on M_2: symmetric variables are scalars ({I}), skew
/// variables range over the sl_2 basis {e1, e2, E}.
inline SubspaceBasis<Rational> image_span_symplectic(const StarPolynomial& p) {
  auto b = basis_m2<Rational>();
  return image_span<Rational>(p, {b.I}, {b.e1, b.e2, b.E},
                              InvolutionCtx(Involution::Symplectic, 2));
}

namespace detail {

struct M2RefSpans {
  SubspaceBasis<Rational> zero, scalars, skew_line, traceless_sym,
      scalar_plus_skew, sl2, sym, full;
};

inline const M2RefSpans& m2_ref_spans() {
  static const M2RefSpans r = [] {
    auto b = basis_m2<Rational>();
    M2RefSpans s;
    using SB = SubspaceBasis<Rational>;
    s.zero = SB(4);
    s.scalars = SB::from_matrices({b.I});
    s.skew_line = SB::from_matrices({b.E});
    s.traceless_sym = SB::from_matrices({b.e1, b.e2});
    s.scalar_plus_skew = SB::from_matrices({b.I, b.E});
    s.sl2 = SB::from_matrices({b.E, b.e1, b.e2});
    s.sym = SB::from_matrices({b.I, b.e1, b.e2});
    s.full = SB::from_matrices({b.I, b.E, b.e1, b.e2});
    return s;
  }();
  return r;
}

}  // namespace detail

/// Theorem-level classification of the image on M_2(R) with transpose.
/// Skew variables are removed first by the commutator substitution, which
/// preserves the image.
inline ImageClass classify_image_transpose(const StarPolynomial& p) {
  StarPolynomial g = p.skew_arity() > 0 ? substitute_commutators(p) : p;
  SubspaceBasis<Rational> span = image_span_transpose(g);
  const auto& ref = detail::m2_ref_spans();
  if (span.dim() == 0) return ImageClass::Zero;
  if (span == ref.scalars) return ImageClass::ScalarLine;
  if (span == ref.skew_line) return ImageClass::SkewLine;
  if (span == ref.traceless_sym) return ImageClass::TracelessSym2;
  if (span == ref.scalar_plus_skew) return ImageClass::ScalarPlusSkew;
  if (span == ref.sl2) return ImageClass::Sl2;
  if (span == ref.sym) return ImageClass::Sym;
  if (span.dim() == 4) return ImageClass::ContainsBasis;
  throw InconsistencyError(
      "image span is not O(2)-invariant; classification bug");
}

inline ImageClass classify_image_symplectic(const StarPolynomial& p) {
  SubspaceBasis<Rational> span = image_span_symplectic(p);
  const auto& ref = detail::m2_ref_spans();
  if (span.dim() == 0) return ImageClass::Zero;
  if (span == ref.scalars) return ImageClass::ScalarLine;
  if (span == ref.sl2) return ImageClass::Sl2;
  if (span.dim() == 4) return ImageClass::Full;
  throw InconsistencyError(
      "symplectic image span is not a Lie ideal; classification bug");
}

/// Bresar-Klep span label of the image span on M_2 for the given context.
inline SpanLabel bresar_klep_label(const StarPolynomial& p,
                                   const InvolutionCtx& ctx) {
  const auto& ref = detail::m2_ref_spans();
  if (ctx.kind == Involution::Transpose) {
    StarPolynomial g = p.skew_arity() > 0 ? substitute_commutators(p) : p;
    SubspaceBasis<Rational> span = image_span_transpose(g);
    if (span.dim() == 0) return SpanLabel::Zero;
    if (span == ref.scalars) return SpanLabel::Z;
    if (span == ref.skew_line) return SpanLabel::K;
    if (span == ref.scalar_plus_skew) return SpanLabel::ZplusK;
    if (span == ref.traceless_sym) return SpanLabel::SK;
    if (span == ref.sym) return SpanLabel::S;
    if (span == ref.sl2) return SpanLabel::Comm;
    if (span.dim() == 4) return SpanLabel::A;
    throw InconsistencyError("span is not among the eight reference subspaces");
  }
  // symplectic: images are 0, F, sl2 or M2, labeled 0, Z, [A,A], A
  switch (classify_image_symplectic(p)) {
    case ImageClass::Zero: return SpanLabel::Zero;
    case ImageClass::ScalarLine: return SpanLabel::Z;
    case ImageClass::Sl2: return SpanLabel::Comm;
    case ImageClass::Full: return SpanLabel::A;
    default:
      throw InconsistencyError("unexpected symplectic image class");
  }
}

/// Evaluation-level predicates over the finite basis-tuple set of the
/// context, mirroring the conditions of the eight-way span theorem.
struct PredicateRecord {
  bool is_identity = true;
  bool is_central = true;
  bool skew_part_identity = false;  // (f - f*)/2 vanishes on the algebra
  bool sym_part_identity = false;   // (f + f*)/2 vanishes on the algebra
  bool trace_vanishes = true;
  bool cyclic_zero = false;
};

inline PredicateRecord predicates(const StarPolynomial& p,
                                  const InvolutionCtx& ctx) {
  p.validate_multilinear();
  auto b = basis_m2<Rational>();
  std::vector<Matrix<Rational>> sym_vals, skew_vals;
  if (ctx.kind == Involution::Transpose) {
    sym_vals = {b.I, b.e1, b.e2};
    skew_vals = {b.E};
  } else {
    sym_vals = {b.I};
    skew_vals = {b.e1, b.e2, b.E};
  }
  auto all_evals = [&](const StarPolynomial& q,
                       const std::function<bool(const Matrix<Rational>&)>& ok) {
    if (q.is_zero()) return true;
    bool pass = true;
    detail::for_each_basis_tuple<Rational>(
        q, sym_vals, skew_vals,
        [&](const std::map<Variable, Matrix<Rational>>& assign) {
          if (pass && !ok(evaluate(q, assign, ctx))) pass = false;
        });
    return pass;
  };
  PredicateRecord r;
  r.is_identity = all_evals(p, [](const Matrix<Rational>& m) {
    return is_zero_matrix(m);
  });
  r.is_central = all_evals(p, [](const Matrix<Rational>& m) {
    return is_scalar_matrix(m);
  });
  r.trace_vanishes = all_evals(p, [](const Matrix<Rational>& m) {
    return trace(m) == 0;
  });
  r.sym_part_identity = all_evals(symmetric_part(p), [](const Matrix<Rational>& m) {
    return is_zero_matrix(m);
  });
  r.skew_part_identity = all_evals(skew_part(p), [](const Matrix<Rational>& m) {
    return is_zero_matrix(m);
  });
  r.cyclic_zero = cyclic_sum_zero(p);
  return r;
}

/// Result of the nonzero-witness chain: a tuple r with f(r) = 1 and an
/// alternate value for slot `index` making the evaluation non-scalar.
template <class S>
struct WitnessResult {
  int index = 0;  // 1-based
  std::vector<Matrix<S>> tuple;
  Matrix<S> alternate;
};

/// Implements the replacement chain of the nonzero-value lemma. x_tuple must
/// evaluate to a nonzero scalar, y_tuple to a non-scalar value; variables are
/// taken in their natural order.
template <class S>
WitnessResult<S> witness_search(const StarPolynomial& p,
                                const std::vector<Matrix<S>>& x_tuple,
                                const std::vector<Matrix<S>>& y_tuple,
                                const InvolutionCtx& ctx) {
  p.validate_multilinear();
  const std::set<Variable> var_set = p.variables();
  std::vector<Variable> vars(var_set.begin(), var_set.end());
  const int m = static_cast<int>(vars.size());
  if (static_cast<int>(x_tuple.size()) != m ||
      static_cast<int>(y_tuple.size()) != m)
    throw DomainError("witness tuples must match the polynomial arity");

  auto eval_tuple = [&](const std::vector<Matrix<S>>& t) {
    std::map<Variable, Matrix<S>> assign;
    for (int i = 0; i < m; ++i) assign[vars[i]] = t[i];
    return evaluate(p, assign, ctx);
  };

  Matrix<S> fx = eval_tuple(x_tuple);
  if (!is_scalar_matrix(fx) || is_zero_matrix(fx, fx.norm_inf()))
    throw DomainError("x tuple must evaluate to a nonzero scalar");
  if (is_scalar_matrix(eval_tuple(y_tuple)))
    throw DomainError("y tuple must evaluate to a non-scalar value");

  std::vector<Matrix<S>> ys = y_tuple;
  for (int restart = 0; restart <= m; ++restart) {
    // minimal i with f(y_1..y_i, x_{i+1}..x_m) non-scalar
    int i = -1;
    for (int j = 1; j <= m; ++j) {
      std::vector<Matrix<S>> t = x_tuple;
      for (int k = 0; k < j; ++k) t[k] = ys[k];
      if (!is_scalar_matrix(eval_tuple(t))) {
        i = j;
        break;
      }
    }
    if (i < 0) throw InconsistencyError("lost the non-scalar witness");

    std::vector<Matrix<S>> r = x_tuple;
    for (int k = 0; k < i; ++k) r[k] = ys[k];
    // invariant: f(r) non-scalar; candidate tuple swaps slot i back to x_i
    for (int j = i - 2; j >= -1; --j) {
      std::vector<Matrix<S>> cand = r;
      cand[i - 1] = x_tuple[i - 1];
      Matrix<S> val = eval_tuple(cand);
      if (!is_scalar_matrix(val)) {
        // the scalar-prefix assumption broke; restart from a shorter chain
        ys = cand;
        break;
      }
      if (!is_zero_matrix(val, val.norm_inf())) {
        // normalize f(cand) to 1 through slot 1
        S c = val(0, 0);
        WitnessResult<S> out;
        out.index = i;
        out.tuple = cand;
        out.tuple[0] = out.tuple[0] * (S(1) / c);
        out.alternate = i == 1 ? r[0] * (S(1) / c) : r[i - 1];
        return out;
      }
      if (j < 0) throw DomainError("witness chain exhausted");
      // replacement step: fold x_j into r_j, keeping f(r) non-scalar
      Matrix<S> plus = r[j] + x_tuple[j];
      std::vector<Matrix<S>> rp = r;
      rp[j] = plus;
      if (!is_scalar_matrix(eval_tuple(rp))) {
        r = rp;
      } else {
        rp[j] = r[j] - x_tuple[j];
        if (is_scalar_matrix(eval_tuple(rp)))
          throw InconsistencyError("both replacement signs lost the witness");
        r = rp;
      }
    }
  }
  throw DomainError("witness chain did not terminate");
}

}  // namespace starimage

#endif
