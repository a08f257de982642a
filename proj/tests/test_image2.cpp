#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "starimage/image2.hpp"
#include "starimage/star_poly.hpp"

using namespace starimage;

namespace {

const InvolutionCtx kT2{Involution::Transpose, 2};
const InvolutionCtx kS2{Involution::Symplectic, 2};

StarPolynomial P(const std::string& s) { return parse_star_polynomial(s); }

std::map<Variable, Matrix<Rational>> assign_syms(
    const std::vector<Matrix<Rational>>& vals) {
  std::map<Variable, Matrix<Rational>> a;
  for (size_t i = 0; i < vals.size(); ++i)
    a[Variable{VarKind::Symmetric, static_cast<int>(i) + 1}] = vals[i];
  return a;
}

/// Random multilinear polynomial with k symmetric and l skew variables and
/// 1..3 permutation monomials with positive coefficients.
StarPolynomial random_multilinear(std::mt19937_64& rng, int k, int l) {
  Word base;
  for (int i = 1; i <= k; ++i) base.push_back({VarKind::Symmetric, i});
  for (int j = 1; j <= l; ++j) base.push_back({VarKind::Skew, j});
  std::uniform_int_distribution<int> nmon(1, 3), coeff(1, 3);
  StarPolynomial p;
  int m = nmon(rng);
  for (int t = 0; t < m; ++t) {
    Word w = base;
    std::shuffle(w.begin(), w.end(), rng);
    p.add_term(w, coeff(rng));
  }
  return p;
}

}  // namespace

TEST_CASE("evaluate on explicit tuples") {
  auto b = basis_m2<Rational>();
  CHECK(evaluate(P("[y1,y2]"), assign_syms({b.e1, b.e2}), kT2) ==
        b.E * Rational(2));
  CHECK(evaluate(P("[y1,y2][y3,y4]"), assign_syms({b.e1, b.e2, b.e1, b.e2}),
                 kT2) == b.I * Rational(-4));
  CHECK(evaluate(P("[[y1,y2],y3]"), assign_syms({b.e1, b.e2, b.e1}), kT2) ==
        b.e2 * Rational(-4));
}

TEST_CASE("evaluate enforces value types") {
  auto b = basis_m2<Rational>();
  // skew variable given a symmetric value
  std::map<Variable, Matrix<Rational>> a1{{Variable{VarKind::Skew, 1}, b.e1}};
  CHECK_THROWS_AS(evaluate(P("z1"), a1, kT2), DomainError);
  // symmetric variable given a transpose-skew value
  std::map<Variable, Matrix<Rational>> a2{{Variable{VarKind::Symmetric, 1}, b.E}};
  CHECK_THROWS_AS(evaluate(P("y1"), a2, kT2), DomainError);
  // under the symplectic involution E *is* symmetric-compatible only for
  // scalars; e1 is skew there, so y1 -> e1 must fail
  std::map<Variable, Matrix<Rational>> a3{{Variable{VarKind::Symmetric, 1}, b.e1}};
  CHECK_THROWS_AS(evaluate(P("y1"), a3, kS2), DomainError);
  CHECK(evaluate(P("z1"), std::map<Variable, Matrix<Rational>>{
                              {Variable{VarKind::Skew, 1}, b.e1}},
                 kS2) == b.e1);
  // missing assignment
  std::map<Variable, Matrix<Rational>> a4;
  CHECK_THROWS_AS(evaluate(P("y1"), a4, kT2), DomainError);
}

TEST_CASE("transpose spans of the basic examples") {
  auto b = basis_m2<Rational>();
  auto s = image_span_transpose(P("[y1,y2]"));
  CHECK(s.dim() == 1);
  CHECK(s.contains(b.E));
  CHECK(image_span_transpose(standard_polynomial(4)).dim() == 0);
  CHECK(image_span_transpose(P("y1y2")).dim() == 4);
}

TEST_CASE("transpose classification of the eight-polynomial corpus") {
  CHECK(classify_image_transpose(standard_polynomial(4)) == ImageClass::Zero);
  CHECK(classify_image_transpose(P("[y1,y2]")) == ImageClass::SkewLine);
  CHECK(classify_image_transpose(P("[y1,y2][y3,y4]")) == ImageClass::ScalarLine);
  CHECK(classify_image_transpose(P("[y1,y2,y3]")) == ImageClass::TracelessSym2);
  CHECK(classify_image_transpose(P("[y1,y2,y3][y4,y5,y6]")) ==
        ImageClass::ScalarPlusSkew);
  CHECK(classify_image_transpose(P("[y1y2,y3y4]")) == ImageClass::Sl2);
  CHECK(classify_image_transpose(P("y1")) == ImageClass::Sym);
  CHECK(classify_image_transpose(P("y1y2")) == ImageClass::ContainsBasis);
}

TEST_CASE("skew variables reduce to commutators with the same class") {
  CHECK(classify_image_transpose(P("z1")) == ImageClass::SkewLine);
  CHECK(classify_image_transpose(P("z1z2")) == ImageClass::ScalarLine);
  // [z1,z2] reduces to a commutator of two skew lines, identically zero on M_2
  CHECK(classify_image_transpose(P("[z1,z2]")) == ImageClass::Zero);
  CHECK(classify_image_transpose(P("y1z1+z1y1")) == ImageClass::SkewLine);
}

TEST_CASE("symplectic classification") {
  CHECK(classify_image_symplectic(P("y1")) == ImageClass::ScalarLine);
  CHECK(classify_image_symplectic(P("z1")) == ImageClass::Sl2);
  CHECK(classify_image_symplectic(P("z1z2")) == ImageClass::Full);
  CHECK(classify_image_symplectic(P("[z1,z2]")) == ImageClass::Sl2);
}

TEST_CASE("span labels for both involutions") {
  CHECK(bresar_klep_label(P("[y1,y2][y3,y4]"), kT2) == SpanLabel::Z);
  CHECK(bresar_klep_label(P("[[y1,y2],y3]"), kT2) == SpanLabel::SK);
  CHECK(bresar_klep_label(P("z1"), kS2) == SpanLabel::Comm);
  CHECK(bresar_klep_label(standard_polynomial(4), kT2) == SpanLabel::Zero);
  CHECK(bresar_klep_label(P("[y1,y2]"), kT2) == SpanLabel::K);
  CHECK(bresar_klep_label(P("y1"), kT2) == SpanLabel::S);
  CHECK(bresar_klep_label(P("y1y2"), kT2) == SpanLabel::A);
  // symplectic symmetric variables are scalars, so y1y2 only reaches scalars
  CHECK(bresar_klep_label(P("y1y2"), kS2) == SpanLabel::Z);
}

TEST_CASE("predicates") {
  auto r1 = predicates(standard_polynomial(4), kT2);
  CHECK(r1.is_identity);
  CHECK(r1.is_central);
  auto r2 = predicates(P("[y1,y2][y3,y4]"), kT2);
  CHECK(r2.is_central);
  CHECK_FALSE(r2.is_identity);
  auto r3 = predicates(P("[y1,y2]"), kT2);
  CHECK(r3.sym_part_identity);  // f* = -f, so the symmetric part is 0
  CHECK_FALSE(r3.skew_part_identity);
  CHECK(r3.trace_vanishes);
  CHECK(r3.cyclic_zero);
  auto r4 = predicates(P("y1y2"), kT2);
  CHECK_FALSE(r4.trace_vanishes);
  CHECK_FALSE(r4.cyclic_zero);
}

TEST_CASE("witness chain: degree 1") {
  auto b = basis_m2<Rational>();
  auto w = witness_search<Rational>(P("y1"), {b.I}, {b.e1}, kT2);
  CHECK(w.index == 1);
  REQUIRE(w.tuple.size() == 1);
  CHECK(w.tuple[0] == b.I);
  CHECK(w.alternate == b.e1);
}

TEST_CASE("witness chain: postcondition oracle for y1y2") {
  auto b = basis_m2<Rational>();
  StarPolynomial p = P("y1y2");
  auto w = witness_search<Rational>(p, {b.I, b.I}, {b.e1, b.e2}, kT2);
  REQUIRE(w.tuple.size() == 2);
  CHECK(evaluate(p, assign_syms(w.tuple), kT2) == b.I);
  auto alt = w.tuple;
  alt[w.index - 1] = w.alternate;
  CHECK_FALSE(is_scalar_matrix(evaluate(p, assign_syms(alt), kT2)));
}

TEST_CASE("witness chain: precondition violations") {
  auto b = basis_m2<Rational>();
  // x tuple evaluating to a non-scalar
  CHECK_THROWS_AS(witness_search<Rational>(P("y1"), {b.e1}, {b.e2}, kT2),
                  DomainError);
  // x tuple evaluating to zero
  StarPolynomial comm = P("[y1,y2]");
  CHECK_THROWS_AS(witness_search<Rational>(comm, {b.I, b.I}, {b.e1, b.e2}, kT2),
                  DomainError);
  // central polynomial: no non-scalar y tuple exists
  StarPolynomial c4 = P("[y1,y2][y3,y4]");
  Matrix<Rational> half = b.I * Rational(-1, 4);
  // f(e1,e2,e1,half) = -4I * (-1/4) = I... keep x = (e1,e2,e1,e2) and rescale
  CHECK_THROWS_AS(
      witness_search<Rational>(c4, {b.e1, b.e2, b.e1, b.e2},
                               {b.e1, b.e2, b.e2, b.e1}, kT2),
      DomainError);
}

TEST_CASE("reduction consistency on random multilinear polynomials") {
  std::mt19937_64 rng(61);
  std::uniform_int_distribution<int> dk(0, 2), dl(1, 2);
  for (int t = 0; t < 100; ++t) {
    int l = dl(rng);
    int k = std::min(dk(rng), 5 - 2 * l);
    if (k < 0) k = 0;
    StarPolynomial p = random_multilinear(rng, k, l);
    StarPolynomial g = substitute_commutators(p);
    CHECK(g.skew_arity() == 0);
    CHECK(image_span_transpose(p) == image_span_transpose(g));
  }
}

TEST_CASE("image span is a Lie skew-ideal") {
  auto b = basis_m2<Rational>();
  for (const char* src : {"y1", "[y1,y2]", "y1y2", "[y1,y2,y3]", "z1z2"}) {
    auto span = image_span_transpose(P(src));
    for (const auto& m : span.matrices(2))
      CHECK(span.contains(commutator(m, b.E)));
  }
  for (const char* src : {"y1", "z1", "z1z2", "[z1,z2]"}) {
    auto span = image_span_symplectic(P(src));
    for (const auto& m : span.matrices(2))
      for (const auto& s : {b.e1, b.e2, b.E})
        CHECK(span.contains(commutator(m, s)));
  }
}

TEST_CASE("span is invariant under star-automorphism conjugation") {
  // u = scaled rotation: u u^t is scalar, so conjugation preserves both parts
  Matrix<Rational> u(2, {Rational(3), Rational(-4), Rational(4), Rational(3)});
  REQUIRE(is_star_automorphism_witness(u, kT2));
  for (const char* src : {"[y1,y2]", "[y1,y2,y3]", "y1", "y1y2", "z1z2"}) {
    auto span = image_span_transpose(P(src));
    for (const auto& m : span.matrices(2))
      CHECK(span.contains(conjugate(m, u)));
  }
}

TEST_CASE("describe covers every label") {
  for (SpanLabel l : {SpanLabel::Zero, SpanLabel::Z, SpanLabel::K,
                      SpanLabel::ZplusK, SpanLabel::SK, SpanLabel::S,
                      SpanLabel::Comm, SpanLabel::A}) {
    CHECK_FALSE(describe(l, Involution::Transpose).empty());
    CHECK_FALSE(describe(l, Involution::Symplectic).empty());
    CHECK(to_string(l) != "?");
  }
}
