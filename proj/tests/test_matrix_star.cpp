#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "starimage/linalg.hpp"
#include "starimage/matrix.hpp"

using namespace starimage;

namespace {

Matrix<Rational> random_rational(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> d(-6, 6);
  Matrix<Rational> m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Rational(d(rng));
  return m;
}

const InvolutionCtx kT2{Involution::Transpose, 2};
const InvolutionCtx kS2{Involution::Symplectic, 2};
const InvolutionCtx kS4{Involution::Symplectic, 4};

}  // namespace

TEST_CASE("symplectic context rejects odd dimension") {
  CHECK_THROWS_AS(InvolutionCtx(Involution::Symplectic, 3), DomainError);
}

TEST_CASE("symplectic involution on 2x2") {
  Matrix<Rational> a(2, {Rational(1), Rational(2), Rational(3), Rational(4)});
  Matrix<Rational> want(2, {Rational(4), Rational(-2), Rational(-3), Rational(1)});
  CHECK(involute(a, kS2) == want);
}

TEST_CASE("identity is fixed by both involutions") {
  auto id = Matrix<Rational>::identity(2);
  CHECK(involute(id, kT2) == id);
  CHECK(involute(id, kS2) == id);
}

TEST_CASE("symplectic involute equals det(A) A^{-1} for invertible 2x2") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    Matrix<Rational> a = random_rational(rng, 2);
    Rational det = determinant(a);
    if (det == 0) continue;
    CHECK(involute(a, kS2) == inverse(a) * det);
  }
}

TEST_CASE("involute is an anti-automorphism of order 2 (random)") {
  std::mt19937_64 rng(9);
  for (const auto& ctx : {kT2, kS2, kS4}) {
    for (int t = 0; t < 25; ++t) {
      Matrix<Rational> a = random_rational(rng, ctx.n);
      Matrix<Rational> b = random_rational(rng, ctx.n);
      CHECK(involute(involute(a, ctx), ctx) == a);
      CHECK(involute(a * b, ctx) == involute(b, ctx) * involute(a, ctx));
    }
  }
}

TEST_CASE("sym/skew parts are complementary projections") {
  std::mt19937_64 rng(13);
  for (const auto& ctx : {kT2, kS4}) {
    for (int t = 0; t < 20; ++t) {
      Matrix<Rational> a = random_rational(rng, ctx.n);
      Matrix<Rational> s = sym_part(a, ctx), k = skew_part(a, ctx);
      CHECK(s + k == a);
      CHECK(involute(s, ctx) == s);
      CHECK(involute(k, ctx) == -k);
      CHECK(sym_part(s, ctx) == s);
      CHECK(skew_part(k, ctx) == k);
    }
  }
}

TEST_CASE("transpose sym/skew split of a unit matrix") {
  auto b = basis_m2<Rational>();
  Matrix<Rational> a(2, {Rational(0), Rational(1), Rational(0), Rational(0)});
  CHECK(sym_part(a, kT2) == b.e2 * Rational(1, 2));
  CHECK(skew_part(a, kT2) == b.E * Rational(1, 2));
}

TEST_CASE("symplectic symmetric elements are scalars, skew are traceless") {
  CHECK(sym_part(Matrix<Rational>::identity(2), kS2) ==
        Matrix<Rational>::identity(2));
  std::mt19937_64 rng(17);
  for (int t = 0; t < 20; ++t) {
    Matrix<Rational> a = random_rational(rng, 2);
    Rational tr = trace(a);
    Matrix<Rational> traceless = a - Matrix<Rational>::identity(2) * (tr / 2);
    CHECK(sym_part(traceless, kS2) == Matrix<Rational>(2));
    CHECK(trace(skew_part(a, kS2)) == 0);
  }
}

TEST_CASE("fixed basis of M2") {
  auto b = basis_m2<Rational>();
  CHECK(b.E == Matrix<Rational>(2, {Rational(0), Rational(1), Rational(-1), Rational(0)}));
  CHECK(b.e1 * b.e2 == b.E);
  CHECK(commutator(b.e1, b.e2) == b.E * Rational(2));
  CHECK(b.E * b.E == -b.I);
}

TEST_CASE("K1 and K2 generators match the displayed matrices") {
  auto k1 = basis_k1_m4<Rational>();
  auto k2 = basis_k2_m4<Rational>();
  // a = 1 generator of K1: (1,2)=1,(2,1)=-1,(3,4)=1,(4,3)=-1
  CHECK(k1[0](0, 1) == 1);
  CHECK(k1[0](1, 0) == -1);
  CHECK(k1[0](2, 3) == 1);
  CHECK(k1[0](3, 2) == -1);
  // a = 1 generator of K2 flips the trailing block
  CHECK(k2[0](0, 1) == 1);
  CHECK(k2[0](1, 0) == -1);
  CHECK(k2[0](2, 3) == -1);
  CHECK(k2[0](3, 2) == 1);
  InvolutionCtx t4{Involution::Transpose, 4};
  for (const auto& m : k1) CHECK(is_skew(m, t4));
  for (const auto& m : k2) CHECK(is_skew(m, t4));
}

TEST_CASE("star-automorphism witness predicate") {
  // orthogonal matrices pass
  Matrix<Rational> rot(2, {Rational(3, 5), Rational(-4, 5), Rational(4, 5), Rational(3, 5)});
  CHECK(is_star_automorphism_witness(rot, kT2));
  // diag(1,2) fails: u u^t = diag(1,4)
  Matrix<Rational> d(2, {Rational(1), Rational(0), Rational(0), Rational(2)});
  CHECK_FALSE(is_star_automorphism_witness(d, kT2));
  // scalars are central
  CHECK(is_star_automorphism_witness(Matrix<Rational>::identity(2) * Rational(3), kT2));
}

TEST_CASE("witness conjugation preserves both symmetry types (transpose)") {
  // u with u u^t scalar: scaled rotation
  Matrix<Rational> u(2, {Rational(6), Rational(-8), Rational(8), Rational(6)});
  REQUIRE(is_star_automorphism_witness(u, kT2));
  std::mt19937_64 rng(21);
  for (int t = 0; t < 5; ++t) {
    Matrix<Rational> s = sym_part(random_rational(rng, 2), kT2);
    CHECK(is_symmetric(conjugate(s, u), kT2));
    Matrix<Rational> k = skew_part(random_rational(rng, 2), kT2);
    CHECK(is_skew(conjugate(k, u), kT2));
  }
}

TEST_CASE("commutator, trace and conjugation identities") {
  auto b = basis_m2<Rational>();
  CHECK(commutator(b.e1, b.e1) == Matrix<Rational>(2));
  CHECK(conjugate(b.e1, b.I) == b.e1);
  CHECK(conjugate(b.e1, b.e2) == -b.e1);
  std::mt19937_64 rng(25);
  for (int t = 0; t < 20; ++t) {
    Matrix<Rational> a = random_rational(rng, 3);
    Matrix<Rational> c = random_rational(rng, 3);
    CHECK(trace(commutator(a, c)) == 0);
  }
  CHECK_THROWS_AS(conjugate(b.e1, Matrix<Rational>(2)), DomainError);
}
