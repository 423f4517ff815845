#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tga/algebra.hpp"

using namespace tga;
using namespace tga::algebra;
using pgroup::AbelianPGroup;
using pgroup::EGroup;
using pgroup::SemidirectProduct;

namespace {

SCAlgebra group_algebra_s3() {
  AbelianPGroup P(3, {1});
  EGroup E = pgroup::egroup_close(P, {pgroup::aut_from_coords(P, {{{2}}})});
  SemidirectProduct G(P, E);
  ff::Field k3 = ff::Field::prime(3);
  return twisted_group_algebra(k3, G, cocycle::cocycle_trivial(k3, E));
}

SCAlgebra group_algebra_d10() {
  AbelianPGroup P(5, {1});
  EGroup E = pgroup::egroup_close(P, {pgroup::aut_from_coords(P, {{{4}}})});
  SemidirectProduct G(P, E);
  ff::Field k5 = ff::Field::prime(5);
  return twisted_group_algebra(k5, G, cocycle::cocycle_trivial(k5, E));
}

SCAlgebra group_algebra_c3c3() {
  AbelianPGroup P(3, {1, 1});
  EGroup E = pgroup::egroup_close(P, {});
  SemidirectProduct G(P, E);
  ff::Field k3 = ff::Field::prime(3);
  return twisted_group_algebra(k3, G, cocycle::cocycle_trivial(k3, E));
}

// bicharacter twist of C3 x (C2 x C2) with trivial action
SCAlgebra bicharacter_algebra() {
  AbelianPGroup P(3, {1});
  pgroup::PAut id = pgroup::paut_identity(P);
  EGroup V = pgroup::egroup_abstract(
      P, {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}}, {id, id, id, id});
  ff::Field k3 = ff::Field::prime(3);
  auto alpha = cocycle::cocycle_bicharacter(k3, V, {{0, 1}, {0, 0}}, 2);
  return twisted_group_algebra(k3, SemidirectProduct(P, V), alpha);
}

ff::Subspace brute_center(const SCAlgebra& A) {
  ff::RowBasis rows(A.field, A.dim);
  for (int j = 0; j < A.dim; ++j)
    for (int t = 0; t < A.dim; ++t) {
      std::vector<ff::Elem> row(A.dim, 0);
      for (int m = 0; m < A.dim; ++m) {
        ff::Elem coef = 0;
        for (const auto& [s, c] : A.basis_prod(m, j))
          if (s == t) coef = A.field.add(coef, c);
        for (const auto& [s, c] : A.basis_prod(j, m))
          if (s == t) coef = A.field.sub(coef, c);
        row[m] = coef;
      }
      rows.add_dense(row);
    }
  return rows.kernel();
}

}  // namespace

TEST_CASE("structure constant validation") {
  ff::Field k3 = ff::Field::prime(3);
  // k[t]/t^2
  SCAlgebra A = from_structure_constants(
      k3, {"1", "t"}, {1, 0}, {{{0, 1}}, {{1, 1}}, {{1, 1}}, {}});
  CHECK(A.dim == 2);
  CHECK(A.mul(A.basis(1), A.basis(1)) == A.zero());
  CHECK(A.describe({1, 2}) == "1 + 2*t");

  // a*a = b, a*b = 1 but b*a = 0 breaks associativity: (aa)a != a(aa)
  CHECK_THROWS_WITH_AS(
      from_structure_constants(k3, {"1", "a", "b"}, {1, 0, 0},
                               {{{0, 1}}, {{1, 1}}, {{2, 1}},
                                {{1, 1}}, {{2, 1}}, {{0, 1}},
                                {{2, 1}}, {}, {}}),
      doctest::Contains("associativity fails"), Error);

  CHECK_THROWS_WITH_AS(from_structure_constants(k3, {"1", "t"}, {0, 1},
                                                {{{0, 1}}, {{1, 1}}, {{1, 1}}, {}}),
                       doctest::Contains("unit axiom"), Error);
  CHECK_THROWS_AS(from_structure_constants(k3, {"1"}, {1}, {}), Error);
}

TEST_CASE("twisted group algebra of a semidirect product") {
  SCAlgebra A = group_algebra_s3();
  CHECK(A.dim == 6);
  CHECK(A.unit == A.basis(0));
  CHECK(A.gens.size() == 2);

  // basis products follow the group law
  const auto& G = A.group->G;
  for (int g = 0; g < 6; ++g)
    for (int h = 0; h < 6; ++h) {
      Vec v = A.mul(A.basis(g), A.basis(h));
      CHECK(v == A.basis(static_cast<int>(G.mul(g, h))));
    }

  CHECK(center(A).dim() == 3);
  CHECK(radical_power(A, 1).dim() == 4);
  CHECK(radical_power(A, 2).dim() == 2);
  CHECK(radical_power(A, 3).dim() == 0);
  CHECK(loewy_length(A) == 3);

  CHECK(center(group_algebra_d10()).dim() == 4);

  SCAlgebra B = group_algebra_c3c3();
  CHECK(B.dim == 9);
  CHECK(center(B).dim() == 9);  // commutative
  CHECK(radical_power(B, 1).dim() == 8);
  CHECK(radical_power(B, 2).dim() == 6);
  CHECK(radical_power(B, 3).dim() == 3);
  CHECK(radical_power(B, 4).dim() == 1);
  CHECK(loewy_length(B) == 5);
}

TEST_CASE("bicharacter twist anticommutes") {
  SCAlgebra A = bicharacter_algebra();
  CHECK(A.dim == 12);
  const auto& G = A.group->G;
  int g1 = G.E.generators[0], g2 = G.E.generators[1];
  Vec e1 = A.basis(static_cast<int>(G.index(0, g1)));
  Vec e2 = A.basis(static_cast<int>(G.index(0, g2)));
  Vec lhs = A.mul(e1, e2);
  Vec rhs = A.mul(e2, e1);
  for (int t = 0; t < A.dim; ++t) CHECK(lhs[t] == A.field.neg(rhs[t]));

  // J = J(kC3) A since the twist lives on the p'-part
  CHECK(radical_power(A, 1).dim() == 8);
  CHECK(radical_power(A, 2).dim() == 4);
  CHECK(loewy_length(A) == 3);
  // Z = Z(kC3) (x) Z(k_alpha V4) and the twisted V4 part is a matrix algebra
  CHECK(center(A).dim() == 3);
}

TEST_CASE("quantum complete intersection") {
  ff::Field k3 = ff::Field::prime(3);
  SCAlgebra A = qci_algebra(k3);
  CHECK(A.dim == 9);
  CHECK(A.labels[0] == "1");
  CHECK(A.labels[4] == "x*y");
  CHECK(A.labels[8] == "x^2*y^2");

  Vec x = A.basis(3), y = A.basis(1);
  CHECK(A.mul(x, y) == A.basis(4));
  Vec yx = A.mul(y, x);
  CHECK(yx[4] == k3.neg(k3.one()));
  // x^3 = 0
  CHECK(A.mul(x, A.mul(x, x)) == A.zero());

  CHECK(radical_power(A, 1).dim() == 8);
  CHECK(radical_power(A, 2).dim() == 6);
  CHECK(radical_power(A, 3).dim() == 3);
  CHECK(radical_power(A, 4).dim() == 1);
  CHECK(radical_power(A, 4).contains(A.basis(8)));
  CHECK(loewy_length(A) == 5);

  ff::Subspace Z = center(A);
  CHECK(Z.dim() == 6);
  CHECK(Z.contains(A.basis(6)));        // x^2
  CHECK_FALSE(Z.contains(A.basis(3)));  // x
  CHECK(Z.contains(A.basis(5)));        // x*y^2

  CHECK_THROWS_WITH_AS(qci_algebra(ff::Field::prime(2)), doctest::Contains("odd characteristic"),
                       Error);

  ff::Field k9 = ff::Field::make(3, 2);
  CHECK(qci_algebra(k9).dim == 9);
}

TEST_CASE("tensor product algebras") {
  AbelianPGroup P(3, {1});
  EGroup E = pgroup::egroup_close(P, {});
  ff::Field k3 = ff::Field::prime(3);
  SCAlgebra C3 = twisted_group_algebra(k3, SemidirectProduct(P, E),
                                       cocycle::cocycle_trivial(k3, E));
  SCAlgebra T = tensor_algebra(C3, C3);
  CHECK(T.dim == 9);
  CHECK(T.unit == T.basis(0));
  CHECK(T.gens.size() == 2);

  // same radical filtration as the direct C3 x C3 construction
  SCAlgebra B = group_algebra_c3c3();
  for (int m = 1; m <= 5; ++m)
    CHECK(radical_power(T, m).dim() == radical_power(B, m).dim());
  CHECK(loewy_length(T) == 5);

  // (x (x) 1)(1 (x) y) = x (x) y
  CHECK(T.mul(T.basis(1 * 3 + 0), T.basis(0 * 3 + 1)) == T.basis(1 * 3 + 1));

  SCAlgebra S3 = group_algebra_s3();
  SCAlgebra TS = tensor_algebra(S3, S3);
  CHECK(TS.dim == 36);
  CHECK(radical_power(TS, 1).dim() == 6 * 4 + 4 * 6 - 4 * 4);  // J(x)B + A(x)J
  CHECK(loewy_length(TS) == 5);

  CHECK_THROWS_AS(tensor_algebra(C3, group_algebra_d10()), Error);
}

TEST_CASE("quotient algebras") {
  AbelianPGroup P(3, {2});
  EGroup E = pgroup::egroup_close(P, {});
  ff::Field k3 = ff::Field::prime(3);
  SCAlgebra A = twisted_group_algebra(k3, SemidirectProduct(P, E),
                                      cocycle::cocycle_trivial(k3, E));
  CHECK(A.dim == 9);

  QuotientAlgebra Q1 = quotient_algebra(A, radical_power(A, 1));
  CHECK(Q1.Abar.dim == 1);
  CHECK(Q1.Abar.unit == Vec{1});

  QuotientAlgebra Q2 = quotient_algebra(A, radical_power(A, 2));
  CHECK(Q2.Abar.dim == 2);
  // proj o section = identity
  ff::MatrixFq ps = ff::mat_mul(Q2.proj, Q2.section);
  CHECK(ps == ff::mat_identity(k3, 2));
  // the image of xhat - 1 squares to zero in A/J^2
  Vec xm1 = A.basis(1);
  xm1[0] = k3.neg(k3.one());
  Vec xb = ff::mat_apply(Q2.proj, xm1);
  CHECK(Q2.Abar.mul(xb, xb) == Q2.Abar.zero());

  // span{xhat} is not an ideal
  ff::MatrixFq one_row(k3, 1, 9);
  one_row.at(0, 1) = 1;
  CHECK_THROWS_WITH_AS(quotient_algebra(A, ff::Subspace::span(one_row)),
                       doctest::Contains("two-sided"), Error);
}

TEST_CASE("center agrees with the all-pairs computation") {
  for (const SCAlgebra& A : {group_algebra_s3(), group_algebra_d10(), bicharacter_algebra(),
                             qci_algebra(ff::Field::prime(3))}) {
    CHECK(center(A) == brute_center(A));
  }
}

TEST_CASE("multiplication matrices and commutator identities") {
  SCAlgebra A = group_algebra_s3();
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<ff::Elem> coef(0, 2);
  auto rand_vec = [&] {
    Vec v = A.zero();
    for (auto& c : v) c = coef(rng);
    return v;
  };
  for (int trial = 0; trial < 50; ++trial) {
    Vec a = rand_vec(), b = rand_vec(), c = rand_vec();
    CHECK(ff::mat_apply(A.left_mult_matrix(a), b) == A.mul(a, b));
    CHECK(ff::mat_apply(A.right_mult_matrix(a), b) == A.mul(b, a));
    // Jacobi identity for the associator commutator
    Vec j1 = A.commutator(A.commutator(a, b), c);
    Vec j2 = A.commutator(A.commutator(b, c), a);
    Vec j3 = A.commutator(A.commutator(c, a), b);
    for (int t = 0; t < A.dim; ++t)
      CHECK(A.field.add(A.field.add(j1[t], j2[t]), j3[t]) == 0);
  }
}
