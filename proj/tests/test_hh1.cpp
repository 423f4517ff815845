#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "tga/algebra.hpp"
#include "tga/cocycle.hpp"
#include "tga/error.hpp"
#include "tga/ff.hpp"
#include "tga/hh1.hpp"
#include "tga/lie.hpp"
#include "tga/pgroup.hpp"

using namespace tga;
using algebra::SCAlgebra;
using algebra::Vec;
using ff::Field;
using ff::MatrixFq;
using ff::Subspace;

namespace {

SCAlgebra semidirect_algebra(const Field& k, const pgroup::AbelianPGroup& P,
                             const std::vector<pgroup::PAut>& auts) {
  const auto E = pgroup::egroup_close(P, auts);
  const pgroup::SemidirectProduct G(P, E);
  return algebra::twisted_group_algebra(k, G, cocycle::cocycle_trivial(k, E));
}

SCAlgebra s3_algebra() {
  const pgroup::AbelianPGroup P(3, {1});
  return semidirect_algebra(Field::prime(3), P, {pgroup::aut_make(P, {P.neg(P.generator(0))})});
}

// C3 with V4 acting trivially and a bicharacter cocycle: a genuinely twisted
// 12-dimensional algebra whose E-part is not faithful.
SCAlgebra bicharacter_algebra() {
  const Field k = Field::prime(3);
  const pgroup::AbelianPGroup P(3, {1});
  const pgroup::PAut id = pgroup::paut_identity(P);
  const auto V = pgroup::egroup_abstract(
      P, {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}}, {id, id, id, id});
  const auto alpha = cocycle::cocycle_bicharacter(k, V, {{0, 1}, {0, 0}}, 2);
  return algebra::twisted_group_algebra(k, pgroup::SemidirectProduct(P, V), alpha);
}

bool hh1_matches_oracle(const SCAlgebra& A) {
  const auto O = hh1::hh1_via_oracle(A);
  const auto F = hh1::hh1_via_cocycles(A);
  CHECK(F.dim() == O.dim());
  CHECK(F.der == O.der);
  CHECK(F.ider == O.ider);
  CHECK(lie::is_solvable(F.hh1) == lie::is_solvable(O.hh1));
  CHECK(lie::is_nilpotent(F.hh1) == lie::is_nilpotent(O.hh1));
  for (const auto& d : F.reps) CHECK(hh1::is_derivation(A, d));
  return F.dim() == O.dim() && F.der == O.der;
}

MatrixFq commutator(const MatrixFq& x, const MatrixFq& y) {
  return ff::mat_sub(ff::mat_mul(x, y), ff::mat_mul(y, x));
}

}  // namespace

TEST_CASE("Leibniz oracle and inner derivations on pinned cases") {
  const Field f2 = Field::prime(2);
  const Field f3 = Field::prime(3);

  // dim Der(kP) = |P| * rank(P)
  CHECK(hh1::der_bruteforce(hh1::p_group_algebra(f3, pgroup::AbelianPGroup(3, {1}))).dim() == 3);
  CHECK(hh1::der_bruteforce(hh1::p_group_algebra(f2, pgroup::AbelianPGroup(2, {1}))).dim() == 2);
  CHECK(hh1::der_bruteforce(hh1::p_group_algebra(f3, pgroup::AbelianPGroup(3, {1, 1}))).dim() ==
        18);
  CHECK(hh1::der_bruteforce(hh1::p_group_algebra(f2, pgroup::AbelianPGroup(2, {2}))).dim() == 4);
  CHECK(hh1::der_bruteforce(hh1::p_group_algebra(f3, pgroup::AbelianPGroup(3, {2}))).dim() == 9);

  const SCAlgebra s3 = s3_algebra();
  const Subspace der_s3 = hh1::der_bruteforce(s3);
  CHECK(der_s3.dim() == 4);  // dim HH1 + dim IDer = 1 + 3
  for (int i = 0; i < der_s3.dim(); ++i)
    CHECK(hh1::is_derivation(s3, hh1::unflatten(f3, s3.dim, der_s3.basis().row(i))));

  CHECK(hh1::inner_derivations(hh1::p_group_algebra(f3, pgroup::AbelianPGroup(3, {1}))).dim() ==
        0);
  CHECK(hh1::inner_derivations(s3).dim() == 3);  // 6 - dim Z(kS3)
  CHECK(hh1::inner_derivations(algebra::qci_algebra(f3)).dim() == 3);

  // a scalar matrix moves the unit, so it is not a derivation
  CHECK_FALSE(hh1::is_derivation(s3, ff::mat_identity(f3, s3.dim)));
}

TEST_CASE("cocycle spaces of abelian p-groups") {
  const Field f3 = Field::prime(3);
  const pgroup::AbelianPGroup C3(3, {1});

  SUBCASE("conjugation module of kC3 is trivial: Z1 is everything, B1 is zero") {
    const SCAlgebra A = hh1::p_group_algebra(f3, C3);
    const hh1::PModule M = hh1::conjugation_module(A);
    REQUIRE(M.X.size() == 1);
    CHECK(M.X[0] == ff::mat_identity(f3, 3));
    CHECK(hh1::z1_abelian(M).dim() == 3);
    CHECK(hh1::b1_abelian(M).dim() == 0);

    // tau(x^c) = c v for the trivial action
    const Vec v = {1, 2, 0};
    CHECK(hh1::cocycle_value(M, v, C3.smul(2, C3.generator(0))) == Vec{2, 1, 0});
  }

  SUBCASE("free module: the regular action of C3 has H1 = 0") {
    MatrixFq X(f3, 3, 3);
    X.at(1, 0) = 1;
    X.at(2, 1) = 1;
    X.at(0, 2) = 1;
    const hh1::PModule M{C3, 3, {X}};
    const Subspace z1 = hh1::z1_abelian(M);
    const Subspace b1 = hh1::b1_abelian(M);
    CHECK(z1.dim() == 2);
    CHECK(b1.dim() == 2);
    CHECK(z1 == b1);
  }

  SUBCASE("commutation constraints between generators") {
    const pgroup::AbelianPGroup P(3, {1, 1});
    MatrixFq X1 = ff::mat_identity(f3, 2);
    X1.at(0, 1) = 1;  // unipotent shear
    const MatrixFq X2 = ff::mat_identity(f3, 2);
    const hh1::PModule M{P, 2, {X1, X2}};
    CHECK(hh1::z1_abelian(M).dim() == 3);
    CHECK(hh1::b1_abelian(M).dim() == 1);
  }

  SUBCASE("module validation rejects a wrong-order action") {
    MatrixFq bad = ff::mat_identity(f3, 2);
    bad.at(0, 0) = 2;  // order 2, not a C3 action
    const hh1::PModule M{C3, 2, {bad}};
    CHECK_THROWS_WITH_AS(hh1::z1_abelian(M), doctest::Contains("X_i"), Error);
  }
}

TEST_CASE("fast path agrees with the oracle, including twisted and E = 1 cases") {
  const Field f2 = Field::prime(2);
  const Field f3 = Field::prime(3);
  const Field f5 = Field::prime(5);
  const Field f7 = Field::prime(7);

  SUBCASE("group algebras of P alone") {
    const SCAlgebra c3 = hh1::p_group_algebra(f3, pgroup::AbelianPGroup(3, {1}));
    CHECK(hh1_matches_oracle(c3));
    CHECK(hh1::hh1_via_cocycles(c3).dim() == 3);

    const SCAlgebra c4 = hh1::p_group_algebra(f2, pgroup::AbelianPGroup(2, {2}));
    CHECK(hh1_matches_oracle(c4));
    CHECK(hh1::hh1_via_cocycles(c4).dim() == 4);

    const SCAlgebra c2 = hh1::p_group_algebra(f2, pgroup::AbelianPGroup(2, {1}));
    const auto H = hh1::hh1_via_cocycles(c2);
    CHECK(hh1_matches_oracle(c2));
    REQUIRE(H.dim() == 2);
    CHECK(lie::is_solvable(H.hh1));
    CHECK_FALSE(lie::is_nilpotent(H.hh1));
    // dim 2 solvable but not nilpotent forces the non-abelian affine algebra
    CHECK_FALSE(H.hh1.basis_bracket(0, 1).empty());
  }

  SUBCASE("dihedral-type semidirect products") {
    const pgroup::AbelianPGroup C3(3, {1});
    const pgroup::AbelianPGroup C5(5, {1});
    const pgroup::AbelianPGroup C7(7, {1});
    const SCAlgebra s3 = s3_algebra();
    const SCAlgebra d10 =
        semidirect_algebra(f5, C5, {pgroup::aut_make(C5, {C5.neg(C5.generator(0))})});
    const SCAlgebra d14 =
        semidirect_algebra(f7, C7, {pgroup::aut_make(C7, {C7.neg(C7.generator(0))})});
    CHECK(hh1_matches_oracle(s3));
    CHECK(hh1_matches_oracle(d10));
    CHECK(hh1_matches_oracle(d14));
    CHECK(hh1::hh1_via_cocycles(s3).dim() == 1);
    CHECK(hh1::hh1_via_cocycles(d10).dim() == 2);
    CHECK(hh1::hh1_via_cocycles(d14).dim() == 3);
  }

  SUBCASE("rank two with inversion, and the Klein four group with a free C3") {
    const pgroup::AbelianPGroup C33(3, {1, 1});
    const SCAlgebra m =
        semidirect_algebra(f3, C33, {pgroup::aut_from_coords(C33, {{2, 0}, {0, 2}})});
    CHECK(hh1_matches_oracle(m));
    const auto H = hh1::hh1_via_cocycles(m);
    CHECK(H.dim() == 8);
    CHECK_FALSE(lie::is_solvable(H.hh1));

    const pgroup::AbelianPGroup V4(2, {1, 1});
    const SCAlgebra a4 =
        semidirect_algebra(f2, V4, {pgroup::aut_from_coords(V4, {{0, 1}, {1, 1}})});
    CHECK(hh1_matches_oracle(a4));
    CHECK(hh1::hh1_via_cocycles(a4).dim() == 2);
  }

  SUBCASE("twisted algebra with a non-faithful action") {
    CHECK(hh1_matches_oracle(bicharacter_algebra()));
  }

  SUBCASE("quantum complete intersections only support the oracle") {
    const auto O = hh1::hh1_via_oracle(algebra::qci_algebra(f3));
    CHECK(O.dim() > 0);
    CHECK(lie::is_solvable(O.hh1));
    CHECK_THROWS_WITH_AS(hh1::hh1_via_cocycles(algebra::qci_algebra(f3)),
                         doctest::Contains("twisted group algebra"), Error);
  }
}

TEST_CASE("cocycle to derivation bridge") {
  const SCAlgebra s3 = s3_algebra();
  const auto H = hh1::hh1_via_cocycles(s3);
  REQUIRE(H.complex.has_value());
  const auto& ef = *H.complex;

  SUBCASE("boundaries of E-fixed elements give inner derivations") {
    REQUIRE(ef.b1_fixed.dim() >= 1);
    for (int b = 0; b < ef.b1_fixed.dim(); ++b) {
      const MatrixFq d = hh1::cocycle_to_derivation(s3, ef.M, ef.b1_fixed.basis().row(b));
      CHECK(H.ider.contains(hh1::flatten(d)));
    }
  }

  SUBCASE("a cocycle that is not E-stable fails Leibniz") {
    bool found = false;
    for (int b = 0; b < ef.z1.dim() && !found; ++b) {
      const Vec tau = ef.z1.basis().row(b);
      if (ef.z1_fixed.contains(tau)) continue;
      found = true;
      CHECK_THROWS_WITH_AS(hh1::cocycle_to_derivation(s3, ef.M, tau),
                           doctest::Contains("Leibniz"), Error);
    }
    CHECK(found);  // Z1 is strictly larger than its E-fixed part here
  }

  SUBCASE("class coordinates are blind to inner shifts") {
    REQUIRE(H.dim() == 1);
    CHECK(hh1::class_coordinates(H, H.reps[0]) == Vec{1});
    const MatrixFq ad = hh1::unflatten(s3.field, s3.dim, H.ider.basis().row(0));
    CHECK(hh1::class_coordinates(H, ff::mat_add(H.reps[0], ad)) == Vec{1});
    CHECK_THROWS_WITH_AS(hh1::class_coordinates(H, ff::mat_identity(s3.field, s3.dim)),
                         doctest::Contains("not a combination"), Error);
  }
}

TEST_CASE("radical valued classes and the P-part lift") {
  const Field f3 = Field::prime(3);

  SUBCASE("kC3: the Euler class survives every semisimple quotient") {
    const SCAlgebra c3 = hh1::p_group_algebra(f3, pgroup::AbelianPGroup(3, {1}));
    const auto H = hh1::hh1_via_cocycles(c3);
    REQUIRE(H.dim() == 3);
    CHECK(hh1::classes_with_rep_in_radical_power(c3, H, 1).dim() == 2);
    CHECK(hh1::classes_with_rep_in_radical_power(c3, H, 2).dim() == 1);
    // J^3 = 0, so only the zero class remains
    CHECK(hh1::classes_with_rep_in_radical_power(c3, H, 3).dim() == 0);
  }

  SUBCASE("S3: every class is radical valued and lifts from kP") {
    const SCAlgebra s3 = s3_algebra();
    const auto H = hh1::hh1_via_cocycles(s3);
    REQUIRE(H.dim() == 1);
    CHECK(hh1::classes_with_rep_in_radical_power(s3, H, 1).dim() == 1);
    CHECK(hh1::p_part_valued_classes(s3, H).dim() == 1);
  }
}

TEST_CASE("E-stable derivations on kP and their extension") {
  const Field f3 = Field::prime(3);
  const pgroup::AbelianPGroup C3(3, {1});
  const auto inv = pgroup::aut_make(C3, {C3.neg(C3.generator(0))});
  const auto E = pgroup::egroup_close(C3, {inv});
  const SCAlgebra AP = hh1::p_group_algebra(f3, C3);

  SUBCASE("extension realizes the restriction isomorphism for S3") {
    CHECK(hh1::estable_derivations(AP, E).dim() == 1);

    const auto DA = hh1::estable_der_algebra(f3, C3, E);
    REQUIRE(DA.lie.dim == 1);
    CHECK(lie::is_solvable(DA.lie));

    const SCAlgebra s3 = s3_algebra();
    const auto H = hh1::hh1_via_cocycles(s3);
    const MatrixFq ext = hh1::extend_estable_derivation(s3, DA.reps[0]);
    CHECK(hh1::is_derivation(s3, ext));
    const Vec c = hh1::class_coordinates(H, ext);
    REQUIRE(c.size() == 1);
    CHECK(c[0] != 0);  // the extension spans HH1(kS3)
  }

  SUBCASE("the polynomial derivative is not stable under inversion") {
    MatrixFq ddx(f3, 3, 3);
    ddx.at(0, 1) = 1;  // x -> 1
    ddx.at(1, 2) = 2;  // x^2 -> 2x
    REQUIRE(hh1::is_derivation(AP, ddx));
    CHECK_THROWS_WITH_AS(hh1::extend_estable_derivation(s3_algebra(), ddx),
                         doctest::Contains("does not commute"), Error);
  }
}

TEST_CASE("Frattini pushforward") {
  const Field f3 = Field::prime(3);
  const Field f2 = Field::prime(2);

  SUBCASE("Der(kC9) maps onto Der(kC3) with a six dimensional kernel") {
    const SCAlgebra c9 = hh1::p_group_algebra(f3, pgroup::AbelianPGroup(3, {2}));
    const auto Q = hh1::frattini_quotient(c9);
    CHECK(Q.Abar.dim == 3);
    const Subspace der = hh1::der_bruteforce(c9);
    REQUIRE(der.dim() == 9);
    ff::RowBasis image(f3, 9);
    for (int b = 0; b < der.dim(); ++b) {
      const MatrixFq f = hh1::unflatten(f3, 9, der.basis().row(b));
      const MatrixFq fbar = hh1::frattini_pushforward(c9, Q, f);
      CHECK(hh1::is_derivation(Q.Abar, fbar));
      image.add_dense(hh1::flatten(fbar));
    }
    CHECK(image.rank() == 3);
    CHECK(der.dim() - image.rank() == 6);  // rank-nullity
  }

  SUBCASE("elementary abelian P gives the identity operation") {
    const SCAlgebra A = hh1::p_group_algebra(f3, pgroup::AbelianPGroup(3, {1, 1}));
    const auto Q = hh1::frattini_quotient(A);
    CHECK(Q.proj == ff::mat_identity(f3, 9));
    const MatrixFq f = hh1::unflatten(f3, 9, hh1::der_bruteforce(A).basis().row(0));
    CHECK(hh1::frattini_pushforward(A, Q, f) == f);
  }

  SUBCASE("C4 over F2: the Euler derivation pushes to the Euler derivation") {
    const SCAlgebra c4 = hh1::p_group_algebra(f2, pgroup::AbelianPGroup(2, {2}));
    MatrixFq d(f2, 4, 4);
    d.at(1, 1) = 1;  // x -> x
    d.at(3, 3) = 1;  // x^3 -> x^3
    REQUIRE(hh1::is_derivation(c4, d));
    const auto Q = hh1::frattini_quotient(c4);
    const MatrixFq dbar = hh1::frattini_pushforward(c4, Q, d);
    CHECK(dbar.at(1, 1) == 1);
    CHECK(dbar.at(0, 1) == 0);
    CHECK_THROWS_WITH_AS(hh1::frattini_pushforward(c4, Q, ff::mat_identity(f2, 4)),
                         doctest::Contains("not a derivation"), Error);
  }
}

TEST_CASE("induced maps on J/J^2") {
  const Field f3 = Field::prime(3);
  const pgroup::AbelianPGroup P(3, {1, 1});
  const SCAlgebra AP = hh1::p_group_algebra(f3, P);
  const int n = AP.dim;

  const auto unflatten_rows = [&](const Subspace& s) {
    std::vector<MatrixFq> out;
    for (int b = 0; b < s.dim(); ++b) out.push_back(hh1::unflatten(f3, n, s.basis().row(b)));
    return out;
  };

  SUBCASE("E = 1: radical valued derivations cover all of gl_2") {
    const auto E1 = pgroup::egroup_close(P, {});
    const Subspace der = hh1::der_bruteforce(AP);
    // keep the derivations whose image lies in J: every column of the matrix
    // must have augmentation zero
    ff::RowBasis aug_rows(f3, n * n);
    for (int j = 0; j < n; ++j) {
      std::vector<std::pair<int, ff::Elem>> row;
      for (int m = 0; m < n; ++m) row.emplace_back(m * n + j, 1);
      aug_rows.add_sparse(row);
    }
    const Subspace der1 = der.intersect(aug_rows.kernel());
    CHECK(der1.dim() == 16);

    const auto rep = hh1::semisimple_quotient_map(AP, E1, unflatten_rows(der1));
    CHECK(rep.image_rank == 4);
    CHECK(rep.commutant.dim() == 4);
    CHECK_FALSE(rep.commutant_commutative);

    // d/dx sends xhat - 1 to the unit, which escapes J
    MatrixFq ddx(f3, n, n);
    for (pgroup::PElem u = 0; u < 9; ++u) {
      auto digits = P.decode(u);
      if (digits[0] == 0) continue;
      auto below = digits;
      below[0] -= 1;
      ddx.at(static_cast<int>(P.encode(below)), static_cast<int>(u)) = digits[0];
    }
    REQUIRE(hh1::is_derivation(AP, ddx));
    CHECK_THROWS_WITH_AS(hh1::semisimple_quotient_map(AP, E1, {ddx}),
                         doctest::Contains("does not preserve"), Error);
  }

  SUBCASE("scalar E-action: full gl_2 commutant") {
    const auto E = pgroup::egroup_close(P, {pgroup::aut_from_coords(P, {{2, 0}, {0, 2}})});
    const Subspace st = hh1::estable_derivations(AP, E);
    CHECK(st.dim() == 8);
    const auto rep = hh1::semisimple_quotient_map(AP, E, unflatten_rows(st));
    CHECK(rep.image_rank == 4);
    CHECK(rep.commutant.dim() == 4);
    CHECK_FALSE(rep.commutant_commutative);
  }

  SUBCASE("diagonal torus: diagonal commutant and a rank two image") {
    const auto E = pgroup::egroup_close(P, {pgroup::aut_from_coords(P, {{2, 0}, {0, 1}}),
                                            pgroup::aut_from_coords(P, {{1, 0}, {0, 2}})});
    REQUIRE(E.order == 4);
    const Subspace st = hh1::estable_derivations(AP, E);
    const auto rep = hh1::semisimple_quotient_map(AP, E, unflatten_rows(st));
    CHECK(rep.image_rank == 2);
    CHECK(rep.commutant.dim() == 2);
    CHECK(rep.commutant_commutative);
  }
}

TEST_CASE("tensor product derivations") {
  const Field f3 = Field::prime(3);
  const SCAlgebra c3 = hh1::p_group_algebra(f3, pgroup::AbelianPGroup(3, {1}));
  const SCAlgebra s3 = s3_algebra();
  const SCAlgebra T = algebra::tensor_algebra(c3, s3);

  MatrixFq euler(f3, 3, 3);
  euler.at(1, 1) = 1;
  euler.at(2, 2) = 2;  // x^j -> j x^j
  REQUIRE(hh1::is_derivation(c3, euler));
  MatrixFq ddx(f3, 3, 3);
  ddx.at(0, 1) = 1;
  ddx.at(1, 2) = 2;
  REQUIRE(hh1::is_derivation(c3, ddx));

  const auto Hs3 = hh1::hh1_via_cocycles(s3);
  const MatrixFq g = Hs3.reps[0];
  const MatrixFq ad =
      ff::mat_sub(s3.left_mult_matrix(s3.basis(2)), s3.right_mult_matrix(s3.basis(2)));
  const Vec zB = algebra::center(s3).basis().row(1);
  const Vec zA = c3.basis(1);  // kC3 is commutative, so everything is central

  SUBCASE("lifts are derivations of the tensor product") {
    CHECK(hh1::is_derivation(T, hh1::tensor_derivation_left(T, euler, zB)));
    CHECK(hh1::is_derivation(T, hh1::tensor_derivation_right(T, c3.unit, g)));
  }

  SUBCASE("left lifts bracket to [f, f'] (x) w w'") {
    const MatrixFq X = hh1::tensor_derivation_left(T, euler, s3.unit);
    const MatrixFq Y = hh1::tensor_derivation_left(T, ddx, zB);
    CHECK(commutator(X, Y) ==
          hh1::tensor_derivation_left(T, commutator(euler, ddx), s3.mul(s3.unit, zB)));
  }

  SUBCASE("right lifts bracket to z z' (x) [g, g']") {
    const MatrixFq U = hh1::tensor_derivation_right(T, zA, g);
    const MatrixFq V = hh1::tensor_derivation_right(T, c3.unit, ad);
    CHECK(commutator(U, V) ==
          hh1::tensor_derivation_right(T, c3.mul(zA, c3.unit), commutator(g, ad)));
  }

  SUBCASE("mixed bracket is f(z) (x) g") {
    const MatrixFq F1 = hh1::tensor_derivation_left(T, euler, s3.unit);
    const MatrixFq ZG = hh1::tensor_derivation_right(T, zA, g);
    CHECK(commutator(F1, ZG) == hh1::tensor_derivation_right(T, ff::mat_apply(euler, zA), g));
  }

  SUBCASE("validation") {
    CHECK_THROWS_WITH_AS(hh1::tensor_derivation_left(T, ff::mat_identity(f3, 3), zB),
                         doctest::Contains("is not a derivation"), Error);
    CHECK_THROWS_WITH_AS(hh1::tensor_derivation_right(T, c3.unit, ff::mat_identity(f3, 6)),
                         doctest::Contains("is not a derivation"), Error);
    // a single reflection is not central in kS3
    CHECK_THROWS_WITH_AS(hh1::tensor_derivation_left(T, euler, s3.basis(1)),
                         doctest::Contains("not central"), Error);
  }
}
