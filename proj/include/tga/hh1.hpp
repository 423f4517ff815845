#pragma once

// First Hochschild cohomology of the algebras built in algebra.hpp.
//
// Two independent routes to HH1 = Der(A)/IDer(A):
//   - a brute-force oracle that solves the Leibniz system directly, and
//   - a cocycle fast path for twisted group algebras k_alpha(P x| E) that
//     computes H^1(P; A)^E with A carrying the twisted conjugation action
//     and converts E-stable cocycles into derivations.
// Plus the maps used by the structure theory: radical-valued class
// subspaces, extension of E-stable derivations from kP, the pushforward to
// k(P/Phi(P)), induced maps on J/J^2, and derivations of tensor products.

#include <optional>
#include <vector>

#include "tga/algebra.hpp"
#include "tga/ff.hpp"
#include "tga/lie.hpp"
#include "tga/pgroup.hpp"

namespace tga::hh1 {

using algebra::SCAlgebra;
using algebra::Vec;

// A linear map f on A is stored as the matrix with column j = f(e_j).
// Where maps live inside subspaces they are flattened row-major:
// coordinate (t, m) -> t * dim + m.
Vec flatten(const ff::MatrixFq& D);
ff::MatrixFq unflatten(const ff::Field& k, int n, const Vec& v);

// Exhaustive check of f(ab) = f(a)b + a f(b) over all basis pairs.
bool is_derivation(const SCAlgebra& A, const ff::MatrixFq& D);

// Der(A) as the kernel of the Leibniz system on pairs (g, x) with g running
// over A.gens and x over the basis, together with f(1) = 0. Sound because
// left arguments satisfying Leibniz against everything form a unital
// subalgebra; every kernel basis vector is re-verified on all pairs.
// Requires dim A <= 100.
ff::Subspace der_bruteforce(const SCAlgebra& A);

// Span of ad(b) = [b, -] over the basis elements of A.
ff::Subspace inner_derivations(const SCAlgebra& A);

// ---------------------------------------------------------------------------
// Cocycles of an abelian p-group with values in a module.

// Module given by the commuting action matrices X_i of the canonical
// generators x_i of P, with X_i^{p^{a_i}} = I.
struct PModule {
  pgroup::AbelianPGroup P;
  int dim = 0;
  std::vector<ff::MatrixFq> X;
};

// A as a P-module: x acts by conjugation a -> xhat a xhat^{-1}. Needs the
// group tag.
PModule conjugation_module(const SCAlgebra& A);

// A cocycle tau is stored by its stacked generator values
// (tau(x_1), ..., tau(x_r)) of length r * dim. Z^1 is cut out by
//   (I - X_j) v_i - (I - X_i) v_j = 0  (i < j)
//   N_i v_i = 0 with N_i = sum_{t < p^{a_i}} X_i^t
// for the presentation <x_i | x_i^{p^{a_i}}, [x_i, x_j]>. When |P| <= 81
// every returned basis vector is expanded over all of P and the cocycle
// identity tau(uv) = tau(u) + u.tau(v) is checked on all pairs.
ff::Subspace z1_abelian(const PModule& M);

// Coboundaries: the image of m -> ((I - X_1) m, ..., (I - X_r) m).
ff::Subspace b1_abelian(const PModule& M);

// tau(u) for the cocycle with stacked generator values v.
Vec cocycle_value(const PModule& M, const Vec& v, pgroup::PElem u);

// The matrix T_u with tau(u) = T_u v for stacked generator values v.
ff::MatrixFq cocycle_value_matrix(const PModule& M, pgroup::PElem u);

// ---------------------------------------------------------------------------
// E-fixed cohomology for A = k_alpha(P x| E).

struct EFixedCocycles {
  PModule M;
  ff::Subspace z1, b1;    // the full complex for P on A
  ff::Subspace z1_fixed;  // cocycles fixed by the E-action (f.tau)(u) = f(tau(f^{-1} u))
  ff::Subspace b1_fixed;  // boundaries of E-fixed elements of A
  std::vector<Vec> reps;  // E-stable cocycles whose classes span H^1(P; A)^E
};

EFixedCocycles e_fixed_cocycles(const SCAlgebra& A);

// The derivation d(uhat ehat) = tau(u) uhat ehat attached to an E-stable
// cocycle tau (stacked generator values). Verified exhaustively; a Leibniz
// failure (LeibnizFails) means tau was not E-stable.
ff::MatrixFq cocycle_to_derivation(const SCAlgebra& A, const PModule& M, const Vec& tau);

// ---------------------------------------------------------------------------
// HH1 as a Lie algebra.

struct HH1Result {
  ff::Subspace der;                // flattened derivation space
  ff::Subspace ider;               // flattened inner derivations
  std::vector<ff::MatrixFq> reps;  // derivations whose classes form a basis
  lie::LiePresentation hh1;        // brackets of the classes of reps

  int dim() const { return static_cast<int>(reps.size()); }
  std::optional<EFixedCocycles> complex;  // set by the cocycle path
};

// Via der_bruteforce; dim A <= 100.
HH1Result hh1_via_oracle(const SCAlgebra& A);

// Via H^1(P; A)^E; requires the group tag. der is reported as
// ider + span(reps), which the oracle equivalence tests pin against
// der_bruteforce.
HH1Result hh1_via_cocycles(const SCAlgebra& A);

// Coordinates of the class of D in the basis H.reps; D must lie in
// span(H.reps) + H.ider (NotInDerSpan otherwise).
Vec class_coordinates(const HH1Result& H, const ff::MatrixFq& D);

// The subspace of HH1 (in H.reps coordinates) of classes admitting a
// representative with image inside J(A)^m, by one joint feasibility system
// over class and inner coefficients.
ff::Subspace classes_with_rep_in_radical_power(const SCAlgebra& A, const HH1Result& H, int m);

// The subspace of HH1 spanned by classes of E-stable cocycles whose values
// lie in the P-part span of A: the lift of HH1(kP)^E. Needs the cocycle
// complex on H.
ff::Subspace p_part_valued_classes(const SCAlgebra& A, const HH1Result& H);

// ---------------------------------------------------------------------------
// E-stable derivations on kP.

// kP realized as the twisted group algebra of P x| 1 over k.
SCAlgebra p_group_algebra(const ff::Field& k, const pgroup::AbelianPGroup& P);

// Derivations on AP = kP commuting with the permutation action of every
// generator of E. AP must be the algebra of P x| 1 with P = E.P.
ff::Subspace estable_derivations(const SCAlgebra& AP, const pgroup::EGroup& E);

// Der(kP)^E with the bracket in a fixed basis: since kP is commutative this
// is the Lie algebra HH1(kP)^E.
struct EStableDerAlgebra {
  SCAlgebra AP;
  ff::Subspace ders;
  std::vector<ff::MatrixFq> reps;
  lie::LiePresentation lie;
};
EStableDerAlgebra estable_der_algebra(const ff::Field& k, const pgroup::AbelianPGroup& P,
                                      const pgroup::EGroup& E);

// The unique extension of an E-stable derivation f on kP to A = k_alpha(P x| E)
// with fhat(uhat ehat) = f(uhat) ehat; vanishes on k_alpha E. Rejects f that
// fails to commute with the E-action (NotEStable).
ff::MatrixFq extend_estable_derivation(const SCAlgebra& A, const ff::MatrixFq& f);

// ---------------------------------------------------------------------------
// Frattini pushforward kP -> k(P/Phi(P)).

struct FrattiniQuotient {
  SCAlgebra Abar;     // k(P/Phi(P))
  ff::MatrixFq proj;  // the algebra surjection uhat -> (u Phi(P))hat
};
FrattiniQuotient frattini_quotient(const SCAlgebra& AP);

// The induced derivation on k(P/Phi(P)); well defined because derivations
// kill the kernel filtration, which is verified on all of P.
ff::MatrixFq frattini_pushforward(const SCAlgebra& AP, const FrattiniQuotient& Q,
                                  const ff::MatrixFq& f);

// ---------------------------------------------------------------------------
// Induced maps on J/J^2 of kP.

struct SemisimpleQuotientReport {
  std::vector<ff::MatrixFq> images;  // induced r x r matrices on J/J^2
  int image_rank = 0;                // dimension of their span
  ff::Subspace commutant;            // End_{kE}(J/J^2) inside r x r matrices
  bool commutant_commutative = false;
};

// For derivations on AP = kP preserving J (DoesNotPreserveJ otherwise):
// their matrices on J/J^2 in the basis (x_i hat - 1), the rank of the
// induced linear map, and the commutant of the E-action on J/J^2.
SemisimpleQuotientReport semisimple_quotient_map(const SCAlgebra& AP, const pgroup::EGroup& E,
                                                 const std::vector<ff::MatrixFq>& ders);

// ---------------------------------------------------------------------------
// Derivations of tensor products. T must carry a tensor tag; the factors are
// taken from it.

// a (x) b -> f(a) (x) z b for a derivation f of the left factor and z central
// in the right factor.
ff::MatrixFq tensor_derivation_left(const SCAlgebra& T, const ff::MatrixFq& f, const Vec& z);
// a (x) b -> z a (x) g(b) for z central in the left factor and g a derivation
// of the right factor.
ff::MatrixFq tensor_derivation_right(const SCAlgebra& T, const Vec& z, const ff::MatrixFq& g);

}  // namespace tga::hh1
