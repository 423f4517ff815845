#pragma once

// Finite dimensional associative algebras given by structure constants, with
// constructors for twisted group algebras of P x| E, tensor products, and a
// quantum complete intersection, plus radical filtrations, centers and
// quotients.

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tga/cocycle.hpp"
#include "tga/error.hpp"
#include "tga/ff.hpp"
#include "tga/pgroup.hpp"

namespace tga::algebra {

using Vec = std::vector<ff::Elem>;

struct SCAlgebra {
  ff::Field field;
  int dim = 0;
  std::vector<std::string> labels;
  Vec unit;
  // prod[i*dim + j] lists the nonzero coordinates of (basis i) * (basis j)
  std::vector<std::vector<std::pair<int, ff::Elem>>> prod;
  // basis indices that generate A as a unital algebra (used by fast paths)
  std::vector<int> gens;

  // provenance used to pick radical fast paths
  struct GroupTag {
    pgroup::SemidirectProduct G;
    cocycle::NormalizedCocycle2 alphaE;  // basis b is the group element b
  };
  struct QciTag {
    std::uint32_t p = 0;  // basis x^a y^b, index a*p + b
  };
  struct TensorTag {
    std::shared_ptr<const SCAlgebra> left, right;
  };
  std::optional<GroupTag> group;
  std::optional<QciTag> qci;
  std::optional<TensorTag> tensor;

  const std::vector<std::pair<int, ff::Elem>>& basis_prod(int i, int j) const {
    return prod[static_cast<std::size_t>(i) * dim + j];
  }

  Vec zero() const { return Vec(dim, 0); }
  Vec basis(int i) const;
  Vec mul(const Vec& a, const Vec& b) const;
  Vec commutator(const Vec& a, const Vec& b) const;
  ff::MatrixFq left_mult_matrix(const Vec& a) const;
  ff::MatrixFq right_mult_matrix(const Vec& a) const;
  std::string describe(const Vec& a) const;
};

// Validates the unit and, for dim <= 40, full associativity.
SCAlgebra from_structure_constants(const ff::Field& k, std::vector<std::string> labels, Vec unit,
                                   std::vector<std::vector<std::pair<int, ff::Elem>>> prod);

// k_alpha(P x| E) with basis the group elements, ghat hhat = alpha(g,h) (gh)hat.
SCAlgebra twisted_group_algebra(const ff::Field& k, const pgroup::SemidirectProduct& G,
                                const cocycle::NormalizedCocycle2& alphaE);

// k<x,y>/(x^p, y^p, yx + xy) in characteristic p > 2, basis x^a y^b.
SCAlgebra qci_algebra(const ff::Field& k);

SCAlgebra tensor_algebra(const SCAlgebra& A, const SCAlgebra& B);

// J(A)^m as a subspace of A; m = 0 gives all of A. Knows the filtration for
// the three tagged constructions; untagged algebras are rejected.
ff::Subspace radical_power(const SCAlgebra& A, int m);

int loewy_length(const SCAlgebra& A);

// Z(A), computed from the commutation constraints against A.gens and verified
// against the full basis.
ff::Subspace center(const SCAlgebra& A);

struct QuotientAlgebra {
  SCAlgebra Abar;
  ff::MatrixFq proj;     // dim(Abar) x dim(A), the quotient map on coordinates
  ff::MatrixFq section;  // dim(A) x dim(Abar), a linear splitting of proj
};

// A / ideal for a two-sided ideal given as a subspace (checked).
QuotientAlgebra quotient_algebra(const SCAlgebra& A, const ff::Subspace& ideal);

}  // namespace tga::algebra
