#pragma once

// Lie algebras over finite fields given by structure constants: derived and
// lower central series, solvability, nilpotency, and a randomized but
// certificate-checked simplicity test on the adjoint representation.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tga/error.hpp"
#include "tga/ff.hpp"
#include "tga/pgroup.hpp"

namespace tga::lie {

struct LiePresentation {
  ff::Field field;
  int dim = 0;
  std::vector<std::string> labels;
  // bracket[i*dim + j] lists the nonzero coordinates of [basis i, basis j]
  std::vector<std::vector<std::pair<int, ff::Elem>>> bracket;

  const std::vector<std::pair<int, ff::Elem>>& basis_bracket(int i, int j) const {
    return bracket[static_cast<std::size_t>(i) * dim + j];
  }
  std::vector<ff::Elem> bracket_of(const std::vector<ff::Elem>& a,
                                   const std::vector<ff::Elem>& b) const;
  ff::MatrixFq ad(int i) const;  // column j = [e_i, e_j]
};

// Validates alternating brackets and the Jacobi identity (witnessed errors).
LiePresentation lie_from_brackets(const ff::Field& k, std::vector<std::string> labels,
                                  std::vector<std::vector<std::pair<int, ff::Elem>>> bracket);

// span of [U, W]
ff::Subspace bracket_span(const LiePresentation& L, const ff::Subspace& U, const ff::Subspace& W);

// dims of L = L^(0) >= [L^(0),L^(0)] >= ... until the sequence stabilizes
std::vector<int> derived_series_dims(const LiePresentation& L);
// dims of L >= [L,L] >= [L,[L,L]] >= ...
std::vector<int> lower_central_dims(const LiePresentation& L);

bool is_solvable(const LiePresentation& L);
bool is_nilpotent(const LiePresentation& L);

// smallest ideal of L containing the given seed vectors
ff::Subspace spin_ideal(const LiePresentation& L, const std::vector<std::vector<ff::Elem>>& seeds);

bool is_ideal(const LiePresentation& L, const ff::Subspace& U);

struct SimplicityResult {
  enum class Status { Simple, NotSimple, Unknown };
  Status status = Status::Unknown;
  // for NotSimple: a proper nonzero ideal, when one exists (a zero subspace
  // stands in for the degenerate dim <= 1 cases)
  ff::Subspace witness;
  int trials_used = 0;
  std::string note;
};

// Randomized Norton test on the adjoint module. Simple is only reported with
// a full irreducibility certificate; NotSimple witnesses are re-verified.
SimplicityResult is_simple(const LiePresentation& L, std::uint64_t seed, int max_trials = 64);

// {X : XA = AX for all A}, inside k^{r^2} (row-major X). The ambient size r
// must be given explicitly since the list may be empty.
ff::Subspace matrix_commutant(const ff::Field& k, int r, const std::vector<ff::MatrixFq>& mats);

// Whether the E-module splits without repeated irreducible summands,
// equivalently whether its endomorphism algebra is commutative.
bool is_multiplicity_free(const pgroup::EModule& M);

}  // namespace tga::lie
