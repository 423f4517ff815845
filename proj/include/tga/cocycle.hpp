#pragma once

// Normalized 2-cocycles on a finite group E with values in k^x, their
// coboundary test, and inflation along P x| E ->> E.

#include <cstdint>
#include <optional>
#include <vector>

#include "tga/error.hpp"
#include "tga/ff.hpp"
#include "tga/pgroup.hpp"

namespace tga::cocycle {

// alpha: E x E -> k^x with alpha(1,e) = alpha(e,1) = 1 and
// alpha(e,f) alpha(ef,g) = alpha(f,g) alpha(e,fg).
// Element 0 of E is the identity; the Cayley table is kept for evaluation.
struct NormalizedCocycle2 {
  ff::Field field;
  int order = 0;
  std::vector<int> cayley;
  std::vector<ff::Elem> table;

  int mul(int e, int f) const { return cayley[static_cast<std::size_t>(e) * order + f]; }
  ff::Elem at(int e, int f) const { return table[static_cast<std::size_t>(e) * order + f]; }
  bool is_trivial() const;
};

NormalizedCocycle2 cocycle_trivial(const ff::Field& k, const pgroup::EGroup& E);

// Validates normalization and the cocycle identity; failures name a witness.
NormalizedCocycle2 cocycle_from_table(const ff::Field& k, const pgroup::EGroup& E,
                                      const std::vector<std::vector<ff::Elem>>& values);

// alpha(e,f) = zeta^{<c(e), B c(f)>} for an abelian E, where c(e) are the BFS
// exponent coordinates of e over E.generators and zeta is the smallest-code
// element of exact order root_order. The resulting table is revalidated, so an
// inconsistent pairing cannot slip through.
NormalizedCocycle2 cocycle_bicharacter(const ff::Field& k, const pgroup::EGroup& E,
                                       const std::vector<std::vector<std::int64_t>>& pairing,
                                       int root_order);

// If alpha = d(mu) for some mu: E -> k^x with mu(1) = 1, returns mu
// (alpha(e,f) = mu(e) mu(f) mu(ef)^{-1}); otherwise nullopt. Complete search:
// mu is determined by its generator values, which are enumerated.
std::optional<std::vector<ff::Elem>> coboundary_witness(const NormalizedCocycle2& a,
                                                        const pgroup::EGroup& E);

// Inflation along G = P x| E ->> E: alpha(g,h) reads the E-parts only.
ff::Elem inflated_value(const pgroup::SemidirectProduct& G, const NormalizedCocycle2& a,
                        std::uint64_t g, std::uint64_t h);

std::uint64_t conjugate(const pgroup::SemidirectProduct& G, std::uint64_t g, std::uint64_t h);

// Scalar lambda(g,h) with ghat hhat ghat^{-1} = lambda (g h g^{-1})hat in the
// twisted group algebra.
ff::Elem lambda_scalar(const pgroup::SemidirectProduct& G, const NormalizedCocycle2& a,
                       std::uint64_t g, std::uint64_t h);

}  // namespace tga::cocycle
