#pragma once

// Finite abelian p-groups P = prod C_{p^{a_i}}, p'-groups E of automorphisms
// (or abstract groups acting on P), the semidirect product P x| E, and the
// induced E-module structure on P/Phi(P).

#include <cstdint>
#include <string>
#include <vector>

#include "tga/error.hpp"
#include "tga/ff.hpp"

namespace tga::pgroup {

// Elements are integer codes equal to the lexicographic index of the exponent
// vector (c_1, ..., c_r), first coordinate most significant.
using PElem = std::uint32_t;

class AbelianPGroup {
 public:
  AbelianPGroup() = default;
  AbelianPGroup(std::uint32_t p, std::vector<int> exponents);

  std::uint32_t p() const { return p_; }
  int rank() const { return static_cast<int>(exponents_.size()); }
  std::uint64_t order() const { return order_; }
  const std::vector<int>& exponents() const { return exponents_; }
  // p^{a_i}, the order of the i-th cyclic factor
  const std::vector<std::uint32_t>& moduli() const { return moduli_; }

  PElem encode(const std::vector<std::uint32_t>& coords) const;
  std::vector<std::uint32_t> decode(PElem u) const;

  PElem zero() const { return 0; }
  PElem add(PElem u, PElem v) const;
  PElem neg(PElem u) const;
  PElem smul(std::int64_t k, PElem u) const;
  PElem generator(int i) const;
  std::uint64_t order_of(PElem u) const;

  bool is_elementary() const;
  std::string describe(PElem u) const;

  bool operator==(const AbelianPGroup& o) const {
    return p_ == o.p_ && exponents_ == o.exponents_;
  }

 private:
  std::uint32_t p_ = 0;
  std::vector<int> exponents_;
  std::vector<std::uint32_t> moduli_;
  std::vector<std::uint64_t> strides_;
  std::uint64_t order_ = 0;
};

// An automorphism of P, stored by the images of the canonical generators.
struct PAut {
  std::vector<PElem> images;

  bool operator==(const PAut& o) const { return images == o.images; }
  bool operator<(const PAut& o) const { return images < o.images; }
};

PAut paut_identity(const AbelianPGroup& P);
// aut_make: validates that the images define an automorphism.
PAut aut_make(const AbelianPGroup& P, const std::vector<PElem>& images);
// Same, with each image given as a coordinate vector.
PAut aut_from_coords(const AbelianPGroup& P,
                     const std::vector<std::vector<std::uint32_t>>& image_coords);
PElem aut_apply(const AbelianPGroup& P, const PAut& f, PElem u);
PAut aut_compose(const AbelianPGroup& P, const PAut& f, const PAut& g);  // f after g
PAut aut_inverse(const AbelianPGroup& P, const PAut& f);
int aut_order(const AbelianPGroup& P, const PAut& f);

// A finite group acting on P by automorphisms, with |E| coprime to p.
// Multiplication is held as a full Cayley table; element 0 is the identity.
struct EGroup {
  AbelianPGroup P;
  int order = 0;
  std::vector<int> cayley;   // order x order, row-major: cayley[e*order + f] = e*f
  std::vector<int> inverse;  // per element
  std::vector<PAut> action;  // per element
  std::vector<int> generators;          // element indices
  std::vector<std::vector<int>> words;  // each element as a product of generators
  std::vector<int> kernel;              // C_E(P): elements acting trivially

  int mul(int e, int f) const { return cayley[static_cast<std::size_t>(e) * order + f]; }
  int inv(int e) const { return inverse[e]; }
  bool is_abelian() const;
  bool is_faithful() const { return kernel.size() == 1; }
  bool image_is_abelian() const;
  // Free action on P \ {0}: no nontrivial element fixes a nonzero point.
  bool acts_freely() const;
};

inline constexpr int kEGroupClosureCap = 10000;

// Closure of a set of automorphisms; ClosureExceedsBound above the cap.
EGroup egroup_close(const AbelianPGroup& P, const std::vector<PAut>& gens,
                    int cap = kEGroupClosureCap);
// Abstract group given by a Cayley table plus a (possibly non-faithful) action.
EGroup egroup_abstract(const AbelianPGroup& P, const std::vector<std::vector<int>>& cayley,
                       const std::vector<PAut>& action);
// Direct product acting componentwise on the direct product of the P's.
EGroup egroup_product(const AbelianPGroup& P12, const EGroup& E1, const EGroup& E2);

struct SemidirectProduct {
  AbelianPGroup P;
  EGroup E;
  std::uint64_t order = 0;

  SemidirectProduct() = default;
  SemidirectProduct(AbelianPGroup p, EGroup e);

  // Basis order: lexicographic in the P-part, then the E-index.
  std::uint64_t index(PElem u, int e) const { return static_cast<std::uint64_t>(u) * E.order + e; }
  PElem p_part(std::uint64_t g) const { return static_cast<PElem>(g / E.order); }
  int e_part(std::uint64_t g) const { return static_cast<int>(g % E.order); }

  std::uint64_t identity() const { return 0; }
  std::uint64_t mul(std::uint64_t g, std::uint64_t h) const;
  std::uint64_t invert(std::uint64_t g) const;
  std::string describe(std::uint64_t g) const;
};

// The r-dimensional F_p-module P/Phi(P) with the induced E-action.
struct EModule {
  ff::Field field;  // F_p
  int dim = 0;
  std::vector<int> generator_elems;        // indices into E
  std::vector<ff::MatrixFq> generator_mats;
  std::vector<std::vector<int>> words;     // product of generator positions per element

  ff::MatrixFq matrix_of(int e) const;
};

EModule frattini_module(const AbelianPGroup& P, const EGroup& E);

// Whether [P, E] = P, i.e. the E-fixed space of P/Phi(P) is zero.
bool hyperfocal_is_full(const AbelianPGroup& P, const EGroup& E);

}  // namespace tga::pgroup
