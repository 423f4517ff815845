#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tga/lie.hpp"

using namespace tga;
using namespace tga::lie;
using Vec = std::vector<ff::Elem>;

namespace {

using Cells = std::vector<std::vector<std::pair<int, ff::Elem>>>;

Cells empty_cells(int dim) { return Cells(static_cast<std::size_t>(dim) * dim); }

void set_bracket(Cells& c, int dim, const ff::Field& k, int i, int j, int t, std::int64_t coef) {
  c[static_cast<std::size_t>(i) * dim + j].emplace_back(t, k.from_int(coef));
  c[static_cast<std::size_t>(j) * dim + i].emplace_back(t, k.from_int(-coef));
}

// basis e_{-1}, ..., e_{p-2} with [e_i, e_j] = (j - i) e_{i+j}
LiePresentation witt(std::uint32_t p) {
  ff::Field k = ff::Field::prime(p);
  const int n = static_cast<int>(p);
  Cells c = empty_cells(n);
  std::vector<std::string> labels;
  for (int b = 0; b < n; ++b) labels.push_back("e_" + std::to_string(b - 1));
  for (int i = -1; i < n - 1; ++i)
    for (int j = i + 1; j < n - 1; ++j)
      if (i + j >= -1 && i + j <= n - 2) set_bracket(c, n, k, i + 1, j + 1, i + j + 1, j - i);
  return lie_from_brackets(k, labels, c);
}

LiePresentation sl2(const ff::Field& k) {
  Cells c = empty_cells(3);
  set_bracket(c, 3, k, 0, 2, 1, 1);   // [e,f] = h
  set_bracket(c, 3, k, 1, 0, 0, 2);   // [h,e] = 2e
  set_bracket(c, 3, k, 1, 2, 2, -2);  // [h,f] = -2f
  return lie_from_brackets(k, {"e", "h", "f"}, c);
}

}  // namespace

TEST_CASE("presentation validation") {
  ff::Field k3 = ff::Field::prime(3);

  Cells bad = empty_cells(2);
  bad[0 * 2 + 1] = {{0, 1}};
  bad[1 * 2 + 0] = {{0, 1}};  // should be -1
  CHECK_THROWS_WITH_AS(lie_from_brackets(k3, {"x", "y"}, bad),
                       doctest::Contains("antisymmetric"), Error);

  Cells diag = empty_cells(2);
  diag[0 * 2 + 0] = {{1, 1}};
  CHECK_THROWS_WITH_AS(lie_from_brackets(k3, {"x", "y"}, diag), doctest::Contains("not zero"),
                       Error);

  // [x,y] = x, [y,z] = y, [x,z] = 0 fails Jacobi on (x,y,z)
  Cells nj = empty_cells(3);
  set_bracket(nj, 3, k3, 0, 1, 0, 1);
  set_bracket(nj, 3, k3, 1, 2, 1, 1);
  CHECK_THROWS_WITH_AS(lie_from_brackets(k3, {"x", "y", "z"}, nj),
                       doctest::Contains("Jacobi identity fails at basis triple (0,1,2)"), Error);

  CHECK_THROWS_AS(lie_from_brackets(k3, {"x"}, empty_cells(2)), Error);

  // the Witt construction passes validation for several p
  CHECK(witt(3).dim == 3);
  CHECK(witt(5).dim == 5);
  CHECK(witt(7).dim == 7);
}

TEST_CASE("series, solvability, nilpotency") {
  ff::Field k3 = ff::Field::prime(3);

  // [x,y] = y: solvable, not nilpotent
  Cells b2 = empty_cells(2);
  set_bracket(b2, 2, k3, 0, 1, 1, 1);
  LiePresentation borel = lie_from_brackets(k3, {"x", "y"}, b2);
  CHECK(derived_series_dims(borel) == std::vector<int>{2, 1, 0});
  CHECK(lower_central_dims(borel) == std::vector<int>{2, 1});
  CHECK(is_solvable(borel));
  CHECK_FALSE(is_nilpotent(borel));

  // Heisenberg [x,y] = z: nilpotent
  Cells h3 = empty_cells(3);
  set_bracket(h3, 3, k3, 0, 1, 2, 1);
  LiePresentation heis = lie_from_brackets(k3, {"x", "y", "z"}, h3);
  CHECK(derived_series_dims(heis) == std::vector<int>{3, 1, 0});
  CHECK(lower_central_dims(heis) == std::vector<int>{3, 1, 0});
  CHECK(is_nilpotent(heis));
  CHECK(is_solvable(heis));

  LiePresentation abelian = lie_from_brackets(k3, {"a", "b", "c"}, empty_cells(3));
  CHECK(is_nilpotent(abelian));
  CHECK(derived_series_dims(abelian) == std::vector<int>{3, 0});

  LiePresentation zero = lie_from_brackets(k3, {}, empty_cells(0));
  CHECK(is_solvable(zero));
  CHECK(is_nilpotent(zero));

  CHECK_FALSE(is_solvable(witt(5)));
  CHECK_FALSE(is_nilpotent(witt(5)));
  CHECK_FALSE(is_solvable(sl2(k3)));
}

TEST_CASE("spin ideals") {
  ff::Field k3 = ff::Field::prime(3);
  LiePresentation L = sl2(k3);
  ff::Subspace full = spin_ideal(L, {{1, 0, 0}});
  CHECK(full.dim() == 3);

  Cells b2 = empty_cells(2);
  set_bracket(b2, 2, k3, 0, 1, 1, 1);
  LiePresentation borel = lie_from_brackets(k3, {"x", "y"}, b2);
  ff::Subspace line = spin_ideal(borel, {{0, 1}});
  CHECK(line.dim() == 1);
  CHECK(is_ideal(borel, line));
  CHECK_FALSE(is_ideal(borel, spin_ideal(borel, {}).sum(
                                  ff::Subspace::span([&] {
                                    ff::MatrixFq m(k3, 1, 2);
                                    m.at(0, 0) = 1;
                                    return m;
                                  }()))));
}

TEST_CASE("simplicity detection") {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    SimplicityResult r = is_simple(witt(p), 12345);
    CHECK(r.status == SimplicityResult::Status::Simple);
    CHECK(r.trials_used >= 1);
    // deterministic for a fixed seed
    SimplicityResult r2 = is_simple(witt(p), 12345);
    CHECK(r2.trials_used == r.trials_used);
  }

  CHECK(is_simple(sl2(ff::Field::prime(3)), 7).status == SimplicityResult::Status::Simple);
  CHECK(is_simple(sl2(ff::Field::prime(5)), 7).status == SimplicityResult::Status::Simple);

  // char 2: h is central in sl2
  SimplicityResult r2 = is_simple(sl2(ff::Field::prime(2)), 7);
  CHECK(r2.status == SimplicityResult::Status::NotSimple);
  CHECK(r2.witness.dim() == 1);
  CHECK(r2.trials_used == 0);

  ff::Field k3 = ff::Field::prime(3);
  Cells h3 = empty_cells(3);
  set_bracket(h3, 3, k3, 0, 1, 2, 1);
  SimplicityResult rh = is_simple(lie_from_brackets(k3, {"x", "y", "z"}, h3), 7);
  CHECK(rh.status == SimplicityResult::Status::NotSimple);
  CHECK(rh.witness.dim() == 1);  // the derived subalgebra

  SimplicityResult ra = is_simple(lie_from_brackets(k3, {"a", "b"}, empty_cells(2)), 7);
  CHECK(ra.status == SimplicityResult::Status::NotSimple);
  CHECK(ra.note == "abelian");
  CHECK(ra.witness.dim() == 1);

  SimplicityResult r1 = is_simple(lie_from_brackets(k3, {"a"}, empty_cells(1)), 7);
  CHECK(r1.status == SimplicityResult::Status::NotSimple);
  CHECK(r1.witness.dim() == 0);  // no proper nonzero subspace exists

  CHECK(is_simple(lie_from_brackets(k3, {}, empty_cells(0)), 7).status ==
        SimplicityResult::Status::NotSimple);
}

TEST_CASE("matrix commutants and multiplicity freeness") {
  ff::Field k3 = ff::Field::prime(3);
  ff::MatrixFq singer(k3, 2, 2);
  singer.at(0, 1) = 2;
  singer.at(1, 0) = 1;
  CHECK(matrix_commutant(k3, 2, {singer}).dim() == 2);  // F_9 inside M_2(F_3)
  CHECK(matrix_commutant(k3, 2, {}).dim() == 4);
  CHECK(matrix_commutant(k3, 2, {ff::mat_identity(k3, 2)}).dim() == 4);

  using pgroup::AbelianPGroup;
  AbelianPGroup P(3, {1, 1});
  auto module_for = [&](const pgroup::PAut& a) {
    pgroup::EGroup E = pgroup::egroup_close(P, {a});
    return pgroup::frattini_module(P, E);
  };

  CHECK(is_multiplicity_free(module_for(pgroup::aut_from_coords(P, {{{0, 1}, {2, 0}}}))));
  CHECK_FALSE(is_multiplicity_free(module_for(pgroup::aut_from_coords(P, {{{2, 0}, {0, 2}}}))));
  CHECK(is_multiplicity_free(module_for(pgroup::aut_from_coords(P, {{{2, 0}, {0, 1}}}))));

  pgroup::EGroup triv = pgroup::egroup_close(P, {});
  CHECK_FALSE(is_multiplicity_free(pgroup::frattini_module(P, triv)));
  AbelianPGroup C3(3, {1});
  CHECK(is_multiplicity_free(pgroup::frattini_module(C3, pgroup::egroup_close(C3, {}))));
}
