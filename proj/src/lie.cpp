#include "tga/lie.hpp"

#include <algorithm>
#include <random>

namespace tga::lie {

using ff::Elem;
using ff::MatrixFq;
using ff::Subspace;
using Vec = std::vector<Elem>;

Vec LiePresentation::bracket_of(const Vec& a, const Vec& b) const {
  Vec out(dim, 0);
  for (int i = 0; i < dim; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < dim; ++j) {
      if (b[j] == 0) continue;
      Elem c = field.mul(a[i], b[j]);
      for (const auto& [t, sc] : basis_bracket(i, j)) out[t] = field.add(out[t], field.mul(c, sc));
    }
  }
  return out;
}

MatrixFq LiePresentation::ad(int i) const {
  MatrixFq m(field, dim, dim);
  for (int j = 0; j < dim; ++j)
    for (const auto& [t, c] : basis_bracket(i, j)) m.at(t, j) = field.add(m.at(t, j), c);
  return m;
}

LiePresentation lie_from_brackets(const ff::Field& k, std::vector<std::string> labels,
                                  std::vector<std::vector<std::pair<int, Elem>>> bracket) {
  LiePresentation L;
  L.field = k;
  L.dim = static_cast<int>(labels.size());
  L.labels = std::move(labels);
  L.bracket = std::move(bracket);
  check(L.bracket.size() == static_cast<std::size_t>(L.dim) * L.dim, "DimensionMismatch",
        "bracket table must be dim x dim");
  for (const auto& cell : L.bracket)
    for (const auto& [t, c] : cell) {
      check(t >= 0 && t < L.dim, "DimensionMismatch", "bracket index out of range");
      check(c < k.order(), "ValueOutOfRange", "bracket coefficient out of range");
    }

  auto dense = [&](int i, int j) {
    Vec v(L.dim, 0);
    for (const auto& [t, c] : L.basis_bracket(i, j)) v[t] = k.add(v[t], c);
    return v;
  };
  for (int i = 0; i < L.dim; ++i) {
    check(dense(i, i) == Vec(L.dim, 0), "NotAlternating",
          "[e_" + std::to_string(i) + ", e_" + std::to_string(i) + "] is not zero");
    for (int j = i + 1; j < L.dim; ++j) {
      Vec ij = dense(i, j), ji = dense(j, i);
      for (int t = 0; t < L.dim; ++t)
        check(ij[t] == k.neg(ji[t]), "NotAlternating",
              "[e_" + std::to_string(i) + ", e_" + std::to_string(j) + "] is not antisymmetric");
    }
  }
  for (int i = 0; i < L.dim; ++i)
    for (int j = i + 1; j < L.dim; ++j)
      for (int l = j + 1; l < L.dim; ++l) {
        Vec ei(L.dim, 0), ej(L.dim, 0), el(L.dim, 0);
        ei[i] = k.one();
        ej[j] = k.one();
        el[l] = k.one();
        Vec j1 = L.bracket_of(L.bracket_of(ei, ej), el);
        Vec j2 = L.bracket_of(L.bracket_of(ej, el), ei);
        Vec j3 = L.bracket_of(L.bracket_of(el, ei), ej);
        for (int t = 0; t < L.dim; ++t)
          check(k.add(k.add(j1[t], j2[t]), j3[t]) == 0, "JacobiFails",
                "Jacobi identity fails at basis triple (" + std::to_string(i) + "," +
                    std::to_string(j) + "," + std::to_string(l) + ")");
      }
  return L;
}

Subspace bracket_span(const LiePresentation& L, const Subspace& U, const Subspace& W) {
  std::vector<Vec> rows;
  for (int a = 0; a < U.dim(); ++a)
    for (int b = 0; b < W.dim(); ++b)
      rows.push_back(L.bracket_of(U.basis().row(a), W.basis().row(b)));
  MatrixFq m(L.field, static_cast<int>(rows.size()), L.dim);
  for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(static_cast<int>(r), rows[r]);
  return Subspace::span(m);
}

std::vector<int> derived_series_dims(const LiePresentation& L) {
  std::vector<int> dims;
  Subspace cur = Subspace::full(L.field, L.dim);
  dims.push_back(cur.dim());
  while (true) {
    Subspace next = bracket_span(L, cur, cur);
    if (next.dim() == cur.dim()) break;
    cur = next;
    dims.push_back(cur.dim());
  }
  return dims;
}

std::vector<int> lower_central_dims(const LiePresentation& L) {
  std::vector<int> dims;
  Subspace full = Subspace::full(L.field, L.dim);
  Subspace cur = full;
  dims.push_back(cur.dim());
  while (true) {
    Subspace next = bracket_span(L, full, cur);
    if (next.dim() == cur.dim()) break;
    cur = next;
    dims.push_back(cur.dim());
  }
  return dims;
}

bool is_solvable(const LiePresentation& L) { return derived_series_dims(L).back() == 0; }

bool is_nilpotent(const LiePresentation& L) { return lower_central_dims(L).back() == 0; }

Subspace spin_ideal(const LiePresentation& L, const std::vector<Vec>& seeds) {
  MatrixFq m(L.field, static_cast<int>(seeds.size()), L.dim);
  for (std::size_t r = 0; r < seeds.size(); ++r) m.set_row(static_cast<int>(r), seeds[r]);
  Subspace cur = Subspace::span(m);
  while (true) {
    Subspace next = cur.sum(bracket_span(L, Subspace::full(L.field, L.dim), cur));
    if (next.dim() == cur.dim()) return cur;
    cur = next;
  }
}

bool is_ideal(const LiePresentation& L, const Subspace& U) {
  return U.contains(bracket_span(L, Subspace::full(L.field, L.dim), U));
}

namespace {

// spin under an explicit list of matrices (used for the dual module too)
Subspace spin_under(const ff::Field& k, int n, const std::vector<MatrixFq>& gens, const Vec& v) {
  MatrixFq m(k, 1, n);
  m.set_row(0, v);
  Subspace cur = Subspace::span(m);
  while (true) {
    std::vector<Vec> rows;
    for (int a = 0; a < cur.dim(); ++a)
      for (const auto& g : gens) rows.push_back(ff::mat_apply(g, cur.basis().row(a)));
    MatrixFq mm(k, static_cast<int>(rows.size()), n);
    for (std::size_t r = 0; r < rows.size(); ++r) mm.set_row(static_cast<int>(r), rows[r]);
    Subspace next = cur.sum(Subspace::span(mm));
    if (next.dim() == cur.dim()) return cur;
    cur = next;
  }
}

SimplicityResult not_simple(Subspace witness, int trials, std::string note,
                            const LiePresentation& L) {
  if (witness.dim() > 0) {
    check(witness.dim() < L.dim && is_ideal(L, witness), "InternalCheckFailed",
          "simplicity witness is not a proper nonzero ideal");
  }
  SimplicityResult r;
  r.status = SimplicityResult::Status::NotSimple;
  r.witness = std::move(witness);
  r.trials_used = trials;
  r.note = std::move(note);
  return r;
}

// all projective representatives of a subspace, when there are few enough
std::vector<Vec> projective_points(const Subspace& U, int cap) {
  const ff::Field& k = U.field();
  std::int64_t count = 1;
  for (int i = 0; i < U.dim(); ++i) {
    count *= k.order();
    if (count > static_cast<std::int64_t>(cap) * (static_cast<std::int64_t>(k.order()) - 1) + 1)
      return {};
  }
  std::vector<Vec> pts;
  std::vector<std::uint64_t> idx(U.dim(), 0);
  // enumerate nonzero coefficient tuples whose first nonzero entry is 1
  std::uint64_t total = 1;
  for (int i = 0; i < U.dim(); ++i) total *= k.order();
  for (std::uint64_t code = 1; code < total; ++code) {
    std::uint64_t c = code;
    std::vector<Elem> coef(U.dim());
    for (int i = 0; i < U.dim(); ++i) {
      coef[i] = static_cast<Elem>(c % k.order());
      c /= k.order();
    }
    int first = 0;
    while (coef[first] == 0) ++first;
    if (coef[first] != k.one()) continue;
    Vec v(U.ambient(), 0);
    for (int i = 0; i < U.dim(); ++i) {
      if (coef[i] == 0) continue;
      for (int t = 0; t < U.ambient(); ++t)
        v[t] = k.add(v[t], k.mul(coef[i], U.basis().at(i, t)));
    }
    pts.push_back(std::move(v));
  }
  return pts;
}

}  // namespace

SimplicityResult is_simple(const LiePresentation& L, std::uint64_t seed, int max_trials) {
  const ff::Field& k = L.field;
  const int n = L.dim;
  if (n == 0)
    return {SimplicityResult::Status::NotSimple, Subspace::zero(k, 0), 0, "zero algebra"};

  Subspace derived = bracket_span(L, Subspace::full(k, n), Subspace::full(k, n));
  if (derived.dim() == 0) {
    // abelian: any line is an ideal; dim 1 has no proper nonzero subspace
    if (n == 1)
      return {SimplicityResult::Status::NotSimple, Subspace::zero(k, 1), 0, "one-dimensional"};
    MatrixFq line(k, 1, n);
    line.at(0, 0) = k.one();
    return not_simple(Subspace::span(line), 0, "abelian", L);
  }
  if (derived.dim() < n) return not_simple(derived, 0, "derived subalgebra is proper", L);

  // center = kernel of the stacked adjoint matrices
  std::vector<MatrixFq> ads;
  for (int i = 0; i < n; ++i) ads.push_back(L.ad(i));
  {
    MatrixFq stacked(k, n * n, n);
    for (int i = 0; i < n; ++i)
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) stacked.at(i * n + r, c) = ads[i].at(r, c);
    Subspace z = Subspace::span(ff::mat_kernel(stacked));
    if (z.dim() > 0 && z.dim() < n) return not_simple(z, 0, "nonzero center", L);
    if (z.dim() == n) return not_simple(Subspace::zero(k, n), 0, "abelian", L);
  }

  std::vector<MatrixFq> adts;
  for (const auto& a : ads) adts.push_back(ff::mat_transpose(a));

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Elem> coef(0, static_cast<Elem>(k.order() - 1));
  std::uniform_int_distribution<int> factors(1, 3);
  auto random_env = [&]() {
    MatrixFq theta = ff::mat_identity(k, n);
    int nf = factors(rng);
    for (int f = 0; f < nf; ++f) {
      MatrixFq lin(k, n, n);
      for (int i = 0; i < n; ++i) {
        Elem c = coef(rng);
        if (c == 0) continue;
        lin = ff::mat_add(lin, ff::mat_scale(ads[i], c));
      }
      Elem shift = coef(rng);
      if (shift != 0) lin = ff::mat_add(lin, ff::mat_scale(ff::mat_identity(k, n), shift));
      theta = ff::mat_mul(theta, lin);
    }
    return theta;
  };

  int trials = 0;
  for (; trials < max_trials; ++trials) {
    MatrixFq theta = random_env();
    Subspace null = Subspace::span(ff::mat_kernel(theta));
    if (null.dim() == 0 || null.dim() == n) continue;
    std::vector<Vec> pts = projective_points(null, 256);
    if (pts.empty()) continue;  // nullity too large, try another element

    for (const auto& v : pts) {
      Subspace spun = spin_under(k, n, ads, v);
      if (spun.dim() < n)
        return not_simple(spun, trials + 1, "kernel vector spans a proper ideal", L);
    }

    Subspace dual_null = Subspace::span(ff::mat_kernel(ff::mat_transpose(theta)));
    check(dual_null.dim() > 0, "InternalCheckFailed", "transpose of a singular matrix is singular");
    Subspace dual_spun = spin_under(k, n, adts, dual_null.basis().row(0));
    if (dual_spun.dim() == n) {
      SimplicityResult r;
      r.status = SimplicityResult::Status::Simple;
      r.trials_used = trials + 1;
      check(derived.dim() == n, "InternalCheckFailed", "simple certificate without [L,L] = L");
      return r;
    }
    // the annihilator of the dual spin is a proper nonzero submodule
    Subspace ann = Subspace::span(ff::mat_kernel(dual_spun.basis()));
    return not_simple(ann, trials + 1, "dual spin is proper", L);
  }

  SimplicityResult r;
  r.status = SimplicityResult::Status::Unknown;
  r.trials_used = trials;
  r.note = "no conclusive singular element found";
  return r;
}

Subspace matrix_commutant(const ff::Field& k, int r, const std::vector<MatrixFq>& mats) {
  ff::RowBasis rows(k, r * r);
  for (const auto& A : mats) {
    check(A.rows == r && A.cols == r, "DimensionMismatch", "commutant needs square matrices");
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        // coefficient of X[i][l] is A[l][j]; of X[l][j] is -A[i][l]
        std::vector<Elem> row(static_cast<std::size_t>(r) * r, 0);
        for (int l = 0; l < r; ++l) {
          row[static_cast<std::size_t>(i) * r + l] = k.add(row[static_cast<std::size_t>(i) * r + l], A.at(l, j));
          row[static_cast<std::size_t>(l) * r + j] =
              k.sub(row[static_cast<std::size_t>(l) * r + j], A.at(i, l));
        }
        rows.add_dense(row);
      }
  }
  return rows.kernel();
}

bool is_multiplicity_free(const pgroup::EModule& M) {
  Subspace c = matrix_commutant(M.field, M.dim, M.generator_mats);
  // commutative iff all basis pairs commute
  const int r = M.dim;
  auto unflatten = [&](const Vec& v) {
    MatrixFq m(M.field, r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) m.at(i, j) = v[static_cast<std::size_t>(i) * r + j];
    return m;
  };
  for (int a = 0; a < c.dim(); ++a)
    for (int b = a + 1; b < c.dim(); ++b) {
      MatrixFq X = unflatten(c.basis().row(a));
      MatrixFq Y = unflatten(c.basis().row(b));
      if (!(ff::mat_mul(X, Y) == ff::mat_mul(Y, X))) return false;
    }
  return true;
}

}  // namespace tga::lie
