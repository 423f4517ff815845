#include "tga/hh1.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <utility>

#include "tga/error.hpp"

namespace tga::hh1 {

namespace {

using ff::Elem;
using ff::Field;
using ff::MatrixFq;
using ff::RowBasis;
using ff::Subspace;

constexpr int kOracleDimCap = 100;
constexpr std::uint64_t kFullExpansionCap = 81;

MatrixFq rows_to_matrix(const Field& k, int width, const std::vector<Vec>& rows) {
  MatrixFq m(k, static_cast<int>(rows.size()), width);
  for (int i = 0; i < m.rows; ++i) m.set_row(i, rows[i]);
  return m;
}

// v -= c * w
void axpy_sub(const Field& k, Vec& v, const Vec& w, Elem c) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (w[i] != 0) v[i] = k.sub(v[i], k.mul(c, w[i]));
}

Vec vec_sub(const Field& k, const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = k.sub(a[i], b[i]);
  return r;
}

void vec_add_inplace(const Field& k, Vec& a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = k.add(a[i], b[i]);
}

// The inverse of a basis unit ghat, a scalar multiple of (g^{-1})hat.
Vec basis_inverse(const SCAlgebra& A, int g) {
  const auto& G = A.group->G;
  const int ginv = static_cast<int>(G.invert(static_cast<std::uint64_t>(g)));
  const auto& cell = A.basis_prod(g, ginv);
  check(cell.size() == 1 && cell[0].first == 0, "InternalCheckFailed",
        "ghat (g^{-1})hat is not a multiple of the unit");
  Vec v = A.zero();
  v[ginv] = A.field.inv(cell[0].second);
  return v;
}

// Conjugation a -> ghat a ghat^{-1} in basis coordinates.
MatrixFq conj_matrix(const SCAlgebra& A, int g) {
  const Vec gh = A.basis(g);
  const Vec gi = basis_inverse(A, g);
  MatrixFq C(A.field, A.dim, A.dim);
  for (int j = 0; j < A.dim; ++j) {
    Vec w = A.mul(A.mul(gh, A.basis(j)), gi);
    for (int t = 0; t < A.dim; ++t) C.at(t, j) = w[t];
  }
  return C;
}

// Echelonized rows with coefficient tracking: expresses vectors as explicit
// combinations of the input rows.
class CoordSolver {
 public:
  CoordSolver(const Field& k, int width, const std::vector<Vec>& inputs)
      : k_(k), width_(width), n_inputs_(static_cast<int>(inputs.size())), row_of_col_(width, -1) {
    for (int l = 0; l < n_inputs_; ++l) {
      check(static_cast<int>(inputs[l].size()) == width_, "DimensionMismatch",
            "solver row width mismatch");
      Vec v = inputs[l];
      Vec tr(n_inputs_, 0);
      tr[l] = k_.one();
      reduce(v, tr);
      int lead = -1;
      for (int c = 0; c < width_; ++c)
        if (v[c] != 0) {
          lead = c;
          break;
        }
      if (lead < 0) continue;  // dependent input row
      const Elem s = k_.inv(v[lead]);
      for (auto& x : v) x = k_.mul(x, s);
      for (auto& x : tr) x = k_.mul(x, s);
      row_of_col_[lead] = static_cast<int>(rows_.size());
      rows_.push_back(std::move(v));
      tracks_.push_back(std::move(tr));
    }
  }

  int rank() const { return static_cast<int>(rows_.size()); }

  // Coefficients x with b = sum_l x[l] * inputs[l], if b lies in the span.
  std::optional<Vec> express(const Vec& b) const {
    Vec res = b;
    Vec coeff(n_inputs_, 0);
    for (int c = 0; c < width_; ++c) {
      if (res[c] == 0) continue;
      const int i = row_of_col_[c];
      if (i < 0) return std::nullopt;
      const Elem f = res[c];
      axpy_sub(k_, res, rows_[i], f);
      for (int l = 0; l < n_inputs_; ++l)
        if (tracks_[i][l] != 0) coeff[l] = k_.add(coeff[l], k_.mul(f, tracks_[i][l]));
    }
    return coeff;
  }

 private:
  void reduce(Vec& v, Vec& tr) const {
    for (int c = 0; c < width_; ++c) {
      if (v[c] == 0) continue;
      const int i = row_of_col_[c];
      if (i < 0) continue;
      const Elem f = v[c];
      axpy_sub(k_, v, rows_[i], f);
      axpy_sub(k_, tr, tracks_[i], f);
    }
  }

  Field k_;
  int width_ = 0;
  int n_inputs_ = 0;
  std::vector<int> row_of_col_;
  std::vector<Vec> rows_;
  std::vector<Vec> tracks_;
};

// Matrix R with kernel exactly U: coordinates of the residual against the
// RREF basis of U, read off at the non-pivot columns.
MatrixFq quotient_projection(const Subspace& U) {
  const Field& k = U.field();
  const MatrixFq& B = U.basis();
  const int n = U.ambient();
  std::vector<int> pivot(B.rows, -1);
  std::vector<bool> is_pivot(n, false);
  for (int i = 0; i < B.rows; ++i)
    for (int c = 0; c < n; ++c)
      if (B.at(i, c) != 0) {
        pivot[i] = c;
        is_pivot[c] = true;
        break;
      }
  MatrixFq R(k, n - B.rows, n);
  int row = 0;
  for (int c = 0; c < n; ++c) {
    if (is_pivot[c]) continue;
    R.at(row, c) = k.one();
    for (int i = 0; i < B.rows; ++i) R.at(row, pivot[i]) = k.sub(R.at(row, pivot[i]), B.at(i, c));
    ++row;
  }
  return R;
}

const algebra::SCAlgebra::GroupTag& group_tag(const SCAlgebra& A) {
  check(A.group.has_value(), "UnsupportedAlgebra",
        "this operation needs a twisted group algebra of P x| E");
  return *A.group;
}

std::vector<Vec> class_coords_many(const HH1Result& H, const std::vector<MatrixFq>& ds);

HH1Result finish_hh1(const SCAlgebra& A, Subspace der, Subspace ider, std::vector<MatrixFq> reps) {
  const Field& k = A.field;
  const int n = A.dim;
  const int h = static_cast<int>(reps.size());

  HH1Result H;
  H.der = std::move(der);
  H.ider = std::move(ider);
  H.reps = std::move(reps);

  std::vector<Vec> inputs;
  inputs.reserve(h + H.ider.dim());
  for (const auto& d : H.reps) inputs.push_back(flatten(d));
  for (int i = 0; i < H.ider.dim(); ++i) inputs.push_back(H.ider.basis().row(i));
  CoordSolver solver(k, n * n, inputs);
  check(solver.rank() == static_cast<int>(inputs.size()), "InternalCheckFailed",
        "representatives are not independent modulo the inner derivations");

  std::vector<std::vector<std::pair<int, Elem>>> cells(static_cast<std::size_t>(h) * h);
  for (int i = 0; i < h; ++i)
    for (int j = i + 1; j < h; ++j) {
      const MatrixFq comm =
          mat_sub(mat_mul(H.reps[i], H.reps[j]), mat_mul(H.reps[j], H.reps[i]));
      auto x = solver.express(flatten(comm));
      check(x.has_value(), "InternalCheckFailed",
            "a bracket of representatives left the derivation span");
      for (int m = 0; m < h; ++m)
        if ((*x)[m] != 0) {
          cells[static_cast<std::size_t>(i) * h + j].emplace_back(m, (*x)[m]);
          cells[static_cast<std::size_t>(j) * h + i].emplace_back(m, k.neg((*x)[m]));
        }
    }
  std::vector<std::string> labels(h);
  for (int i = 0; i < h; ++i) labels[i] = "d" + std::to_string(i);
  H.hh1 = lie::lie_from_brackets(k, std::move(labels), std::move(cells));
  return H;
}

std::vector<Vec> class_coords_many(const HH1Result& H, const std::vector<MatrixFq>& ds) {
  const Field& k = H.der.field();
  const int h = H.dim();
  const int n2 = H.der.ambient();
  std::vector<Vec> inputs;
  inputs.reserve(h + H.ider.dim());
  for (const auto& d : H.reps) inputs.push_back(flatten(d));
  for (int i = 0; i < H.ider.dim(); ++i) inputs.push_back(H.ider.basis().row(i));
  CoordSolver solver(k, n2, inputs);
  std::vector<Vec> out;
  out.reserve(ds.size());
  for (const auto& d : ds) {
    auto x = solver.express(flatten(d));
    check(x.has_value(), "NotInDerSpan",
          "the matrix is not a combination of the representatives and inner derivations");
    out.emplace_back(x->begin(), x->begin() + h);
  }
  return out;
}

}  // namespace

Vec flatten(const MatrixFq& D) { return D.a; }

MatrixFq unflatten(const Field& k, int n, const Vec& v) {
  check(static_cast<int>(v.size()) == n * n, "DimensionMismatch", "flattened size is not n^2");
  MatrixFq D(k, n, n);
  D.a = v;
  return D;
}

bool is_derivation(const SCAlgebra& A, const MatrixFq& D) {
  if (D.rows != A.dim || D.cols != A.dim) return false;
  const Field& k = A.field;
  const int n = A.dim;
  std::vector<Vec> cols(n);
  for (int j = 0; j < n; ++j) {
    cols[j] = Vec(n);
    for (int t = 0; t < n; ++t) cols[j][t] = D.at(t, j);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vec lhs = A.zero();
      for (auto [s, c] : A.basis_prod(i, j))
        for (int t = 0; t < n; ++t)
          if (cols[s][t] != 0) lhs[t] = k.add(lhs[t], k.mul(c, cols[s][t]));
      Vec rhs = A.mul(cols[i], A.basis(j));
      vec_add_inplace(k, rhs, A.mul(A.basis(i), cols[j]));
      if (lhs != rhs) return false;
    }
  return true;
}

Subspace der_bruteforce(const SCAlgebra& A) {
  check(A.dim <= kOracleDimCap, "TooLarge", "brute-force derivations need dim <= 100");
  const Field& k = A.field;
  const int n = A.dim;
  RowBasis rb(k, n * n);

  std::vector<int> gens = A.gens;
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

  // Leibniz on (e_g, e_j), coordinate t:
  //   sum_s c_{gj}^s D[t][s] - sum_l c_{lj}^t D[l][g] - sum_l c_{gl}^t D[l][j] = 0
  std::vector<std::vector<std::pair<int, Elem>>> rows(n);
  for (int g : gens)
    for (int j = 0; j < n; ++j) {
      for (auto& r : rows) r.clear();
      for (auto [s, c] : A.basis_prod(g, j))
        for (int t = 0; t < n; ++t) rows[t].emplace_back(t * n + s, c);
      for (int l = 0; l < n; ++l) {
        for (auto [t, c] : A.basis_prod(l, j)) rows[t].emplace_back(l * n + g, k.neg(c));
        for (auto [t, c] : A.basis_prod(g, l)) rows[t].emplace_back(l * n + j, k.neg(c));
      }
      for (const auto& r : rows) rb.add_sparse(r);
    }

  // f(1) = 0; needed because the generating set need not reach the unit.
  for (int t = 0; t < n; ++t) {
    std::vector<std::pair<int, Elem>> r;
    for (int m = 0; m < n; ++m)
      if (A.unit[m] != 0) r.emplace_back(t * n + m, A.unit[m]);
    rb.add_sparse(r);
  }

  Subspace der = rb.kernel();
  for (int i = 0; i < der.dim(); ++i)
    check(is_derivation(A, unflatten(k, n, der.basis().row(i))), "InternalCheckFailed",
          "Leibniz kernel contains a non-derivation; A.gens may not generate A");
  return der;
}

Subspace inner_derivations(const SCAlgebra& A) {
  std::vector<Vec> rows;
  rows.reserve(A.dim);
  for (int b = 0; b < A.dim; ++b) {
    const MatrixFq ad =
        mat_sub(A.left_mult_matrix(A.basis(b)), A.right_mult_matrix(A.basis(b)));
    rows.push_back(flatten(ad));
  }
  return Subspace::span(rows_to_matrix(A.field, A.dim * A.dim, rows));
}

PModule conjugation_module(const SCAlgebra& A) {
  const auto& tag = group_tag(A);
  const auto& P = tag.G.P;
  PModule M;
  M.P = P;
  M.dim = A.dim;
  const int r = static_cast<int>(P.rank());
  M.X.reserve(r);
  for (int i = 0; i < r; ++i)
    M.X.push_back(conj_matrix(A, static_cast<int>(tag.G.index(P.generator(i), 0))));
  return M;
}

Vec cocycle_value(const PModule& M, const Vec& v, pgroup::PElem u) {
  const int n = M.dim;
  const int r = static_cast<int>(M.X.size());
  check(static_cast<int>(v.size()) == r * n, "DimensionMismatch",
        "stacked generator values have wrong length");
  if (r == 0) return Vec(static_cast<std::size_t>(n), 0);
  const Field& k = M.X[0].field;
  const auto digits = M.P.decode(u);
  Vec acc(n, 0);
  for (int i = r - 1; i >= 0; --i) {
    const auto c = digits[i];
    for (std::uint32_t t = 0; t < c; ++t) acc = mat_apply(M.X[i], acc);
    // add (I + X_i + ... + X_i^{c-1}) v_i
    Vec cur(v.begin() + static_cast<std::ptrdiff_t>(i) * n,
            v.begin() + static_cast<std::ptrdiff_t>(i + 1) * n);
    for (std::uint32_t t = 0; t < c; ++t) {
      vec_add_inplace(k, acc, cur);
      if (t + 1 < c) cur = mat_apply(M.X[i], cur);
    }
  }
  return acc;
}

MatrixFq cocycle_value_matrix(const PModule& M, pgroup::PElem u) {
  const int n = M.dim;
  const int r = static_cast<int>(M.X.size());
  check(r > 0, "DimensionMismatch", "module has no generators");
  const Field& k = M.X[0].field;
  const auto digits = M.P.decode(u);
  MatrixFq T(k, n, r * n);
  for (int i = r - 1; i >= 0; --i) {
    const auto c = digits[i];
    if (c > 0) {
      MatrixFq pw = mat_pow(M.X[i], static_cast<std::int64_t>(c));
      T = mat_mul(pw, T);
      MatrixFq geom(k, n, n);
      MatrixFq cur = mat_identity(k, n);
      for (std::uint32_t t = 0; t < c; ++t) {
        geom = mat_add(geom, cur);
        if (t + 1 < c) cur = mat_mul(cur, M.X[i]);
      }
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          T.at(a, i * n + b) = k.add(T.at(a, i * n + b), geom.at(a, b));
    }
  }
  return T;
}

namespace {

void validate_module(const PModule& M) {
  const int r = static_cast<int>(M.P.rank());
  check(static_cast<int>(M.X.size()) == r, "NotAPModule",
        "one action matrix per generator of P is required");
  for (int i = 0; i < r; ++i) {
    check(M.X[i].rows == M.dim && M.X[i].cols == M.dim, "NotAPModule",
          "action matrix has wrong shape");
    check(mat_pow(M.X[i], static_cast<std::int64_t>(M.P.moduli()[i])) ==
              mat_identity(M.X[i].field, M.dim),
          "NotAPModule", "X_i^{p^{a_i}} != I");
    for (int j = i + 1; j < r; ++j)
      check(mat_mul(M.X[i], M.X[j]) == mat_mul(M.X[j], M.X[i]), "NotAPModule",
            "action matrices do not commute");
  }
}

// Full-expansion soundness check of the generator-value parametrization.
void validate_cocycle_expansion(const PModule& M, const Subspace& z1) {
  if (M.P.order() > kFullExpansionCap) return;
  const Field& k = z1.field();
  const int n = M.dim;
  const auto np = static_cast<std::uint32_t>(M.P.order());
  // per-element action matrices, built incrementally digit by digit
  std::vector<MatrixFq> Xu(np);
  Xu[0] = mat_identity(k, n);
  for (std::uint32_t u = 1; u < np; ++u) {
    auto digits = M.P.decode(u);
    int i = 0;
    while (digits[i] == 0) ++i;
    digits[i] -= 1;
    Xu[u] = mat_mul(M.X[i], Xu[M.P.encode(digits)]);
  }
  for (int row = 0; row < z1.dim(); ++row) {
    const Vec v = z1.basis().row(row);
    std::vector<Vec> tau(np);
    for (std::uint32_t u = 0; u < np; ++u) tau[u] = cocycle_value(M, v, u);
    for (std::uint32_t u = 0; u < np; ++u)
      for (std::uint32_t w = 0; w < np; ++w) {
        Vec rhs = mat_apply(Xu[u], tau[w]);
        vec_add_inplace(k, rhs, tau[u]);
        check(rhs == tau[M.P.add(u, w)], "InternalCheckFailed",
              "generator values do not expand to a cocycle on all of P");
      }
  }
}

}  // namespace

Subspace z1_abelian(const PModule& M) {
  validate_module(M);
  const int r = static_cast<int>(M.X.size());
  const int n = M.dim;
  check(r > 0, "NotAPModule", "P must be nontrivial");
  const Field& k = M.X[0].field;
  const int W = r * n;
  RowBasis rb(k, W);

  // (I - X_j) v_i - (I - X_i) v_j = 0 for i < j
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      for (int t = 0; t < n; ++t) {
        Vec row(W, 0);
        for (int s = 0; s < n; ++s) {
          const Elem xi = M.X[i].at(t, s);
          const Elem xj = M.X[j].at(t, s);
          Elem ci = (s == t) ? k.sub(k.one(), xj) : k.neg(xj);
          Elem cj = (s == t) ? k.sub(k.one(), xi) : k.neg(xi);
          row[i * n + s] = ci;
          row[j * n + s] = k.neg(cj);
        }
        rb.add_dense(std::move(row));
      }

  // N_i v_i = 0 with N_i the norm element of <x_i>
  for (int i = 0; i < r; ++i) {
    MatrixFq Ni(k, n, n);
    MatrixFq cur = mat_identity(k, n);
    for (std::uint32_t t = 0; t < M.P.moduli()[i]; ++t) {
      Ni = mat_add(Ni, cur);
      if (t + 1 < M.P.moduli()[i]) cur = mat_mul(cur, M.X[i]);
    }
    for (int t = 0; t < n; ++t) {
      Vec row(W, 0);
      for (int s = 0; s < n; ++s) row[i * n + s] = Ni.at(t, s);
      rb.add_dense(std::move(row));
    }
  }

  Subspace z1 = rb.kernel();
  validate_cocycle_expansion(M, z1);
  return z1;
}

Subspace b1_abelian(const PModule& M) {
  validate_module(M);
  const int r = static_cast<int>(M.X.size());
  const int n = M.dim;
  const Field& k = M.X[0].field;
  std::vector<Vec> rows;
  rows.reserve(n);
  for (int m = 0; m < n; ++m) {
    Vec row(static_cast<std::size_t>(r) * n, 0);
    for (int i = 0; i < r; ++i)
      for (int t = 0; t < n; ++t) {
        Elem c = M.X[i].at(t, m);
        row[i * n + t] = (t == m) ? k.sub(k.one(), c) : k.neg(c);
      }
    rows.push_back(std::move(row));
  }
  return Subspace::span(rows_to_matrix(k, r * n, rows));
}

EFixedCocycles e_fixed_cocycles(const SCAlgebra& A) {
  const auto& tag = group_tag(A);
  const auto& G = tag.G;
  const auto& P = G.P;
  const auto& E = G.E;
  check(P.order() > 1, "UnsupportedInput", "P must be nontrivial");
  const Field& k = A.field;
  const int n = A.dim;
  const int r = static_cast<int>(P.rank());
  const int W = r * n;

  EFixedCocycles out;
  out.M = conjugation_module(A);
  out.z1 = z1_abelian(out.M);
  out.b1 = b1_abelian(out.M);

  // (f . tau)(u) = C_f tau(f^{-1} . u); fixity is linear in the generator
  // values because cocycles are determined by them.
  RowBasis fixed_rows(k, W);
  RowBasis mfixed_rows(k, n);
  for (int f : E.generators) {
    const MatrixFq Cf = conj_matrix(A, static_cast<int>(G.index(0, f)));
    const pgroup::PAut& afinv = E.action[E.inv(f)];
    for (int i = 0; i < r; ++i) {
      const pgroup::PElem u = pgroup::aut_apply(P, afinv, P.generator(i));
      const MatrixFq CT = mat_mul(Cf, cocycle_value_matrix(out.M, u));
      for (int t = 0; t < n; ++t) {
        Vec row = CT.row(t);
        row[static_cast<std::size_t>(i) * n + t] = k.sub(row[static_cast<std::size_t>(i) * n + t], k.one());
        fixed_rows.add_dense(std::move(row));
      }
    }
    for (int t = 0; t < n; ++t) {
      Vec row = Cf.row(t);
      row[t] = k.sub(row[t], k.one());
      mfixed_rows.add_dense(std::move(row));
    }
  }
  out.z1_fixed = out.z1.intersect(fixed_rows.kernel());

  // boundaries of E-fixed elements of A
  const Subspace afix = mfixed_rows.kernel();
  std::vector<Vec> brows;
  brows.reserve(afix.dim());
  for (int b = 0; b < afix.dim(); ++b) {
    const Vec m = afix.basis().row(b);
    Vec row(W, 0);
    for (int i = 0; i < r; ++i) {
      Vec t = vec_sub(k, m, mat_apply(out.M.X[i], m));
      for (int s = 0; s < n; ++s) row[static_cast<std::size_t>(i) * n + s] = t[s];
    }
    brows.push_back(std::move(row));
  }
  out.b1_fixed = Subspace::span(rows_to_matrix(k, W, brows));
  check(out.z1_fixed.contains(out.b1_fixed), "InternalCheckFailed",
        "boundaries of fixed elements are not fixed cocycles");

  RowBasis acc(k, W);
  for (int b = 0; b < out.b1_fixed.dim(); ++b) acc.add_dense(out.b1_fixed.basis().row(b));
  for (int b = 0; b < out.z1_fixed.dim(); ++b) {
    Vec row = out.z1_fixed.basis().row(b);
    if (acc.add_dense(row)) out.reps.push_back(out.z1_fixed.basis().row(b));
  }
  return out;
}

MatrixFq cocycle_to_derivation(const SCAlgebra& A, const PModule& M, const Vec& tau) {
  const auto& tag = group_tag(A);
  const auto& G = tag.G;
  const Field& k = A.field;
  const int n = A.dim;
  check(M.dim == n, "DimensionMismatch", "module does not match the algebra");

  std::vector<Vec> values(G.P.order());
  for (pgroup::PElem u = 0; u < G.P.order(); ++u) values[u] = cocycle_value(M, tau, u);

  MatrixFq D(k, n, n);
  for (int g = 0; g < n; ++g) {
    const Vec col = A.mul(values[G.p_part(static_cast<std::uint64_t>(g))], A.basis(g));
    for (int t = 0; t < n; ++t) D.at(t, g) = col[t];
  }
  check(is_derivation(A, D), "LeibnizFails",
        "d(ghat) = tau(u) ghat violates Leibniz; tau is not an E-stable cocycle");
  return D;
}

HH1Result hh1_via_oracle(const SCAlgebra& A) {
  const Field& k = A.field;
  const int n = A.dim;
  Subspace der = der_bruteforce(A);
  Subspace ider = inner_derivations(A);
  check(der.contains(ider), "InternalCheckFailed", "inner derivations escaped the Leibniz kernel");

  RowBasis acc(k, n * n);
  for (int b = 0; b < ider.dim(); ++b) acc.add_dense(ider.basis().row(b));
  std::vector<MatrixFq> reps;
  for (int b = 0; b < der.dim(); ++b) {
    Vec row = der.basis().row(b);
    if (acc.add_dense(row)) reps.push_back(unflatten(k, n, der.basis().row(b)));
  }
  return finish_hh1(A, std::move(der), std::move(ider), std::move(reps));
}

HH1Result hh1_via_cocycles(const SCAlgebra& A) {
  const Field& k = A.field;
  const int n = A.dim;
  EFixedCocycles ef = e_fixed_cocycles(A);
  Subspace ider = inner_derivations(A);

  RowBasis acc(k, n * n);
  for (int b = 0; b < ider.dim(); ++b) acc.add_dense(ider.basis().row(b));
  std::vector<MatrixFq> reps;
  reps.reserve(ef.reps.size());
  for (const Vec& tau : ef.reps) {
    MatrixFq d = cocycle_to_derivation(A, ef.M, tau);
    check(acc.add_dense(flatten(d)), "InternalCheckFailed",
          "a fast-path representative is an inner derivation");
    reps.push_back(std::move(d));
  }
  Subspace der = acc.row_space();
  HH1Result H = finish_hh1(A, std::move(der), std::move(ider), std::move(reps));
  H.complex = std::move(ef);
  return H;
}

Vec class_coordinates(const HH1Result& H, const MatrixFq& D) {
  return class_coords_many(H, {D}).front();
}

Subspace classes_with_rep_in_radical_power(const SCAlgebra& A, const HH1Result& H, int m) {
  check(m >= 1, "UnsupportedInput", "radical power must be at least 1");
  const Field& k = A.field;
  const int n = A.dim;
  const int h = H.dim();
  const int idim = H.ider.dim();

  const MatrixFq R = quotient_projection(algebra::radical_power(A, m));
  std::vector<MatrixFq> proj;
  proj.reserve(h + idim);
  for (const auto& d : H.reps) proj.push_back(mat_mul(R, d));
  for (int l = 0; l < idim; ++l)
    proj.push_back(mat_mul(R, unflatten(k, n, H.ider.basis().row(l))));

  // feasibility of (sum_a lambda_a d_a + sum_l mu_l i_l)(A) <= J^m, jointly
  RowBasis rb(k, h + idim);
  for (int j = 0; j < n; ++j)
    for (int q = 0; q < R.rows; ++q) {
      Vec row(static_cast<std::size_t>(h) + idim, 0);
      bool nonzero = false;
      for (int a = 0; a < h + idim; ++a) {
        row[a] = proj[a].at(q, j);
        nonzero = nonzero || row[a] != 0;
      }
      if (nonzero) rb.add_dense(std::move(row));
    }
  const Subspace K = rb.kernel();
  std::vector<Vec> lambda_rows;
  lambda_rows.reserve(K.dim());
  for (int b = 0; b < K.dim(); ++b) {
    const Vec v = K.basis().row(b);
    lambda_rows.emplace_back(v.begin(), v.begin() + h);
  }
  return Subspace::span(rows_to_matrix(k, h, lambda_rows));
}

Subspace p_part_valued_classes(const SCAlgebra& A, const HH1Result& H) {
  check(H.complex.has_value(), "UnsupportedInput",
        "the cocycle complex is only available from the cocycle path");
  const auto& tag = group_tag(A);
  const auto& G = tag.G;
  const EFixedCocycles& ef = *H.complex;
  const Field& k = A.field;
  const int n = A.dim;
  const int r = static_cast<int>(ef.M.X.size());
  const int W = r * n;

  RowBasis pvalued(k, W);
  for (int i = 0; i < r; ++i)
    for (int g = 0; g < n; ++g)
      if (G.e_part(static_cast<std::uint64_t>(g)) != 0)
        pvalued.add_sparse({{i * n + g, k.one()}});
  const Subspace zpf = ef.z1_fixed.intersect(pvalued.kernel());

  std::vector<MatrixFq> ds;
  ds.reserve(zpf.dim());
  for (int b = 0; b < zpf.dim(); ++b)
    ds.push_back(cocycle_to_derivation(A, ef.M, zpf.basis().row(b)));
  const std::vector<Vec> coords = ds.empty() ? std::vector<Vec>{} : class_coords_many(H, ds);
  return Subspace::span(rows_to_matrix(k, H.dim(), coords));
}

SCAlgebra p_group_algebra(const Field& k, const pgroup::AbelianPGroup& P) {
  const pgroup::EGroup trivial = pgroup::egroup_close(P, {});
  const pgroup::SemidirectProduct G(P, trivial);
  return algebra::twisted_group_algebra(k, G, cocycle::cocycle_trivial(k, trivial));
}

namespace {

void require_plain_p_algebra(const SCAlgebra& AP, const pgroup::AbelianPGroup& P) {
  const auto& tag = group_tag(AP);
  check(tag.G.E.order == 1, "UnsupportedAlgebra", "expected the group algebra of P alone");
  check(tag.G.P == P, "DimensionMismatch",
        "the algebra is not built on the same P");
}

}  // namespace

Subspace estable_derivations(const SCAlgebra& AP, const pgroup::EGroup& E) {
  require_plain_p_algebra(AP, E.P);
  const Field& k = AP.field;
  const int n = AP.dim;

  Subspace der = der_bruteforce(AP);
  RowBasis rb(k, n * n);
  for (int f : E.generators) {
    const pgroup::PAut& a = E.action[f];
    std::vector<int> sigma(n), sigma_inv(n);
    for (pgroup::PElem u = 0; u < static_cast<pgroup::PElem>(n); ++u) {
      sigma[u] = static_cast<int>(pgroup::aut_apply(E.P, a, u));
      sigma_inv[sigma[u]] = u;
    }
    // P_sigma D = D P_sigma, coordinate (t, m)
    for (int t = 0; t < n; ++t)
      for (int m = 0; m < n; ++m)
        rb.add_sparse({{sigma_inv[t] * n + m, k.one()}, {t * n + sigma[m], k.neg(k.one())}});
  }
  return der.intersect(rb.kernel());
}

EStableDerAlgebra estable_der_algebra(const Field& k, const pgroup::AbelianPGroup& P,
                                      const pgroup::EGroup& E) {
  EStableDerAlgebra out;
  out.AP = p_group_algebra(k, P);
  out.ders = estable_derivations(out.AP, E);
  const int n = out.AP.dim;
  const int h = out.ders.dim();

  std::vector<Vec> inputs;
  inputs.reserve(h);
  for (int b = 0; b < h; ++b) {
    inputs.push_back(out.ders.basis().row(b));
    out.reps.push_back(unflatten(k, n, inputs.back()));
  }
  CoordSolver solver(k, n * n, inputs);
  std::vector<std::vector<std::pair<int, Elem>>> cells(static_cast<std::size_t>(h) * h);
  for (int i = 0; i < h; ++i)
    for (int j = i + 1; j < h; ++j) {
      const MatrixFq comm =
          mat_sub(mat_mul(out.reps[i], out.reps[j]), mat_mul(out.reps[j], out.reps[i]));
      auto x = solver.express(flatten(comm));
      check(x.has_value(), "InternalCheckFailed",
            "a bracket of E-stable derivations left the E-stable span");
      for (int m = 0; m < h; ++m)
        if ((*x)[m] != 0) {
          cells[static_cast<std::size_t>(i) * h + j].emplace_back(m, (*x)[m]);
          cells[static_cast<std::size_t>(j) * h + i].emplace_back(m, k.neg((*x)[m]));
        }
    }
  std::vector<std::string> labels(h);
  for (int i = 0; i < h; ++i) labels[i] = "f" + std::to_string(i);
  out.lie = lie::lie_from_brackets(k, std::move(labels), std::move(cells));
  return out;
}

MatrixFq extend_estable_derivation(const SCAlgebra& A, const MatrixFq& f) {
  const auto& tag = group_tag(A);
  const auto& G = tag.G;
  const auto& P = G.P;
  const auto& E = G.E;
  const int np = static_cast<int>(P.order());
  check(f.rows == np && f.cols == np, "DimensionMismatch",
        "the derivation must live on kP");
  check(f.field.same_field(A.field), "FieldMismatch", "field mismatch");

  for (std::size_t gi = 0; gi < E.generators.size(); ++gi) {
    const pgroup::PAut& a = E.action[E.generators[gi]];
    for (pgroup::PElem u = 0; u < static_cast<pgroup::PElem>(np); ++u)
      for (pgroup::PElem w = 0; w < static_cast<pgroup::PElem>(np); ++w)
        check(f.at(static_cast<int>(pgroup::aut_apply(P, a, u)),
                   static_cast<int>(pgroup::aut_apply(P, a, w))) == f.at(static_cast<int>(u), static_cast<int>(w)),
              "NotEStable", "the derivation does not commute with E generator #" + std::to_string(gi));
  }

  MatrixFq D(A.field, A.dim, A.dim);
  for (int g = 0; g < A.dim; ++g) {
    const pgroup::PElem u = G.p_part(static_cast<std::uint64_t>(g));
    const int e = G.e_part(static_cast<std::uint64_t>(g));
    for (int v = 0; v < np; ++v)
      D.at(static_cast<int>(G.index(static_cast<pgroup::PElem>(v), e)), g) =
          f.at(v, static_cast<int>(u));
  }
  check(is_derivation(A, D), "InternalCheckFailed",
        "the extension of an E-stable derivation failed Leibniz");
  return D;
}

FrattiniQuotient frattini_quotient(const SCAlgebra& AP) {
  const auto& tag = group_tag(AP);
  check(tag.G.E.order == 1, "UnsupportedAlgebra", "expected the group algebra of P alone");
  const auto& P = tag.G.P;
  const Field& k = AP.field;
  const int r = static_cast<int>(P.rank());

  FrattiniQuotient Q;
  const pgroup::AbelianPGroup Pbar(P.p(), std::vector<int>(r, 1));
  Q.Abar = p_group_algebra(k, Pbar);
  Q.proj = MatrixFq(k, Q.Abar.dim, AP.dim);
  for (pgroup::PElem u = 0; u < P.order(); ++u) {
    auto digits = P.decode(u);
    for (auto& d : digits) d %= P.p();
    Q.proj.at(static_cast<int>(Pbar.encode(digits)), static_cast<int>(u)) = k.one();
  }
  // the coordinate map of a group homomorphism is automatically an algebra map
  for (int i = 0; i < AP.dim; ++i)
    for (int j = 0; j < AP.dim; ++j) {
      Vec lhs = mat_apply(Q.proj, AP.mul(AP.basis(i), AP.basis(j)));
      Vec rhs = Q.Abar.mul(mat_apply(Q.proj, AP.basis(i)), mat_apply(Q.proj, AP.basis(j)));
      check(lhs == rhs, "InternalCheckFailed", "Frattini projection is not multiplicative");
    }
  return Q;
}

MatrixFq frattini_pushforward(const SCAlgebra& AP, const FrattiniQuotient& Q, const MatrixFq& f) {
  const auto& tag = group_tag(AP);
  const auto& P = tag.G.P;
  check(f.rows == AP.dim && f.cols == AP.dim, "DimensionMismatch",
        "the derivation must live on kP");
  check(is_derivation(AP, f), "NotADerivation", "input is not a derivation on kP");
  const Field& k = AP.field;
  const int nbar = Q.Abar.dim;
  const auto& Pbar = Q.Abar.group->G.P;

  MatrixFq fbar(k, nbar, nbar);
  for (pgroup::PElem ub = 0; ub < Pbar.order(); ++ub) {
    // canonical lift: the digit vector of ub read in P
    const pgroup::PElem u = P.encode(Pbar.decode(ub));
    Vec col(AP.dim);
    for (int t = 0; t < AP.dim; ++t) col[t] = f.at(t, static_cast<int>(u));
    const Vec pushed = mat_apply(Q.proj, col);
    for (int t = 0; t < nbar; ++t) fbar.at(t, static_cast<int>(ub)) = pushed[t];
  }
  // well-definedness across all lifts: f bar . proj = proj . f
  check(mat_mul(fbar, Q.proj) == mat_mul(Q.proj, f), "InternalCheckFailed",
        "the derivation does not descend to k(P/Phi(P))");
  return fbar;
}

SemisimpleQuotientReport semisimple_quotient_map(const SCAlgebra& AP, const pgroup::EGroup& E,
                                                 const std::vector<MatrixFq>& ders) {
  require_plain_p_algebra(AP, E.P);
  const Field& k = AP.field;
  const auto& P = E.P;
  const int r = static_cast<int>(P.rank());

  const Subspace J = algebra::radical_power(AP, 1);
  const Subspace J2 = algebra::radical_power(AP, 2);

  std::vector<Vec> aug(r);
  for (int i = 0; i < r; ++i) {
    aug[i] = vec_sub(k, AP.basis(static_cast<int>(P.generator(i))), AP.unit);
  }
  std::vector<Vec> inputs;
  for (int b = 0; b < J2.dim(); ++b) inputs.push_back(J2.basis().row(b));
  for (int i = 0; i < r; ++i) inputs.push_back(aug[i]);
  CoordSolver solver(k, AP.dim, inputs);
  check(solver.rank() == J2.dim() + r, "InternalCheckFailed",
        "J^2 and the augmentation generators do not decompose J");

  SemisimpleQuotientReport rep;
  RowBasis span(k, r * r);
  for (std::size_t d = 0; d < ders.size(); ++d) {
    for (int b = 0; b < J.dim(); ++b)
      check(J.contains(mat_apply(ders[d], J.basis().row(b))), "DoesNotPreserveJ",
            "derivation #" + std::to_string(d) + " does not preserve J(kP)");
    MatrixFq m(k, r, r);
    for (int i = 0; i < r; ++i) {
      auto x = solver.express(mat_apply(ders[d], aug[i]));
      check(x.has_value(), "DoesNotPreserveJ",
            "derivation #" + std::to_string(d) + " moves (x_i - 1) outside J");
      for (int t = 0; t < r; ++t) m.at(t, i) = (*x)[J2.dim() + t];
    }
    span.add_dense(flatten(m));
    rep.images.push_back(std::move(m));
  }
  rep.image_rank = span.rank();

  const pgroup::EModule FM = pgroup::frattini_module(P, E);
  std::vector<MatrixFq> emats;
  for (const auto& s : FM.generator_mats) {
    MatrixFq t(k, r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) t.at(i, j) = k.from_int(static_cast<std::int64_t>(s.at(i, j)));
    emats.push_back(std::move(t));
  }
  rep.commutant = lie::matrix_commutant(k, r, emats);
  rep.commutant_commutative = true;
  for (int a = 0; a < rep.commutant.dim() && rep.commutant_commutative; ++a)
    for (int b = a + 1; b < rep.commutant.dim(); ++b) {
      const MatrixFq X = unflatten(k, r, rep.commutant.basis().row(a));
      const MatrixFq Y = unflatten(k, r, rep.commutant.basis().row(b));
      if (!(mat_mul(X, Y) == mat_mul(Y, X))) {
        rep.commutant_commutative = false;
        break;
      }
    }
  return rep;
}

namespace {

const algebra::SCAlgebra::TensorTag& tensor_tag(const SCAlgebra& T) {
  check(T.tensor.has_value(), "UnsupportedAlgebra", "expected a tensor product algebra");
  return *T.tensor;
}

void require_central(const SCAlgebra& A, const Vec& z) {
  check(static_cast<int>(z.size()) == A.dim, "DimensionMismatch", "central element size mismatch");
  for (int j = 0; j < A.dim; ++j) {
    Vec c = A.commutator(z, A.basis(j));
    for (Elem x : c) check(x == 0, "NotCentral", "the tensor factor element is not central");
  }
}

}  // namespace

MatrixFq tensor_derivation_left(const SCAlgebra& T, const MatrixFq& f, const Vec& z) {
  const auto& tag = tensor_tag(T);
  const SCAlgebra& A = *tag.left;
  const SCAlgebra& B = *tag.right;
  check(f.rows == A.dim && f.cols == A.dim, "DimensionMismatch", "map must act on the left factor");
  require_central(B, z);
  const Field& k = T.field;

  std::vector<Vec> zb(B.dim);
  for (int j = 0; j < B.dim; ++j) zb[j] = B.mul(z, B.basis(j));

  MatrixFq D(k, T.dim, T.dim);
  for (int i = 0; i < A.dim; ++i)
    for (int j = 0; j < B.dim; ++j)
      for (int s = 0; s < A.dim; ++s) {
        const Elem fs = f.at(s, i);
        if (fs == 0) continue;
        for (int t = 0; t < B.dim; ++t)
          if (zb[j][t] != 0) D.at(s * B.dim + t, i * B.dim + j) = k.mul(fs, zb[j][t]);
      }
  check(is_derivation(T, D), "LeibnizFails", "f (x) z is not a derivation; f must be one");
  return D;
}

MatrixFq tensor_derivation_right(const SCAlgebra& T, const Vec& z, const MatrixFq& g) {
  const auto& tag = tensor_tag(T);
  const SCAlgebra& A = *tag.left;
  const SCAlgebra& B = *tag.right;
  check(g.rows == B.dim && g.cols == B.dim, "DimensionMismatch", "map must act on the right factor");
  require_central(A, z);
  const Field& k = T.field;

  std::vector<Vec> za(A.dim);
  for (int i = 0; i < A.dim; ++i) za[i] = A.mul(z, A.basis(i));

  MatrixFq D(k, T.dim, T.dim);
  for (int i = 0; i < A.dim; ++i)
    for (int j = 0; j < B.dim; ++j)
      for (int t = 0; t < B.dim; ++t) {
        const Elem gt = g.at(t, j);
        if (gt == 0) continue;
        for (int s = 0; s < A.dim; ++s)
          if (za[i][s] != 0) D.at(s * B.dim + t, i * B.dim + j) = k.mul(za[i][s], gt);
      }
  check(is_derivation(T, D), "LeibnizFails", "z (x) g is not a derivation; g must be one");
  return D;
}

}  // namespace tga::hh1
