#include "tga/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace tga::algebra {

using ff::Elem;
using ff::MatrixFq;
using ff::Subspace;

Vec SCAlgebra::basis(int i) const {
  Vec v = zero();
  v[i] = field.one();
  return v;
}

Vec SCAlgebra::mul(const Vec& a, const Vec& b) const {
  Vec out = zero();
  for (int i = 0; i < dim; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < dim; ++j) {
      if (b[j] == 0) continue;
      Elem c = field.mul(a[i], b[j]);
      for (const auto& [t, sc] : basis_prod(i, j)) out[t] = field.add(out[t], field.mul(c, sc));
    }
  }
  return out;
}

Vec SCAlgebra::commutator(const Vec& a, const Vec& b) const {
  Vec ab = mul(a, b), ba = mul(b, a);
  for (int t = 0; t < dim; ++t) ab[t] = field.sub(ab[t], ba[t]);
  return ab;
}

MatrixFq SCAlgebra::left_mult_matrix(const Vec& a) const {
  MatrixFq m(field, dim, dim);
  for (int j = 0; j < dim; ++j) {
    Vec col = mul(a, basis(j));
    for (int t = 0; t < dim; ++t) m.at(t, j) = col[t];
  }
  return m;
}

MatrixFq SCAlgebra::right_mult_matrix(const Vec& a) const {
  MatrixFq m(field, dim, dim);
  for (int j = 0; j < dim; ++j) {
    Vec col = mul(basis(j), a);
    for (int t = 0; t < dim; ++t) m.at(t, j) = col[t];
  }
  return m;
}

std::string SCAlgebra::describe(const Vec& a) const {
  std::ostringstream out;
  bool first = true;
  for (int i = 0; i < dim; ++i) {
    if (a[i] == 0) continue;
    if (!first) out << " + ";
    first = false;
    if (a[i] != field.one()) out << field.to_string(a[i]) << "*";
    out << labels[i];
  }
  if (first) out << "0";
  return out.str();
}

namespace {

constexpr int kAssocCheckLimit = 40;

void validate_algebra(const SCAlgebra& A) {
  check(A.dim >= 1, "DimensionMismatch", "algebra must have positive dimension");
  check(static_cast<int>(A.labels.size()) == A.dim, "DimensionMismatch", "one label per basis");
  check(static_cast<int>(A.unit.size()) == A.dim, "DimensionMismatch", "unit coordinate arity");
  check(A.prod.size() == static_cast<std::size_t>(A.dim) * A.dim, "DimensionMismatch",
        "structure constants must be dim x dim");
  for (const auto& cell : A.prod)
    for (const auto& [t, c] : cell) {
      check(t >= 0 && t < A.dim, "DimensionMismatch", "structure constant index out of range");
      check(c < A.field.order(), "ValueOutOfRange", "structure constant out of range");
    }
  for (int j = 0; j < A.dim; ++j) {
    check(A.mul(A.unit, A.basis(j)) == A.basis(j) && A.mul(A.basis(j), A.unit) == A.basis(j),
          "UnitFails", "unit axiom fails on basis element " + std::to_string(j));
  }
  if (A.dim <= kAssocCheckLimit) {
    for (int i = 0; i < A.dim; ++i)
      for (int j = 0; j < A.dim; ++j) {
        Vec ij = A.mul(A.basis(i), A.basis(j));
        for (int l = 0; l < A.dim; ++l)
          check(A.mul(ij, A.basis(l)) == A.mul(A.basis(i), A.mul(A.basis(j), A.basis(l))),
                "AssociativityFails",
                "associativity fails at basis triple (" + std::to_string(i) + "," +
                    std::to_string(j) + "," + std::to_string(l) + ")");
      }
  }
  for (int g : A.gens)
    check(g >= 0 && g < A.dim, "DimensionMismatch", "generator index out of range");
}

// index of the basis vector equal to the unit, or -1 if the unit is not one
int unit_basis_index(const SCAlgebra& A) {
  int idx = -1;
  for (int i = 0; i < A.dim; ++i) {
    if (A.unit[i] == 0) continue;
    if (idx >= 0 || A.unit[i] != A.field.one()) return -1;
    idx = i;
  }
  return idx;
}

}  // namespace

SCAlgebra from_structure_constants(const ff::Field& k, std::vector<std::string> labels, Vec unit,
                                   std::vector<std::vector<std::pair<int, Elem>>> prod) {
  SCAlgebra A;
  A.field = k;
  A.dim = static_cast<int>(labels.size());
  A.labels = std::move(labels);
  A.unit = std::move(unit);
  A.prod = std::move(prod);
  A.gens.resize(A.dim);
  for (int i = 0; i < A.dim; ++i) A.gens[i] = i;
  validate_algebra(A);
  return A;
}

SCAlgebra twisted_group_algebra(const ff::Field& k, const pgroup::SemidirectProduct& G,
                                const cocycle::NormalizedCocycle2& alphaE) {
  check(alphaE.order == G.E.order && alphaE.cayley == G.E.cayley, "DimensionMismatch",
        "cocycle does not live on the E-part of this group");
  check(k.same_field(alphaE.field), "DimensionMismatch", "cocycle values live in another field");
  check(G.order <= 4096, "DimensionMismatch", "group order too large for an explicit algebra");

  SCAlgebra A;
  A.field = k;
  A.dim = static_cast<int>(G.order);
  A.unit = Vec(A.dim, 0);
  A.unit[0] = k.one();
  A.labels.reserve(A.dim);
  for (int g = 0; g < A.dim; ++g) A.labels.push_back(G.describe(g));
  A.prod.resize(static_cast<std::size_t>(A.dim) * A.dim);
  for (int g = 0; g < A.dim; ++g)
    for (int h = 0; h < A.dim; ++h) {
      Elem c = alphaE.at(G.e_part(g), G.e_part(h));
      A.prod[static_cast<std::size_t>(g) * A.dim + h] = {
          {static_cast<int>(G.mul(g, h)), c}};
    }
  for (int i = 0; i < G.P.rank(); ++i)
    A.gens.push_back(static_cast<int>(G.index(G.P.generator(i), 0)));
  for (int g : G.E.generators) A.gens.push_back(static_cast<int>(G.index(0, g)));
  A.group = SCAlgebra::GroupTag{G, alphaE};
  validate_algebra(A);
  return A;
}

SCAlgebra qci_algebra(const ff::Field& k) {
  const std::uint32_t p = k.characteristic();
  check(p > 2, "EvenCharacteristic", "the quantum complete intersection needs odd characteristic");
  const int n = static_cast<int>(p);

  SCAlgebra A;
  A.field = k;
  A.dim = n * n;
  A.unit = Vec(A.dim, 0);
  A.unit[0] = k.one();
  auto name = [](const char* v, int e) -> std::string {
    if (e == 0) return "";
    if (e == 1) return v;
    return std::string(v) + "^" + std::to_string(e);
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::string lx = name("x", a), ly = name("y", b);
      if (lx.empty() && ly.empty())
        A.labels.push_back("1");
      else if (lx.empty() || ly.empty())
        A.labels.push_back(lx + ly);
      else
        A.labels.push_back(lx + "*" + ly);
    }
  A.prod.resize(static_cast<std::size_t>(A.dim) * A.dim);
  const Elem minus_one = k.neg(k.one());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          auto& cell = A.prod[static_cast<std::size_t>(a * n + b) * A.dim + (c * n + d)];
          if (a + c >= n || b + d >= n) continue;
          // x^a y^b x^c y^d = (-1)^{bc} x^{a+c} y^{b+d}
          Elem sign = (static_cast<std::int64_t>(b) * c % 2 == 0) ? k.one() : minus_one;
          cell = {{(a + c) * n + (b + d), sign}};
        }
  A.gens = {1 * n + 0, 0 * n + 1};
  A.qci = SCAlgebra::QciTag{p};
  validate_algebra(A);
  return A;
}

SCAlgebra tensor_algebra(const SCAlgebra& A, const SCAlgebra& B) {
  check(A.field.same_field(B.field), "DimensionMismatch",
        "tensor factors must share the coefficient field");
  const int n = A.dim * B.dim;
  check(n <= 4096, "DimensionMismatch", "tensor product dimension too large");

  SCAlgebra T;
  T.field = A.field;
  T.dim = n;
  auto idx = [&](int i, int j) { return i * B.dim + j; };
  T.unit = Vec(n, 0);
  for (int i = 0; i < A.dim; ++i)
    for (int j = 0; j < B.dim; ++j) {
      T.unit[idx(i, j)] = T.field.mul(A.unit[i], B.unit[j]);
      T.labels.push_back(A.labels[i] + "(x)" + B.labels[j]);
    }
  T.prod.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < A.dim; ++i)
    for (int j = 0; j < B.dim; ++j)
      for (int k2 = 0; k2 < A.dim; ++k2)
        for (int l = 0; l < B.dim; ++l) {
          auto& cell = T.prod[static_cast<std::size_t>(idx(i, j)) * n + idx(k2, l)];
          for (const auto& [m, c1] : A.basis_prod(i, k2))
            for (const auto& [m2, c2] : B.basis_prod(j, l))
              cell.emplace_back(idx(m, m2), T.field.mul(c1, c2));
        }
  int ua = unit_basis_index(A), ub = unit_basis_index(B);
  if (ua >= 0 && ub >= 0) {
    for (int g : A.gens) T.gens.push_back(idx(g, ub));
    for (int h : B.gens) T.gens.push_back(idx(ua, h));
  } else {
    T.gens.resize(n);
    for (int i = 0; i < n; ++i) T.gens[i] = i;
  }
  T.tensor = SCAlgebra::TensorTag{std::make_shared<SCAlgebra>(A), std::make_shared<SCAlgebra>(B)};
  validate_algebra(T);
  return T;
}

namespace {

// spanning vectors of J(A)^m for the group construction: products
// prod_i (xhat_i - 1)^{c_i} ehat over sum c_i >= m
void group_radical_vectors(const SCAlgebra& A, int m, MatrixFq& out) {
  const auto& G = A.group->G;
  const auto& P = G.P;
  std::vector<Vec> aug;  // (xhat_i - 1) as elements
  for (int i = 0; i < P.rank(); ++i) {
    Vec v = A.zero();
    v[G.index(P.generator(i), 0)] = A.field.one();
    v[0] = A.field.sub(v[0], A.field.one());
    aug.push_back(v);
  }
  std::vector<std::uint32_t> c(P.rank(), 0);
  std::vector<Vec> rows;
  while (true) {
    int deg = 0;
    for (std::uint32_t ci : c) deg += static_cast<int>(ci);
    if (deg >= m) {
      for (int e = 0; e < G.E.order; ++e) {
        Vec v = A.basis(static_cast<int>(G.index(0, e)));
        for (int i = 0; i < P.rank(); ++i)
          for (std::uint32_t t = 0; t < c[i]; ++t) v = A.mul(aug[i], v);
        rows.push_back(std::move(v));
      }
    }
    int i = P.rank() - 1;
    while (i >= 0 && c[i] + 1 == P.moduli()[i]) c[i--] = 0;
    if (i < 0) break;
    ++c[i];
  }
  out = MatrixFq(A.field, static_cast<int>(rows.size()), A.dim);
  for (std::size_t r = 0; r < rows.size(); ++r) out.set_row(static_cast<int>(r), rows[r]);
}

}  // namespace

Subspace radical_power(const SCAlgebra& A, int m) {
  if (m <= 0) return Subspace::full(A.field, A.dim);
  if (A.group) {
    MatrixFq rows(A.field, 0, A.dim);
    group_radical_vectors(A, m, rows);
    return Subspace::span(rows);
  }
  if (A.qci) {
    const int n = static_cast<int>(A.qci->p);
    std::vector<Vec> rows;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (a + b >= m) rows.push_back(A.basis(a * n + b));
    MatrixFq mat(A.field, static_cast<int>(rows.size()), A.dim);
    for (std::size_t r = 0; r < rows.size(); ++r) mat.set_row(static_cast<int>(r), rows[r]);
    return Subspace::span(mat);
  }
  if (A.tensor) {
    const SCAlgebra& L = *A.tensor->left;
    const SCAlgebra& R = *A.tensor->right;
    std::vector<Vec> rows;
    for (int i = 0; i <= m; ++i) {
      Subspace jl = radical_power(L, i);
      Subspace jr = radical_power(R, m - i);
      for (int a = 0; a < jl.dim(); ++a)
        for (int b = 0; b < jr.dim(); ++b) {
          Vec v(A.dim, 0);
          for (int s = 0; s < L.dim; ++s)
            for (int t = 0; t < R.dim; ++t)
              v[s * R.dim + t] = A.field.mul(jl.basis().at(a, s), jr.basis().at(b, t));
          rows.push_back(std::move(v));
        }
    }
    MatrixFq mat(A.field, static_cast<int>(rows.size()), A.dim);
    for (std::size_t r = 0; r < rows.size(); ++r) mat.set_row(static_cast<int>(r), rows[r]);
    return Subspace::span(mat);
  }
  fail("RadicalUnavailable", "no radical filtration is known for this algebra");
}

int loewy_length(const SCAlgebra& A) {
  for (int m = 1; m <= 4 * A.dim + 1; ++m)
    if (radical_power(A, m).dim() == 0) return m;
  fail("RadicalUnavailable", "radical filtration does not terminate");
}

Subspace center(const SCAlgebra& A) {
  ff::RowBasis rows(A.field, A.dim);
  const std::vector<int>& gens = A.gens;
  for (int g : gens)
    for (int t = 0; t < A.dim; ++t) {
      std::vector<std::pair<int, Elem>> row;
      for (int m = 0; m < A.dim; ++m) {
        Elem coef = 0;
        for (const auto& [s, c] : A.basis_prod(m, g))
          if (s == t) coef = A.field.add(coef, c);
        for (const auto& [s, c] : A.basis_prod(g, m))
          if (s == t) coef = A.field.sub(coef, c);
        if (coef != 0) row.emplace_back(m, coef);
      }
      rows.add_sparse(row);
    }
  Subspace Z = rows.kernel();
  for (int a = 0; a < Z.dim(); ++a) {
    Vec z = Z.basis().row(a);
    for (int j = 0; j < A.dim; ++j)
      check(A.commutator(z, A.basis(j)) == A.zero(), "InternalCheckFailed",
            "center candidate does not centralize the full basis");
  }
  return Z;
}

QuotientAlgebra quotient_algebra(const SCAlgebra& A, const Subspace& ideal) {
  check(ideal.ambient() == A.dim && ideal.field().same_field(A.field), "DimensionMismatch",
        "ideal does not live in this algebra");
  for (int a = 0; a < ideal.dim(); ++a) {
    Vec v = ideal.basis().row(a);
    for (int j = 0; j < A.dim; ++j) {
      check(ideal.contains(A.mul(A.basis(j), v)) && ideal.contains(A.mul(v, A.basis(j))),
            "NotAnIdeal", "subspace is not a two-sided ideal");
    }
  }

  std::vector<bool> is_pivot(A.dim, false);
  for (int a = 0; a < ideal.dim(); ++a) {
    int c = 0;
    while (c < A.dim && ideal.basis().at(a, c) == 0) ++c;
    is_pivot[c] = true;
  }
  std::vector<int> compl_cols;
  for (int c = 0; c < A.dim; ++c)
    if (!is_pivot[c]) compl_cols.push_back(c);
  const int q = static_cast<int>(compl_cols.size());

  QuotientAlgebra Q{SCAlgebra{}, MatrixFq(A.field, q, A.dim), MatrixFq(A.field, A.dim, q)};
  for (int t = 0; t < A.dim; ++t) {
    Vec red = ideal.reduce(A.basis(t));
    for (int s = 0; s < q; ++s) Q.proj.at(s, t) = red[compl_cols[s]];
  }
  for (int s = 0; s < q; ++s) Q.section.at(compl_cols[s], s) = A.field.one();

  auto project = [&](const Vec& v) {
    Vec out(q, 0);
    for (int s = 0; s < q; ++s) {
      Elem acc = 0;
      for (int t = 0; t < A.dim; ++t) acc = A.field.add(acc, A.field.mul(Q.proj.at(s, t), v[t]));
      out[s] = acc;
    }
    return out;
  };

  SCAlgebra& B = Q.Abar;
  B.field = A.field;
  B.dim = q;
  for (int s = 0; s < q; ++s) B.labels.push_back(A.labels[compl_cols[s]]);
  B.unit = project(A.unit);
  B.prod.resize(static_cast<std::size_t>(q) * q);
  for (int i = 0; i < B.dim; ++i)
    for (int j = 0; j < B.dim; ++j) {
      Vec p = project(A.mul(A.basis(compl_cols[i]), A.basis(compl_cols[j])));
      auto& cell = B.prod[static_cast<std::size_t>(i) * q + j];
      for (int t = 0; t < q; ++t)
        if (p[t] != 0) cell.emplace_back(t, p[t]);
    }
  B.gens.resize(q);
  for (int i = 0; i < q; ++i) B.gens[i] = i;
  validate_algebra(B);
  return Q;
}

}  // namespace tga::algebra
