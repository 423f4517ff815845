#pragma once

// Exact arithmetic in F_{p^n} (n <= 4) and dense linear algebra over it.
// Elements are stored as integer codes: the base-p digit vector of the
// representing polynomial, so codes are canonical and comparable.

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "tga/error.hpp"

namespace tga::ff {

using Elem = std::uint32_t;

class Field {
 public:
  Field() = default;

  static Field prime(std::uint32_t p) { return make(p, 1); }

  // If modulus is empty, the lexicographically smallest monic irreducible
  // polynomial of degree n is chosen (coefficients ordered from x^{n-1} down
  // to the constant term). A supplied modulus is given as coefficients
  // c_0..c_n of c_0 + c_1 x + ... + c_n x^n and must be monic irreducible.
  static Field make(std::uint32_t p, int n, const std::vector<std::uint32_t>& modulus = {});

  std::uint32_t characteristic() const;
  int degree() const;
  std::uint64_t order() const;
  // Coefficients c_0..c_n of the defining polynomial (degree() >= 2 only).
  const std::vector<std::uint32_t>& modulus() const;

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  bool is_zero(Elem a) const { return a == 0; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;  // DivisionByZero on 0
  Elem pow(Elem a, std::int64_t e) const;

  Elem from_int(std::int64_t v) const;  // embedding of the prime subfield
  Elem from_coeffs(const std::vector<std::uint32_t>& c) const;
  std::vector<std::uint32_t> coeffs(Elem a) const;

  // Multiplicative order of a nonzero element.
  int mult_order(Elem a) const;
  // Smallest element code of multiplicative order exactly m, or -1 if none.
  std::int64_t element_of_order(int m) const;

  // "c0" for prime fields, "c0+c1*t+..." (all n terms) otherwise.
  std::string to_string(Elem a) const;
  Elem parse(const std::string& s) const;

  bool same_field(const Field& o) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

struct MatrixFq {
  Field field;
  int rows = 0;
  int cols = 0;
  std::vector<Elem> a;  // row-major

  MatrixFq() = default;
  MatrixFq(Field f, int r, int c) : field(std::move(f)), rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}

  Elem& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  Elem at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  std::vector<Elem> row(int i) const {
    return std::vector<Elem>(a.begin() + static_cast<std::ptrdiff_t>(i) * cols,
                             a.begin() + static_cast<std::ptrdiff_t>(i + 1) * cols);
  }
  void set_row(int i, const std::vector<Elem>& r);

  bool operator==(const MatrixFq& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

MatrixFq mat_identity(const Field& f, int n);
MatrixFq mat_add(const MatrixFq& x, const MatrixFq& y);
MatrixFq mat_sub(const MatrixFq& x, const MatrixFq& y);
MatrixFq mat_mul(const MatrixFq& x, const MatrixFq& y);
MatrixFq mat_scale(const MatrixFq& x, Elem c);
MatrixFq mat_transpose(const MatrixFq& x);
MatrixFq mat_pow(const MatrixFq& x, std::int64_t e);
std::vector<Elem> mat_apply(const MatrixFq& x, const std::vector<Elem>& v);
bool mat_is_zero(const MatrixFq& x);

// Reduced row echelon form: leading ones, pivot columns increasing, pivot
// columns cleared above and below. Unique for a given row space, so equal row
// spaces give byte-equal matrices.
MatrixFq mat_rref(const MatrixFq& m);
int mat_rank(const MatrixFq& m);

// Canonical basis (RREF rows) of the right kernel {x : Mx = 0}.
MatrixFq mat_kernel(const MatrixFq& m);

struct SolveResult {
  bool feasible = false;
  std::vector<Elem> x;            // one solution when feasible
  std::vector<Elem> certificate;  // y with y^T M = 0 and y^T b != 0 otherwise
};

SolveResult mat_solve(const MatrixFq& m, const std::vector<Elem>& b);

// A subspace of k^n held by its unique RREF basis; equality of subspaces is
// equality of the basis matrices.
class Subspace {
 public:
  Subspace() = default;
  static Subspace span(const MatrixFq& vectors);           // rows span
  static Subspace zero(const Field& f, int ambient_dim);
  static Subspace full(const Field& f, int ambient_dim);

  int dim() const { return basis_.rows; }
  int ambient() const { return basis_.cols; }
  const MatrixFq& basis() const { return basis_; }
  const Field& field() const { return basis_.field; }

  bool contains(const std::vector<Elem>& v) const;
  bool contains(const Subspace& other) const;
  // Residual of v after reduction against the basis (zero iff contained).
  std::vector<Elem> reduce(const std::vector<Elem>& v) const;

  Subspace sum(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;

  bool operator==(const Subspace& o) const { return basis_ == o.basis_; }

 private:
  MatrixFq basis_;
};

// Incremental row-space accumulator for large sparse systems. Rows are
// reduced against the current echelon basis as they arrive; the final kernel
// is extracted by back substitution and canonicalized via RREF.
class RowBasis {
 public:
  RowBasis(Field f, int width);

  // Returns true if the row enlarged the basis.
  bool add_dense(std::vector<Elem> row);
  bool add_sparse(const std::vector<std::pair<int, Elem>>& row);

  int rank() const { return static_cast<int>(rows_.size()); }
  int width() const { return width_; }

  // Canonical RREF basis of {x : Rx = 0} where R is everything added so far.
  Subspace kernel() const;
  // Canonical RREF basis of the accumulated row space.
  Subspace row_space() const;

 private:
  void reduce_inplace(std::vector<Elem>& row) const;

  Field field_;
  int width_;
  std::vector<std::vector<Elem>> rows_;  // echelon rows, leading coefficient 1
  std::vector<int> pivot_of_row_;
  std::vector<int> row_of_col_;  // -1 when the column has no pivot
};

}  // namespace tga::ff
