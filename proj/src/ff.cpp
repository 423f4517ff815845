#include "tga/ff.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace tga::ff {

namespace {

constexpr std::uint32_t kMaxPrime = 1u << 15;  // products fit in 64 bits with slack
constexpr int kMaxDegree = 4;
constexpr std::uint64_t kMulTableLimit = 2048;  // build q*q table only for small q

bool is_prime_u32(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

using Poly = std::vector<std::uint32_t>;  // c_0 + c_1 x + ..., coefficients mod p

Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  const int dm = static_cast<int>(m.size()) - 1;
  while (static_cast<int>(a.size()) - 1 >= dm) {
    const std::uint32_t lead = a.back();
    if (lead != 0) {
      const int shift = static_cast<int>(a.size()) - 1 - dm;
      // m is monic, so subtract lead * x^shift * m
      for (int i = 0; i <= dm; ++i) {
        std::uint64_t v = a[shift + i] + static_cast<std::uint64_t>(lead) * (p - m[i] % p) % p;
        a[shift + i] = static_cast<std::uint32_t>(v % p);
      }
    }
    a.pop_back();
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
  Poly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
  }
  return poly_mod(std::move(prod), m, p);
}

bool poly_divides(const Poly& divisor, Poly dividend, std::uint32_t p) {
  Poly r = poly_mod(std::move(dividend), divisor, p);
  return std::all_of(r.begin(), r.end(), [](std::uint32_t c) { return c == 0; });
}

bool poly_is_irreducible(const Poly& m, std::uint32_t p) {
  const int n = static_cast<int>(m.size()) - 1;
  if (n == 1) return true;
  // no roots (settles degrees 2 and 3)
  for (std::uint32_t r = 0; r < p; ++r) {
    std::uint64_t val = 0, pw = 1;
    for (std::uint32_t c : m) {
      val = (val + c * pw) % p;
      pw = pw * r % p;
    }
    if (val == 0) return false;
  }
  if (n <= 3) return true;
  // degree 4: also no monic quadratic factors
  for (std::uint32_t c1 = 0; c1 < p; ++c1)
    for (std::uint32_t c0 = 0; c0 < p; ++c0)
      if (poly_divides(Poly{c0, c1, 1}, m, p)) return false;
  return true;
}

}  // namespace

struct Field::Impl {
  std::uint32_t p = 0;
  int n = 1;
  std::uint64_t q = 0;
  Poly modulus;  // empty for prime fields

  std::vector<Elem> mul_table;  // q*q, only when small
  std::vector<Elem> inv_table;  // size q, inv_table[0] unused

  Elem mul_slow(Elem a, Elem b) const {
    Poly pa = decode(a), pb = decode(b);
    return encode(poly_mulmod(pa, pb, modulus, p));
  }

  Poly decode(Elem a) const {
    Poly c(n, 0);
    for (int i = 0; i < n; ++i) {
      c[i] = a % p;
      a /= p;
    }
    return c;
  }

  Elem encode(const Poly& c) const {
    Elem v = 0;
    for (int i = n - 1; i >= 0; --i) v = static_cast<Elem>(v * p + (i < static_cast<int>(c.size()) ? c[i] % p : 0));
    return v;
  }
};

Field Field::make(std::uint32_t p, int n, const std::vector<std::uint32_t>& modulus) {
  check(is_prime_u32(p), "NonPrime", "characteristic " + std::to_string(p) + " is not prime");
  check(p < kMaxPrime, "CharacteristicTooLarge",
        "characteristic must be below " + std::to_string(kMaxPrime));
  check(n >= 1 && n <= kMaxDegree, "DegreeOutOfRange", "extension degree must be in [1,4]");

  auto impl = std::make_shared<Impl>();
  impl->p = p;
  impl->n = n;
  impl->q = 1;
  for (int i = 0; i < n; ++i) impl->q *= p;

  if (n >= 2) {
    if (!modulus.empty()) {
      check(static_cast<int>(modulus.size()) == n + 1, "ReducibleModulus",
            "modulus must have degree exactly " + std::to_string(n));
      Poly m = modulus;
      for (auto& c : m) c %= p;
      check(m.back() == 1, "ReducibleModulus", "modulus must be monic");
      check(poly_is_irreducible(m, p), "ReducibleModulus", "modulus is reducible");
      impl->modulus = std::move(m);
    } else {
      // lexicographic scan over coefficient tuples (c_{n-1}, ..., c_0)
      std::uint64_t count = 1;
      for (int i = 0; i < n; ++i) count *= p;
      for (std::uint64_t code = 0; code < count; ++code) {
        Poly m(n + 1, 0);
        m[n] = 1;
        std::uint64_t rest = code;
        for (int i = 0; i < n; ++i) {
          m[i] = static_cast<std::uint32_t>(rest % p);
          rest /= p;
        }
        if (poly_is_irreducible(m, p)) {
          impl->modulus = std::move(m);
          break;
        }
      }
      check(!impl->modulus.empty(), "ReducibleModulus", "no irreducible modulus found");
    }

    if (impl->q <= kMulTableLimit) {
      impl->mul_table.assign(impl->q * impl->q, 0);
      for (std::uint64_t a = 0; a < impl->q; ++a)
        for (std::uint64_t b = a; b < impl->q; ++b) {
          Elem v = impl->mul_slow(static_cast<Elem>(a), static_cast<Elem>(b));
          impl->mul_table[a * impl->q + b] = v;
          impl->mul_table[b * impl->q + a] = v;
        }
    }
  }

  if (impl->q <= 65536) {
    impl->inv_table.assign(impl->q, 0);
    Field f;
    f.impl_ = impl;
    for (std::uint64_t a = 1; a < impl->q; ++a) {
      // Fermat: a^{q-2}
      impl->inv_table[a] = f.pow(static_cast<Elem>(a), static_cast<std::int64_t>(impl->q) - 2);
    }
  }

  Field f;
  f.impl_ = impl;
  return f;
}

std::uint32_t Field::characteristic() const { return impl_->p; }
int Field::degree() const { return impl_->n; }
std::uint64_t Field::order() const { return impl_->q; }
const std::vector<std::uint32_t>& Field::modulus() const { return impl_->modulus; }

bool Field::same_field(const Field& o) const {
  return impl_->p == o.impl_->p && impl_->n == o.impl_->n && impl_->modulus == o.impl_->modulus;
}

Elem Field::add(Elem a, Elem b) const {
  const auto& im = *impl_;
  if (im.n == 1) {
    Elem s = a + b;
    return s >= im.p ? s - im.p : s;
  }
  Elem out = 0, mult = 1;
  for (int i = 0; i < im.n; ++i) {
    Elem da = a % im.p, db = b % im.p;
    a /= im.p;
    b /= im.p;
    Elem s = da + db;
    if (s >= im.p) s -= im.p;
    out += s * mult;
    mult *= im.p;
  }
  return out;
}

Elem Field::neg(Elem a) const {
  const auto& im = *impl_;
  if (im.n == 1) return a == 0 ? 0 : im.p - a;
  Elem out = 0, mult = 1;
  for (int i = 0; i < im.n; ++i) {
    Elem d = a % im.p;
    a /= im.p;
    out += (d == 0 ? 0 : im.p - d) * mult;
    mult *= im.p;
  }
  return out;
}

Elem Field::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem Field::mul(Elem a, Elem b) const {
  const auto& im = *impl_;
  if (im.n == 1) return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % im.p);
  if (!im.mul_table.empty()) return im.mul_table[static_cast<std::uint64_t>(a) * im.q + b];
  return im.mul_slow(a, b);
}

Elem Field::inv(Elem a) const {
  check(a != 0, "DivisionByZero", "inverse of zero");
  const auto& im = *impl_;
  if (!im.inv_table.empty()) return im.inv_table[a];
  return pow(a, static_cast<std::int64_t>(im.q) - 2);
}

Elem Field::pow(Elem a, std::int64_t e) const {
  const std::int64_t qm1 = static_cast<std::int64_t>(impl_->q) - 1;
  if (a == 0) {
    check(e > 0 || e == 0, "DivisionByZero", "0 raised to a negative power");
    return e == 0 ? one() : zero();
  }
  e %= qm1;
  if (e < 0) e += qm1;
  Elem result = one(), base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

Elem Field::from_int(std::int64_t v) const {
  std::int64_t r = v % impl_->p;
  if (r < 0) r += impl_->p;
  return static_cast<Elem>(r);
}

Elem Field::from_coeffs(const std::vector<std::uint32_t>& c) const {
  check(static_cast<int>(c.size()) <= impl_->n, "DegreeOutOfRange", "too many coefficients");
  return impl_->encode(c);
}

std::vector<std::uint32_t> Field::coeffs(Elem a) const { return impl_->decode(a); }

int Field::mult_order(Elem a) const {
  check(a != 0, "DivisionByZero", "order of zero");
  int k = 1;
  Elem v = a;
  while (v != one()) {
    v = mul(v, a);
    ++k;
  }
  return k;
}

std::int64_t Field::element_of_order(int m) const {
  for (std::uint64_t a = 1; a < impl_->q; ++a)
    if (mult_order(static_cast<Elem>(a)) == m) return static_cast<std::int64_t>(a);
  return -1;
}

std::string Field::to_string(Elem a) const {
  const auto& im = *impl_;
  if (im.n == 1) return std::to_string(a);
  auto c = im.decode(a);
  std::ostringstream out;
  for (int i = 0; i < im.n; ++i) {
    if (i > 0) out << "+";
    out << c[i];
    if (i == 1) out << "*t";
    if (i >= 2) out << "*t^" << i;
  }
  return out.str();
}

Elem Field::parse(const std::string& s) const {
  const auto& im = *impl_;
  Poly c(im.n, 0);
  std::string cur;
  auto flush = [&](const std::string& term) {
    if (term.empty()) fail("ParseError", "empty term in field element '" + s + "'");
    bool negative = false;
    std::size_t pos = 0;
    if (term[0] == '-') {
      negative = true;
      pos = 1;
    }
    std::string body = term.substr(pos);
    std::int64_t coeff = 1;
    int expo = 0;
    auto star = body.find('*');
    std::string coeff_part, t_part;
    if (body.find('t') == std::string::npos) {
      coeff_part = body;
    } else if (star != std::string::npos) {
      coeff_part = body.substr(0, star);
      t_part = body.substr(star + 1);
    } else {
      t_part = body;
    }
    if (!coeff_part.empty()) {
      for (char ch : coeff_part)
        if (!std::isdigit(static_cast<unsigned char>(ch)))
          fail("ParseError", "bad coefficient in '" + s + "'");
      coeff = std::stoll(coeff_part);
    }
    if (!t_part.empty()) {
      if (t_part == "t") {
        expo = 1;
      } else if (t_part.rfind("t^", 0) == 0) {
        expo = std::stoi(t_part.substr(2));
      } else {
        fail("ParseError", "bad term '" + term + "' in '" + s + "'");
      }
    }
    if (expo >= im.n) fail("ParseError", "exponent too large in '" + s + "'");
    std::int64_t v = coeff % im.p;
    if (negative) v = -v;
    v %= im.p;
    if (v < 0) v += im.p;
    c[expo] = static_cast<std::uint32_t>((c[expo] + v) % im.p);
  };

  std::string compact;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) compact += ch;
  if (compact.empty()) fail("ParseError", "empty field element");
  std::size_t i = 0;
  while (i < compact.size()) {
    std::size_t j = i + 1;  // keep a leading sign with its term
    while (j < compact.size() && compact[j] != '+' && compact[j] != '-') ++j;
    flush(compact.substr(i, j - i));
    i = (j < compact.size() && compact[j] == '+') ? j + 1 : j;
  }
  return impl_->encode(c);
}

void MatrixFq::set_row(int i, const std::vector<Elem>& r) {
  check(static_cast<int>(r.size()) == cols, "DimensionMismatch", "row length mismatch");
  std::copy(r.begin(), r.end(), a.begin() + static_cast<std::ptrdiff_t>(i) * cols);
}

MatrixFq mat_identity(const Field& f, int n) {
  MatrixFq m(f, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = f.one();
  return m;
}

MatrixFq mat_add(const MatrixFq& x, const MatrixFq& y) {
  check(x.rows == y.rows && x.cols == y.cols, "DimensionMismatch", "matrix add shape mismatch");
  MatrixFq out(x.field, x.rows, x.cols);
  for (std::size_t i = 0; i < x.a.size(); ++i) out.a[i] = x.field.add(x.a[i], y.a[i]);
  return out;
}

MatrixFq mat_sub(const MatrixFq& x, const MatrixFq& y) {
  check(x.rows == y.rows && x.cols == y.cols, "DimensionMismatch", "matrix sub shape mismatch");
  MatrixFq out(x.field, x.rows, x.cols);
  for (std::size_t i = 0; i < x.a.size(); ++i) out.a[i] = x.field.sub(x.a[i], y.a[i]);
  return out;
}

MatrixFq mat_mul(const MatrixFq& x, const MatrixFq& y) {
  check(x.cols == y.rows, "DimensionMismatch", "matrix mul shape mismatch");
  const Field& f = x.field;
  MatrixFq out(f, x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      Elem c = x.at(i, k);
      if (c == 0) continue;
      for (int j = 0; j < y.cols; ++j) {
        Elem prod = f.mul(c, y.at(k, j));
        out.at(i, j) = f.add(out.at(i, j), prod);
      }
    }
  return out;
}

MatrixFq mat_scale(const MatrixFq& x, Elem c) {
  MatrixFq out(x.field, x.rows, x.cols);
  for (std::size_t i = 0; i < x.a.size(); ++i) out.a[i] = x.field.mul(x.a[i], c);
  return out;
}

MatrixFq mat_transpose(const MatrixFq& x) {
  MatrixFq out(x.field, x.cols, x.rows);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) out.at(j, i) = x.at(i, j);
  return out;
}

MatrixFq mat_pow(const MatrixFq& x, std::int64_t e) {
  check(x.rows == x.cols, "DimensionMismatch", "matrix power of a non-square matrix");
  check(e >= 0, "DimensionMismatch", "negative matrix power");
  MatrixFq result = mat_identity(x.field, x.rows);
  MatrixFq base = x;
  while (e > 0) {
    if (e & 1) result = mat_mul(result, base);
    base = mat_mul(base, base);
    e >>= 1;
  }
  return result;
}

std::vector<Elem> mat_apply(const MatrixFq& x, const std::vector<Elem>& v) {
  check(static_cast<int>(v.size()) == x.cols, "DimensionMismatch", "matrix apply shape mismatch");
  std::vector<Elem> out(x.rows, 0);
  const Field& f = x.field;
  for (int i = 0; i < x.rows; ++i) {
    Elem acc = 0;
    for (int j = 0; j < x.cols; ++j)
      if (x.at(i, j) != 0 && v[j] != 0) acc = f.add(acc, f.mul(x.at(i, j), v[j]));
    out[i] = acc;
  }
  return out;
}

bool mat_is_zero(const MatrixFq& x) {
  return std::all_of(x.a.begin(), x.a.end(), [](Elem e) { return e == 0; });
}

namespace {

// Gauss-Jordan in place; returns pivot columns.
std::vector<int> rref_inplace(MatrixFq& m) {
  const Field& f = m.field;
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int sel = -1;
    for (int i = r; i < m.rows; ++i)
      if (m.at(i, c) != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
    const Elem lead_inv = f.inv(m.at(r, c));
    for (int j = c; j < m.cols; ++j) m.at(r, j) = f.mul(m.at(r, j), lead_inv);
    for (int i = 0; i < m.rows; ++i) {
      if (i == r) continue;
      const Elem factor = m.at(i, c);
      if (factor == 0) continue;
      for (int j = c; j < m.cols; ++j)
        m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, m.at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

MatrixFq mat_rref(const MatrixFq& m) {
  MatrixFq out = m;
  std::vector<int> pivots = rref_inplace(out);
  out.rows = static_cast<int>(pivots.size());
  out.a.resize(static_cast<std::size_t>(out.rows) * out.cols);
  return out;
}

int mat_rank(const MatrixFq& m) {
  MatrixFq tmp = m;
  return static_cast<int>(rref_inplace(tmp).size());
}

MatrixFq mat_kernel(const MatrixFq& m) {
  MatrixFq r = m;
  std::vector<int> pivots = rref_inplace(r);
  const Field& f = m.field;
  std::vector<bool> is_pivot(m.cols, false);
  for (int c : pivots) is_pivot[c] = true;

  MatrixFq ker(f, m.cols - static_cast<int>(pivots.size()), m.cols);
  int kr = 0;
  for (int c = 0; c < m.cols; ++c) {
    if (is_pivot[c]) continue;
    ker.at(kr, c) = f.one();
    for (std::size_t pi = 0; pi < pivots.size(); ++pi)
      ker.at(kr, pivots[pi]) = f.neg(r.at(static_cast<int>(pi), c));
    ++kr;
  }
  rref_inplace(ker);  // canonical
  return ker;
}

SolveResult mat_solve(const MatrixFq& m, const std::vector<Elem>& b) {
  check(static_cast<int>(b.size()) == m.rows, "DimensionMismatch", "mat_solve shape mismatch");
  const Field& f = m.field;
  // augment with b and with the identity to track row operations
  MatrixFq aug(f, m.rows, m.cols + 1 + m.rows);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols) = b[i];
    aug.at(i, m.cols + 1 + i) = f.one();
  }
  // eliminate only on the first m.cols columns
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int sel = -1;
    for (int i = r; i < m.rows; ++i)
      if (aug.at(i, c) != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != r)
      for (int j = 0; j < aug.cols; ++j) std::swap(aug.at(sel, j), aug.at(r, j));
    const Elem lead_inv = f.inv(aug.at(r, c));
    for (int j = 0; j < aug.cols; ++j) aug.at(r, j) = f.mul(aug.at(r, j), lead_inv);
    for (int i = 0; i < m.rows; ++i) {
      if (i == r) continue;
      const Elem factor = aug.at(i, c);
      if (factor == 0) continue;
      for (int j = 0; j < aug.cols; ++j)
        aug.at(i, j) = f.sub(aug.at(i, j), f.mul(factor, aug.at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }

  SolveResult res;
  for (int i = r; i < m.rows; ++i) {
    if (aug.at(i, m.cols) != 0) {  // inconsistent row: 0 = nonzero
      res.feasible = false;
      res.certificate.resize(m.rows);
      for (int j = 0; j < m.rows; ++j) res.certificate[j] = aug.at(i, m.cols + 1 + j);
      return res;
    }
  }
  res.feasible = true;
  res.x.assign(m.cols, 0);
  for (std::size_t pi = 0; pi < pivots.size(); ++pi) res.x[pivots[pi]] = aug.at(static_cast<int>(pi), m.cols);
  return res;
}

Subspace Subspace::span(const MatrixFq& vectors) {
  Subspace s;
  s.basis_ = mat_rref(vectors);
  return s;
}

Subspace Subspace::zero(const Field& f, int ambient_dim) {
  Subspace s;
  s.basis_ = MatrixFq(f, 0, ambient_dim);
  return s;
}

Subspace Subspace::full(const Field& f, int ambient_dim) {
  Subspace s;
  s.basis_ = mat_identity(f, ambient_dim);
  return s;
}

std::vector<Elem> Subspace::reduce(const std::vector<Elem>& v) const {
  check(static_cast<int>(v.size()) == basis_.cols, "DimensionMismatch", "subspace reduce shape mismatch");
  const Field& f = basis_.field;
  std::vector<Elem> r = v;
  for (int i = 0; i < basis_.rows; ++i) {
    int pc = -1;
    for (int j = 0; j < basis_.cols; ++j)
      if (basis_.at(i, j) != 0) {
        pc = j;
        break;
      }
    if (pc < 0 || r[pc] == 0) continue;
    const Elem factor = r[pc];
    for (int j = pc; j < basis_.cols; ++j)
      r[j] = f.sub(r[j], f.mul(factor, basis_.at(i, j)));
  }
  return r;
}

bool Subspace::contains(const std::vector<Elem>& v) const {
  auto r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](Elem e) { return e == 0; });
}

bool Subspace::contains(const Subspace& other) const {
  for (int i = 0; i < other.basis_.rows; ++i)
    if (!contains(other.basis_.row(i))) return false;
  return true;
}

Subspace Subspace::sum(const Subspace& other) const {
  check(basis_.cols == other.basis_.cols, "DimensionMismatch", "subspace sum ambient mismatch");
  MatrixFq stacked(basis_.field, basis_.rows + other.basis_.rows, basis_.cols);
  std::copy(basis_.a.begin(), basis_.a.end(), stacked.a.begin());
  std::copy(other.basis_.a.begin(), other.basis_.a.end(),
            stacked.a.begin() + static_cast<std::ptrdiff_t>(basis_.rows) * basis_.cols);
  return span(stacked);
}

Subspace Subspace::intersect(const Subspace& other) const {
  check(basis_.cols == other.basis_.cols, "DimensionMismatch", "subspace intersect ambient mismatch");
  // u = lambda * basis lies in `other` iff its residual there vanishes;
  // the residual is linear in lambda.
  const Field& f = basis_.field;
  MatrixFq residuals(f, basis_.rows, basis_.cols);
  for (int i = 0; i < basis_.rows; ++i) residuals.set_row(i, other.reduce(basis_.row(i)));
  MatrixFq lam = mat_kernel(mat_transpose(residuals));
  MatrixFq vecs(f, lam.rows, basis_.cols);
  for (int i = 0; i < lam.rows; ++i) {
    for (int j = 0; j < basis_.rows; ++j) {
      Elem c = lam.at(i, j);
      if (c == 0) continue;
      for (int k = 0; k < basis_.cols; ++k)
        vecs.at(i, k) = f.add(vecs.at(i, k), f.mul(c, basis_.at(j, k)));
    }
  }
  return span(vecs);
}

RowBasis::RowBasis(Field f, int width) : field_(std::move(f)), width_(width), row_of_col_(width, -1) {}

void RowBasis::reduce_inplace(std::vector<Elem>& row) const {
  const Field& f = field_;
  const bool prime_field = f.degree() == 1;
  const std::uint64_t p = f.characteristic();
  for (int c = 0; c < width_; ++c) {
    if (row[c] == 0) continue;
    const int ri = row_of_col_[c];
    if (ri < 0) continue;
    const std::vector<Elem>& pivot_row = rows_[ri];
    const Elem factor = row[c];
    if (prime_field) {
      const std::uint64_t minus = p - factor;  // subtract factor*pivot_row
      for (int j = c; j < width_; ++j) {
        if (pivot_row[j] == 0) continue;
        row[j] = static_cast<Elem>((row[j] + minus * pivot_row[j]) % p);
      }
    } else {
      for (int j = c; j < width_; ++j) {
        if (pivot_row[j] == 0) continue;
        row[j] = f.sub(row[j], f.mul(factor, pivot_row[j]));
      }
    }
  }
}

bool RowBasis::add_dense(std::vector<Elem> row) {
  check(static_cast<int>(row.size()) == width_, "DimensionMismatch", "row width mismatch");
  reduce_inplace(row);
  int lead = -1;
  for (int c = 0; c < width_; ++c)
    if (row[c] != 0) {
      lead = c;
      break;
    }
  if (lead < 0) return false;
  const Elem lead_inv = field_.inv(row[lead]);
  if (row[lead] != field_.one())
    for (int j = lead; j < width_; ++j) row[j] = field_.mul(row[j], lead_inv);
  row_of_col_[lead] = static_cast<int>(rows_.size());
  pivot_of_row_.push_back(lead);
  rows_.push_back(std::move(row));
  return true;
}

bool RowBasis::add_sparse(const std::vector<std::pair<int, Elem>>& row) {
  std::vector<Elem> dense(width_, 0);
  for (auto [c, v] : row) {
    check(c >= 0 && c < width_, "DimensionMismatch", "sparse column out of range");
    dense[c] = field_.add(dense[c], v);
  }
  return add_dense(std::move(dense));
}

Subspace RowBasis::kernel() const {
  const Field& f = field_;
  // order echelon rows by pivot column
  std::vector<int> order(rows_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return pivot_of_row_[a] < pivot_of_row_[b]; });

  std::vector<int> free_cols;
  for (int c = 0; c < width_; ++c)
    if (row_of_col_[c] < 0) free_cols.push_back(c);

  MatrixFq ker(f, static_cast<int>(free_cols.size()), width_);
  for (std::size_t t = 0; t < free_cols.size(); ++t) {
    std::vector<Elem> x(width_, 0);
    x[free_cols[t]] = f.one();
    // back substitution over rows with pivot below the free column is enough:
    // rows with pivot > free col can still involve it, so walk all rows bottom-up
    for (int oi = static_cast<int>(order.size()) - 1; oi >= 0; --oi) {
      const std::vector<Elem>& row = rows_[order[oi]];
      const int pc = pivot_of_row_[order[oi]];
      Elem acc = 0;
      for (int j = pc + 1; j < width_; ++j)
        if (row[j] != 0 && x[j] != 0) acc = f.add(acc, f.mul(row[j], x[j]));
      x[pc] = f.neg(acc);  // leading coefficient is 1
    }
    ker.set_row(static_cast<int>(t), x);
  }
  return Subspace::span(ker);
}

Subspace RowBasis::row_space() const {
  MatrixFq m(field_, static_cast<int>(rows_.size()), width_);
  for (std::size_t i = 0; i < rows_.size(); ++i) m.set_row(static_cast<int>(i), rows_[i]);
  return Subspace::span(m);
}

}  // namespace tga::ff
