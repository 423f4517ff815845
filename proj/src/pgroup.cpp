#include "tga/pgroup.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace tga::pgroup {

namespace {

constexpr std::uint64_t kMaxGroupOrder = 1u << 20;

bool is_prime_u32(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

}  // namespace

AbelianPGroup::AbelianPGroup(std::uint32_t p, std::vector<int> exponents)
    : p_(p), exponents_(std::move(exponents)) {
  check(is_prime_u32(p_), "NonPrime", "p = " + std::to_string(p_) + " is not prime");
  check(!exponents_.empty(), "DimensionMismatch", "exponent list must be nonempty");
  order_ = 1;
  for (int a : exponents_) {
    check(a >= 1, "DimensionMismatch", "cyclic factor exponents must be >= 1");
    std::uint64_t m = 1;
    for (int i = 0; i < a; ++i) m *= p_;
    moduli_.push_back(static_cast<std::uint32_t>(m));
    order_ *= m;
    check(order_ <= kMaxGroupOrder, "ClosureExceedsBound", "p-group order too large");
  }
  strides_.assign(exponents_.size(), 1);
  for (int i = rank() - 2; i >= 0; --i) strides_[i] = strides_[i + 1] * moduli_[i + 1];
}

PElem AbelianPGroup::encode(const std::vector<std::uint32_t>& coords) const {
  check(static_cast<int>(coords.size()) == rank(), "DimensionMismatch", "coordinate arity mismatch");
  std::uint64_t code = 0;
  for (int i = 0; i < rank(); ++i) code += static_cast<std::uint64_t>(coords[i] % moduli_[i]) * strides_[i];
  return static_cast<PElem>(code);
}

std::vector<std::uint32_t> AbelianPGroup::decode(PElem u) const {
  std::vector<std::uint32_t> c(rank());
  for (int i = rank() - 1; i >= 0; --i) {
    c[i] = static_cast<std::uint32_t>(u % moduli_[i]);
    u = static_cast<PElem>(u / moduli_[i]);
  }
  return c;
}

PElem AbelianPGroup::add(PElem u, PElem v) const {
  std::uint64_t code = 0;
  for (int i = rank() - 1; i >= 0; --i) {
    std::uint32_t cu = u % moduli_[i], cv = v % moduli_[i];
    u /= moduli_[i];
    v /= moduli_[i];
    std::uint32_t s = cu + cv;
    if (s >= moduli_[i]) s -= moduli_[i];
    code += static_cast<std::uint64_t>(s) * strides_[i];
  }
  return static_cast<PElem>(code);
}

PElem AbelianPGroup::neg(PElem u) const {
  std::uint64_t code = 0;
  for (int i = rank() - 1; i >= 0; --i) {
    std::uint32_t cu = u % moduli_[i];
    u /= moduli_[i];
    code += static_cast<std::uint64_t>(cu == 0 ? 0 : moduli_[i] - cu) * strides_[i];
  }
  return static_cast<PElem>(code);
}

PElem AbelianPGroup::smul(std::int64_t k, PElem u) const {
  std::uint64_t code = 0;
  for (int i = rank() - 1; i >= 0; --i) {
    std::uint32_t cu = u % moduli_[i];
    u /= moduli_[i];
    std::int64_t kk = k % moduli_[i];
    if (kk < 0) kk += moduli_[i];
    code += (static_cast<std::uint64_t>(kk) * cu % moduli_[i]) * strides_[i];
  }
  return static_cast<PElem>(code);
}

PElem AbelianPGroup::generator(int i) const {
  std::vector<std::uint32_t> c(rank(), 0);
  c[i] = 1;
  return encode(c);
}

std::uint64_t AbelianPGroup::order_of(PElem u) const {
  auto c = decode(u);
  std::uint64_t ord = 1;
  for (int i = 0; i < rank(); ++i) {
    std::uint64_t oi = moduli_[i] / gcd_u64(c[i], moduli_[i]);
    ord = ord / gcd_u64(ord, oi) * oi;
  }
  return ord;
}

bool AbelianPGroup::is_elementary() const {
  return std::all_of(exponents_.begin(), exponents_.end(), [](int a) { return a == 1; });
}

std::string AbelianPGroup::describe(PElem u) const {
  auto c = decode(u);
  std::ostringstream out;
  out << "(";
  for (int i = 0; i < rank(); ++i) {
    if (i) out << ",";
    out << c[i];
  }
  out << ")";
  return out.str();
}

PAut paut_identity(const AbelianPGroup& P) {
  PAut f;
  for (int i = 0; i < P.rank(); ++i) f.images.push_back(P.generator(i));
  return f;
}

PElem aut_apply(const AbelianPGroup& P, const PAut& f, PElem u) {
  auto c = P.decode(u);
  PElem out = P.zero();
  for (int i = 0; i < P.rank(); ++i)
    if (c[i] != 0) out = P.add(out, P.smul(c[i], f.images[i]));
  return out;
}

PAut aut_make(const AbelianPGroup& P, const std::vector<PElem>& images) {
  check(static_cast<int>(images.size()) == P.rank(), "DimensionMismatch",
        "automorphism needs one image per generator");
  PAut f{images};
  for (int i = 0; i < P.rank(); ++i) {
    check(images[i] < P.order(), "DimensionMismatch", "generator image out of range");
    // well-defined: the image's order must divide the generator's order
    check(P.moduli()[i] % P.order_of(images[i]) == 0, "NotHomomorphism",
          "image of generator " + std::to_string(i) + " has incompatible order");
  }
  std::vector<bool> seen(P.order(), false);
  for (PElem u = 0; u < P.order(); ++u) {
    PElem v = aut_apply(P, f, u);
    check(!seen[v], "NotBijective", "generator images do not define a bijection");
    seen[v] = true;
  }
  return f;
}

PAut aut_from_coords(const AbelianPGroup& P,
                     const std::vector<std::vector<std::uint32_t>>& image_coords) {
  std::vector<PElem> images;
  images.reserve(image_coords.size());
  for (const auto& c : image_coords) images.push_back(P.encode(c));
  return aut_make(P, images);
}

PAut aut_compose(const AbelianPGroup& P, const PAut& f, const PAut& g) {
  PAut out;
  out.images.reserve(P.rank());
  for (int i = 0; i < P.rank(); ++i) out.images.push_back(aut_apply(P, f, g.images[i]));
  return out;
}

PAut aut_inverse(const AbelianPGroup& P, const PAut& f) {
  PAut id = paut_identity(P);
  PAut prev = id, cur = f;
  for (int guard = 0; guard < (1 << 22); ++guard) {
    if (cur == id) return prev;
    prev = cur;
    cur = aut_compose(P, cur, f);
  }
  fail("ClosureExceedsBound", "automorphism order exceeds iteration guard");
}

int aut_order(const AbelianPGroup& P, const PAut& f) {
  PAut id = paut_identity(P);
  PAut cur = f;
  for (int k = 1; k < (1 << 22); ++k) {
    if (cur == id) return k;
    cur = aut_compose(P, cur, f);
  }
  fail("ClosureExceedsBound", "automorphism order exceeds iteration guard");
}

bool EGroup::is_abelian() const {
  for (int e = 0; e < order; ++e)
    for (int f = e + 1; f < order; ++f)
      if (mul(e, f) != mul(f, e)) return false;
  return true;
}

bool EGroup::image_is_abelian() const {
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (std::size_t j = i + 1; j < generators.size(); ++j) {
      const PAut& a = action[generators[i]];
      const PAut& b = action[generators[j]];
      if (aut_compose(P, a, b) != aut_compose(P, b, a)) return false;
    }
  return true;
}

bool EGroup::acts_freely() const {
  for (int e = 1; e < order; ++e) {
    const PAut& f = action[e];
    for (PElem u = 1; u < P.order(); ++u)
      if (aut_apply(P, f, u) == u) return false;
  }
  return true;
}

namespace {

// Fill words (BFS over right multiplication by generators), inverses, kernel.
void finalize_egroup(EGroup& E) {
  E.words.assign(E.order, {});
  std::vector<bool> reached(E.order, false);
  reached[0] = true;
  std::vector<int> queue{0};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int e = queue[qi];
    for (std::size_t gp = 0; gp < E.generators.size(); ++gp) {
      int next = E.mul(e, E.generators[gp]);
      if (reached[next]) continue;
      reached[next] = true;
      E.words[next] = E.words[e];
      E.words[next].push_back(static_cast<int>(gp));
      queue.push_back(next);
    }
  }
  check(std::all_of(reached.begin(), reached.end(), [](bool b) { return b; }), "NotAGroup",
        "listed generators do not generate the group");

  E.inverse.assign(E.order, -1);
  for (int e = 0; e < E.order; ++e) {
    for (int f = 0; f < E.order; ++f)
      if (E.mul(e, f) == 0 && E.mul(f, e) == 0) {
        E.inverse[e] = f;
        break;
      }
    check(E.inverse[e] >= 0, "NotAGroup", "element without inverse");
  }

  E.kernel.clear();
  PAut id = paut_identity(E.P);
  for (int e = 0; e < E.order; ++e)
    if (E.action[e] == id) E.kernel.push_back(e);
}

}  // namespace

EGroup egroup_close(const AbelianPGroup& P, const std::vector<PAut>& gens, int cap) {
  EGroup E;
  E.P = P;

  std::map<PAut, int> index;
  std::vector<PAut> elems;
  auto intern = [&](const PAut& f) -> int {
    auto it = index.find(f);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(elems.size());
    check(id < cap, "ClosureExceedsBound",
          "automorphism closure exceeds cap of " + std::to_string(cap));
    index.emplace(f, id);
    elems.push_back(f);
    return id;
  };

  intern(paut_identity(P));
  std::vector<PAut> distinct_gens;
  for (const auto& g : gens) {
    check(static_cast<int>(g.images.size()) == P.rank(), "DimensionMismatch",
          "generator arity mismatch");
    aut_make(P, g.images);  // validates
    if (std::find(distinct_gens.begin(), distinct_gens.end(), g) == distinct_gens.end() &&
        !(g == paut_identity(P)))
      distinct_gens.push_back(g);
  }
  for (const auto& g : distinct_gens) E.generators.push_back(intern(g));

  for (std::size_t qi = 0; qi < elems.size(); ++qi)
    for (const auto& g : distinct_gens) {
      PAut prod = aut_compose(P, elems[qi], g);
      intern(prod);
    }

  E.order = static_cast<int>(elems.size());
  check(static_cast<std::uint64_t>(E.order) % P.p() != 0, "OrderDivisibleByP",
        "|E| = " + std::to_string(E.order) + " is divisible by p");
  E.action = elems;
  E.cayley.assign(static_cast<std::size_t>(E.order) * E.order, -1);
  for (int e = 0; e < E.order; ++e)
    for (int f = 0; f < E.order; ++f) {
      auto it = index.find(aut_compose(P, elems[e], elems[f]));
      check(it != index.end(), "NotAGroup", "closure not multiplicatively closed");
      E.cayley[static_cast<std::size_t>(e) * E.order + f] = it->second;
    }
  finalize_egroup(E);
  return E;
}

EGroup egroup_abstract(const AbelianPGroup& P, const std::vector<std::vector<int>>& cayley,
                       const std::vector<PAut>& action) {
  const int n = static_cast<int>(cayley.size());
  check(n >= 1 && n <= 1024, "ClosureExceedsBound", "abstract group order must be in [1,1024]");
  check(static_cast<std::uint64_t>(n) % P.p() != 0, "OrderDivisibleByP",
        "|E| = " + std::to_string(n) + " is divisible by p");
  check(static_cast<int>(action.size()) == n, "DimensionMismatch",
        "need one automorphism per group element");

  EGroup E;
  E.P = P;
  E.order = n;
  E.cayley.assign(static_cast<std::size_t>(n) * n, -1);
  for (int i = 0; i < n; ++i) {
    check(static_cast<int>(cayley[i].size()) == n, "NotAGroup", "Cayley table is not square");
    for (int j = 0; j < n; ++j) {
      check(cayley[i][j] >= 0 && cayley[i][j] < n, "NotAGroup", "Cayley entry out of range");
      E.cayley[static_cast<std::size_t>(i) * n + j] = cayley[i][j];
    }
  }
  // identity must sit at index 0
  for (int j = 0; j < n; ++j)
    check(E.mul(0, j) == j && E.mul(j, 0) == j, "NotAGroup", "element 0 is not an identity");
  // Latin square
  for (int i = 0; i < n; ++i) {
    std::vector<bool> seen_row(n, false), seen_col(n, false);
    for (int j = 0; j < n; ++j) {
      check(!seen_row[E.mul(i, j)], "NotAGroup", "repeated entry in Cayley row");
      seen_row[E.mul(i, j)] = true;
      check(!seen_col[E.mul(j, i)], "NotAGroup", "repeated entry in Cayley column");
      seen_col[E.mul(j, i)] = true;
    }
  }

  // greedy generating set
  {
    std::vector<bool> closed(n, false);
    closed[0] = true;
    int closed_count = 1;
    auto close_over = [&]() {
      bool grew = true;
      while (grew) {
        grew = false;
        for (int a = 0; a < n; ++a) {
          if (!closed[a]) continue;
          for (int g : E.generators) {
            int ag = E.mul(a, g);
            if (!closed[ag]) {
              closed[ag] = true;
              ++closed_count;
              grew = true;
            }
          }
        }
      }
    };
    while (closed_count < n) {
      int pick = -1;
      for (int a = 0; a < n; ++a)
        if (!closed[a]) {
          pick = a;
          break;
        }
      E.generators.push_back(pick);
      closed[pick] = true;
      ++closed_count;
      close_over();
    }
  }

  // Light's associativity test over the generating set
  for (int a : E.generators)
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        check(E.mul(E.mul(x, a), y) == E.mul(x, E.mul(a, y)), "NotAGroup",
              "Cayley table is not associative");

  for (const auto& f : action) aut_make(P, f.images);
  E.action = action;
  check(E.action[0] == paut_identity(P), "ActionNotHomomorphism",
        "identity must act trivially");
  // homomorphism on (e, generator) pairs extends to all products
  for (int e = 0; e < n; ++e)
    for (int g : E.generators)
      check(aut_compose(P, E.action[e], E.action[g]) == E.action[E.mul(e, g)],
            "ActionNotHomomorphism", "action is not a homomorphism");

  finalize_egroup(E);
  return E;
}

EGroup egroup_product(const AbelianPGroup& P12, const EGroup& E1, const EGroup& E2) {
  std::vector<int> expect = E1.P.exponents();
  expect.insert(expect.end(), E2.P.exponents().begin(), E2.P.exponents().end());
  check(P12.p() == E1.P.p() && P12.p() == E2.P.p() && P12.exponents() == expect,
        "DimensionMismatch", "product group must be the concatenation of the two factors");
  const int n1 = E1.order, n2 = E2.order;
  const int n = n1 * n2;
  EGroup E;
  E.P = P12;
  E.order = n;
  E.cayley.assign(static_cast<std::size_t>(n) * n, -1);
  auto idx = [&](int a, int b) { return a * n2 + b; };
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n2; ++b)
      for (int c = 0; c < n1; ++c)
        for (int d = 0; d < n2; ++d)
          E.cayley[static_cast<std::size_t>(idx(a, b)) * n + idx(c, d)] =
              idx(E1.mul(a, c), E2.mul(b, d));

  const int r1 = E1.P.rank();
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n2; ++b) {
      PAut f;
      for (int i = 0; i < P12.rank(); ++i) {
        std::vector<std::uint32_t> img(P12.rank(), 0);
        if (i < r1) {
          auto c1 = E1.P.decode(aut_apply(E1.P, E1.action[a], E1.P.generator(i)));
          for (int t = 0; t < r1; ++t) img[t] = c1[t];
        } else {
          auto c2 = E2.P.decode(aut_apply(E2.P, E2.action[b], E2.P.generator(i - r1)));
          for (int t = 0; t < E2.P.rank(); ++t) img[r1 + t] = c2[t];
        }
        f.images.push_back(P12.encode(img));
      }
      E.action.push_back(f);
    }

  for (int g : E1.generators) E.generators.push_back(idx(g, 0));
  for (int g : E2.generators) E.generators.push_back(idx(0, g));
  finalize_egroup(E);
  return E;
}

SemidirectProduct::SemidirectProduct(AbelianPGroup p, EGroup e) : P(std::move(p)), E(std::move(e)) {
  check(E.P == P, "DimensionMismatch", "E does not act on this P");
  order = P.order() * static_cast<std::uint64_t>(E.order);
}

std::uint64_t SemidirectProduct::mul(std::uint64_t g, std::uint64_t h) const {
  PElem u = p_part(g), v = p_part(h);
  int e = e_part(g), f = e_part(h);
  PElem moved = aut_apply(P, E.action[e], v);
  return index(P.add(u, moved), E.mul(e, f));
}

std::uint64_t SemidirectProduct::invert(std::uint64_t g) const {
  PElem u = p_part(g);
  int e = e_part(g);
  int ei = E.inv(e);
  return index(aut_apply(P, E.action[ei], P.neg(u)), ei);
}

std::string SemidirectProduct::describe(std::uint64_t g) const {
  return P.describe(p_part(g)) + "|e" + std::to_string(e_part(g));
}

ff::MatrixFq EModule::matrix_of(int e) const {
  ff::MatrixFq m = ff::mat_identity(field, dim);
  for (int gp : words[e]) m = ff::mat_mul(m, generator_mats[gp]);
  return m;
}

EModule frattini_module(const AbelianPGroup& P, const EGroup& E) {
  check(E.P == P, "DimensionMismatch", "E does not act on this P");
  EModule M;
  M.field = ff::Field::prime(P.p());
  M.dim = P.rank();
  M.generator_elems = E.generators;
  M.words = E.words;
  for (int g : E.generators) {
    ff::MatrixFq mat(M.field, M.dim, M.dim);
    for (int i = 0; i < M.dim; ++i) {
      auto c = P.decode(aut_apply(P, E.action[g], P.generator(i)));
      for (int j = 0; j < M.dim; ++j) mat.at(j, i) = c[j] % P.p();
    }
    check(ff::mat_rank(mat) == M.dim, "NotBijective",
          "action does not induce an automorphism of P/Phi(P)");
    M.generator_mats.push_back(std::move(mat));
  }
  if (E.order <= 512) {
    // matrices must respect the Cayley table
    std::vector<ff::MatrixFq> all;
    all.reserve(E.order);
    for (int e = 0; e < E.order; ++e) all.push_back(M.matrix_of(e));
    for (int e = 0; e < E.order; ++e)
      for (int f = 0; f < E.order; ++f)
        check(ff::mat_mul(all[e], all[f]) == all[E.mul(e, f)], "ActionNotHomomorphism",
              "module matrices do not respect the group relations");
  }
  return M;
}

bool hyperfocal_is_full(const AbelianPGroup& P, const EGroup& E) {
  EModule M = frattini_module(P, E);
  const int r = M.dim;
  ff::MatrixFq stacked(M.field, r * static_cast<int>(M.generator_mats.size()), r);
  for (std::size_t g = 0; g < M.generator_mats.size(); ++g) {
    ff::MatrixFq diff = ff::mat_sub(M.generator_mats[g], ff::mat_identity(M.field, r));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) stacked.at(static_cast<int>(g) * r + i, j) = diff.at(i, j);
  }
  return ff::mat_rank(stacked) == r;
}

}  // namespace tga::pgroup
