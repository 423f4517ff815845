#include "tga/cocycle.hpp"

#include <algorithm>
#include <string>

namespace tga::cocycle {

using ff::Elem;
using pgroup::EGroup;
using pgroup::SemidirectProduct;

bool NormalizedCocycle2::is_trivial() const {
  const Elem one = field.one();
  return std::all_of(table.begin(), table.end(), [&](Elem v) { return v == one; });
}

namespace {

NormalizedCocycle2 validate(NormalizedCocycle2 a) {
  const int n = a.order;
  for (int e = 0; e < n; ++e)
    for (int f = 0; f < n; ++f) {
      Elem v = a.at(e, f);
      check(v < a.field.order(), "ValueOutOfRange", "cocycle value out of range");
      check(v != a.field.zero(), "ValueZero",
            "cocycle value at (" + std::to_string(e) + "," + std::to_string(f) + ") is zero");
    }
  for (int e = 0; e < n; ++e) {
    check(a.at(0, e) == a.field.one() && a.at(e, 0) == a.field.one(), "NotNormalized",
          "alpha(1," + std::to_string(e) + ") or alpha(" + std::to_string(e) + ",1) is not 1");
  }
  for (int e = 0; e < n; ++e)
    for (int f = 0; f < n; ++f)
      for (int g = 0; g < n; ++g) {
        Elem lhs = a.field.mul(a.at(e, f), a.at(a.mul(e, f), g));
        Elem rhs = a.field.mul(a.at(f, g), a.at(e, a.mul(f, g)));
        check(lhs == rhs, "CocycleIdentityFails",
              "cocycle identity fails at (" + std::to_string(e) + "," + std::to_string(f) + "," +
                  std::to_string(g) + ")");
      }
  return a;
}

}  // namespace

NormalizedCocycle2 cocycle_trivial(const ff::Field& k, const EGroup& E) {
  NormalizedCocycle2 a;
  a.field = k;
  a.order = E.order;
  a.cayley = E.cayley;
  a.table.assign(static_cast<std::size_t>(E.order) * E.order, k.one());
  return a;
}

NormalizedCocycle2 cocycle_from_table(const ff::Field& k, const EGroup& E,
                                      const std::vector<std::vector<Elem>>& values) {
  check(static_cast<int>(values.size()) == E.order, "DimensionMismatch",
        "cocycle table must be |E| x |E|");
  NormalizedCocycle2 a;
  a.field = k;
  a.order = E.order;
  a.cayley = E.cayley;
  a.table.reserve(static_cast<std::size_t>(E.order) * E.order);
  for (const auto& row : values) {
    check(static_cast<int>(row.size()) == E.order, "DimensionMismatch",
          "cocycle table must be |E| x |E|");
    a.table.insert(a.table.end(), row.begin(), row.end());
  }
  return validate(std::move(a));
}

NormalizedCocycle2 cocycle_bicharacter(const ff::Field& k, const EGroup& E,
                                       const std::vector<std::vector<std::int64_t>>& pairing,
                                       int root_order) {
  check(E.is_abelian(), "NotAbelian", "bicharacter cocycles need an abelian E");
  check(root_order >= 1, "ValueOutOfRange", "root order must be positive");
  const int r = static_cast<int>(E.generators.size());
  check(static_cast<int>(pairing.size()) == r, "DimensionMismatch",
        "pairing must be (#generators)^2");
  for (const auto& row : pairing)
    check(static_cast<int>(row.size()) == r, "DimensionMismatch",
          "pairing must be (#generators)^2");
  std::int64_t zeta_code = k.element_of_order(root_order);
  check(zeta_code >= 0, "RootOfUnityMissing",
        "field has no element of multiplicative order " + std::to_string(root_order));
  Elem zeta = static_cast<Elem>(zeta_code);

  // exponent coordinates from the stored generator words
  std::vector<std::vector<std::int64_t>> coords(E.order, std::vector<std::int64_t>(r, 0));
  for (int e = 0; e < E.order; ++e)
    for (int gp : E.words[e]) ++coords[e][gp];

  NormalizedCocycle2 a;
  a.field = k;
  a.order = E.order;
  a.cayley = E.cayley;
  a.table.assign(static_cast<std::size_t>(E.order) * E.order, k.one());
  for (int e = 0; e < E.order; ++e)
    for (int f = 0; f < E.order; ++f) {
      std::int64_t exp = 0;
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
          std::int64_t bij = pairing[i][j] % root_order;
          exp = (exp + coords[e][i] * bij % root_order * coords[f][j]) % root_order;
        }
      if (exp < 0) exp += root_order;
      a.table[static_cast<std::size_t>(e) * E.order + f] = k.pow(zeta, exp);
    }
  return validate(std::move(a));
}

std::optional<std::vector<Elem>> coboundary_witness(const NormalizedCocycle2& a, const EGroup& E) {
  check(E.order == a.order && E.cayley == a.cayley, "DimensionMismatch",
        "cocycle does not live on this group");
  const ff::Field& k = a.field;
  const int n = a.order;
  const int r = static_cast<int>(E.generators.size());
  const std::uint64_t units = k.order() - 1;

  std::uint64_t total = 1;
  for (int i = 0; i < r; ++i) {
    total *= units;
    check(total <= (1u << 20), "SearchTooLarge", "coboundary search space too large");
  }

  // enumerate unit values on the generators; mu is then forced along words by
  // mu(eg) = mu(e) mu(g) alpha(e,g)^{-1}
  std::vector<Elem> unit_codes;
  for (Elem v = 1; v < k.order(); ++v) unit_codes.push_back(v);

  // process elements in word-length order so each BFS prefix is already known
  std::vector<int> order_by_len(n);
  for (int e = 0; e < n; ++e) order_by_len[e] = e;
  std::sort(order_by_len.begin(), order_by_len.end(), [&](int x, int y) {
    return E.words[x].size() < E.words[y].size() ||
           (E.words[x].size() == E.words[y].size() && x < y);
  });

  std::vector<int> choice(r, 0);
  for (std::uint64_t tick = 0; tick < total; ++tick) {
    std::uint64_t t = tick;
    for (int i = 0; i < r; ++i) {
      choice[i] = static_cast<int>(t % units);
      t /= units;
    }
    std::vector<Elem> mu(n, k.one());
    bool ok = true;
    for (int e : order_by_len) {
      if (E.words[e].empty()) continue;
      std::vector<int> w = E.words[e];
      int gp = w.back();
      w.pop_back();
      int prefix = 0;
      for (int q : w) prefix = E.mul(prefix, E.generators[q]);
      Elem mug = unit_codes[choice[gp]];
      mu[e] = k.mul(k.mul(mu[prefix], mug), k.inv(a.at(prefix, E.generators[gp])));
    }
    for (int e = 0; e < n && ok; ++e)
      for (int f = 0; f < n && ok; ++f)
        if (a.at(e, f) != k.mul(k.mul(mu[e], mu[f]), k.inv(mu[E.mul(e, f)]))) ok = false;
    if (ok) return mu;
  }
  return std::nullopt;
}

Elem inflated_value(const SemidirectProduct& G, const NormalizedCocycle2& a, std::uint64_t g,
                    std::uint64_t h) {
  check(a.order == G.E.order && a.cayley == G.E.cayley, "DimensionMismatch",
        "cocycle does not live on the E-part of this group");
  return a.at(G.e_part(g), G.e_part(h));
}

std::uint64_t conjugate(const SemidirectProduct& G, std::uint64_t g, std::uint64_t h) {
  return G.mul(G.mul(g, h), G.invert(g));
}

Elem lambda_scalar(const SemidirectProduct& G, const NormalizedCocycle2& a, std::uint64_t g,
                   std::uint64_t h) {
  const ff::Field& k = a.field;
  std::uint64_t gi = G.invert(g);
  Elem v = k.mul(inflated_value(G, a, g, h), inflated_value(G, a, G.mul(g, h), gi));
  return k.mul(v, k.inv(inflated_value(G, a, g, gi)));
}

}  // namespace tga::cocycle
