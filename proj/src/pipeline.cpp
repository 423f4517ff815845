#include "tga/pipeline.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace tga::pipeline {

namespace {

using algebra::SCAlgebra;
using ff::Elem;
using ff::MatrixFq;
using ff::Subspace;

const json& require_member(const json& j, const char* key, const char* where) {
  check(j.is_object() && j.contains(key),
        "MissingField", std::string(where) + " must contain \"" + key + "\"");
  return j.at(key);
}

}  // namespace

InputSpec input_from_json(const json& j) {
  try {
    InputSpec in;
    const json& f = require_member(j, "field", "input");
    in.p = require_member(f, "p", "field").get<std::uint32_t>();
    in.n = f.value("n", 1);
    if (f.contains("modulus")) in.modulus = f.at("modulus").get<std::vector<std::uint32_t>>();

    const json& g = require_member(j, "group", "input");
    in.exponents = require_member(g, "exponents", "group").get<std::vector<int>>();

    if (j.contains("e")) {
      const json& e = j.at("e");
      check(!(e.contains("generators") && e.contains("abstract")),
            "BadInput", "e takes generators or abstract, not both");
      if (e.contains("generators"))
        in.e_generators =
            e.at("generators").get<std::vector<std::vector<std::vector<std::uint32_t>>>>();
      if (e.contains("abstract")) {
        const json& a = e.at("abstract");
        InputSpec::AbstractE abs;
        abs.cayley = require_member(a, "cayley", "e.abstract").get<std::vector<std::vector<int>>>();
        abs.action = require_member(a, "action", "e.abstract")
                         .get<std::vector<std::vector<std::vector<std::uint32_t>>>>();
        in.e_abstract = std::move(abs);
      }
    }

    if (j.contains("alpha")) {
      const json& a = j.at("alpha");
      in.alpha.kind = a.value("kind", std::string("trivial"));
      if (in.alpha.kind == "bicharacter") {
        in.alpha.pairing =
            require_member(a, "pairing", "alpha").get<std::vector<std::vector<std::int64_t>>>();
        in.alpha.root_order = a.value("root_order", 1);
      } else if (in.alpha.kind == "table") {
        in.alpha.table =
            require_member(a, "table", "alpha").get<std::vector<std::vector<std::string>>>();
      } else {
        check(in.alpha.kind == "trivial",
              "BadInput", "alpha.kind must be trivial, bicharacter or table");
      }
    }

    if (j.contains("flags")) {
      const json& fl = j.at("flags");
      in.flags.validate_assoc = fl.value("validate_assoc", false);
      in.flags.oracle = fl.value("oracle", false);
      in.flags.seed = fl.value("seed", std::uint64_t{12345});
      in.flags.max_trials = fl.value("max_trials", 64);
    }
    return in;
  } catch (const json::exception& e) {
    fail("BadInput", std::string("malformed input: ") + e.what());
  }
}

json input_to_json(const InputSpec& in) {
  json j;
  json f{{"p", in.p}, {"n", in.n}};
  if (in.modulus) f["modulus"] = *in.modulus;
  j["field"] = std::move(f);
  j["group"] = json{{"exponents", in.exponents}};
  if (in.e_abstract) {
    j["e"] = json{{"abstract", json{{"cayley", in.e_abstract->cayley},
                                    {"action", in.e_abstract->action}}}};
  } else {
    j["e"] = json{{"generators", in.e_generators}};
  }
  json a{{"kind", in.alpha.kind}};
  if (in.alpha.kind == "bicharacter") {
    a["pairing"] = in.alpha.pairing;
    a["root_order"] = in.alpha.root_order;
  }
  if (in.alpha.kind == "table") a["table"] = in.alpha.table;
  j["alpha"] = std::move(a);
  j["flags"] = json{{"validate_assoc", in.flags.validate_assoc},
                    {"oracle", in.flags.oracle},
                    {"seed", in.flags.seed},
                    {"max_trials", in.flags.max_trials}};
  return j;
}

namespace {

void validate_associativity_fully(const SCAlgebra& A) {
  // from_structure_constants already checks dim <= 40; do the rest on demand.
  for (int i = 0; i < A.dim; ++i) {
    const algebra::Vec bi = A.basis(i);
    for (int j = 0; j < A.dim; ++j) {
      const algebra::Vec bij = A.mul(bi, A.basis(j));
      for (int l = 0; l < A.dim; ++l) {
        check(A.mul(bij, A.basis(l)) == A.mul(bi, A.mul(A.basis(j), A.basis(l))),
              "NotAssociative", "product table fails associativity at basis triple (" +
                                    std::to_string(i) + ", " + std::to_string(j) + ", " +
                                    std::to_string(l) + ")");
      }
    }
  }
}

}  // namespace

BuiltInput build_input(const InputSpec& in) {
  ff::Field k = ff::Field::make(in.p, in.n, in.modulus ? *in.modulus : std::vector<std::uint32_t>{});
  check(!in.exponents.empty(), "BadInput", "group.exponents must be nonempty");
  pgroup::AbelianPGroup P(in.p, in.exponents);

  pgroup::EGroup E;
  if (in.e_abstract) {
    check(in.e_generators.empty(), "BadInput", "e takes generators or abstract, not both");
    std::vector<pgroup::PAut> action;
    action.reserve(in.e_abstract->action.size());
    for (const auto& m : in.e_abstract->action) action.push_back(pgroup::aut_from_coords(P, m));
    E = pgroup::egroup_abstract(P, in.e_abstract->cayley, action);
  } else {
    std::vector<pgroup::PAut> gens;
    gens.reserve(in.e_generators.size());
    for (const auto& m : in.e_generators) gens.push_back(pgroup::aut_from_coords(P, m));
    E = pgroup::egroup_close(P, gens);
  }
  check(E.order % in.p != 0, "NotPPrimeOrder",
        "|E| = " + std::to_string(E.order) + " must be coprime to p = " + std::to_string(in.p));

  cocycle::NormalizedCocycle2 alpha;
  if (in.alpha.kind == "trivial") {
    alpha = cocycle::cocycle_trivial(k, E);
  } else if (in.alpha.kind == "bicharacter") {
    alpha = cocycle::cocycle_bicharacter(k, E, in.alpha.pairing, in.alpha.root_order);
  } else if (in.alpha.kind == "table") {
    check(static_cast<int>(in.alpha.table.size()) == E.order,
          "BadInput", "alpha.table must be |E| x |E|");
    std::vector<std::vector<Elem>> tab(in.alpha.table.size());
    for (std::size_t r = 0; r < in.alpha.table.size(); ++r) {
      check(static_cast<int>(in.alpha.table[r].size()) == E.order,
            "BadInput", "alpha.table must be |E| x |E|");
      for (const std::string& s : in.alpha.table[r]) tab[r].push_back(k.parse(s));
    }
    alpha = cocycle::cocycle_from_table(k, E, tab);
  } else {
    fail("BadInput", "alpha.kind must be trivial, bicharacter or table");
  }

  pgroup::SemidirectProduct G(P, E);
  SCAlgebra A = algebra::twisted_group_algebra(k, G, alpha);
  if (in.flags.validate_assoc && A.dim > 40) validate_associativity_fully(A);
  return BuiltInput{std::move(k), std::move(P), std::move(E), std::move(alpha), std::move(A)};
}

namespace {

constexpr const char* kConfirmed = "CONFIRMED";
constexpr const char* kViolation = "VIOLATION";
constexpr const char* kNotApplicable = "NOT_APPLICABLE";

// The two directions of "multiplicity free iff solvable": the forward
// implication needs a multiplicity free module to say anything, the converse
// is only claimed for odd p.
struct SolvAssessment {
  std::string forward, forward_note;
  std::string converse, converse_note;
  bool violated = false;
  std::string predicted_clause;
};

SolvAssessment assess_solvability(bool mfree, bool p_odd, bool solvable) {
  SolvAssessment a;
  if (mfree) {
    a.forward = solvable ? kConfirmed : kViolation;
  } else {
    a.forward = kNotApplicable;
    a.forward_note = "P/Phi(P) not multiplicity free";
  }
  if (p_odd) {
    a.converse = (!solvable || mfree) ? kConfirmed : kViolation;
  } else {
    a.converse = kNotApplicable;
    a.converse_note = "p = 2";
  }
  a.violated = a.forward == kViolation || a.converse == kViolation;
  a.predicted_clause = mfree  ? "solvable (multiplicity free)"
                       : p_odd ? "not solvable (not multiplicity free, p odd)"
                               : "solvability unconstrained (p = 2, not multiplicity free)";
  return a;
}

std::string observed_string(bool radical_ok, bool solvable) {
  return std::string(radical_ok ? "radical-valued" : "not radical-valued") +
         (solvable ? "; solvable" : "; not solvable");
}

std::string join_list(const std::vector<std::string>& xs) {
  std::string out;
  for (const auto& x : xs) {
    if (!out.empty()) out += ", ";
    out += x;
  }
  return out;
}

bool kernel_is_central(const pgroup::EGroup& E) {
  for (int z : E.kernel)
    for (int f = 0; f < E.order; ++f)
      if (E.mul(z, f) != E.mul(f, z)) return false;
  return true;
}

bool columns_in(const MatrixFq& f, const Subspace& S) {
  std::vector<Elem> col(f.rows);
  for (int j = 0; j < f.cols; ++j) {
    for (int i = 0; i < f.rows; ++i) col[i] = f.at(i, j);
    if (!S.contains(col)) return false;
  }
  return true;
}

// Transport Der(kP)^E through the extension map and compare dimensions and
// brackets against HH1 of the full algebra. For commutative kP the inner
// derivations vanish, so Der(kP)^E is its own HH1 and the stored structure
// constants are exact matrix identities.
bool restriction_is_isomorphism(const BuiltInput& b, const hh1::HH1Result& H,
                                const hh1::EStableDerAlgebra& DA) {
  const int d = H.dim();
  if (DA.lie.dim != d) return false;
  if (d == 0) return true;
  try {
    std::vector<MatrixFq> ext;
    ext.reserve(DA.reps.size());
    for (const auto& f : DA.reps) ext.push_back(hh1::extend_estable_derivation(b.A, f));
    MatrixFq T(b.k, d, d);
    for (int i = 0; i < d; ++i) T.set_row(i, hh1::class_coordinates(H, ext[i]));
    if (ff::mat_rank(T) != d) return false;
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) {
        std::vector<Elem> got = hh1::class_coordinates(
            H, ff::mat_sub(ff::mat_mul(ext[i], ext[j]), ff::mat_mul(ext[j], ext[i])));
        std::vector<Elem> want(d, 0);
        for (const auto& [t, c] : DA.lie.basis_bracket(i, j))
          for (int m = 0; m < d; ++m) want[m] = b.k.add(want[m], b.k.mul(c, T.at(t, m)));
        if (got != want) return false;
      }
    }
    return true;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

AnalysisReport analyze(const InputSpec& in) {
  BuiltInput b = build_input(in);
  AnalysisReport rep;
  rep.input = in;
  rep.algebra_dim = b.A.dim;
  rep.hyperfocal_full = pgroup::hyperfocal_is_full(b.P, b.E);
  rep.multiplicity_free = lie::is_multiplicity_free(pgroup::frattini_module(b.P, b.E));

  hh1::HH1Result H = hh1::hh1_via_cocycles(b.A);
  if (in.flags.oracle && b.A.dim <= kOracleDimLimit) {
    hh1::HH1Result O = hh1::hh1_via_oracle(b.A);
    check(O.dim() == H.dim() && O.der == H.der && O.ider == H.ider,
          "OracleMismatch", "cocycle fast path disagrees with the brute force oracle");
    rep.oracle_checked = true;
  }

  rep.hh1_dim = H.dim();
  rep.solvable = lie::is_solvable(H.hh1);
  rep.nilpotent = lie::is_nilpotent(H.hh1);
  lie::SimplicityResult simp = lie::is_simple(H.hh1, in.flags.seed, in.flags.max_trials);
  rep.simplicity = simp.status == lie::SimplicityResult::Status::Simple      ? "Simple"
                   : simp.status == lie::SimplicityResult::Status::NotSimple ? "NotSimple"
                                                                             : "Unknown";
  rep.simplicity_note = simp.note;

  Subspace D1 = hh1::classes_with_rep_in_radical_power(b.A, H, 1);
  Subspace D2 = hh1::classes_with_rep_in_radical_power(b.A, H, 2);
  rep.d1_dim = D1.dim();
  rep.d2_dim = D2.dim();
  rep.d1_covers_hh1 = D1.dim() == H.dim();
  Subspace lift = hh1::p_part_valued_classes(b.A, H);
  rep.decomposition_check = lift.sum(D2) == Subspace::full(b.k, H.dim());

  const bool p_odd = in.p != 2;

  auto fill_solvability = [&](TheoremVerdict& v, bool radical_ok, bool solvable,
                              const std::string& pred_prefix, const std::string& obs_prefix) {
    SolvAssessment a = assess_solvability(rep.multiplicity_free, p_odd, solvable);
    v.forward_status = a.forward;
    v.forward_note = a.forward_note;
    v.converse_status = a.converse;
    v.converse_note = a.converse_note;
    v.predicted = pred_prefix + "radical-valued; " + a.predicted_clause;
    v.observed = obs_prefix + observed_string(radical_ok, solvable);
    v.status = (!radical_ok || a.violated) ? kViolation : kConfirmed;
  };

  {
    TheoremVerdict v;
    v.theorem_id = "fixed_derivations_solvability";
    std::vector<std::string> missing;
    if (!rep.hyperfocal_full) missing.push_back("[P,E] = P");
    if (missing.empty()) {
      v.applicable = true;
      hh1::EStableDerAlgebra DA = hh1::estable_der_algebra(b.k, b.P, b.E);
      Subspace J = algebra::radical_power(DA.AP, 1);
      bool radical = true;
      for (const auto& f : DA.reps) radical = radical && columns_in(f, J);
      fill_solvability(v, radical, lie::is_solvable(DA.lie), "Der(kP)^E: ", "Der(kP)^E: ");
    } else {
      v.status = kNotApplicable;
      v.hypothesis_failed = join_list(missing);
    }
    rep.theorem_verdicts.push_back(std::move(v));
  }

  {
    TheoremVerdict v;
    v.theorem_id = "twisted_semidirect_solvability";
    std::vector<std::string> missing;
    if (!b.E.is_faithful()) missing.push_back("E embeds in Aut(P)");
    if (!b.E.is_abelian()) missing.push_back("E abelian");
    if (!rep.hyperfocal_full) missing.push_back("[P,E] = P");
    if (missing.empty()) {
      v.applicable = true;
      fill_solvability(v, rep.d1_covers_hh1, rep.solvable, "", "");
    } else {
      v.status = kNotApplicable;
      v.hypothesis_failed = join_list(missing);
    }
    rep.theorem_verdicts.push_back(std::move(v));
  }

  {
    TheoremVerdict v;
    v.theorem_id = "free_action_restriction";
    std::vector<std::string> missing;
    if (!b.E.is_faithful()) missing.push_back("E embeds in Aut(P)");
    if (!b.E.acts_freely()) missing.push_back("E acts freely on P minus identity");
    if (!b.alpha.is_trivial()) missing.push_back("alpha trivial");
    if (missing.empty()) {
      v.applicable = true;
      hh1::EStableDerAlgebra DA = hh1::estable_der_algebra(b.k, b.P, b.E);
      const bool iso = restriction_is_isomorphism(b, H, DA);
      if (b.E.order == 1) {
        v.predicted = "restriction to Der(kP)^E is a Lie isomorphism";
        v.observed = iso ? v.predicted : "restriction fails to be a Lie isomorphism";
        v.status = iso ? kConfirmed : kViolation;
      } else {
        check(rep.hyperfocal_full, "InternalCheckFailed",
              "a free action of a nontrivial E must satisfy [P,E] = P");
        fill_solvability(v, rep.d1_covers_hh1, rep.solvable,
                         "restriction is a Lie isomorphism; ",
                         iso ? "restriction is a Lie isomorphism; "
                             : "restriction fails to be a Lie isomorphism; ");
        if (!iso) v.status = kViolation;
      }
    } else {
      v.status = kNotApplicable;
      v.hypothesis_failed = join_list(missing);
    }
    rep.theorem_verdicts.push_back(std::move(v));
  }

  {
    TheoremVerdict v;
    v.theorem_id = "central_kernel_solvability";
    std::vector<std::string> missing;
    if (!rep.hyperfocal_full) missing.push_back("[P,E] = P");
    if (!kernel_is_central(b.E)) missing.push_back("C_E(P) central in E");
    if (!b.E.image_is_abelian()) missing.push_back("E/C_E(P) abelian");
    if (!b.alpha.is_trivial()) missing.push_back("alpha trivial");
    if (missing.empty()) {
      v.applicable = true;
      fill_solvability(v, rep.d1_covers_hh1, rep.solvable, "", "");
    } else {
      v.status = kNotApplicable;
      v.hypothesis_failed = join_list(missing);
    }
    rep.theorem_verdicts.push_back(std::move(v));
  }

  return rep;
}

bool AnalysisReport::has_violation() const {
  return std::any_of(theorem_verdicts.begin(), theorem_verdicts.end(),
                     [](const TheoremVerdict& v) { return v.status == kViolation; });
}

json AnalysisReport::to_json() const {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["input"] = input_to_json(input);
  j["algebra_dim"] = algebra_dim;
  j["oracle_checked"] = oracle_checked;
  j["hyperfocal_full"] = hyperfocal_full;
  j["multiplicity_free"] = multiplicity_free;
  j["hh1_dim"] = hh1_dim;
  j["solvable"] = solvable;
  j["nilpotent"] = nilpotent;
  j["simplicity"] = simplicity;
  j["simplicity_note"] = simplicity_note;
  j["d1_dim"] = d1_dim;
  j["d1_covers_hh1"] = d1_covers_hh1;
  j["d2_dim"] = d2_dim;
  j["decomposition_check"] = decomposition_check;
  json vs = json::array();
  for (const TheoremVerdict& v : theorem_verdicts) {
    vs.push_back(json{{"theorem_id", v.theorem_id},
                      {"applicable", v.applicable},
                      {"status", v.status},
                      {"predicted", v.predicted},
                      {"observed", v.observed},
                      {"hypothesis_failed", v.hypothesis_failed},
                      {"forward_status", v.forward_status},
                      {"forward_note", v.forward_note},
                      {"converse_status", v.converse_status},
                      {"converse_note", v.converse_note}});
  }
  j["theorem_verdicts"] = std::move(vs);
  return j;
}

json hh1_facts(const InputSpec& in) {
  BuiltInput b = build_input(in);
  hh1::HH1Result H = hh1::hh1_via_cocycles(b.A);
  bool oracle_checked = false;
  if (in.flags.oracle && b.A.dim <= kOracleDimLimit) {
    hh1::HH1Result O = hh1::hh1_via_oracle(b.A);
    check(O.dim() == H.dim() && O.der == H.der && O.ider == H.ider,
          "OracleMismatch", "cocycle fast path disagrees with the brute force oracle");
    oracle_checked = true;
  }

  json j;
  j["schema_version"] = kSchemaVersion;
  j["algebra_dim"] = b.A.dim;
  j["dim"] = H.dim();
  j["labels"] = H.hh1.labels;
  json sc = json::array();
  for (int i = 0; i < H.dim(); ++i) {
    for (int l = i + 1; l < H.dim(); ++l) {
      const auto& terms = H.hh1.basis_bracket(i, l);
      if (terms.empty()) continue;
      json ts = json::array();
      for (const auto& [t, c] : terms) ts.push_back(json::array({t, b.k.to_string(c)}));
      sc.push_back(json{{"i", i}, {"j", l}, {"terms", std::move(ts)}});
    }
  }
  j["structure_constants"] = std::move(sc);
  j["solvable"] = lie::is_solvable(H.hh1);
  j["nilpotent"] = lie::is_nilpotent(H.hh1);
  lie::SimplicityResult simp = lie::is_simple(H.hh1, in.flags.seed, in.flags.max_trials);
  j["simplicity"] = simp.status == lie::SimplicityResult::Status::Simple      ? "Simple"
                    : simp.status == lie::SimplicityResult::Status::NotSimple ? "NotSimple"
                                                                              : "Unknown";
  j["simplicity_note"] = simp.note;
  Subspace D1 = hh1::classes_with_rep_in_radical_power(b.A, H, 1);
  Subspace D2 = hh1::classes_with_rep_in_radical_power(b.A, H, 2);
  j["d1_dim"] = D1.dim();
  j["d2_dim"] = D2.dim();
  j["representatives_in_radical"] = D1.dim() == H.dim();
  j["oracle_checked"] = oracle_checked;
  return j;
}

namespace {

InputSpec make_input(std::uint32_t p, std::vector<int> exps,
                     std::vector<std::vector<std::vector<std::uint32_t>>> gens) {
  InputSpec in;
  in.p = p;
  in.exponents = std::move(exps);
  in.e_generators = std::move(gens);
  return in;
}

// Q8 = {1, -1, i, -i, j, -j, k, -k} acting on C3 x C3 through its central
// quotient V4 = Q8/{+-1}: i and j act by the two diagonal reflections, so the
// kernel {+-1} is exactly Z(Q8).
InputSpec q8_input() {
  InputSpec in = make_input(3, {1, 1}, {});
  static const int ax[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sg[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  InputSpec::AbstractE abs;
  abs.cayley.assign(8, std::vector<int>(8));
  for (int a = 0; a < 4; ++a)
    for (int s = 0; s < 2; ++s)
      for (int b = 0; b < 4; ++b)
        for (int t = 0; t < 2; ++t)
          abs.cayley[2 * a + s][2 * b + t] = 2 * ax[a][b] + (s + t + sg[a][b]) % 2;
  const std::vector<std::vector<std::uint32_t>> one{{1, 0}, {0, 1}};
  const std::vector<std::vector<std::uint32_t>> mi{{2, 0}, {0, 1}};
  const std::vector<std::vector<std::uint32_t>> mj{{1, 0}, {0, 2}};
  const std::vector<std::vector<std::uint32_t>> mk{{2, 0}, {0, 2}};
  abs.action = {one, one, mi, mi, mj, mj, mk, mk};
  in.e_abstract = std::move(abs);
  return in;
}

// C3 with V4 acting trivially and a nondegenerate bicharacter on V4; the
// twisted part is a 2 x 2 matrix algebra, so this is Morita equivalent to kC3.
InputSpec bicharacter_input() {
  InputSpec in = make_input(3, {1}, {});
  InputSpec::AbstractE abs;
  abs.cayley = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  const std::vector<std::vector<std::uint32_t>> id{{1}};
  abs.action = {id, id, id, id};
  in.e_abstract = std::move(abs);
  in.alpha.kind = "bicharacter";
  in.alpha.pairing = {{0, 1}, {0, 0}};
  in.alpha.root_order = 2;
  return in;
}

// (C3 x C3) x| (C2 x C2 diagonal torus) with the nondegenerate bicharacter:
// the model for the quantum complete intersection at p = 3.
InputSpec torus_twisted_input() {
  InputSpec in = make_input(3, {1, 1}, {{{2, 0}, {0, 1}}, {{1, 0}, {0, 2}}});
  in.alpha.kind = "bicharacter";
  in.alpha.pairing = {{0, 1}, {0, 0}};
  in.alpha.root_order = 2;
  return in;
}

using StatusRow = std::vector<std::pair<std::string, std::string>>;

StatusRow statuses(const char* fixed, const char* twisted, const char* frobenius,
                   const char* central) {
  return {{"fixed_derivations_solvability", fixed},
          {"twisted_semidirect_solvability", twisted},
          {"free_action_restriction", frobenius},
          {"central_kernel_solvability", central}};
}

const char* C = kConfirmed;
const char* NA = kNotApplicable;

std::vector<GalleryCase> build_gallery() {
  std::vector<GalleryCase> g;

  g.push_back({"kc2", "k C2 at p = 2, the smallest nonsemisimple group algebra",
               make_input(2, {1}, {}),
               ExpectedFacts{.hh1_dim = 2, .solvable = 1, .nilpotent = 0,
                             .simplicity = "NotSimple", .multiplicity_free = 1,
                             .hyperfocal_full = 0, .d1_covers_hh1 = 0, .d2_dim = 0,
                             .decomposition_check = 1, .statuses = statuses(NA, NA, C, NA)}});

  g.push_back({"kc3", "k C3, where the p = 3 Witt algebra appears",
               make_input(3, {1}, {}),
               ExpectedFacts{.hh1_dim = 3, .solvable = 0, .nilpotent = 0,
                             .simplicity = "Simple", .multiplicity_free = 1,
                             .hyperfocal_full = 0, .d1_covers_hh1 = 0, .d2_dim = 1,
                             .decomposition_check = 1, .statuses = statuses(NA, NA, C, NA)}});

  g.push_back({"kc3_f9", "k C3 over F9, the same Witt algebra with extension field arithmetic",
               [] { InputSpec in = make_input(3, {1}, {}); in.n = 2; return in; }(),
               ExpectedFacts{.hh1_dim = 3, .solvable = 0, .nilpotent = 0,
                             .simplicity = "Simple", .multiplicity_free = 1,
                             .hyperfocal_full = 0, .d1_covers_hh1 = 0, .d2_dim = 1,
                             .decomposition_check = 1, .statuses = statuses(NA, NA, C, NA)}});

  g.push_back({"kc4", "k C4 at p = 2, a non-elementary cyclic P",
               make_input(2, {2}, {}),
               ExpectedFacts{.hh1_dim = 4, .solvable = 1, .nilpotent = 0,
                             .simplicity = "NotSimple", .multiplicity_free = 1,
                             .hyperfocal_full = 0, .d1_covers_hh1 = 0, .d2_dim = 2,
                             .decomposition_check = 1, .statuses = statuses(NA, NA, C, NA)}});

  g.push_back({"kc5", "k C5, the Witt algebra at p = 5",
               make_input(5, {1}, {}),
               ExpectedFacts{.hh1_dim = 5, .solvable = 0, .nilpotent = 0,
                             .simplicity = "Simple", .multiplicity_free = 1,
                             .hyperfocal_full = 0, .d1_covers_hh1 = 0, .d2_dim = 3,
                             .decomposition_check = 1, .statuses = statuses(NA, NA, C, NA)}});

  g.push_back({"kc9", "k C9, a rank one P with a nontrivial Frattini subgroup",
               make_input(3, {2}, {}),
               ExpectedFacts{.hh1_dim = 9, .solvable = 0, .nilpotent = 0,
                             .simplicity = "NotSimple", .multiplicity_free = 1,
                             .hyperfocal_full = 0, .d1_covers_hh1 = 0, .d2_dim = 7,
                             .decomposition_check = 1, .statuses = statuses(NA, NA, C, NA)}});

  g.push_back({"kv4", "k (C2 x C2), rank two at p = 2: the Jacobson-Witt algebra W(2;1)",
               make_input(2, {1, 1}, {}),
               ExpectedFacts{.hh1_dim = 8, .solvable = 0, .nilpotent = 0,
                             .simplicity = "Simple", .multiplicity_free = 0,
                             .hyperfocal_full = 0, .d1_covers_hh1 = 0, .d2_dim = 2,
                             .decomposition_check = 1, .statuses = statuses(NA, NA, C, NA)}});

  g.push_back({"s3", "C3 x| C2 = S3, the smallest Frobenius group",
               make_input(3, {1}, {{{2}}}),
               ExpectedFacts{.hh1_dim = 1, .solvable = 1, .nilpotent = 1,
                             .simplicity = "NotSimple", .multiplicity_free = 1,
                             .hyperfocal_full = 1, .d1_covers_hh1 = 1, .d2_dim = 0,
                             .decomposition_check = 1, .statuses = statuses(C, C, C, C)}});

  g.push_back({"d10", "C5 x| C2, dihedral of order 10",
               make_input(5, {1}, {{{4}}}),
               ExpectedFacts{.hh1_dim = 2, .solvable = 1, .nilpotent = 0,
                             .simplicity = "NotSimple", .multiplicity_free = 1,
                             .hyperfocal_full = 1, .d1_covers_hh1 = 1, .d2_dim = 1,
                             .decomposition_check = 1, .statuses = statuses(C, C, C, C)}});

  g.push_back({"d14", "C7 x| C2, dihedral of order 14",
               make_input(7, {1}, {{{6}}}),
               ExpectedFacts{.hh1_dim = 3, .solvable = 1, .nilpotent = 0,
                             .simplicity = "NotSimple", .multiplicity_free = 1,
                             .hyperfocal_full = 1, .d1_covers_hh1 = 1, .d2_dim = 2,
                             .decomposition_check = 1, .statuses = statuses(C, C, C, C)}});

  g.push_back({"c7_c3", "C7 x| C3, Frobenius of order 21",
               make_input(7, {1}, {{{2}}}),
               ExpectedFacts{.hh1_dim = 2, .solvable = 1, .nilpotent = 0,
                             .simplicity = "NotSimple", .multiplicity_free = 1,
                             .hyperfocal_full = 1, .d1_covers_hh1 = 1, .d2_dim = 1,
                             .decomposition_check = 1, .statuses = statuses(C, C, C, C)}});

  g.push_back({"c7_c6", "C7 x| C6, the full automorphism group of C7",
               make_input(7, {1}, {{{3}}}),
               ExpectedFacts{.hh1_dim = 1, .solvable = 1, .nilpotent = 1,
                             .simplicity = "NotSimple", .multiplicity_free = 1,
                             .hyperfocal_full = 1, .d1_covers_hh1 = 1, .d2_dim = 0,
                             .decomposition_check = 1, .statuses = statuses(C, C, C, C)}});

  g.push_back({"c9_c2", "C9 x| C2, inversion on a non-elementary P",
               make_input(3, {2}, {{{8}}}),
               ExpectedFacts{.hh1_dim = 4, .solvable = 1, .nilpotent = 0,
                             .simplicity = "NotSimple", .multiplicity_free = 1,
                             .hyperfocal_full = 1, .d1_covers_hh1 = 1, .d2_dim = 3,
                             .decomposition_check = 1, .statuses = statuses(C, C, C, C)}});

  g.push_back({"a4", "(C2 x C2) x| C3 = A4 at p = 2",
               make_input(2, {1, 1}, {{{0, 1}, {1, 1}}}),
               ExpectedFacts{.hh1_dim = 2, .solvable = 1, .nilpotent = 1,
                             .simplicity = "NotSimple", .multiplicity_free = 1,
                             .hyperfocal_full = 1, .d1_covers_hh1 = 1, .d2_dim = 0,
                             .decomposition_check = 1, .statuses = statuses(C, C, C, C)}});

  g.push_back({"v4v4_c3_diag",
               "(V4 x V4) x| C3 acting by the same irreducible twice: p = 2 data point",
               make_input(2, {1, 1, 1, 1},
                          {{{0, 1, 0, 0}, {1, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 1}}}),
               ExpectedFacts{.hh1_dim = 20, .solvable = 1, .nilpotent = 0,
                             .simplicity = "NotSimple", .multiplicity_free = 0,
                             .hyperfocal_full = 1, .d1_covers_hh1 = 1, .d2_dim = 12,
                             .decomposition_check = 1, .statuses = statuses(C, C, C, C)}});

  g.push_back({"c33_minus_i", "(C3 x C3) x| {+-1}: repeated summands force a gl2 quotient",
               make_input(3, {1, 1}, {{{2, 0}, {0, 2}}}),
               ExpectedFacts{.hh1_dim = 8, .solvable = 0, .nilpotent = 0,
                             .simplicity = "NotSimple", .multiplicity_free = 0,
                             .hyperfocal_full = 1, .d1_covers_hh1 = 1, .d2_dim = 4,
                             .decomposition_check = 1, .statuses = statuses(C, C, C, C)}});

  g.push_back({"c33_torus", "(C3 x C3) x| diagonal torus, multiplicity free",
               make_input(3, {1, 1}, {{{2, 0}, {0, 1}}, {{1, 0}, {0, 2}}}),
               ExpectedFacts{.hh1_dim = 6, .solvable = 1, .nilpotent = 0,
                             .simplicity = "NotSimple", .multiplicity_free = 1,
                             .hyperfocal_full = 1, .d1_covers_hh1 = 1, .d2_dim = 4,
                             .decomposition_check = 1, .statuses = statuses(C, C, NA, C)}});

  g.push_back({"c33_torus_twisted",
               "(C3 x C3) x| torus with a nondegenerate 2-cocycle: the qci model",
               torus_twisted_input(),
               ExpectedFacts{.hh1_dim = 8, .solvable = 1, .nilpotent = 0,
                             .simplicity = "NotSimple", .multiplicity_free = 1,
                             .hyperfocal_full = 1, .d1_covers_hh1 = 1, .d2_dim = 6,
                             .decomposition_check = 1, .statuses = statuses(C, C, NA, NA)}});

  g.push_back({"c33_singer", "(C3 x C3) x| C8, a Singer cycle",
               make_input(3, {1, 1}, {{{0, 1}, {1, 1}}}),
               ExpectedFacts{.hh1_dim = 2, .solvable = 1, .nilpotent = 1,
                             .simplicity = "NotSimple", .multiplicity_free = 1,
                             .hyperfocal_full = 1, .d1_covers_hh1 = 1, .d2_dim = 0,
                             .decomposition_check = 1, .statuses = statuses(C, C, C, C)}});

  g.push_back({"c33_q8", "(C3 x C3) x| Q8 acting through the torus: central non-faithful kernel",
               q8_input(),
               ExpectedFacts{.hh1_dim = 14, .solvable = 1, .nilpotent = 0,
                             .simplicity = "NotSimple", .multiplicity_free = 1,
                             .hyperfocal_full = 1, .d1_covers_hh1 = 1, .d2_dim = 10,
                             // the strict P-part lift misses the kP z-hat classes coming
                             // from the central kernel z, so lift + D2 under-covers here
                             .decomposition_check = 0, .statuses = statuses(C, NA, NA, C)}});

  g.push_back({"c55_singer", "(C5 x C5) x| C3, free and irreducible at p = 5",
               make_input(5, {1, 1}, {{{0, 4}, {1, 4}}}),
               ExpectedFacts{.hh1_dim = 16, .solvable = 1, .nilpotent = 0,
                             .simplicity = "NotSimple", .multiplicity_free = 1,
                             .hyperfocal_full = 1, .d1_covers_hh1 = 1, .d2_dim = 14,
                             .decomposition_check = 1, .statuses = statuses(C, C, C, C)}});

  g.push_back({"c55_minus_i", "(C5 x C5) x| {+-1} at p = 5",
               make_input(5, {1, 1}, {{{4, 0}, {0, 4}}}),
               ExpectedFacts{.hh1_dim = 24, .solvable = 0, .nilpotent = 0,
                             .simplicity = "NotSimple", .multiplicity_free = 0,
                             .hyperfocal_full = 1, .d1_covers_hh1 = 1, .d2_dim = 20,
                             .decomposition_check = 1, .statuses = statuses(C, C, C, C)}});

  g.push_back({"c3v4_bichar",
               "C3 x V4 with a nondegenerate bicharacter, Morita equivalent to k C3",
               bicharacter_input(),
               ExpectedFacts{.hh1_dim = 3, .solvable = 0, .nilpotent = 0,
                             .simplicity = "Simple", .multiplicity_free = 1,
                             .hyperfocal_full = 0, .d1_covers_hh1 = 0, .d2_dim = 1,
                             .decomposition_check = 1, .statuses = statuses(NA, NA, NA, NA)}});

  g.push_back({"c3xs3_kuenneth", "k C3 (x) k S3, a tensor product with [P,E] < P",
               make_input(3, {1, 1}, {{{1, 0}, {0, 2}}}),
               ExpectedFacts{.hh1_dim = 12, .solvable = 0, .nilpotent = 0,
                             .simplicity = "NotSimple", .multiplicity_free = 1,
                             .hyperfocal_full = 0, .d1_covers_hh1 = 0, .d2_dim = 9,
                             .decomposition_check = 1, .statuses = statuses(NA, NA, NA, NA)}});

  return g;
}

constexpr int kQciExpectedDim = 8;
constexpr const char* kQciHeadline =
    "quantum complete intersection at p = 3 against its twisted group algebra model";

std::string pad_name(std::string s, std::size_t w) {
  if (s.size() < w) s.resize(w, ' ');
  return s;
}

void compare_expected(const ExpectedFacts& e, const AnalysisReport& r,
                      std::vector<std::string>& diffs) {
  auto want_int = [&](const char* what, int want, int got) {
    if (want >= 0 && want != got)
      diffs.push_back(std::string(what) + ": expected " + std::to_string(want) + ", got " +
                      std::to_string(got));
  };
  auto want_bool = [&](const char* what, int want, bool got) {
    if (want >= 0 && (want == 1) != got)
      diffs.push_back(std::string(what) + ": expected " + (want == 1 ? "true" : "false") +
                      ", got " + (got ? "true" : "false"));
  };
  want_int("hh1_dim", e.hh1_dim, r.hh1_dim);
  want_bool("solvable", e.solvable, r.solvable);
  want_bool("nilpotent", e.nilpotent, r.nilpotent);
  if (!e.simplicity.empty() && e.simplicity != r.simplicity)
    diffs.push_back("simplicity: expected " + e.simplicity + ", got " + r.simplicity);
  want_bool("multiplicity_free", e.multiplicity_free, r.multiplicity_free);
  want_bool("hyperfocal_full", e.hyperfocal_full, r.hyperfocal_full);
  want_bool("d1_covers_hh1", e.d1_covers_hh1, r.d1_covers_hh1);
  want_int("d2_dim", e.d2_dim, r.d2_dim);
  want_bool("decomposition_check", e.decomposition_check, r.decomposition_check);
  for (const auto& [id, want] : e.statuses) {
    bool found = false;
    for (const TheoremVerdict& v : r.theorem_verdicts) {
      if (v.theorem_id != id) continue;
      found = true;
      if (v.status != want)
        diffs.push_back(id + ": expected " + want + ", got " + v.status +
                        (v.status == kNotApplicable ? " (" + v.hypothesis_failed + ")" : ""));
    }
    if (!found) diffs.push_back(id + ": verdict missing from report");
  }
  for (const TheoremVerdict& v : r.theorem_verdicts)
    if (v.status == kViolation)
      diffs.push_back(v.theorem_id + ": VIOLATION (" + v.observed + ")");
}

}  // namespace

const std::vector<GalleryCase>& gallery_cases() {
  static const std::vector<GalleryCase> g = build_gallery();
  return g;
}

GalleryResult run_gallery(const std::optional<std::string>& only, bool force_oracle,
                          std::uint64_t seed) {
  GalleryResult out;
  std::ostringstream summary;
  bool matched = false;

  for (const GalleryCase& gc : gallery_cases()) {
    if (only && gc.name.find(*only) == std::string::npos) continue;
    matched = true;
    InputSpec in = gc.input;
    in.flags.seed = seed;
    if (force_oracle) in.flags.oracle = true;
    AnalysisReport rep = analyze(in);
    std::vector<std::string> diffs;
    compare_expected(gc.expected, rep, diffs);
    json entry;
    entry["name"] = gc.name;
    entry["headline"] = gc.headline;
    entry["pass"] = diffs.empty();
    entry["mismatches"] = diffs;
    entry.update(rep.to_json());
    out.reports.push_back(std::move(entry));
    for (const std::string& d : diffs) out.failures.push_back(gc.name + ": " + d);
    summary << (diffs.empty() ? "PASS " : "FAIL ") << pad_name(gc.name, 20) << " hh1_dim "
            << rep.hh1_dim << (rep.solvable ? ", solvable" : ", not solvable")
            << (rep.nilpotent ? ", nilpotent" : "") << ", " << rep.simplicity
            << (rep.oracle_checked ? ", oracle checked" : "") << "\n";
  }

  if (!only || std::string("qci").find(*only) != std::string::npos) {
    matched = true;
    std::vector<std::string> diffs;
    ff::Field k = ff::Field::prime(3);
    SCAlgebra Q = algebra::qci_algebra(k);
    hh1::HH1Result Hq = hh1::hh1_via_oracle(Q);
    const bool qsolv = lie::is_solvable(Hq.hh1);
    const bool qnilp = lie::is_nilpotent(Hq.hh1);
    InputSpec model_in = torus_twisted_input();
    model_in.flags.seed = seed;
    AnalysisReport model = analyze(model_in);
    if (Hq.dim() != kQciExpectedDim)
      diffs.push_back("qci hh1_dim: expected " + std::to_string(kQciExpectedDim) + ", got " +
                      std::to_string(Hq.dim()));
    if (Hq.dim() != model.hh1_dim)
      diffs.push_back("qci hh1_dim " + std::to_string(Hq.dim()) + " != model hh1_dim " +
                      std::to_string(model.hh1_dim));
    if (qsolv != model.solvable || !qsolv)
      diffs.push_back("qci solvable disagrees with the model (both should be solvable)");
    if (qnilp != model.nilpotent)
      diffs.push_back("qci nilpotent disagrees with the model");
    json entry;
    entry["name"] = "qci";
    entry["headline"] = kQciHeadline;
    entry["pass"] = diffs.empty();
    entry["mismatches"] = diffs;
    entry["qci_hh1_dim"] = Hq.dim();
    entry["qci_solvable"] = qsolv;
    entry["qci_nilpotent"] = qnilp;
    entry["model"] = "c33_torus_twisted";
    entry["model_hh1_dim"] = model.hh1_dim;
    entry["model_solvable"] = model.solvable;
    entry["model_nilpotent"] = model.nilpotent;
    out.reports.push_back(std::move(entry));
    for (const std::string& d : diffs) out.failures.push_back("qci: " + d);
    summary << (diffs.empty() ? "PASS " : "FAIL ") << pad_name("qci", 20) << " hh1_dim "
            << Hq.dim() << (qsolv ? ", solvable" : ", not solvable")
            << ", matches c33_torus_twisted\n";
  }

  check(matched, "UnknownCase", "no gallery case matches \"" + (only ? *only : "") + "\"");
  out.ok = out.failures.empty();
  out.summary = summary.str();
  return out;
}

json gallery_manifest() {
  json j;
  j["schema_version"] = kSchemaVersion;
  json cases = json::array();
  for (const GalleryCase& gc : gallery_cases()) {
    json e;
    auto want_bool = [&](const char* key, int v) {
      if (v >= 0) e[key] = v == 1;
    };
    if (gc.expected.hh1_dim >= 0) e["hh1_dim"] = gc.expected.hh1_dim;
    want_bool("solvable", gc.expected.solvable);
    want_bool("nilpotent", gc.expected.nilpotent);
    if (!gc.expected.simplicity.empty()) e["simplicity"] = gc.expected.simplicity;
    want_bool("multiplicity_free", gc.expected.multiplicity_free);
    want_bool("hyperfocal_full", gc.expected.hyperfocal_full);
    want_bool("d1_covers_hh1", gc.expected.d1_covers_hh1);
    if (gc.expected.d2_dim >= 0) e["d2_dim"] = gc.expected.d2_dim;
    want_bool("decomposition_check", gc.expected.decomposition_check);
    json st;
    for (const auto& [id, s] : gc.expected.statuses) st[id] = s;
    e["theorem_statuses"] = std::move(st);
    cases.push_back(json{{"name", gc.name}, {"headline", gc.headline}, {"expected", std::move(e)}});
  }
  cases.push_back(json{{"name", "qci"},
                       {"headline", kQciHeadline},
                       {"expected", json{{"hh1_dim", kQciExpectedDim},
                                         {"solvable", true},
                                         {"model", "c33_torus_twisted"},
                                         {"model_agrees", true}}}});
  j["cases"] = std::move(cases);
  return j;
}

}  // namespace tga::pipeline
