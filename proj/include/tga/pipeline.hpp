#pragma once

// Drives the full analysis for one input (k, P, E, alpha): builds the twisted
// group algebra, computes HH^1 with the cocycle fast path (optionally
// cross-checked against the brute-force oracle), evaluates the four
// solvability/restriction theorems mechanically, and runs the built-in
// example gallery against pinned expected values.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tga/algebra.hpp"
#include "tga/cocycle.hpp"
#include "tga/ff.hpp"
#include "tga/hh1.hpp"
#include "tga/lie.hpp"
#include "tga/pgroup.hpp"

namespace tga::pipeline {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0";
// Brute-force oracle ceiling: above this the Leibniz kernel system gets slow.
inline constexpr int kOracleDimLimit = 40;

struct InputSpec {
  // field {p, n, modulus?}; modulus coefficients are little-endian, length n+1
  std::uint32_t p = 0;
  int n = 1;
  std::optional<std::vector<std::uint32_t>> modulus;

  // group {exponents}: P = prod_i C_{p^{a_i}}
  std::vector<int> exponents;

  // e: either automorphism generators (each an r x r coordinate matrix whose
  // row i is the image of generator i) or an abstract group with an action.
  std::vector<std::vector<std::vector<std::uint32_t>>> e_generators;
  struct AbstractE {
    std::vector<std::vector<int>> cayley;
    std::vector<std::vector<std::vector<std::uint32_t>>> action;  // one per element
  };
  std::optional<AbstractE> e_abstract;

  // alpha: trivial, a bicharacter on E's generator coordinates, or an
  // explicit |E| x |E| table of field elements given as strings.
  struct Alpha {
    std::string kind = "trivial";  // trivial | bicharacter | table
    std::vector<std::vector<std::int64_t>> pairing;
    int root_order = 1;
    std::vector<std::vector<std::string>> table;
  } alpha;

  struct Flags {
    bool validate_assoc = false;
    bool oracle = false;
    std::uint64_t seed = 12345;
    int max_trials = 64;
  } flags;
};

InputSpec input_from_json(const json& j);
json input_to_json(const InputSpec& in);

// Everything analyze() needs, constructed and cross-validated.
struct BuiltInput {
  ff::Field k;
  pgroup::AbelianPGroup P;
  pgroup::EGroup E;
  cocycle::NormalizedCocycle2 alpha;
  algebra::SCAlgebra A;
};

BuiltInput build_input(const InputSpec& in);

struct TheoremVerdict {
  std::string theorem_id;
  bool applicable = false;
  std::string predicted;
  std::string observed;
  std::string status;  // CONFIRMED | VIOLATION | NOT_APPLICABLE
  std::string hypothesis_failed;
  // The solvability criterion split by direction. forward is multiplicity
  // free implies solvable; converse is the p-odd-only reverse implication.
  // Empty when the theorem carries no solvability claim for this input.
  std::string forward_status;
  std::string forward_note;
  std::string converse_status;
  std::string converse_note;
};

struct AnalysisReport {
  InputSpec input;
  int algebra_dim = 0;
  bool oracle_checked = false;
  bool hyperfocal_full = false;
  bool multiplicity_free = false;
  int hh1_dim = 0;
  bool solvable = false;
  bool nilpotent = false;
  std::string simplicity;  // Simple | NotSimple | Unknown
  std::string simplicity_note;
  bool d1_covers_hh1 = false;
  int d1_dim = 0;
  int d2_dim = 0;
  bool decomposition_check = false;
  std::vector<TheoremVerdict> theorem_verdicts;

  bool has_violation() const;
  json to_json() const;
};

AnalysisReport analyze(const InputSpec& in);

// One Lie-facts bundle for the hh1 subcommand.
json hh1_facts(const InputSpec& in);

// Expected values a gallery case is pinned to. Values of -1 (or an empty
// string) are unchecked.
struct ExpectedFacts {
  int hh1_dim = -1;
  int solvable = -1;   // tri-state: -1 unchecked, 0 false, 1 true
  int nilpotent = -1;
  std::string simplicity;
  int multiplicity_free = -1;
  int hyperfocal_full = -1;
  int d1_covers_hh1 = -1;
  int d2_dim = -1;
  int decomposition_check = -1;
  // theorem_id -> expected status, for the verdicts worth pinning
  std::vector<std::pair<std::string, std::string>> statuses;
};

struct GalleryCase {
  std::string name;
  std::string headline;  // one-line description for the summary table
  InputSpec input;
  ExpectedFacts expected;
};

const std::vector<GalleryCase>& gallery_cases();

struct GalleryResult {
  json reports = json::array();
  std::vector<std::string> failures;  // human-readable mismatch diffs
  std::string summary;                // one line per case
  bool ok = true;
};

// Runs the built-in cases (optionally a single one by name), each with the
// given seed. force_oracle additionally cross-checks every case whose algebra
// dimension is within the oracle limit. The qci cross-check runs as the final
// entry ("qci"): HH^1 of the quantum complete intersection at p = 3 must
// match the twisted (C3 x C3) x| (C2 x C2) model in dimension and
// solvability.
GalleryResult run_gallery(const std::optional<std::string>& only, bool force_oracle,
                          std::uint64_t seed);

// The pinned expectations as JSON (the gallery manifest, kept in
// docs/gallery_manifest.json and regenerated by `tga gallery --manifest`).
json gallery_manifest();

}  // namespace tga::pipeline
