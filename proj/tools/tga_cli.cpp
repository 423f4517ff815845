// Command line front end: thin shell over the pipeline. Exit codes: 0 ok,
// 1 usage or malformed JSON, 2 validation error, 3 theorem violation or
// gallery mismatch. Machine-readable {"error": ...} goes to stderr; stdout
// carries only the report.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tga/pipeline.hpp"

namespace {

using tga::pipeline::AnalysisReport;
using tga::pipeline::InputSpec;
using tga::pipeline::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open input file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("not a comma-separated integer list: \"" + s + "\"");
    }
  }
  if (out.empty()) throw UsageError("empty integer list");
  return out;
}

struct InputOpts {
  std::string input;
  std::uint32_t p = 0;
  int n = 1;
  std::vector<std::uint32_t> modulus;
  std::string exponents;
  std::vector<std::string> e_gens;
  std::string alpha = "trivial";
  std::string pairing;
  int root_order = 1;
  std::string alpha_table;
  bool oracle = false;
  bool validate_assoc = false;
  std::uint64_t seed = 12345;
  int max_trials = 64;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* trials_opt = nullptr;
};

void add_input_options(CLI::App* cmd, InputOpts& o) {
  auto* input =
      cmd->add_option("-i,--input", o.input, "input spec: a JSON file path or inline JSON");
  auto* p = cmd->add_option("--p", o.p, "field characteristic");
  cmd->add_option("--n", o.n, "field degree over F_p");
  cmd->add_option("--modulus", o.modulus, "defining polynomial coefficients c0,...,cn")
      ->delimiter(',');
  auto* ex =
      cmd->add_option("--exponents", o.exponents, "comma list a_i with P = prod_i C_{p^{a_i}}");
  cmd->add_option("--e-gen", o.e_gens,
                  "automorphism generator as a JSON coordinate matrix (repeatable)")
      ->allow_extra_args(false);
  cmd->add_option("--alpha", o.alpha, "cocycle kind: trivial or bicharacter");
  cmd->add_option("--pairing", o.pairing, "bicharacter pairing as a JSON integer matrix");
  cmd->add_option("--root-order", o.root_order, "order of the root of unity used by the pairing");
  cmd->add_option("--alpha-table", o.alpha_table,
                  "explicit |E| x |E| cocycle table of field element strings, as JSON");
  cmd->add_flag("--oracle", o.oracle,
                "cross-check the cocycle fast path against the brute-force oracle (dim <= 40)");
  cmd->add_flag("--validate-assoc", o.validate_assoc,
                "fully validate associativity of the constructed product table");
  o.seed_opt = cmd->add_option("--seed", o.seed, "seed for the randomized simplicity test");
  o.trials_opt = cmd->add_option("--max-trials", o.max_trials, "simplicity test trial cap");
  input->excludes(p);
  input->excludes(ex);
}

InputSpec gather_input(const InputOpts& o) {
  InputSpec in;
  if (!o.input.empty()) {
    std::string text = o.input;
    const std::size_t pos = text.find_first_not_of(" \t\r\n");
    if (pos == std::string::npos || text[pos] != '{') text = read_file(o.input);
    in = tga::pipeline::input_from_json(json::parse(text));
  } else {
    if (o.p == 0 || o.exponents.empty())
      throw UsageError("provide --input, or --p together with --exponents");
    in.p = o.p;
    in.n = o.n;
    if (!o.modulus.empty()) in.modulus = o.modulus;
    in.exponents = parse_int_list(o.exponents);
    for (const std::string& g : o.e_gens)
      in.e_generators.push_back(
          json::parse(g).get<std::vector<std::vector<std::uint32_t>>>());
    in.alpha.kind = o.alpha;
    if (!o.pairing.empty())
      in.alpha.pairing = json::parse(o.pairing).get<std::vector<std::vector<std::int64_t>>>();
    in.alpha.root_order = o.root_order;
    if (!o.alpha_table.empty()) {
      in.alpha.kind = "table";
      in.alpha.table =
          json::parse(o.alpha_table).get<std::vector<std::vector<std::string>>>();
    }
  }
  if (o.oracle) in.flags.oracle = true;
  if (o.validate_assoc) in.flags.validate_assoc = true;
  if (o.seed_opt != nullptr && o.seed_opt->count() > 0) in.flags.seed = o.seed;
  if (o.trials_opt != nullptr && o.trials_opt->count() > 0) in.flags.max_trials = o.max_trials;
  if (const char* env = std::getenv("HH1_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') throw UsageError("HH1_SEED must be an unsigned integer");
    in.flags.seed = v;
  }
  return in;
}

json error_json(const std::string& code, const std::string& message) {
  json inner;
  inner["code"] = code;
  inner["message"] = message;
  json j;
  j["error"] = std::move(inner);
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"twisted group algebra HH1 analyzer"};
  app.require_subcommand(1);

  InputOpts analyze_opts;
  CLI::App* cmd_analyze =
      app.add_subcommand("analyze", "full analysis report for one (k, P, E, alpha)");
  add_input_options(cmd_analyze, analyze_opts);

  InputOpts hh1_opts;
  CLI::App* cmd_hh1 =
      app.add_subcommand("hh1", "HH1 as a Lie algebra: structure constants and verdicts");
  add_input_options(cmd_hh1, hh1_opts);

  InputOpts vc_opts;
  CLI::App* cmd_validate =
      app.add_subcommand("validate-cocycle", "build and fully validate the twisted algebra");
  add_input_options(cmd_validate, vc_opts);

  std::string only;
  bool gallery_oracle = false;
  bool gallery_json = false;
  bool gallery_manifest = false;
  std::uint64_t gallery_seed = 12345;
  CLI::App* cmd_gallery =
      app.add_subcommand("gallery", "run the built-in example gallery against pinned facts");
  cmd_gallery->add_option("--only", only, "run only cases whose name contains this substring");
  cmd_gallery->add_flag("--oracle", gallery_oracle,
                        "force brute-force cross-checks where dim <= 40");
  cmd_gallery->add_flag("--json", gallery_json, "emit per-case JSON reports instead of the table");
  cmd_gallery->add_flag("--manifest", gallery_manifest,
                        "print the pinned expectations manifest and exit");
  CLI::Option* gallery_seed_opt =
      cmd_gallery->add_option("--seed", gallery_seed, "seed for the randomized simplicity test");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(cmd_analyze)) {
      AnalysisReport rep = tga::pipeline::analyze(gather_input(analyze_opts));
      std::cout << rep.to_json().dump(2) << "\n";
      return rep.has_violation() ? 3 : 0;
    }
    if (app.got_subcommand(cmd_hh1)) {
      std::cout << tga::pipeline::hh1_facts(gather_input(hh1_opts)).dump(2) << "\n";
      return 0;
    }
    if (app.got_subcommand(cmd_validate)) {
      InputSpec in = gather_input(vc_opts);
      in.flags.validate_assoc = true;
      tga::pipeline::BuiltInput b = tga::pipeline::build_input(in);
      json out;
      out["valid"] = true;
      out["algebra_dim"] = b.A.dim;
      out["e_order"] = b.E.order;
      out["alpha_trivial"] = b.alpha.is_trivial();
      std::cout << out.dump(2) << "\n";
      return 0;
    }
    // gallery
    if (gallery_manifest) {
      std::cout << tga::pipeline::gallery_manifest().dump(2) << "\n";
      return 0;
    }
    std::uint64_t seed = gallery_seed;
    if (const char* env = std::getenv("HH1_SEED")) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (end == env || *end != '\0') throw UsageError("HH1_SEED must be an unsigned integer");
      seed = v;
    } else if (gallery_seed_opt->count() == 0) {
      seed = 12345;
    }
    tga::pipeline::GalleryResult res = tga::pipeline::run_gallery(
        only.empty() ? std::nullopt : std::optional<std::string>(only), gallery_oracle, seed);
    if (gallery_json) {
      json out;
      out["ok"] = res.ok;
      out["reports"] = res.reports;
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << res.summary;
    }
    for (const std::string& f : res.failures) std::cerr << "mismatch: " << f << "\n";
    return res.ok ? 0 : 3;
  } catch (const tga::Error& e) {
    std::cerr << error_json(e.code, e.what()).dump() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << error_json("Usage", e.what()).dump() << "\n";
    return 1;
  } catch (const json::exception& e) {
    std::cerr << error_json("MalformedJson", e.what()).dump() << "\n";
    return 1;
  }
}
