#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "leibniz/leibniz.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitMalformed = 2;

int exit_code_for(lz_status s) {
  switch (s) {
    case LZ_OK: return kExitOk;
    case LZ_ERR_NOT_IN_CLASS:
    case LZ_ERR_INCONSISTENT_FORM:
    case LZ_ERR_UNSUPPORTED_FIELD:
    case LZ_ERR_SINGULAR:
    case LZ_ERR_INTERNAL: return kExitFailure;
    default: return kExitMalformed;
  }
}

// Owns a C string handed out by the library.
struct Text {
  char* p = nullptr;
  ~Text() { lz_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct Handle {
  lz_algebra* p = nullptr;
  ~Handle() { lz_algebra_free(p); }
};

class CliError : public std::runtime_error {
 public:
  CliError(lz_status s, const std::string& what) : std::runtime_error(what), status(s) {}
  lz_status status;
};

void check(lz_status s) {
  if (s != LZ_OK) throw CliError(s, lz_last_error());
}

std::string digest(const std::string& bytes) {
  Text t;
  check(lz_sha256_hex(bytes.data(), bytes.size(), &t.p));
  return t.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError(LZ_ERR_SCHEMA, "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError(LZ_ERR_INVALID_ARGUMENT, "cannot write " + path);
  out << text;
}

struct Report {
  std::string command;
  std::string input;  // bytes hashed into input_digest
  Json outcome = Json::object();
  std::optional<std::uint64_t> seed;

  void print(std::ostream& os) const {
    Json j;
    j["command"] = command;
    j["input_digest"] = digest(input);
    j["outcome"] = outcome;
    j["seed"] = seed ? Json(*seed) : Json(nullptr);
    j["exact"] = true;
    os << j.dump(2) << "\n";
  }
};

Json parse(const Text& t) { return Json::parse(t.str()); }

void load(const std::string& path, Handle& h, Report& r) {
  std::string bytes = read_file(path);
  r.input += bytes;
  check(lz_algebra_from_json(bytes.c_str(), &h.p));
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("LEIBNIZ_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw CliError(LZ_ERR_INVALID_ARGUMENT, std::string("LEIBNIZ_SEED is not an integer: ") + env);
    }
  }
  return 0;
}

std::string args_text(int argc, char** argv) {
  std::string s;
  for (int i = 1; i < argc; ++i) {
    s += argv[i];
    s.push_back('\0');
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact classification toolkit for solvable Leibniz algebras with abelian nilradical"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(lz_version()));

  std::string file, file2, nilradical, label, params, out, budget = "permutation_scaling";
  int k = 0, t = 0;
  std::size_t trials = 100, draws = 3;
  std::optional<std::uint64_t> seed;

  auto* verify = app.add_subcommand("verify", "Leibniz identity, solvability class, optional nilradical check");
  verify->add_option("FILE", file, "AlgebraFile")->required();
  verify->add_option("--nilradical", nilradical, "0-based basis indices I1,I2,...");

  auto* generate = app.add_subcommand("generate", "Instantiate a family table");
  generate->add_option("LABEL", label, "L1..L10 or M1..M7")->required();
  generate->add_option("--k", k, "nilradical dimension")->required();
  generate->add_option("--t", t, "split index for M labels");
  generate->add_option("--params", params, "comma-separated rationals p/q, matrices row-major");
  generate->add_option("--out", out, "write the AlgebraFile here");

  auto* classify = app.add_subcommand("classify", "Extract the general form and classify");
  classify->add_option("FILE", file, "AlgebraFile")->required();
  classify->add_option("--nilradical", nilradical, "0-based basis indices I1,I2,...");

  auto* invariants = app.add_subcommand("invariants", "Isomorphism-invariant profile");
  invariants->add_option("FILE", file, "AlgebraFile")->required();

  auto* isomorphic = app.add_subcommand("isomorphic", "Search for an explicit isomorphism");
  isomorphic->add_option("FILE1", file, "AlgebraFile")->required();
  isomorphic->add_option("FILE2", file2, "AlgebraFile")->required();
  isomorphic->add_option("--budget", budget, "permutation_scaling or full_small")
      ->check(CLI::IsMember({"permutation_scaling", "full_small"}));

  auto* fuzz = app.add_subcommand("fuzz", "Scramble and classify round trips");
  fuzz->add_option("--label", label, "family label")->required();
  fuzz->add_option("--k", k, "nilradical dimension")->required();
  fuzz->add_option("--t", t, "split index; drawn per trial when omitted");
  fuzz->add_option("--trials", trials, "number of trials");
  fuzz->add_option("--seed", seed, "seed (default: LEIBNIZ_SEED or 0)");

  auto* list = app.add_subcommand("list-families", "Canonical branches for a given k");
  list->add_option("--k", k, "nilradical dimension")->required();

  auto* catalog = app.add_subcommand("catalog", "Write every canonical family sample with certificates");
  catalog->add_option("--k", k, "nilradical dimension")->required();
  catalog->add_option("--out", out, "output directory")->required();

  auto* collisions = app.add_subcommand("collisions", "Pairs of canonical samples not separated by invariants");
  collisions->add_option("--k", k, "nilradical dimension")->required();
  collisions->add_option("--draws", draws, "parameter draws per branch");
  collisions->add_option("--seed", seed, "seed (default: LEIBNIZ_SEED or 0)");
  collisions->add_option("--out", out, "write the report text here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitMalformed;
  }

  Report report;
  report.command = app.get_subcommands().front()->get_name();
  report.input = args_text(argc, argv);
  int code = kExitOk;
  try {
    if (*verify) {
      Handle h;
      load(file, h, report);
      Text t_out;
      int passed = 0;
      check(lz_verify(h.p, nilradical.empty() ? nullptr : nilradical.c_str(), &passed, &t_out.p));
      report.outcome = parse(t_out);
      code = passed ? kExitOk : kExitFailure;
    } else if (*generate) {
      Handle h;
      check(lz_algebra_generate(label.c_str(), k, t, params.c_str(), &h.p));
      Text text;
      check(lz_algebra_to_json(h.p, &text.p));
      Json algebra = parse(text);
      if (!out.empty()) write_file(out, text.str());
      report.outcome["nonzero_products"] = algebra["products"].size();
      report.outcome["out"] = out.empty() ? Json(nullptr) : Json(out);
      report.outcome["algebra"] = algebra;
    } else if (*classify) {
      Handle h;
      load(file, h, report);
      Text t_out;
      check(lz_classify(h.p, nilradical.empty() ? nullptr : nilradical.c_str(), &t_out.p));
      report.outcome = parse(t_out);
    } else if (*invariants) {
      Handle h;
      load(file, h, report);
      Text t_out;
      check(lz_invariants(h.p, &t_out.p));
      report.outcome = parse(t_out);
    } else if (*isomorphic) {
      Handle a, b;
      load(file, a, report);
      load(file2, b, report);
      Text t_out;
      int found = 0;
      check(lz_isomorphism_search(a.p, b.p, budget == "full_small" ? LZ_BUDGET_FULL_SMALL : LZ_BUDGET_PERMUTATION_SCALING,
                                  &found, &t_out.p));
      report.outcome = parse(t_out);
    } else if (*fuzz) {
      report.seed = seed ? *seed : default_seed();
      Text t_out;
      int all = 0;
      check(lz_fuzz(label.c_str(), k, t, trials, *report.seed, &all, &t_out.p));
      report.outcome = parse(t_out);
      code = all ? kExitOk : kExitFailure;
    } else if (*list) {
      Text t_out;
      check(lz_list_families(k, &t_out.p));
      report.outcome = parse(t_out);
    } else if (*catalog) {
      Text t_out;
      check(lz_catalog(k, out.c_str(), &t_out.p));
      report.outcome = parse(t_out);
      report.outcome["dir"] = out;
    } else if (*collisions) {
      report.seed = seed ? *seed : default_seed();
      Text t_out;
      check(lz_collision_report(k, draws, *report.seed, &t_out.p));
      if (!out.empty()) write_file(out, t_out.str());
      Json lines = Json::array();
      std::istringstream in(t_out.str());
      for (std::string line; std::getline(in, line);) lines.push_back(line);
      report.outcome["report"] = lines;
      report.outcome["out"] = out.empty() ? Json(nullptr) : Json(out);
    }
  } catch (const CliError& e) {
    report.outcome = {{"error", {{"code", lz_status_name(e.status)}, {"status", static_cast<int>(e.status)}, {"message", e.what()}}}};
    std::cerr << "error: " << lz_status_name(e.status) << ": " << e.what() << "\n";
    code = exit_code_for(e.status);
  } catch (const Json::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return kExitFailure;
  }
  try {
    report.print(std::cout);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return code;
}
