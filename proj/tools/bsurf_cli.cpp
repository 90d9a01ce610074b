// bsurf command-line front end.  All computation goes through the shared
// library's C API; this file only handles argument parsing, file IO, and
// exit-code mapping.
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "bsurf.h"

namespace {

struct GlobalFlags {
  bool json = false;
  std::uint64_t seed = 0x5eed2024;
  int threads = 1;
  std::int64_t cap = 0;  // 0: default (or BSURF_CAP)
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open " << path << "\n";
    std::exit(2);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const std::string& command, const std::string& scenario, const GlobalFlags& flags) {
  bsurf_options* opts = bsurf_options_new();
  bsurf_options_set_seed(opts, flags.seed);
  bsurf_options_set_threads(opts, flags.threads);
  if (flags.cap > 0) {
    bsurf_options_set_cap(opts, flags.cap);
  } else if (const char* env = std::getenv("BSURF_CAP")) {
    bsurf_options_set_cap(opts, std::strtoll(env, nullptr, 10));
  }

  bsurf_result* res = nullptr;
  bsurf_status status = bsurf_run(command.c_str(), scenario.c_str(), opts, &res);
  if (status == BSURF_OK) {
    std::cout << (flags.json ? bsurf_result_json(res) : bsurf_result_text(res));
    if (flags.json) std::cout << "\n";
  } else {
    const char* err = bsurf_result_error(res);
    std::cerr << "error: " << (err ? err : "unknown") << "\n";
  }
  bsurf_result_free(res);
  bsurf_options_free(opts);
  return static_cast<int>(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact matrix-group, torsion-Hom and Brauer-bound computations"};
  app.set_version_flag("--version", std::string(bsurf_version()));
  app.require_subcommand(1);

  GlobalFlags flags;
  app.add_flag("--json", flags.json, "machine-readable JSON output");
  app.add_option("--seed", flags.seed, "seed for randomized subcommands");
  app.add_option("--threads", flags.threads, "opt-in library parallelism");
  app.add_option("--cap", flags.cap, "closure cap (overrides BSURF_CAP)");

  // File-driven commands.
  struct FileCmd {
    const char* name;
    const char* help;
  };
  const FileCmd file_cmds[] = {
      {"commutant", "commuting matrices of a 2x2 matrix over Z/ell^s"},
      {"end-invariants", "equivariant End structure (n, n1, n2) of a matrix image"},
      {"hom-invariants", "equivariant Hom module of a generator-pair action"},
      {"classify-abelian", "conjugacy normal form of an abelian subgroup"},
      {"brauer-bound", "transcendental Brauer n-torsion bound certificate"},
      {"h1-bound", "order of H^1 for a finite integer-matrix action"},
      {"finite-gl2r", "classify a finite rational-trace subgroup of GL2(R)"},
  };
  std::string file_inputs[sizeof(file_cmds) / sizeof(file_cmds[0])];
  for (std::size_t i = 0; i < sizeof(file_cmds) / sizeof(file_cmds[0]); ++i) {
    auto* sub = app.add_subcommand(file_cmds[i].name, file_cmds[i].help);
    sub->fallthrough();
    sub->add_option("file", file_inputs[i], "JSON scenario file")->required();
  }

  // Flag-driven commands.
  std::int64_t ell = 0, s = 1, family_d = 0;
  bool kummer = false, lambda_prod = false;
  auto* enum_cmd = app.add_subcommand("enumerate-abelian",
                                      "abelian subgroups of GL2(Z/ell^s) up to conjugacy");
  enum_cmd->fallthrough();
  enum_cmd->add_option("--ell", ell, "odd prime ell")->required();
  enum_cmd->add_option("--s", s, "exponent s (level ell^s)");
  auto* lattice_cmd = app.add_subcommand("lattice", "rank/determinant/parity/signature reports");
  lattice_cmd->fallthrough();
  auto* fam_opt = lattice_cmd->add_option("--family-d", family_d, "family Gram matrix for degree d");
  auto* kum_opt = lattice_cmd->add_flag("--kummer", kummer, "rank-16 Kummer lattice");
  auto* prod_opt = lattice_cmd->add_flag("--lambda-prod", lambda_prod, "Kummer + hyperbolic plane");
  fam_opt->excludes(kum_opt)->excludes(prod_opt);
  kum_opt->excludes(prod_opt);

  CLI11_PARSE(app, argc, argv);

  for (std::size_t i = 0; i < sizeof(file_cmds) / sizeof(file_cmds[0]); ++i)
    if (app.get_subcommand(file_cmds[i].name)->parsed())
      return run(file_cmds[i].name, read_file(file_inputs[i]), flags);

  if (enum_cmd->parsed()) {
    std::ostringstream scenario;
    scenario << "{\"version\":1,\"ell\":" << ell << ",\"s\":" << s << "}";
    return run("enumerate-abelian", scenario.str(), flags);
  }
  if (lattice_cmd->parsed()) {
    std::ostringstream scenario;
    if (family_d > 0)
      scenario << "{\"version\":1,\"selector\":\"family\",\"d\":" << family_d << "}";
    else if (kummer)
      scenario << "{\"version\":1,\"selector\":\"kummer\"}";
    else if (lambda_prod)
      scenario << "{\"version\":1,\"selector\":\"lambda-prod\"}";
    else {
      std::cerr << "error: pick one of --family-d, --kummer, --lambda-prod\n";
      return 2;
    }
    return run("lattice", scenario.str(), flags);
  }
  return 2;
}
