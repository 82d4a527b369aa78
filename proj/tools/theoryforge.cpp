#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "theoryforge/cli.hpp"

namespace fs = std::filesystem;
using namespace theoryforge;

int main(int argc, char** argv) {
  CLI::App app{"theoryforge: generate constructions from equational theories"};
  app.require_subcommand(1);

  fs::path config_file = "theoryforge.cfg";
  bool config_given = false;
  std::string constructions;
  bool constructions_given = false;
  std::string out_dir;
  std::vector<std::string> suffixes;
  int jobs = 0;
  bool orient_assoc = false;

  auto add_run_flags = [&](CLI::App* sub) {
    sub->add_option("--config", config_file, "key = value settings file")
        ->each([&](const std::string&) { config_given = true; });
    sub->add_option("--constructions", constructions,
                    "comma-separated: sig,prod,termlang,open-termlang,hom,mono,endo")
        ->each([&](const std::string&) { constructions_given = true; });
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--suffix", suffixes, "KIND=STR, repeatable");
    sub->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--orient-assoc", orient_assoc,
                  "orient associativity to re-associate to the right");
  };

  std::vector<fs::path> check_files;
  auto* check = app.add_subcommand("check", "parse and check .eqt files");
  check->add_option("files", check_files)->required();

  fs::path gen_file;
  auto* gen = app.add_subcommand("gen", "generate constructions for a .eqt file");
  gen->add_option("file", gen_file)->required();
  add_run_flags(gen);

  fs::path lib_file;
  auto* lib = app.add_subcommand("lib", "expand a .lib file and generate for every theory");
  lib->add_option("libfile", lib_file)->required();
  add_run_flags(lib);

  fs::path norm_file;
  std::string norm_term;
  auto* norm = app.add_subcommand("normalize",
                                  "normalize a term under a theory's oriented axioms");
  norm->add_option("file", norm_file)->required();
  norm->add_option("term", norm_term)->required();
  add_run_flags(norm);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitParse;
  }

  if (check->parsed()) return cmd_check(check_files);

  RunConfig cfg;
  try {
    if (config_given || fs::exists(config_file)) load_config(cfg, config_file);
    if (constructions_given) cfg.kinds = parse_kind_list(constructions);
    if (!out_dir.empty()) cfg.outDir = out_dir;
    for (const auto& s : suffixes) apply_setting(cfg, "suffix", s);
    if (jobs > 0) cfg.parallelism = jobs;
    if (orient_assoc) cfg.forceOrientAssoc = true;
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kExitParse;
  }

  if (gen->parsed()) return cmd_gen(gen_file, cfg);
  if (lib->parsed()) return cmd_lib(lib_file, cfg);
  return cmd_normalize(norm_file, norm_term, cfg);
}
