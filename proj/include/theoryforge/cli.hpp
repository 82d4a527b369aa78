#ifndef THEORYFORGE_CLI_HPP
#define THEORYFORGE_CLI_HPP

#include <filesystem>
#include <iostream>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "theoryforge/generators.hpp"

namespace theoryforge {

enum ExitCode : int {
  kExitOk = 0,
  kExitParse = 1,  // also bad usage and unreadable input
  kExitCheck = 2,
  kExitGeneration = 3
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::vector<GenKind> kinds = default_kinds();
  std::map<GenKind, std::string> suffixes;
  std::filesystem::path outDir = "out";
  int parallelism = 1;
  bool forceOrientAssoc = false;

  /// Throws ConfigError when the invariants do not hold.
  void validate() const;
  GenOptions gen_options() const;
};

/// Applies one `key = value` setting: constructions, out, jobs, orient-assoc,
/// or suffix (as KIND=STR).
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);
std::vector<GenKind> parse_kind_list(std::string_view csv);
/// Reads a line-oriented `key = value` file; `#` and `--` start comments.
void load_config(RunConfig& cfg, const std::filesystem::path& file);

int cmd_check(const std::vector<std::filesystem::path>& files,
              std::ostream& out = std::cout, std::ostream& err = std::cerr);
int cmd_gen(const std::filesystem::path& file, const RunConfig& cfg,
            std::ostream& out = std::cout, std::ostream& err = std::cerr);
int cmd_lib(const std::filesystem::path& libfile, const RunConfig& cfg,
            std::ostream& out = std::cout, std::ostream& err = std::cerr);
/// Normalizes `term` under the oriented axioms of the first theory in `file`.
int cmd_normalize(const std::filesystem::path& file, std::string_view term,
                  const RunConfig& cfg, std::ostream& out = std::cout,
                  std::ostream& err = std::cerr);

}  // namespace theoryforge

#endif
