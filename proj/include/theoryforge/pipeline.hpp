#ifndef THEORYFORGE_PIPELINE_HPP
#define THEORYFORGE_PIPELINE_HPP

#include <span>
#include <string>
#include <vector>

#include "theoryforge/checker.hpp"
#include "theoryforge/engine.hpp"
#include "theoryforge/eqtheory.hpp"
#include "theoryforge/generators.hpp"
#include "theoryforge/syntax.hpp"

// Batch kernels. Each parallel kernel has a sequential twin that computes the
// same result; the tests compare the two and the benchmarks time them.

namespace theoryforge {

struct TheorySource {
  EqTheory theory;
  /// The declaration written out for the theory itself.
  Decl decl;
};

/// One output module: optional Prod prelude, the theory, its constructions.
struct TheoryModule {
  std::string theory;
  std::vector<Decl> prelude;
  Decl input;
  std::vector<Decl> generated;

  std::vector<Decl> decls() const;
  /// Input plus generated; the prelude is not counted.
  std::size_t definitions() const { return 1 + generated.size(); }
};

TheoryModule generate_module(const TheorySource& src,
                             std::span<const GenKind> kinds,
                             const GenOptions& opts);

std::vector<TheoryModule> generate_modules(std::span<const TheorySource> srcs,
                                           std::span<const GenKind> kinds,
                                           const GenOptions& opts, int jobs);
std::vector<TheoryModule> generate_modules_serial(
    std::span<const TheorySource> srcs, std::span<const GenKind> kinds,
    const GenOptions& opts);

std::vector<std::vector<CheckError>> check_modules(
    std::span<const TheoryModule> mods, int jobs);
std::vector<std::vector<CheckError>> check_modules_serial(
    std::span<const TheoryModule> mods);

std::vector<OpenTerm> normalize_batch(std::span<const OpenTerm> terms,
                                      std::span<const RewriteRule> rules,
                                      int jobs);
std::vector<OpenTerm> normalize_batch_serial(std::span<const OpenTerm> terms,
                                             std::span<const RewriteRule> rules);

}  // namespace theoryforge

#endif
