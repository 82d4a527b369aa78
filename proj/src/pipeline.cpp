#include "theoryforge/pipeline.hpp"

#include <algorithm>
#include <exception>
#include <optional>

namespace theoryforge {

namespace {

// Runs f(i) for every index on up to `jobs` threads. Exceptions are held per
// index and the lowest-indexed one is rethrown, as a sequential loop would.
template <class F>
void parallel_for(std::size_t n, int jobs, F&& f) {
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic) num_threads(std::max(jobs, 1))
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      f(static_cast<std::size_t>(i));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

std::vector<Decl> TheoryModule::decls() const {
  std::vector<Decl> out = prelude;
  out.push_back(input);
  out.insert(out.end(), generated.begin(), generated.end());
  return out;
}

TheoryModule generate_module(const TheorySource& src,
                             std::span<const GenKind> kinds,
                             const GenOptions& opts) {
  TheoryModule m;
  m.theory = src.theory.name;
  m.input = src.decl;
  m.generated = gen_all(src.theory, kinds, opts);
  if (std::find(kinds.begin(), kinds.end(), GenKind::Product) != kinds.end())
    m.prelude.push_back(prod_declaration());
  return m;
}

std::vector<TheoryModule> generate_modules(std::span<const TheorySource> srcs,
                                           std::span<const GenKind> kinds,
                                           const GenOptions& opts, int jobs) {
  std::vector<TheoryModule> out(srcs.size());
  parallel_for(srcs.size(), jobs,
               [&](std::size_t i) { out[i] = generate_module(srcs[i], kinds, opts); });
  return out;
}

std::vector<TheoryModule> generate_modules_serial(
    std::span<const TheorySource> srcs, std::span<const GenKind> kinds,
    const GenOptions& opts) {
  std::vector<TheoryModule> out;
  out.reserve(srcs.size());
  for (const auto& s : srcs) out.push_back(generate_module(s, kinds, opts));
  return out;
}

std::vector<std::vector<CheckError>> check_modules(
    std::span<const TheoryModule> mods, int jobs) {
  std::vector<std::vector<CheckError>> out(mods.size());
  parallel_for(mods.size(), jobs,
               [&](std::size_t i) { out[i] = check_module(mods[i].decls()); });
  return out;
}

std::vector<std::vector<CheckError>> check_modules_serial(
    std::span<const TheoryModule> mods) {
  std::vector<std::vector<CheckError>> out;
  out.reserve(mods.size());
  for (const auto& m : mods) out.push_back(check_module(m.decls()));
  return out;
}

std::vector<OpenTerm> normalize_batch(std::span<const OpenTerm> terms,
                                      std::span<const RewriteRule> rules,
                                      int jobs) {
  std::vector<OpenTerm> out(terms.size());
  parallel_for(terms.size(), jobs, [&](std::size_t i) {
    out[i] = normalize(terms[i], rules, sufficient_fuel(terms[i], rules));
  });
  return out;
}

std::vector<OpenTerm> normalize_batch_serial(std::span<const OpenTerm> terms,
                                             std::span<const RewriteRule> rules) {
  std::vector<OpenTerm> out;
  out.reserve(terms.size());
  for (const auto& t : terms)
    out.push_back(normalize(t, rules, sufficient_fuel(t, rules)));
  return out;
}

}  // namespace theoryforge
