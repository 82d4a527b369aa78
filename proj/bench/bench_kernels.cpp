#include <benchmark/benchmark.h>

#include <fstream>
#include <random>
#include <sstream>

#include "theoryforge/combinators.hpp"
#include "theoryforge/pipeline.hpp"

using namespace theoryforge;

namespace {

std::vector<TheoryExpr> library_entries() {
  std::ifstream in(std::string(THEORYFORGE_DATA_DIR) + "/library/algebra.lib");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_library(ss.str());
}

const std::vector<TheorySource>& sources() {
  static const std::vector<TheorySource> srcs = [] {
    std::vector<TheorySource> out;
    for (const auto& t : expand_library_serial(library_entries()).theories())
      out.push_back({t, embed(t)});
    return out;
  }();
  return srcs;
}

const std::vector<GenKind>& all_kinds() {
  static const std::vector<GenKind> kinds{
      GenKind::Signature, GenKind::Product,      GenKind::TermLang,
      GenKind::OpenTermLang, GenKind::Hom, GenKind::Monomorphism,
      GenKind::Endomorphism};
  return kinds;
}

OpenTerm random_term(std::mt19937& rng, const Signature& sig, int depth) {
  std::uniform_int_distribution<std::size_t> pick(0, sig.size() - 1);
  std::uniform_int_distribution<std::size_t> var(0, 3);
  if (depth <= 1) return OpenTerm::var(var(rng));
  const auto& [f, n] = sig[pick(rng)];
  std::vector<OpenTerm> args;
  for (std::size_t i = 0; i < n; ++i) args.push_back(random_term(rng, sig, depth - 1));
  return OpenTerm::op(f, std::move(args));
}

}  // namespace

static void BM_ExpandSerial(benchmark::State& state) {
  auto entries = library_entries();
  for (auto _ : state) benchmark::DoNotOptimize(expand_library_serial(entries));
}
BENCHMARK(BM_ExpandSerial);

static void BM_ExpandParallel(benchmark::State& state) {
  auto entries = library_entries();
  for (auto _ : state)
    benchmark::DoNotOptimize(expand_library(entries, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_ExpandParallel)->Arg(2)->Arg(4)->Arg(8);

static void BM_GenerateSerial(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(generate_modules_serial(sources(), all_kinds(), {}));
}
BENCHMARK(BM_GenerateSerial);

static void BM_GenerateParallel(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(
        generate_modules(sources(), all_kinds(), {}, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_GenerateParallel)->Arg(2)->Arg(4)->Arg(8);

static void BM_CheckSerial(benchmark::State& state) {
  auto mods = generate_modules_serial(sources(), all_kinds(), {});
  for (auto _ : state) benchmark::DoNotOptimize(check_modules_serial(mods));
}
BENCHMARK(BM_CheckSerial);

static void BM_CheckParallel(benchmark::State& state) {
  auto mods = generate_modules_serial(sources(), all_kinds(), {});
  for (auto _ : state)
    benchmark::DoNotOptimize(check_modules(mods, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_CheckParallel)->Arg(2)->Arg(4)->Arg(8);

static void normalize_fixture(std::vector<OpenTerm>& terms, std::vector<RewriteRule>& rules) {
  const EqTheory* ring = nullptr;
  for (const auto& s : sources())
    if (s.theory.name == "Ring") ring = &s.theory;
  rules = orient_all(*ring, OrientOptions{true});
  std::mt19937 rng(11);
  for (int i = 0; i < 2000; ++i) terms.push_back(random_term(rng, signature_of(*ring), 7));
}

static void BM_NormalizeSerial(benchmark::State& state) {
  std::vector<OpenTerm> terms;
  std::vector<RewriteRule> rules;
  normalize_fixture(terms, rules);
  for (auto _ : state) benchmark::DoNotOptimize(normalize_batch_serial(terms, rules));
}
BENCHMARK(BM_NormalizeSerial);

static void BM_NormalizeParallel(benchmark::State& state) {
  std::vector<OpenTerm> terms;
  std::vector<RewriteRule> rules;
  normalize_fixture(terms, rules);
  for (auto _ : state)
    benchmark::DoNotOptimize(normalize_batch(terms, rules, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_NormalizeParallel)->Arg(2)->Arg(4)->Arg(8);

BENCHMARK_MAIN();
