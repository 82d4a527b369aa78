#include <random>

#include "doctest.h"
#include "random_theory.hpp"
#include "test_util.hpp"
#include "theoryforge/combinators.hpp"
#include "theoryforge/pipeline.hpp"
#include "theoryforge/printer.hpp"

using namespace theoryforge;

namespace {

std::vector<TheorySource> library_sources() {
  Library lib = expand_library_serial(
      parse_library(testutil::slurp(testutil::data_dir() / "library/algebra.lib")));
  std::vector<TheorySource> srcs;
  for (const auto& t : lib.theories()) srcs.push_back({t, embed(t)});
  return srcs;
}

}  // namespace

TEST_CASE("module layout") {
  auto srcs = library_sources();
  auto kinds = default_kinds();
  TheoryModule m = generate_module(srcs[0], kinds, {});
  CHECK(m.theory == "Carrier");
  CHECK(m.prelude.size() == 1);
  CHECK(m.definitions() == 5);
  CHECK(m.decls().size() == 6);
  std::vector<GenKind> no_prod{GenKind::Signature};
  CHECK(generate_module(srcs[0], no_prod, {}).prelude.empty());
}

TEST_CASE("parallel kernels agree with their sequential references") {
  auto srcs = library_sources();
  std::vector<GenKind> kinds{GenKind::Signature, GenKind::Product, GenKind::TermLang,
                             GenKind::OpenTermLang, GenKind::Hom, GenKind::Monomorphism,
                             GenKind::Endomorphism};
  auto serial = generate_modules_serial(srcs, kinds, {});
  auto serial_checks = check_modules_serial(serial);
  for (const auto& errs : serial_checks) CHECK(errs.empty());
  for (int jobs : {1, 3, 8}) {
    auto par = generate_modules(srcs, kinds, {}, jobs);
    REQUIRE(par.size() == serial.size());
    for (std::size_t i = 0; i < par.size(); ++i)
      CHECK(print_module(par[i].decls()) == print_module(serial[i].decls()));
    auto checks = check_modules(par, jobs);
    CHECK(checks.size() == serial_checks.size());
  }
}

TEST_CASE("parallel generation reports the lowest-indexed failure") {
  auto srcs = library_sources();
  std::vector<GenKind> kinds{GenKind::Evaluator};
  try {
    generate_modules(srcs, kinds, {}, 4);
    FAIL("expected failure");
  } catch (const GenerationError& e) {
    CHECK(e.theory == srcs[0].theory.name);
  }
}

TEST_CASE("batch normalization agrees with the sequential loop") {
  auto srcs = library_sources();
  const EqTheory* ring = nullptr;
  for (const auto& s : srcs)
    if (s.theory.name == "Ring") ring = &s.theory;
  REQUIRE(ring);
  const Signature sig = signature_of(*ring);
  auto rules = orient_all(*ring, OrientOptions{true});
  std::mt19937 rng(3);
  std::vector<OpenTerm> terms;
  for (int i = 0; i < 300; ++i) terms.push_back(randgen::random_term(rng, sig, 3, 5));
  auto serial = normalize_batch_serial(terms, rules);
  CHECK(normalize_batch(terms, rules, 4) == serial);
  CHECK(normalize_batch(terms, rules, 1) == serial);
}
