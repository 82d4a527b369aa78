#include "doctest.h"
#include "test_util.hpp"
#include "theoryforge/checker.hpp"
#include "theoryforge/generators.hpp"
#include "theoryforge/parser.hpp"

using namespace theoryforge;

namespace {

std::vector<CheckError> check_source(const std::string& src) {
  return check_module(parse_file(src));
}

std::vector<CheckError> check_fixture(const std::string& name) {
  return check_source(testutil::slurp(testutil::data_dir() / "fixtures" / name));
}

std::string monoid_src() {
  return testutil::slurp(testutil::data_dir() / "fixtures/monoid.eqt");
}

}  // namespace

TEST_CASE("negative fixtures give exactly their designated error") {
  auto dup = check_fixture("duplicate_field.eqt");
  REQUIRE(dup.size() == 1);
  CHECK(dup[0].kind == CheckError::Kind::DuplicateField);
  CHECK(dup[0].pos.line == 4);
  CHECK(format_error(dup[0], "dup.eqt") ==
        "dup.eqt:4:5: DuplicateField: field 'e' is declared twice");

  auto unbound = check_fixture("unbound_name.eqt");
  REQUIRE(unbound.size() == 1);
  CHECK(unbound[0].kind == CheckError::Kind::UnboundName);
  CHECK(unbound[0].pos.line == 3);
  CHECK(unbound[0].pos.column == 14);

  auto arity = check_fixture("arity_mismatch.eqt");
  REQUIRE(arity.size() == 1);
  CHECK(arity[0].kind == CheckError::Kind::ArityMismatch);
  CHECK(arity[0].decl == "Monoid");
}

TEST_CASE("well-formed inputs check clean") {
  CHECK(check_fixture("monoid.eqt").empty());
  CHECK(check_fixture("empty.eqt").empty());
  CHECK(check_source("").empty());
}

TEST_CASE("the figure's blocks check clean together with the input") {
  std::string src = monoid_src();
  for (const char* name : {"MonoidSig", "MonoidProd", "MonoidLang", "MonoidHom"})
    src += testutil::slurp(testutil::data_dir() / "golden" / (std::string(name) + ".eqt"));
  auto errors = check_source(src);
  for (const auto& e : errors) MESSAGE(format_error(e, "fig"));
  CHECK(errors.empty());
}

TEST_CASE("sort mismatches") {
  auto errs = check_source(monoid_src() +
                           "record Bad (A : Set) (M : Monoid A) : Set where\n"
                           "  field\n    f : A\n    g : e M == M\n");
  REQUIRE(errs.size() == 1);
  CHECK(errs[0].kind == CheckError::Kind::SortMismatch);

  errs = check_source("record M (A : Set) : Set where\n field\n  e : A\n  f : e\n");
  REQUIRE(errs.size() == 1);
  CHECK(errs[0].kind == CheckError::Kind::SortMismatch);
}

TEST_CASE("instances project their fields") {
  auto errs = check_source(monoid_src() +
                           "record Twice (A : Set) (M : Monoid A) : Set where\n"
                           "  field\n    law : (x : A) → op M x (e M) == x\n");
  CHECK(errs.empty());
  errs = check_source(monoid_src() +
                      "record Bad (A : Set) (M : Monoid A) : Set where\n"
                      "  field\n    law : (x : A) → op M x == x\n");
  REQUIRE(errs.size() == 1);
  CHECK(errs[0].kind == CheckError::Kind::ArityMismatch);
}

TEST_CASE("field names are distinct across the whole module") {
  auto errs = check_source(
      "record P (A : Set) : Set where\n field\n  e : A\n"
      "record Q (A : Set) : Set where\n field\n  e : A\n");
  REQUIRE(errs.size() == 1);
  CHECK(errs[0].kind == CheckError::Kind::DuplicateField);
  CHECK(errs[0].decl == "Q");
}

TEST_CASE("duplicate declarations") {
  auto errs = check_source(
      "record P (A : Set) : Set where\n"
      "record P (B : Set) : Set where\n");
  REQUIRE(errs.size() == 1);
  CHECK(errs[0].kind == CheckError::Kind::DuplicateDecl);
}

TEST_CASE("Prod is builtin unless declared") {
  const std::string use = "record R (A : Set) : Set where\n field\n  p : Prod A A\n";
  CHECK(check_source(use).empty());
  auto with_decl = "data Prod (A : Set) (B : Set) : Set where\n  pair : A → B → Prod A B\n" + use;
  CHECK(check_source(with_decl).empty());
  auto errs = check_source("record R (A : Set) : Set where\n field\n  p : Prod A\n");
  REQUIRE(errs.size() == 1);
  CHECK(errs[0].kind == CheckError::Kind::ArityMismatch);
}

TEST_CASE("a context remembers earlier declarations") {
  CheckContext ctx;
  auto ds = parse_file(monoid_src());
  CHECK(check_decl(ds[0], ctx).empty());
  CHECK(ctx.declares("Monoid"));
  CHECK(ctx.used_field_names().count("op"));
  auto hom = parse_file(testutil::slurp(testutil::data_dir() / "golden/MonoidHom.eqt"));
  CHECK(check_decl(hom[0], ctx).empty());
  CheckContext fresh;
  auto errs = check_decl(hom[0], fresh);
  REQUIRE_FALSE(errs.empty());
  CHECK(errs[0].kind == CheckError::Kind::UnboundName);
}
