#include <random>

#include "doctest.h"
#include "random_theory.hpp"
#include "test_util.hpp"
#include "theoryforge/eqtheory.hpp"
#include "theoryforge/parser.hpp"
#include "theoryforge/printer.hpp"

using namespace theoryforge;

namespace {

EqTheory monoid() {
  auto ds = parse_file(testutil::slurp(testutil::data_dir() / "fixtures/monoid.eqt"));
  return extract(std::get<RecordDecl>(ds[0]));
}

RecordDecl record(const std::string& src) {
  return std::get<RecordDecl>(parse_file(src)[0]);
}

ShapeError::Kind shape_error_of(const std::string& src) {
  try {
    extract(record(src));
  } catch (const ShapeError& e) {
    return e.kind;
  }
  FAIL("no ShapeError for: " << src);
  return ShapeError::Kind::NoSort;
}

}  // namespace

TEST_CASE("extract the monoid theory") {
  EqTheory t = monoid();
  CHECK(t.name == "Monoid");
  CHECK(t.sort.name == "A");
  CHECK(t.waist == 1);
  CHECK(t.telescope_size() == 6);
  CHECK(t.declared_names() ==
        std::vector<std::string>{"A", "e", "op", "lunit", "runit", "assoc"});
  CHECK(arity(t.funcTypes[0]) == 0);
  CHECK(arity(t.funcTypes[1]) == 2);
  REQUIRE(t.axioms.size() == 3);
  CHECK(t.axioms[2].var_names() == std::vector<std::string>{"x", "y", "z"});
  CHECK(associativity_operator(t.axioms[2]) == "op");
  CHECK_FALSE(associativity_operator(t.axioms[0]));
}

TEST_CASE("associativity is recognised in either orientation only") {
  EqTheory t = monoid();
  Axiom flipped = t.axioms[2];
  std::swap(flipped.lhs, flipped.rhs);
  CHECK(associativity_operator(flipped) == "op");
  Axiom collapsed = t.axioms[2];
  collapsed.rhs = collapsed.lhs;
  CHECK_FALSE(associativity_operator(collapsed));
}

TEST_CASE("extract rejects non-equational shapes") {
  CHECK(shape_error_of("record M : Set where\n field\n  f : Set → Set\n") ==
        ShapeError::Kind::NoSort);
  CHECK(shape_error_of("record M (A : Set) (B : Set) : Set where\n") ==
        ShapeError::Kind::MultipleSorts);
  CHECK(shape_error_of("record M (A : Set) : Set where\n field\n  f : (A → A) → A\n") ==
        ShapeError::Kind::HigherOrder);
  CHECK(shape_error_of("record M (A : Set) : Set where\n field\n  f : A → A\n"
                       "  inj : (x y : A) → f x == f y → x == y\n") ==
        ShapeError::Kind::NotEquational);
  CHECK(shape_error_of("record M (A : Set) : Set where\n field\n  e : A\n"
                       "  bad : {x : A} → e x == x\n") == ShapeError::Kind::IllSorted);
  CHECK(shape_error_of("record M (A : Set) : Set where\n field\n  e : A\n  e : A\n") ==
        ShapeError::Kind::DuplicateName);
  CHECK(shape_error_of("record M (e : A) : Set where\n field\n  A : Set\n") ==
        ShapeError::Kind::BadTelescope);
}

TEST_CASE("waist counts parameters") {
  EqTheory t = extract(record(
      "record M (A : Set) (e : A) : Set where\n field\n  op : A → A → A\n"));
  CHECK(t.waist == 2);
  CHECK(t.declared_names() == std::vector<std::string>{"A", "e", "op"});
  CHECK(extract(embed(t)) == t);
}

TEST_CASE("suffixed rename uses the structural axiom names") {
  EqTheory p = rename(monoid(), RenameScheme::suffixed("P"));
  CHECK(p.declared_names() == std::vector<std::string>{
                                  "AP", "eP", "opP", "lunit_eP", "runit_eP",
                                  "associative_opP"});
  CHECK(p.axioms[2].var_names() == std::vector<std::string>{"xP", "yP", "zP"});
  CHECK(print_term(p.axioms[0].lhs) == "opP eP xP");
}

TEST_CASE("explicit rename") {
  EqTheory t = rename(monoid(), RenameScheme::explicit_map({{"op", "plus"}, {"e", "zero"}}));
  CHECK(t.declared_names() ==
        std::vector<std::string>{"A", "zero", "plus", "lunit", "runit", "assoc"});
  CHECK(print_term(t.axioms[2].rhs) == "plus (plus x y) z");
  CHECK(t.axioms[2].var_names() == std::vector<std::string>{"x", "y", "z"});

  CHECK_THROWS_AS(rename(monoid(), RenameScheme::explicit_map({{"nope", "x"}})),
                  std::invalid_argument);
  CHECK_THROWS_AS(rename(monoid(), RenameScheme::explicit_map({{"op", "1bad"}})),
                  std::invalid_argument);
  CHECK_THROWS_AS(rename(monoid(), RenameScheme::explicit_map({{"op", "e"}})),
                  CollisionError);
}

TEST_CASE("rename with the identity scheme changes nothing") {
  CHECK(rename(monoid(), RenameScheme::identity()) == monoid());
}

TEST_CASE("property: embed/extract, print/parse and rename inverses on random theories") {
  std::mt19937 rng(20241017);
  for (int i = 0; i < 200; ++i) {
    EqTheory t = randgen::random_theory(rng, "T" + std::to_string(i));
    CAPTURE(print_decl(embed(t)));
    RecordDecl d = embed(t);
    CHECK(extract(d) == t);
    auto reparsed = parse_file(print_decl(d));
    REQUIRE(reparsed.size() == 1);
    CHECK(std::get<RecordDecl>(reparsed[0]) == d);

    std::map<std::string, std::string> fwd, back;
    for (const auto& n : t.declared_names()) {
      fwd[n] = n + "_r";
      back[n + "_r"] = n;
    }
    EqTheory r = rename(t, RenameScheme::explicit_map(fwd));
    CHECK(r.telescope_size() == t.telescope_size());
    CHECK(rename(r, RenameScheme::explicit_map(back)) == t);
  }
}
