#include <cstdint>
#include <random>
#include <set>

#include "doctest.h"
#include "random_theory.hpp"
#include "test_util.hpp"
#include "theoryforge/engine.hpp"
#include "theoryforge/parser.hpp"

using namespace theoryforge;

namespace {

EqTheory monoid() {
  auto ds = parse_file(testutil::slurp(testutil::data_dir() / "fixtures/monoid.eqt"));
  return extract(std::get<RecordDecl>(ds[0]));
}

OpenTerm e() { return OpenTerm::op("e"); }
OpenTerm op(OpenTerm a, OpenTerm b) { return OpenTerm::op("op", {std::move(a), std::move(b)}); }
OpenTerm x(std::size_t i) { return OpenTerm::var(i); }

Model<std::int64_t> int_sum() {
  Model<std::int64_t> m;
  m.interp["e"] = {0, [](std::span<const std::int64_t>) { return std::int64_t{0}; }};
  m.interp["op"] = {2, [](std::span<const std::int64_t> a) { return a[0] + a[1]; }};
  return m;
}

Model<bool> bool_and() {
  Model<bool> m;
  m.interp["e"] = {0, [](std::span<const bool>) { return true; }};
  m.interp["op"] = {2, [](std::span<const bool> a) { return a[0] && a[1]; }};
  return m;
}

// Strings under concatenation: a monoid that is not commutative, so a
// normalizer that reordered arguments would be caught.
Model<std::string> strings() {
  Model<std::string> m;
  m.interp["e"] = {0, [](std::span<const std::string>) { return std::string(); }};
  m.interp["op"] = {2, [](std::span<const std::string> a) { return a[0] + a[1]; }};
  return m;
}

bool right_nested(const OpenTerm& t) {
  if (t.is_var()) return true;
  if (t.sym == "op" && !t.args[0].is_var() && t.args[0].sym == "op") return false;
  for (const auto& a : t.args)
    if (!right_nested(a)) return false;
  return true;
}

bool irreducible(const OpenTerm& t, std::span<const RewriteRule> rules) {
  for (const auto& r : rules) {
    std::vector<std::optional<OpenTerm>> s(r.vars);
    if (match(r.lhs, t, s)) return false;
  }
  for (const auto& a : t.args)
    if (!irreducible(a, rules)) return false;
  return true;
}

}  // namespace

TEST_CASE("eval is the homomorphic extension of the environment") {
  Env<std::int64_t> env{3, 4};
  CHECK(eval(op(x(0), op(e(), x(1))), int_sum(), env) == 7);
  CHECK_THROWS_AS(eval(x(2), int_sum(), env), ArityError);
  CHECK_THROWS_AS(eval(OpenTerm::op("op", {x(0)}), int_sum(), env), ArityError);
  CHECK_THROWS_AS(eval(OpenTerm::op("inv", {x(0)}), int_sum(), env), ArityError);
}

TEST_CASE("open terms convert to and from surface terms") {
  std::vector<std::string> vars{"a", "b"};
  Term s = to_surface_term(op(x(1), op(e(), x(0))), vars);
  CHECK(to_open_term(s, vars) == op(x(1), op(e(), x(0))));
  CHECK_THROWS_AS(to_open_term(Term::var("c"), vars), ArityError);
  CHECK(to_string(op(x(1), e())) == "(op #1 e)");
}

TEST_CASE("orientation of the monoid axioms") {
  EqTheory t = monoid();
  auto lunit = orient(t.axioms[0]);
  REQUIRE(lunit);
  CHECK(lunit->lhs == op(e(), x(0)));
  CHECK(lunit->rhs == x(0));
  CHECK(lunit->decreasing);
  CHECK(orient(t.axioms[1])->lhs == op(x(0), e()));
  CHECK_FALSE(orient(t.axioms[2]));
  CHECK(orient_all(t).size() == 2);

  auto assoc = orient(t.axioms[2], OrientOptions{true});
  REQUIRE(assoc);
  CHECK_FALSE(assoc->decreasing);
  CHECK(assoc->lhs == op(op(x(0), x(1)), x(2)));
  CHECK(assoc->rhs == op(x(0), op(x(1), x(2))));
}

TEST_CASE("orientation refuses rules that would invent variables") {
  Axiom ax;
  ax.name = "zero";
  Binder b;
  b.names = {"x", "y"};
  b.type = TypeExpr::sort_ref("A");
  ax.binders = {b};
  ax.lhs = Term::apply(Term::sym("op"), {Term::var("x"), Term::var("y")});
  ax.rhs = Term::var("x");
  auto r = orient(ax);
  REQUIRE(r);
  CHECK(r->rhs == x(0));
  std::swap(ax.lhs, ax.rhs);
  CHECK(orient(ax)->lhs == op(x(0), x(1)));  // reversed automatically
  ax.lhs = Term::var("y");
  ax.rhs = Term::var("x");
  CHECK_FALSE(orient(ax));
}

TEST_CASE("normalization examples") {
  auto rules = orient_all(monoid());
  OpenTerm t = op(op(x(0), e()), op(e(), op(x(1), e())));
  std::size_t steps = 0;
  CHECK(normalize(t, rules, sufficient_fuel(t, rules), &steps) == op(x(0), x(1)));
  CHECK(steps == 3);
  // Fuel bounds the number of steps taken.
  CHECK(normalize(t, rules, 1, &steps) == op(x(0), op(e(), op(x(1), e()))));
  CHECK(steps == 1);
  CHECK(normalize(e(), rules, 0) == e());
  CHECK(normalize(op(e(), e()), rules, 5) == e());
}

TEST_CASE("forced associativity re-associates to the right") {
  auto rules = orient_all(monoid(), OrientOptions{true});
  REQUIRE(rules.size() == 3);
  OpenTerm t = op(op(op(x(0), x(1)), x(2)), op(x(3), e()));
  CHECK(normalize(t, rules, sufficient_fuel(t, rules)) ==
        op(x(0), op(x(1), op(x(2), x(3)))));
  CHECK(sufficient_fuel(t, rules) == t.size() * t.size() * t.size() + 1);
  CHECK(sufficient_fuel(t, orient_all(monoid())) == t.size());
}

TEST_CASE("enumerate_terms counts") {
  Signature sig{{"e", 0}, {"op", 2}};
  CHECK(enumerate_terms(sig, 1, 0).empty());
  CHECK(enumerate_terms(sig, 1, 1).size() == 2);
  CHECK(enumerate_terms(sig, 1, 2).size() == 6);
  CHECK(enumerate_terms(sig, 1, 3).size() == 38);
  CHECK(enumerate_terms(sig, 2, 3).size() == 147);
  Signature unary{{"s", 1}};
  CHECK(enumerate_terms(unary, 1, 4).size() == 4);
  CHECK(enumerate_terms(unary, 0, 4).empty());

  auto all = enumerate_terms(sig, 2, 3);
  std::set<std::string> seen;
  for (const auto& t : all) {
    CHECK(t.depth() <= 3);
    CHECK(seen.insert(to_string(t)).second);
  }
  for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1].size() <= all[i].size());
}

TEST_CASE("property: normalization preserves meaning in monoid models") {
  const Signature sig = signature_of(monoid());
  const auto plain = orient_all(monoid());
  const auto forced = orient_all(monoid(), OrientOptions{true});
  std::mt19937 rng(42);
  std::uniform_int_distribution<std::int64_t> val(-1000, 1000);
  std::bernoulli_distribution flip(0.5);
  const std::size_t nvars = 4;
  for (int i = 0; i < 1000; ++i) {
    OpenTerm t = randgen::random_term(rng, sig, nvars, 6);
    CAPTURE(to_string(t));
    REQUIRE(t.depth() <= 6);
    Env<std::int64_t> ienv;
    Env<bool> benv;
    Env<std::string> senv;
    for (std::size_t v = 0; v < nvars; ++v) {
      ienv.push_back(val(rng));
      benv.push_back(flip(rng));
      senv.push_back(std::string(1, static_cast<char>('a' + v)));
    }
    OpenTerm n = normalize(t, plain, sufficient_fuel(t, plain));
    CHECK(eval(n, int_sum(), ienv) == eval(t, int_sum(), ienv));
    CHECK(eval(n, bool_and(), benv) == eval(t, bool_and(), benv));
    CHECK(eval(n, strings(), senv) == eval(t, strings(), senv));
    CHECK(irreducible(n, plain));

    OpenTerm f = normalize(t, forced, sufficient_fuel(t, forced));
    CHECK(eval(f, int_sum(), ienv) == eval(t, int_sum(), ienv));
    CHECK(eval(f, strings(), senv) == eval(t, strings(), senv));
    CHECK(right_nested(f));
    CHECK(irreducible(f, forced));
  }
}
