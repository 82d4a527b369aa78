#ifndef THEORYFORGE_EQTHEORY_HPP
#define THEORYFORGE_EQTHEORY_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "theoryforge/syntax.hpp"

namespace theoryforge {

/// A quantified equation `binders → lhs == rhs`.
struct Axiom {
  std::string name;
  std::vector<Binder> binders;
  Term lhs;
  Term rhs;
  SourcePos pos;

  /// Bound variables in binding order.
  std::vector<std::pair<std::string, TypeExpr>> vars() const;
  std::vector<std::string> var_names() const;
  TypeExpr type() const;

  friend bool operator==(const Axiom& a, const Axiom& b);
};

/// Internal form of a single-sorted equational theory. The sort, the
/// function symbols and the axioms form a telescope in that order; the
/// first `waist` entries of it are record parameters.
struct EqTheory {
  std::string name;
  std::string constructorName;
  Constr sort;
  std::vector<Constr> funcTypes;
  std::vector<Axiom> axioms;
  std::size_t waist = 0;

  std::size_t telescope_size() const {
    return 1 + funcTypes.size() + axioms.size();
  }
  /// Every declared name in telescope order.
  std::vector<std::string> declared_names() const;

  friend bool operator==(const EqTheory& a, const EqTheory& b);
};

/// Number of arguments of a function symbol, read off its arrow chain.
std::size_t arity(const TypeExpr& t);
std::size_t arity(const Constr& c);

class ShapeError : public std::runtime_error {
 public:
  enum class Kind {
    NoSort,
    MultipleSorts,
    NotEquational,
    HigherOrder,
    IllSorted,
    DuplicateName,
    BadTelescope
  };
  ShapeError(Kind kind, std::string theory, std::string detail,
             SourcePos pos = {});

  Kind kind;
  std::string theory;
  SourcePos pos;
};

std::string_view to_string(ShapeError::Kind k);

class CollisionError : public std::runtime_error {
 public:
  CollisionError(std::string theory, std::string name);
  std::string theory;
  std::string name;
};

/// How declared names are rewritten. Explicit `mapping` entries win; other
/// sort and function names get `suffix` appended.
struct RenameScheme {
  enum class AxiomRule {
    /// Axiom names take the suffix unless `mapping` names them.
    Plain,
    /// `lunit` over constant `e` becomes `lunit_eP`; associativity of `op`
    /// becomes `associative_opP`; anything else gets the suffix.
    Structural
  };

  std::string suffix;
  AxiomRule axiomRule = AxiomRule::Plain;
  std::map<std::string, std::string> mapping;
  /// Whether bound axiom variables also take the suffix.
  bool renameVars = false;

  static RenameScheme identity() { return {}; }
  static RenameScheme suffixed(std::string suffix);
  static RenameScheme explicit_map(std::map<std::string, std::string> m);
};

/// Recognises `f x (f y z) == f (f x y) z` in either orientation and
/// returns the operator name.
std::optional<std::string> associativity_operator(const Axiom& ax);

EqTheory extract(const RecordDecl& d);
EqTheory rename(const EqTheory& t, const RenameScheme& s);
RecordDecl embed(const EqTheory& t);

/// Checks that `lhs` and `rhs` are well-sorted terms of `t` under `vars`.
/// Throws ShapeError(IllSorted) otherwise.
void check_equation(const EqTheory& t, const Axiom& ax);

}  // namespace theoryforge

#endif
