#ifndef THEORYFORGE_SYNTAX_HPP
#define THEORYFORGE_SYNTAX_HPP

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace theoryforge {

struct SourcePos {
  int line = 0;
  int column = 0;
};

/// Names are letters, digits, `_`, `-` and `'`, starting with a letter or `_`,
/// and never a reserved word.
bool is_valid_name(std::string_view text);
bool is_reserved_word(std::string_view text);

/// First-order applicative term. Applications are curried and binary;
/// `spine()` recovers head-plus-arguments form.
struct Term {
  enum class Kind { Var, Sym, App };

  Kind kind = Kind::Sym;
  std::string name;            // Var, Sym
  std::vector<Term> children;  // App: {fn, arg}
  SourcePos pos;

  static Term var(std::string name, SourcePos pos = {});
  static Term sym(std::string name, SourcePos pos = {});
  static Term app(Term fn, Term arg);
  /// head applied to args, left-nested.
  static Term apply(Term head, std::vector<Term> args);

  bool is_app() const { return kind == Kind::App; }
  const Term& fn() const { return children[0]; }
  const Term& arg() const { return children[1]; }

  /// The head (a Var or Sym) of the application spine.
  const Term& head() const;
  std::vector<const Term*> spine_args() const;
  std::size_t size() const;  // number of Var/Sym leaves

  friend bool operator==(const Term& a, const Term& b);
};

struct Binder;

struct TypeExpr {
  enum class Kind { Set, SortRef, TyApp, Arrow, Quant, Equation };

  Kind kind = Kind::Set;
  std::string name;              // SortRef, TyApp head
  std::vector<TypeExpr> args;    // TyApp: arguments; Arrow: {dom, cod}; Quant: {body}
  std::vector<Binder> binders;   // Quant
  std::vector<Term> sides;       // Equation: {lhs, rhs}
  SourcePos pos;

  static TypeExpr set(SourcePos pos = {});
  static TypeExpr sort_ref(std::string name, SourcePos pos = {});
  static TypeExpr ty_app(std::string head, std::vector<TypeExpr> args, SourcePos pos = {});
  static TypeExpr arrow(TypeExpr dom, TypeExpr cod);
  /// Right-nested arrow chain `doms[0] → ... → cod`.
  static TypeExpr arrows(std::vector<TypeExpr> doms, TypeExpr cod);
  static TypeExpr quant(std::vector<Binder> binders, TypeExpr body);
  static TypeExpr equation(Term lhs, Term rhs);

  const TypeExpr& dom() const { return args[0]; }
  const TypeExpr& cod() const { return args[1]; }
  const TypeExpr& body() const { return args[0]; }
  const Term& lhs() const { return sides[0]; }
  const Term& rhs() const { return sides[1]; }

  friend bool operator==(const TypeExpr& a, const TypeExpr& b);
};

struct Binder {
  std::vector<std::string> names;
  TypeExpr type;
  bool hidden = false;
  SourcePos pos;

  friend bool operator==(const Binder& a, const Binder& b);
};

struct Constr {
  std::string name;
  TypeExpr type;
  SourcePos pos;

  friend bool operator==(const Constr& a, const Constr& b);
};

struct RecordDecl {
  std::string name;
  std::vector<Binder> params;
  std::string constructorName;
  std::vector<Constr> fields;
  SourcePos pos;

  friend bool operator==(const RecordDecl& a, const RecordDecl& b);
};

struct DataDecl {
  std::string name;
  std::vector<Binder> params;
  std::vector<Constr> constructors;
  SourcePos pos;

  friend bool operator==(const DataDecl& a, const DataDecl& b);
};

using Decl = std::variant<RecordDecl, DataDecl>;

const std::string& decl_name(const Decl& d);
const SourcePos& decl_pos(const Decl& d);

}  // namespace theoryforge

#endif
