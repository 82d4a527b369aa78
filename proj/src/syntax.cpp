#include "theoryforge/syntax.hpp"

#include <array>
#include <cctype>

namespace theoryforge {

namespace {

constexpr std::array<std::string_view, 6> kReserved = {
    "record", "data", "field", "where", "constructor", "Set"};

bool name_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
         c == '\'';
}

}  // namespace

bool is_reserved_word(std::string_view text) {
  for (auto w : kReserved)
    if (w == text) return true;
  return false;
}

bool is_valid_name(std::string_view text) {
  if (text.empty() || !name_start(text.front())) return false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (!name_char(text[i])) return false;
    // `--` and `->` are lexemes of their own.
    if (text[i] == '-' && i + 1 < text.size() &&
        (text[i + 1] == '-' || text[i + 1] == '>'))
      return false;
  }
  return !is_reserved_word(text);
}

Term Term::var(std::string name, SourcePos pos) {
  Term t;
  t.kind = Kind::Var;
  t.name = std::move(name);
  t.pos = pos;
  return t;
}

Term Term::sym(std::string name, SourcePos pos) {
  Term t;
  t.kind = Kind::Sym;
  t.name = std::move(name);
  t.pos = pos;
  return t;
}

Term Term::app(Term fn, Term arg) {
  Term t;
  t.kind = Kind::App;
  t.pos = fn.pos;
  t.children.reserve(2);
  t.children.push_back(std::move(fn));
  t.children.push_back(std::move(arg));
  return t;
}

Term Term::apply(Term head, std::vector<Term> args) {
  Term t = std::move(head);
  for (auto& a : args) t = app(std::move(t), std::move(a));
  return t;
}

const Term& Term::head() const {
  const Term* t = this;
  while (t->is_app()) t = &t->fn();
  return *t;
}

std::vector<const Term*> Term::spine_args() const {
  std::vector<const Term*> out;
  const Term* t = this;
  while (t->is_app()) {
    out.push_back(&t->arg());
    t = &t->fn();
  }
  return {out.rbegin(), out.rend()};
}

std::size_t Term::size() const {
  if (!is_app()) return 1;
  return fn().size() + arg().size();
}

bool operator==(const Term& a, const Term& b) {
  return a.kind == b.kind && a.name == b.name && a.children == b.children;
}

TypeExpr TypeExpr::set(SourcePos pos) {
  TypeExpr t;
  t.kind = Kind::Set;
  t.pos = pos;
  return t;
}

TypeExpr TypeExpr::sort_ref(std::string name, SourcePos pos) {
  TypeExpr t;
  t.kind = Kind::SortRef;
  t.name = std::move(name);
  t.pos = pos;
  return t;
}

TypeExpr TypeExpr::ty_app(std::string head, std::vector<TypeExpr> args,
                          SourcePos pos) {
  TypeExpr t;
  t.kind = Kind::TyApp;
  t.name = std::move(head);
  t.args = std::move(args);
  t.pos = pos;
  return t;
}

TypeExpr TypeExpr::arrow(TypeExpr dom, TypeExpr cod) {
  TypeExpr t;
  t.kind = Kind::Arrow;
  t.pos = dom.pos;
  t.args.reserve(2);
  t.args.push_back(std::move(dom));
  t.args.push_back(std::move(cod));
  return t;
}

TypeExpr TypeExpr::arrows(std::vector<TypeExpr> doms, TypeExpr cod) {
  TypeExpr t = std::move(cod);
  for (auto it = doms.rbegin(); it != doms.rend(); ++it)
    t = arrow(std::move(*it), std::move(t));
  return t;
}

TypeExpr TypeExpr::quant(std::vector<Binder> binders, TypeExpr body) {
  TypeExpr t;
  t.kind = Kind::Quant;
  t.pos = binders.empty() ? body.pos : binders.front().pos;
  t.binders = std::move(binders);
  t.args.push_back(std::move(body));
  return t;
}

TypeExpr TypeExpr::equation(Term lhs, Term rhs) {
  TypeExpr t;
  t.kind = Kind::Equation;
  t.pos = lhs.pos;
  t.sides.reserve(2);
  t.sides.push_back(std::move(lhs));
  t.sides.push_back(std::move(rhs));
  return t;
}

bool operator==(const TypeExpr& a, const TypeExpr& b) {
  return a.kind == b.kind && a.name == b.name && a.args == b.args &&
         a.binders == b.binders && a.sides == b.sides;
}

bool operator==(const Binder& a, const Binder& b) {
  return a.hidden == b.hidden && a.names == b.names && a.type == b.type;
}

bool operator==(const Constr& a, const Constr& b) {
  return a.name == b.name && a.type == b.type;
}

bool operator==(const RecordDecl& a, const RecordDecl& b) {
  return a.name == b.name && a.params == b.params &&
         a.constructorName == b.constructorName && a.fields == b.fields;
}

bool operator==(const DataDecl& a, const DataDecl& b) {
  return a.name == b.name && a.params == b.params &&
         a.constructors == b.constructors;
}

const std::string& decl_name(const Decl& d) {
  return std::visit([](const auto& x) -> const std::string& { return x.name; },
                    d);
}

const SourcePos& decl_pos(const Decl& d) {
  return std::visit([](const auto& x) -> const SourcePos& { return x.pos; }, d);
}

}  // namespace theoryforge
