#include "theoryforge/printer.hpp"

namespace theoryforge {

namespace {

void put_term(std::string& out, const Term& t, bool nested) {
  if (!t.is_app()) {
    out += t.name;
    return;
  }
  if (nested) out += '(';
  out += t.head().name;
  for (const Term* a : t.spine_args()) {
    out += ' ';
    put_term(out, *a, true);
  }
  if (nested) out += ')';
}

void put_type(std::string& out, const TypeExpr& t);

bool atomic(const TypeExpr& t) {
  return t.kind == TypeExpr::Kind::Set || t.kind == TypeExpr::Kind::SortRef;
}

void put_parens(std::string& out, const TypeExpr& t) {
  out += '(';
  put_type(out, t);
  out += ')';
}

void put_type(std::string& out, const TypeExpr& t) {
  using K = TypeExpr::Kind;
  switch (t.kind) {
    case K::Set:
      out += "Set";
      break;
    case K::SortRef:
      out += t.name;
      break;
    case K::TyApp:
      out += t.name;
      for (const auto& a : t.args) {
        out += ' ';
        if (atomic(a))
          put_type(out, a);
        else
          put_parens(out, a);
      }
      break;
    case K::Arrow:
      if (t.dom().kind == K::Arrow || t.dom().kind == K::Quant)
        put_parens(out, t.dom());
      else
        put_type(out, t.dom());
      out += " → ";
      put_type(out, t.cod());
      break;
    case K::Quant:
      for (std::size_t i = 0; i < t.binders.size(); ++i) {
        if (i) out += ' ';
        out += print_binder(t.binders[i]);
      }
      out += " → ";
      put_type(out, t.body());
      break;
    case K::Equation:
      put_term(out, t.lhs(), false);
      out += " == ";
      put_term(out, t.rhs(), false);
      break;
  }
}

void put_header(std::string& out, std::string_view keyword,
                const std::string& name, const std::vector<Binder>& params) {
  out += keyword;
  out += ' ';
  out += name;
  for (const auto& p : params) {
    out += ' ';
    out += print_binder(p);
  }
  out += " : Set where\n";
}

void put_constr(std::string& out, std::string_view indent, const Constr& c) {
  out += indent;
  out += c.name;
  out += " : ";
  put_type(out, c.type);
  out += '\n';
}

}  // namespace

std::string print_term(const Term& t) {
  std::string out;
  put_term(out, t, false);
  return out;
}

std::string print_type(const TypeExpr& t) {
  std::string out;
  put_type(out, t);
  return out;
}

std::string print_binder(const Binder& b) {
  std::string out(1, b.hidden ? '{' : '(');
  for (const auto& n : b.names) {
    out += n;
    out += ' ';
  }
  out += ": ";
  put_type(out, b.type);
  out += b.hidden ? '}' : ')';
  return out;
}

std::string print_decl(const Decl& d) {
  std::string out;
  if (const auto* r = std::get_if<RecordDecl>(&d)) {
    put_header(out, "record", r->name, r->params);
    out += "  constructor ";
    out += r->constructorName;
    out += '\n';
    if (!r->fields.empty()) {
      out += "  field\n";
      for (const auto& f : r->fields) put_constr(out, "    ", f);
    }
  } else {
    const auto& dd = std::get<DataDecl>(d);
    put_header(out, "data", dd.name, dd.params);
    for (const auto& c : dd.constructors) put_constr(out, "  ", c);
  }
  return out;
}

std::string print_module(std::span<const Decl> decls) {
  std::string out;
  for (std::size_t i = 0; i < decls.size(); ++i) {
    if (i) out += '\n';
    out += print_decl(decls[i]);
  }
  return out;
}

}  // namespace theoryforge
