#include "theoryforge/eqtheory.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace theoryforge {

std::vector<std::pair<std::string, TypeExpr>> Axiom::vars() const {
  std::vector<std::pair<std::string, TypeExpr>> out;
  for (const auto& b : binders)
    for (const auto& n : b.names) out.emplace_back(n, b.type);
  return out;
}

std::vector<std::string> Axiom::var_names() const {
  std::vector<std::string> out;
  for (const auto& b : binders)
    out.insert(out.end(), b.names.begin(), b.names.end());
  return out;
}

TypeExpr Axiom::type() const {
  TypeExpr eq = TypeExpr::equation(lhs, rhs);
  if (binders.empty()) return eq;
  return TypeExpr::quant(binders, std::move(eq));
}

bool operator==(const Axiom& a, const Axiom& b) {
  return a.name == b.name && a.binders == b.binders && a.lhs == b.lhs &&
         a.rhs == b.rhs;
}

std::vector<std::string> EqTheory::declared_names() const {
  std::vector<std::string> out{sort.name};
  for (const auto& f : funcTypes) out.push_back(f.name);
  for (const auto& a : axioms) out.push_back(a.name);
  return out;
}

bool operator==(const EqTheory& a, const EqTheory& b) {
  return a.name == b.name && a.constructorName == b.constructorName &&
         a.sort == b.sort && a.funcTypes == b.funcTypes &&
         a.axioms == b.axioms && a.waist == b.waist;
}

std::size_t arity(const TypeExpr& t) {
  std::size_t n = 0;
  for (const TypeExpr* p = &t; p->kind == TypeExpr::Kind::Arrow; p = &p->cod())
    ++n;
  return n;
}

std::size_t arity(const Constr& c) { return arity(c.type); }

std::string_view to_string(ShapeError::Kind k) {
  switch (k) {
    case ShapeError::Kind::NoSort: return "NoSort";
    case ShapeError::Kind::MultipleSorts: return "MultipleSorts";
    case ShapeError::Kind::NotEquational: return "NotEquational";
    case ShapeError::Kind::HigherOrder: return "HigherOrder";
    case ShapeError::Kind::IllSorted: return "IllSorted";
    case ShapeError::Kind::DuplicateName: return "DuplicateName";
    case ShapeError::Kind::BadTelescope: return "BadTelescope";
  }
  return "ShapeError";
}

ShapeError::ShapeError(Kind kind, std::string theory, std::string detail,
                       SourcePos pos)
    : std::runtime_error(std::string(to_string(kind)) + " in " + theory +
                         ": " + detail),
      kind(kind),
      theory(std::move(theory)),
      pos(pos) {}

CollisionError::CollisionError(std::string theory, std::string name)
    : std::runtime_error("renaming " + theory + " produces duplicate name " +
                         name),
      theory(std::move(theory)),
      name(std::move(name)) {}

RenameScheme RenameScheme::suffixed(std::string suffix) {
  RenameScheme s;
  s.suffix = std::move(suffix);
  s.axiomRule = AxiomRule::Structural;
  s.renameVars = true;
  return s;
}

RenameScheme RenameScheme::explicit_map(std::map<std::string, std::string> m) {
  RenameScheme s;
  s.mapping = std::move(m);
  return s;
}

namespace {

bool is_sym(const Term& t, const std::string& name) {
  return t.kind == Term::Kind::Sym && t.name == name;
}

bool is_binary_app_of(const Term& t, const std::string& op) {
  return t.is_app() && t.fn().is_app() && is_sym(t.fn().fn(), op);
}

// f a (f b c) with a, b, c distinct variables; returns {a, b, c}.
std::optional<std::array<std::string, 3>> right_nested(const Term& t) {
  if (!t.is_app() || !t.fn().is_app()) return std::nullopt;
  const Term& f = t.fn().fn();
  if (f.kind != Term::Kind::Sym) return std::nullopt;
  const Term& a = t.fn().arg();
  const Term& inner = t.arg();
  if (a.kind != Term::Kind::Var || !is_binary_app_of(inner, f.name))
    return std::nullopt;
  const Term& b = inner.fn().arg();
  const Term& c = inner.arg();
  if (b.kind != Term::Kind::Var || c.kind != Term::Kind::Var)
    return std::nullopt;
  return std::array<std::string, 3>{a.name, b.name, c.name};
}

std::optional<std::array<std::string, 3>> left_nested(const Term& t) {
  if (!t.is_app() || !t.fn().is_app()) return std::nullopt;
  const Term& f = t.fn().fn();
  if (f.kind != Term::Kind::Sym) return std::nullopt;
  const Term& inner = t.fn().arg();
  const Term& c = t.arg();
  if (c.kind != Term::Kind::Var || !is_binary_app_of(inner, f.name))
    return std::nullopt;
  const Term& a = inner.fn().arg();
  const Term& b = inner.arg();
  if (a.kind != Term::Kind::Var || b.kind != Term::Kind::Var)
    return std::nullopt;
  return std::array<std::string, 3>{a.name, b.name, c.name};
}

std::optional<std::string> assoc_pair(const Term& r, const Term& l) {
  auto rv = right_nested(r);
  auto lv = left_nested(l);
  if (!rv || !lv || *rv != *lv) return std::nullopt;
  const auto& v = *rv;
  if (v[0] == v[1] || v[1] == v[2] || v[0] == v[2]) return std::nullopt;
  if (r.head().name != l.head().name) return std::nullopt;
  return r.head().name;
}

void collect_syms(const Term& t, std::vector<std::string>& out) {
  if (t.is_app()) {
    collect_syms(t.fn(), out);
    collect_syms(t.arg(), out);
  } else if (t.kind == Term::Kind::Sym) {
    out.push_back(t.name);
  }
}

class Extractor {
 public:
  explicit Extractor(const RecordDecl& d) : d_(d) {}

  EqTheory run() {
    std::vector<Constr> params;
    for (const auto& b : d_.params)
      for (const auto& n : b.names) params.push_back({n, b.type, b.pos});

    EqTheory t;
    t.name = d_.name;
    t.constructorName = d_.constructorName;
    t.waist = params.size();

    std::vector<std::pair<Constr, bool>> entries;
    for (auto& p : params) entries.emplace_back(std::move(p), true);
    for (const auto& f : d_.fields) entries.emplace_back(f, false);

    std::set<std::string> seen;
    for (const auto& [c, param] : entries)
      if (!seen.insert(c.name).second)
        fail(ShapeError::Kind::DuplicateName, "'" + c.name + "' declared twice",
             c.pos);

    const Constr* sort = nullptr;
    for (const auto& [c, param] : entries) {
      if (c.type.kind != TypeExpr::Kind::Set) continue;
      if (sort)
        fail(ShapeError::Kind::MultipleSorts,
             "both '" + sort->name + "' and '" + c.name + "' are sorts", c.pos);
      sort = &c;
    }
    if (!sort) fail(ShapeError::Kind::NoSort, "no declaration of type Set");
    if (&entries.front().first != sort)
      fail(ShapeError::Kind::BadTelescope,
           "the sort must be the first declaration", sort->pos);
    t.sort = *sort;

    // 0 = sort, 1 = function symbol, 2 = axiom; parameters must form a
    // prefix of the canonical order.
    int last_param_rank = 0;
    int first_field_rank = 3;
    for (std::size_t i = 1; i < entries.size(); ++i) {
      const auto& [c, param] = entries[i];
      int rank;
      if (auto ax = as_axiom(c)) {
        t.axioms.push_back(std::move(*ax));
        rank = 2;
      } else {
        check_func(c, t.sort.name);
        t.funcTypes.push_back(c);
        rank = 1;
      }
      if (param)
        last_param_rank = std::max(last_param_rank, rank);
      else
        first_field_rank = std::min(first_field_rank, rank);
    }
    if (last_param_rank > first_field_rank)
      fail(ShapeError::Kind::BadTelescope,
           "parameters must precede every field in sort/function/axiom order");

    for (const auto& ax : t.axioms) check_equation(t, ax);
    return t;
  }

 private:
  [[noreturn]] void fail(ShapeError::Kind k, std::string detail,
                         SourcePos pos = {}) const {
    throw ShapeError(k, d_.name, std::move(detail), pos);
  }

  std::optional<Axiom> as_axiom(const Constr& c) const {
    const TypeExpr* body = &c.type;
    std::vector<Binder> binders;
    while (body->kind == TypeExpr::Kind::Quant) {
      binders.insert(binders.end(), body->binders.begin(), body->binders.end());
      body = &body->body();
    }
    if (body->kind != TypeExpr::Kind::Equation) {
      if (!binders.empty())
        fail(ShapeError::Kind::NotEquational,
             "'" + c.name + "' is not an unconditional equation", c.pos);
      return std::nullopt;
    }
    Axiom ax;
    ax.name = c.name;
    ax.binders = std::move(binders);
    ax.lhs = body->lhs();
    ax.rhs = body->rhs();
    ax.pos = c.pos;
    return ax;
  }

  void check_func(const Constr& c, const std::string& sort) const {
    const TypeExpr* t = &c.type;
    while (t->kind == TypeExpr::Kind::Arrow) {
      const TypeExpr& dom = t->dom();
      if (dom.kind == TypeExpr::Kind::Arrow || dom.kind == TypeExpr::Kind::Quant)
        fail(ShapeError::Kind::HigherOrder,
             "'" + c.name + "' takes a function argument", c.pos);
      if (dom.kind != TypeExpr::Kind::SortRef || dom.name != sort)
        fail(ShapeError::Kind::NotEquational,
             "'" + c.name + "' has an argument outside the sort", c.pos);
      t = &t->cod();
    }
    if (t->kind != TypeExpr::Kind::SortRef || t->name != sort)
      fail(ShapeError::Kind::NotEquational,
           "'" + c.name + "' is neither a function into the sort nor an axiom",
           c.pos);
  }

  const RecordDecl& d_;
};

void check_term(const EqTheory& t, const Axiom& ax,
                const std::set<std::string>& vars,
                const std::map<std::string, std::size_t>& arities,
                const Term& term) {
  const Term& h = term.head();
  auto args = term.spine_args();
  auto bad = [&](const std::string& why) {
    throw ShapeError(ShapeError::Kind::IllSorted, t.name,
                     "axiom '" + ax.name + "': " + why, term.pos);
  };
  if (h.kind == Term::Kind::Var) {
    if (!vars.count(h.name)) bad("unbound variable '" + h.name + "'");
    if (!args.empty()) bad("variable '" + h.name + "' applied to arguments");
    return;
  }
  auto it = arities.find(h.name);
  if (it == arities.end()) bad("'" + h.name + "' is not a function symbol");
  if (it->second != args.size())
    bad("'" + h.name + "' expects " + std::to_string(it->second) +
        " arguments, got " + std::to_string(args.size()));
  for (const Term* a : args) check_term(t, ax, vars, arities, *a);
}

}  // namespace

std::optional<std::string> associativity_operator(const Axiom& ax) {
  if (auto f = assoc_pair(ax.lhs, ax.rhs)) return f;
  return assoc_pair(ax.rhs, ax.lhs);
}

void check_equation(const EqTheory& t, const Axiom& ax) {
  std::set<std::string> vars;
  for (const auto& [n, ty] : ax.vars()) {
    if (ty.kind != TypeExpr::Kind::SortRef || ty.name != t.sort.name)
      throw ShapeError(ShapeError::Kind::IllSorted, t.name,
                       "axiom '" + ax.name + "': variable '" + n +
                           "' does not range over the sort",
                       ax.pos);
    if (!vars.insert(n).second)
      throw ShapeError(ShapeError::Kind::DuplicateName, t.name,
                       "axiom '" + ax.name + "' binds '" + n + "' twice",
                       ax.pos);
  }
  std::map<std::string, std::size_t> arities;
  for (const auto& f : t.funcTypes) arities[f.name] = arity(f);
  check_term(t, ax, vars, arities, ax.lhs);
  check_term(t, ax, vars, arities, ax.rhs);
}

EqTheory extract(const RecordDecl& d) { return Extractor(d).run(); }

namespace {

class Renamer {
 public:
  Renamer(const EqTheory& t, const RenameScheme& s) : t_(t), s_(s) {
    for (const auto& [from, to] : s.mapping) {
      auto names = t.declared_names();
      if (std::find(names.begin(), names.end(), from) == names.end())
        throw std::invalid_argument("rename: '" + from +
                                    "' is not declared in " + t.name);
    }
    decl_[t.sort.name] = mapped(t.sort.name);
    for (const auto& f : t.funcTypes) {
      decl_[f.name] = mapped(f.name);
      if (arity(f) == 0) constants_.insert(f.name);
    }
  }

  EqTheory run() {
    EqTheory r;
    r.name = t_.name;
    r.constructorName = t_.constructorName;
    r.waist = t_.waist;
    r.sort = {decl_.at(t_.sort.name), t_.sort.type, t_.sort.pos};
    for (const auto& f : t_.funcTypes)
      r.funcTypes.push_back({decl_.at(f.name), type(f.type, {}), f.pos});
    for (const auto& ax : t_.axioms) r.axioms.push_back(axiom(ax));

    std::set<std::string> seen;
    for (const auto& n : r.declared_names()) {
      if (!is_valid_name(n))
        throw std::invalid_argument("rename: '" + n + "' is not a valid name");
      if (!seen.insert(n).second) throw CollisionError(t_.name, n);
    }
    return r;
  }

 private:
  using VarMap = std::map<std::string, std::string>;

  std::string mapped(const std::string& n) const {
    auto it = s_.mapping.find(n);
    return it != s_.mapping.end() ? it->second : n + s_.suffix;
  }

  std::string decl_name(const std::string& n) const {
    auto it = decl_.find(n);
    return it != decl_.end() ? it->second : n;
  }

  Term term(const Term& t, const VarMap& vars) const {
    if (t.is_app()) return Term::app(term(t.fn(), vars), term(t.arg(), vars));
    if (t.kind == Term::Kind::Var) {
      auto it = vars.find(t.name);
      return Term::var(it != vars.end() ? it->second : t.name, t.pos);
    }
    return Term::sym(decl_name(t.name), t.pos);
  }

  TypeExpr type(const TypeExpr& t, const VarMap& vars) const {
    TypeExpr r = t;
    switch (t.kind) {
      case TypeExpr::Kind::SortRef:
      case TypeExpr::Kind::TyApp:
        r.name = decl_name(t.name);
        break;
      case TypeExpr::Kind::Equation:
        r.sides = {term(t.lhs(), vars), term(t.rhs(), vars)};
        return r;
      case TypeExpr::Kind::Quant:
        for (auto& b : r.binders) b.type = type(b.type, vars);
        break;
      default:
        break;
    }
    for (auto& a : r.args) a = type(a, vars);
    return r;
  }

  std::string axiom_name(const Axiom& ax) const {
    if (auto it = s_.mapping.find(ax.name); it != s_.mapping.end())
      return it->second;
    if (s_.axiomRule == RenameScheme::AxiomRule::Structural) {
      if (auto op = associativity_operator(ax))
        return "associative_" + decl_name(*op);
      std::vector<std::string> syms;
      collect_syms(ax.lhs, syms);
      collect_syms(ax.rhs, syms);
      std::set<std::string> consts;
      for (const auto& n : syms)
        if (constants_.count(n)) consts.insert(n);
      if (consts.size() == 1) return ax.name + "_" + decl_name(*consts.begin());
    }
    return ax.name + s_.suffix;
  }

  Axiom axiom(const Axiom& ax) const {
    VarMap vars;
    if (s_.renameVars)
      for (const auto& n : ax.var_names()) vars[n] = n + s_.suffix;
    Axiom r;
    r.name = axiom_name(ax);
    r.pos = ax.pos;
    for (const auto& b : ax.binders) {
      Binder nb = b;
      for (auto& n : nb.names)
        if (auto it = vars.find(n); it != vars.end()) n = it->second;
      nb.type = type(b.type, vars);
      r.binders.push_back(std::move(nb));
    }
    r.lhs = term(ax.lhs, vars);
    r.rhs = term(ax.rhs, vars);
    return r;
  }

  const EqTheory& t_;
  const RenameScheme& s_;
  std::map<std::string, std::string> decl_;
  std::set<std::string> constants_;
};

}  // namespace

EqTheory rename(const EqTheory& t, const RenameScheme& s) {
  return Renamer(t, s).run();
}

RecordDecl embed(const EqTheory& t) {
  std::vector<Constr> entries{t.sort};
  entries.insert(entries.end(), t.funcTypes.begin(), t.funcTypes.end());
  for (const auto& ax : t.axioms) entries.push_back({ax.name, ax.type(), ax.pos});

  RecordDecl d;
  d.name = t.name;
  d.constructorName =
      t.constructorName.empty() ? t.name + "C" : t.constructorName;
  std::size_t waist = std::min(t.waist, entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i < waist) {
      Binder b;
      b.names = {entries[i].name};
      b.type = entries[i].type;
      b.pos = entries[i].pos;
      d.params.push_back(std::move(b));
    } else {
      d.fields.push_back(entries[i]);
    }
  }
  return d;
}

}  // namespace theoryforge
