#include "theoryforge/generators.hpp"

#include <algorithm>
#include <set>

namespace theoryforge {

std::string_view to_string(GenKind k) {
  switch (k) {
    case GenKind::Signature: return "Signature";
    case GenKind::Product: return "Product";
    case GenKind::TermLang: return "TermLang";
    case GenKind::OpenTermLang: return "OpenTermLang";
    case GenKind::Evaluator: return "Evaluator";
    case GenKind::Hom: return "Hom";
    case GenKind::Monomorphism: return "Monomorphism";
    case GenKind::Endomorphism: return "Endomorphism";
  }
  return "?";
}

std::string_view cli_name(GenKind k) {
  switch (k) {
    case GenKind::Signature: return "sig";
    case GenKind::Product: return "prod";
    case GenKind::TermLang: return "termlang";
    case GenKind::OpenTermLang: return "open-termlang";
    case GenKind::Evaluator: return "evaluator";
    case GenKind::Hom: return "hom";
    case GenKind::Monomorphism: return "mono";
    case GenKind::Endomorphism: return "endo";
  }
  return "?";
}

std::optional<GenKind> parse_gen_kind(std::string_view cli) {
  for (auto k : {GenKind::Signature, GenKind::Product, GenKind::TermLang,
                 GenKind::OpenTermLang, GenKind::Hom, GenKind::Monomorphism,
                 GenKind::Endomorphism})
    if (cli_name(k) == cli) return k;
  return std::nullopt;
}

std::vector<GenKind> default_kinds() {
  return {GenKind::Signature, GenKind::Product, GenKind::TermLang,
          GenKind::Hom};
}

GenerationError::GenerationError(std::string theory, std::string detail)
    : std::runtime_error(theory + ": " + detail), theory(std::move(theory)) {}

std::string* Suffixes::find(GenKind k) {
  switch (k) {
    case GenKind::Signature: return &signature;
    case GenKind::Product: return &product;
    case GenKind::TermLang: return &termLang;
    case GenKind::OpenTermLang: return &openTermLang;
    default: return nullptr;
  }
}

DataDecl prod_declaration() {
  DataDecl d;
  d.name = std::string(kProdType);
  for (const char* n : {"A", "B"}) {
    Binder b;
    b.names = {n};
    b.type = TypeExpr::set();
    d.params.push_back(std::move(b));
  }
  d.constructors.push_back(
      {"pair",
       TypeExpr::arrows({TypeExpr::sort_ref("A"), TypeExpr::sort_ref("B")},
                        TypeExpr::ty_app(d.name, {TypeExpr::sort_ref("A"),
                                                  TypeExpr::sort_ref("B")})),
       {}});
  return d;
}

namespace {

// Replaces every SortRef to `sort` by `with`.
TypeExpr substitute_sort(const TypeExpr& t, const std::string& sort,
                         const TypeExpr& with) {
  if (t.kind == TypeExpr::Kind::SortRef && t.name == sort) return with;
  TypeExpr r = t;
  for (auto& a : r.args) a = substitute_sort(a, sort, with);
  for (auto& b : r.binders) b.type = substitute_sort(b.type, sort, with);
  return r;
}

Term substitute_syms(const Term& t, const std::map<std::string, std::string>& m) {
  if (t.is_app())
    return Term::app(substitute_syms(t.fn(), m), substitute_syms(t.arg(), m));
  if (t.kind == Term::Kind::Sym)
    if (auto it = m.find(t.name); it != m.end())
      return Term::sym(it->second, t.pos);
  return t;
}

TypeExpr rename_refs(const TypeExpr& t,
                     const std::map<std::string, std::string>& m) {
  TypeExpr r = t;
  if (r.kind == TypeExpr::Kind::SortRef || r.kind == TypeExpr::Kind::TyApp)
    if (auto it = m.find(r.name); it != m.end()) r.name = it->second;
  for (auto& a : r.args) a = rename_refs(a, m);
  for (auto& b : r.binders) b.type = rename_refs(b.type, m);
  for (auto& s : r.sides) s = substitute_syms(s, m);
  return r;
}

std::vector<Constr> telescope(const EqTheory& t) {
  std::vector<Constr> out{t.sort};
  out.insert(out.end(), t.funcTypes.begin(), t.funcTypes.end());
  for (const auto& ax : t.axioms) out.push_back({ax.name, ax.type(), ax.pos});
  return out;
}

Binder explicit_binder(std::string name, TypeExpr type) {
  Binder b;
  b.names = {std::move(name)};
  b.type = std::move(type);
  return b;
}

// One instantiation of the theory inside a homomorphism record.
struct Side {
  std::map<std::string, std::string> lifted;
  std::vector<Binder> params;
  std::string instance;
  Binder instanceBinder;
  TypeExpr carrier;
};

class HomBuilder {
 public:
  HomBuilder(const EqTheory& t, const HomNaming& naming)
      : t_(t), naming_(naming), tele_(telescope(t)) {
    waist_ = std::min(t.waist, tele_.size());
    for (const auto& c : tele_) reserved_.insert(c.name);
    reserved_.insert(naming.funcName);
    reserved_.insert(naming.instanceNames.first);
    reserved_.insert(naming.instanceNames.second);
  }

  RecordDecl hom() const {
    Side s1 = side(1), s2 = side(2);
    RecordDecl d = header(t_.name + "Hom", {&s1, &s2});
    d.fields = morphism_fields(s1, s2);
    return d;
  }

  RecordDecl mono() const {
    Side s1 = side(1), s2 = side(2);
    RecordDecl d = header(t_.name + "Mono", {&s1, &s2});
    d.fields = morphism_fields(s1, s2);
    auto [x, y] = fresh_pair(s1);
    Binder b;
    b.names = {x, y};
    b.type = s1.carrier;
    TypeExpr premise =
        TypeExpr::equation(Term::app(Term::sym(naming_.funcName), Term::var(x)),
                           Term::app(Term::sym(naming_.funcName), Term::var(y)));
    TypeExpr conclusion = TypeExpr::equation(Term::var(x), Term::var(y));
    d.fields.push_back(
        {naming_.injectiveName,
         TypeExpr::quant({b}, TypeExpr::arrow(std::move(premise),
                                              std::move(conclusion))),
         {}});
    return d;
  }

  RecordDecl endo() const {
    Side s1 = side(1);
    RecordDecl d = header(t_.name + "End", {&s1});
    d.fields = morphism_fields(s1, s1);
    return d;
  }

 private:
  Side side(int index) const {
    Side s;
    const std::string idx = std::to_string(index);
    for (std::size_t i = 0; i < waist_; ++i) {
      const std::string& n = tele_[i].name;
      if (n == t_.sort.name)
        s.lifted[n] = index == 1 ? naming_.carrierNames.first
                                 : naming_.carrierNames.second;
      else
        s.lifted[n] = n + idx;
    }
    for (std::size_t i = 0; i < waist_; ++i)
      s.params.push_back(explicit_binder(s.lifted.at(tele_[i].name),
                                         rename_refs(tele_[i].type, s.lifted)));
    s.instance = index == 1 ? naming_.instanceNames.first
                            : naming_.instanceNames.second;
    std::vector<TypeExpr> args;
    for (std::size_t i = 0; i < waist_; ++i)
      args.push_back(TypeExpr::sort_ref(s.lifted.at(tele_[i].name)));
    s.instanceBinder = explicit_binder(
        s.instance, args.empty() ? TypeExpr::sort_ref(t_.name)
                                 : TypeExpr::ty_app(t_.name, std::move(args)));
    if (auto it = s.lifted.find(t_.sort.name); it != s.lifted.end())
      s.carrier = TypeExpr::sort_ref(it->second);
    else
      s.carrier = TypeExpr::ty_app(t_.sort.name,
                                   {TypeExpr::sort_ref(s.instance)});
    return s;
  }

  RecordDecl header(std::string name, std::initializer_list<const Side*> sides) const {
    RecordDecl d;
    d.name = std::move(name);
    d.constructorName = d.name + "C";
    for (const Side* s : sides)
      d.params.insert(d.params.end(), s->params.begin(), s->params.end());
    for (const Side* s : sides) d.params.push_back(s->instanceBinder);
    return d;
  }

  // The operation `f` as seen through one side: a lifted parameter or a
  // projection out of the instance.
  Term op(const Side& s, const std::string& f) const {
    if (auto it = s.lifted.find(f); it != s.lifted.end())
      return Term::sym(it->second);
    return Term::app(Term::sym(f), Term::sym(s.instance));
  }

  Term apply_hom(Term t) const {
    return Term::app(Term::sym(naming_.funcName), std::move(t));
  }

  std::string fresh_base(const Side& s, std::size_t n) const {
    std::set<std::string> taken = reserved_;
    for (const auto& [k, v] : s.lifted) taken.insert(v);
    for (const char* base : {"x", "y", "z", "u", "w"}) {
      bool ok = true;
      for (std::size_t i = 1; i <= n && ok; ++i)
        ok = !taken.count(base + std::to_string(i));
      if (ok) return base;
    }
    return "x_";
  }

  std::pair<std::string, std::string> fresh_pair(const Side& s) const {
    std::set<std::string> taken = reserved_;
    for (const auto& [k, v] : s.lifted) taken.insert(v);
    std::string x = "x", y = "y";
    while (taken.count(x) || taken.count(y)) {
      x += "'";
      y += "'";
    }
    return {x, y};
  }

  std::vector<Constr> morphism_fields(const Side& from, const Side& to) const {
    std::vector<Constr> fields;
    fields.push_back(
        {naming_.funcName, TypeExpr::arrow(from.carrier, to.carrier), {}});
    for (const auto& f : t_.funcTypes) {
      std::size_t n = arity(f);
      std::string base = fresh_base(from, n);
      std::vector<Binder> binders;
      std::vector<Term> xs, hxs;
      for (std::size_t i = 1; i <= n; ++i) {
        std::string x = base + std::to_string(i);
        binders.push_back(explicit_binder(x, from.carrier));
        xs.push_back(Term::var(x));
        hxs.push_back(apply_hom(Term::var(x)));
      }
      Term lhs = apply_hom(Term::apply(op(from, f.name), std::move(xs)));
      Term rhs = Term::apply(op(to, f.name), std::move(hxs));
      TypeExpr eq = TypeExpr::equation(std::move(lhs), std::move(rhs));
      fields.push_back({naming_.presPrefix + f.name,
                        binders.empty() ? std::move(eq)
                                        : TypeExpr::quant(std::move(binders),
                                                          std::move(eq)),
                        {}});
    }
    return fields;
  }

  const EqTheory& t_;
  const HomNaming& naming_;
  std::vector<Constr> tele_;
  std::size_t waist_ = 0;
  std::set<std::string> reserved_;
};

}  // namespace

HomNaming HomNaming::for_theory(const EqTheory& t) {
  HomNaming n;
  std::set<std::string> taken;
  for (const auto& name : t.declared_names()) taken.insert(name);
  taken.insert(t.name);
  auto pick = [&](std::string base) {
    std::string a = base + "1", b = base + "2";
    while (taken.count(a) || taken.count(b)) {
      base += "'";
      a = base + "1";
      b = base + "2";
    }
    taken.insert(a);
    taken.insert(b);
    return std::make_pair(a, b);
  };
  n.carrierNames = pick(t.sort.name);
  n.instanceNames = pick(t.name.substr(0, 2));
  return n;
}

namespace {

std::size_t clamp_waist(const EqTheory& t) {
  return std::min(t.waist, t.telescope_size());
}

}  // namespace

EqTheory gen_signature(const EqTheory& t, const std::string& suffix) {
  EqTheory r = rename(t, RenameScheme::suffixed(suffix));
  r.name = t.name + "Sig";
  r.constructorName = r.name + "C";
  r.axioms.clear();
  r.waist = std::min(clamp_waist(t), r.telescope_size());
  return r;
}

EqTheory gen_product(const EqTheory& t, const std::string& suffix) {
  EqTheory r = rename(t, RenameScheme::suffixed(suffix));
  r.name = t.name + "Prod";
  r.constructorName = r.name + "C";
  r.waist = clamp_waist(t);
  const std::string& sort = r.sort.name;
  TypeExpr prod = TypeExpr::ty_app(std::string(kProdType),
                                   {TypeExpr::sort_ref(sort),
                                    TypeExpr::sort_ref(sort)});
  for (auto& f : r.funcTypes) f.type = substitute_sort(f.type, sort, prod);
  for (auto& ax : r.axioms) {
    std::vector<Binder> explicit_binders;
    for (const auto& n : ax.var_names())
      explicit_binders.push_back(explicit_binder(n, prod));
    ax.binders = std::move(explicit_binders);
  }
  return r;
}

DataDecl gen_termlang(const EqTheory& t, const std::string& suffix) {
  DataDecl d;
  d.name = t.name + "Lang";
  TypeExpr self = TypeExpr::sort_ref(d.name);
  for (const auto& f : t.funcTypes)
    d.constructors.push_back(
        {f.name + suffix, substitute_sort(f.type, t.sort.name, self), {}});
  return d;
}

DataDecl gen_open_termlang(const EqTheory& t, const std::string& suffix) {
  DataDecl d;
  d.name = t.name + "OpenLang";
  d.params.push_back(explicit_binder("V", TypeExpr::set()));
  TypeExpr self = TypeExpr::ty_app(d.name, {TypeExpr::sort_ref("V")});
  d.constructors.push_back(
      {"v", TypeExpr::arrow(TypeExpr::sort_ref("V"), self), {}});
  for (const auto& f : t.funcTypes)
    d.constructors.push_back(
        {f.name + suffix, substitute_sort(f.type, t.sort.name, self), {}});
  return d;
}

RecordDecl gen_hom(const EqTheory& t, const HomNaming& naming) {
  return HomBuilder(t, naming).hom();
}

RecordDecl gen_monomorphism(const EqTheory& t, const HomNaming& naming) {
  return HomBuilder(t, naming).mono();
}

RecordDecl gen_endomorphism(const EqTheory& t, const HomNaming& naming) {
  return HomBuilder(t, naming).endo();
}

HomNaming naming_for(const EqTheory& t, GenKind k) {
  HomNaming n = HomNaming::for_theory(t);
  if (k == GenKind::Monomorphism) {
    n.funcName = "mono";
    n.presPrefix = "mono-pres-";
    n.injectiveName = "mono-injective";
  } else if (k == GenKind::Endomorphism) {
    n.funcName = "endo";
    n.presPrefix = "endo-pres-";
  }
  return n;
}

std::vector<Decl> gen_all(const EqTheory& t, std::span<const GenKind> kinds,
                          const GenOptions& opts) {
  std::vector<GenKind> ordered(kinds.begin(), kinds.end());
  std::sort(ordered.begin(), ordered.end());
  ordered.erase(std::unique(ordered.begin(), ordered.end()), ordered.end());

  std::vector<Decl> out;
  for (GenKind k : ordered) {
    switch (k) {
      case GenKind::Signature:
        out.emplace_back(embed(gen_signature(t, opts.suffixes.signature)));
        break;
      case GenKind::Product:
        out.emplace_back(embed(gen_product(t, opts.suffixes.product)));
        break;
      case GenKind::TermLang:
        out.emplace_back(gen_termlang(t, opts.suffixes.termLang));
        break;
      case GenKind::OpenTermLang:
        out.emplace_back(gen_open_termlang(t, opts.suffixes.openTermLang));
        break;
      case GenKind::Evaluator:
        throw GenerationError(
            t.name, "the evaluator is run by the term engine, not emitted");
      case GenKind::Hom:
        out.emplace_back(gen_hom(t, naming_for(t, k)));
        break;
      case GenKind::Monomorphism:
        out.emplace_back(gen_monomorphism(t, naming_for(t, k)));
        break;
      case GenKind::Endomorphism:
        out.emplace_back(gen_endomorphism(t, naming_for(t, k)));
        break;
    }
  }
  return out;
}

}  // namespace theoryforge
