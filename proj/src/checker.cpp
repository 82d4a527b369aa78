#include "theoryforge/checker.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace theoryforge {

namespace detail {

/// Unified term/type language the checker works in.
struct Core {
  enum class K { Var, App, Set, Pi, Eq };
  K k = K::Set;
  std::string name;  // Var; Pi binder (empty when non-dependent)
  std::vector<Core> kids;
  SourcePos pos;

  static Core var(std::string n, SourcePos p = {}) {
    return {K::Var, std::move(n), {}, p};
  }
  static Core app(Core f, Core a) {
    SourcePos p = f.pos;
    return {K::App, {}, {std::move(f), std::move(a)}, p};
  }
  static Core set() { return {K::Set, {}, {}, {}}; }
  static Core pi(std::string x, Core dom, Core cod) {
    SourcePos p = dom.pos;
    return {K::Pi, std::move(x), {std::move(dom), std::move(cod)}, p};
  }
  static Core eq(Core l, Core r) {
    SourcePos p = l.pos;
    return {K::Eq, {}, {std::move(l), std::move(r)}, p};
  }
};

struct RecordInfo {
  std::vector<std::pair<std::string, Core>> params;
  std::vector<std::pair<std::string, Core>> fields;
};

struct Globals {
  std::map<std::string, Core> types;
  std::map<std::string, std::string> projections;  // field → record
  std::map<std::string, RecordInfo> records;
  std::set<std::string> usedFieldNames;
  std::set<std::string> decls;
};

}  // namespace detail

using detail::Core;

std::string_view to_string(CheckError::Kind k) {
  switch (k) {
    case CheckError::Kind::UnboundName: return "UnboundName";
    case CheckError::Kind::ArityMismatch: return "ArityMismatch";
    case CheckError::Kind::SortMismatch: return "SortMismatch";
    case CheckError::Kind::DuplicateField: return "DuplicateField";
    case CheckError::Kind::DuplicateDecl: return "DuplicateDecl";
  }
  return "CheckError";
}

std::string format_error(const CheckError& e, std::string_view file) {
  std::ostringstream os;
  os << file << ':' << e.pos.line << ':' << e.pos.column << ": "
     << to_string(e.kind) << ": " << e.message;
  return os.str();
}

CheckContext::CheckContext() : globals_(std::make_unique<detail::Globals>()) {}
CheckContext::~CheckContext() = default;
CheckContext::CheckContext(const CheckContext& o)
    : globals_(std::make_unique<detail::Globals>(*o.globals_)) {}
CheckContext& CheckContext::operator=(const CheckContext& o) {
  globals_ = std::make_unique<detail::Globals>(*o.globals_);
  return *this;
}
CheckContext::CheckContext(CheckContext&&) noexcept = default;
CheckContext& CheckContext::operator=(CheckContext&&) noexcept = default;

void CheckContext::add_builtin_prod() {
  globals_->types["Prod"] =
      Core::pi("", Core::set(), Core::pi("", Core::set(), Core::set()));
}

const std::set<std::string>& CheckContext::used_field_names() const {
  return globals_->usedFieldNames;
}

bool CheckContext::declares(const std::string& name) const {
  return globals_->decls.count(name) > 0;
}

namespace {

Core from_term(const Term& t) {
  if (t.is_app()) return Core::app(from_term(t.fn()), from_term(t.arg()));
  return Core::var(t.name, t.pos);
}

Core from_type(const TypeExpr& t) {
  using K = TypeExpr::Kind;
  switch (t.kind) {
    case K::Set: {
      Core c = Core::set();
      c.pos = t.pos;
      return c;
    }
    case K::SortRef:
      return Core::var(t.name, t.pos);
    case K::TyApp: {
      Core c = Core::var(t.name, t.pos);
      for (const auto& a : t.args) c = Core::app(std::move(c), from_type(a));
      return c;
    }
    case K::Arrow:
      return Core::pi("", from_type(t.dom()), from_type(t.cod()));
    case K::Quant: {
      Core body = from_type(t.body());
      for (auto b = t.binders.rbegin(); b != t.binders.rend(); ++b) {
        Core dom = from_type(b->type);
        dom.pos = b->pos;
        for (auto n = b->names.rbegin(); n != b->names.rend(); ++n)
          body = Core::pi(*n, dom, std::move(body));
      }
      return body;
    }
    case K::Equation:
      return Core::eq(from_term(t.lhs()), from_term(t.rhs()));
  }
  return Core::set();
}

void put(std::ostream& os, const Core& c, bool nested) {
  switch (c.k) {
    case Core::K::Var: os << c.name; break;
    case Core::K::Set: os << "Set"; break;
    case Core::K::App:
      if (nested) os << '(';
      put(os, c.kids[0], false);
      os << ' ';
      put(os, c.kids[1], true);
      if (nested) os << ')';
      break;
    case Core::K::Pi:
      if (nested) os << '(';
      if (!c.name.empty()) {
        os << '(' << c.name << " : ";
        put(os, c.kids[0], false);
        os << ')';
      } else {
        put(os, c.kids[0], true);
      }
      os << " → ";
      put(os, c.kids[1], false);
      if (nested) os << ')';
      break;
    case Core::K::Eq:
      if (nested) os << '(';
      put(os, c.kids[0], false);
      os << " == ";
      put(os, c.kids[1], false);
      if (nested) os << ')';
      break;
  }
}

std::string show(const Core& c) {
  std::ostringstream os;
  put(os, c, false);
  return os.str();
}

bool free_in(const std::string& x, const Core& c) {
  switch (c.k) {
    case Core::K::Var: return c.name == x;
    case Core::K::Set: return false;
    case Core::K::Pi:
      return free_in(x, c.kids[0]) || (c.name != x && free_in(x, c.kids[1]));
    default:
      return std::any_of(c.kids.begin(), c.kids.end(),
                         [&](const Core& k) { return free_in(x, k); });
  }
}

Core subst(const Core& c, const std::string& x, const Core& v);

Core rename_bound(const Core& pi, const Core& avoid) {
  std::string fresh = pi.name;
  while (free_in(fresh, avoid) || free_in(fresh, pi.kids[1])) fresh += '\'';
  Core r = pi;
  r.kids[1] = subst(pi.kids[1], pi.name, Core::var(fresh));
  r.name = fresh;
  return r;
}

Core subst(const Core& c, const std::string& x, const Core& v) {
  switch (c.k) {
    case Core::K::Var: {
      if (c.name != x) return c;
      Core r = v;
      r.pos = c.pos;
      return r;
    }
    case Core::K::Set: return c;
    case Core::K::Pi: {
      if (c.name == x)
        return Core::pi(c.name, subst(c.kids[0], x, v), c.kids[1]);
      Core p = (!c.name.empty() && free_in(c.name, v)) ? rename_bound(c, v) : c;
      Core r = Core::pi(p.name, subst(p.kids[0], x, v), subst(p.kids[1], x, v));
      r.pos = c.pos;
      return r;
    }
    default: {
      Core r = c;
      for (auto& k : r.kids) k = subst(k, x, v);
      return r;
    }
  }
}

using Bound = std::vector<std::pair<std::string, std::string>>;

bool alpha_eq(const Core& a, const Core& b, Bound& bound) {
  if (a.k != b.k) return false;
  switch (a.k) {
    case Core::K::Var:
      for (auto it = bound.rbegin(); it != bound.rend(); ++it) {
        if (it->first == a.name || it->second == b.name)
          return it->first == a.name && it->second == b.name;
      }
      return a.name == b.name;
    case Core::K::Set: return true;
    case Core::K::Pi: {
      if (!alpha_eq(a.kids[0], b.kids[0], bound)) return false;
      bound.emplace_back(a.name, b.name);
      bool ok = alpha_eq(a.kids[1], b.kids[1], bound);
      bound.pop_back();
      return ok;
    }
    default:
      return alpha_eq(a.kids[0], b.kids[0], bound) &&
             alpha_eq(a.kids[1], b.kids[1], bound);
  }
}

bool alpha_eq(const Core& a, const Core& b) {
  Bound bound;
  return alpha_eq(a, b, bound);
}

// Head and arguments of an application spine.
std::pair<const Core*, std::vector<const Core*>> spine(const Core& c) {
  std::vector<const Core*> args;
  const Core* h = &c;
  while (h->k == Core::K::App) {
    args.push_back(&h->kids[1]);
    h = &h->kids[0];
  }
  std::reverse(args.begin(), args.end());
  return {h, std::move(args)};
}

class DeclChecker {
 public:
  DeclChecker(detail::Globals& g, std::string decl, std::vector<CheckError>& errs)
      : g_(g), decl_(std::move(decl)), errs_(errs) {}

  void push(std::string name, Core type) {
    locals_.emplace_back(std::move(name), std::move(type));
  }
  void pop() { locals_.pop_back(); }

  void error(CheckError::Kind k, std::string msg, SourcePos pos) {
    errs_.push_back({k, std::move(msg), pos, decl_});
  }

  /// Checks that `t` denotes a type (something of type Set).
  bool check_type(const Core& t) {
    auto ty = infer(t);
    if (!ty) return false;
    if (ty->k == Core::K::Pi) {
      error(CheckError::Kind::ArityMismatch,
            "'" + show(t) + "' is missing arguments", t.pos);
      return false;
    }
    if (ty->k != Core::K::Set) {
      error(CheckError::Kind::SortMismatch,
            "'" + show(t) + "' has type " + show(*ty) + ", expected a type",
            t.pos);
      return false;
    }
    return true;
  }

  std::optional<Core> infer(const Core& e) {
    switch (e.k) {
      case Core::K::Set:
        return Core::set();
      case Core::K::Var: {
        if (auto t = lookup(e.name)) return t;
        if (g_.projections.count(e.name) && !is_local(e.name)) {
          error(CheckError::Kind::ArityMismatch,
                "field '" + e.name + "' is projected without an instance",
                e.pos);
          return std::nullopt;
        }
        error(CheckError::Kind::UnboundName,
              "'" + e.name + "' is not in scope", e.pos);
        return std::nullopt;
      }
      case Core::K::App:
        return infer_app(e);
      case Core::K::Pi: {
        if (!check_type(e.kids[0])) return std::nullopt;
        push(e.name, e.kids[0]);
        bool ok = check_type(e.kids[1]);
        pop();
        if (!ok) return std::nullopt;
        return Core::set();
      }
      case Core::K::Eq: {
        auto l = infer(e.kids[0]);
        auto r = infer(e.kids[1]);
        if (!l || !r) return std::nullopt;
        for (const auto* side : {&e.kids[0], &e.kids[1]}) {
          const auto& ty = side == &e.kids[0] ? *l : *r;
          if (ty.k == Core::K::Pi) {
            error(CheckError::Kind::ArityMismatch,
                  "'" + show(*side) + "' is missing arguments (has type " +
                      show(ty) + ")",
                  side->pos);
            return std::nullopt;
          }
        }
        if (!alpha_eq(*l, *r)) {
          error(CheckError::Kind::SortMismatch,
                "sides of '" + show(e) + "' have different sorts " + show(*l) +
                    " and " + show(*r),
                e.pos);
          return std::nullopt;
        }
        return Core::set();
      }
    }
    return std::nullopt;
  }

 private:
  bool is_local(const std::string& n) const {
    return std::any_of(locals_.begin(), locals_.end(),
                       [&](const auto& p) { return p.first == n; });
  }

  std::optional<Core> lookup(const std::string& n) const {
    for (auto it = locals_.rbegin(); it != locals_.rend(); ++it)
      if (it->first == n) return it->second;
    if (auto it = g_.types.find(n); it != g_.types.end()) return it->second;
    return std::nullopt;
  }

  std::optional<Core> infer_app(const Core& e) {
    auto [head, args] = spine(e);
    std::size_t first = 0;
    std::optional<Core> ty;
    if (head->k == Core::K::Var && !is_local(head->name) &&
        g_.projections.count(head->name)) {
      ty = project(*head, *args[0]);
      first = 1;
    } else {
      ty = infer(*head);
    }
    if (!ty) return std::nullopt;
    for (std::size_t i = first; i < args.size(); ++i) {
      if (ty->k != Core::K::Pi) {
        error(CheckError::Kind::ArityMismatch,
              "'" + show(*head) + "' is applied to too many arguments (" +
                  std::to_string(args.size()) + ")",
              e.pos);
        return std::nullopt;
      }
      auto at = infer(*args[i]);
      if (!at) return std::nullopt;
      if (at->k == Core::K::Pi) {
        error(CheckError::Kind::ArityMismatch,
              "argument '" + show(*args[i]) + "' is missing arguments",
              args[i]->pos);
        return std::nullopt;
      }
      if (!alpha_eq(*at, ty->kids[0])) {
        error(CheckError::Kind::SortMismatch,
              "argument '" + show(*args[i]) + "' of '" + show(*head) +
                  "' has type " + show(*at) + ", expected " +
                  show(ty->kids[0]),
              args[i]->pos);
        return std::nullopt;
      }
      Core cod = ty->kids[1];
      ty = ty->name.empty() ? std::move(cod) : subst(cod, ty->name, *args[i]);
    }
    return ty;
  }

  // Type of `field inst`, with the record's parameters instantiated from the
  // instance's type and earlier fields projected out of the instance.
  std::optional<Core> project(const Core& field, const Core& inst) {
    const std::string& rec = g_.projections.at(field.name);
    const auto& info = g_.records.at(rec);
    auto it = infer(inst);
    if (!it) return std::nullopt;
    auto [h, actuals] = spine(*it);
    if (h->k != Core::K::Var || h->name != rec ||
        actuals.size() != info.params.size()) {
      error(CheckError::Kind::SortMismatch,
            "projection '" + field.name + "' expects an instance of " + rec +
                ", got '" + show(inst) + "' of type " + show(*it),
            inst.pos);
      return std::nullopt;
    }
    std::optional<Core> result;
    std::vector<std::pair<std::string, Core>> env;
    for (std::size_t i = 0; i < info.params.size(); ++i)
      env.emplace_back(info.params[i].first, *actuals[i]);
    for (const auto& [name, type] : info.fields) {
      if (name == field.name) {
        Core t = type;
        for (auto k = env.rbegin(); k != env.rend(); ++k)
          t = subst(t, k->first, k->second);
        result = std::move(t);
        break;
      }
      env.emplace_back(name, Core::app(Core::var(name), inst));
    }
    return result;
  }

  detail::Globals& g_;
  std::string decl_;
  std::vector<CheckError>& errs_;
  std::vector<std::pair<std::string, Core>> locals_;
};

Core close_over(const std::vector<std::pair<std::string, Core>>& params,
                Core body) {
  for (auto it = params.rbegin(); it != params.rend(); ++it)
    body = Core::pi(it->first, it->second, std::move(body));
  return body;
}

template <class DeclT>
std::vector<std::pair<std::string, Core>> check_params(
    const DeclT& d, DeclChecker& dc, std::set<std::string>& local_names) {
  std::vector<std::pair<std::string, Core>> params;
  for (const auto& b : d.params) {
    Core ty = from_type(b.type);
    dc.check_type(ty);
    for (const auto& n : b.names) {
      if (!local_names.insert(n).second)
        dc.error(CheckError::Kind::DuplicateField,
                 "parameter '" + n + "' is declared twice in " + d.name, b.pos);
      dc.push(n, ty);
      params.emplace_back(n, ty);
    }
  }
  return params;
}

void claim_name(const std::string& name, SourcePos pos, const char* what,
                std::set<std::string>& local_names, detail::Globals& g,
                DeclChecker& dc) {
  if (!local_names.insert(name).second)
    dc.error(CheckError::Kind::DuplicateField,
             std::string(what) + " '" + name + "' is declared twice", pos);
  else if (g.usedFieldNames.count(name))
    dc.error(CheckError::Kind::DuplicateField,
             std::string(what) + " '" + name +
                 "' is already used by another declaration in this module",
             pos);
}

std::vector<CheckError> check_record(const RecordDecl& d, detail::Globals& g) {
  std::vector<CheckError> errs;
  DeclChecker dc(g, d.name, errs);
  bool fresh = !g.decls.count(d.name) && !g.types.count(d.name);
  if (!fresh)
    dc.error(CheckError::Kind::DuplicateDecl,
             "'" + d.name + "' is already declared", d.pos);

  std::set<std::string> local_names;
  auto params = check_params(d, dc, local_names);
  std::vector<std::pair<std::string, Core>> fields;
  for (const auto& f : d.fields) {
    claim_name(f.name, f.pos, "field", local_names, g, dc);
    Core ty = from_type(f.type);
    dc.check_type(ty);
    dc.push(f.name, ty);
    fields.emplace_back(f.name, ty);
  }
  // a redeclared record's default constructor clashes by construction
  if (fresh) claim_name(d.constructorName, d.pos, "constructor", local_names, g, dc);

  if (fresh) {
    g.decls.insert(d.name);
    g.types[d.name] = close_over(params, Core::set());
    g.records[d.name] = {params, fields};
    for (const auto& [n, ty] : fields)
      if (!g.projections.count(n) && !g.types.count(n)) g.projections[n] = d.name;
  }
  for (const auto& f : d.fields) g.usedFieldNames.insert(f.name);
  g.usedFieldNames.insert(d.constructorName);
  return errs;
}

std::vector<CheckError> check_data(const DataDecl& d, detail::Globals& g) {
  std::vector<CheckError> errs;
  DeclChecker dc(g, d.name, errs);
  bool fresh = !g.decls.count(d.name) && !g.types.count(d.name);
  if (!fresh)
    dc.error(CheckError::Kind::DuplicateDecl,
             "'" + d.name + "' is already declared", d.pos);

  std::set<std::string> local_names;
  auto params = check_params(d, dc, local_names);
  if (fresh) {
    g.decls.insert(d.name);
    g.types[d.name] = close_over(params, Core::set());
  }

  Core self = Core::var(d.name);
  for (const auto& [n, ty] : params) self = Core::app(std::move(self), Core::var(n));

  std::vector<std::pair<std::string, Core>> ctors;
  for (const auto& c : d.constructors) {
    claim_name(c.name, c.pos, "constructor", local_names, g, dc);
    Core ty = from_type(c.type);
    if (dc.check_type(ty)) {
      const Core* target = &ty;
      while (target->k == Core::K::Pi) target = &target->kids[1];
      if (!alpha_eq(*target, self))
        dc.error(CheckError::Kind::SortMismatch,
                 "constructor '" + c.name + "' must build " + show(self) +
                     ", not " + show(*target),
                 c.pos);
    }
    ctors.emplace_back(c.name, std::move(ty));
  }
  for (auto& [n, ty] : ctors) {
    if (!g.types.count(n) && !g.projections.count(n))
      g.types[n] = close_over(params, ty);
    g.usedFieldNames.insert(n);
  }
  return errs;
}

}  // namespace

std::vector<CheckError> check_decl(const Decl& d, CheckContext& ctx) {
  if (const auto* r = std::get_if<RecordDecl>(&d))
    return check_record(*r, ctx.globals());
  return check_data(std::get<DataDecl>(d), ctx.globals());
}

std::vector<CheckError> check_module(std::span<const Decl> ds) {
  CheckContext ctx;
  bool declares_prod = std::any_of(ds.begin(), ds.end(), [](const Decl& d) {
    return decl_name(d) == "Prod";
  });
  if (!declares_prod) ctx.add_builtin_prod();
  std::vector<CheckError> errs;
  for (const auto& d : ds) {
    auto e = check_decl(d, ctx);
    errs.insert(errs.end(), e.begin(), e.end());
  }
  return errs;
}

}  // namespace theoryforge
