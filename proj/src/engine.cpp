#include "theoryforge/engine.hpp"

#include <algorithm>
#include <set>

namespace theoryforge {

OpenTerm OpenTerm::var(std::size_t i) {
  OpenTerm t;
  t.kind = Kind::Var;
  t.index = i;
  return t;
}

OpenTerm OpenTerm::op(std::string sym, std::vector<OpenTerm> args) {
  OpenTerm t;
  t.kind = Kind::Op;
  t.sym = std::move(sym);
  t.args = std::move(args);
  return t;
}

std::size_t OpenTerm::size() const {
  std::size_t n = 1;
  for (const auto& a : args) n += a.size();
  return n;
}

std::size_t OpenTerm::depth() const {
  std::size_t d = 0;
  for (const auto& a : args) d = std::max(d, a.depth());
  return d + 1;
}

std::string to_string(const OpenTerm& t) {
  if (t.is_var()) return "#" + std::to_string(t.index);
  if (t.args.empty()) return t.sym;
  std::string out = "(" + t.sym;
  for (const auto& a : t.args) out += " " + to_string(a);
  return out + ")";
}

Signature signature_of(const EqTheory& t) {
  Signature sig;
  for (const auto& f : t.funcTypes) sig.emplace_back(f.name, arity(f));
  return sig;
}

OpenTerm to_open_term(const Term& t, std::span<const std::string> vars) {
  const Term& h = t.head();
  auto args = t.spine_args();
  if (h.kind == Term::Kind::Var) {
    auto it = std::find(vars.begin(), vars.end(), h.name);
    if (it == vars.end())
      throw ArityError("variable '" + h.name + "' is not in the context");
    if (!args.empty())
      throw ArityError("variable '" + h.name + "' applied to arguments");
    return OpenTerm::var(static_cast<std::size_t>(it - vars.begin()));
  }
  std::vector<OpenTerm> out;
  for (const Term* a : args) out.push_back(to_open_term(*a, vars));
  return OpenTerm::op(h.name, std::move(out));
}

Term to_surface_term(const OpenTerm& t, std::span<const std::string> vars) {
  if (t.is_var()) {
    if (t.index >= vars.size())
      throw ArityError("variable index " + std::to_string(t.index) +
                       " has no name");
    return Term::var(vars[t.index]);
  }
  std::vector<Term> args;
  for (const auto& a : t.args) args.push_back(to_surface_term(a, vars));
  return Term::apply(Term::sym(t.sym), std::move(args));
}

namespace {

void collect_vars(const OpenTerm& t, std::set<std::size_t>& out) {
  if (t.is_var()) {
    out.insert(t.index);
    return;
  }
  for (const auto& a : t.args) collect_vars(a, out);
}

bool orientable(const OpenTerm& from, const OpenTerm& to) {
  if (from.is_var()) return false;
  std::set<std::size_t> fv, tv;
  collect_vars(from, fv);
  collect_vars(to, tv);
  if (!std::includes(fv.begin(), fv.end(), tv.begin(), tv.end())) return false;
  return to.size() < from.size();
}

// op (op x y) z
bool left_nested(const OpenTerm& t) {
  return !t.is_var() && t.args.size() == 2 && !t.args[0].is_var() &&
         t.args[0].sym == t.sym;
}

OpenTerm norm(const OpenTerm& t, std::span<const RewriteRule> rules,
              std::size_t& fuel, std::size_t& steps) {
  if (t.is_var()) return t;
  OpenTerm cur = t;
  for (auto& a : cur.args) a = norm(a, rules, fuel, steps);
  for (const auto& r : rules) {
    std::vector<std::optional<OpenTerm>> subst(r.vars);
    if (!match(r.lhs, cur, subst)) continue;
    if (fuel == 0) return cur;
    --fuel;
    ++steps;
    return norm(instantiate(r.rhs, subst), rules, fuel, steps);
  }
  return cur;
}

}  // namespace

std::optional<RewriteRule> orient(const Axiom& ax, const OrientOptions& opts) {
  auto names = ax.var_names();
  RewriteRule r;
  r.vars = names.size();
  r.sourceAxiom = ax.name;
  OpenTerm l = to_open_term(ax.lhs, names);
  OpenTerm rt = to_open_term(ax.rhs, names);

  if (opts.forceAssociativity && associativity_operator(ax)) {
    r.decreasing = false;
    if (left_nested(l)) {
      r.lhs = std::move(l);
      r.rhs = std::move(rt);
    } else {
      r.lhs = std::move(rt);
      r.rhs = std::move(l);
    }
    return r;
  }
  if (orientable(l, rt)) {
    r.lhs = std::move(l);
    r.rhs = std::move(rt);
    return r;
  }
  if (orientable(rt, l)) {
    r.lhs = std::move(rt);
    r.rhs = std::move(l);
    return r;
  }
  return std::nullopt;
}

std::vector<RewriteRule> orient_all(const EqTheory& t, const OrientOptions& opts) {
  std::vector<RewriteRule> rules;
  for (const auto& ax : t.axioms)
    if (auto r = orient(ax, opts)) rules.push_back(std::move(*r));
  return rules;
}

bool match(const OpenTerm& pattern, const OpenTerm& t,
           std::vector<std::optional<OpenTerm>>& subst) {
  if (pattern.is_var()) {
    auto& slot = subst.at(pattern.index);
    if (slot) return *slot == t;
    slot = t;
    return true;
  }
  if (t.is_var() || t.sym != pattern.sym || t.args.size() != pattern.args.size())
    return false;
  for (std::size_t i = 0; i < t.args.size(); ++i)
    if (!match(pattern.args[i], t.args[i], subst)) return false;
  return true;
}

OpenTerm instantiate(const OpenTerm& t,
                     const std::vector<std::optional<OpenTerm>>& subst) {
  if (t.is_var()) {
    const auto& v = subst.at(t.index);
    if (!v) throw ArityError("rule variable #" + std::to_string(t.index) +
                             " is unbound");
    return *v;
  }
  OpenTerm r = OpenTerm::op(t.sym);
  r.args.reserve(t.args.size());
  for (const auto& a : t.args) r.args.push_back(instantiate(a, subst));
  return r;
}

std::size_t sufficient_fuel(const OpenTerm& t, std::span<const RewriteRule> rules) {
  std::size_t n = t.size();
  bool decreasing = std::all_of(rules.begin(), rules.end(),
                                [](const RewriteRule& r) { return r.decreasing; });
  return decreasing ? n : n * n * n + 1;
}

OpenTerm normalize(const OpenTerm& t, std::span<const RewriteRule> rules,
                   std::size_t fuel, std::size_t* steps) {
  std::size_t count = 0;
  OpenTerm r = norm(t, rules, fuel, count);
  if (steps) *steps = count;
  return r;
}

std::vector<OpenTerm> enumerate_terms(const Signature& sig, std::size_t vars,
                                      std::size_t depth) {
  std::vector<OpenTerm> all;
  if (depth == 0) return all;
  for (std::size_t i = 0; i < vars; ++i) all.push_back(OpenTerm::var(i));
  for (const auto& [f, n] : sig)
    if (n == 0) all.push_back(OpenTerm::op(f));

  std::size_t prev_begin = 0;
  for (std::size_t d = 2; d <= depth; ++d) {
    // Terms of depth exactly d-1 live in [prev_begin, prev_end).
    const std::size_t prev_end = all.size();
    if (prev_begin == prev_end) break;
    std::vector<OpenTerm> level;
    for (const auto& [f, n] : sig) {
      if (n == 0) continue;
      std::vector<std::size_t> idx(n, 0);
      for (;;) {
        bool fresh = std::any_of(idx.begin(), idx.end(),
                                 [&](std::size_t i) { return i >= prev_begin; });
        if (fresh) {
          std::vector<OpenTerm> args;
          args.reserve(n);
          for (auto i : idx) args.push_back(all[i]);
          level.push_back(OpenTerm::op(f, std::move(args)));
        }
        std::size_t k = n;
        while (k > 0 && ++idx[k - 1] == prev_end) idx[--k] = 0;
        if (k == 0) break;
      }
    }
    prev_begin = prev_end;
    for (auto& t : level) all.push_back(std::move(t));
  }
  std::stable_sort(all.begin(), all.end(), [](const OpenTerm& a, const OpenTerm& b) {
    return a.size() < b.size();
  });
  return all;
}

}  // namespace theoryforge
