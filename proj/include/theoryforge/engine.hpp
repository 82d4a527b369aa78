#ifndef THEORYFORGE_ENGINE_HPP
#define THEORYFORGE_ENGINE_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "theoryforge/eqtheory.hpp"

namespace theoryforge {

/// Term over a theory's symbols with de Bruijn-style variable indices into a
/// context of size n.
struct OpenTerm {
  enum class Kind { Var, Op };

  Kind kind = Kind::Op;
  std::size_t index = 0;  // Var
  std::string sym;        // Op
  std::vector<OpenTerm> args;

  static OpenTerm var(std::size_t i);
  static OpenTerm op(std::string sym, std::vector<OpenTerm> args = {});

  bool is_var() const { return kind == Kind::Var; }
  /// Symbols plus variable occurrences.
  std::size_t size() const;
  std::size_t depth() const;

  friend bool operator==(const OpenTerm& a, const OpenTerm& b) = default;
};

std::string to_string(const OpenTerm& t);

class ArityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Function symbols and their arities, in declaration order.
using Signature = std::vector<std::pair<std::string, std::size_t>>;
Signature signature_of(const EqTheory& t);

template <class Carrier>
struct Operation {
  std::size_t arity = 0;
  std::function<Carrier(std::span<const Carrier>)> fn;
};

/// A carrier type plus an interpretation of each function symbol.
template <class Carrier>
struct Model {
  std::map<std::string, Operation<Carrier>> interp;
};

template <class Carrier>
using Env = std::vector<Carrier>;

/// Homomorphic extension of `env` through the model's interpretation.
template <class Carrier>
Carrier eval(const OpenTerm& t, const Model<Carrier>& m, const Env<Carrier>& env) {
  if (t.is_var()) {
    if (t.index >= env.size())
      throw ArityError("variable index " + std::to_string(t.index) +
                       " outside an environment of size " +
                       std::to_string(env.size()));
    return env[t.index];
  }
  auto it = m.interp.find(t.sym);
  if (it == m.interp.end())
    throw ArityError("no interpretation for '" + t.sym + "'");
  if (it->second.arity != t.args.size())
    throw ArityError("'" + t.sym + "' expects " +
                     std::to_string(it->second.arity) + " arguments, got " +
                     std::to_string(t.args.size()));
  // std::vector<bool> is not contiguous, so bool arguments get a plain array.
  if constexpr (std::is_same_v<Carrier, bool>) {
    std::unique_ptr<bool[]> vals(new bool[t.args.size()]);
    for (std::size_t i = 0; i < t.args.size(); ++i) vals[i] = eval(t.args[i], m, env);
    return it->second.fn(std::span<const bool>(vals.get(), t.args.size()));
  } else {
    std::vector<Carrier> vals;
    vals.reserve(t.args.size());
    for (const auto& a : t.args) vals.push_back(eval(a, m, env));
    return it->second.fn(std::span<const Carrier>(vals));
  }
}

/// Converts a surface term; variables are numbered by their position in
/// `vars`.
OpenTerm to_open_term(const Term& t, std::span<const std::string> vars);
Term to_surface_term(const OpenTerm& t, std::span<const std::string> vars);

struct RewriteRule {
  std::size_t vars = 0;
  OpenTerm lhs;
  OpenTerm rhs;
  std::string sourceAxiom;
  /// Every application strictly decreases term size.
  bool decreasing = true;
};

struct OrientOptions {
  /// Orient associativity so that left-nested applications re-associate to
  /// the right, even though both sides have equal size.
  bool forceAssociativity = false;
};

/// lhs → rhs when lhs is not a variable, vars(rhs) ⊆ vars(lhs) and rhs is
/// strictly smaller; otherwise the reverse under the same test.
std::optional<RewriteRule> orient(const Axiom& ax, const OrientOptions& opts = {});
std::vector<RewriteRule> orient_all(const EqTheory& t, const OrientOptions& opts = {});

/// Matches `pattern` against `t`, extending `subst` (indexed by pattern
/// variable).
bool match(const OpenTerm& pattern, const OpenTerm& t,
           std::vector<std::optional<OpenTerm>>& subst);
OpenTerm instantiate(const OpenTerm& t,
                     const std::vector<std::optional<OpenTerm>>& subst);

/// Fuel that bounds normalization of `t` under `rules`: size(t) when every
/// rule is decreasing, otherwise a cubic bound that covers re-association.
std::size_t sufficient_fuel(const OpenTerm& t, std::span<const RewriteRule> rules);

/// Innermost, leftmost rewriting with rules tried in order. Stops after
/// `fuel` rewrite steps. `steps`, when given, receives the number of steps.
OpenTerm normalize(const OpenTerm& t, std::span<const RewriteRule> rules,
                   std::size_t fuel, std::size_t* steps = nullptr);

/// Every term of depth at most `depth` over `sig` and `vars` variables,
/// without duplicates, ordered by size.
std::vector<OpenTerm> enumerate_terms(const Signature& sig, std::size_t vars,
                                      std::size_t depth);

}  // namespace theoryforge

#endif
