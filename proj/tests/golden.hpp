#pragma once

// Structural comparison used against the hand-transcribed golden blocks:
// constructor names are ignored and `==` is compared as a symmetric relation.

#include <algorithm>
#include <variant>

#include "theoryforge/printer.hpp"
#include "theoryforge/syntax.hpp"

namespace golden {

inline void canonicalize(theoryforge::TypeExpr& t) {
  using theoryforge::TypeExpr;
  if (t.kind == TypeExpr::Kind::Equation) {
    if (theoryforge::print_term(t.sides[1]) < theoryforge::print_term(t.sides[0]))
      std::swap(t.sides[0], t.sides[1]);
    return;
  }
  for (auto& a : t.args) canonicalize(a);
  for (auto& b : t.binders) canonicalize(b.type);
}

inline theoryforge::Decl canonical(theoryforge::Decl d) {
  std::visit(
      [](auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, theoryforge::RecordDecl>) {
          x.constructorName.clear();
          for (auto& f : x.fields) canonicalize(f.type);
        } else {
          for (auto& c : x.constructors) canonicalize(c.type);
        }
        for (auto& p : x.params) canonicalize(p.type);
      },
      d);
  return d;
}

inline bool same_shape(const theoryforge::Decl& a, const theoryforge::Decl& b) {
  return canonical(a) == canonical(b);
}

}  // namespace golden
