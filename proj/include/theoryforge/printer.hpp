#ifndef THEORYFORGE_PRINTER_HPP
#define THEORYFORGE_PRINTER_HPP

#include <span>
#include <string>

#include "theoryforge/syntax.hpp"

namespace theoryforge {

std::string print_term(const Term& t);
std::string print_type(const TypeExpr& t);
std::string print_binder(const Binder& b);

/// Renders a declaration in the surface syntax, ending with a newline.
/// Output re-parses to a structurally equal declaration.
std::string print_decl(const Decl& d);

/// Declarations separated by one blank line.
std::string print_module(std::span<const Decl> decls);

}  // namespace theoryforge

#endif
