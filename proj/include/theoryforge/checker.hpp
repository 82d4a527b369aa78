#ifndef THEORYFORGE_CHECKER_HPP
#define THEORYFORGE_CHECKER_HPP

#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "theoryforge/syntax.hpp"

namespace theoryforge {

struct CheckError {
  enum class Kind {
    UnboundName,
    ArityMismatch,
    SortMismatch,
    DuplicateField,
    DuplicateDecl
  };
  Kind kind;
  std::string message;
  SourcePos pos;
  std::string decl;
};

std::string_view to_string(CheckError::Kind k);

/// `FILE:LINE:COL: KIND: message`
std::string format_error(const CheckError& e, std::string_view file);

namespace detail {
struct Globals;
}

/// Declarations seen so far in one output module. Field and constructor names
/// are tracked module-wide because generated records share one namespace.
class CheckContext {
 public:
  CheckContext();
  ~CheckContext();
  CheckContext(const CheckContext&);
  CheckContext& operator=(const CheckContext&);
  CheckContext(CheckContext&&) noexcept;
  CheckContext& operator=(CheckContext&&) noexcept;

  /// Makes `Prod : Set → Set → Set` available without a declaration.
  void add_builtin_prod();

  const std::set<std::string>& used_field_names() const;
  bool declares(const std::string& name) const;

  detail::Globals& globals() { return *globals_; }
  const detail::Globals& globals() const { return *globals_; }

 private:
  std::unique_ptr<detail::Globals> globals_;
};

/// Checks `d` against `ctx` and, on success or failure, records its
/// declarations in `ctx` so later declarations may refer to them.
std::vector<CheckError> check_decl(const Decl& d, CheckContext& ctx);

/// Checks declarations in order, threading one context. `Prod` is
/// available as a builtin unless the module declares it.
std::vector<CheckError> check_module(std::span<const Decl> ds);

}  // namespace theoryforge

#endif
