#ifndef THEORYFORGE_COMBINATORS_HPP
#define THEORYFORGE_COMBINATORS_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "theoryforge/eqtheory.hpp"
#include "theoryforge/syntax.hpp"

namespace theoryforge {

/// One `theory NAME = ...` entry of a library file. Parents are referenced
/// by name and must be defined earlier in the file.
struct TheoryExpr {
  enum class Kind { Base, Extend, Rename, Combine };

  Kind kind = Kind::Base;
  std::string name;
  RecordDecl decl;                                          // Base
  std::string parent;                                       // Extend, Rename
  std::vector<Constr> newDecls;                             // Extend
  std::vector<std::pair<std::string, std::string>> mapping; // Rename
  std::string left, right, over;                            // Combine
  SourcePos pos;

  std::vector<std::string> parents() const;
};

class ExpandError : public std::runtime_error {
 public:
  enum class Kind { Clash, Shape, UnknownTheory, DuplicateTheory, BadRename };
  ExpandError(Kind kind, std::string entry, std::string detail);

  Kind kind;
  std::string entry;
};

std::string_view to_string(ExpandError::Kind k);

struct Library {
  std::vector<TheoryExpr> entries;
  std::map<std::string, EqTheory> expanded;
  /// For each Combine entry, how the right parent's names map into it.
  std::map<std::string, std::map<std::string, std::string>> rightRenamings;

  const EqTheory& at(const std::string& name) const;
  /// Expanded theories in entry order.
  std::vector<EqTheory> theories() const;
};

/// Parses the `.lib` format:
///   theory NAME = base { binders fields }
///   theory NAME = extend PARENT with { fields }
///   theory NAME = rename PARENT renaming (a to b, ...)
///   theory NAME = combine LEFT RIGHT over COMMON
std::vector<TheoryExpr> parse_library(std::string_view source);

/// Expands one entry whose parents are already in `lib`.
EqTheory expand(const TheoryExpr& e, const Library& lib);

/// Expands entries level by level over the dependency DAG, running
/// independent entries of a level on up to `jobs` threads.
Library expand_library(std::vector<TheoryExpr> entries, int jobs = 1);
/// Sequential reference for expand_library.
Library expand_library_serial(std::vector<TheoryExpr> entries);

}  // namespace theoryforge

#endif
