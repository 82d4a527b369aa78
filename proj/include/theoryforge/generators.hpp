#ifndef THEORYFORGE_GENERATORS_HPP
#define THEORYFORGE_GENERATORS_HPP

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "theoryforge/eqtheory.hpp"
#include "theoryforge/syntax.hpp"

namespace theoryforge {

/// Catalog of derived constructions, in emission order.
enum class GenKind {
  Signature,
  Product,
  TermLang,
  OpenTermLang,
  Evaluator,
  Hom,
  Monomorphism,
  Endomorphism
};

std::string_view to_string(GenKind k);
/// Command-line spelling: sig, prod, termlang, open-termlang, hom, mono, endo.
std::string_view cli_name(GenKind k);
std::optional<GenKind> parse_gen_kind(std::string_view cli);
/// sig, prod, termlang, hom.
std::vector<GenKind> default_kinds();

class GenerationError : public std::runtime_error {
 public:
  GenerationError(std::string theory, std::string detail);
  std::string theory;
};

/// Machine-generated names used by the homomorphism family.
struct HomNaming {
  std::pair<std::string, std::string> carrierNames;
  std::pair<std::string, std::string> instanceNames;
  std::string funcName = "hom";
  std::string presPrefix = "pres-";
  std::string injectiveName = "injective";

  /// Carriers from the sort name plus an index (A1, A2); instances from the
  /// first two characters of the theory name plus an index (Mo1, Mo2).
  static HomNaming for_theory(const EqTheory& t);
};

/// Suffixes that keep generated field names distinct within one module.
struct Suffixes {
  std::string signature = "S";
  std::string product = "P";
  std::string termLang = "L";
  std::string openTermLang = "OL";

  /// The suffix for a kind that renames symbols, if any.
  std::string* find(GenKind k);
};

/// Built-in binary product type used by product algebras.
inline constexpr std::string_view kProdType = "Prod";
/// `data Prod (A : Set) (B : Set) : Set where pair : A → B → Prod A B`
DataDecl prod_declaration();

EqTheory gen_signature(const EqTheory& t, const std::string& suffix = "S");
EqTheory gen_product(const EqTheory& t, const std::string& suffix = "P");
DataDecl gen_termlang(const EqTheory& t, const std::string& suffix = "L");
DataDecl gen_open_termlang(const EqTheory& t, const std::string& suffix = "OL");
RecordDecl gen_hom(const EqTheory& t, const HomNaming& naming);
RecordDecl gen_monomorphism(const EqTheory& t, const HomNaming& naming);
RecordDecl gen_endomorphism(const EqTheory& t, const HomNaming& naming);

struct GenOptions {
  Suffixes suffixes;
};

/// Naming used by gen_all for each member of the homomorphism family, so
/// that selecting several of them never repeats a field name.
HomNaming naming_for(const EqTheory& t, GenKind k);

/// Generated declarations for `kinds`, in catalog order. The input theory is
/// not included.
std::vector<Decl> gen_all(const EqTheory& t, std::span<const GenKind> kinds,
                          const GenOptions& opts = {});

}  // namespace theoryforge

#endif
