#ifndef THEORYFORGE_PARSER_HPP
#define THEORYFORGE_PARSER_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "theoryforge/syntax.hpp"

namespace theoryforge {

class ParseError : public std::runtime_error {
 public:
  ParseError(SourcePos pos, std::vector<std::string> expected,
             std::string found);

  SourcePos pos;
  std::vector<std::string> expected;
  std::string found;
};

struct Token {
  enum class Kind {
    Name,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Colon,
    Arrow,
    EqEq,
    Equals,
    Comma,
    End
  };
  Kind kind = Kind::End;
  std::string text;
  SourcePos pos;
};

std::vector<Token> tokenize(std::string_view source);

/// Recursive-descent parser over a token stream. Exposed so the library-file
/// reader can reuse binder, field and type parsing.
class Parser {
 public:
  explicit Parser(std::string_view source);

  std::vector<Decl> parse_file();
  Decl parse_decl();
  RecordDecl parse_record();
  DataDecl parse_data();

  /// Parses `name : type` declarations while the lookahead is NAME ':'.
  std::vector<Constr> parse_constrs();
  bool at_binder() const;
  Binder parse_binder();
  TypeExpr parse_type();
  /// Parses a term; names in `bound` become variables.
  Term parse_term(const std::vector<std::string>& bound);

  const Token& peek(std::size_t ahead = 0) const;
  bool at(Token::Kind k) const { return peek().kind == k; }
  bool at_word(std::string_view word) const;
  Token expect(Token::Kind k, std::string_view what);
  void expect_word(std::string_view word);
  std::string expect_name();
  [[noreturn]] void fail(std::vector<std::string> expected) const;

 private:
  TypeExpr parse_arrow_or_eq();
  TypeExpr parse_app();
  bool at_atom() const;
  TypeExpr parse_atom();
  Term to_term(const TypeExpr& e) const;
  bool is_bound(const std::string& n) const;

  std::vector<Token> tokens_;
  std::size_t next_ = 0;
  std::vector<std::string> bound_;
};

/// Parses a whole `.eqt` source into its top-level declarations.
std::vector<Decl> parse_file(std::string_view source);

}  // namespace theoryforge

#endif
