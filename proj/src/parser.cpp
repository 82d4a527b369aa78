#include "theoryforge/parser.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace theoryforge {

namespace {

std::string describe(const std::vector<std::string>& expected,
                     const std::string& found, SourcePos pos) {
  std::ostringstream os;
  os << pos.line << ':' << pos.column << ": expected ";
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i) os << (i + 1 == expected.size() ? " or " : ", ");
    os << expected[i];
  }
  os << ", found " << found;
  return os.str();
}

std::string token_text(const Token& t) {
  if (t.kind == Token::Kind::End) return "end of input";
  return "'" + t.text + "'";
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.pos = {line_, col_};
      if (i_ >= src_.size()) {
        t.kind = Token::Kind::End;
        out.push_back(t);
        return out;
      }
      char c = src_[i_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = i_;
        while (i_ < src_.size() && name_char_at(i_)) advance();
        t.kind = Token::Kind::Name;
        t.text = std::string(src_.substr(start, i_ - start));
      } else if (src_.substr(i_, 3) == "\xE2\x86\x92") {
        t.kind = Token::Kind::Arrow;
        t.text = "→";
        advance(3);
      } else if (src_.substr(i_, 2) == "->") {
        t.kind = Token::Kind::Arrow;
        t.text = "->";
        advance(2);
      } else if (src_.substr(i_, 2) == "==") {
        t.kind = Token::Kind::EqEq;
        t.text = "==";
        advance(2);
      } else {
        t.text = std::string(1, c);
        switch (c) {
          case '(': t.kind = Token::Kind::LParen; break;
          case ')': t.kind = Token::Kind::RParen; break;
          case '{': t.kind = Token::Kind::LBrace; break;
          case '}': t.kind = Token::Kind::RBrace; break;
          case ':': t.kind = Token::Kind::Colon; break;
          case '=': t.kind = Token::Kind::Equals; break;
          case ',': t.kind = Token::Kind::Comma; break;
          default:
            throw ParseError(t.pos, {"a name or symbol"}, token_text(t));
        }
        advance();
      }
      out.push_back(std::move(t));
    }
  }

 private:
  bool name_char_at(std::size_t j) const {
    char c = src_[j];
    if (c == '-') {
      // `--` starts a comment and `->` is an arrow, even inside a word.
      return j + 1 < src_.size() && src_[j + 1] != '-' && src_[j + 1] != '>';
    }
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
           c == '\'';
  }

  void advance(std::size_t n = 1) {
    for (std::size_t k = 0; k < n && i_ < src_.size(); ++k, ++i_) {
      unsigned char c = static_cast<unsigned char>(src_[i_]);
      if (c == '\n') {
        ++line_;
        col_ = 1;
      } else if ((c & 0xC0) != 0x80) {
        ++col_;
      }
    }
  }

  void skip_space() {
    while (i_ < src_.size()) {
      char c = src_[i_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        advance();
      } else if (src_.substr(i_, 2) == "--") {
        while (i_ < src_.size() && src_[i_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

ParseError::ParseError(SourcePos pos, std::vector<std::string> expected,
                       std::string found)
    : std::runtime_error(describe(expected, found, pos)),
      pos(pos),
      expected(std::move(expected)),
      found(std::move(found)) {}

std::vector<Token> tokenize(std::string_view source) {
  return Lexer(source).run();
}

Parser::Parser(std::string_view source) : tokens_(tokenize(source)) {}

const Token& Parser::peek(std::size_t ahead) const {
  std::size_t j = std::min(next_ + ahead, tokens_.size() - 1);
  return tokens_[j];
}

bool Parser::at_word(std::string_view word) const {
  return at(Token::Kind::Name) && peek().text == word;
}

void Parser::fail(std::vector<std::string> expected) const {
  throw ParseError(peek().pos, std::move(expected), token_text(peek()));
}

Token Parser::expect(Token::Kind k, std::string_view what) {
  if (!at(k)) fail({std::string(what)});
  return tokens_[next_++];
}

void Parser::expect_word(std::string_view word) {
  if (!at_word(word)) fail({"'" + std::string(word) + "'"});
  ++next_;
}

std::string Parser::expect_name() {
  if (!at(Token::Kind::Name) || is_reserved_word(peek().text)) fail({"a name"});
  return tokens_[next_++].text;
}

std::vector<Decl> Parser::parse_file() {
  std::vector<Decl> out;
  while (!at(Token::Kind::End)) out.push_back(parse_decl());
  return out;
}

Decl Parser::parse_decl() {
  if (at_word("record")) return parse_record();
  if (at_word("data")) return parse_data();
  fail({"'record'", "'data'"});
}

RecordDecl Parser::parse_record() {
  RecordDecl d;
  d.pos = peek().pos;
  expect_word("record");
  d.name = expect_name();
  while (at_binder()) d.params.push_back(parse_binder());
  expect(Token::Kind::Colon, "':'");
  expect_word("Set");
  d.constructorName = d.name + "C";
  if (at_word("where")) ++next_;
  if (at_word("constructor")) {
    ++next_;
    d.constructorName = expect_name();
  }
  if (at_word("field")) ++next_;
  d.fields = parse_constrs();
  return d;
}

DataDecl Parser::parse_data() {
  DataDecl d;
  d.pos = peek().pos;
  expect_word("data");
  d.name = expect_name();
  while (at_binder()) d.params.push_back(parse_binder());
  expect(Token::Kind::Colon, "':'");
  expect_word("Set");
  if (at_word("where")) ++next_;
  d.constructors = parse_constrs();
  return d;
}

std::vector<Constr> Parser::parse_constrs() {
  std::vector<Constr> out;
  while (at(Token::Kind::Name) && !is_reserved_word(peek().text) &&
         peek(1).kind == Token::Kind::Colon) {
    Constr c;
    c.pos = peek().pos;
    c.name = expect_name();
    expect(Token::Kind::Colon, "':'");
    c.type = parse_type();
    out.push_back(std::move(c));
  }
  return out;
}

bool Parser::at_binder() const {
  if (!at(Token::Kind::LParen) && !at(Token::Kind::LBrace)) return false;
  std::size_t k = 1;
  while (peek(k).kind == Token::Kind::Name && !is_reserved_word(peek(k).text))
    ++k;
  return k > 1 && peek(k).kind == Token::Kind::Colon;
}

Binder Parser::parse_binder() {
  Binder b;
  b.pos = peek().pos;
  b.hidden = at(Token::Kind::LBrace);
  ++next_;
  do {
    b.names.push_back(expect_name());
  } while (at(Token::Kind::Name));
  expect(Token::Kind::Colon, "':'");
  b.type = parse_type();
  expect(b.hidden ? Token::Kind::RBrace : Token::Kind::RParen,
         b.hidden ? "'}'" : "')'");
  return b;
}

TypeExpr Parser::parse_type() {
  if (at_binder()) {
    std::size_t mark = bound_.size();
    std::vector<Binder> binders;
    while (at_binder()) {
      binders.push_back(parse_binder());
      for (const auto& n : binders.back().names) bound_.push_back(n);
    }
    expect(Token::Kind::Arrow, "'→'");
    TypeExpr body = parse_type();
    bound_.resize(mark);
    return TypeExpr::quant(std::move(binders), std::move(body));
  }
  return parse_arrow_or_eq();
}

TypeExpr Parser::parse_arrow_or_eq() {
  TypeExpr lhs = parse_app();
  if (at(Token::Kind::EqEq)) {
    ++next_;
    TypeExpr rhs = parse_app();
    lhs = TypeExpr::equation(to_term(lhs), to_term(rhs));
  }
  if (at(Token::Kind::Arrow)) {
    ++next_;
    return TypeExpr::arrow(std::move(lhs), parse_type());
  }
  return lhs;
}

bool Parser::at_atom() const {
  if (at(Token::Kind::Name))
    return peek(1).kind != Token::Kind::Colon &&
           (peek().text == "Set" || !is_reserved_word(peek().text));
  return at(Token::Kind::LParen) && !at_binder();
}

TypeExpr Parser::parse_atom() {
  if (at(Token::Kind::Name)) {
    const Token& t = tokens_[next_++];
    if (t.text == "Set") return TypeExpr::set(t.pos);
    return TypeExpr::sort_ref(t.text, t.pos);
  }
  if (at(Token::Kind::LParen) && !at_binder()) {
    ++next_;
    TypeExpr inner = parse_type();
    expect(Token::Kind::RParen, "')'");
    return inner;
  }
  fail({"a name", "'('", "'Set'"});
}

TypeExpr Parser::parse_app() {
  TypeExpr head = parse_atom();
  if (!at_atom()) return head;
  SourcePos pos = head.pos;
  if (head.kind == TypeExpr::Kind::SortRef) {
    head = TypeExpr::ty_app(head.name, {}, pos);
  } else if (head.kind != TypeExpr::Kind::TyApp) {
    throw ParseError(pos, {"a name in head position"}, "a non-name head");
  }
  while (at_atom()) head.args.push_back(parse_atom());
  return head;
}

Term Parser::to_term(const TypeExpr& e) const {
  switch (e.kind) {
    case TypeExpr::Kind::SortRef:
      return is_bound(e.name) ? Term::var(e.name, e.pos)
                              : Term::sym(e.name, e.pos);
    case TypeExpr::Kind::TyApp: {
      Term t = is_bound(e.name) ? Term::var(e.name, e.pos)
                                : Term::sym(e.name, e.pos);
      for (const auto& a : e.args) t = Term::app(std::move(t), to_term(a));
      return t;
    }
    default:
      throw ParseError(e.pos, {"a term"}, "a type");
  }
}

bool Parser::is_bound(const std::string& n) const {
  return std::find(bound_.begin(), bound_.end(), n) != bound_.end();
}

Term Parser::parse_term(const std::vector<std::string>& bound) {
  std::size_t mark = bound_.size();
  bound_.insert(bound_.end(), bound.begin(), bound.end());
  Term t = to_term(parse_app());
  bound_.resize(mark);
  return t;
}

std::vector<Decl> parse_file(std::string_view source) {
  return Parser(source).parse_file();
}

}  // namespace theoryforge
