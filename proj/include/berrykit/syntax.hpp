#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "berrykit/expr.hpp"

namespace bk {

/// Primitive symbols of the canonical concrete syntax. `Lt` only appears in
/// the surface form of bounded quantifiers and never in expanded text.
enum class Sym : std::uint8_t {
  Zero,
  S,
  Plus,
  Times,
  Eq,
  Le,
  Not,
  And,
  Or,
  Imp,
  Iff,
  All,
  Ex,
  LParen,
  RParen,
  Var,
  Lt,
};

struct Token {
  Sym sym;
  VarIndex var = 0;  // only for Sym::Var

  friend bool operator==(const Token&, const Token&) = default;
};

std::string token_text(const Token& t);

/// Splits text into tokens. Whitespace is optional between tokens.
std::vector<Token> tokenize(std::string_view text);

/// Syntax error with a 1-based token position.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, std::string expected, const std::string& what)
      : std::runtime_error(what), position_(position), expected_(std::move(expected)) {}
  [[nodiscard]] std::size_t position() const noexcept { return position_; }
  [[nodiscard]] const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

/// Parses a term or a formula. Throws ParseError.
Expr parse(std::string_view text);
Expr parse_tokens(const std::vector<Token>& tokens);
/// Parses and requires a formula.
Expr parse_formula(std::string_view text);

/// Canonical token sequence. Bounded quantifiers keep their surface form
/// unless `expand` is set, in which case the expansion is emitted.
std::vector<Token> tokens_of(const Expr& e, bool expand = false);

/// Canonical text: tokens separated by single spaces.
std::string render(const Expr& e);

/// Number of symbols of the expanded canonical rendering.
std::size_t length(const Expr& e);

/// Tagged-object JSON form, e.g. {"k":"mul","l":...,"r":...}.
nlohmann::json to_json(const Expr& e);
Expr from_json(const nlohmann::json& j);

}  // namespace bk
