#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "berrykit/expr.hpp"
#include "berrykit/syntax.hpp"

namespace bk {

/// Arbitrary-precision Gödel code. Zero and one encode nothing.
struct CodeNumber {
  mpz_class value;

  CodeNumber() = default;
  explicit CodeNumber(mpz_class v) : value(std::move(v)) {}
  explicit CodeNumber(unsigned long v) : value(v) {}

  static CodeNumber from_string(const std::string& text, int base = 10);
  [[nodiscard]] std::string to_string(int base = 10) const { return value.get_str(base); }

  friend bool operator==(const CodeNumber& a, const CodeNumber& b) { return a.value == b.value; }
  friend bool operator<(const CodeNumber& a, const CodeNumber& b) { return a.value < b.value; }
};

/// Codes of the fifteen non-variable primitive symbols, the threshold `c`
/// above all of them, and the variable rule ⌜v_i⌝ = c + i.
class SymbolTable {
 public:
  static constexpr std::size_t kSymbols = 15;

  /// 0→1 s→2 +→3 *→4 =→5 ≤→6 ~→7 &→8 |→9 →→10 ↔→11 ∀→12 ∃→13 (→14 )→15, c = 16.
  static const SymbolTable& standard();

  /// Throws std::invalid_argument unless codes are positive, distinct and < c.
  SymbolTable(std::array<unsigned, kSymbols> codes, unsigned c);

  [[nodiscard]] unsigned c() const noexcept { return c_; }
  [[nodiscard]] mpz_class code(const Token& t) const;
  [[nodiscard]] std::optional<Token> token(const mpz_class& code) const;
  /// h(j) = max({c} ∪ {⌜v_i⌝ : i ≤ j}) = c + j.
  [[nodiscard]] unsigned long h(unsigned long j) const;

 private:
  std::array<unsigned, kSymbols> codes_;
  unsigned c_;
};

/// The n-th prime, p_0 = 2. Thread-safe, cached.
unsigned long nth_prime(std::size_t n);

CodeNumber encode(const Expr& e, const SymbolTable& table = SymbolTable::standard());
CodeNumber encode_tokens(const std::vector<Token>& tokens, const SymbolTable& table = SymbolTable::standard());

enum class DecodeError { None, NotACode, NotWellFormed };

struct DecodeResult {
  std::optional<Expr> expr;
  DecodeError error = DecodeError::None;
  std::string detail;

  [[nodiscard]] bool ok() const noexcept { return expr.has_value(); }
};

DecodeResult decode(const CodeNumber& n, const SymbolTable& table = SymbolTable::standard());

class CodingError : public std::runtime_error {
 public:
  CodingError(DecodeError kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  [[nodiscard]] DecodeError kind() const noexcept { return kind_; }

 private:
  DecodeError kind_;
};

/// Decodes or throws CodingError; also rejects codes of terms.
Expr decode_formula(const CodeNumber& n, const SymbolTable& table = SymbolTable::standard());

/// The naming sentence (∀v0)(μ ↔ v0 = i).
Expr naming_sentence(const Expr& mu, Nat i);

/// f(i, ⌜μ⌝) = ⌜(∀v0)(μ ↔ v0 = i)⌝.
CodeNumber f_code(Nat i, const CodeNumber& m, const SymbolTable& table = SymbolTable::standard());

/// h(j) = c + j; g(j) = p_j^{h(j)·j}. Both reject j = 0.
unsigned long h(unsigned long j, const SymbolTable& table = SymbolTable::standard());
CodeNumber g(unsigned long j, const SymbolTable& table = SymbolTable::standard());

}  // namespace bk
