#pragma once

#include <random>
#include <vector>

#include "berrykit/expr.hpp"

namespace bk {

/// Random syntax for property tests and `gn random`. Sizes are bounded by
/// `depth`; numerals stay below `max_numeral`.
struct RandomSyntax {
  std::mt19937_64 rng;
  Nat max_numeral = 4;

  explicit RandomSyntax(std::uint64_t seed) : rng(seed) {}

  /// Term over the given variables (none: closed).
  Expr term(int depth, const std::vector<VarIndex>& vars);
  /// Formula whose free variables are among `vars`; quantifiers bind fresh
  /// indices above them and may be unbounded.
  Expr formula(int depth, std::vector<VarIndex> vars);
  /// Sentence in which every quantifier is bounded.
  Expr delta0_sentence(int depth);

 private:
  Expr delta0(int depth, std::vector<VarIndex> vars);
  std::size_t pick(std::size_t n);
};

}  // namespace bk
