#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "berrykit/expr.hpp"

namespace bk {

using Env = std::map<VarIndex, Nat>;

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Value of a term in ω. Throws EvalError on unbound variables or when the
/// value does not fit in 64 bits.
Nat eval_term(const Expr& t, const Env& env = {});

/// Decides a Δ0 formula. Throws EvalError if a quantifier is unbounded.
bool eval_delta0(const Expr& f, const Env& env = {});

enum class Truth { True, False, Unknown };
const char* truth_name(Truth t);

struct TruthVerdict {
  Truth value = Truth::Unknown;
  /// Witness (for a true ∃) or counterexample (for a false ∀) of the
  /// outermost unbounded quantifier, when one decided the verdict.
  std::optional<Nat> witness;
};

/// Three-valued truth with a search budget for unbounded quantifiers. Only
/// sound verdicts are returned: an unbounded ∃ is True on a witness ≤ B,
/// an unbounded ∀ is False on a counterexample ≤ B, otherwise Unknown
/// unless the matrix alone decides.
TruthVerdict eval_budgeted(const Expr& f, Nat budget, const Env& env = {});

enum class NamingKind { Names, RefutedAt, Unknown };
const char* naming_kind_name(NamingKind k);

struct NamingVerdict {
  NamingKind kind = NamingKind::Unknown;
  Nat number = 0;  // the named number, or the refuting argument
  Nat budget = 0;

  friend bool operator==(const NamingVerdict&, const NamingVerdict&) = default;
};

/// Semantic naming relative to a budget: μ names i when μ(i) holds and
/// μ(j) fails for every other j ≤ B.
NamingVerdict names_semantic(const Expr& mu, Nat i, Nat budget);

/// The unique i ≤ B that μ names semantically, if any; Unknown when some
/// instance could not be decided within the budget.
std::optional<NamingVerdict> find_semantic_name(const Expr& mu, Nat budget);

}  // namespace bk
