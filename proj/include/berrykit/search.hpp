#pragma once

#include <optional>

#include "berrykit/proof.hpp"
#include "berrykit/semantics.hpp"

namespace bk {

struct SearchBudget {
  Nat witness = 64;  // witnesses, counterexamples and naming case depth
  Nat depth = 6;     // structural decomposition depth
};

/// Bounded proof search. Sound: a returned derivation has been re-checked
/// against `theory` and concludes exactly `goal` (bounded quantifiers
/// expanded). Complete only up to the budget.
std::optional<Derivation> search_proof(const Expr& goal, const Theory& theory, SearchBudget budget = {});

struct ProvableNaming {
  NamingVerdict verdict;
  /// Names: derivation of (∀v0)(μ ↔ v0 = i). RefutedAt(j): derivation of
  /// μ(j) for j ≠ i, or of ~μ(i) when j = i.
  std::optional<Derivation> evidence;
};

/// Naming relative to provability in `theory`. Throws PreconditionError
/// unless the free variables of μ are among {v0}.
ProvableNaming names_provable(const Expr& mu, Nat i, const Theory& theory, SearchBudget budget = {});

}  // namespace bk
