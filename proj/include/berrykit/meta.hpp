#pragma once

#include <optional>

#include <nlohmann/json.hpp>

#include "berrykit/berry.hpp"
#include "berrykit/coding.hpp"
#include "berrykit/proof.hpp"

namespace bk {

/// Verdict of a meta-level relation on codes. `witness` and `derivation`
/// are set whenever an existential relation holds.
struct RelationVerdict {
  enum class Value { Holds, NotHolds, Unknown } value = Value::Unknown;
  Nat budget = 0;
  std::optional<Expr> witness;
  std::optional<Derivation> derivation;
  std::string note;

  [[nodiscard]] bool holds() const noexcept { return value == Value::Holds; }
  [[nodiscard]] nlohmann::json to_json() const;
};

const char* relation_value_name(RelationVerdict::Value v);

/// i codes a formula whose free variables are among {v0}.
bool fm(const CodeNumber& i);
/// i codes a formula of length < j.
bool lh(const CodeNumber& i, Nat j);
/// j ∈ Fm and T proves (∀v0)(μ ↔ v0 = i) for μ = decode(j), within B.
RelationVerdict nm(Nat i, const CodeNumber& j, const Theory& theory, Nat budget);
/// Some formula μ of length < j names i in T. Searches the depth-indexed
/// binder forms in canonical order; throws FeasibilityError above `cap`.
RelationVerdict b_rel(Nat i, Nat j, const Theory& theory, Nat budget, std::size_t cap = kDefaultEnumerationCap);
/// i codes a sentence.
bool snt(const CodeNumber& i);
/// i codes a sentence σ and j codes ~σ.
bool neg(const CodeNumber& i, const CodeNumber& j);
/// i is not a sentence, or T proves the negation of the sentence it codes.
RelationVerdict prc(const CodeNumber& i, const Theory& theory, Nat budget);

}  // namespace bk
