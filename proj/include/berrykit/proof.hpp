#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "berrykit/expr.hpp"

namespace bk {

/// A recursively axiomatised theory given by finitely many closed axioms.
struct Theory {
  std::string name;
  std::vector<Expr> axioms;
  bool extends_q = false;

  /// Robinson arithmetic, Q1–Q8, with x ≤ y ↔ ∃z(z + x = y).
  static const Theory& q();
  /// No non-logical axioms.
  static const Theory& pure_logic();
  /// Q plus extra closed axioms.
  static Theory q_plus(std::string name, std::vector<Expr> extra);

  [[nodiscard]] bool has_axiom(const Expr& f) const;
};

/// The eight axioms of Q in order, universally closed over v0, v1.
const std::vector<Expr>& q_axioms();

// Rules of the calculus.
//   ax        theory axiom
//   taut      propositional tautology
//   all-inst  ∀xφ → φ[t/x], t free for x
//   all-dist  ∀x(A → B) → (A → ∀xB), x not free in A
//   ex-def    ∃xφ ↔ ~∀x~φ
//   eq-refl   t = t
//   eq-sub    s = t → (B → C), C is B with some occurrences of s replaced by t
//   mp        from A → B (first premise) and A (second premise) infer B
//   gen       from φ infer ∀xφ
enum class Rule { Axiom, Taut, AllInst, AllDist, ExDef, EqRefl, EqSub, MP, Gen };

const char* rule_name(Rule r);
std::optional<Rule> rule_from_name(const std::string& s);

struct Step {
  Expr formula;
  Rule rule;
  std::vector<std::size_t> premises;
};

struct Derivation {
  std::vector<Step> steps;

  [[nodiscard]] bool empty() const noexcept { return steps.empty(); }
  [[nodiscard]] const Expr& conclusion() const { return steps.back().formula; }
};

struct CheckResult {
  bool valid = true;
  std::size_t step = 0;
  std::string reason;

  explicit operator bool() const noexcept { return valid; }
  static CheckResult ok() { return {}; }
  static CheckResult invalid(std::size_t i, std::string why) { return {false, i, std::move(why)}; }
};

/// Checks a single step against already-accepted premise formulas. Returns
/// an empty string when the step is correct, otherwise the reason.
std::string check_step(const Expr& f, Rule rule, const std::vector<Expr>& premises, const Theory& theory);

CheckResult check(const Derivation& d, const Theory& theory);

/// Convenience: valid and concludes exactly `goal` (after bounded expansion).
bool proves(const Derivation& d, const Theory& theory, const Expr& goal);

/// JSON lines: {"i":n,"f":"<canonical text>","rule":"mp","prem":[a,b]}.
void write_jsonl(std::ostream& out, const Derivation& d);
/// Throws std::runtime_error with the offending line number on malformed input.
Derivation read_jsonl(std::istream& in);

}  // namespace bk
