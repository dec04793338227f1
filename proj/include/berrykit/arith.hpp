#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>

#include "berrykit/builder.hpp"
#include "berrykit/semantics.hpp"

namespace bk {

/// Proof generation inside Q. All results are steps of the wrapped builder,
/// whose theory must extend Q.
class QProver {
 public:
  using Ref = ProofBuilder::Ref;

  /// A decided formula: `proof` derives f when `value` holds, ~f otherwise.
  struct Decision {
    bool value;
    Ref proof;
  };

  /// `witness_budget` bounds searches for witnesses and counterexamples of
  /// unbounded quantifiers; `bound_cap` bounds case splits over bounded ones.
  explicit QProver(ProofBuilder& b, Nat witness_budget = 64, Nat bound_cap = 4096);

  [[nodiscard]] ProofBuilder& builder() noexcept { return b_; }

  /// Normal form of a term under x+0→x, x+sy→s(x+y), x*0→0, x*sy→x*y+x.
  /// Closed terms normalise to numerals.
  struct Normal {
    Expr form;
    Ref proof;  // t = form
  };
  Normal normalize(const Expr& t);

  /// Proves f or ~f. Free variables are treated as unknowns, so open
  /// formulas are decided only when their normal forms settle them.
  std::optional<Decision> decide(const Expr& f);

  /// ~(x = y) for terms whose normal forms are s^a u and s^b 0 with a > b
  /// (or mirrored).
  std::optional<Ref> refute_eq(const Expr& l, const Expr& r);
  /// ~(l ≤ r) via ~(z + l = r) for fresh z.
  std::optional<Ref> refute_le(const Expr& l, const Expr& r);

  Ref ne_numerals(Nat i, Nat j);
  /// ∀v0 (v0 ≤ i ∨ i ≤ v0).
  Ref order_totality(Nat i);
  /// The least-element uniqueness schema instance for μ and i.
  Ref least_unique(const Expr& mu, Nat i);
  /// (∀v0)(μ ↔ v0 = i) by case analysis on v0 down to `max_depth`
  /// successor layers.
  std::optional<Ref> naming(const Expr& mu, Nat i, Nat max_depth);

  // Lemmas, exposed for testing.
  /// s x ≤ m → Disj_{j<m} x = j, or ~(s x ≤ 0) when m = 0.
  Ref le_cases(Nat m, VarIndex x);
  /// x ≤ i → Disj_{j≤i} x = j.
  Ref le_disj(Nat i, VarIndex x);
  /// a ≤ b → s a ≤ s b.
  Ref le_succ(const Expr& a, const Expr& b);
  /// 0 ≤ t.
  Ref zero_le(const Expr& t);

 private:
  using Opt = std::optional<Decision>;

  Ref ne_terms(const Expr& x, const Expr& y);
  Normal plus(const Expr& a, const Expr& b);
  Normal times(const Expr& a, const Expr& b);
  Ref atom_iff_normal(const Expr& atom, const Normal& l, const Normal& r);
  Opt decide_atom(const Expr& f);
  Opt decide_binary(const Expr& f);
  Opt decide_quantifier(const Expr& f);
  Opt decide_bounded(const Expr& f, VarIndex x, const Expr& bound, const Expr& body, bool universal);
  Ref bounded_forall_true(const Expr& f, VarIndex x, const Expr& bound, Nat m, const Normal& nb,
                          const Expr& body, const std::vector<Ref>& instances);
  Ref sum_disj(Nat k, VarIndex z, VarIndex x);
  Ref le_numeral_true(Nat n, Nat m);
  Ref p6(Nat i, VarIndex x);
  Ref order_open(Nat i, VarIndex x);
  std::optional<Ref> naming_case(const Expr& mu, Nat i, const Expr& tau, Nat depth);
  Truth semantic(const Expr& f);

  ProofBuilder& b_;
  Nat budget_;
  Nat cap_;
  std::unordered_map<Expr, Normal> norm_memo_;
  struct PairHash {
    std::size_t operator()(const std::pair<Expr, Expr>& p) const noexcept {
      return p.first.hash() * 1000003u ^ p.second.hash();
    }
  };
  std::unordered_map<std::pair<Expr, Expr>, Normal, PairHash> plus_memo_, times_memo_;
  std::unordered_map<Expr, Opt> decide_memo_;
  std::unordered_map<std::pair<Expr, Expr>, Ref, PairHash> ne_memo_;
  std::map<std::pair<Nat, VarIndex>, Ref> cases_memo_, disj_memo_;
  std::map<std::tuple<Nat, VarIndex, VarIndex>, Ref> sum_memo_;
  std::map<Nat, Ref> order_memo_;
};

enum class SigmaStatus { Proved, Refused, BudgetExhausted };
const char* sigma_status_name(SigmaStatus s);

struct SigmaResult {
  SigmaStatus status;
  Derivation derivation;  // only when Proved
  std::string detail;
};

/// Derivation in Q of a true Σ sentence. False sentences are refused;
/// sentences whose truth or proof needs more than B are BudgetExhausted.
/// Throws PreconditionError for open formulas and formulas outside Σ.
SigmaResult prove_sigma(const Expr& sigma, Nat budget = 64);

/// ~(i = j) in Q. Throws PreconditionError when i = j.
Derivation prove_ne_numerals(Nat i, Nat j);
/// ∀v0 (v0 ≤ i ∨ i ≤ v0) in Q.
Derivation prove_order_totality(Nat i);
/// ~μ(i) ∧ (∀v2<i)μ(v2) → (∀v0)(~μ(v0) ∧ (∀v2<v0)μ(v2) → v0 = i), expanded.
Expr least_unique_statement(const Expr& mu, Nat i);
/// Derivation in Q of least_unique_statement(mu, i). Throws
/// PreconditionError unless free variables ⊆ {v0} and v2 does not occur.
Derivation prove_least_unique(const Expr& mu, Nat i);

}  // namespace bk
