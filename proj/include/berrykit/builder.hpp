#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "berrykit/proof.hpp"

namespace bk {

/// Raised when a builder step would not pass the checker; indicates a bug
/// in a proof generator, never bad user input.
class ProofConstructionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Incremental construction of derivations. Every step is validated as it
/// is added, identical formulas share one step, and `finish` keeps only the
/// steps the conclusion depends on.
class ProofBuilder {
 public:
  using Ref = std::size_t;

  explicit ProofBuilder(const Theory& theory);

  [[nodiscard]] const Theory& theory() const noexcept { return *theory_; }
  [[nodiscard]] const Expr& formula(Ref r) const { return steps_.at(r).formula; }
  [[nodiscard]] std::size_t size() const noexcept { return steps_.size(); }

  /// Index of an existing step proving exactly f.
  [[nodiscard]] std::optional<Ref> find(const Expr& f) const;

  /// Makes later fresh variables avoid every variable of e.
  void reserve(const Expr& e);
  VarIndex fresh();

  // Primitive steps.
  Ref axiom(const Expr& f);
  Ref taut(const Expr& f);
  Ref eq_refl(const Expr& t);
  /// s = t → (before → after).
  Ref eq_sub(const Expr& s, const Expr& t, const Expr& before, const Expr& after);
  /// ∀xφ → φ[t/x]; the instance is computed by capture-avoiding substitution.
  Ref all_inst(const Expr& all, const Expr& t);
  Ref all_dist(VarIndex x, const Expr& a, const Expr& b);
  Ref ex_def(VarIndex x, const Expr& body);
  Ref mp(Ref imp, Ref ant);
  Ref gen(Ref r, VarIndex x);
  /// Inserts a whole checked derivation; returns the step of its conclusion.
  Ref import(const Derivation& d);

  // Derived rules.
  /// From P1, …, Pn derive C when P1 → … → Pn → C is a tautology.
  Ref consequence(const std::vector<Ref>& premises, const Expr& conclusion);
  /// From ∀xφ derive φ[t/x].
  Ref instantiate(Ref all, const Expr& t);
  Ref instantiate_all(Ref all, const std::vector<Expr>& ts);
  /// Instance of axiom Q(k) (1-based) at the given terms; binders left inside
  /// the instance are renamed to fresh variables.
  Ref q_instance(int k, const std::vector<Expr>& ts);
  /// s = t ⊢ t = s.
  Ref symm(Ref e);
  /// ⊢ s = t → t = s.
  Ref symm_imp(const Expr& s, const Expr& t);
  /// r = s, s = t ⊢ r = t.
  Ref trans(Ref a, Ref b);
  /// From s = t derive before = after, where after replaces some occurrences
  /// of s in the term before by t.
  Ref congruence(Ref e, const Expr& before, const Expr& after);
  /// ⊢ φ[t/x] → ∃xφ.
  Ref exists_intro_imp(VarIndex x, const Expr& body, const Expr& t);
  /// From φ[t/x] derive ∃xφ.
  Ref exists_intro(VarIndex x, const Expr& body, const Expr& t, Ref instance);
  /// From P → C with x not free in C derive ∃xP → C.
  Ref exists_elim(Ref imp, VarIndex x);
  /// From H → P with x not free in H derive H → ∀xP.
  Ref forall_intro_under(Ref imp, VarIndex x);

  /// Derivation of the given step with unreachable steps removed.
  [[nodiscard]] Derivation finish(Ref conclusion) const;

 private:
  Ref add(const Expr& f, Rule rule, std::vector<Ref> premises);

  const Theory* theory_;
  std::vector<Step> steps_;
  std::unordered_map<Expr, Ref> index_;
  VarIndex fresh_ = 0;
};

}  // namespace bk
