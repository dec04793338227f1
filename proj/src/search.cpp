#include "berrykit/search.hpp"

#include "berrykit/arith.hpp"
#include "berrykit/builder.hpp"
#include "berrykit/coding.hpp"
#include "berrykit/transform.hpp"

namespace bk {

namespace {

using Ref = ProofBuilder::Ref;

class Searcher {
 public:
  Searcher(const Theory& t, SearchBudget budget) : b_(t), budget_(budget) {
    if (t.extends_q) q_.emplace(b_, budget.witness);
  }

  ProofBuilder& builder() { return b_; }
  QProver* arith() { return q_ ? &*q_ : nullptr; }

  std::optional<Ref> prove(const Expr& g, Nat depth) {
    if (auto hit = b_.find(g)) return hit;
    b_.reserve(g);
    if (auto r = direct(g)) return r;
    if (q_) {
      auto d = q_->decide(g);
      if (d) {
        if (d->value) return d->proof;
        return std::nullopt;  // refuted; Q is consistent
      }
      if (auto r = naming(g)) return r;
    }
    if (depth == 0) return std::nullopt;
    switch (g.kind()) {
      case Kind::Forall:
        if (auto r = prove(g.body(), depth - 1)) return b_.gen(*r, g.var());
        break;
      case Kind::And: {
        auto l = prove(g.left(), depth - 1);
        if (!l) break;
        auto r = prove(g.right(), depth - 1);
        if (!r) break;
        return b_.consequence({*l, *r}, g);
      }
      case Kind::Or:
        if (auto l = prove(g.left(), depth - 1)) return b_.consequence({*l}, g);
        if (auto r = prove(g.right(), depth - 1)) return b_.consequence({*r}, g);
        break;
      case Kind::Iff:
      case Kind::Imp: {
        // Consequent provable outright, or antecedent refutable.
        if (g.kind() == Kind::Imp) {
          if (auto r = rewrite(g)) return r;
          if (auto r = prove(g.right(), depth - 1)) return b_.consequence({*r}, g);
          if (auto r = prove(lnot(g.left()), depth - 1)) return b_.consequence({*r}, g);
          break;
        }
        auto l = prove(limp(g.left(), g.right()), depth - 1);
        if (!l) break;
        auto r = prove(limp(g.right(), g.left()), depth - 1);
        if (!r) break;
        return b_.consequence({*l, *r}, g);
      }
      default:
        break;
    }
    return std::nullopt;
  }

 private:
  static void conjuncts(const Expr& f, std::vector<Expr>& out) {
    if (f.kind() == Kind::And) {
      conjuncts(f.left(), out);
      conjuncts(f.right(), out);
    } else {
      out.push_back(f);
    }
  }

  // A → B where A has conjuncts l = r and C, and B is C with some
  // occurrences of l replaced by r (or of r by l).
  std::optional<Ref> rewrite(const Expr& g) {
    std::vector<Expr> parts;
    conjuncts(g.left(), parts);
    const Expr& target = g.right();
    for (const Expr& e : parts) {
      if (e.kind() != Kind::Eq) continue;
      const Expr& l = e.left();
      const Expr& r = e.right();
      for (const Expr& c : parts) {
        if (is_replacement(c, target, l, r)) return b_.consequence({b_.eq_sub(l, r, c, target)}, g);
        if (is_replacement(c, target, r, l)) return b_.consequence({b_.symm_imp(l, r), b_.eq_sub(r, l, c, target)}, g);
      }
    }
    return std::nullopt;
  }

  std::optional<Ref> direct(const Expr& g) {
    if (b_.theory().has_axiom(g)) return b_.axiom(g);
    for (Rule r : {Rule::Taut, Rule::EqRefl, Rule::AllInst, Rule::AllDist, Rule::ExDef, Rule::EqSub}) {
      if (check_step(g, r, {}, b_.theory()).empty()) {
        switch (r) {
          case Rule::Taut: return b_.taut(g);
          case Rule::EqRefl: return b_.eq_refl(g.left());
          default: return b_.import(Derivation{{Step{g, r, {}}}});
        }
      }
    }
    return std::nullopt;
  }

  // (∀v0)(μ ↔ v0 = i) with μ free only in v0.
  std::optional<Ref> naming(const Expr& g) {
    if (g.kind() != Kind::Forall || g.var() != 0 || g.body().kind() != Kind::Iff) return std::nullopt;
    const Expr& rhs = g.body().right();
    if (rhs.kind() != Kind::Eq || rhs.left() != var(0)) return std::nullopt;
    auto i = numeral_value(rhs.right());
    const Expr& mu = g.body().left();
    if (!i) return std::nullopt;
    for (VarIndex v : mu.free_vars()) {
      if (v != 0) return std::nullopt;
    }
    return q_->naming(mu, *i, budget_.witness);
  }

  ProofBuilder b_;
  SearchBudget budget_;
  std::optional<QProver> q_;
};

}  // namespace

std::optional<Derivation> search_proof(const Expr& goal_in, const Theory& theory, SearchBudget budget) {
  if (!goal_in.is_formula()) return std::nullopt;
  Expr goal = expand_bounded(goal_in);
  Searcher s(theory, budget);
  std::optional<Ref> r;
  try {
    r = s.prove(goal, budget.depth);
  } catch (const PreconditionError&) {
    return std::nullopt;
  }
  if (!r) return std::nullopt;
  Derivation d = s.builder().finish(*r);
  if (!proves(d, theory, goal)) throw ProofConstructionError("search_proof produced an invalid derivation");
  return d;
}

ProvableNaming names_provable(const Expr& mu_in, Nat i, const Theory& theory, SearchBudget budget) {
  Expr mu = expand_bounded(mu_in);
  if (!mu.is_formula()) throw PreconditionError("a namer must be a formula");
  for (VarIndex v : mu.free_vars()) {
    if (v != 0) throw PreconditionError("namer has free variable v" + std::to_string(v) + " other than v0");
  }
  Expr goal = naming_sentence(mu, i);
  if (auto d = search_proof(goal, theory, budget)) {
    return {{NamingKind::Names, i, budget.witness}, std::move(d)};
  }
  if (theory.extends_q) {
    // Refutations: Q ⊢ ~μ(i), or Q ⊢ μ(j) with j ≠ i (then Q ⊢ j ≠ i).
    ProofBuilder b(theory);
    QProver q(b, budget.witness);
    auto at_i = q.decide(substitute(mu, 0, numeral(i)));
    if (at_i && !at_i->value) return {{NamingKind::RefutedAt, i, budget.witness}, b.finish(at_i->proof)};
    for (Nat j = 0; j <= budget.witness; ++j) {
      if (j == i) continue;
      Expr at_j = substitute(mu, 0, numeral(j));
      if (eval_budgeted(at_j, budget.witness).value == Truth::False) continue;
      auto d = q.decide(at_j);
      if (d && d->value) return {{NamingKind::RefutedAt, j, budget.witness}, b.finish(d->proof)};
    }
  }
  return {{NamingKind::Unknown, i, budget.witness}, std::nullopt};
}

}  // namespace bk
