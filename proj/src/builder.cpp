#include "berrykit/builder.hpp"

#include <algorithm>

#include "berrykit/syntax.hpp"
#include "berrykit/transform.hpp"

namespace bk {

ProofBuilder::ProofBuilder(const Theory& theory) : theory_(&theory) {}

std::optional<ProofBuilder::Ref> ProofBuilder::find(const Expr& f) const {
  auto it = index_.find(f);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void ProofBuilder::reserve(const Expr& e) {
  auto m = e.max_var();
  if (m >= 0) fresh_ = std::max(fresh_, static_cast<VarIndex>(m + 1));
}

VarIndex ProofBuilder::fresh() { return fresh_++; }

ProofBuilder::Ref ProofBuilder::add(const Expr& f, Rule rule, std::vector<Ref> premises) {
  if (auto it = index_.find(f); it != index_.end()) return it->second;
  std::vector<Expr> pf;
  pf.reserve(premises.size());
  for (Ref p : premises) pf.push_back(formula(p));
  std::string why = check_step(f, rule, pf, *theory_);
  if (!why.empty()) {
    throw ProofConstructionError(std::string(rule_name(rule)) + " step rejected (" + why + "): " + render(f));
  }
  reserve(f);
  steps_.push_back(Step{f, rule, std::move(premises)});
  index_.emplace(f, steps_.size() - 1);
  return steps_.size() - 1;
}

ProofBuilder::Ref ProofBuilder::axiom(const Expr& f) { return add(f, Rule::Axiom, {}); }
ProofBuilder::Ref ProofBuilder::taut(const Expr& f) { return add(f, Rule::Taut, {}); }
ProofBuilder::Ref ProofBuilder::eq_refl(const Expr& t) { return add(eq(t, t), Rule::EqRefl, {}); }

ProofBuilder::Ref ProofBuilder::eq_sub(const Expr& s, const Expr& t, const Expr& before, const Expr& after) {
  return add(limp(eq(s, t), limp(before, after)), Rule::EqSub, {});
}

ProofBuilder::Ref ProofBuilder::all_inst(const Expr& all, const Expr& t) {
  return add(limp(all, substitute(all.body(), all.var(), t)), Rule::AllInst, {});
}

ProofBuilder::Ref ProofBuilder::all_dist(VarIndex x, const Expr& a, const Expr& b) {
  return add(limp(forall(x, limp(a, b)), limp(a, forall(x, b))), Rule::AllDist, {});
}

ProofBuilder::Ref ProofBuilder::ex_def(VarIndex x, const Expr& body) {
  return add(liff(exists(x, body), lnot(forall(x, lnot(body)))), Rule::ExDef, {});
}

ProofBuilder::Ref ProofBuilder::mp(Ref imp, Ref ant) {
  const Expr f = formula(imp);
  if (f.kind() != Kind::Imp) throw ProofConstructionError("mp: major premise is not an implication");
  return add(f.right(), Rule::MP, {imp, ant});
}

ProofBuilder::Ref ProofBuilder::gen(Ref r, VarIndex x) { return add(forall(x, formula(r)), Rule::Gen, {r}); }

ProofBuilder::Ref ProofBuilder::import(const Derivation& d) {
  std::vector<Ref> map;
  map.reserve(d.steps.size());
  for (const Step& s : d.steps) {
    std::vector<Ref> prem;
    for (std::size_t p : s.premises) prem.push_back(map.at(p));
    map.push_back(add(s.formula, s.rule, std::move(prem)));
  }
  return map.back();
}

ProofBuilder::Ref ProofBuilder::consequence(const std::vector<Ref>& premises, const Expr& conclusion) {
  if (auto r = find(conclusion)) return *r;
  Expr chain = conclusion;
  for (auto it = premises.rbegin(); it != premises.rend(); ++it) chain = limp(formula(*it), chain);
  Ref r = taut(chain);
  for (Ref p : premises) r = mp(r, p);
  return r;
}

ProofBuilder::Ref ProofBuilder::instantiate(Ref all, const Expr& t) {
  const Expr f = formula(all);
  if (f.kind() != Kind::Forall) throw ProofConstructionError("instantiate: not a universal formula: " + render(f));
  return mp(all_inst(f, t), all);
}

ProofBuilder::Ref ProofBuilder::instantiate_all(Ref all, const std::vector<Expr>& ts) {
  for (const auto& t : ts) all = instantiate(all, t);
  return all;
}

namespace {

Expr rename_binders(const Expr& e, ProofBuilder& b) {
  switch (e.kind()) {
    case Kind::Forall:
    case Kind::Exists: {
      VarIndex z = b.fresh();
      Expr body = rename_binders(substitute(e.body(), e.var(), var(z)), b);
      return Expr::make(e.kind(), z, body, {});
    }
    case Kind::Not:
      return lnot(rename_binders(e.operand(), b));
    case Kind::And:
    case Kind::Or:
    case Kind::Imp:
    case Kind::Iff:
      return Expr::make(e.kind(), 0, rename_binders(e.left(), b), rename_binders(e.right(), b));
    default:
      return e;
  }
}

}  // namespace

ProofBuilder::Ref ProofBuilder::q_instance(int k, const std::vector<Expr>& ts) {
  const auto& axioms = q_axioms();
  if (k < 1 || k > static_cast<int>(axioms.size()) || ts.empty()) throw ProofConstructionError("q_instance: bad arguments");
  for (const auto& t : ts) reserve(t);
  Ref r = axiom(axioms[static_cast<std::size_t>(k - 1)]);
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) r = instantiate(r, ts[i]);
  const Expr all = formula(r);
  if (all.kind() != Kind::Forall) throw ProofConstructionError("q_instance: too many terms");
  Expr inst = substitute(all.body(), all.var(), ts.back());
  inst = rename_binders(inst, *this);
  Ref step = add(limp(all, inst), Rule::AllInst, {});
  return mp(step, r);
}

ProofBuilder::Ref ProofBuilder::symm_imp(const Expr& s, const Expr& t) {
  // s = t → (s = s → t = s), then discharge s = s.
  Ref sub = eq_sub(s, t, eq(s, s), eq(t, s));
  Ref refl = eq_refl(s);
  return consequence({sub, refl}, limp(eq(s, t), eq(t, s)));
}

ProofBuilder::Ref ProofBuilder::symm(Ref e) {
  const Expr f = formula(e);
  if (f.kind() != Kind::Eq) throw ProofConstructionError("symm: not an equation");
  if (f.left() == f.right()) return e;
  return mp(symm_imp(f.left(), f.right()), e);
}

ProofBuilder::Ref ProofBuilder::trans(Ref a, Ref b) {
  const Expr fa = formula(a);
  const Expr fb = formula(b);
  if (fa.kind() != Kind::Eq || fb.kind() != Kind::Eq || fa.right() != fb.left()) {
    throw ProofConstructionError("trans: equations do not chain");
  }
  if (fa.left() == fa.right()) return b;
  if (fb.left() == fb.right()) return a;
  // s = t → (r = s → r = t)
  Ref sub = eq_sub(fb.left(), fb.right(), fa, eq(fa.left(), fb.right()));
  return mp(mp(sub, b), a);
}

ProofBuilder::Ref ProofBuilder::congruence(Ref e, const Expr& before, const Expr& after) {
  const Expr f = formula(e);
  if (f.kind() != Kind::Eq) throw ProofConstructionError("congruence: not an equation");
  if (before == after) return eq_refl(before);
  Ref refl = eq_refl(before);
  Ref sub = eq_sub(f.left(), f.right(), eq(before, before), eq(before, after));
  return mp(mp(sub, e), refl);
}

ProofBuilder::Ref ProofBuilder::exists_intro_imp(VarIndex x, const Expr& body, const Expr& t) {
  Expr all_neg = forall(x, lnot(body));
  Ref inst = all_inst(all_neg, t);  // ∀x~φ → ~φ(t)
  Ref def = ex_def(x, body);
  Expr instance = formula(inst).right().operand();
  return consequence({inst, def}, limp(instance, exists(x, body)));
}

ProofBuilder::Ref ProofBuilder::exists_intro(VarIndex x, const Expr& body, const Expr& t, Ref instance) {
  return mp(exists_intro_imp(x, body, t), instance);
}

ProofBuilder::Ref ProofBuilder::exists_elim(Ref imp, VarIndex x) {
  const Expr f = formula(imp);
  if (f.kind() != Kind::Imp) throw ProofConstructionError("exists_elim: not an implication");
  Expr p = f.left();
  Expr c = f.right();
  if (c.has_free(x)) throw ProofConstructionError("exists_elim: eigenvariable free in conclusion");
  Ref contra = consequence({imp}, limp(lnot(c), lnot(p)));
  Ref g = gen(contra, x);
  Ref dist = all_dist(x, lnot(c), lnot(p));
  Ref under = mp(dist, g);  // ~C → ∀x~P
  Ref def = ex_def(x, p);
  return consequence({under, def}, limp(exists(x, p), c));
}

ProofBuilder::Ref ProofBuilder::forall_intro_under(Ref imp, VarIndex x) {
  const Expr f = formula(imp);
  if (f.kind() != Kind::Imp) throw ProofConstructionError("forall_intro_under: not an implication");
  Expr h = f.left();
  Expr p = f.right();
  Ref g = gen(imp, x);
  return mp(all_dist(x, h, p), g);
}

Derivation ProofBuilder::finish(Ref conclusion) const {
  std::vector<char> keep(steps_.size(), 0);
  std::vector<Ref> stack{conclusion};
  while (!stack.empty()) {
    Ref r = stack.back();
    stack.pop_back();
    if (keep[r]) continue;
    keep[r] = 1;
    for (Ref p : steps_[r].premises) stack.push_back(p);
  }
  std::vector<std::size_t> remap(steps_.size(), 0);
  Derivation d;
  for (Ref i = 0; i <= conclusion; ++i) {
    if (!keep[i]) continue;
    Step s = steps_[i];
    for (auto& p : s.premises) p = remap[p];
    remap[i] = d.steps.size();
    d.steps.push_back(std::move(s));
  }
  return d;
}

}  // namespace bk
