#include "berrykit/meta.hpp"

#include "berrykit/kernels.hpp"
#include "berrykit/search.hpp"
#include "berrykit/syntax.hpp"

namespace bk {

namespace {

std::optional<Expr> decoded_formula(const CodeNumber& i) {
  DecodeResult r = decode(i);
  if (!r.ok() || !r.expr->is_formula()) return std::nullopt;
  return r.expr;
}

RelationVerdict verdict(RelationVerdict::Value v, Nat budget, std::string note) {
  RelationVerdict r;
  r.value = v;
  r.budget = budget;
  r.note = std::move(note);
  return r;
}

}  // namespace

const char* relation_value_name(RelationVerdict::Value v) {
  switch (v) {
    case RelationVerdict::Value::Holds: return "holds";
    case RelationVerdict::Value::NotHolds: return "not-holds";
    case RelationVerdict::Value::Unknown: return "unknown";
  }
  return "?";
}

nlohmann::json RelationVerdict::to_json() const {
  nlohmann::json j{{"v", 1}, {"verdict", relation_value_name(value)}, {"budget", budget}};
  if (!note.empty()) j["note"] = note;
  if (witness) {
    j["witness"] = render(*witness);
    j["witness_code"] = encode(*witness).to_string();
  }
  if (derivation) j["derivation_steps"] = derivation->steps.size();
  return j;
}

bool fm(const CodeNumber& i) {
  auto f = decoded_formula(i);
  if (!f) return false;
  for (VarIndex v : f->free_vars())
    if (v != 0) return false;
  return true;
}

bool lh(const CodeNumber& i, Nat j) {
  auto f = decoded_formula(i);
  return f && length(*f) < j;
}

RelationVerdict nm(Nat i, const CodeNumber& j, const Theory& theory, Nat budget) {
  using V = RelationVerdict::Value;
  if (!fm(j)) return verdict(V::NotHolds, budget, "not a formula with free variables among {v0}");
  const Expr mu = *decoded_formula(j);
  ProvableNaming p = names_provable(mu, i, theory, SearchBudget{budget, 6});
  switch (p.verdict.kind) {
    case NamingKind::Names: {
      RelationVerdict r = verdict(V::Holds, budget, "naming sentence proved");
      r.witness = mu;
      r.derivation = std::move(p.evidence);
      return r;
    }
    case NamingKind::RefutedAt: {
      const Nat at = p.verdict.number;
      RelationVerdict r = verdict(V::NotHolds, budget,
                                  at == i ? "proved the negation of the instance at " + std::to_string(i)
                                          : "proved the instance at " + std::to_string(at));
      r.derivation = std::move(p.evidence);
      return r;
    }
    case NamingKind::Unknown: break;
  }
  return verdict(V::Unknown, budget, "search exhausted");
}

RelationVerdict b_rel(Nat i, Nat j, const Theory& theory, Nat budget, std::size_t cap) {
  using V = RelationVerdict::Value;
  if (j < 2) return verdict(V::NotHolds, budget, "no formula has length < 2");
  const auto formulas = enumerate_formulas(j, cap);
  const NamingBackend backend{BackendKind::Prover, budget, &theory};
  kernels::NamerSearch s = kernels::first_namer_parallel(formulas, i, backend);
  if (!s.index) {
    if (s.any_unknown) return verdict(V::Unknown, budget, "some formulas were undecided");
    return verdict(V::NotHolds, budget, "exhausted " + std::to_string(formulas.size()) + " formulas");
  }
  const Expr& mu = formulas[*s.index];
  const CodeNumber code = encode(mu);
  // The defining conjunction, re-checked on the witness.
  if (!lh(code, j) || !(code < g(j)) || !s.derivation ||
      !proves(*s.derivation, theory, naming_sentence(mu, i)))
    throw std::logic_error("b_rel witness failed its own re-check: " + render(mu));
  RelationVerdict r = verdict(V::Holds, budget, "witness found");
  r.witness = mu;
  r.derivation = std::move(s.derivation);
  return r;
}

bool snt(const CodeNumber& i) {
  auto f = decoded_formula(i);
  return f && f->is_closed();
}

bool neg(const CodeNumber& i, const CodeNumber& j) {
  auto a = decoded_formula(i);
  if (!a || !a->is_closed()) return false;
  auto b = decoded_formula(j);
  return b && b->kind() == Kind::Not && b->operand() == *a;
}

RelationVerdict prc(const CodeNumber& i, const Theory& theory, Nat budget) {
  using V = RelationVerdict::Value;
  if (!snt(i)) return verdict(V::Holds, budget, "not a sentence");
  const Expr sigma = *decoded_formula(i);
  const Expr negation = lnot(sigma);
  if (auto d = search_proof(negation, theory, SearchBudget{budget, 6})) {
    RelationVerdict r = verdict(V::Holds, budget, "negation proved");
    r.witness = negation;
    r.derivation = std::move(d);
    return r;
  }
  return verdict(V::Unknown, budget, "no proof of the negation within budget");
}

}  // namespace bk
