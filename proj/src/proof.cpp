#include "berrykit/proof.hpp"

#include <nlohmann/json.hpp>
#include <stdexcept>

#include "berrykit/syntax.hpp"
#include "berrykit/tautology.hpp"
#include "berrykit/transform.hpp"

namespace bk {

namespace {

Expr v(VarIndex i) { return var(i); }

Expr close2(const Expr& body) { return forall(0, forall(1, body)); }

}  // namespace

const std::vector<Expr>& q_axioms() {
  static const std::vector<Expr> axioms = [] {
    std::vector<Expr> a;
    a.push_back(close2(limp(eq(succ(v(0)), succ(v(1))), eq(v(0), v(1)))));
    a.push_back(forall(0, lnot(eq(succ(v(0)), zero()))));
    a.push_back(forall(0, limp(lnot(eq(v(0), zero())), exists(1, eq(v(0), succ(v(1)))))));
    a.push_back(forall(0, eq(add(v(0), zero()), v(0))));
    a.push_back(close2(eq(add(v(0), succ(v(1))), succ(add(v(0), v(1))))));
    a.push_back(forall(0, eq(mul(v(0), zero()), zero())));
    a.push_back(close2(eq(mul(v(0), succ(v(1))), add(mul(v(0), v(1)), v(0)))));
    a.push_back(close2(liff(le(v(0), v(1)), exists(2, eq(add(v(2), v(0)), v(1))))));
    return a;
  }();
  return axioms;
}

const Theory& Theory::q() {
  static const Theory t{"Q", q_axioms(), true};
  return t;
}

const Theory& Theory::pure_logic() {
  static const Theory t{"logic", {}, false};
  return t;
}

Theory Theory::q_plus(std::string name, std::vector<Expr> extra) {
  Theory t{std::move(name), q_axioms(), true};
  for (auto& e : extra) {
    if (!e.is_formula() || !e.is_closed()) throw std::invalid_argument("theory axioms must be sentences");
    t.axioms.push_back(expand_bounded(e));
  }
  return t;
}

bool Theory::has_axiom(const Expr& f) const {
  for (const auto& a : axioms) {
    if (a == f || alpha_equal(a, f)) return true;
  }
  return false;
}

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Axiom: return "ax";
    case Rule::Taut: return "taut";
    case Rule::AllInst: return "all-inst";
    case Rule::AllDist: return "all-dist";
    case Rule::ExDef: return "ex-def";
    case Rule::EqRefl: return "eq-refl";
    case Rule::EqSub: return "eq-sub";
    case Rule::MP: return "mp";
    case Rule::Gen: return "gen";
  }
  return "?";
}

std::optional<Rule> rule_from_name(const std::string& s) {
  for (Rule r : {Rule::Axiom, Rule::Taut, Rule::AllInst, Rule::AllDist, Rule::ExDef, Rule::EqRefl, Rule::EqSub,
                 Rule::MP, Rule::Gen}) {
    if (s == rule_name(r)) return r;
  }
  return std::nullopt;
}

std::string check_step(const Expr& f, Rule rule, const std::vector<Expr>& prem, const Theory& theory) {
  if (!f.is_formula()) return "not a formula";
  if (f.kind() == Kind::BoundedForall || f.kind() == Kind::BoundedExists) return "bounded quantifiers must be expanded";
  auto want_premises = [&](std::size_t n) -> std::string {
    if (prem.size() != n) return "expected " + std::to_string(n) + " premise(s), got " + std::to_string(prem.size());
    return {};
  };
  switch (rule) {
    case Rule::Axiom:
      if (auto e = want_premises(0); !e.empty()) return e;
      return theory.has_axiom(f) ? "" : "not an axiom of " + theory.name;
    case Rule::Taut:
      if (auto e = want_premises(0); !e.empty()) return e;
      return is_tautology(f) ? "" : "not a tautology";
    case Rule::AllInst: {
      if (auto e = want_premises(0); !e.empty()) return e;
      if (f.kind() != Kind::Imp || f.left().kind() != Kind::Forall) return "not of the form ∀xφ → ψ";
      const Expr& all = f.left();
      if (!match_instance(all.body(), all.var(), f.right())) return "consequent is not an admissible instance";
      return "";
    }
    case Rule::AllDist: {
      if (auto e = want_premises(0); !e.empty()) return e;
      if (f.kind() != Kind::Imp || f.left().kind() != Kind::Forall || f.left().body().kind() != Kind::Imp) {
        return "not of the form ∀x(A → B) → (A → ∀xB)";
      }
      VarIndex x = f.left().var();
      const Expr& a = f.left().body().left();
      const Expr& b = f.left().body().right();
      const Expr& r = f.right();
      if (r.kind() != Kind::Imp || r.left() != a || r.right().kind() != Kind::Forall || r.right().var() != x ||
          r.right().body() != b) {
        return "not of the form ∀x(A → B) → (A → ∀xB)";
      }
      if (a.has_free(x)) return "quantified variable is free in the antecedent";
      return "";
    }
    case Rule::ExDef: {
      if (auto e = want_premises(0); !e.empty()) return e;
      if (f.kind() != Kind::Iff || f.left().kind() != Kind::Exists) return "not of the form ∃xφ ↔ ~∀x~φ";
      const Expr& ex = f.left();
      Expr expect = lnot(forall(ex.var(), lnot(ex.body())));
      return f.right() == expect ? "" : "not of the form ∃xφ ↔ ~∀x~φ";
    }
    case Rule::EqRefl:
      if (auto e = want_premises(0); !e.empty()) return e;
      return f.kind() == Kind::Eq && f.left() == f.right() ? "" : "not of the form t = t";
    case Rule::EqSub: {
      if (auto e = want_premises(0); !e.empty()) return e;
      if (f.kind() != Kind::Imp || f.left().kind() != Kind::Eq || f.right().kind() != Kind::Imp) {
        return "not of the form s = t → (B → C)";
      }
      const Expr& s = f.left().left();
      const Expr& t = f.left().right();
      if (!is_replacement(f.right().left(), f.right().right(), s, t)) return "C is not a capture-free replacement in B";
      return "";
    }
    case Rule::MP:
      if (auto e = want_premises(2); !e.empty()) return e;
      if (prem[0].kind() != Kind::Imp || prem[0].left() != prem[1] || prem[0].right() != f) {
        return "premises do not have the shapes A → B and A";
      }
      return "";
    case Rule::Gen:
      if (auto e = want_premises(1); !e.empty()) return e;
      if (f.kind() != Kind::Forall || f.body() != prem[0]) return "not the generalisation of its premise";
      return "";
  }
  return "unknown rule";
}

CheckResult check(const Derivation& d, const Theory& theory) {
  if (d.steps.empty()) return CheckResult::invalid(0, "empty derivation");
  std::vector<Expr> prem;
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const Step& s = d.steps[i];
    prem.clear();
    for (std::size_t p : s.premises) {
      if (p >= i) return CheckResult::invalid(i, "premise " + std::to_string(p) + " does not precede the step");
      prem.push_back(d.steps[p].formula);
    }
    if (s.formula.is_null()) return CheckResult::invalid(i, "missing formula");
    std::string why = check_step(s.formula, s.rule, prem, theory);
    if (!why.empty()) return CheckResult::invalid(i, why);
  }
  return CheckResult::ok();
}

bool proves(const Derivation& d, const Theory& theory, const Expr& goal) {
  return !d.empty() && d.conclusion() == expand_bounded(goal) && check(d, theory).valid;
}

void write_jsonl(std::ostream& out, const Derivation& d) {
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const Step& s = d.steps[i];
    nlohmann::json j;
    j["i"] = i;
    j["f"] = render(s.formula);
    j["rule"] = rule_name(s.rule);
    j["prem"] = s.premises;
    out << j.dump() << '\n';
  }
}

Derivation read_jsonl(std::istream& in) {
  Derivation d;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto j = nlohmann::json::parse(line);
      if (j.at("i").get<std::size_t>() != d.steps.size()) throw std::runtime_error("step index out of sequence");
      auto rule = rule_from_name(j.at("rule").get<std::string>());
      if (!rule) throw std::runtime_error("unknown rule '" + j.at("rule").get<std::string>() + "'");
      Step s{expand_bounded(parse_formula(j.at("f").get<std::string>())), *rule, {}};
      if (j.contains("prem")) s.premises = j.at("prem").get<std::vector<std::size_t>>();
      d.steps.push_back(std::move(s));
    } catch (const std::exception& e) {
      throw std::runtime_error("proof file line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return d;
}

}  // namespace bk
