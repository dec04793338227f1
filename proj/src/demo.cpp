#include "berrykit/demo.hpp"

#include <sstream>

#include "berrykit/arith.hpp"
#include "berrykit/coding.hpp"
#include "berrykit/meta.hpp"
#include "berrykit/search.hpp"
#include "berrykit/syntax.hpp"
#include "berrykit/transform.hpp"

namespace bk {

using nlohmann::json;

namespace {

// ------------------------------------------------------------ evidence records

json proof_json(const Derivation& d) {
  std::ostringstream out;
  write_jsonl(out, d);
  json lines = json::array();
  std::istringstream in(out.str());
  for (std::string line; std::getline(in, line);) lines.push_back(json::parse(line));
  return lines;
}

Derivation proof_from_json(const json& lines) {
  std::ostringstream text;
  for (const auto& l : lines) text << l.dump() << '\n';
  std::istringstream in(text.str());
  return read_jsonl(in);
}

json derivation_evidence(const Expr& goal, const Derivation& d) {
  return {{"kind", "derivation"}, {"theory", "Q"}, {"goal", render(goal)}, {"proof", proof_json(d)}};
}

bool derivation_replays(const json& e) {
  return proves(proof_from_json(e.at("proof")), Theory::q(), parse_formula(e.at("goal").get<std::string>()));
}

std::string truth_text(Truth t) { return truth_name(t); }

// Nameable-below-L predicate as a finite disjunction over the table; the
// desk-scale stand-in for the naming relation.
Expr nameable(const BerryReport& r, const Expr& x) {
  std::vector<Expr> parts;
  for (const auto& [m, w] : r.table) parts.push_back(eq(x, numeral(m)));
  if (parts.empty()) return lnot(eq(zero(), zero()));
  return disjunction(parts);
}

// ψ_L(v0) = ~φ_L(v0) ∧ (∀v2<v0)φ_L(v2).
Expr least_unnameable(const BerryReport& r) {
  return land(lnot(nameable(r, var(0))), bounded_forall(2, var(0), nameable(r, var(2))));
}

// ------------------------------------------------------------ recomputable checks

struct ToyTruth {
  std::size_t sentences = 0;
  std::size_t agree = 0;
};

// Closed Δ0 formulas of length < L: provability in Q against truth.
ToyTruth toy_truth(std::size_t max_len, Nat budget, std::size_t cap) {
  ToyTruth out;
  for (const Expr& f : enumerate_formulas(max_len, cap)) {
    if (!f.is_closed() || classify(f) != SyntacticClass::Delta0) continue;
    ++out.sentences;
    const bool provable = search_proof(f, Theory::q(), SearchBudget{budget, 6}).has_value();
    if (provable == eval_delta0(f)) ++out.agree;
  }
  return out;
}

struct Recomposition {
  Nat checked = 0;
  Nat agree = 0;
};

// B(i, L) via fm ∧ lh ∧ nm ∧ code < g(L), against b_rel.
Recomposition recompose(std::size_t max_len, Nat upto, Nat budget, std::size_t cap) {
  Recomposition out;
  const auto formulas = enumerate_formulas(max_len, cap);
  const CodeNumber bound = g(max_len);
  for (Nat i = 0; i <= upto; ++i) {
    bool by_definition = false;
    for (const Expr& mu : formulas) {
      const CodeNumber code = encode(mu);
      if (fm(code) && lh(code, max_len) && code < bound && nm(i, code, Theory::q(), budget).holds()) {
        by_definition = true;
        break;
      }
    }
    ++out.checked;
    if (by_definition == b_rel(i, max_len, Theory::q(), budget, cap).holds()) ++out.agree;
  }
  return out;
}

struct Complementation {
  std::size_t sentences = 0;
  std::size_t complementary = 0;
  std::size_t open = 0;
  std::size_t open_hold = 0;
};

// On sentences of length < L, Q decides everything, so prc must hold
// exactly where provability fails. Open formulas satisfy prc outright.
Complementation complementation(std::size_t max_len, Nat budget, std::size_t cap) {
  Complementation out;
  for (const Expr& f : enumerate_formulas(max_len, cap)) {
    const CodeNumber code = encode(f);
    const bool refutable = prc(code, Theory::q(), budget).holds();
    if (!f.is_closed()) {
      ++out.open;
      if (refutable) ++out.open_hold;
      continue;
    }
    ++out.sentences;
    const bool provable = search_proof(f, Theory::q(), SearchBudget{budget, 6}).has_value();
    if (provable != refutable) ++out.complementary;
  }
  return out;
}

// ------------------------------------------------------------ claim helpers

Claim checked(std::string statement, json evidence, bool ok) {
  return Claim{Claim::Status::Checked, std::move(statement), std::move(evidence), "", ok};
}

Claim asserted(std::string statement, std::string citation) {
  return Claim{Claim::Status::Asserted, std::move(statement), json::object(), std::move(citation), true};
}

NamingBackend backend_of(const DemoParams& p) { return NamingBackend{p.backend, p.budget, &Theory::q()}; }

Claim berry_claim(const BerryReport& r, std::size_t cap) {
  const ReportCheck v = verify(r, cap);
  json e{{"kind", "berry"},
         {"max_len", r.max_len},
         {"backend", backend_name(r.backend.kind)},
         {"budget", r.backend.budget},
         {"n", r.n},
         {"report", r.to_json()}};
  return checked("the least number with no namer of length < " + std::to_string(r.max_len) + " is " +
                     std::to_string(r.n) + " (" + std::to_string(r.formulas) + " formulas enumerated)",
                 e, v.ok);
}

Claim evaluation_claim(const std::string& statement, const Expr& f, Nat budget, Truth expected) {
  const Truth got = eval_budgeted(f, budget).value;
  json e{{"kind", "evaluation"}, {"formula", render(f)}, {"budget", budget}, {"truth", truth_text(expected)}};
  return checked(statement, e, got == expected);
}

Claim bounds_claim(const MockPhi& m) {
  const BoundCertificate c = certify_bounds(m);
  json e{{"kind", "bounds"}, {"length", m.length}, {"occurrences", m.v1_occurrences}, {"certificate", c.to_json()}};
  return checked("the length chain 18k + 2k^2 < 10k^2 = t holds for a mock definer of length " +
                     std::to_string(m.length) + " with " + std::to_string(m.v1_occurrences) +
                     " occurrences of v1 (k = " + std::to_string(c.k) + ")",
                 e, c.holds());
}

// ------------------------------------------------------------ corollaries

DemoReport demo_incompleteness(const DemoParams& p) {
  DemoReport r{1, "a sound theory extending Q is incomplete", {}};
  const BerryReport berry = berry_number(p.max_len, backend_of(p), p.cap);
  r.claims.push_back(berry_claim(berry, p.cap));
  r.claims.push_back(bounds_claim(p.mock));

  const Expr psi = least_unnameable(berry);
  const Expr at_n = substitute(psi, 0, numeral(berry.n));
  r.claims.push_back(evaluation_claim("the desk-scale least-unnameable formula is true of " + std::to_string(berry.n),
                                      at_n, p.budget, Truth::True));
  r.claims.push_back(evaluation_claim(std::to_string(berry.n) + " is not nameable below the bound",
                                      nameable(berry, numeral(berry.n)), p.budget, Truth::False));

  const RelationVerdict b = b_rel(berry.n, p.max_len, Theory::q(), p.budget, p.cap);
  json e{{"kind", "b_rel"}, {"i", berry.n}, {"j", p.max_len}, {"budget", p.budget},
         {"verdict", relation_value_name(b.value)}};
  r.claims.push_back(checked("no formula of length < " + std::to_string(p.max_len) + " provably names " +
                                 std::to_string(berry.n) + " in Q (bounded search)",
                             e, b.value == RelationVerdict::Value::NotHolds));

  r.claims.push_back(asserted(
      "at full scale psi(n, t) is true, and a proof of it in T would make phi(n, t) true, so T does not prove it",
      "Boolos-style Berry argument: |psi(v0, t)| < t certified above; meta-level step"));
  r.claims.push_back(asserted("a sound T proves no false sentence and misses the true psi(n, t), so T is incomplete",
                              "first incompleteness theorem, soundness form"));
  return r;
}

DemoReport demo_tarski(const DemoParams& p) {
  DemoReport r{2, "arithmetical truth is not definable", {}};
  const ToyTruth t = toy_truth(p.max_len, p.budget, p.cap);
  json e{{"kind", "toy-truth"}, {"max_len", p.max_len}, {"budget", p.budget}, {"sentences", t.sentences},
         {"agree", t.agree}};
  r.claims.push_back(checked("on the closed bounded sentences of length < " + std::to_string(p.max_len) +
                                 ", provability in Q coincides with truth (" + std::to_string(t.agree) + "/" +
                                 std::to_string(t.sentences) + ")",
                             e, t.sentences > 0 && t.agree == t.sentences));
  NamingBackend semantic{BackendKind::Semantic, p.budget, &Theory::q()};
  r.claims.push_back(berry_claim(berry_number(p.max_len, semantic, p.cap), p.cap));
  r.claims.push_back(asserted(
      "if truth were definable, the Berry construction with Tr in place of Pr_T would give a true sentence "
      "that is also false",
      "Tarski's undefinability theorem via the Berry construction; meta-level step"));
  return r;
}

DemoReport demo_omega(const DemoParams& p) {
  DemoReport r{3, "an omega-consistent theory extending Q does not prove phi(n, t)", {}};
  const BerryReport berry = berry_number(p.max_len, backend_of(p), p.cap);
  const Expr below = bounded_forall(2, numeral(berry.n), nameable(berry, var(2)));
  const SigmaResult s = prove_sigma(below, p.budget);
  r.claims.push_back(checked("(i) every number below " + std::to_string(berry.n) +
                                 " is nameable; the sentence is bounded and Q proves it by Sigma completeness",
                             s.status == SigmaStatus::Proved ? derivation_evidence(below, s.derivation)
                                                             : json{{"kind", "derivation"}, {"goal", render(below)}},
                             s.status == SigmaStatus::Proved));

  const Expr mu = parse_formula("v1 + v3 = v0");
  const Nat n = 3, upto = 10;
  const Expr t = numeral(6);
  const WitnessRefutation w = refute_witnesses(mu, n, t, upto, 3);
  json items = json::array();
  const Expr inst = substitute(substitute(mu, 0, numeral(n)), 1, t);
  for (std::size_t j = 0; j < w.derivations.size(); ++j)
    items.push_back(derivation_evidence(lnot(substitute(inst, 3, numeral(j))), w.derivations[j]));
  json e{{"kind", "derivations"}, {"count", w.derivations.size()}, {"items", items}};
  r.claims.push_back(checked("(ii) Q refutes every witness instance of " + render(mu) + " at n = 3, t = 6 for j = 0.." +
                                 std::to_string(upto) + " (" + std::to_string(w.derivations.size()) + " derivations)",
                             e, !w.refused && w.derivations.size() == upto + 1));
  r.claims.push_back(asserted(
      "if T proved phi(n, t) while refuting each instance, T would be omega-inconsistent",
      "omega-consistency form of the first incompleteness theorem; meta-level step"));
  return r;
}

DemoReport demo_church(const DemoParams& p) {
  DemoReport r{4, "a consistent theory extending Q is undecidable", {}};
  NamingBackend semantic{BackendKind::Semantic, p.budget, &Theory::q()};
  const BerryReport berry = berry_number(p.max_len, semantic, p.cap);
  const Recomposition c = recompose(p.max_len, berry.n, p.budget, p.cap);
  json e{{"kind", "b-recomposition"}, {"max_len", p.max_len}, {"upto", berry.n}, {"budget", p.budget},
         {"checked", c.checked}, {"agree", c.agree}};
  r.claims.push_back(checked("B is recomposed from Fm, Lh and Nm with the code bound g(" + std::to_string(p.max_len) +
                                 ") and agrees with the direct search for i = 0.." + std::to_string(berry.n),
                             e, c.checked > 0 && c.agree == c.checked));
  r.claims.push_back(asserted(
      "if Pr_T were recursive, B would be definable from it by closure under Boolean operations and bounded "
      "search, and the Berry argument would refute consistency",
      "Church's undecidability theorem; closure properties of definable relations; meta-level step"));
  return r;
}

DemoReport demo_rosser(const DemoParams& p) {
  DemoReport r{5, "Rosser's strengthening via the refutability predicate", {}};
  const std::size_t len = p.max_len + 1;  // sentences of length <= max_len
  const Complementation c = complementation(len, p.budget, p.cap);
  json e{{"kind", "prc-complementation"}, {"max_len", len}, {"budget", p.budget}, {"sentences", c.sentences},
         {"complementary", c.complementary}, {"open", c.open}, {"open_hold", c.open_hold}};
  r.claims.push_back(checked("on all sentences of length <= " + std::to_string(p.max_len) +
                                 ", Prc holds exactly where provability in Q fails (" +
                                 std::to_string(c.complementary) + "/" + std::to_string(c.sentences) +
                                 "), and it holds on every non-sentence",
                             e, c.sentences > 0 && c.complementary == c.sentences && c.open_hold == c.open));
  r.claims.push_back(asserted(
      "replacing Pr_T by Prc_T in the construction yields a sentence undecided by any consistent T",
      "Goedel-Rosser theorem; meta-level step"));
  return r;
}

// ------------------------------------------------------------ replay

std::string replay_claim(const json& e, std::size_t cap) {
  const std::string kind = e.at("kind").get<std::string>();
  if (kind == "derivation") return derivation_replays(e) ? "" : "derivation does not check";
  if (kind == "derivations") {
    const auto& items = e.at("items");
    if (items.size() != e.at("count").get<std::size_t>()) return "count mismatch";
    for (const auto& item : items)
      if (!derivation_replays(item)) return "derivation of " + item.at("goal").get<std::string>() + " does not check";
    return "";
  }
  if (kind == "berry") {
    auto backend = backend_from_name(e.at("backend").get<std::string>());
    if (!backend) return "unknown backend";
    const NamingBackend b{*backend, e.at("budget").get<Nat>(), &Theory::q()};
    const BerryReport r = berry_number(e.at("max_len").get<std::size_t>(), b, cap);
    if (r.n != e.at("n").get<Nat>()) return "recomputed n = " + std::to_string(r.n);
    const ReportCheck v = verify(r, cap);
    return v.ok ? "" : v.reason;
  }
  if (kind == "bounds") {
    const BoundCertificate c = certify_bounds(MockPhi{e.at("length").get<Nat>(), e.at("occurrences").get<Nat>()});
    return c.holds() ? "" : "chain fails";
  }
  if (kind == "evaluation") {
    const Truth got = eval_budgeted(parse_formula(e.at("formula").get<std::string>()), e.at("budget").get<Nat>()).value;
    return truth_text(got) == e.at("truth").get<std::string>() ? "" : std::string("evaluates to ") + truth_text(got);
  }
  if (kind == "b_rel") {
    const RelationVerdict v = b_rel(e.at("i").get<Nat>(), e.at("j").get<Nat>(), Theory::q(), e.at("budget").get<Nat>(), cap);
    return relation_value_name(v.value) == e.at("verdict").get<std::string>() ? "" : "verdict changed";
  }
  if (kind == "toy-truth") {
    const ToyTruth t = toy_truth(e.at("max_len").get<std::size_t>(), e.at("budget").get<Nat>(), cap);
    if (t.sentences != e.at("sentences").get<std::size_t>()) return "sentence count changed";
    return t.agree == t.sentences ? "" : "provability and truth disagree";
  }
  if (kind == "b-recomposition") {
    const Recomposition c = recompose(e.at("max_len").get<std::size_t>(), e.at("upto").get<Nat>(),
                                      e.at("budget").get<Nat>(), cap);
    return c.agree == c.checked ? "" : "recomposition disagrees";
  }
  if (kind == "prc-complementation") {
    const Complementation c = complementation(e.at("max_len").get<std::size_t>(), e.at("budget").get<Nat>(), cap);
    if (c.sentences != e.at("sentences").get<std::size_t>()) return "sentence count changed";
    return c.complementary == c.sentences && c.open_hold == c.open ? "" : "not complementary";
  }
  return "unknown evidence kind '" + kind + "'";
}

}  // namespace

bool DemoReport::ok() const {
  for (const Claim& c : claims)
    if (c.status == Claim::Status::Checked && !c.ok) return false;
  return true;
}

json DemoReport::to_json() const {
  json cs = json::array();
  std::size_t n_checked = 0, n_asserted = 0, n_failed = 0;
  for (const Claim& c : claims) {
    json j{{"statement", c.statement}};
    if (c.status == Claim::Status::Checked) {
      ++n_checked;
      if (!c.ok) ++n_failed;
      j["status"] = "checked";
      j["ok"] = c.ok;
      j["evidence"] = c.evidence;
    } else {
      ++n_asserted;
      j["status"] = "asserted";
      j["citation"] = c.citation;
    }
    cs.push_back(j);
  }
  return json{{"v", 1},
              {"corollary", corollary},
              {"title", title},
              {"claims", cs},
              {"summary", {{"checked", n_checked}, {"asserted", n_asserted}, {"failed", n_failed}, {"ok", ok()}}}};
}

DemoReport DemoReport::from_json(const json& j) {
  DemoReport r;
  r.corollary = j.at("corollary").get<int>();
  r.title = j.at("title").get<std::string>();
  for (const auto& c : j.at("claims")) {
    if (c.at("status").get<std::string>() == "checked")
      r.claims.push_back(checked(c.at("statement").get<std::string>(), c.at("evidence"), c.at("ok").get<bool>()));
    else
      r.claims.push_back(asserted(c.at("statement").get<std::string>(), c.at("citation").get<std::string>()));
  }
  return r;
}

DemoReport demo(int corollary, const DemoParams& params) {
  if (params.max_len > params.cap)
    throw FeasibilityError("demo scale " + std::to_string(params.max_len) + " exceeds the enumeration cap " +
                           std::to_string(params.cap) + "; lower --max-len (6 is the default) or raise --cap");
  switch (corollary) {
    case 1: return demo_incompleteness(params);
    case 2: return demo_tarski(params);
    case 3: return demo_omega(params);
    case 4: return demo_church(params);
    case 5: return demo_rosser(params);
    default: throw PreconditionError("corollary must be 1..5");
  }
}

std::vector<ReplayOutcome> replay(const json& report, std::size_t cap) {
  std::vector<ReplayOutcome> out;
  const auto& claims = report.at("claims");
  for (std::size_t i = 0; i < claims.size(); ++i) {
    const auto& c = claims[i];
    if (c.at("status").get<std::string>() != "checked") continue;
    std::string why;
    try {
      why = replay_claim(c.at("evidence"), cap);
    } catch (const std::exception& e) {
      why = e.what();
    }
    out.push_back({i, why.empty(), why});
  }
  return out;
}

}  // namespace bk
