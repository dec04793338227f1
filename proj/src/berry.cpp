#include "berrykit/berry.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

#include "berrykit/arith.hpp"
#include "berrykit/coding.hpp"
#include "berrykit/kernels.hpp"
#include "berrykit/syntax.hpp"
#include "berrykit/transform.hpp"

namespace bk {

namespace {

// ------------------------------------------------------------ enumeration

bool is_binary_term(const Expr& t) { return t.kind() == Kind::Add || t.kind() == Kind::Mul; }

// Formulas and terms generated by exact length. Depth d means d enclosing
// binders, so v0..v_d are in scope and the next binder is v_{d+1}.
class Generator {
 public:
  const std::vector<Expr>& terms(std::size_t len, std::size_t depth) {
    auto key = std::make_pair(len, depth);
    if (auto it = terms_.find(key); it != terms_.end()) return it->second;
    std::vector<Expr> out;
    if (len == 1) {
      out.push_back(zero());
      for (VarIndex v = 0; v <= depth; ++v) out.push_back(var(static_cast<VarIndex>(v)));
    } else if (len >= 2) {
      for (const Expr& t : operands(len - 1, depth)) out.push_back(succ(t));
      // P(l) + 1 + P(r) = len, where P adds parentheses around binary terms.
      for (std::size_t pl = 1; pl + 2 <= len; ++pl) {
        const std::size_t pr = len - 1 - pl;
        const auto ls = operands(pl, depth);
        if (ls.empty()) continue;
        const auto rs = operands(pr, depth);
        for (const Expr& l : ls)
          for (const Expr& r : rs) {
            out.push_back(add(l, r));
            out.push_back(mul(l, r));
          }
      }
    }
    return terms_[key] = std::move(out);
  }

  const std::vector<Expr>& formulas(std::size_t len, std::size_t depth) {
    auto key = std::make_pair(len, depth);
    if (auto it = formulas_.find(key); it != formulas_.end()) return it->second;
    std::vector<Expr> out;
    for (std::size_t a = 1; a + 2 <= len; ++a) {
      const auto& ls = terms(a, depth);
      const auto& rs = terms(len - 1 - a, depth);
      for (const Expr& l : ls)
        for (const Expr& r : rs) {
          out.push_back(eq(l, r));
          out.push_back(le(l, r));
        }
    }
    if (len > 3)
      for (const Expr& f : formulas(len - 3, depth)) out.push_back(lnot(f));
    if (len > 5) {
      for (std::size_t a = 1; a + 5 < len; ++a) {
        const auto& ls = formulas(a, depth);
        if (ls.empty()) continue;
        const auto& rs = formulas(len - 5 - a, depth);
        for (const Expr& l : ls)
          for (const Expr& r : rs) {
            out.push_back(land(l, r));
            out.push_back(lor(l, r));
            out.push_back(limp(l, r));
            out.push_back(liff(l, r));
          }
      }
    }
    if (len > 6) {
      const auto x = static_cast<VarIndex>(depth + 1);
      for (const Expr& f : formulas(len - 6, depth + 1)) {
        out.push_back(forall(x, f));
        out.push_back(exists(x, f));
      }
    }
    return formulas_[key] = std::move(out);
  }

 private:
  // Terms that occupy exactly p symbols as an operand.
  std::vector<Expr> operands(std::size_t p, std::size_t depth) {
    std::vector<Expr> out;
    for (const Expr& t : terms(p, depth))
      if (!is_binary_term(t)) out.push_back(t);
    if (p > 2)
      for (const Expr& t : terms(p - 2, depth))
        if (is_binary_term(t)) out.push_back(t);
    return out;
  }

  std::map<std::pair<std::size_t, std::size_t>, std::vector<Expr>> terms_, formulas_;
};

std::vector<unsigned> code_key(const Expr& e) {
  std::vector<unsigned> key;
  for (const Token& t : tokens_of(e, true))
    key.push_back(t.sym == Sym::Var ? SymbolTable::standard().c() + t.var : static_cast<unsigned>(t.sym) + 1);
  return key;
}

void check_cap(std::size_t max_len, std::size_t cap) {
  if (max_len > cap)
    throw FeasibilityError("max length " + std::to_string(max_len) + " exceeds the enumeration cap " +
                           std::to_string(cap) + "; raise --cap only if you can afford the blow-up");
}

std::vector<std::vector<Expr>> strata(std::size_t max_len, std::size_t cap) {
  check_cap(max_len, cap);
  Generator gen;
  std::vector<std::vector<Expr>> out(max_len);
  for (std::size_t len = 1; len < max_len; ++len) {
    std::vector<std::pair<std::vector<unsigned>, Expr>> keyed;
    for (const Expr& f : gen.formulas(len, 0)) keyed.emplace_back(code_key(f), f);
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [k, f] : keyed) out[len].push_back(std::move(f));
  }
  return out;
}

// ------------------------------------------------------------ ψ constants

Nat checked_mul(Nat a, Nat b) {
  Nat r;
  if (__builtin_mul_overflow(a, b, &r)) throw PreconditionError("ψ constants exceed 64 bits");
  return r;
}

Nat checked_add(Nat a, Nat b) {
  Nat r;
  if (__builtin_add_overflow(a, b, &r)) throw PreconditionError("ψ constants exceed 64 bits");
  return r;
}

PsiConstants constants_for(Nat k1, Nat occurrences) {
  PsiConstants c;
  c.k1 = k1;
  c.k2 = occurrences + 1;
  c.k = checked_mul(c.k1, c.k2);
  c.t_value = checked_mul(10, checked_mul(c.k, c.k));
  c.t_term = mul(numeral(10), mul(numeral(c.k), numeral(c.k)));
  return c;
}

std::string with_marker(std::string text, VarIndex placeholder) {
  const std::string needle = "v" + std::to_string(placeholder);
  std::string out;
  std::istringstream in(text);
  std::string tok;
  bool first = true;
  while (in >> tok) {
    if (!first) out += ' ';
    out += tok == needle ? "[n]" : tok;
    first = false;
  }
  return out;
}

}  // namespace

bool canonical_less(const Expr& a, const Expr& b) {
  const std::size_t la = length(a), lb = length(b);
  if (la != lb) return la < lb;
  return code_key(a) < code_key(b);
}

std::vector<Expr> enumerate_formulas(std::size_t max_len, std::size_t cap) {
  std::vector<Expr> out;
  for (auto& s : strata(max_len, cap)) out.insert(out.end(), s.begin(), s.end());
  return out;
}

std::vector<std::size_t> formula_counts(std::size_t max_len, std::size_t cap) {
  std::vector<std::size_t> out;
  for (auto& s : strata(max_len, cap)) out.push_back(s.size());
  return out;
}

// ------------------------------------------------------------ naming

const char* backend_name(BackendKind k) { return k == BackendKind::Semantic ? "semantic" : "prover"; }

std::optional<BackendKind> backend_from_name(const std::string& s) {
  if (s == "semantic") return BackendKind::Semantic;
  if (s == "prover") return BackendKind::Prover;
  return std::nullopt;
}

NameOutcome name_of(const Expr& mu, const NamingBackend& backend, std::optional<Nat> target) {
  using S = NameOutcome::Status;
  const auto sem = find_semantic_name(mu, backend.budget);
  if (!sem) return {S::Nothing, 0, std::nullopt};
  if (sem->kind == NamingKind::Unknown) return {S::Unknown, 0, std::nullopt};
  if (target && sem->number != *target) return {S::Nothing, 0, std::nullopt};
  if (backend.kind == BackendKind::Semantic) return {S::Names, sem->number, std::nullopt};

  SearchBudget sb{backend.budget, 6};
  ProvableNaming p = names_provable(mu, sem->number, *backend.theory, sb);
  switch (p.verdict.kind) {
    case NamingKind::Names: return {S::Names, sem->number, std::move(p.evidence)};
    case NamingKind::RefutedAt: return {S::Nothing, 0, std::nullopt};
    case NamingKind::Unknown: break;
  }
  return {S::Unknown, 0, std::nullopt};
}

nlohmann::json BerryReport::to_json() const {
  using nlohmann::json;
  json table_json = json::array();
  for (const auto& [m, w] : table) {
    json entry{{"number", m}, {"witness", render(w.formula)}, {"namers", w.namers}};
    if (w.derivation) entry["derivation_steps"] = w.derivation->steps.size();
    table_json.push_back(entry);
  }
  return json{{"v", 1},
              {"max_len", max_len},
              {"backend", backend_name(backend.kind)},
              {"budget", backend.budget},
              {"theory", backend.theory->name},
              {"formulas", formulas},
              {"unknown", unknown},
              {"table", table_json},
              {"n", n},
              {"exhaustion", {{"number", n}, {"formulas_checked", formulas}, {"namers_found", 0}, {"unknown", unknown}}}};
}

namespace {

BerryReport assemble(std::size_t max_len, const NamingBackend& backend, const std::vector<Expr>& formulas,
                     std::vector<NameOutcome> outcomes) {
  BerryReport r;
  r.max_len = max_len;
  r.backend = backend;
  r.formulas = formulas.size();
  for (std::size_t i = 0; i < formulas.size(); ++i) {
    NameOutcome& o = outcomes[i];
    if (o.status == NameOutcome::Status::Unknown) ++r.unknown;
    if (o.status != NameOutcome::Status::Names) continue;
    auto [it, fresh] = r.table.try_emplace(o.number, BerryWitness{formulas[i], std::move(o.derivation), 0});
    ++it->second.namers;
  }
  while (r.table.count(r.n)) ++r.n;
  return r;
}

}  // namespace

BerryReport berry_number(std::size_t max_len, const NamingBackend& backend, std::size_t cap) {
  const auto formulas = enumerate_formulas(max_len, cap);
  BerryReport r = assemble(max_len, backend, formulas, kernels::name_table_parallel(formulas, backend));
  if (r.table.empty() && r.unknown > 0)
    throw BudgetError("every formula of length < " + std::to_string(max_len) +
                      " was undecided; raise the budget above " + std::to_string(backend.budget));
  return r;
}

ReportCheck verify(const BerryReport& report, std::size_t cap) {
  auto fail = [](std::string why) { return ReportCheck{false, std::move(why)}; };
  for (Nat m = 0; m < report.n; ++m)
    if (!report.table.count(m)) return fail("no witness for " + std::to_string(m));
  if (report.table.count(report.n)) return fail("n has a witness");

  for (const auto& [m, w] : report.table) {
    if (length(w.formula) >= report.max_len) return fail("witness for " + std::to_string(m) + " is too long");
    if (report.backend.kind == BackendKind::Semantic) {
      if (names_semantic(w.formula, m, report.backend.budget).kind != NamingKind::Names)
        return fail("witness for " + std::to_string(m) + " does not name it");
    } else {
      if (!w.derivation || !proves(*w.derivation, *report.backend.theory, naming_sentence(w.formula, m)))
        return fail("derivation for " + std::to_string(m) + " does not check");
    }
  }

  const auto formulas = enumerate_formulas(report.max_len, cap);
  BerryReport again = assemble(report.max_len, report.backend, formulas,
                               kernels::name_table_serial(formulas, report.backend));
  if (again.n != report.n) return fail("second pass found n = " + std::to_string(again.n));
  if (again.formulas != report.formulas || again.unknown != report.unknown)
    return fail("second pass saw a different formula set");
  for (const auto& [m, w] : again.table) {
    auto it = report.table.find(m);
    if (it == report.table.end() || it->second.formula != w.formula || it->second.namers != w.namers)
      return fail("second pass disagrees on " + std::to_string(m));
  }
  return {};
}

// ------------------------------------------------------------ ψ and bounds

void validate(const PhiProvider& p) {
  if (const auto* c = std::get_if<ConcretePhi>(&p)) {
    if (c->phi.is_null() || !c->phi.is_formula()) throw PreconditionError("φ must be a formula");
    for (VarIndex v : c->phi.free_vars())
      if (v > 1) throw PreconditionError("φ may only have v0 and v1 free, found v" + std::to_string(v));
    return;
  }
  const auto& m = std::get<MockPhi>(p);
  if (m.length < 4) throw PreconditionError("mock φ length must be at least 4");
  if (m.v1_occurrences < 1) throw PreconditionError("mock φ needs at least one occurrence of v1");
}

PsiBuild build_psi(const PhiProvider& p) {
  validate(p);
  PsiBuild out;
  if (const auto* c = std::get_if<ConcretePhi>(&p)) {
    const Expr& phi = c->phi;
    Expr psi = expand_bounded(land(lnot(phi), bounded_forall(2, var(0), substitute(phi, 0, var(2)))));
    out.v1_occurrences = count_free(psi, 1);
    out.constants = constants_for(length(psi), out.v1_occurrences);
    out.psi = std::move(psi);
  } else {
    const auto& m = std::get<MockPhi>(p);
    out.v1_occurrences = m.v1_occurrences;
    out.constants = constants_for(checked_add(checked_mul(2, m.length), kPsiTemplateOverhead), m.v1_occurrences);
  }
  return out;
}

bool BoundCertificate::holds() const {
  return std::all_of(chain.begin(), chain.end(), [](const Verdict& v) { return v.holds; });
}

nlohmann::json BoundCertificate::to_json() const {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& v : chain) steps.push_back({{"claim", v.claim}, {"holds", v.holds}});
  return {{"v", 1},          {"k1", k1},         {"k2", k2},     {"k", k},
          {"t_length", t_length}, {"psi_t_length", psi_t_length}, {"t_value", t_value},
          {"chain", steps},  {"holds", holds()}};
}

BoundCertificate certify_bounds(const PhiProvider& p) {
  const PsiBuild b = build_psi(p);
  const PsiConstants& c = b.constants;
  BoundCertificate cert;
  cert.k1 = c.k1;
  cert.k2 = c.k2;
  cert.k = c.k;
  cert.t_value = c.t_value;
  cert.t_length = length(c.t_term);
  if (b.psi) {
    cert.psi_t_length = length(substitute(*b.psi, 1, c.t_term));
  } else {
    cert.psi_t_length = checked_add(c.k1, checked_mul(b.v1_occurrences, checked_add(cert.t_length, 1)));
  }

  using W = unsigned __int128;
  const W k = c.k, k1 = c.k1, k2 = c.k2, t = cert.t_length, psi_t = cert.psi_t_length;
  const W lhs = 18 * k + 2 * k * k;
  auto s = [](W v) { return std::to_string(static_cast<Nat>(v)); };
  cert.chain = {
      {"18k < 8k^2: " + s(18 * k) + " < " + s(8 * k * k), 18 * k < 8 * k * k},
      {"|psi(v0,t)| <= k1 + k2|t|: " + s(psi_t) + " <= " + s(k1 + k2 * t), psi_t <= k1 + k2 * t},
      {"k1 + k2(17+2k) <= 18k + 2k^2: " + s(k1 + k2 * (17 + 2 * k)) + " <= " + s(lhs),
       k1 + k2 * (17 + 2 * k) <= lhs},
      {"18k + 2k^2 < 10k^2 = t: " + s(lhs) + " < " + s(10 * k * k), lhs < 10 * k * k && 10 * k * k == c.t_value},
      {"|psi(v0,t)| < t: " + s(psi_t) + " < " + s(c.t_value), psi_t < c.t_value},
  };
  return cert;
}

BoolosSentence boolos_sentence(const PhiProvider& p, std::optional<Nat> n) {
  const PsiBuild b = build_psi(p);
  const Expr& t = b.constants.t_term;
  BoolosSentence out;
  if (b.psi) {
    Expr at_t = substitute(*b.psi, 1, t);
    if (n) {
      out.sentence = substitute(at_t, 0, numeral(*n));
      out.text = render(*out.sentence);
      out.length = length(*out.sentence);
    } else {
      const auto marker = static_cast<VarIndex>(std::max<std::int64_t>(at_t.max_var(), 2) + 1);
      out.text = with_marker(render(substitute(at_t, 0, var(marker))), marker);
      out.length = length(substitute(at_t, 0, zero()));
    }
    return out;
  }
  const std::string num = n ? render(numeral(*n)) : "[n]";
  const std::string ts = render(t);
  out.text = "( ~ ( phi ( " + num + " , " + ts + " ) ) ) & ( ( A v2 ) ( ( s v2 <= " + num + " ) -> ( phi ( v2 , " +
             ts + " ) ) ) )";
  return out;
}

WitnessRefutation refute_witnesses(const Expr& mu, Nat n, const Expr& t, Nat upto, VarIndex witness_var) {
  if (witness_var <= 1) throw PreconditionError("witness variable must differ from v0 and v1");
  if (!t.is_term() || !t.is_closed()) throw PreconditionError("t must be a closed term");
  for (VarIndex v : mu.free_vars())
    if (v != 0 && v != 1 && v != witness_var)
      throw PreconditionError("μ has an unexpected free variable v" + std::to_string(v));
  if (classify(mu) != SyntacticClass::Delta0) throw PreconditionError("μ must be Δ0");

  const Expr inst = substitute(substitute(mu, 0, numeral(n)), 1, t);
  WitnessRefutation out;
  for (Nat j = 0; j <= upto; ++j) {
    Expr neg = lnot(substitute(inst, witness_var, numeral(j)));
    if (!eval_delta0(neg)) {
      out.refused = true;
      out.refused_at = j;
      out.derivations.clear();
      return out;
    }
    SigmaResult r = prove_sigma(neg);
    if (r.status != SigmaStatus::Proved)
      throw std::logic_error("true Δ0 sentence not proved: " + render(neg) + " (" + r.detail + ")");
    out.derivations.push_back(std::move(r.derivation));
  }
  return out;
}

}  // namespace bk
