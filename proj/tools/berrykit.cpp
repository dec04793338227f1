// Command-line front end. Exit codes: 0 success, 1 check or verdict
// failure, 2 input error, 3 budget exhausted.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "berrykit/arith.hpp"
#include "berrykit/berry.hpp"
#include "berrykit/coding.hpp"
#include "berrykit/config.hpp"
#include "berrykit/demo.hpp"
#include "berrykit/meta.hpp"
#include "berrykit/random.hpp"
#include "berrykit/semantics.hpp"
#include "berrykit/syntax.hpp"
#include "berrykit/transform.hpp"

using namespace bk;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kFail = 1, kInput = 2, kBudget = 3 };

// Input problems detected by the front end itself.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

CodeNumber code_arg(const std::string& text, bool hex = false) {
  try {
    return CodeNumber::from_string(text, hex ? 16 : 10);
  } catch (const std::exception&) {
    throw InputError("not a number: " + text);
  }
}

const Theory& theory_arg(const std::string& name) {
  if (name == "q" || name == "Q") return Theory::q();
  if (name == "logic") return Theory::pure_logic();
  throw InputError("unknown theory '" + name + "' (use q or logic)");
}

PhiProvider phi_arg(const std::string& file, const std::string& mock) {
  if (file.empty() == mock.empty()) throw InputError("give exactly one of --phi-file and --phi-mock");
  if (!file.empty()) return ConcretePhi{parse_formula(read_file(file))};
  auto colon = mock.find(':');
  if (colon == std::string::npos) throw InputError("--phi-mock expects LEN:OCC");
  try {
    std::size_t used = 0;
    Nat len = std::stoull(mock.substr(0, colon), &used);
    if (used != colon) throw InputError("");
    const std::string occ_text = mock.substr(colon + 1);
    Nat occ = std::stoull(occ_text, &used);
    if (used != occ_text.size()) throw InputError("");
    return MockPhi{len, occ};
  } catch (const std::exception&) {
    throw InputError("--phi-mock expects LEN:OCC with decimal numbers, got " + mock);
  }
}

Env env_arg(const std::string& text) {
  Env env;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    auto eqpos = item.find('=');
    if (eqpos == std::string::npos || item[0] != 'v') throw InputError("--env expects v0=3,v1=5");
    try {
      env[static_cast<VarIndex>(std::stoul(item.substr(1, eqpos - 1)))] = std::stoull(item.substr(eqpos + 1));
    } catch (const std::exception&) {
      throw InputError("--env expects v0=3,v1=5");
    }
  }
  return env;
}

int verdict_exit(RelationVerdict::Value v) {
  switch (v) {
    case RelationVerdict::Value::Holds: return kOk;
    case RelationVerdict::Value::NotHolds: return kFail;
    case RelationVerdict::Value::Unknown: return kBudget;
  }
  return kFail;
}

void print(const json& j, bool as_json, const std::string& text) {
  if (as_json)
    std::cout << j.dump(2) << '\n';
  else
    std::cout << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"berrykit: formulas, Gödel codes, Q-proofs and Berry numbers"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  bool json_flag = false;
  std::uint64_t seed = 0;
  Nat budget = 0;
  std::size_t cap = 0;
  app.add_option("--config", config_path, "key = value file with defaults");
  app.add_flag("--json", json_flag, "machine-readable output");
  auto* seed_opt = app.add_option("--seed", seed, "random seed");
  auto* budget_opt = app.add_option("--budget", budget, "search budget B");
  auto* cap_opt = app.add_option("--cap", cap, "enumeration cap on formula length");

  // parse
  auto* parse_cmd = app.add_subcommand("parse", "parse and pretty-print a formula or term");
  std::string text;
  bool expand = false;
  parse_cmd->add_option("text", text)->required();
  parse_cmd->add_flag("--expand", expand, "expand bounded quantifiers");

  // gn
  auto* gn_cmd = app.add_subcommand("gn", "Gödel numbers");
  gn_cmd->require_subcommand(1);
  bool hex = false;
  auto* enc_cmd = gn_cmd->add_subcommand("encode", "code of an expression");
  enc_cmd->add_option("text", text)->required();
  enc_cmd->add_flag("--hex", hex);
  std::string code_text;
  auto* dec_cmd = gn_cmd->add_subcommand("decode", "expression of a code");
  dec_cmd->add_option("code", code_text)->required();
  dec_cmd->add_flag("--hex", hex);
  std::size_t count = 5;
  int depth = 3;
  auto* rnd_cmd = gn_cmd->add_subcommand("random", "random formulas with free variables among v0 and their codes");
  rnd_cmd->add_option("--count", count);
  rnd_cmd->add_option("--depth", depth);

  // eval / classify
  auto* eval_cmd = app.add_subcommand("eval", "truth value in the standard model, budgeted");
  std::string env_text;
  eval_cmd->add_option("text", text)->required();
  eval_cmd->add_option("--env", env_text, "assignment such as v0=3,v1=5");
  auto* classify_cmd = app.add_subcommand("classify", "Delta0 / Sigma1 / Sigma / other");
  classify_cmd->add_option("text", text)->required();

  // rel
  auto* rel_cmd = app.add_subcommand("rel", "meta-level relations on codes: fm lh nm b snt neg prc");
  std::vector<std::string> rel_args;
  std::string theory_name = "q";
  rel_cmd->add_option("args", rel_args, "relation name followed by its decimal arguments")->required();
  rel_cmd->add_option("--theory", theory_name, "q or logic");

  // check-proof
  auto* check_cmd = app.add_subcommand("check-proof", "check a JSONL derivation");
  std::string proof_path, goal_text;
  check_cmd->add_option("file", proof_path)->required();
  check_cmd->add_option("--theory", theory_name, "q or logic");
  check_cmd->add_option("--goal", goal_text, "also require this conclusion");

  // prove-sigma
  auto* sigma_cmd = app.add_subcommand("prove-sigma", "Q-derivation of a true Sigma sentence");
  std::string out_path;
  sigma_cmd->add_option("text", text)->required();
  sigma_cmd->add_option("-o,--output", out_path, "write the JSONL proof here");

  // berry
  auto* berry_cmd = app.add_subcommand("berry", "least number with no namer of length < L");
  std::size_t max_len = 0;
  std::string backend_text;
  auto* max_len_opt = berry_cmd->add_option("--max-len", max_len);
  auto* backend_opt = berry_cmd->add_option("--backend", backend_text, "semantic or prover");

  // bounds / boolos
  std::string phi_file, phi_mock;
  auto* bounds_cmd = app.add_subcommand("bounds", "certify the length inequality chain");
  bounds_cmd->add_option("--phi-file", phi_file);
  bounds_cmd->add_option("--phi-mock", phi_mock, "LEN:OCC");
  auto* boolos_cmd = app.add_subcommand("boolos", "the sentence psi(n, t)");
  std::optional<Nat> boolos_n;
  boolos_cmd->add_option("--phi-file", phi_file);
  boolos_cmd->add_option("--phi-mock", phi_mock, "LEN:OCC");
  boolos_cmd->add_option("--n", boolos_n, "numeral for v0; omitted means a placeholder");

  // demo
  auto* demo_cmd = app.add_subcommand("demo", "executable skeletons of the five corollaries");
  int corollary = 0;
  std::string replay_path;
  auto* cor_opt = demo_cmd->add_option("corollary", corollary)->check(CLI::Range(1, 5));
  demo_cmd->add_option("--replay", replay_path, "re-validate a saved report");
  demo_cmd->add_option("-o,--output", out_path, "save the JSON report");
  auto* demo_len_opt = demo_cmd->add_option("--max-len", max_len);
  auto* demo_backend_opt = demo_cmd->add_option("--backend", backend_text, "semantic or prover");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    Config cfg;
    if (!config_path.empty()) load_config_file(config_path, cfg);
    apply_env(cfg, [](const std::string& name) -> std::optional<std::string> {
      if (const char* v = std::getenv(name.c_str())) return std::string(v);
      return std::nullopt;
    });
    if (seed_opt->count()) cfg.seed = seed;
    if (budget_opt->count()) cfg.budget = budget;
    if (cap_opt->count()) cfg.cap = cap;
    if (max_len_opt->count() || demo_len_opt->count()) cfg.max_len = max_len;
    if (backend_opt->count() || demo_backend_opt->count()) cfg.set("backend", backend_text);
    if (json_flag) cfg.json = true;
    const bool as_json = cfg.json;

    if (*parse_cmd) {
      Expr e = parse(text);
      if (expand) e = expand_bounded(e);
      json j{{"v", 1}, {"text", render(e)}, {"length", length(e)}, {"kind", e.is_term() ? "term" : "formula"},
             {"free", e.free_vars()}, {"ast", to_json(e)}};
      if (e.is_formula()) j["class"] = class_name(classify(e));
      print(j, as_json, render(e) + "\nlength " + std::to_string(length(e)) + "\n");
      return kOk;
    }

    if (*enc_cmd) {
      const Expr e = parse(text);
      const std::string code = encode(e).to_string(hex ? 16 : 10);
      print(json{{"v", 1}, {"text", render(e)}, {"code", code}}, as_json, code + "\n");
      return kOk;
    }
    if (*dec_cmd) {
      DecodeResult r = decode(code_arg(code_text, hex));
      if (!r.ok()) {
        std::cerr << "not the code of an expression: " << r.detail << '\n';
        return kInput;
      }
      print(json{{"v", 1}, {"text", render(*r.expr)}, {"kind", r.expr->is_term() ? "term" : "formula"}}, as_json,
            render(*r.expr) + "\n");
      return kOk;
    }
    if (*rnd_cmd) {
      RandomSyntax gen(cfg.seed);
      json items = json::array();
      std::string out;
      for (std::size_t i = 0; i < count; ++i) {
        const Expr f = gen.formula(depth, {0});
        const std::string code = encode(f).to_string();
        items.push_back({{"text", render(f)}, {"code", code}});
        out += render(f) + "\n  " + code + "\n";
      }
      print(json{{"v", 1}, {"seed", cfg.seed}, {"formulas", items}}, as_json, out);
      return kOk;
    }

    if (*eval_cmd) {
      const Expr f = parse_formula(text);
      const Env env = env_arg(env_text);
      for (VarIndex v : f.free_vars())
        if (!env.count(v)) throw InputError("no value for free variable v" + std::to_string(v) + " (use --env)");
      const TruthVerdict t = eval_budgeted(f, cfg.budget, env);
      json j{{"v", 1}, {"truth", truth_name(t.value)}, {"budget", cfg.budget}};
      if (t.witness) j["witness"] = *t.witness;
      print(j, as_json, std::string(truth_name(t.value)) + "\n");
      return t.value == Truth::Unknown ? kBudget : kOk;
    }
    if (*classify_cmd) {
      const Expr f = parse_formula(text);
      const char* c = class_name(classify(f));
      print(json{{"v", 1}, {"class", c}}, as_json, std::string(c) + "\n");
      return kOk;
    }

    if (*rel_cmd) {
      const std::string& rel = rel_args.front();
      auto want = [&](std::size_t n) {
        if (rel_args.size() != n + 1)
          throw InputError("rel " + rel + " takes " + std::to_string(n) + " argument(s)");
      };
      auto nat = [&](std::size_t k) {
        try {
          std::size_t used = 0;
          Nat v = std::stoull(rel_args[k], &used);
          if (used == rel_args[k].size()) return v;
        } catch (const std::exception&) {
        }
        throw InputError("not a natural number: " + rel_args[k]);
      };
      auto boolean = [&](bool v) {
        print(json{{"v", 1}, {"relation", rel}, {"holds", v}}, as_json, std::string(v ? "holds" : "does not hold") + "\n");
        return v ? kOk : kFail;
      };
      auto verdict = [&](const RelationVerdict& v) {
        json j = v.to_json();
        j["relation"] = rel;
        std::string out = relation_value_name(v.value);
        if (v.witness) out += "  witness: " + render(*v.witness);
        if (!v.note.empty()) out += "  (" + v.note + ")";
        print(j, as_json, out + "\n");
        return verdict_exit(v.value);
      };
      const Theory& th = theory_arg(theory_name);
      if (rel == "fm") { want(1); return boolean(fm(code_arg(rel_args[1]))); }
      if (rel == "lh") { want(2); return boolean(lh(code_arg(rel_args[1]), nat(2))); }
      if (rel == "snt") { want(1); return boolean(snt(code_arg(rel_args[1]))); }
      if (rel == "neg") { want(2); return boolean(neg(code_arg(rel_args[1]), code_arg(rel_args[2]))); }
      if (rel == "nm") { want(2); return verdict(nm(nat(1), code_arg(rel_args[2]), th, cfg.budget)); }
      if (rel == "b") { want(2); return verdict(b_rel(nat(1), nat(2), th, cfg.budget, cfg.cap)); }
      if (rel == "prc") { want(1); return verdict(prc(code_arg(rel_args[1]), th, cfg.budget)); }
      throw InputError("unknown relation '" + rel + "' (fm lh nm b snt neg prc)");
    }

    if (*check_cmd) {
      std::ifstream in(proof_path);
      if (!in) throw InputError("cannot open " + proof_path);
      Derivation d;
      try {
        d = read_jsonl(in);
      } catch (const std::runtime_error& e) {
        throw InputError(e.what());
      }
      const Theory& th = theory_arg(theory_name);
      CheckResult r = check(d, th);
      bool goal_ok = true;
      if (r.valid && !goal_text.empty()) goal_ok = !d.empty() && d.conclusion() == expand_bounded(parse_formula(goal_text));
      json j{{"v", 1}, {"valid", r.valid}, {"steps", d.steps.size()}};
      std::string out;
      if (!r.valid) {
        j["step"] = r.step;
        j["reason"] = r.reason;
        out = "invalid at step " + std::to_string(r.step) + ": " + r.reason + "\n";
      } else if (!goal_ok) {
        j["reason"] = "conclusion differs from the goal";
        out = "valid, but the conclusion differs from the goal\n";
      } else {
        out = "valid (" + std::to_string(d.steps.size()) + " steps)\n";
      }
      if (!goal_text.empty()) j["goal_matches"] = goal_ok;
      print(j, as_json, out);
      return r.valid && goal_ok ? kOk : kFail;
    }

    if (*sigma_cmd) {
      const Expr f = parse_formula(text);
      SigmaResult r = prove_sigma(f, cfg.budget);
      std::ostringstream proof;
      if (r.status == SigmaStatus::Proved) write_jsonl(proof, r.derivation);
      if (!out_path.empty() && r.status == SigmaStatus::Proved) {
        std::ofstream out(out_path);
        if (!out) throw InputError("cannot write " + out_path);
        out << proof.str();
      }
      json j{{"v", 1}, {"status", sigma_status_name(r.status)}, {"detail", r.detail}};
      if (r.status == SigmaStatus::Proved) {
        j["steps"] = r.derivation.steps.size();
        if (!out_path.empty()) j["output"] = out_path;
      }
      std::string msg = std::string(sigma_status_name(r.status));
      if (!r.detail.empty()) msg += ": " + r.detail;
      if (as_json) {
        std::cout << j.dump(2) << '\n';
      } else if (r.status == SigmaStatus::Proved && out_path.empty()) {
        std::cout << proof.str();
      } else {
        std::cout << msg << (r.status == SigmaStatus::Proved ? " (" + std::to_string(r.derivation.steps.size()) + " steps, written to " + out_path + ")" : "") << '\n';
      }
      switch (r.status) {
        case SigmaStatus::Proved: return kOk;
        case SigmaStatus::Refused: return kFail;
        case SigmaStatus::BudgetExhausted: return kBudget;
      }
    }

    if (*berry_cmd) {
      const NamingBackend b{*backend_from_name(cfg.backend), cfg.budget, &Theory::q()};
      const BerryReport r = berry_number(cfg.max_len, b, cfg.cap);
      const ReportCheck v = verify(r, cfg.cap);
      json j = r.to_json();
      j["verified"] = v.ok;
      std::ostringstream out;
      out << "n_" << r.max_len << " = " << r.n << "  (" << r.formulas << " formulas, " << r.unknown
          << " undecided, backend " << cfg.backend << ", budget " << cfg.budget << ")\n";
      for (const auto& [m, w] : r.table)
        out << "  " << m << "  named by " << render(w.formula) << "  (" << w.namers << " namers)\n";
      out << (v.ok ? "report verified\n" : "report check failed: " + v.reason + "\n");
      print(j, as_json, out.str());
      return v.ok ? kOk : kFail;
    }

    if (*bounds_cmd) {
      const BoundCertificate c = certify_bounds(phi_arg(phi_file, phi_mock));
      std::ostringstream out;
      out << "k1 = " << c.k1 << ", k2 = " << c.k2 << ", k = " << c.k << ", |t| = " << c.t_length
          << ", |psi(v0,t)| = " << c.psi_t_length << ", t = " << c.t_value << '\n';
      for (const auto& s : c.chain) out << (s.holds ? "  ok    " : "  FAIL  ") << s.claim << '\n';
      print(c.to_json(), as_json, out.str());
      return c.holds() ? kOk : kFail;
    }
    if (*boolos_cmd) {
      const BoolosSentence s = boolos_sentence(phi_arg(phi_file, phi_mock), boolos_n);
      json j{{"v", 1}, {"text", s.text}, {"closed", s.sentence.has_value()}};
      if (s.length) j["length"] = *s.length;
      print(j, as_json, s.text + "\n");
      return kOk;
    }

    if (*demo_cmd) {
      if (!replay_path.empty()) {
        json report;
        try {
          report = json::parse(read_file(replay_path));
        } catch (const json::exception& e) {
          throw InputError(std::string("malformed report: ") + e.what());
        }
        const auto outcomes = replay(report, cfg.cap);
        bool ok = true;
        json items = json::array();
        std::ostringstream out;
        for (const auto& o : outcomes) {
          ok = ok && o.ok;
          items.push_back({{"claim", o.claim}, {"ok", o.ok}, {"reason", o.reason}});
          out << "claim " << o.claim << (o.ok ? ": replayed\n" : ": FAILED " + o.reason + "\n");
        }
        print(json{{"v", 1}, {"replayed", items}, {"ok", ok}}, as_json, out.str());
        return ok ? kOk : kFail;
      }
      if (!cor_opt->count()) throw InputError("demo needs a corollary number 1..5 or --replay FILE");
      DemoParams p;
      p.backend = *backend_from_name(cfg.backend);
      p.budget = cfg.budget;
      p.max_len = cfg.max_len;
      p.cap = cfg.cap;
      const DemoReport r = demo(corollary, p);
      const json j = r.to_json();
      if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw InputError("cannot write " + out_path);
        out << j.dump(2) << '\n';
      }
      std::ostringstream out;
      out << "Corollary " << r.corollary << ": " << r.title << '\n';
      for (const Claim& c : r.claims) {
        if (c.status == Claim::Status::Checked)
          out << (c.ok ? "  [checked]  " : "  [FAILED]   ") << c.statement << '\n';
        else
          out << "  [asserted] " << c.statement << "\n               (" << c.citation << ")\n";
      }
      print(j, as_json, out.str());
      return r.ok() ? kOk : kFail;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error at token " << e.position() << ": " << e.what() << '\n';
    return kInput;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kInput;
  } catch (const FeasibilityError& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kInput;
  } catch (const BudgetError& e) {
    std::cerr << "budget exhausted: " << e.what() << '\n';
    return kBudget;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const CodingError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const EvalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kFail;
  }
  return kOk;
}
