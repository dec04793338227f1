#include "berrykit/semantics.hpp"

#include "berrykit/transform.hpp"

namespace bk {

namespace {

class OverflowError : public EvalError {
 public:
  using EvalError::EvalError;
};

Nat lookup(const Env& env, VarIndex v) {
  auto it = env.find(v);
  if (it == env.end()) throw EvalError("unbound variable v" + std::to_string(v));
  return it->second;
}

bool atom_value(const Expr& f, const Env& env) {
  Nat l = eval_term(f.left(), env);
  Nat r = eval_term(f.right(), env);
  return f.kind() == Kind::Eq ? l == r : l <= r;
}

bool delta0_rec(const Expr& f, Env& env) {
  switch (f.kind()) {
    case Kind::Eq:
    case Kind::Le:
      return atom_value(f, env);
    case Kind::Not:
      return !delta0_rec(f.operand(), env);
    case Kind::And:
      return delta0_rec(f.left(), env) && delta0_rec(f.right(), env);
    case Kind::Or:
      return delta0_rec(f.left(), env) || delta0_rec(f.right(), env);
    case Kind::Imp:
      return !delta0_rec(f.left(), env) || delta0_rec(f.right(), env);
    case Kind::Iff:
      return delta0_rec(f.left(), env) == delta0_rec(f.right(), env);
    default:
      break;
  }
  auto b = as_bounded(f);
  if (!b) throw EvalError("formula is not Delta0: unbounded quantifier over v" + std::to_string(f.var()));
  Nat n = eval_term(b->bound, env);
  auto saved = env.find(b->var) != env.end() ? std::optional<Nat>(env[b->var]) : std::nullopt;
  bool result = b->universal;
  for (Nat w = 0; w < n; ++w) {
    env[b->var] = w;
    bool v = delta0_rec(b->body, env);
    if (b->universal && !v) {
      result = false;
      break;
    }
    if (!b->universal && v) {
      result = true;
      break;
    }
  }
  if (saved) {
    env[b->var] = *saved;
  } else {
    env.erase(b->var);
  }
  return result;
}

Truth from_bool(bool b) { return b ? Truth::True : Truth::False; }

Truth k_not(Truth t) {
  if (t == Truth::Unknown) return t;
  return t == Truth::True ? Truth::False : Truth::True;
}

Truth k_and(Truth a, Truth b) {
  if (a == Truth::False || b == Truth::False) return Truth::False;
  if (a == Truth::True && b == Truth::True) return Truth::True;
  return Truth::Unknown;
}

Truth k_or(Truth a, Truth b) { return k_not(k_and(k_not(a), k_not(b))); }

struct Scoped {
  Env& env;
  VarIndex v;
  std::optional<Nat> saved;
  Scoped(Env& e, VarIndex var) : env(e), v(var) {
    if (auto it = env.find(v); it != env.end()) saved = it->second;
  }
  void set(Nat w) { env[v] = w; }
  ~Scoped() {
    if (saved) {
      env[v] = *saved;
    } else {
      env.erase(v);
    }
  }
};

TruthVerdict budget_rec(const Expr& f, Nat budget, Env& env) {
  switch (f.kind()) {
    case Kind::Eq:
    case Kind::Le:
      try {
        return {from_bool(atom_value(f, env)), {}};
      } catch (const OverflowError&) {
        return {Truth::Unknown, {}};
      }
    case Kind::Not:
      return {k_not(budget_rec(f.operand(), budget, env).value), {}};
    case Kind::And:
      return {k_and(budget_rec(f.left(), budget, env).value, budget_rec(f.right(), budget, env).value), {}};
    case Kind::Or:
      return {k_or(budget_rec(f.left(), budget, env).value, budget_rec(f.right(), budget, env).value), {}};
    case Kind::Imp:
      return {k_or(k_not(budget_rec(f.left(), budget, env).value), budget_rec(f.right(), budget, env).value), {}};
    case Kind::Iff: {
      Truth a = budget_rec(f.left(), budget, env).value;
      Truth b = budget_rec(f.right(), budget, env).value;
      if (a == Truth::Unknown || b == Truth::Unknown) return {Truth::Unknown, {}};
      return {from_bool(a == b), {}};
    }
    default:
      break;
  }
  if (auto b = as_bounded(f)) {
    Nat n;
    try {
      n = eval_term(b->bound, env);
    } catch (const OverflowError&) {
      return {Truth::Unknown, {}};
    }
    Scoped scope(env, b->var);
    bool unknown = false;
    for (Nat w = 0; w < n; ++w) {
      scope.set(w);
      Truth v = budget_rec(b->body, budget, env).value;
      if (b->universal && v == Truth::False) return {Truth::False, w};
      if (!b->universal && v == Truth::True) return {Truth::True, w};
      if (v == Truth::Unknown) unknown = true;
    }
    if (unknown) return {Truth::Unknown, {}};
    return {b->universal ? Truth::True : Truth::False, {}};
  }
  // unbounded quantifier
  bool universal = f.kind() == Kind::Forall;
  if (!f.body().has_free(f.var())) return {budget_rec(f.body(), budget, env).value, {}};
  Scoped scope(env, f.var());
  for (Nat w = 0; w <= budget; ++w) {
    scope.set(w);
    Truth v = budget_rec(f.body(), budget, env).value;
    if (universal && v == Truth::False) return {Truth::False, w};
    if (!universal && v == Truth::True) return {Truth::True, w};
  }
  return {Truth::Unknown, {}};
}

}  // namespace

Nat eval_term(const Expr& t, const Env& env) {
  switch (t.kind()) {
    case Kind::Zero:
      return 0;
    case Kind::Var:
      return lookup(env, t.var());
    case Kind::Succ: {
      auto [n, core] = strip_succ(t);
      Nat base = eval_term(core, env);
      Nat out;
      if (__builtin_add_overflow(base, n, &out)) throw OverflowError("term value exceeds 64 bits");
      return out;
    }
    case Kind::Add: {
      Nat out;
      if (__builtin_add_overflow(eval_term(t.left(), env), eval_term(t.right(), env), &out)) {
        throw OverflowError("term value exceeds 64 bits");
      }
      return out;
    }
    case Kind::Mul: {
      Nat out;
      if (__builtin_mul_overflow(eval_term(t.left(), env), eval_term(t.right(), env), &out)) {
        throw OverflowError("term value exceeds 64 bits");
      }
      return out;
    }
    default:
      throw EvalError("eval_term applied to a formula");
  }
}

bool eval_delta0(const Expr& f, const Env& env) {
  if (!f.is_formula()) throw EvalError("eval_delta0 applied to a term");
  Env local = env;
  return delta0_rec(expand_bounded(f), local);
}

const char* truth_name(Truth t) {
  switch (t) {
    case Truth::True: return "True";
    case Truth::False: return "False";
    case Truth::Unknown: return "Unknown";
  }
  return "?";
}

TruthVerdict eval_budgeted(const Expr& f, Nat budget, const Env& env) {
  if (!f.is_formula()) throw EvalError("eval_budgeted applied to a term");
  for (VarIndex v : f.free_vars()) {
    if (!env.count(v)) throw EvalError("not a sentence: v" + std::to_string(v) + " is free");
  }
  Env local = env;
  return budget_rec(expand_bounded(f), budget, local);
}

const char* naming_kind_name(NamingKind k) {
  switch (k) {
    case NamingKind::Names: return "Names";
    case NamingKind::RefutedAt: return "RefutedAt";
    case NamingKind::Unknown: return "Unknown";
  }
  return "?";
}

namespace {

void require_namer_shape(const Expr& mu) {
  if (!mu.is_formula()) throw PreconditionError("a namer must be a formula");
  for (VarIndex v : mu.free_vars()) {
    if (v != 0) throw PreconditionError("namer has free variable v" + std::to_string(v) + " other than v0");
  }
}

}  // namespace

NamingVerdict names_semantic(const Expr& mu, Nat i, Nat budget) {
  require_namer_shape(mu);
  Expr m = expand_bounded(mu);
  Truth at_i = eval_budgeted(m, budget, Env{{0, i}}).value;
  if (at_i == Truth::False) return {NamingKind::RefutedAt, i, budget};
  bool unknown = at_i == Truth::Unknown;
  for (Nat j = 0; j <= budget; ++j) {
    if (j == i) continue;
    Truth v = eval_budgeted(m, budget, Env{{0, j}}).value;
    // A certain μ(j) with j ≠ i refutes whatever else is undecided.
    if (v == Truth::True) return {NamingKind::RefutedAt, j, budget};
    if (v == Truth::Unknown) unknown = true;
  }
  if (unknown) return {NamingKind::Unknown, i, budget};
  return {NamingKind::Names, i, budget};
}

std::optional<NamingVerdict> find_semantic_name(const Expr& mu, Nat budget) {
  require_namer_shape(mu);
  Expr m = expand_bounded(mu);
  std::optional<Nat> hit;
  bool unknown = false;
  for (Nat j = 0; j <= budget; ++j) {
    Truth v = eval_budgeted(m, budget, Env{{0, j}}).value;
    if (v == Truth::True) {
      if (hit) return std::nullopt;  // two numbers satisfy μ
      hit = j;
    } else if (v == Truth::Unknown) {
      unknown = true;
    }
  }
  if (unknown) return NamingVerdict{NamingKind::Unknown, hit.value_or(0), budget};
  if (hit) return NamingVerdict{NamingKind::Names, *hit, budget};
  return std::nullopt;
}

}  // namespace bk
