#include "berrykit/arith.hpp"

#include <algorithm>

#include "berrykit/syntax.hpp"
#include "berrykit/transform.hpp"

namespace bk {

namespace {

Expr v(VarIndex i) { return var(i); }
Expr num(Nat n) { return numeral(n); }

bool refutable_pair(const Expr& x, const Expr& y) {
  auto [a, c1] = strip_succ(x);
  auto [b, c2] = strip_succ(y);
  return (c2.kind() == Kind::Zero && a > b) || (c1.kind() == Kind::Zero && b > a);
}

// Binder variable and body of the existential on the right of a Q3/Q8
// instance.
std::pair<VarIndex, Expr> right_exists(const Expr& f) {
  const Expr& ex = f.right();
  if (ex.kind() != Kind::Exists) throw ProofConstructionError("expected an existential: " + render(f));
  return {ex.var(), ex.body()};
}

}  // namespace

QProver::QProver(ProofBuilder& b, Nat witness_budget, Nat bound_cap) : b_(b), budget_(witness_budget), cap_(bound_cap) {
  if (!b.theory().extends_q) throw PreconditionError("the arithmetic prover needs a theory extending Q");
}

Truth QProver::semantic(const Expr& f) {
  if (!f.is_closed()) return Truth::Unknown;
  try {
    return eval_budgeted(f, budget_).value;
  } catch (const EvalError&) {
    return Truth::Unknown;
  }
}

// ---------------------------------------------------------------- terms

QProver::Normal QProver::plus(const Expr& a, const Expr& bb) {
  auto key = std::make_pair(a, bb);
  if (auto it = plus_memo_.find(key); it != plus_memo_.end()) return it->second;
  Normal out;
  if (bb.kind() == Kind::Zero) {
    out = {a, b_.q_instance(4, {a})};
  } else if (bb.kind() == Kind::Succ) {
    const Expr& p = bb.operand();
    Ref q5 = b_.q_instance(5, {a, p});  // a + s p = s(a + p)
    Normal inner = plus(a, p);
    Ref c = b_.congruence(inner.proof, succ(add(a, p)), succ(inner.form));
    out = {succ(inner.form), b_.trans(q5, c)};
  } else {
    Expr t = add(a, bb);
    out = {t, b_.eq_refl(t)};
  }
  plus_memo_.emplace(key, out);
  return out;
}

QProver::Normal QProver::times(const Expr& a, const Expr& bb) {
  auto key = std::make_pair(a, bb);
  if (auto it = times_memo_.find(key); it != times_memo_.end()) return it->second;
  Normal out;
  if (bb.kind() == Kind::Zero) {
    out = {zero(), b_.q_instance(6, {a})};
  } else if (bb.kind() == Kind::Succ) {
    const Expr& p = bb.operand();
    Ref q7 = b_.q_instance(7, {a, p});  // a * s p = a*p + a
    Normal m = times(a, p);
    Ref c = b_.congruence(m.proof, add(mul(a, p), a), add(m.form, a));
    Normal s = plus(m.form, a);
    out = {s.form, b_.trans(b_.trans(q7, c), s.proof)};
  } else {
    Expr t = mul(a, bb);
    out = {t, b_.eq_refl(t)};
  }
  times_memo_.emplace(key, out);
  return out;
}

QProver::Normal QProver::normalize(const Expr& t) {
  if (auto it = norm_memo_.find(t); it != norm_memo_.end()) return it->second;
  Normal out;
  auto [k, core] = strip_succ(t);
  if (core.kind() == Kind::Zero || core.kind() == Kind::Var) {
    out = {t, b_.eq_refl(t)};
  } else if (t.kind() == Kind::Succ) {
    Normal n = normalize(t.operand());
    Expr form = succ(n.form);
    out = {form, b_.congruence(n.proof, t, form)};
  } else {
    Normal nl = normalize(t.left());
    Normal nr = normalize(t.right());
    bool is_add = t.kind() == Kind::Add;
    auto mk = [&](const Expr& l, const Expr& r) { return is_add ? add(l, r) : mul(l, r); };
    Ref c1 = b_.congruence(nl.proof, t, mk(nl.form, t.right()));
    Ref c2 = b_.congruence(nr.proof, mk(nl.form, t.right()), mk(nl.form, nr.form));
    Normal r = is_add ? plus(nl.form, nr.form) : times(nl.form, nr.form);
    out = {r.form, b_.trans(b_.trans(c1, c2), r.proof)};
  }
  norm_memo_.emplace(t, out);
  return out;
}

// ---------------------------------------------------------------- atoms

QProver::Ref QProver::ne_terms(const Expr& x, const Expr& y) {
  auto key = std::make_pair(x, y);
  if (auto it = ne_memo_.find(key); it != ne_memo_.end()) return it->second;
  Ref out;
  if (x.kind() == Kind::Succ && y.kind() == Kind::Zero) {
    out = b_.q_instance(2, {x.operand()});
  } else if (x.kind() == Kind::Zero && y.kind() == Kind::Succ) {
    Ref q2 = b_.q_instance(2, {y.operand()});
    Ref sy = b_.symm_imp(zero(), y);
    out = b_.consequence({q2, sy}, lnot(eq(x, y)));
  } else if (x.kind() == Kind::Succ && y.kind() == Kind::Succ) {
    Ref inner = ne_terms(x.operand(), y.operand());
    Ref q1 = b_.q_instance(1, {x.operand(), y.operand()});
    out = b_.consequence({q1, inner}, lnot(eq(x, y)));
  } else {
    throw ProofConstructionError("ne_terms: not separable by successors: " + render(eq(x, y)));
  }
  ne_memo_.emplace(key, out);
  return out;
}

QProver::Ref QProver::ne_numerals(Nat i, Nat j) {
  if (i == j) throw PreconditionError("ne_numerals requires distinct numbers");
  return ne_terms(num(i), num(j));
}

QProver::Ref QProver::atom_iff_normal(const Expr& atom, const Normal& nl, const Normal& nr) {
  const Expr& l = atom.left();
  const Expr& r = atom.right();
  auto mk = [&](const Expr& a, const Expr& c) { return Expr::make(atom.kind(), 0, a, c); };
  Expr target = liff(atom, mk(nl.form, nr.form));
  if (auto hit = b_.find(target)) return *hit;
  Ref s1 = b_.eq_sub(l, nl.form, mk(l, r), mk(nl.form, r));
  Ref s2 = b_.eq_sub(r, nr.form, mk(nl.form, r), mk(nl.form, nr.form));
  Ref s3 = b_.eq_sub(nl.form, l, mk(nl.form, nr.form), mk(l, nr.form));
  Ref s4 = b_.eq_sub(nr.form, r, mk(l, nr.form), mk(l, r));
  return b_.consequence({nl.proof, nr.proof, b_.symm(nl.proof), b_.symm(nr.proof), s1, s2, s3, s4}, target);
}

std::optional<QProver::Ref> QProver::refute_eq(const Expr& l, const Expr& r) {
  Normal nl = normalize(l);
  Normal nr = normalize(r);
  if (!refutable_pair(nl.form, nr.form)) return std::nullopt;
  Ref ne = ne_terms(nl.form, nr.form);
  if (nl.form == l && nr.form == r) return ne;
  Ref iff = atom_iff_normal(eq(l, r), nl, nr);
  return b_.consequence({iff, ne}, lnot(eq(l, r)));
}

std::optional<QProver::Ref> QProver::refute_le(const Expr& l, const Expr& r) {
  Ref q8 = b_.q_instance(8, {l, r});
  auto [z, body] = right_exists(b_.formula(q8));
  auto rz = refute_eq(body.left(), body.right());
  if (!rz) return std::nullopt;
  Ref g = b_.gen(*rz, z);
  Ref ed = b_.ex_def(z, body);
  return b_.consequence({q8, g, ed}, lnot(le(l, r)));
}

QProver::Ref QProver::le_numeral_true(Nat n, Nat m) {
  Ref q8 = b_.q_instance(8, {num(n), num(m)});
  auto [z, body] = right_exists(b_.formula(q8));
  Expr d = num(m - n);
  Normal sum = normalize(add(d, num(n)));  // d + n = m
  Ref ex = b_.exists_intro(z, body, d, sum.proof);
  return b_.consequence({q8, ex}, le(num(n), num(m)));
}

QProver::Ref QProver::zero_le(const Expr& t) {
  Ref q8 = b_.q_instance(8, {zero(), t});
  auto [z, body] = right_exists(b_.formula(q8));
  Ref q4 = b_.q_instance(4, {t});  // t + 0 = t
  Ref ex = b_.exists_intro(z, body, t, q4);
  return b_.consequence({q8, ex}, le(zero(), t));
}

QProver::Opt QProver::decide_atom(const Expr& f) {
  Normal nl = normalize(f.left());
  Normal nr = normalize(f.right());
  const Expr& x = nl.form;
  const Expr& y = nr.form;
  Expr nf = Expr::make(f.kind(), 0, x, y);
  std::optional<Decision> base;
  if (f.kind() == Kind::Eq) {
    if (x == y) {
      base = Decision{true, b_.eq_refl(x)};
    } else if (refutable_pair(x, y)) {
      base = Decision{false, ne_terms(x, y)};
    }
  } else {
    auto xn = numeral_value(x);
    auto yn = numeral_value(y);
    if (xn && yn) {
      if (*xn <= *yn) {
        base = Decision{true, le_numeral_true(*xn, *yn)};
      } else if (auto r = refute_le(x, y)) {
        base = Decision{false, *r};
      }
    } else if (x.kind() == Kind::Zero) {
      base = Decision{true, zero_le(y)};
    } else if (auto r = refute_le(x, y)) {
      base = Decision{false, *r};
    }
  }
  if (!base) return std::nullopt;
  if (nf == f) return base;
  Ref iff = atom_iff_normal(f, nl, nr);
  return Decision{base->value, b_.consequence({iff, base->proof}, base->value ? f : lnot(f))};
}

// ---------------------------------------------------------------- formulas

std::optional<QProver::Decision> QProver::decide(const Expr& input) {
  Expr f = expand_bounded(input);
  if (auto it = decide_memo_.find(f); it != decide_memo_.end()) return it->second;
  b_.reserve(f);
  Opt out;
  switch (f.kind()) {
    case Kind::Eq:
    case Kind::Le:
      out = decide_atom(f);
      break;
    case Kind::Not:
      if (auto d = decide(f.operand())) {
        out = Decision{!d->value, b_.consequence({d->proof}, d->value ? lnot(f) : f)};
      }
      break;
    case Kind::And:
    case Kind::Or:
    case Kind::Imp:
    case Kind::Iff:
      out = decide_binary(f);
      break;
    case Kind::Forall:
    case Kind::Exists:
      out = decide_quantifier(f);
      break;
    default:
      break;
  }
  decide_memo_.emplace(f, out);
  return out;
}

QProver::Opt QProver::decide_binary(const Expr& f) {
  Kind k = f.kind();
  // Whether one side's value alone fixes the value of f.
  auto settles = [k](bool left_side, bool value) {
    switch (k) {
      case Kind::And: return !value;
      case Kind::Or: return value;
      case Kind::Imp: return left_side ? !value : value;
      default: return false;
    }
  };
  auto value_of = [k](bool a, bool b) {
    switch (k) {
      case Kind::And: return a && b;
      case Kind::Or: return a || b;
      case Kind::Imp: return !a || b;
      default: return a == b;
    }
  };
  auto finish = [&](bool value, std::vector<Ref> used) {
    return Decision{value, b_.consequence(used, value ? f : lnot(f))};
  };
  bool right_first = false;
  if (f.is_closed() && k != Kind::Iff) {
    Truth sl = semantic(f.left());
    Truth sr = semantic(f.right());
    bool left_settles = sl != Truth::Unknown && settles(true, sl == Truth::True);
    bool right_settles = sr != Truth::Unknown && settles(false, sr == Truth::True);
    right_first = right_settles && !left_settles;
  }
  // A settled And is false; a settled Or or Imp is true.
  bool settled_value = k != Kind::And;
  Opt dl, dr;
  if (!right_first) {
    dl = decide(f.left());
    if (dl && settles(true, dl->value)) return finish(settled_value, {dl->proof});
  }
  dr = decide(f.right());
  if (dr && settles(false, dr->value)) return finish(settled_value, {dr->proof});
  if (right_first) {
    dl = decide(f.left());
    if (dl && settles(true, dl->value)) return finish(settled_value, {dl->proof});
  }
  if (dl && dr) return finish(value_of(dl->value, dr->value), {dl->proof, dr->proof});
  return std::nullopt;
}

QProver::Opt QProver::decide_quantifier(const Expr& f) {
  if (auto bv = as_bounded(f)) {
    if (auto d = decide_bounded(f, bv->var, bv->bound, bv->body, bv->universal)) return d;
  }
  VarIndex x = f.var();
  const Expr& body = f.body();
  bool universal = f.kind() == Kind::Forall;
  if (!body.has_free(x)) {
    auto d = decide(body);
    if (!d) return std::nullopt;
    if (universal) {
      if (d->value) return Decision{true, b_.gen(d->proof, x)};
      Ref ai = b_.all_inst(f, zero());
      return Decision{false, b_.consequence({ai, d->proof}, lnot(f))};
    }
    if (d->value) return Decision{true, b_.exists_intro(x, body, zero(), d->proof)};
    Ref g = b_.gen(d->proof, x);
    Ref ed = b_.ex_def(x, body);
    return Decision{false, b_.consequence({g, ed}, lnot(f))};
  }
  for (Nat j = 0; j <= budget_; ++j) {
    Expr inst = substitute(body, x, num(j));
    Truth s = semantic(inst);
    if (s == (universal ? Truth::True : Truth::False)) continue;
    auto d = decide(inst);
    if (!d) continue;
    if (universal && !d->value) {
      Ref ai = b_.all_inst(f, num(j));
      return Decision{false, b_.consequence({ai, d->proof}, lnot(f))};
    }
    if (!universal && d->value) return Decision{true, b_.exists_intro(x, body, num(j), d->proof)};
  }
  return std::nullopt;
}

QProver::Opt QProver::decide_bounded(const Expr& f, VarIndex x, const Expr& bound, const Expr& body, bool universal) {
  if (!bound.is_closed()) return std::nullopt;
  Normal nb = normalize(bound);
  auto m = numeral_value(nb.form);
  if (!m || *m > cap_) return std::nullopt;
  auto inst = [&](Nat j) { return substitute(body, x, num(j)); };
  auto below = [&](Nat j) {
    auto d = decide(le(num(j + 1), bound));
    if (!d || !d->value) throw ProofConstructionError("bounded case: failed to prove s j ≤ bound");
    return d->proof;
  };
  // Index whose instance settles f (a counterexample or a witness).
  auto settle_with = [&](Nat j, const Decision& d) -> Decision {
    Expr g = substitute(f.body(), x, num(j));
    if (universal) {
      Ref ai = b_.all_inst(f, num(j));
      return {false, b_.consequence({ai, below(j), d.proof}, lnot(f))};
    }
    Ref conj = b_.consequence({below(j), d.proof}, g);
    return {true, b_.exists_intro(x, f.body(), num(j), conj)};
  };
  bool want = !universal;  // instance value that settles f
  if (f.is_closed()) {
    for (Nat j = 0; j < *m; ++j) {
      Truth s = semantic(inst(j));
      if (s == Truth::Unknown || (s == Truth::True) != want) continue;
      if (auto d = decide(inst(j)); d && d->value == want) return settle_with(j, *d);
    }
  }
  std::vector<Ref> proofs;
  for (Nat j = 0; j < *m; ++j) {
    auto d = decide(inst(j));
    if (!d) return std::nullopt;
    if (d->value == want) return settle_with(j, *d);
    proofs.push_back(d->proof);
  }
  if (universal) return Decision{true, bounded_forall_true(f, x, bound, *m, nb, body, proofs)};
  // No witness: ∀x(s x ≤ b → ~μ), hence ~∃x(s x ≤ b ∧ μ).
  Expr neg = lnot(body);
  Expr all_neg = forall(x, limp(le(succ(v(x)), bound), neg));
  Ref g = bounded_forall_true(all_neg, x, bound, *m, nb, neg, proofs);
  Ref at_x = b_.instantiate(g, v(x));
  Ref step = b_.consequence({at_x}, lnot(f.body()));
  Ref gx = b_.gen(step, x);
  Ref ed = b_.ex_def(x, f.body());
  return Decision{false, b_.consequence({gx, ed}, lnot(f))};
}

QProver::Ref QProver::bounded_forall_true(const Expr& f, VarIndex x, const Expr& bound, Nat m, const Normal& nb,
                                          const Expr& body, const std::vector<Ref>& instances) {
  Expr sx = succ(v(x));
  Expr target = limp(le(sx, bound), body);
  Ref cases = le_cases(m, x);
  Ref sub = b_.eq_sub(bound, nb.form, le(sx, bound), le(sx, nb.form));
  std::vector<Ref> prem{cases, nb.proof, sub};
  for (Nat j = 0; j < m; ++j) {
    Expr at_j = substitute(body, x, num(j));
    prem.push_back(b_.eq_sub(num(j), v(x), at_j, body));
    prem.push_back(b_.symm_imp(v(x), num(j)));
    prem.push_back(instances[j]);
  }
  Ref imp = b_.consequence(prem, target);
  Ref out = b_.gen(imp, x);
  if (b_.formula(out) != f) throw ProofConstructionError("bounded ∀: unexpected conclusion");
  return out;
}

// ---------------------------------------------------------------- lemmas

QProver::Ref QProver::sum_disj(Nat k, VarIndex z, VarIndex x) {
  auto key = std::make_tuple(k, z, x);
  if (auto it = sum_memo_.find(key); it != sum_memo_.end()) return it->second;
  std::vector<Expr> parts;
  for (Nat i = 0; i <= k; ++i) parts.push_back(eq(v(x), num(i)));
  Expr goal = limp(eq(add(v(z), v(x)), num(k)), disjunction(parts));
  Ref q3 = b_.q_instance(3, {v(x)});
  auto [y, py] = right_exists(b_.formula(q3));  // py = (x = s y)
  Expr zsy = add(v(z), succ(v(y)));
  Expr szy = succ(add(v(z), v(y)));
  std::vector<Ref> prem{
      b_.q_instance(5, {v(z), v(y)}),
      b_.eq_sub(v(x), succ(v(y)), eq(add(v(z), v(x)), num(k)), eq(zsy, num(k))),
      b_.eq_sub(zsy, szy, eq(zsy, num(k)), eq(szy, num(k))),
  };
  if (k == 0) {
    prem.push_back(b_.q_instance(2, {add(v(z), v(y))}));
  } else {
    prem.push_back(b_.q_instance(1, {add(v(z), v(y)), num(k - 1)}));
    prem.push_back(sum_disj(k - 1, z, y));
    for (Nat i = 0; i < k; ++i) prem.push_back(b_.eq_sub(v(y), num(i), py, eq(v(x), succ(num(i)))));
  }
  Ref c = b_.consequence(prem, limp(py, goal));
  Ref el = b_.exists_elim(c, y);
  Ref out = b_.consequence({q3, el}, goal);
  sum_memo_.emplace(key, out);
  return out;
}

QProver::Ref QProver::le_cases(Nat m, VarIndex x) {
  auto key = std::make_pair(m, x);
  if (auto it = cases_memo_.find(key); it != cases_memo_.end()) return it->second;
  Ref out;
  Expr sx = succ(v(x));
  if (m == 0) {
    auto r = refute_le(sx, zero());
    if (!r) throw ProofConstructionError("le_cases: cannot refute s x ≤ 0");
    out = *r;
  } else {
    std::vector<Expr> parts;
    for (Nat j = 0; j < m; ++j) parts.push_back(eq(v(x), num(j)));
    Expr disj = disjunction(parts);
    Ref q8 = b_.q_instance(8, {sx, num(m)});
    auto [z, body] = right_exists(b_.formula(q8));  // z + s x = m
    Expr zsx = add(v(z), sx);
    Expr szx = succ(add(v(z), v(x)));
    Ref q5 = b_.q_instance(5, {v(z), v(x)});
    Ref e1 = b_.eq_sub(zsx, szx, eq(zsx, num(m)), eq(szx, num(m)));
    Ref q1 = b_.q_instance(1, {add(v(z), v(x)), num(m - 1)});
    Ref a = sum_disj(m - 1, z, x);
    Ref c = b_.consequence({q5, e1, q1, a}, limp(body, disj));
    Ref el = b_.exists_elim(c, z);
    out = b_.consequence({q8, el}, limp(le(sx, num(m)), disj));
  }
  cases_memo_.emplace(key, out);
  return out;
}

QProver::Ref QProver::le_disj(Nat i, VarIndex x) {
  auto key = std::make_pair(i, x);
  if (auto it = disj_memo_.find(key); it != disj_memo_.end()) return it->second;
  std::vector<Expr> parts;
  for (Nat j = 0; j <= i; ++j) parts.push_back(eq(v(x), num(j)));
  Ref q8 = b_.q_instance(8, {v(x), num(i)});
  auto [z, body] = right_exists(b_.formula(q8));
  Ref el = b_.exists_elim(sum_disj(i, z, x), z);
  Ref out = b_.consequence({q8, el}, limp(le(v(x), num(i)), disjunction(parts)));
  disj_memo_.emplace(key, out);
  return out;
}

QProver::Ref QProver::le_succ(const Expr& a, const Expr& bb) {
  Expr target = limp(le(a, bb), le(succ(a), succ(bb)));
  if (auto hit = b_.find(target)) return *hit;
  Ref q8 = b_.q_instance(8, {a, bb});
  auto [z, body] = right_exists(b_.formula(q8));  // z + a = b
  Ref q5 = b_.q_instance(5, {v(z), a});         // z + s a = s(z + a)
  Expr goal_eq = eq(add(v(z), succ(a)), succ(bb));
  Ref e = b_.eq_sub(add(v(z), a), bb, b_.formula(q5), goal_eq);
  Ref q8s = b_.q_instance(8, {succ(a), succ(bb)});
  auto [w, bodyw] = right_exists(b_.formula(q8s));
  Ref ei = b_.exists_intro_imp(w, bodyw, v(z));
  Ref c = b_.consequence({q5, e, ei, q8s}, limp(body, le(succ(a), succ(bb))));
  Ref el = b_.exists_elim(c, z);
  return b_.consequence({q8, el}, target);
}

QProver::Ref QProver::order_open(Nat i, VarIndex x) {
  Expr ni = num(i);
  Expr goal = lor(le(v(x), ni), le(ni, v(x)));
  if (auto hit = b_.find(goal)) return *hit;
  if (i == 0) return b_.consequence({zero_le(v(x))}, goal);
  Ref q3 = b_.q_instance(3, {v(x)});
  auto [y, py] = right_exists(b_.formula(q3));  // x = s y
  Expr p = num(i - 1);
  Expr sy = succ(v(y));
  Ref ot = b_.instantiate(order_totality(i - 1), v(y));
  Ref c = b_.consequence(
      {ot, le_succ(v(y), p), le_succ(p, v(y)), b_.eq_sub(sy, v(x), le(sy, ni), le(v(x), ni)),
       b_.eq_sub(sy, v(x), le(ni, sy), le(ni, v(x))), b_.symm_imp(v(x), sy)},
      limp(py, goal));
  Ref el = b_.exists_elim(c, y);
  return b_.consequence(
      {q3, zero_le(ni), b_.eq_sub(zero(), v(x), le(zero(), ni), le(v(x), ni)), b_.symm_imp(v(x), zero()), el}, goal);
}

QProver::Ref QProver::order_totality(Nat i) {
  if (auto it = order_memo_.find(i); it != order_memo_.end()) return it->second;
  Ref out = b_.gen(order_open(i, 0), 0);
  order_memo_.emplace(i, out);
  return out;
}

QProver::Ref QProver::p6(Nat i, VarIndex x) {
  Expr ni = num(i);
  Expr sni = succ(ni);
  Expr concl = lor(eq(v(x), ni), le(sni, v(x)));
  Ref q8 = b_.q_instance(8, {ni, v(x)});
  auto [z, body] = right_exists(b_.formula(q8));  // z + i = x
  Expr inner_goal = limp(body, concl);
  Ref q3 = b_.q_instance(3, {v(z)});
  auto [w, pw] = right_exists(b_.formula(q3));  // z = s w

  Expr zero_sum = add(zero(), ni);
  Normal n0 = normalize(zero_sum);
  if (n0.form != ni) throw ProofConstructionError("p6: 0 + i did not normalise to i");
  Ref e0 = b_.eq_sub(v(z), zero(), body, eq(zero_sum, v(x)));
  Ref e0b = b_.eq_sub(zero_sum, ni, eq(zero_sum, v(x)), eq(ni, v(x)));
  Ref s0 = b_.symm_imp(ni, v(x));

  Expr lhs = add(succ(v(w)), ni);
  Expr rhs = add(v(w), sni);
  Normal na = normalize(lhs);
  Normal nb = normalize(rhs);
  if (na.form != nb.form) throw ProofConstructionError("p6: sums did not normalise together");
  Ref same = b_.trans(na.proof, b_.symm(nb.proof));
  Ref e1 = b_.eq_sub(v(z), succ(v(w)), body, eq(lhs, v(x)));
  Ref e2 = b_.eq_sub(lhs, rhs, eq(lhs, v(x)), eq(rhs, v(x)));
  Ref q8s = b_.q_instance(8, {sni, v(x)});
  auto [u, bodyu] = right_exists(b_.formula(q8s));
  Ref ei = b_.exists_intro_imp(u, bodyu, v(w));
  Ref c = b_.consequence({e1, same, e2, ei, q8s}, limp(pw, inner_goal));
  Ref el = b_.exists_elim(c, w);

  Ref inner = b_.consequence({q3, e0, n0.proof, e0b, s0, el}, inner_goal);
  Ref el2 = b_.exists_elim(inner, z);
  return b_.consequence({q8, el2}, limp(le(ni, v(x)), concl));
}

QProver::Ref QProver::least_unique(const Expr& mu_in, Nat i) {
  Expr mu = expand_bounded(mu_in);
  for (VarIndex fv : mu.free_vars()) {
    if (fv != 0) throw PreconditionError("least_unique: μ may only have v0 free");
  }
  auto vars = all_vars(mu);
  if (std::find(vars.begin(), vars.end(), VarIndex{2}) != vars.end()) {
    throw PreconditionError("least_unique: v2 must not occur in μ");
  }
  Expr goal = least_unique_statement(mu, i);
  b_.reserve(goal);
  Expr ni = num(i);
  const Expr& h = goal.left();
  const Expr& h2 = h.right();  // ∀v2(s v2 ≤ i → μ(v2))
  const Expr& all_k = goal.right();
  const Expr& k = all_k.body().left();
  const Expr& k2 = k.right();  // ∀v2(s v2 ≤ v0 → μ(v2))

  std::vector<Ref> prem{b_.instantiate(order_totality(i), v(0)), le_disj(i, 0), p6(i, 0), b_.all_inst(k2, ni)};
  for (Nat j = 0; j < i; ++j) {
    Expr mj = substitute(mu, 0, num(j));
    prem.push_back(b_.all_inst(h2, num(j)));
    prem.push_back(le_numeral_true(j + 1, i));
    prem.push_back(b_.eq_sub(num(j), v(0), mj, mu));
    prem.push_back(b_.symm_imp(v(0), num(j)));
  }
  Ref body = b_.consequence(prem, limp(h, limp(k, eq(v(0), ni))));
  Ref out = b_.forall_intro_under(body, 0);
  if (b_.formula(out) != goal) throw ProofConstructionError("least_unique: unexpected conclusion");
  return out;
}

std::optional<QProver::Ref> QProver::naming_case(const Expr& mu, Nat i, const Expr& tau, Nat depth) {
  Expr mt = substitute(mu, 0, tau);
  Expr x = limp(mt, eq(tau, num(i)));
  if (auto hit = b_.find(x)) return *hit;
  if (auto d = decide(mt)) {
    if (!d->value) return b_.consequence({d->proof}, x);
    if (tau == num(i)) return b_.consequence({b_.eq_refl(tau)}, x);
    return std::nullopt;
  }
  auto [k, core] = strip_succ(tau);
  if (core.kind() != Kind::Var || depth == 0) return std::nullopt;
  VarIndex y = core.var();
  auto c0 = naming_case(mu, i, num(k), depth);
  if (!c0) return std::nullopt;
  Ref e0 = b_.eq_sub(zero(), v(y), b_.formula(*c0), x);
  Ref s0 = b_.symm_imp(v(y), zero());
  Ref q3 = b_.q_instance(3, {v(y)});
  auto [y2, py] = right_exists(b_.formula(q3));
  auto c1 = naming_case(mu, i, succ_n(k, succ(v(y2))), depth - 1);
  if (!c1) return std::nullopt;
  Ref e1 = b_.eq_sub(succ(v(y2)), v(y), b_.formula(*c1), x);
  Ref s1 = b_.symm_imp(v(y), succ(v(y2)));
  Ref c = b_.consequence({*c1, e1, s1}, limp(py, x));
  Ref el = b_.exists_elim(c, y2);
  return b_.consequence({q3, el, *c0, e0, s0}, x);
}

std::optional<QProver::Ref> QProver::naming(const Expr& mu_in, Nat i, Nat max_depth) {
  Expr mu = expand_bounded(mu_in);
  for (VarIndex fv : mu.free_vars()) {
    if (fv != 0) throw PreconditionError("a namer may only have v0 free");
  }
  Expr ni = num(i);
  Expr goal = forall(0, liff(mu, eq(v(0), ni)));
  if (auto hit = b_.find(goal)) return *hit;
  b_.reserve(goal);
  Expr at_i = substitute(mu, 0, ni);
  auto d = decide(at_i);
  if (!d || !d->value) return std::nullopt;
  auto fwd = naming_case(mu, i, v(0), max_depth);
  if (!fwd) return std::nullopt;
  Ref bwd = b_.consequence({d->proof, b_.eq_sub(ni, v(0), at_i, mu), b_.symm_imp(v(0), ni)}, limp(eq(v(0), ni), mu));
  Ref iff = b_.consequence({*fwd, bwd}, liff(mu, eq(v(0), ni)));
  return b_.gen(iff, 0);
}

// ---------------------------------------------------------------- entry points

const char* sigma_status_name(SigmaStatus s) {
  switch (s) {
    case SigmaStatus::Proved: return "Proved";
    case SigmaStatus::Refused: return "Refused";
    case SigmaStatus::BudgetExhausted: return "BudgetExhausted";
  }
  return "?";
}

SigmaResult prove_sigma(const Expr& sigma, Nat budget) {
  if (!sigma.is_formula()) throw PreconditionError("prove_sigma needs a formula");
  if (!sigma.is_closed()) throw PreconditionError("prove_sigma needs a sentence");
  if (!class_within(classify(sigma), SyntacticClass::SigmaSyntactic)) {
    throw PreconditionError("not a Σ sentence (class " + std::string(class_name(classify(sigma))) + ")");
  }
  TruthVerdict tv = eval_budgeted(sigma, budget);
  if (tv.value == Truth::False) return {SigmaStatus::Refused, {}, "sentence is false in ω"};
  if (tv.value == Truth::Unknown) {
    return {SigmaStatus::BudgetExhausted, {}, "no witness found up to " + std::to_string(budget)};
  }
  ProofBuilder b(Theory::q());
  QProver p(b, budget);
  auto d = p.decide(sigma);
  if (!d) return {SigmaStatus::BudgetExhausted, {}, "proof construction exceeded the budget"};
  if (!d->value) throw ProofConstructionError("prove_sigma: refuted a sentence evaluated as true");
  return {SigmaStatus::Proved, b.finish(d->proof), {}};
}

Derivation prove_ne_numerals(Nat i, Nat j) {
  if (i == j) throw PreconditionError("prove_ne_numerals requires i ≠ j");
  ProofBuilder b(Theory::q());
  QProver p(b);
  return b.finish(p.ne_numerals(i, j));
}

Derivation prove_order_totality(Nat i) {
  ProofBuilder b(Theory::q());
  QProver p(b);
  return b.finish(p.order_totality(i));
}

Expr least_unique_statement(const Expr& mu_in, Nat i) {
  Expr mu = expand_bounded(mu_in);
  Expr ni = num(i);
  Expr mu2 = substitute(mu, 0, v(2));
  Expr hyp = land(lnot(substitute(mu, 0, ni)), bounded_forall(2, ni, mu2));
  Expr body = limp(land(lnot(mu), bounded_forall(2, v(0), mu2)), eq(v(0), ni));
  return expand_bounded(limp(hyp, forall(0, body)));
}

Derivation prove_least_unique(const Expr& mu, Nat i) {
  ProofBuilder b(Theory::q());
  QProver p(b);
  return b.finish(p.least_unique(mu, i));
}

}  // namespace bk
