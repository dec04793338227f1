#include "berrykit/transform.hpp"

#include <algorithm>
#include <vector>

namespace bk {

namespace {

VarIndex least_unused(const Expr& a, const Expr& b, VarIndex also) {
  for (VarIndex y = 0;; ++y) {
    if (y != also && !a.has_free(y) && !b.has_free(y)) return y;
  }
}

Expr rebuild_unary(const Expr& e, Expr a) {
  if (a == e.operand()) return e;
  return Expr::make(e.kind(), 0, std::move(a), {});
}

Expr rebuild_binary(const Expr& e, Expr l, Expr r) {
  if (l == e.left() && r == e.right()) return e;
  return Expr::make(e.kind(), 0, std::move(l), std::move(r));
}

}  // namespace

Expr substitute(const Expr& e, VarIndex v, const Expr& t) {
  if (!e.has_free(v)) return e;
  switch (e.kind()) {
    case Kind::Var:
      return t;
    case Kind::Succ:
    case Kind::Not:
      return rebuild_unary(e, substitute(e.operand(), v, t));
    case Kind::Forall:
    case Kind::Exists: {
      VarIndex x = e.var();
      Expr body = e.body();
      if (t.has_free(x)) {
        VarIndex y = least_unused(t, body, v);
        body = substitute(body, x, var(y));
        x = y;
      }
      return Expr::make(e.kind(), x, substitute(body, v, t), {});
    }
    case Kind::BoundedForall:
    case Kind::BoundedExists: {
      Expr bound = substitute(e.bound(), v, t);
      VarIndex x = e.var();
      Expr body = e.body();
      if (x != v && body.has_free(v)) {
        if (t.has_free(x)) {
          VarIndex y = least_unused(t, body, v);
          body = substitute(body, x, var(y));
          x = y;
        }
        body = substitute(body, v, t);
      }
      return Expr::make(e.kind(), x, bound, body);
    }
    default:
      return rebuild_binary(e, substitute(e.left(), v, t), substitute(e.right(), v, t));
  }
}

Expr expand_bounded(const Expr& e) {
  if (e.is_term()) return e;
  switch (e.kind()) {
    case Kind::Eq:
    case Kind::Le:
      return e;
    case Kind::Not:
      return rebuild_unary(e, expand_bounded(e.operand()));
    case Kind::Forall:
    case Kind::Exists: {
      Expr b = expand_bounded(e.body());
      if (b == e.body()) return e;
      return Expr::make(e.kind(), e.var(), b, {});
    }
    case Kind::BoundedForall:
    case Kind::BoundedExists: {
      VarIndex x = e.var();
      const Expr& bound = e.bound();
      Expr body = expand_bounded(e.body());
      if (bound.has_free(x)) {
        VarIndex y = least_unused(bound, body, x);
        body = substitute(body, x, var(y));
        x = y;
      }
      Expr guard = le(succ(var(x)), bound);
      return e.kind() == Kind::BoundedForall ? forall(x, limp(guard, body)) : exists(x, land(guard, body));
    }
    default:
      return rebuild_binary(e, expand_bounded(e.left()), expand_bounded(e.right()));
  }
}

namespace {

Expr normal_form_rec(const Expr& e, std::vector<std::pair<VarIndex, VarIndex>>& scope) {
  if (e.is_closed() && e.max_var() < 0) return e;
  switch (e.kind()) {
    case Kind::Zero:
      return e;
    case Kind::Var: {
      for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
        if (it->first == e.var()) return var(it->second);
      }
      return e;
    }
    case Kind::Succ:
    case Kind::Not:
      return rebuild_unary(e, normal_form_rec(e.operand(), scope));
    case Kind::Forall:
    case Kind::Exists: {
      VarIndex fresh = static_cast<VarIndex>(scope.size() + 1);
      scope.emplace_back(e.var(), fresh);
      Expr b = normal_form_rec(e.body(), scope);
      scope.pop_back();
      return Expr::make(e.kind(), fresh, b, {});
    }
    case Kind::BoundedForall:
    case Kind::BoundedExists: {
      Expr bound = normal_form_rec(e.bound(), scope);
      VarIndex fresh = static_cast<VarIndex>(scope.size() + 1);
      scope.emplace_back(e.var(), fresh);
      Expr b = normal_form_rec(e.body(), scope);
      scope.pop_back();
      return Expr::make(e.kind(), fresh, bound, b);
    }
    default:
      return rebuild_binary(e, normal_form_rec(e.left(), scope), normal_form_rec(e.right(), scope));
  }
}

void require_v0_only(const Expr& f) {
  if (!f.is_formula()) throw PreconditionError("expected a formula");
  for (VarIndex v : f.free_vars()) {
    if (v != 0) throw PreconditionError("free variable v" + std::to_string(v) + " other than v0");
  }
}

}  // namespace

Expr binder_normal_form(const Expr& f) {
  require_v0_only(f);
  std::vector<std::pair<VarIndex, VarIndex>> scope;
  return normal_form_rec(f, scope);
}

Expr rename_to_first(const Expr& f, std::size_t j) {
  require_v0_only(f);
  if (j == 0) throw PreconditionError("j must be positive");
  if (f.max_var() < static_cast<std::int64_t>(j)) return f;
  Expr nf = binder_normal_form(f);
  if (nf.max_var() >= static_cast<std::int64_t>(j)) {
    throw PreconditionError("quantifier nesting needs v" + std::to_string(nf.max_var()) +
                            ", beyond the first " + std::to_string(j) + " variables");
  }
  return nf;
}

const char* class_name(SyntacticClass c) {
  switch (c) {
    case SyntacticClass::Delta0: return "Delta0";
    case SyntacticClass::Sigma1: return "Sigma1";
    case SyntacticClass::SigmaSyntactic: return "SigmaSyntactic";
    case SyntacticClass::Other: return "Other";
  }
  return "?";
}

bool class_within(SyntacticClass have, SyntacticClass want) {
  if (have == SyntacticClass::Other) return want == SyntacticClass::Other;
  if (want == SyntacticClass::Other) return true;
  return static_cast<int>(have) <= static_cast<int>(want);
}

std::optional<BoundedView> as_bounded(const Expr& f) {
  if (f.kind() == Kind::BoundedForall || f.kind() == Kind::BoundedExists) {
    if (f.bound().has_free(f.var())) return std::nullopt;
    return BoundedView{f.kind() == Kind::BoundedForall, f.var(), f.bound(), f.body()};
  }
  if (f.kind() != Kind::Forall && f.kind() != Kind::Exists) return std::nullopt;
  const Expr& m = f.body();
  Kind want = f.kind() == Kind::Forall ? Kind::Imp : Kind::And;
  if (m.kind() != want) return std::nullopt;
  const Expr& guard = m.left();
  if (guard.kind() != Kind::Le) return std::nullopt;
  const Expr& lhs = guard.left();
  if (lhs.kind() != Kind::Succ || lhs.operand().kind() != Kind::Var || lhs.operand().var() != f.var()) {
    return std::nullopt;
  }
  if (guard.right().has_free(f.var())) return std::nullopt;
  return BoundedView{f.kind() == Kind::Forall, f.var(), guard.right(), m.right()};
}

namespace {

bool is_delta0(const Expr& f) {
  switch (f.kind()) {
    case Kind::Eq:
    case Kind::Le:
      return true;
    case Kind::Not:
      return is_delta0(f.operand());
    case Kind::And:
    case Kind::Or:
    case Kind::Imp:
    case Kind::Iff:
      return is_delta0(f.left()) && is_delta0(f.right());
    default:
      if (auto b = as_bounded(f)) return is_delta0(b->body);
      return false;
  }
}

bool is_sigma(const Expr& f) {
  if (is_delta0(f)) return true;
  switch (f.kind()) {
    case Kind::And:
    case Kind::Or:
      return is_sigma(f.left()) && is_sigma(f.right());
    case Kind::Exists:
      return is_sigma(f.body());
    case Kind::Forall:
      if (auto b = as_bounded(f)) return is_sigma(b->body);
      return false;
    default:
      return false;
  }
}

}  // namespace

SyntacticClass classify(const Expr& f) {
  if (!f.is_formula()) return SyntacticClass::Other;
  Expr g = expand_bounded(f);
  if (is_delta0(g)) return SyntacticClass::Delta0;
  if (g.kind() == Kind::Exists && is_delta0(g.body())) return SyntacticClass::Sigma1;
  if (is_sigma(g)) return SyntacticClass::SigmaSyntactic;
  return SyntacticClass::Other;
}

namespace {

using Stack = std::vector<VarIndex>;

int lookup(const Stack& s, VarIndex v) {
  for (int i = static_cast<int>(s.size()) - 1; i >= 0; --i) {
    if (s[static_cast<std::size_t>(i)] == v) return i;
  }
  return -1;
}

bool alpha_rec(const Expr& a, const Expr& b, Stack& sa, Stack& sb) {
  if (a.kind() != b.kind()) return false;
  if (a.max_var() < 0 && b.max_var() < 0) return a == b;
  switch (a.kind()) {
    case Kind::Zero:
      return true;
    case Kind::Var: {
      int ia = lookup(sa, a.var());
      int ib = lookup(sb, b.var());
      if (ia != ib) return false;
      return ia >= 0 || a.var() == b.var();
    }
    case Kind::Succ:
    case Kind::Not:
      return alpha_rec(a.operand(), b.operand(), sa, sb);
    case Kind::Forall:
    case Kind::Exists: {
      sa.push_back(a.var());
      sb.push_back(b.var());
      bool ok = alpha_rec(a.body(), b.body(), sa, sb);
      sa.pop_back();
      sb.pop_back();
      return ok;
    }
    case Kind::BoundedForall:
    case Kind::BoundedExists: {
      if (!alpha_rec(a.bound(), b.bound(), sa, sb)) return false;
      sa.push_back(a.var());
      sb.push_back(b.var());
      bool ok = alpha_rec(a.body(), b.body(), sa, sb);
      sa.pop_back();
      sb.pop_back();
      return ok;
    }
    default:
      return alpha_rec(a.left(), b.left(), sa, sb) && alpha_rec(a.right(), b.right(), sa, sb);
  }
}

struct InstanceMatcher {
  VarIndex v;
  std::optional<Expr> found;
  Stack sp, sq;

  bool rec(const Expr& p, const Expr& q) {
    if (p.kind() == Kind::Var) {
      int ip = lookup(sp, p.var());
      if (ip >= 0) return q.kind() == Kind::Var && lookup(sq, q.var()) == ip;
      if (p.var() == v) {
        if (!q.is_term()) return false;
        for (VarIndex y : q.free_vars()) {
          if (lookup(sq, y) >= 0) return false;  // captured
        }
        if (found) return *found == q;
        found = q;
        return true;
      }
      return q.kind() == Kind::Var && q.var() == p.var() && lookup(sq, q.var()) < 0;
    }
    if (p.kind() != q.kind()) return false;
    if (!p.has_free(v) && sp.empty() && sq.empty()) return alpha_equal(p, q);
    switch (p.kind()) {
      case Kind::Zero:
        return true;
      case Kind::Succ:
      case Kind::Not:
        return rec(p.operand(), q.operand());
      case Kind::Forall:
      case Kind::Exists: {
        sp.push_back(p.var());
        sq.push_back(q.var());
        bool ok = rec(p.body(), q.body());
        sp.pop_back();
        sq.pop_back();
        return ok;
      }
      case Kind::BoundedForall:
      case Kind::BoundedExists: {
        if (!rec(p.bound(), q.bound())) return false;
        sp.push_back(p.var());
        sq.push_back(q.var());
        bool ok = rec(p.body(), q.body());
        sp.pop_back();
        sq.pop_back();
        return ok;
      }
      default:
        return rec(p.left(), q.left()) && rec(p.right(), q.right());
    }
  }
};

struct ReplacementChecker {
  const Expr& from;
  const Expr& to;
  Stack bound;

  bool captured() const {
    for (VarIndex b : bound) {
      if (from.has_free(b) || to.has_free(b)) return true;
    }
    return false;
  }

  bool rec(const Expr& b, const Expr& a) {
    if (b == a) return true;
    if (b.is_term() && b == from && a == to && !captured()) return true;
    if (b.kind() != a.kind()) return false;
    switch (b.kind()) {
      case Kind::Zero:
      case Kind::Var:
        return false;
      case Kind::Succ:
      case Kind::Not:
        return rec(b.operand(), a.operand());
      case Kind::Forall:
      case Kind::Exists: {
        if (b.var() != a.var()) return false;
        bound.push_back(b.var());
        bool ok = rec(b.body(), a.body());
        bound.pop_back();
        return ok;
      }
      case Kind::BoundedForall:
      case Kind::BoundedExists: {
        if (b.var() != a.var() || !rec(b.bound(), a.bound())) return false;
        bound.push_back(b.var());
        bool ok = rec(b.body(), a.body());
        bound.pop_back();
        return ok;
      }
      default:
        return rec(b.left(), a.left()) && rec(b.right(), a.right());
    }
  }
};

Expr replace_rec(const Expr& e, const Expr& from, const Expr& to) {
  if (e == from) return to;
  switch (e.kind()) {
    case Kind::Zero:
    case Kind::Var:
      return e;
    case Kind::Succ:
    case Kind::Not:
      return rebuild_unary(e, replace_rec(e.operand(), from, to));
    case Kind::Forall:
    case Kind::Exists: {
      if (from.has_free(e.var()) || to.has_free(e.var())) return e;
      Expr b = replace_rec(e.body(), from, to);
      return b == e.body() ? e : Expr::make(e.kind(), e.var(), b, {});
    }
    case Kind::BoundedForall:
    case Kind::BoundedExists: {
      Expr bound = replace_rec(e.bound(), from, to);
      Expr body = e.body();
      if (!from.has_free(e.var()) && !to.has_free(e.var())) body = replace_rec(body, from, to);
      return Expr::make(e.kind(), e.var(), bound, body);
    }
    default:
      return rebuild_binary(e, replace_rec(e.left(), from, to), replace_rec(e.right(), from, to));
  }
}

}  // namespace

bool alpha_equal(const Expr& a, const Expr& b) {
  if (a == b) return true;
  Stack sa, sb;
  return alpha_rec(a, b, sa, sb);
}

std::optional<Expr> match_instance(const Expr& pattern, VarIndex v, const Expr& instance) {
  InstanceMatcher m{v, std::nullopt, {}, {}};
  if (!m.rec(pattern, instance)) return std::nullopt;
  if (m.found) return m.found;
  return var(v);
}

bool is_replacement(const Expr& before, const Expr& after, const Expr& from, const Expr& to) {
  if (!from.is_term() || !to.is_term()) return false;
  ReplacementChecker c{from, to, {}};
  return c.rec(before, after);
}

Expr replace_term(const Expr& e, const Expr& from, const Expr& to) { return replace_rec(e, from, to); }

VarIndex fresh_above(std::initializer_list<Expr> es) {
  std::int64_t m = -1;
  for (const auto& e : es) m = std::max(m, e.max_var());
  return static_cast<VarIndex>(m + 1);
}

}  // namespace bk
