#include "berrykit/expr.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <mutex>
#include <stdexcept>

namespace bk {

struct Expr::Node {
  Kind kind;
  VarIndex var = 0;
  Expr a;
  Expr b;
  std::size_t hash = 0;
  std::size_t nodes = 1;
  std::int64_t max_var = -1;
  std::vector<VarIndex> free;

  Node() = default;
  Node(const Node&) = delete;
  Node& operator=(const Node&) = delete;
  // Long successor chains would otherwise be released recursively.
  ~Node() {
    std::vector<std::shared_ptr<const Node>> pending;
    auto detach = [&pending](Expr& e) {
      if (e.node_ && e.node_.use_count() == 1) pending.push_back(std::move(e.node_));
    };
    detach(a);
    detach(b);
    while (!pending.empty()) {
      auto n = std::move(pending.back());
      pending.pop_back();
      auto* m = const_cast<Node*>(n.get());
      detach(m->a);
      detach(m->b);
    }
  }
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::vector<VarIndex> merge(const std::vector<VarIndex>& x, const std::vector<VarIndex>& y) {
  if (x.empty()) return y;
  if (y.empty()) return x;
  std::vector<VarIndex> out;
  out.reserve(x.size() + y.size());
  std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out;
}

std::vector<VarIndex> without(std::vector<VarIndex> v, VarIndex x) {
  v.erase(std::remove(v.begin(), v.end(), x), v.end());
  return v;
}

const Expr& null_expr() {
  static const Expr e;
  return e;
}

}  // namespace

Expr Expr::make(Kind kind, VarIndex v, Expr a, Expr b) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->var = v;
  std::size_t h = mix(static_cast<std::size_t>(kind) * 1315423911u, v);
  if (!a.is_null()) {
    h = mix(h, a.hash());
    n->nodes += a.node_count();
    n->max_var = std::max(n->max_var, a.max_var());
  }
  if (!b.is_null()) {
    h = mix(h, b.hash());
    n->nodes += b.node_count();
    n->max_var = std::max(n->max_var, b.max_var());
  }
  n->hash = h;
  switch (kind) {
    case Kind::Var:
      n->free = {v};
      n->max_var = std::max<std::int64_t>(n->max_var, v);
      break;
    case Kind::Forall:
    case Kind::Exists:
      n->free = without(a.free_vars(), v);
      n->max_var = std::max<std::int64_t>(n->max_var, v);
      break;
    case Kind::BoundedForall:
    case Kind::BoundedExists:
      // a = bound (outside the binder's scope), b = body
      n->free = merge(a.free_vars(), without(b.free_vars(), v));
      n->max_var = std::max<std::int64_t>(n->max_var, v);
      break;
    default:
      if (!a.is_null() && !b.is_null()) {
        n->free = merge(a.free_vars(), b.free_vars());
      } else if (!a.is_null()) {
        n->free = a.free_vars();
      }
  }
  n->a = std::move(a);
  n->b = std::move(b);
  return Expr(std::move(n));
}

Kind Expr::kind() const noexcept { return node_->kind; }
VarIndex Expr::var() const noexcept { return node_->var; }
const Expr& Expr::operand() const noexcept { return node_->a; }
const Expr& Expr::left() const noexcept { return node_->a; }
const Expr& Expr::right() const noexcept { return node_->b; }
const Expr& Expr::bound() const noexcept { return node_->a; }

const Expr& Expr::body() const noexcept {
  switch (node_->kind) {
    case Kind::Forall:
    case Kind::Exists:
      return node_->a;
    case Kind::BoundedForall:
    case Kind::BoundedExists:
      return node_->b;
    default:
      return null_expr();
  }
}

bool Expr::is_term() const noexcept {
  return node_ && node_->kind <= Kind::Var;
}

bool Expr::is_quantifier() const noexcept {
  if (!node_) return false;
  auto k = node_->kind;
  return k == Kind::Forall || k == Kind::Exists || k == Kind::BoundedForall ||
         k == Kind::BoundedExists;
}

bool Expr::is_connective() const noexcept {
  if (!node_) return false;
  auto k = node_->kind;
  return k == Kind::Not || k == Kind::And || k == Kind::Or || k == Kind::Imp || k == Kind::Iff;
}

const std::vector<VarIndex>& Expr::free_vars() const noexcept {
  static const std::vector<VarIndex> none;
  return node_ ? node_->free : none;
}

bool Expr::has_free(VarIndex v) const noexcept {
  const auto& f = free_vars();
  return std::binary_search(f.begin(), f.end(), v);
}

std::int64_t Expr::max_var() const noexcept { return node_ ? node_->max_var : -1; }
std::size_t Expr::hash() const noexcept { return node_ ? node_->hash : 0; }
std::size_t Expr::node_count() const noexcept { return node_ ? node_->nodes : 0; }

bool operator==(const Expr& x, const Expr& y) noexcept {
  const Expr* a = &x;
  const Expr* b = &y;
  // Iterate down unary spines (long numerals) instead of recursing.
  while (true) {
    if (a->node_ == b->node_) return true;
    if (!a->node_ || !b->node_) return false;
    if (a->node_->hash != b->node_->hash || a->node_->kind != b->node_->kind ||
        a->node_->var != b->node_->var || a->node_->nodes != b->node_->nodes) {
      return false;
    }
    if (!a->node_->b.is_null()) {
      if (!(a->node_->b == b->node_->b)) return false;
    }
    a = &a->node_->a;
    b = &b->node_->a;
  }
}

Expr zero() {
  static const Expr z = Expr::make(Kind::Zero, 0, {}, {});
  return z;
}
Expr succ(Expr t) { return Expr::make(Kind::Succ, 0, std::move(t), {}); }
Expr add(Expr l, Expr r) { return Expr::make(Kind::Add, 0, std::move(l), std::move(r)); }
Expr mul(Expr l, Expr r) { return Expr::make(Kind::Mul, 0, std::move(l), std::move(r)); }
Expr var(VarIndex i) { return Expr::make(Kind::Var, i, {}, {}); }

Expr succ_n(Nat n, Expr t) {
  for (Nat i = 0; i < n; ++i) t = succ(std::move(t));
  return t;
}

Expr numeral(Nat n) {
  // Numerals share their spines; long ones are built once.
  static constexpr Nat kCached = 1u << 17;
  if (n >= kCached) return succ_n(n, zero());
  static std::mutex mu;
  static std::vector<Expr> cache{zero()};
  std::lock_guard lock(mu);
  while (cache.size() <= n) cache.push_back(succ(cache.back()));
  return cache[n];
}

Expr eq(Expr l, Expr r) { return Expr::make(Kind::Eq, 0, std::move(l), std::move(r)); }
Expr le(Expr l, Expr r) { return Expr::make(Kind::Le, 0, std::move(l), std::move(r)); }
Expr lnot(Expr f) { return Expr::make(Kind::Not, 0, std::move(f), {}); }
Expr land(Expr l, Expr r) { return Expr::make(Kind::And, 0, std::move(l), std::move(r)); }
Expr lor(Expr l, Expr r) { return Expr::make(Kind::Or, 0, std::move(l), std::move(r)); }
Expr limp(Expr l, Expr r) { return Expr::make(Kind::Imp, 0, std::move(l), std::move(r)); }
Expr liff(Expr l, Expr r) { return Expr::make(Kind::Iff, 0, std::move(l), std::move(r)); }
Expr forall(VarIndex v, Expr body) { return Expr::make(Kind::Forall, v, std::move(body), {}); }
Expr exists(VarIndex v, Expr body) { return Expr::make(Kind::Exists, v, std::move(body), {}); }
Expr bounded_forall(VarIndex v, Expr bound, Expr body) {
  return Expr::make(Kind::BoundedForall, v, std::move(bound), std::move(body));
}
Expr bounded_exists(VarIndex v, Expr bound, Expr body) {
  return Expr::make(Kind::BoundedExists, v, std::move(bound), std::move(body));
}

Expr disjunction(const std::vector<Expr>& parts) {
  if (parts.empty()) throw std::invalid_argument("empty disjunction");
  Expr acc = parts.back();
  for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it) acc = lor(*it, acc);
  return acc;
}

Expr conjunction(const std::vector<Expr>& parts) {
  if (parts.empty()) throw std::invalid_argument("empty conjunction");
  Expr acc = parts.back();
  for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it) acc = land(*it, acc);
  return acc;
}

std::optional<Nat> numeral_value(const Expr& t) {
  auto [n, core] = strip_succ(t);
  if (core.kind() == Kind::Zero) return n;
  return std::nullopt;
}

std::pair<Nat, Expr> strip_succ(const Expr& t) {
  Nat n = 0;
  const Expr* cur = &t;
  while (cur->kind() == Kind::Succ) {
    ++n;
    cur = &cur->operand();
  }
  return {n, *cur};
}

namespace {

void count_free_rec(const Expr& e, VarIndex v, std::size_t& n) {
  if (!e.has_free(v)) return;
  switch (e.kind()) {
    case Kind::Var:
      ++n;
      return;
    case Kind::Succ:
    case Kind::Not:
    case Kind::Forall:
    case Kind::Exists:
      // binder case already excluded by has_free
      count_free_rec(e.kind() == Kind::Succ || e.kind() == Kind::Not ? e.operand() : e.body(), v, n);
      return;
    case Kind::BoundedForall:
    case Kind::BoundedExists:
      count_free_rec(e.bound(), v, n);
      if (e.var() != v) count_free_rec(e.body(), v, n);
      return;
    default:
      count_free_rec(e.left(), v, n);
      count_free_rec(e.right(), v, n);
  }
}

void collect_vars(const Expr& e, std::set<VarIndex>& out) {
  switch (e.kind()) {
    case Kind::Zero:
      return;
    case Kind::Var:
      out.insert(e.var());
      return;
    case Kind::Succ:
    case Kind::Not:
      collect_vars(e.operand(), out);
      return;
    case Kind::Forall:
    case Kind::Exists:
      out.insert(e.var());
      collect_vars(e.body(), out);
      return;
    case Kind::BoundedForall:
    case Kind::BoundedExists:
      out.insert(e.var());
      collect_vars(e.bound(), out);
      collect_vars(e.body(), out);
      return;
    default:
      collect_vars(e.left(), out);
      collect_vars(e.right(), out);
  }
}

}  // namespace

std::size_t count_free(const Expr& e, VarIndex v) {
  std::size_t n = 0;
  count_free_rec(e, v, n);
  return n;
}

std::vector<VarIndex> all_vars(const Expr& e) {
  std::set<VarIndex> s;
  if (e.max_var() >= 0) collect_vars(e, s);
  return {s.begin(), s.end()};
}

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Zero: return "zero";
    case Kind::Succ: return "succ";
    case Kind::Add: return "add";
    case Kind::Mul: return "mul";
    case Kind::Var: return "var";
    case Kind::Eq: return "eq";
    case Kind::Le: return "le";
    case Kind::Not: return "not";
    case Kind::And: return "and";
    case Kind::Or: return "or";
    case Kind::Imp: return "imp";
    case Kind::Iff: return "iff";
    case Kind::Forall: return "all";
    case Kind::Exists: return "ex";
    case Kind::BoundedForall: return "ball";
    case Kind::BoundedExists: return "bex";
  }
  return "?";
}

}  // namespace bk
