#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "berrykit/expr.hpp"

namespace bk {

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Capture-avoiding substitution of `t` for the free occurrences of `v`.
/// Binders that would capture a variable of `t` are renamed to the least
/// index not otherwise in use.
Expr substitute(const Expr& e, VarIndex v, const Expr& t);

/// Replaces (∀x<b)μ by ∀x(s x ≤ b → μ) and (∃x<b)μ by ∃x(s x ≤ b ∧ μ),
/// renaming x first if it occurs in b. Idempotent.
Expr expand_bounded(const Expr& e);

/// Bound-variable renaming into the first `j` variables (v0..v_{j-1}).
/// Returns `f` unchanged when it already complies; otherwise binders are
/// renamed by nesting depth (depth d binds v_{d+1}).
/// Throws PreconditionError when f has a free variable other than v0 or
/// its quantifier nesting does not fit below j.
Expr rename_to_first(const Expr& f, std::size_t j);

/// Depth-indexed bound-variable normal form (binder at depth d binds
/// v_{d+1}). Requires free variables ⊆ {v0}.
Expr binder_normal_form(const Expr& f);

enum class SyntacticClass { Delta0, Sigma1, SigmaSyntactic, Other };
const char* class_name(SyntacticClass c);
/// Delta0 ⊂ Sigma1 ⊂ SigmaSyntactic.
bool class_within(SyntacticClass have, SyntacticClass want);
SyntacticClass classify(const Expr& f);

/// Recognises the expanded bounded forms ∀x(s x ≤ b → μ) / ∃x(s x ≤ b ∧ μ)
/// with x not free in b.
struct BoundedView {
  bool universal;
  VarIndex var;
  Expr bound;
  Expr body;
};
std::optional<BoundedView> as_bounded(const Expr& f);

bool alpha_equal(const Expr& a, const Expr& b);

/// If `instance` is (up to renaming of bound variables) `pattern` with some
/// term substituted for the free occurrences of `v` and no capture, returns
/// that term. When `v` does not occur free in `pattern` and the two are
/// alpha-equal, returns `v` itself.
std::optional<Expr> match_instance(const Expr& pattern, VarIndex v, const Expr& instance);

/// True when `after` arises from `before` by replacing some occurrences of
/// the term `from` with the term `to`, none of them under a binder that
/// captures a variable of `from` or `to`.
bool is_replacement(const Expr& before, const Expr& after, const Expr& from, const Expr& to);

/// Replaces every occurrence of term `from` by `to` outside binders that
/// would capture; occurrences under such binders are left alone.
Expr replace_term(const Expr& e, const Expr& from, const Expr& to);

/// Least variable index > every index occurring in the given expressions.
VarIndex fresh_above(std::initializer_list<Expr> es);

}  // namespace bk
