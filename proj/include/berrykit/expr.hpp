#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace bk {

using VarIndex = std::uint32_t;
using Nat = std::uint64_t;

// Terms: Zero Succ Add Mul Var. Formulas: everything from Eq on.
enum class Kind : std::uint8_t {
  Zero,
  Succ,
  Add,
  Mul,
  Var,
  Eq,
  Le,
  Not,
  And,
  Or,
  Imp,
  Iff,
  Forall,
  Exists,
  BoundedForall,
  BoundedExists,
};

/// Immutable, structurally shared node of the arithmetic language.
///
/// One type covers both terms and formulas; `is_term()` / `is_formula()`
/// tell them apart. Children are accessed by role:
///   Succ, Not                    -> operand()
///   Add, Mul, Eq, Le, And..Iff   -> left(), right()
///   Forall, Exists               -> var(), body()
///   BoundedForall/Exists         -> var(), bound(), body()
///   Var                          -> var()
class Expr {
 public:
  Expr() = default;

  [[nodiscard]] bool is_null() const noexcept { return node_ == nullptr; }
  [[nodiscard]] Kind kind() const noexcept;
  [[nodiscard]] VarIndex var() const noexcept;
  [[nodiscard]] const Expr& operand() const noexcept;
  [[nodiscard]] const Expr& left() const noexcept;
  [[nodiscard]] const Expr& right() const noexcept;
  [[nodiscard]] const Expr& bound() const noexcept;
  [[nodiscard]] const Expr& body() const noexcept;

  [[nodiscard]] bool is_term() const noexcept;
  [[nodiscard]] bool is_formula() const noexcept { return !is_null() && !is_term(); }
  [[nodiscard]] bool is_quantifier() const noexcept;
  [[nodiscard]] bool is_connective() const noexcept;

  /// Sorted, duplicate-free free variables.
  [[nodiscard]] const std::vector<VarIndex>& free_vars() const noexcept;
  [[nodiscard]] bool has_free(VarIndex v) const noexcept;
  [[nodiscard]] bool is_closed() const noexcept { return free_vars().empty(); }
  /// Largest variable index occurring anywhere (free or bound), or -1.
  [[nodiscard]] std::int64_t max_var() const noexcept;
  [[nodiscard]] std::size_t hash() const noexcept;
  /// Number of AST nodes; cheap size measure for heuristics.
  [[nodiscard]] std::size_t node_count() const noexcept;

  friend bool operator==(const Expr& a, const Expr& b) noexcept;
  friend bool operator!=(const Expr& a, const Expr& b) noexcept { return !(a == b); }

  // Raw constructor used by the factory functions below.
  static Expr make(Kind kind, VarIndex var, Expr a, Expr b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Terms
Expr zero();
Expr succ(Expr t);
Expr add(Expr l, Expr r);
Expr mul(Expr l, Expr r);
Expr var(VarIndex i);
Expr numeral(Nat n);
/// s^n applied to t.
Expr succ_n(Nat n, Expr t);

// Formulas
Expr eq(Expr l, Expr r);
Expr le(Expr l, Expr r);
Expr lnot(Expr f);
Expr land(Expr l, Expr r);
Expr lor(Expr l, Expr r);
Expr limp(Expr l, Expr r);
Expr liff(Expr l, Expr r);
Expr forall(VarIndex v, Expr body);
Expr exists(VarIndex v, Expr body);
Expr bounded_forall(VarIndex v, Expr bound, Expr body);
Expr bounded_exists(VarIndex v, Expr bound, Expr body);
/// Right-nested disjunction; requires a non-empty list.
Expr disjunction(const std::vector<Expr>& parts);
/// Right-nested conjunction; requires a non-empty list.
Expr conjunction(const std::vector<Expr>& parts);

/// If `t` is s^n 0, the value n.
std::optional<Nat> numeral_value(const Expr& t);
/// Peels successors: t = s^count(core).
std::pair<Nat, Expr> strip_succ(const Expr& t);

/// Number of free occurrences of v.
std::size_t count_free(const Expr& e, VarIndex v);
/// Every variable index occurring anywhere in e.
std::vector<VarIndex> all_vars(const Expr& e);

const char* kind_name(Kind k);

}  // namespace bk

template <>
struct std::hash<bk::Expr> {
  std::size_t operator()(const bk::Expr& e) const noexcept { return e.hash(); }
};
