#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "berrykit/proof.hpp"
#include "berrykit/search.hpp"
#include "berrykit/semantics.hpp"

namespace bk {

/// Raised when a requested size exceeds the configured feasibility cap.
class FeasibilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a budget is too small to produce any verdict at all.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultEnumerationCap = 8;

/// Every formula of length < L with free variables ⊆ {v0}, one per
/// α-class, in depth-indexed binder form (depth d binds v_{d+1}).
/// Ordered by length, then lexicographically by symbol codes.
std::vector<Expr> enumerate_formulas(std::size_t max_len, std::size_t cap = kDefaultEnumerationCap);

/// Number of formulas of each exact length 0..max_len-1 produced above.
std::vector<std::size_t> formula_counts(std::size_t max_len, std::size_t cap = kDefaultEnumerationCap);

/// Strict order used by the enumeration.
bool canonical_less(const Expr& a, const Expr& b);

// ---------------------------------------------------------------- naming

enum class BackendKind { Semantic, Prover };
const char* backend_name(BackendKind k);
std::optional<BackendKind> backend_from_name(const std::string& s);

struct NamingBackend {
  BackendKind kind = BackendKind::Semantic;
  Nat budget = 32;
  const Theory* theory = &Theory::q();  // prover backend only
};

struct NameOutcome {
  enum class Status { Names, Nothing, Unknown } status = Status::Unknown;
  Nat number = 0;
  std::optional<Derivation> derivation;  // prover backend, Names only
};

/// Which number, if any, μ names under the backend. The prover backend
/// screens candidates semantically first, which is exact for sound
/// theories such as Q.
/// With a target, formulas that semantically name another number are
/// reported as Nothing without a proof attempt.
NameOutcome name_of(const Expr& mu, const NamingBackend& backend, std::optional<Nat> target = std::nullopt);

struct BerryWitness {
  Expr formula;
  std::optional<Derivation> derivation;
  std::size_t namers = 0;  // how many enumerated formulas name this number
};

struct BerryReport {
  std::size_t max_len = 0;
  NamingBackend backend;
  std::size_t formulas = 0;
  std::size_t unknown = 0;
  std::map<Nat, BerryWitness> table;  // first namer in canonical order
  Nat n = 0;                          // least number without a namer

  [[nodiscard]] nlohmann::json to_json() const;
};

/// Least number not named by any formula of length < L.
/// Throws FeasibilityError above the cap and BudgetError when every
/// formula was undecided.
BerryReport berry_number(std::size_t max_len, const NamingBackend& backend,
                         std::size_t cap = kDefaultEnumerationCap);

struct ReportCheck {
  bool ok = true;
  std::string reason;
};

/// Re-verifies every witness through the backend and re-runs the
/// exhaustive pass (with the serial reference kernel) for n.
ReportCheck verify(const BerryReport& report, std::size_t cap = kDefaultEnumerationCap);

// ---------------------------------------------------------------- ψ and bounds

/// A formula φ(v0, v1) defining the naming relation.
struct ConcretePhi {
  Expr phi;
};

/// Stand-in for a φ too large to write down: only its length and the
/// number of free occurrences of v1 in the resulting ψ are given.
struct MockPhi {
  Nat length;
  Nat v1_occurrences;
};

using PhiProvider = std::variant<ConcretePhi, MockPhi>;

/// Throws PreconditionError when the provider is malformed.
void validate(const PhiProvider& p);

/// Length of ψ beyond the two copies of φ: ~(φ) & (∀v2)(s v2 ≤ v0 → φ').
inline constexpr Nat kPsiTemplateOverhead = 23;

struct PsiConstants {
  Nat k1 = 0;  // |ψ(v0, v1)|
  Nat k2 = 0;  // free occurrences of v1 in ψ, plus one
  Nat k = 0;   // k1·k2
  Expr t_term;  // 10·(k·k) as a term
  Nat t_value = 0;
};

struct PsiBuild {
  std::optional<Expr> psi;  // absent for MockPhi
  Nat v1_occurrences = 0;
  PsiConstants constants;
};

/// ψ(v0, v1) = ~φ(v0, v1) ∧ (∀v2 < v0)φ(v2, v1), expanded, with constants.
PsiBuild build_psi(const PhiProvider& p);

struct BoundCertificate {
  Nat k1 = 0, k2 = 0, k = 0;
  Nat t_length = 0;    // |t|, counted on the term
  Nat psi_t_length = 0;  // |ψ(v0, t)|: exact for ConcretePhi, worst case for MockPhi
  Nat t_value = 0;
  struct Verdict {
    std::string claim;
    bool holds;
  };
  std::vector<Verdict> chain;

  [[nodiscard]] bool holds() const;
  [[nodiscard]] nlohmann::json to_json() const;
};

BoundCertificate certify_bounds(const PhiProvider& p);

struct BoolosSentence {
  std::optional<Expr> sentence;  // ConcretePhi with a concrete n
  std::string text;              // rendering; "[n]" marks a symbolic numeral
  /// Symbol count (the marker counts as 0). Absent for MockPhi, whose
  /// v0 occurrences are unknown.
  std::optional<Nat> length;
};

/// ψ(n, t). With no n, the numeral is left as a placeholder.
BoolosSentence boolos_sentence(const PhiProvider& p, std::optional<Nat> n);

struct WitnessRefutation {
  bool refused = false;
  Nat refused_at = 0;  // first j with μ(n, t, j) true
  std::vector<Derivation> derivations;
};

/// Q-derivations of ~μ(n, t, j) for j = 0..N, where μ(v0, v1, v_w) is Δ0.
/// Refuses at the first j for which μ(n, t, j) is true.
WitnessRefutation refute_witnesses(const Expr& mu, Nat n, const Expr& t, Nat upto, VarIndex witness_var = 2);

}  // namespace bk
