#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "berrykit/berry.hpp"

namespace bk::kernels {

// Each kernel has a serial reference and an OpenMP version returning
// identical results.

struct GridFailure {
  Nat length;
  Nat occurrences;
  std::size_t step;  // index of the first failed chain verdict
};

/// certify_bounds over MockPhi(len, occ) for len ∈ [len_lo, len_hi],
/// occ ∈ [occ_lo, occ_hi]. Failures are sorted by (len, occ).
std::vector<GridFailure> certify_grid_serial(Nat len_lo, Nat len_hi, Nat occ_lo, Nat occ_hi);
std::vector<GridFailure> certify_grid_parallel(Nat len_lo, Nat len_hi, Nat occ_lo, Nat occ_hi);

/// Least k in [lo, hi] violating 18k + 2k² < 10k², if any.
std::optional<Nat> arithmetic_leg_serial(Nat lo, Nat hi);
std::optional<Nat> arithmetic_leg_parallel(Nat lo, Nat hi);

std::vector<NameOutcome> name_table_serial(const std::vector<Expr>& formulas, const NamingBackend& backend);
std::vector<NameOutcome> name_table_parallel(const std::vector<Expr>& formulas, const NamingBackend& backend);

/// Index of the first formula (in the given order) that names i under the
/// backend, and whether any formula was undecided.
struct NamerSearch {
  std::optional<std::size_t> index;
  std::optional<Derivation> derivation;
  bool any_unknown = false;
};
NamerSearch first_namer_serial(const std::vector<Expr>& formulas, Nat i, const NamingBackend& backend);
NamerSearch first_namer_parallel(const std::vector<Expr>& formulas, Nat i, const NamingBackend& backend);

}  // namespace bk::kernels
