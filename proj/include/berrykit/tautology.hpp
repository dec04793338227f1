#pragma once

#include "berrykit/expr.hpp"

namespace bk {

/// Propositional validity. Atoms are the maximal subformulas whose main
/// symbol is not a connective (atomic formulas and quantified formulas),
/// compared up to syntactic identity.
bool is_tautology(const Expr& f);

}  // namespace bk
