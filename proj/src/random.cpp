#include "berrykit/random.hpp"

#include <algorithm>

namespace bk {

std::size_t RandomSyntax::pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

Expr RandomSyntax::term(int depth, const std::vector<VarIndex>& vars) {
  if (depth <= 0 || pick(3) == 0) {
    if (!vars.empty() && pick(2) == 0) return var(vars[pick(vars.size())]);
    return numeral(pick(max_numeral + 1));
  }
  switch (pick(3)) {
    case 0: return succ(term(depth - 1, vars));
    case 1: return add(term(depth - 1, vars), term(depth - 1, vars));
    default: return mul(term(depth - 1, vars), term(depth - 1, vars));
  }
}

namespace {

VarIndex next_var(const std::vector<VarIndex>& vars) {
  return vars.empty() ? 0 : *std::max_element(vars.begin(), vars.end()) + 1;
}

}  // namespace

Expr RandomSyntax::formula(int depth, std::vector<VarIndex> vars) {
  if (depth <= 0 || pick(4) == 0) {
    Expr l = term(2, vars), r = term(2, vars);
    return pick(2) ? eq(l, r) : le(l, r);
  }
  switch (pick(8)) {
    case 0: return lnot(formula(depth - 1, vars));
    case 1: return land(formula(depth - 1, vars), formula(depth - 1, vars));
    case 2: return lor(formula(depth - 1, vars), formula(depth - 1, vars));
    case 3: return limp(formula(depth - 1, vars), formula(depth - 1, vars));
    case 4: return liff(formula(depth - 1, vars), formula(depth - 1, vars));
    default: {
      const VarIndex x = next_var(vars);
      std::vector<VarIndex> inner = vars;
      inner.push_back(x);
      Expr body = formula(depth - 1, inner);
      switch (pick(4)) {
        case 0: return forall(x, body);
        case 1: return exists(x, body);
        case 2: return bounded_forall(x, term(1, vars), body);
        default: return bounded_exists(x, term(1, vars), body);
      }
    }
  }
}

Expr RandomSyntax::delta0(int depth, std::vector<VarIndex> vars) {
  if (depth <= 0 || pick(4) == 0) {
    Expr l = term(2, vars), r = term(2, vars);
    return pick(2) ? eq(l, r) : le(l, r);
  }
  switch (pick(7)) {
    case 0: return lnot(delta0(depth - 1, vars));
    case 1: return land(delta0(depth - 1, vars), delta0(depth - 1, vars));
    case 2: return lor(delta0(depth - 1, vars), delta0(depth - 1, vars));
    case 3: return limp(delta0(depth - 1, vars), delta0(depth - 1, vars));
    case 4: return liff(delta0(depth - 1, vars), delta0(depth - 1, vars));
    default: {
      const VarIndex x = next_var(vars);
      Expr bound = term(1, vars);
      std::vector<VarIndex> inner = vars;
      inner.push_back(x);
      Expr body = delta0(depth - 1, inner);
      return pick(2) ? bounded_forall(x, bound, body) : bounded_exists(x, bound, body);
    }
  }
}

Expr RandomSyntax::delta0_sentence(int depth) { return delta0(depth, {}); }

}  // namespace bk
