#include "berrykit/tautology.hpp"

#include <cstdlib>
#include <unordered_map>
#include <vector>

namespace bk {

namespace {

// Tseitin encoding of ¬f followed by DPLL; f is valid iff the clauses are
// unsatisfiable.
class Solver {
 public:
  int add_formula(const Expr& f) {
    if (auto it = memo_.find(f); it != memo_.end()) return it->second;
    int out;
    switch (f.kind()) {
      case Kind::Not:
        out = -add_formula(f.operand());
        break;
      case Kind::And:
      case Kind::Or:
      case Kind::Imp:
      case Kind::Iff: {
        int a = add_formula(f.left());
        int b = add_formula(f.right());
        out = fresh();
        encode(f.kind(), out, a, b);
        break;
      }
      default:
        out = fresh();
        break;
    }
    memo_.emplace(f, out);
    return out;
  }

  void add_clause(std::vector<int> c) { clauses_.push_back(std::move(c)); }

  bool satisfiable() {
    value_.assign(static_cast<std::size_t>(vars_) + 1, 0);
    return search();
  }

 private:
  int fresh() { return ++vars_; }

  void encode(Kind k, int o, int a, int b) {
    switch (k) {
      case Kind::And:
        add_clause({-o, a});
        add_clause({-o, b});
        add_clause({o, -a, -b});
        break;
      case Kind::Or:
        add_clause({-o, a, b});
        add_clause({o, -a});
        add_clause({o, -b});
        break;
      case Kind::Imp:
        add_clause({-o, -a, b});
        add_clause({o, a});
        add_clause({o, -b});
        break;
      default:  // Iff
        add_clause({-o, -a, b});
        add_clause({-o, a, -b});
        add_clause({o, a, b});
        add_clause({o, -a, -b});
        break;
    }
  }

  int lit_value(int l) const {
    int v = value_[static_cast<std::size_t>(std::abs(l))];
    return l > 0 ? v : -v;
  }

  void assign(int l, std::vector<int>& trail) {
    value_[static_cast<std::size_t>(std::abs(l))] = l > 0 ? 1 : -1;
    trail.push_back(std::abs(l));
  }

  // Unit propagation to fixpoint; false on conflict.
  bool propagate(std::vector<int>& trail) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& c : clauses_) {
        int unassigned = 0;
        int last = 0;
        bool sat = false;
        for (int l : c) {
          int v = lit_value(l);
          if (v > 0) {
            sat = true;
            break;
          }
          if (v == 0) {
            ++unassigned;
            last = l;
          }
        }
        if (sat) continue;
        if (unassigned == 0) return false;
        if (unassigned == 1) {
          assign(last, trail);
          changed = true;
        }
      }
    }
    return true;
  }

  int pick() const {
    for (const auto& c : clauses_) {
      bool sat = false;
      int cand = 0;
      for (int l : c) {
        int v = lit_value(l);
        if (v > 0) {
          sat = true;
          break;
        }
        if (v == 0 && cand == 0) cand = l;
      }
      if (!sat && cand != 0) return cand;
    }
    return 0;
  }

  bool search() {
    std::vector<int> trail;
    if (!propagate(trail)) {
      undo(trail);
      return false;
    }
    int l = pick();
    if (l == 0) return true;
    for (int choice : {l, -l}) {
      std::vector<int> local;
      assign(choice, local);
      if (search()) return true;
      undo(local);
    }
    undo(trail);
    return false;
  }

  void undo(const std::vector<int>& trail) {
    for (int v : trail) value_[static_cast<std::size_t>(v)] = 0;
  }

  int vars_ = 0;
  std::vector<std::vector<int>> clauses_;
  std::vector<int> value_;
  std::unordered_map<Expr, int> memo_;
};

}  // namespace

bool is_tautology(const Expr& f) {
  if (!f.is_formula()) return false;
  Solver s;
  int root = s.add_formula(f);
  s.add_clause({-root});
  return !s.satisfiable();
}

}  // namespace bk
