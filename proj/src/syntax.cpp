#include "berrykit/syntax.hpp"

#include <cctype>
#include <optional>
#include <set>
#include <sstream>

#include "berrykit/transform.hpp"

namespace bk {

std::string token_text(const Token& t) {
  switch (t.sym) {
    case Sym::Zero: return "0";
    case Sym::S: return "s";
    case Sym::Plus: return "+";
    case Sym::Times: return "*";
    case Sym::Eq: return "=";
    case Sym::Le: return "<=";
    case Sym::Not: return "~";
    case Sym::And: return "&";
    case Sym::Or: return "|";
    case Sym::Imp: return "->";
    case Sym::Iff: return "<->";
    case Sym::All: return "A";
    case Sym::Ex: return "E";
    case Sym::LParen: return "(";
    case Sym::RParen: return ")";
    case Sym::Var: return "v" + std::to_string(t.var);
    case Sym::Lt: return "<";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto fail = [&](const std::string& msg) {
    throw ParseError(out.size() + 1, "token", "lexical error at character " + std::to_string(i + 1) + ": " + msg);
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    switch (c) {
      case '0': out.push_back({Sym::Zero}); ++i; continue;
      case 's': out.push_back({Sym::S}); ++i; continue;
      case '+': out.push_back({Sym::Plus}); ++i; continue;
      case '*': out.push_back({Sym::Times}); ++i; continue;
      case '=': out.push_back({Sym::Eq}); ++i; continue;
      case '~': out.push_back({Sym::Not}); ++i; continue;
      case '&': out.push_back({Sym::And}); ++i; continue;
      case '|': out.push_back({Sym::Or}); ++i; continue;
      case 'A': out.push_back({Sym::All}); ++i; continue;
      case 'E': out.push_back({Sym::Ex}); ++i; continue;
      case '(': out.push_back({Sym::LParen}); ++i; continue;
      case ')': out.push_back({Sym::RParen}); ++i; continue;
      case '-':
        if (text.substr(i, 2) == "->") {
          out.push_back({Sym::Imp});
          i += 2;
          continue;
        }
        fail("expected '->'");
        break;
      case '<':
        if (text.substr(i, 3) == "<->") {
          out.push_back({Sym::Iff});
          i += 3;
        } else if (text.substr(i, 2) == "<=") {
          out.push_back({Sym::Le});
          i += 2;
        } else {
          out.push_back({Sym::Lt});
          i += 1;
        }
        continue;
      case 'v': {
        std::size_t j = i + 1;
        if (j >= text.size() || !std::isdigit(static_cast<unsigned char>(text[j]))) fail("variable needs an index");
        VarIndex idx = 0;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
          idx = idx * 10 + static_cast<VarIndex>(text[j] - '0');
          ++j;
        }
        out.push_back({Sym::Var, idx});
        i = j;
        continue;
      }
      default:
        fail(std::string("unexpected character '") + c + "'");
    }
  }
  return out;
}

namespace {

// Non-throwing recursive descent with backtracking; remembers the furthest
// failure for diagnostics.
class Parser {
 public:
  explicit Parser(const std::vector<Token>& toks) : toks_(toks) {}

  std::optional<Expr> formula(std::size_t& p) {
    if (at(p, Sym::Not)) {
      std::size_t q = p + 1;
      if (!expect(q, Sym::LParen)) return std::nullopt;
      auto f = formula(q);
      if (!f || !expect(q, Sym::RParen)) return std::nullopt;
      p = q;
      return lnot(*f);
    }
    if (at(p, Sym::LParen) && (at(p + 1, Sym::All) || at(p + 1, Sym::Ex))) {
      return quantifier(p);
    }
    if (at(p, Sym::LParen)) {
      std::size_t q = p + 1;
      if (auto l = formula(q); l && expect(q, Sym::RParen)) {
        std::size_t after_left = q;
        if (auto op = binop(q)) {
          if (expect(q, Sym::LParen)) {
            if (auto r = formula(q); r && expect(q, Sym::RParen)) {
              p = q;
              return Expr::make(*op, 0, *l, *r);
            }
          }
        } else {
          // redundant outer parentheses
          p = after_left;
          return l;
        }
      }
    }
    return atom(p);
  }

  std::optional<Expr> term(std::size_t& p) {
    std::size_t q = p;
    auto l = unary(q);
    if (!l) return std::nullopt;
    if (at(q, Sym::Plus) || at(q, Sym::Times)) {
      Kind k = at(q, Sym::Plus) ? Kind::Add : Kind::Mul;
      ++q;
      auto r = unary(q);
      if (!r) return std::nullopt;
      p = q;
      return Expr::make(k, 0, *l, *r);
    }
    p = q;
    return l;
  }

  std::size_t furthest() const { return furthest_; }
  std::string expected() const {
    std::string s;
    for (const auto& e : expected_) {
      if (!s.empty()) s += ", ";
      s += e;
    }
    return s;
  }
  void note(std::size_t p, const std::string& what) {
    if (p > furthest_) {
      furthest_ = p;
      expected_.clear();
    }
    if (p == furthest_) expected_.insert(what);
  }

 private:
  bool at(std::size_t p, Sym s) const { return p < toks_.size() && toks_[p].sym == s; }

  bool expect(std::size_t& p, Sym s) {
    if (at(p, s)) {
      ++p;
      return true;
    }
    note(p, "'" + token_text({s}) + "'");
    return false;
  }

  std::optional<Kind> binop(std::size_t& p) {
    if (p < toks_.size()) {
      switch (toks_[p].sym) {
        case Sym::And: ++p; return Kind::And;
        case Sym::Or: ++p; return Kind::Or;
        case Sym::Imp: ++p; return Kind::Imp;
        case Sym::Iff: ++p; return Kind::Iff;
        default: break;
      }
    }
    note(p, "connective");
    return std::nullopt;
  }

  std::optional<Expr> quantifier(std::size_t& p) {
    std::size_t q = p + 1;
    bool universal = at(q, Sym::All);
    ++q;
    if (!at(q, Sym::Var)) {
      note(q, "variable");
      return std::nullopt;
    }
    VarIndex v = toks_[q].var;
    ++q;
    std::optional<Expr> bound;
    if (at(q, Sym::Lt)) {
      ++q;
      bound = term(q);
      if (!bound) return std::nullopt;
    }
    if (!expect(q, Sym::RParen) || !expect(q, Sym::LParen)) return std::nullopt;
    auto body = formula(q);
    if (!body || !expect(q, Sym::RParen)) return std::nullopt;
    p = q;
    if (bound) return universal ? bounded_forall(v, *bound, *body) : bounded_exists(v, *bound, *body);
    return universal ? forall(v, *body) : exists(v, *body);
  }

  std::optional<Expr> atom(std::size_t& p) {
    std::size_t q = p;
    auto l = term(q);
    if (!l) return std::nullopt;
    Kind k;
    if (at(q, Sym::Eq)) {
      k = Kind::Eq;
    } else if (at(q, Sym::Le)) {
      k = Kind::Le;
    } else {
      note(q, "'=' or '<='");
      return std::nullopt;
    }
    ++q;
    auto r = term(q);
    if (!r) return std::nullopt;
    p = q;
    return Expr::make(k, 0, *l, *r);
  }

  std::optional<Expr> unary(std::size_t& p) {
    if (p >= toks_.size()) {
      note(p, "term");
      return std::nullopt;
    }
    switch (toks_[p].sym) {
      case Sym::Zero: ++p; return zero();
      case Sym::Var: return var(toks_[p++].var);
      case Sym::S: {
        std::size_t q = p + 1;
        auto a = unary(q);
        if (!a) return std::nullopt;
        p = q;
        return succ(*a);
      }
      case Sym::LParen: {
        std::size_t q = p + 1;
        auto t = term(q);
        if (!t || !expect(q, Sym::RParen)) return std::nullopt;
        p = q;
        return t;
      }
      default:
        note(p, "term");
        return std::nullopt;
    }
  }

  const std::vector<Token>& toks_;
  std::size_t furthest_ = 0;
  std::set<std::string> expected_;
};

[[noreturn]] void raise(const Parser& ps, const std::vector<Token>& toks) {
  std::size_t pos = ps.furthest();
  std::ostringstream msg;
  if (toks.empty()) {
    throw ParseError(0, "term or formula", "syntax error: empty input");
  }
  if (pos >= toks.size()) {
    msg << "syntax error: unexpected end of input after token " << toks.size() << " ('"
        << token_text(toks.back()) << "'), expected " << ps.expected();
    throw ParseError(toks.size(), ps.expected(), msg.str());
  }
  msg << "syntax error at token " << pos + 1 << " ('" << token_text(toks[pos]) << "'), expected "
      << ps.expected();
  throw ParseError(pos + 1, ps.expected(), msg.str());
}

}  // namespace

Expr parse_tokens(const std::vector<Token>& toks) {
  Parser ps(toks);
  std::size_t p = 0;
  if (auto f = ps.formula(p); f && p == toks.size()) return *f;
  if (p < toks.size() && p > 0) ps.note(p, "end of input");
  p = 0;
  if (auto t = ps.term(p); t && p == toks.size()) return *t;
  if (p < toks.size() && p > 0) ps.note(p, "end of input");
  raise(ps, toks);
}

Expr parse(std::string_view text) { return parse_tokens(tokenize(text)); }

Expr parse_formula(std::string_view text) {
  Expr e = parse(text);
  if (!e.is_formula()) throw ParseError(1, "formula", "expected a formula, got a term");
  return e;
}

namespace {

template <class Sink>
void emit(const Expr& e, Sink& out) {
  auto paren_term = [&](const Expr& t) {
    bool binary = t.kind() == Kind::Add || t.kind() == Kind::Mul;
    if (binary) out(Token{Sym::LParen});
    emit(t, out);
    if (binary) out(Token{Sym::RParen});
  };
  auto wrapped = [&](const Expr& f) {
    out(Token{Sym::LParen});
    emit(f, out);
    out(Token{Sym::RParen});
  };
  switch (e.kind()) {
    case Kind::Zero: out(Token{Sym::Zero}); return;
    case Kind::Var: out(Token{Sym::Var, e.var()}); return;
    case Kind::Succ: {
      // iterate numeral spines
      const Expr* cur = &e;
      while (cur->kind() == Kind::Succ) {
        out(Token{Sym::S});
        cur = &cur->operand();
      }
      paren_term(*cur);
      return;
    }
    case Kind::Add:
    case Kind::Mul:
      paren_term(e.left());
      out(Token{e.kind() == Kind::Add ? Sym::Plus : Sym::Times});
      paren_term(e.right());
      return;
    case Kind::Eq:
    case Kind::Le:
      emit(e.left(), out);
      out(Token{e.kind() == Kind::Eq ? Sym::Eq : Sym::Le});
      emit(e.right(), out);
      return;
    case Kind::Not:
      out(Token{Sym::Not});
      wrapped(e.operand());
      return;
    case Kind::And:
    case Kind::Or:
    case Kind::Imp:
    case Kind::Iff: {
      static constexpr Sym ops[] = {Sym::And, Sym::Or, Sym::Imp, Sym::Iff};
      wrapped(e.left());
      out(Token{ops[static_cast<int>(e.kind()) - static_cast<int>(Kind::And)]});
      wrapped(e.right());
      return;
    }
    case Kind::Forall:
    case Kind::Exists:
      out(Token{Sym::LParen});
      out(Token{e.kind() == Kind::Forall ? Sym::All : Sym::Ex});
      out(Token{Sym::Var, e.var()});
      out(Token{Sym::RParen});
      wrapped(e.body());
      return;
    case Kind::BoundedForall:
    case Kind::BoundedExists:
      out(Token{Sym::LParen});
      out(Token{e.kind() == Kind::BoundedForall ? Sym::All : Sym::Ex});
      out(Token{Sym::Var, e.var()});
      out(Token{Sym::Lt});
      emit(e.bound(), out);
      out(Token{Sym::RParen});
      wrapped(e.body());
      return;
  }
}

}  // namespace

std::vector<Token> tokens_of(const Expr& e, bool expand) {
  std::vector<Token> out;
  auto sink = [&](Token t) { out.push_back(t); };
  if (expand) {
    emit(expand_bounded(e), sink);
  } else {
    emit(e, sink);
  }
  return out;
}

std::string render(const Expr& e) {
  std::string s;
  auto sink = [&](Token t) {
    if (!s.empty()) s += ' ';
    s += token_text(t);
  };
  emit(e, sink);
  return s;
}

std::size_t length(const Expr& e) {
  std::size_t n = 0;
  auto sink = [&](Token) { ++n; };
  emit(expand_bounded(e), sink);
  return n;
}

nlohmann::json to_json(const Expr& e) {
  using nlohmann::json;
  switch (e.kind()) {
    case Kind::Zero: return json{{"k", "zero"}};
    case Kind::Var: return json{{"k", "var"}, {"i", e.var()}};
    case Kind::Succ:
    case Kind::Not:
      return json{{"k", kind_name(e.kind())}, {"a", to_json(e.operand())}};
    case Kind::Forall:
    case Kind::Exists:
      return json{{"k", kind_name(e.kind())}, {"i", e.var()}, {"a", to_json(e.body())}};
    case Kind::BoundedForall:
    case Kind::BoundedExists:
      return json{{"k", kind_name(e.kind())}, {"i", e.var()}, {"b", to_json(e.bound())}, {"a", to_json(e.body())}};
    default:
      return json{{"k", kind_name(e.kind())}, {"l", to_json(e.left())}, {"r", to_json(e.right())}};
  }
}

Expr from_json(const nlohmann::json& j) {
  const std::string k = j.at("k").get<std::string>();
  auto sub = [&](const char* key) { return from_json(j.at(key)); };
  auto idx = [&] { return j.at("i").get<VarIndex>(); };
  if (k == "zero") return zero();
  if (k == "var") return var(idx());
  if (k == "succ") return succ(sub("a"));
  if (k == "not") return lnot(sub("a"));
  if (k == "all") return forall(idx(), sub("a"));
  if (k == "ex") return exists(idx(), sub("a"));
  if (k == "ball") return bounded_forall(idx(), sub("b"), sub("a"));
  if (k == "bex") return bounded_exists(idx(), sub("b"), sub("a"));
  static const std::pair<const char*, Kind> binary[] = {
      {"add", Kind::Add}, {"mul", Kind::Mul}, {"eq", Kind::Eq},   {"le", Kind::Le},
      {"and", Kind::And}, {"or", Kind::Or},   {"imp", Kind::Imp}, {"iff", Kind::Iff}};
  for (const auto& [name, kind] : binary) {
    if (k == name) {
      Expr l = sub("l");
      Expr r = sub("r");
      bool term_args = kind == Kind::Add || kind == Kind::Mul || kind == Kind::Eq || kind == Kind::Le;
      if (term_args != (l.is_term() && r.is_term())) throw std::invalid_argument("ill-sorted JSON node '" + k + "'");
      return Expr::make(kind, 0, l, r);
    }
  }
  throw std::invalid_argument("unknown JSON node kind '" + k + "'");
}

}  // namespace bk
