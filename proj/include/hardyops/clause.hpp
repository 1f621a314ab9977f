#ifndef HARDYOPS_CLAUSE_HPP
#define HARDYOPS_CLAUSE_HPP

// Membership clauses over named symbols and constants, e.g.
//   "H: conj(f1) - conj(lam)*conj(u1)"   analytic
//   "C: lam*f2*v1 - mu*f1*v2"            constant
//   "Z: f*conj(f) - g*conj(g)"           zero
// Expressions: + - * ^n, parentheses, rationals, i, conj(.), pp(.) = P+, pm(.) = P-.

#include "hardyops/symbol.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace hardyops {

using Env = std::map<std::string, Poly>;

inline void bind_constant(Env& env, const std::string& name, const QC& c) { env[name] = Poly(c); }

namespace clause_detail {

struct Node {
  enum Kind { Num, Var, Add, Sub, Mul, Neg, Pow, Conj, PPlus, PMinus } kind;
  QC value;
  std::string name;
  long power = 0;
  std::shared_ptr<const Node> a, b;
};
using NodePtr = std::shared_ptr<const Node>;

inline NodePtr mk(Node::Kind k, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

class Parser {
 public:
  explicit Parser(std::string s) : s_(std::move(s)) {}
  NodePtr parse() {
    NodePtr e = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected character");
    return e;
  }

 private:
  std::string s_;
  std::size_t i_ = 0;

  [[noreturn]] void fail(const std::string& m) {
    throw ParseError("clause '" + s_ + "': " + m, i_ + 1);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  char peek() {
    skip();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  NodePtr expr() {
    NodePtr l = term();
    for (;;) {
      char c = peek();
      if (c == '+') {
        ++i_;
        l = mk(Node::Add, l, term());
      } else if (c == '-') {
        ++i_;
        l = mk(Node::Sub, l, term());
      } else {
        return l;
      }
    }
  }
  NodePtr term() {
    NodePtr l = unary();
    while (peek() == '*') {
      ++i_;
      l = mk(Node::Mul, l, unary());
    }
    return l;
  }
  NodePtr unary() {
    if (peek() == '-') {
      ++i_;
      return mk(Node::Neg, unary());
    }
    NodePtr a = atom();
    if (peek() == '^') {
      ++i_;
      skip();
      std::size_t b = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (b == i_) fail("expected exponent");
      auto n = std::make_shared<Node>();
      n->kind = Node::Pow;
      n->a = a;
      n->power = std::stol(s_.substr(b, i_ - b));
      return n;
    }
    return a;
  }
  NodePtr atom() {
    char c = peek();
    if (c == '(') {
      ++i_;
      NodePtr e = expr();
      if (peek() != ')') fail("expected ')'");
      ++i_;
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t b = i_;
      while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '/')) ++i_;
      mpq_class q(s_.substr(b, i_ - b));
      q.canonicalize();
      auto n = std::make_shared<Node>();
      n->kind = Node::Num;
      if (i_ < s_.size() && s_[i_] == 'i' && (i_ + 1 == s_.size() || !ident_char(s_[i_ + 1]))) {
        ++i_;
        n->value = QC(mpq_class(0), q);
      } else {
        n->value = QC(q);
      }
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t b = i_;
      while (i_ < s_.size() && ident_char(s_[i_])) ++i_;
      std::string id = s_.substr(b, i_ - b);
      if (id == "i") {
        auto n = std::make_shared<Node>();
        n->kind = Node::Num;
        n->value = QC::I();
        return n;
      }
      if (id == "conj" || id == "pp" || id == "pm") {
        if (peek() != '(') fail("expected '(' after " + id);
        ++i_;
        NodePtr e = expr();
        if (peek() != ')') fail("expected ')'");
        ++i_;
        return mk(id == "conj" ? Node::Conj : id == "pp" ? Node::PPlus : Node::PMinus, e);
      }
      auto n = std::make_shared<Node>();
      n->kind = Node::Var;
      n->name = id;
      return n;
    }
    fail("expected a term");
  }
};

inline Poly eval(const Node& n, const Env& env) {
  switch (n.kind) {
    case Node::Num: return Poly(n.value);
    case Node::Var: {
      auto it = env.find(n.name);
      if (it == env.end()) throw std::invalid_argument("clause: unbound name '" + n.name + "'");
      return it->second;
    }
    case Node::Add: return eval(*n.a, env) + eval(*n.b, env);
    case Node::Sub: return eval(*n.a, env) - eval(*n.b, env);
    case Node::Mul: return eval(*n.a, env) * eval(*n.b, env);
    case Node::Neg: return -eval(*n.a, env);
    case Node::Pow: return eval(*n.a, env).pow(static_cast<unsigned>(n.power));
    case Node::Conj: return conj_fn(eval(*n.a, env));
    case Node::PPlus: return project_plus(eval(*n.a, env));
    case Node::PMinus: return project_minus(eval(*n.a, env));
  }
  return {};
}

}  // namespace clause_detail

struct Clause {
  enum class Kind { Analytic, Constant, Zero };
  Kind kind = Kind::Analytic;
  std::string text;  // expression only
  clause_detail::NodePtr ast;

  Clause() = default;
  // "H: expr", "C: expr" or "Z: expr"
  explicit Clause(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw ParseError("clause '" + spec + "': missing kind", 1);
    std::string k = spec.substr(0, colon);
    k.erase(0, k.find_first_not_of(' '));
    k.erase(k.find_last_not_of(' ') + 1);
    if (k == "H") kind = Kind::Analytic;
    else if (k == "C") kind = Kind::Constant;
    else if (k == "Z") kind = Kind::Zero;
    else throw ParseError("clause '" + spec + "': unknown kind", 1);
    text = spec.substr(colon + 1);
    text.erase(0, text.find_first_not_of(' '));
    ast = clause_detail::Parser(text).parse();
  }

  Poly value(const Env& env) const { return clause_detail::eval(*ast, env); }

  bool holds(const Env& env) const {
    Poly v = value(env);
    switch (kind) {
      case Kind::Analytic: return is_analytic(v);
      case Kind::Constant: return is_constant(v).has_value();
      case Kind::Zero: return v.is_zero();
    }
    return false;
  }

  std::string spec() const {
    const char* k = kind == Kind::Analytic ? "H" : kind == Kind::Constant ? "C" : "Z";
    return std::string(k) + ": " + text;
  }
};

using ClauseList = std::vector<Clause>;

inline ClauseList clauses(std::initializer_list<const char*> specs) {
  ClauseList out;
  for (const char* s : specs) out.emplace_back(s);
  return out;
}

inline bool all_hold(const ClauseList& l, const Env& env) {
  for (const auto& c : l)
    if (!c.holds(env)) return false;
  return true;
}

// Index of the first failing clause, or -1.
inline int first_failure(const ClauseList& l, const Env& env) {
  for (std::size_t k = 0; k < l.size(); ++k)
    if (!l[k].holds(env)) return static_cast<int>(k);
  return -1;
}

// Swaps the subscripts 1 and 2 and the constants lam and mu.
inline std::string hat_text(const std::string& s) {
  std::string out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (std::isalpha(static_cast<unsigned char>(s[i]))) {
      std::size_t b = i;
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      std::string id = s.substr(b, i - b);
      if (id == "lam") id = "mu";
      else if (id == "mu") id = "lam";
      else if (id.size() >= 2 && std::isalpha(static_cast<unsigned char>(id[id.size() - 2]))) {
        char& d = id.back();
        if (d == '1') d = '2';
        else if (d == '2') d = '1';
      }
      out += id;
    } else {
      out += s[i++];
    }
  }
  return out;
}

inline Clause hat(const Clause& c) { return Clause(hat_text(c.spec())); }

inline ClauseList hat(const ClauseList& l) {
  ClauseList out;
  for (const auto& c : l) out.push_back(hat(c));
  return out;
}

inline Env symbol_env(const SymbolMatrix2& H1, const SymbolMatrix2& H2) {
  return {{"f1", H1.f}, {"u1", H1.u}, {"g1", H1.g}, {"v1", H1.v},
          {"f2", H2.f}, {"u2", H2.u}, {"g2", H2.g}, {"v2", H2.v}};
}

}  // namespace hardyops

#endif
