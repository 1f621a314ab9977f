#ifndef HARDYOPS_COMMUTE_HPP
#define HARDYOPS_COMMUTE_HPP

// Commutation of two GSIOs.  The direct check tests three equations:
//   outer:  p1 (x) q2 - r1 (x) s2 = p2 (x) q1 - r2 (x) s1
//   upper:  Hankel-Toeplitz identity on the H2 -> H2 corner
//   lower:  Hankel-Toeplitz identity on the H2perp -> H2perp corner
// The classifier instead solves the rank structure of the outer equation and
// evaluates membership clauses cell by cell.

#include "hardyops/clause.hpp"
#include "hardyops/operators.hpp"
#include "hardyops/ranktests.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hardyops {

using Constants = std::map<std::string, QC>;

struct CaseMatch {
  int rank = 0;
  std::string label;  // "(5)", "(2hat)", "rank2"
  std::string cell;   // "L2+R1"
  Constants constants;
  std::optional<bool> reference_list_holds;  // rank one: transcribed reference list
};

struct CommuteClassification {
  std::size_t lhs_rank = 0, rhs_rank = 0;
  std::vector<CaseMatch> cases;
};

struct CommuteVerdict {
  bool commute = false;     // direct check
  bool classified = false;  // classifier found a case
  std::size_t lhs_rank = 0, rhs_rank = 0;
  std::vector<std::string> violated;
  std::vector<CaseMatch> cases;

  bool consistent() const { return commute == classified; }
  std::optional<std::size_t> rank_class() const {
    if (lhs_rank != rhs_rank) return std::nullopt;
    return lhs_rank;
  }
};

// ---------------------------------------------------------------------------
// direct check

inline Op commute_upper_operator(const SymbolMatrix2& H1, const SymbolMatrix2& H2) {
  const Poly f1b = conj_fn(H1.f), f2b = conj_fn(H2.f);
  const Poly u1b = conj_fn(H1.u), u2b = conj_fn(H2.u);
  const Poly v1b = conj_fn(H1.v), v2b = conj_fn(H2.v);
  return hankel(u2b) * toeplitz(f1b) + dual_toeplitz(v2b) * hankel(u1b) -
         hankel(u1b) * toeplitz(f2b) - dual_toeplitz(v1b) * hankel(u2b);
}

inline Op commute_lower_operator(const SymbolMatrix2& H1, const SymbolMatrix2& H2) {
  return hankel(H1.g) * toeplitz(H2.f) + dual_toeplitz(H1.v) * hankel(H2.g) -
         hankel(H2.g) * toeplitz(H1.f) - dual_toeplitz(H2.v) * hankel(H1.g);
}

// Names of the failing equations; empty iff the pair commutes.
inline std::vector<std::string> commute_violations(const SymbolMatrix2& H1, const SymbolMatrix2& H2) {
  std::vector<std::string> out;
  if (!outer_equal(ww_lhs(H1, H2), ww_rhs(H1, H2))) out.push_back("outer");
  if (!op_zero_test(commute_upper_operator(H1, H2))) out.push_back("upper");
  if (!op_zero_test(commute_lower_operator(H1, H2))) out.push_back("lower");
  return out;
}

inline bool commute_oracle(const SymbolMatrix2& H1, const SymbolMatrix2& H2) {
  const Op a = gsio(H1), b = gsio(H2);
  return op_zero_test(a * b - b * a);
}

// ---------------------------------------------------------------------------
// shared clause material

// Reduced Hankel conditions, valid once the outer equation holds.
inline const ClauseList& hankel_reduction_clauses() {
  static const ClauseList l = clauses({
      "H: g1*pp(f2) + v1*pm(g2) - g2*pp(f1) - v2*pm(g1)",
      "H: conj(u2)*pp(conj(f1)) + conj(v2)*pm(conj(u1)) - conj(u1)*pp(conj(f2)) - "
      "conj(v1)*pm(conj(u2))",
  });
  return l;
}

struct SideVectors {
  StackedVector p, r, q, s;
};

// Left side uses (p1, r1, q2, s2), right side (p2, r2, q1, s1).
inline SideVectors left_vectors(const StackedColumns& a, const StackedColumns& b) {
  return {a.p, a.r, b.q, b.s};
}
inline SideVectors right_vectors(const StackedColumns& a, const StackedColumns& b) {
  return {b.p, b.r, a.q, a.s};
}

inline std::string cell_name(int l, int r) {
  return "L" + std::to_string(l) + "+R" + std::to_string(r);
}

// ---------------------------------------------------------------------------
// rank zero

struct ZeroCell {
  int index = 0;  // 1..5
  std::optional<QC> constant;
};

namespace detail {

// p = c r and s = conj(c) q with c != 0; c = 1 when unconstrained.
inline std::optional<QC> solve_cell5(const SideVectors& v) {
  std::optional<QC> c;
  if (!v.r.is_zero()) {
    auto t = solve_proportional(v.p, v.r);
    if (!t) return std::nullopt;
    c = t->lambda;
  } else if (!v.p.is_zero()) {
    return std::nullopt;
  }
  if (!v.q.is_zero()) {
    auto t = solve_proportional(v.s, v.q);
    if (!t) return std::nullopt;
    const QC cc = t->lambda.conj();
    if (c && *c != cc) return std::nullopt;
    c = cc;
  } else if (!v.s.is_zero()) {
    return std::nullopt;
  }
  if (!c) c = QC(1);
  if (c->is_zero()) return std::nullopt;
  return c;
}

}  // namespace detail

inline std::vector<ZeroCell> zero_cells(const SideVectors& v) {
  std::vector<ZeroCell> out;
  const bool p0 = v.p.is_zero(), r0 = v.r.is_zero(), q0 = v.q.is_zero(), s0 = v.s.is_zero();
  if (p0 && r0) out.push_back({1, std::nullopt});
  if (p0 && s0) out.push_back({2, std::nullopt});
  if (q0 && r0) out.push_back({3, std::nullopt});
  if (q0 && s0) out.push_back({4, std::nullopt});
  if (auto c = detail::solve_cell5(v)) out.push_back({5, c});
  return out;
}

// Case label for row Rj, column Li; a trailing '^' marks the index-swapped case.
inline const std::string& rank0_table(int l, int r) {
  static const std::array<std::array<std::string, 5>, 5> t = {{
      {"1", "2", "3", "4", "4"},
      {"2^", "5", "6", "7", "8"},
      {"3^", "6^", "9", "10", "11"},
      {"4^", "7^", "10^", "12", "4^"},
      {"4^", "8^", "11^", "4", "13"},
  }};
  return t.at(r - 1).at(l - 1);
}

inline const std::map<std::string, ClauseList>& rank0_lists() {
  static const std::map<std::string, ClauseList> m = [] {
    std::map<std::string, ClauseList> l;
    l["1"] = clauses({"H: conj(f1)", "H: conj(f2)", "H: g1", "H: g2", "H: conj(u1)", "H: conj(u2)",
                      "H: v1", "H: v2"});
    l["2"] = clauses({"H: conj(f1)", "H: conj(f2)", "H: g1", "H: g2", "H: conj(u2)",
                      "H: (conj(f2)-conj(v2))*conj(u1)", "C: v2"});
    l["2^"] = clauses({"H: conj(f1)", "H: conj(f2)", "H: g1", "H: g2", "H: conj(u1)",
                       "H: (conj(f1)-conj(v1))*conj(u2)", "C: v1"});
    l["3"] = clauses({"H: g2", "H: conj(u1)", "H: conj(u2)", "H: v1", "H: v2", "H: (f2-v2)*g1",
                      "C: f2"});
    l["3^"] = clauses({"H: g1", "H: conj(u1)", "H: conj(u2)", "H: v1", "H: v2", "H: (f1-v1)*g2",
                       "C: f1"});
    l["4"] = clauses({"H: g2", "H: conj(u2)", "H: (conj(f2)-conj(v2))*conj(u1)", "H: (f2-v2)*g1",
                      "C: f2", "C: v2"});
    l["4^"] = hat(l["4"]);
    l["5"] = clauses({"H: conj(f1)", "H: conj(f2)", "H: g1", "H: g2", "H: conj(v1)", "H: conj(v2)",
                      "H: (conj(f1)-conj(v1))*conj(u2) - (conj(f2)-conj(v2))*conj(u1)"});
    l["6"] = clauses({"H: g1", "H: g2", "H: conj(u1)", "H: conj(u2)", "C: f2", "C: v1"});
    l["6^"] = clauses({"H: g1", "H: g2", "H: conj(u1)", "H: conj(u2)", "C: f1", "C: v2"});
    l["7"] = clauses({"H: g1", "H: g2", "H: conj(u2)", "H: conj(v1)", "H: conj(v2)",
                      "H: (conj(f2)-conj(v2))*conj(u1)", "C: f2"});
    l["7^"] = hat(l["7"]);
    l["8"] = clauses({"H: g1", "H: g2", "H: conj(f1)-conj(lam)*conj(u1)",
                      "H: conj(v2)-conj(lam)*conj(u2)",
                      "H: conj(f1)*conj(f2)+conj(v1)*conj(v2)-conj(f1)*conj(v2)", "C: f2", "C: v1"});
    l["8^"] = clauses({"H: g1", "H: g2", "H: conj(f2)-conj(mu)*conj(u2)",
                       "H: conj(v1)-conj(mu)*conj(u1)",
                       "H: conj(f1)*conj(f2)+conj(v1)*conj(v2)-conj(f2)*conj(v1)", "C: f1", "C: v2"});
    l["9"] = clauses({"H: f1", "H: f2", "H: conj(u1)", "H: conj(u2)", "H: v1", "H: v2",
                      "H: (f2-v2)*g1-(f1-v1)*g2"});
    l["10"] = clauses({"H: f1", "H: f2", "H: g2", "H: conj(u1)", "H: conj(u2)", "H: (f2-v2)*g1",
                       "C: v2"});
    l["10^"] = hat(l["10"]);
    l["11"] = clauses({"H: conj(u1)", "H: conj(u2)", "H: g1-lam*v1", "H: g2-lam*f2",
                       "H: f1*f2+v1*v2-v1*f2", "C: f1", "C: v2"});
    l["11^"] = clauses({"H: conj(u1)", "H: conj(u2)", "H: g2-mu*v2", "H: g1-mu*f1",
                        "H: f1*f2+v1*v2-v2*f1", "C: f2", "C: v1"});
    l["12"] = clauses({"H: f1", "H: f2", "H: g1", "H: g2", "H: conj(u1)", "H: conj(u2)",
                       "H: conj(v1)", "H: conj(v2)"});
    l["13"] = clauses({"H: conj(f1)-conj(lam)*conj(u1)", "H: g1-lam*v1", "H: g2-lam*f2",
                       "H: conj(v2)-conj(lam)*conj(u2)", "H: conj(f2)-conj(mu)*conj(u2)",
                       "H: g2-mu*v2", "H: g1-mu*f1", "H: conj(v1)-conj(mu)*conj(u1)",
                       "C: lam*f2*v1 - mu*f1*v2"});
    return l;
  }();
  return m;
}

inline std::string display_label(const std::string& key) {
  if (!key.empty() && key.back() == '^') return "(" + key.substr(0, key.size() - 1) + "hat)";
  return "(" + key + ")";
}

inline std::vector<CaseMatch> commute_classify_rank0(const SymbolMatrix2& H1, const SymbolMatrix2& H2) {
  const StackedColumns a = stack_columns(H1), b = stack_columns(H2);
  if (!is_zero_combination(ww_lhs(a, b)) || !is_zero_combination(ww_lhs(b, a)))
    throw ContractError("commute_classify_rank0: both sides must vanish");
  std::vector<CaseMatch> out;
  const Env base = symbol_env(H1, H2);
  for (const ZeroCell& L : zero_cells(left_vectors(a, b)))
    for (const ZeroCell& R : zero_cells(right_vectors(a, b))) {
      const std::string& key = rank0_table(L.index, R.index);
      Env env = base;
      CaseMatch m{0, display_label(key), cell_name(L.index, R.index), {}, std::nullopt};
      if (L.constant) {
        bind_constant(env, "lam", *L.constant);
        m.constants["lambda"] = *L.constant;
      }
      if (R.constant) {
        bind_constant(env, "mu", *R.constant);
        m.constants["mu"] = *R.constant;
      }
      if (all_hold(rank0_lists().at(key), env)) out.push_back(std::move(m));
    }
  return out;
}

// ---------------------------------------------------------------------------
// rank one

namespace clause_build {

// sign * product of named constants
struct Coef {
  int sign = 1;
  std::vector<std::string> factors;
};

inline Coef one() { return {}; }
inline Coef named(const std::string& n) { return {1, {n}}; }

inline std::string conj_name(const std::string& f) {
  if (f.rfind("conj(", 0) == 0) return f.substr(5, f.size() - 6);
  return "conj(" + f + ")";
}

inline Coef conj(const Coef& c) {
  Coef r{c.sign, {}};
  for (const auto& f : c.factors) r.factors.push_back(conj_name(f));
  return r;
}

inline Coef operator*(const Coef& a, const Coef& b) {
  Coef r{a.sign * b.sign, a.factors};
  r.factors.insert(r.factors.end(), b.factors.begin(), b.factors.end());
  return r;
}

struct Term {
  Coef c;
  std::string vec;  // "p1", "s2", ...
};
using Combo = std::vector<Term>;

inline Combo vec(const std::string& name, Coef c = one()) { return {{std::move(c), name}}; }

inline Combo operator*(const Coef& c, const Combo& x) {
  Combo r;
  for (const auto& t : x) r.push_back({c * t.c, t.vec});
  return r;
}
inline Combo operator+(Combo a, const Combo& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}
inline Combo operator-(const Combo& a, const Combo& b) { return a + Coef{-1, {}} * b; }

// Symbol read off from the top / bottom half of a stacked column.
inline std::string top_symbol(const std::string& v) {
  const std::string i = v.substr(1);
  switch (v[0]) {
    case 'p': return "conj(f" + i + ")";
    case 'r': return "conj(u" + i + ")";
    case 'q': return "f" + i;
    default: return "g" + i;
  }
}
inline std::string bottom_symbol(const std::string& v) {
  const std::string i = v.substr(1);
  switch (v[0]) {
    case 'p': return "g" + i;
    case 'r': return "v" + i;
    case 'q': return "conj(u" + i + ")";
    default: return "conj(v" + i + ")";
  }
}

inline std::string render(const std::vector<std::pair<Coef, std::string>>& terms) {
  std::string s;
  for (const auto& [c, sym] : terms) {
    if (s.empty()) s += c.sign < 0 ? "-" : "";
    else s += c.sign < 0 ? " - " : " + ";
    for (const auto& f : c.factors) s += f + "*";
    s += sym;
  }
  return s;
}

// Sum c_k w_k = 0 as two analytic memberships.
inline ClauseList relation_clauses(const Combo& rel) {
  std::vector<std::pair<Coef, std::string>> top, bottom;
  for (const auto& t : rel) {
    top.emplace_back(conj(t.c), top_symbol(t.vec));
    bottom.emplace_back(t.c, bottom_symbol(t.vec));
  }
  return {Clause("H: " + render(top)), Clause("H: " + render(bottom))};
}

}  // namespace clause_build

struct RankOneCell {
  int index = 0;  // 1..4
  QC c;
  StackedVector x, y;  // side = x (x) y
};

inline std::vector<RankOneCell> rank_one_cells(const SideVectors& v) {
  std::vector<RankOneCell> out;
  auto try_cell = [&](int idx, const StackedVector& num, const StackedVector& den, auto make) {
    if (den.is_zero()) return;
    auto t = solve_proportional(num, den);
    if (!t) return;
    RankOneCell c{idx, t->lambda, {}, {}};
    make(c);
    if (!c.x.is_zero() && !c.y.is_zero()) out.push_back(std::move(c));
  };
  try_cell(1, v.p, v.r, [&](RankOneCell& c) {
    c.x = v.r;
    c.y = v.q * c.c.conj() - v.s;
  });
  try_cell(2, v.r, v.p, [&](RankOneCell& c) {
    c.x = v.p;
    c.y = v.q - v.s * c.c.conj();
  });
  try_cell(3, v.q, v.s, [&](RankOneCell& c) {
    c.x = v.p * c.c.conj() - v.r;
    c.y = v.s;
  });
  try_cell(4, v.s, v.q, [&](RankOneCell& c) {
    c.x = v.p - v.r * c.c.conj();
    c.y = v.q;
  });
  return out;
}

namespace detail {

struct SymbolicCell {
  clause_build::Combo relation, x, y;
};

// Names: P, R, Q, S of one side and its constant.
inline SymbolicCell symbolic_cell(int idx, const std::array<std::string, 4>& n, const std::string& c) {
  using namespace clause_build;
  const Combo P = vec(n[0]), R = vec(n[1]), Q = vec(n[2]), S = vec(n[3]);
  const Coef k = named(c), kb = conj(named(c));
  switch (idx) {
    case 1: return {P - k * R, R, kb * Q - S};
    case 2: return {R - k * P, P, Q - kb * S};
    case 3: return {Q - k * S, kb * P - R, S};
    default: return {S - k * Q, P - kb * R, Q};
  }
}

}  // namespace detail

// Membership list of cell (Rj, Li): both side relations, the coupling
// x_L = alpha x_R, y_R = conj(alpha) y_L, and the reduced Hankel conditions.
inline ClauseList rank1_derived_list(int l, int r) {
  using namespace clause_build;
  const auto L = detail::symbolic_cell(l, {"p1", "r1", "q2", "s2"}, "lam");
  const auto R = detail::symbolic_cell(r, {"p2", "r2", "q1", "s1"}, "mu");
  const Coef al = named("alpha");
  ClauseList out;
  for (const Combo& rel : {L.relation, R.relation, L.x - al * R.x, R.y - conj(al) * L.y})
    for (auto& c : relation_clauses(rel)) out.push_back(std::move(c));
  for (const auto& c : hankel_reduction_clauses()) out.push_back(c);
  return out;
}

// Reference lists for cases (1)..(16), transcribed as published.
inline const std::vector<std::string>& rank1_reference_text(int k) {
  static const std::array<std::vector<std::string>, 16> t = {{
      {"conj(f1) - conj(lam)*conj(u1)", "g1 - lam*v1", "conj(f2) - conj(mu)*conj(u2)",
       "g2 - mu*v2", "conj(u1) - conj(alpha)*conj(u2)", "v1 - alpha*v2",
       "mu*f1 - g1 - alpha*(lam*f2 - g2)",
       "conj(mu)*conj(u1) - conj(v1) - conj(alpha)*(conj(lam)*conj(u2) - conj(v2))",
       "g2*(v1 - alpha*v2) + v2*(alpha*lam*f2 - mu*f1)",
       "conj(u2)*conj(f1) - conj(u1)*conj(f2) + conj(mu)*conj(u1)*conj(u2) - conj(v1)*conj(u2) + "
       "conj(alpha)*conj(v2)*conj(u2) - conj(lam)*conj(alpha)*conj(u2)^2"},
      {"conj(u1) - conj(lam)*conj(f1)", "v1 - lam*g1", "conj(f2) - conj(mu)*conj(u2)",
       "g2 - mu*v2", "conj(f1) - conj(alpha)*conj(u2)", "g1 - alpha*v2",
       "mu*f1 - g1 - alpha*(f2 - lam*g2)",
       "conj(mu) - conj(v1) - conj(alpha)*(conj(u2) - lam*conj(v2))",
       "g2*(v2 - lam*alpha*v2) + v2*(alpha*f2 - mu*f1)",
       "conj(u2)*conj(f1) - conj(u1)*conj(f2) - conj(alpha)*conj(u2)^2 + "
       "conj(lam)*conj(alpha)*conj(v2)*conj(u2) + conj(mu)*conj(u1)*conj(u2) - conj(v1)*conj(u2)"},
      {"f2 - conj(lam)*g2", "conj(u2) - lam*conj(v2)", "conj(f2) - conj(mu)*conj(u2)",
       "g2 - mu*v2", "lam*conj(f1) - conj(u1) - conj(alpha)*conj(u2)",
       "conj(lam)*g1 - v1 - alpha*v2", "mu*f1 - g1 - alpha*g2",
       "conj(mu)*conj(u1) - conj(v1) - conj(alpha)*conj(v2)",
       "g1*f2 + v1*g2 - conj(lam)*g1*g2 + alpha*v2*g2 - mu*v2*f1",
       "lam*conj(v2)*conj(f1) + conj(mu)*conj(u1)*conj(u2) - conj(v1)*conj(u2) - "
       "conj(alpha)*conj(v2)*conj(u2) - conj(u1)*conj(f2)"},
      {"g2 - conj(lam)*f2", "conj(v2) - lam*conj(u2)", "conj(f2) - conj(mu)*conj(u2)",
       "g2 - mu*v2", "conj(f1) - lam*conj(u1) - conj(alpha)*conj(u2)",
       "g1 - conj(lam)*v1 - alpha*v2", "mu*f1 - g1 - alpha*f2",
       "conj(mu)*conj(u1) - conj(v1) - conj(alpha)*conj(u2)",
       "conj(lam)*v1*f2 - mu*v2*f1 + alpha*v2*f2",
       "conj(v2)*conj(u1) - conj(u1)*conj(f2) + conj(u2)*conj(f1) - lam*conj(u1)*conj(u2) + "
       "conj(mu)*conj(u1)*conj(u2) - conj(u2)*conj(v1) - conj(alpha)*conj(u2)^2"},
      {"conj(f1) - conj(lam)*conj(u1)", "g1 - lam*v1", "conj(u2) - conj(mu)*conj(f2)",
       "v2 - mu*g2", "conj(u1) - conj(alpha)*conj(f2)", "v1 - alpha*g2",
       "f1 - mu*g1 - alpha*(lam*f2 - g2)",
       "conj(u1) - conj(mu)*conj(v1) - conj(alpha)*(conj(lam)*conj(u2) - conj(v2))",
       "conj(u2)*f1 - mu*conj(v1)*conj(f2) + alpha*conj(v2)*conj(f2) - "
       "conj(lam)*conj(alpha)*conj(u2)*conj(f2)",
       "v1*g2 - v2*g1 - f1*g2 + mu*g1*g2 - alpha*g2^2 + lam*alpha*g2*f2"},
      {"conj(u1) - conj(lam)*conj(f1)", "v1 - lam*g1", "conj(u2) - conj(mu)*conj(f2)",
       "v2 - mu*g2", "conj(f1) - conj(alpha)*conj(f2)", "g1 - alpha*g2",
       "f1 - mu*g1 - alpha*(f2 - lam*g2)",
       "conj(u1) - conj(mu)*conj(v1) - conj(alpha)*(conj(u2) - conj(lam)*conj(v2))",
       "conj(u2)*conj(f1) - conj(mu)*conj(v1)*conj(f2) - conj(alpha)*conj(u2)*conj(f2) + "
       "conj(lam)*conj(alpha)*conj(v2)*conj(f2)",
       "v1*g2 - v2*g1 - g2*f1 + mu*g1*g2 + alpha*g2*f2 - lam*alpha*g2^2"},
      {"f2 - conj(lam)*g2", "conj(u2) - lam*conj(v2)", "conj(u2) - conj(mu)*conj(f2)",
       "v2 - mu*g2", "lam*conj(f1) - conj(u1) - conj(alpha)*conj(f2)",
       "conj(lam)*g1 - v1 - alpha*g2", "f1 - mu*g1 - alpha*g2",
       "conj(u1) - conj(mu)*conj(v1) - conj(alpha)*conj(v2)",
       "lam*conj(v2)*conj(f1) - conj(mu)*conj(v1)*conj(f2) - conj(alpha)*conj(v2)*conj(f2)",
       "g1*f2 - v2*g1 + (v1 - conj(lam)*g1)*g2 + g2*(mu*g1 - f1) + alpha*g2^2"},
      {"g2 - lam*f2", "conj(v2) - lam*conj(u2)", "conj(u2) - conj(mu)*conj(f2)", "v2 - mu*g2",
       "conj(f1) - conj(lam)*conj(u1) - conj(alpha)*conj(f2)", "g1 - conj(lam)*v1 - alpha*g2",
       "f1 - mu*g1 - alpha*f2", "conj(u1) - conj(mu)*conj(v1) - conj(alpha)*conj(u2)",
       "conj(v2)*conj(u1) + conj(u2)*conj(f1) - lam*conj(u1)*conj(u2) - "
       "conj(mu)*conj(v1)*conj(f2) - conj(alpha)*conj(u2)*conj(f2)",
       "g1*v2 + g2*f1 - conj(lam)*v1*f2 - mu*g1*g2 - alpha*g2*f2"},
      {"conj(f1) - conj(lam)*conj(u1)", "g1 - lam*v1", "f1 - conj(mu)*g1",
       "conj(u1) - mu*conj(v1)", "conj(u1) - conj(alpha)*(mu*conj(f2) - conj(u2))",
       "v1 - alpha*(conj(mu)*g2 - v2)", "g1 - alpha*(lam*f2 - g2)",
       "conj(v1) - conj(alpha)*(conj(lam)*conj(u2) - conj(v2))",
       "conj(u2)*conj(f2) - conj(v1)*conj(u2) + alpha*(conj(lam)*conj(u2) - conj(v2))*(conj(u2) - "
       "mu*conj(f2))",
       "v1*g2 - g2*f1 + alpha*(conj(mu)*g2 - v2)*(lam*f2 - g2)"},
      {"conj(u1) - conj(lam)*conj(f1)", "v1 - lam*g1", "f1 - conj(mu)*g1",
       "conj(u1) - mu*conj(v1)", "conj(f1) - conj(alpha)*(mu*conj(f2) - conj(u2))",
       "g1 - alpha*(conj(mu)*g2 - v2)", "g1 - alpha*(f2 - lam*g2)",
       "conj(v1) - conj(alpha)*(conj(u2) - conj(lam)*conj(v2))",
       "conj(u2)*conj(f1) - conj(v1)*conj(u2) + conj(alpha)*(conj(lam)*conj(v2) - "
       "conj(u2))*(mu*conj(f2) - conj(u2))",
       "v1*g2 - g2*f1 + alpha*(conj(mu)*g2 - v2)*(f2 - lam*g2)"},
      {"f2 - conj(lam)*g2", "conj(u2) - lam*conj(v2)", "f1 - conj(mu)*g1",
       "conj(u1) - mu*conj(v1)", "lam*conj(f1) - conj(u1) - conj(alpha)*(mu*conj(f2) - conj(u2))",
       "conj(lam)*g1 - v1 - alpha*(conj(mu)*g2 - v2)", "g1 - alpha*g2",
       "conj(v1) - conj(alpha)*conj(v2)",
       "conj(v1)*conj(u2) - lam*conj(v2)*conj(f1) - conj(alpha)*conj(v2)*conj(u2) + "
       "conj(alpha)*mu*conj(v2)*conj(f2)",
       "g1*f2 - g2*f1 + (v1 - conj(lam)*g1)*g2 + alpha*g2*(conj(mu)*g2 - v2)"},
      {"g2 - conj(lam)*f2", "conj(v2) - lam*conj(u2)", "f1 - conj(mu)*g1",
       "conj(u1) - mu*conj(v1)",
       "conj(f1) - conj(lam)*conj(u1) - conj(alpha)*(mu*conj(f2) - conj(u2))",
       "g1 - conj(lam)*v1 - alpha*(conj(mu)*g2 - v2)", "g1 - alpha*f2",
       "conj(v1) - conj(alpha)*conj(u2)",
       "conj(v2)*conj(u1) - conj(v1)*conj(u2) + conj(u2)*(conj(f1) - lam*conj(u1)) + "
       "conj(alpha)*conj(u2)*(conj(u2) - mu*conj(f2))",
       "g2*f1 - conj(lam)*v1*f2 - conj(mu)*alpha*f2*g2 + alpha*v2*f2"},
      {"conj(f1) - conj(lam)*conj(u1)", "g1 - lam*v1", "g1 - conj(mu)*f1",
       "conj(v1) - mu*conj(u1)", "conj(u1) - conj(alpha)*(conj(f2) - mu*conj(u2))",
       "v1 - alpha*(g2 - conj(mu)*v2)", "f1 - alpha*(lam*f2 - g2)",
       "conj(u1) - conj(alpha)*(conj(lam)*conj(u2) - conj(v2))",
       "conj(u2)*conj(f1) - conj(v1)*conj(u2) + conj(alpha)*(conj(v2) - "
       "conj(lam)*conj(u2))*(conj(f2) - mu*conj(u2))",
       "v1*g2 - g2*f1 + alpha*(g2 - conj(mu)*v2)*(lam*f2 - g2)"},
      {"conj(u1) - conj(lam)*conj(f1)", "v1 - lam*g1", "g1 - conj(mu)*f1",
       "conj(v1) - mu*conj(u1)", "conj(f1) - conj(alpha)*(conj(f2) - mu*conj(u2))",
       "g1 - alpha*(g2 - conj(mu)*v2)", "f1 - alpha*(f2 - lam*g2)",
       "conj(u1) - conj(alpha)*(conj(u2) - conj(lam)*conj(v2))",
       "(conj(f1) - conj(v1))*conj(u2) + conj(alpha)*(conj(lam)*conj(v2) - "
       "conj(u2))*(conj(f2) - mu*conj(u2))",
       "(v1 - f1)*g2 + alpha*(g2 - conj(mu)*v2)*(f2 - lam*g2)"},
      {"f2 - conj(lam)*g2", "conj(u2) - lam*conj(v2)", "g1 - conj(mu)*f1",
       "conj(v1) - mu*conj(u1)", "lam*conj(f1) - conj(u1) - conj(alpha)*(conj(f2) - mu*conj(u2))",
       "conj(lam)*g1 - v1 - alpha*(g2 - conj(mu)*v2)", "f1 - alpha*g2",
       "conj(u1) - conj(alpha)*conj(v2)",
       "conj(v1)*conj(u2) - lam*conj(f1)*conj(v2) - conj(alpha)*conj(v2)*(mu*conj(u2) - conj(f2))",
       "g1*f2 - g2*f1 + (v1 - conj(lam)*g1)*g2 + alpha*g2*(g2 - conj(mu)*v2)"},
      {"g2 - conj(lam)*f2", "conj(v2) - lam*conj(u2)", "g1 - conj(mu)*f1",
       "conj(v1) - mu*conj(u1)",
       "conj(f1) - lam*conj(u1) - conj(alpha)*(conj(f2) - mu*conj(u2))",
       "g1 - conj(lam)*v1 - alpha*(g2 - conj(mu)*v2)", "f1 - alpha*f2",
       "conj(u1) - conj(alpha)*conj(u2)",
       "conj(u1)*conj(v2) - conj(v1)*conj(u2) + conj(u2)*(conj(f1) - lam*conj(u1)) + "
       "conj(alpha)*conj(u2)*(mu*conj(u2) - conj(f2))",
       "f1*g2 - conj(lam)*v1*f2 - alpha*f2*(conj(mu)*v2 - g2)"},
  }};
  if (k < 1 || k > 16) throw std::out_of_range("rank1_reference_text: case index 1..16");
  return t[k - 1];
}

// Known misprints in the transcribed lists: (case, clause index, corrected text).
struct ReferenceCorrection {
  int case_index;
  std::size_t clause;
  const char* text;
};

inline const std::vector<ReferenceCorrection>& rank1_reference_corrections() {
  static const std::vector<ReferenceCorrection> c = {
      {2, 7, "conj(mu)*conj(u1) - conj(v1) - conj(alpha)*(conj(u2) - conj(lam)*conj(v2))"},
      {2, 8, "g2*(v1 - lam*alpha*v2) + v2*(alpha*f2 - mu*f1)"},
      {5, 8,
       "conj(u2)*conj(f1) - conj(mu)*conj(v1)*conj(f2) + conj(alpha)*conj(v2)*conj(f2) - "
       "conj(lam)*conj(alpha)*conj(u2)*conj(f2)"},
      {8, 0, "g2 - conj(lam)*f2"},
      {8, 4, "conj(f1) - lam*conj(u1) - conj(alpha)*conj(f2)"},
      {9, 8,
       "conj(u2)*conj(f1) - conj(v1)*conj(u2) + conj(alpha)*(conj(lam)*conj(u2) - "
       "conj(v2))*(conj(u2) - mu*conj(f2))"},
      {12, 4, "conj(f1) - lam*conj(u1) - conj(alpha)*(mu*conj(f2) - conj(u2))"},
      {16, 9, "f1*g2 - conj(lam)*v1*f2 + alpha*f2*(conj(mu)*v2 - g2)"},
  };
  return c;
}

inline ClauseList rank1_reference_list(int k, bool corrected) {
  auto text = rank1_reference_text(k);
  if (corrected)
    for (const auto& c : rank1_reference_corrections())
      if (c.case_index == k) text.at(c.clause) = c.text;
  ClauseList out;
  for (const auto& s : text) out.emplace_back("H: " + s);
  return out;
}

inline std::vector<CaseMatch> commute_classify_rank1(const SymbolMatrix2& H1, const SymbolMatrix2& H2) {
  const StackedColumns a = stack_columns(H1), b = stack_columns(H2);
  if (rank_of(ww_lhs(a, b)).rank != 1 || rank_of(ww_lhs(b, a)).rank != 1)
    throw ContractError("commute_classify_rank1: both sides must have rank one");
  std::vector<CaseMatch> out;
  const Env base = symbol_env(H1, H2);
  const auto Ls = rank_one_cells(left_vectors(a, b));
  const auto Rs = rank_one_cells(right_vectors(a, b));
  for (const RankOneCell& L : Ls)
    for (const RankOneCell& R : Rs) {
      auto al = solve_proportional(L.x, R.x);
      if (!al || al->lambda.is_zero()) continue;
      const QC alpha = al->lambda;
      if (R.y != L.y * alpha.conj()) continue;
      Env env = base;
      bind_constant(env, "lam", L.c);
      bind_constant(env, "mu", R.c);
      bind_constant(env, "alpha", alpha);
      if (!all_hold(rank1_derived_list(L.index, R.index), env)) continue;
      const int k = 4 * (R.index - 1) + L.index;
      out.push_back({1, "(" + std::to_string(k) + ")", cell_name(L.index, R.index),
                     {{"lambda", L.c}, {"mu", R.c}, {"alpha", alpha}},
                     all_hold(rank1_reference_list(k, true), env)});
    }
  return out;
}

// ---------------------------------------------------------------------------
// rank two

inline const ClauseList& rank2_list() {
  static const ClauseList l = clauses({
      "H: conj(f1)-conj(a)*conj(f2)-conj(b)*conj(u2)",
      "H: g1-a*g2-b*v2",
      "H: conj(u1)-conj(c)*conj(f2)-conj(d)*conj(u2)",
      "H: v1-c*g2-d*v2",
      "H: f1-a*f2+c*g2",
      "H: conj(u1)-conj(a)*conj(u2)+conj(c)*conj(v2)",
      "H: g1+b*f2-d*g2",
      "H: conj(v1)+conj(b)*conj(u2)-conj(d)*conj(v2)",
      "H: conj(u2)*conj(f1)-conj(v1)*conj(u2)-conj(a)*conj(u2)*conj(f2)-conj(b)*conj(u2)^2+"
      "conj(c)*conj(v2)*conj(f2)+conj(d)*conj(v2)*conj(u2)",
      "H: v1*g2-f1*g2+a*g2*f2+b*v2*f2-c*g2^2-d*v2*g2",
  });
  return l;
}

inline std::vector<CaseMatch> commute_classify_rank2(const SymbolMatrix2& H1, const SymbolMatrix2& H2) {
  const StackedColumns A = stack_columns(H1), B = stack_columns(H2);
  if (rank_of(ww_lhs(A, B)).rank != 2 || rank_of(ww_lhs(B, A)).rank != 2)
    throw ContractError("commute_classify_rank2: both sides must have rank two");
  // p1 = a p2 + b r2, r1 = c p2 + d r2
  auto ab = solve_in_span(A.p, {B.p, B.r});
  auto cd = solve_in_span(A.r, {B.p, B.r});
  if (!ab || !cd) return {};
  Env env = symbol_env(H1, H2);
  const Constants k = {{"a", (*ab)[0]}, {"b", (*ab)[1]}, {"c", (*cd)[0]}, {"d", (*cd)[1]}};
  for (const auto& [n, v] : k) bind_constant(env, n, v);
  if (!all_hold(rank2_list(), env)) return {};
  return {{2, "rank2", "", k, std::nullopt}};
}

// ---------------------------------------------------------------------------

inline CommuteClassification commute_classify(const SymbolMatrix2& H1, const SymbolMatrix2& H2) {
  CommuteClassification out;
  out.lhs_rank = rank_of(ww_lhs(H1, H2)).rank;
  out.rhs_rank = rank_of(ww_rhs(H1, H2)).rank;
  if (out.lhs_rank != out.rhs_rank) return out;
  switch (out.lhs_rank) {
    case 0: out.cases = commute_classify_rank0(H1, H2); break;
    case 1: out.cases = commute_classify_rank1(H1, H2); break;
    case 2: out.cases = commute_classify_rank2(H1, H2); break;
    default: break;
  }
  return out;
}

inline CommuteVerdict commute(const SymbolMatrix2& H1, const SymbolMatrix2& H2) {
  CommuteVerdict v;
  v.violated = commute_violations(H1, H2);
  v.commute = v.violated.empty();
  CommuteClassification c = commute_classify(H1, H2);
  v.lhs_rank = c.lhs_rank;
  v.rhs_rank = c.rhs_rank;
  v.cases = std::move(c.cases);
  v.classified = !v.cases.empty();
  return v;
}

}  // namespace hardyops

#endif
