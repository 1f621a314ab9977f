#ifndef HARDYOPS_SIO_HPP
#define HARDYOPS_SIO_HPP

// Singular integral operators S_{f,g} = f P+ + g P-, i.e. the GSIO with
// symbol [[f, g], [f, g]].

#include "hardyops/clause.hpp"
#include "hardyops/commute.hpp"
#include "hardyops/semi_commute.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace hardyops {

inline SymbolMatrix2 sio_symbol(const Poly& f, const Poly& g) { return {f, g, f, g}; }

// Symbol of R_H^*.
inline SymbolMatrix2 adjoint_symbol(const SymbolMatrix2& H) {
  return {conj_fn(H.f), conj_fn(H.g), conj_fn(H.u), conj_fn(H.v)};
}

inline Env fg_env(const Poly& f, const Poly& g) { return {{"f", f}, {"g", g}}; }

// ---------------------------------------------------------------------------
// products

struct SioProductVerdict {
  bool product = false;  // S1 S2 = S_{f1 f2, g1 g2}
  std::vector<int> cases;
  bool semi_commute_agrees = false;
};

inline SioProductVerdict sio_product(const Poly& f1, const Poly& g1, const Poly& f2, const Poly& g2) {
  SioProductVerdict out;
  if (f1 == g1) out.cases.push_back(1);
  if (is_analytic(f2) && is_analytic(conj_fn(g2))) out.cases.push_back(2);
  out.product = !out.cases.empty();
  const SemiCommuteVerdict s = semi_commute(sio_symbol(f1, g1), sio_symbol(f2, g2));
  const bool via_semi = s.is_gsio && same_gsio_class(*s.product, sio_symbol(f1 * f2, g1 * g2));
  out.semi_commute_agrees = via_semi == out.product;
  return out;
}

inline bool sio_product_oracle(const Poly& f1, const Poly& g1, const Poly& f2, const Poly& g2) {
  return op_zero_test(sio(f1, g1) * sio(f2, g2) - sio(f1 * f2, g1 * g2));
}

// ---------------------------------------------------------------------------
// commutation

struct AffineRelation {
  QC c1, c2, c3;  // c1 (f1, g1) - c2 (f2, g2) = (c3, c3)
};

struct SioCommuteVerdict {
  bool commute = false;
  std::vector<int> cases;
  std::optional<AffineRelation> relation;
  bool commute_agrees = false;  // GSIO-level direct check
};

// c1 = 1 when some relation has c1 != 0, otherwise (0, 1, c3).
inline std::optional<AffineRelation> solve_sio_affine(const Poly& f1, const Poly& g1, const Poly& f2,
                                                      const Poly& g2) {
  const long lo = std::min({f1.min_deg(), g1.min_deg(), f2.min_deg(), g2.min_deg()});
  const long hi = std::max({f1.max_deg(), g1.max_deg(), f2.max_deg(), g2.max_deg()});
  // (nonconstant f, nonconstant g, f(0) - g(0)); need c1 w1 = c2 w2
  auto w = [&](const Poly& f, const Poly& g) {
    std::vector<QC> out;
    for (long k = lo; k <= hi; ++k)
      if (k != 0) {
        out.push_back(f.coeff(k));
        out.push_back(g.coeff(k));
      }
    out.push_back(f.coeff(0) - g.coeff(0));
    return out;
  };
  const std::vector<QC> w1 = w(f1, g1), w2 = w(f2, g2);
  auto zero = [](const std::vector<QC>& v) {
    return std::all_of(v.begin(), v.end(), [](const QC& c) { return c.is_zero(); });
  };
  AffineRelation r;
  if (zero(w1)) {
    r = {QC(1), QC(), f1.coeff(0)};
  } else if (auto p = solve_proportional(w1, w2); p && !p->degenerate) {
    // w1 = lam w2, so f1 - lam f2 is constant
    r = {QC(1), p->lambda, f1.coeff(0) - p->lambda * f2.coeff(0)};
  } else if (zero(w2)) {
    r = {QC(), QC(1), -f2.coeff(0)};
  } else {
    return std::nullopt;
  }
  return r;
}

inline SioCommuteVerdict sio_commute(const Poly& f1, const Poly& g1, const Poly& f2, const Poly& g2) {
  SioCommuteVerdict out;
  if (f1 == g1 && f2 == g2) out.cases.push_back(1);
  if (is_analytic(f1) && is_analytic(conj_fn(g1)) && is_analytic(f2) && is_analytic(conj_fn(g2)))
    out.cases.push_back(2);
  out.relation = solve_sio_affine(f1, g1, f2, g2);
  if (out.relation) out.cases.push_back(3);
  out.commute = !out.cases.empty();
  out.commute_agrees = commute(sio_symbol(f1, g1), sio_symbol(f2, g2)).commute == out.commute;
  return out;
}

inline bool sio_commute_oracle(const Poly& f1, const Poly& g1, const Poly& f2, const Poly& g2) {
  const Op a = sio(f1, g1), b = sio(f2, g2);
  return op_zero_test(a * b - b * a);
}

// ---------------------------------------------------------------------------
// normality

struct NormalityVerdict {
  bool normal = false;
  std::vector<int> cases;
  std::optional<QC> lambda;    // case (2)
  bool commute_agrees = false;  // S^* and S through the commutation check
};

inline const ClauseList& normal_case_list(int c) {
  static const ClauseList one = clauses({"C: f", "C: g"});
  static const ClauseList two =
      clauses({"Z: lam*conj(lam) - 1", "C: f - lam*g", "C: lam*conj(f)*g - f*conj(g)"});
  return c == 1 ? one : two;
}

inline NormalityVerdict sio_normal(const Poly& f, const Poly& g) {
  NormalityVerdict out;
  Env env = fg_env(f, g);
  if (all_hold(normal_case_list(1), env)) out.cases.push_back(1);
  if (auto p = solve_proportional(nonconstant_part(f), nonconstant_part(g))) {
    const QC lam = p->degenerate ? QC(1) : p->lambda;
    bind_constant(env, "lam", lam);
    if (all_hold(normal_case_list(2), env)) {
      out.cases.push_back(2);
      out.lambda = lam;
    }
  }
  out.normal = !out.cases.empty();
  const SymbolMatrix2 S = sio_symbol(f, g);
  out.commute_agrees = commute(adjoint_symbol(S), S).commute == out.normal;
  return out;
}

inline bool sio_normal_oracle(const Poly& f, const Poly& g) {
  const Op s = sio(f, g);
  return op_zero_test(adjoint(s) * s - s * adjoint(s));
}

// ---------------------------------------------------------------------------
// quasinormality: S^* S = R_Q with Q = [[|f|^2, conj(f) g], [f conj(g), |g|^2]]
// commutes with S

struct QuasinormalVerdict {
  bool quasinormal = false;
  std::vector<std::string> cases;  // "1", "2", "3", "4a".."4d"
  std::optional<QC> mu, alpha;     // first (4x) match
  bool commute_direct = false;     // direct check on (Q, S)
  bool commute_agrees = false;
};

inline const ClauseList& quasinormal_case_list(const std::string& c) {
  static const std::map<std::string, ClauseList> lists = {
      {"1", clauses({"C: f*conj(f)", "C: g*conj(g)", "H: f", "H: conj(g)"})},
      {"2", clauses({"Z: f*conj(f) - g*conj(g)", "C: f*conj(f)", "H: f*conj(g)"})},
      {"3", clauses({"C: f - g", "C: f*g*conj(g) - g*f*conj(f)", "Z: pm(f*conj(f)) - pm(g*conj(g))",
                     "Z: pm(f*conj(f)) - pm(f*conj(g))"})},
      {"4a", clauses({"C: f - mu*g", "H: f*conj(f) - f*conj(g) - conj(alpha)*conj(g)",
                      "H: g*conj(g) - f*conj(g) + alpha*g", "H: f*(mu*conj(f) - conj(g) - alpha)",
                      "H: conj(g)*(conj(mu)*f - g - conj(alpha))", "H: f*g*(mu*conj(f) - conj(g) - alpha)",
                      "H: conj(g)^2*(conj(mu)*f - g - conj(alpha))"})},
      {"4b", clauses({"C: g - mu*f", "H: f*conj(f) - f*conj(g) - conj(alpha)*conj(f)",
                      "H: g*conj(g) - f*conj(g) + alpha*f", "H: f*(conj(f) - mu*conj(g) - alpha)",
                      "H: conj(g)*(f - conj(mu)*g - conj(alpha))",
                      "H: conj(f)*conj(g)*(f - conj(mu)*g - conj(alpha))",
                      "H: f^2*(conj(f) - mu*conj(g) - alpha)"})},
      {"4c", clauses({"H: f*(conj(f) - conj(mu)*conj(g))", "H: conj(g)*(f - mu*g)",
                      "H: f*conj(f) - f*conj(g) - conj(alpha)*(mu*conj(f) - conj(g))",
                      "H: f*conj(g) - g*conj(g) - alpha*(conj(mu)*f - g)", "H: f*conj(g) - alpha*f",
                      "H: g*conj(g) - conj(alpha)*conj(g)",
                      "H: conj(g)*(f*conj(f) - g*conj(g) - conj(alpha)*mu*conj(f) + conj(alpha)*conj(g))",
                      "H: f*(f*conj(f) - g*conj(g) - alpha*conj(mu)*f + alpha*g)"})},
      {"4d", clauses({"H: f*(conj(g) - conj(mu)*conj(f))", "H: conj(g)*(g - mu*f)",
                      "H: f*conj(f) - f*conj(g) - conj(alpha)*(conj(f) - mu*conj(g))",
                      "H: f*conj(g) - g*conj(g) - alpha*(f - conj(mu)*g)",
                      "H: f*conj(g) - conj(alpha)*conj(g)", "H: f*conj(f) - alpha*f",
                      "H: conj(g)*(f*conj(f) - g*conj(g) + conj(alpha)*mu*conj(g) - conj(alpha)*conj(f))",
                      "H: f*(f*conj(f) - g*conj(g) - alpha*conj(mu)*g + alpha*f)"})},
  };
  return lists.at(c);
}

// Candidate (mu, alpha) pairs for the rank-one subcases come from the
// commutation classifier on (Q, S).
inline QuasinormalVerdict sio_quasinormal(const Poly& f, const Poly& g) {
  QuasinormalVerdict out;
  const SymbolMatrix2 S = sio_symbol(f, g);
  const SymbolMatrix2 Q = adjoint_product_symbol(S);
  Env env = fg_env(f, g);
  for (const char* c : {"1", "2", "3"})
    if (all_hold(quasinormal_case_list(c), env)) out.cases.push_back(c);

  const bool v1 = !(is_analytic(f) && is_analytic(conj_fn(g)));
  const Poly fg = f * conj_fn(g);
  const bool v2 = !(is_analytic(abs2(f) - fg) && is_analytic(fg - abs2(g)));
  if (v1 && v2) {
    const StackedColumns a = stack_columns(Q), b = stack_columns(S);
    if (rank_of(ww_lhs(a, b)).rank == 1 && rank_of(ww_lhs(b, a)).rank == 1) {
      for (const CaseMatch& m : commute_classify_rank1(Q, S)) {
        const std::map<std::string, std::string> sub = {
            {"(3)", "4a"}, {"(7)", "4b"}, {"(11)", "4c"}, {"(15)", "4d"}};
        auto it = sub.find(m.label);
        if (it == sub.end()) continue;
        const QC mu = m.constants.at("mu"), alpha = m.constants.at("alpha");
        bind_constant(env, "mu", mu);
        bind_constant(env, "alpha", alpha);
        if (alpha.is_zero() || !all_hold(quasinormal_case_list(it->second), env)) continue;
        if (std::find(out.cases.begin(), out.cases.end(), it->second) != out.cases.end()) continue;
        out.cases.push_back(it->second);
        if (!out.mu) {
          out.mu = mu;
          out.alpha = alpha;
        }
      }
    }
  }
  out.quasinormal = !out.cases.empty();
  out.commute_direct = commute(Q, S).commute;
  out.commute_agrees = out.commute_direct == out.quasinormal;
  return out;
}

inline bool sio_quasinormal_oracle(const Poly& f, const Poly& g) {
  const Op s = sio(f, g);
  return op_zero_test(adjoint(s) * s * s - s * adjoint(s) * s);
}

}  // namespace hardyops

#endif
