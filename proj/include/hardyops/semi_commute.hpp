#ifndef HARDYOPS_SEMI_COMMUTE_HPP
#define HARDYOPS_SEMI_COMMUTE_HPP

#include "hardyops/operators.hpp"
#include "hardyops/ranktests.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hardyops {

struct SemiCommuteVerdict {
  bool is_gsio = false;
  char case_label = 0;  // 'A'..'E', 0 when the product is not a GSIO
  std::vector<char> all_cases;
  std::optional<QC> lambda;  // case E only
  std::optional<SymbolMatrix2> product;

  std::string case_name() const { return case_label ? std::string(1, case_label) : "none"; }
};

namespace detail {

inline SymbolMatrix2 product_symbol(char c, const SymbolMatrix2& H1, const SymbolMatrix2& H2,
                                    const QC& lam) {
  const Poly f = H1.f * H2.f;
  const Poly v = H1.v * H2.v;
  switch (c) {
    case 'A': return {f, H1.f * H2.u, H1.v * H2.g, v};
    case 'B': return {f, H1.f * H2.u + H1.u * H2.v, Poly(), v};
    case 'C': return {f, Poly(), H1.g * H2.f + H1.v * H2.g, v};
    case 'D': return {f, H1.u * H2.v, H1.g * H2.f, v};
    default: return {f, H1.f * H2.v * lam.inverse(), H1.v * H2.f * lam, v};
  }
}

}  // namespace detail

// Decides whether R_{H1} R_{H2} is a GSIO from p1 (x) q2 = r1 (x) s2.
inline SemiCommuteVerdict semi_commute(const SymbolMatrix2& H1, const SymbolMatrix2& H2) {
  const StackedColumns a = stack_columns(H1);
  const StackedColumns b = stack_columns(H2);
  SemiCommuteVerdict out;
  if (!outer_equal({{1, a.p, b.q}}, {{1, a.r, b.s}})) return out;

  const bool p0 = a.p.is_zero(), r0 = a.r.is_zero(), q0 = b.q.is_zero(), s0 = b.s.is_zero();
  if (p0 && r0) out.all_cases.push_back('A');
  if (p0 && s0) out.all_cases.push_back('B');
  if (q0 && r0) out.all_cases.push_back('C');
  if (q0 && s0) out.all_cases.push_back('D');
  if (!r0 && !q0) {
    auto lam = solve_proportional(a.p, a.r);
    if (lam && !lam->lambda.is_zero() && b.s == b.q * lam->lambda.conj()) {
      out.all_cases.push_back('E');
      out.lambda = lam->lambda;
    }
  }
  if (out.all_cases.empty())
    throw std::logic_error("semi_commute: outer equation holds but no case matched");
  out.is_gsio = true;
  out.case_label = out.all_cases.front();
  out.product = detail::product_symbol(out.case_label, H1, H2, out.lambda.value_or(QC(1)));
  return out;
}

// Operator-side answer for the same question.
inline std::optional<GsioSymbol> semi_commute_oracle(const SymbolMatrix2& H1, const SymbolMatrix2& H2) {
  return is_gsio(gsio(H1) * gsio(H2));
}

// Symbol of S*S for S = S_{f,g}.
inline SymbolMatrix2 adjoint_product_symbol(const SymbolMatrix2& H) {
  if (H.f != H.g || H.u != H.v)
    throw ContractError("adjoint_product_symbol: expects [[f,g],[f,g]]");
  const Poly& f = H.f;
  const Poly& g = H.u;
  return {f * conj_fn(f), conj_fn(f) * g, f * conj_fn(g), g * conj_fn(g)};
}

struct IsometryVerdict {
  bool isometry = false;
  bool unimodular_corners = false;  // |f| = |v| = 1
  char case_label = 0;              // 'a' or 'b'
  std::optional<QC> lambda;
};

inline IsometryVerdict isometry_check(const SymbolMatrix2& H) {
  IsometryVerdict out;
  out.unimodular_corners = abs2(H.f) == Poly(1L) && abs2(H.v) == Poly(1L);
  if (!out.unimodular_corners) return out;
  const Poly ub = conj_fn(H.u), vb = conj_fn(H.v);
  if (is_analytic(H.f) && is_analytic(H.g) && is_analytic(ub) && is_analytic(vb)) {
    out.isometry = true;
    out.case_label = 'a';
    return out;
  }
  std::optional<QC> lam;
  if (auto s = solve_affine_membership(H.f, H.g); s && !s->degenerate) {
    lam = s->lambda;
  } else if (!s) {
    return out;
  } else if (auto t = solve_affine_membership(ub, vb); t && !t->degenerate) {
    lam = t->lambda.conj();
  } else {
    lam = QC(1);
  }
  if (lam->norm2() != 1) return out;
  if (is_analytic(H.f - H.g * *lam) && is_analytic(ub - vb * lam->conj()) &&
      is_analytic(H.f * vb)) {
    out.isometry = true;
    out.case_label = 'b';
    out.lambda = lam;
  }
  return out;
}

inline bool isometry_oracle(const SymbolMatrix2& H) {
  const Op R = gsio(H);
  return op_zero_test(adjoint(R) * R - identity(Space::L2));
}

}  // namespace hardyops

#endif
