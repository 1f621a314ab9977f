#ifndef HARDYOPS_DUAL_TRUNCATED_HPP
#define HARDYOPS_DUAL_TRUNCATED_HPP

// Asymmetric dual truncated Toeplitz operators D^{theta,alpha}_phi for
// monomial inner functions.  Up to unitary factors D^{theta,alpha}_phi is the
// GSIO with symbol [[conj(alpha) theta phi, conj(alpha) phi], [theta phi, phi]].

#include "hardyops/clause.hpp"
#include "hardyops/commute.hpp"
#include "hardyops/semi_commute.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hardyops {

struct UnsupportedInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// z^m with m >= 1 and coefficient 1; anything else is not supported exactly.
inline InnerMonomial inner_monomial_from(const Poly& p) {
  if (p.size() != 1 || p.min_deg() < 1 || p.coeff(p.min_deg()) != QC(1))
    throw UnsupportedInput("inner function must be a monomial z^m, m >= 1, in exact mode");
  return InnerMonomial(p.min_deg());
}

inline SymbolMatrix2 adtp_symbol(const Poly& phi, const InnerMonomial& theta, const InnerMonomial& alpha) {
  const Poly t = theta.symbol(), ab = conj_fn(alpha.symbol());
  return {ab * t * phi, ab * phi, t * phi, phi};
}

// ---------------------------------------------------------------------------
// products D^{alpha,beta}_psi D^{theta,alpha}_phi

struct AdtpVerdict {
  bool product = false;  // equals D^{theta,beta}_{phi psi}
  std::vector<int> cases;
  std::optional<QC> lambda;  // first of cases (3)/(4)
  bool remapped = false;     // case (4) reached from |lambda| > 1 in case (3)
  Poly sigma;
  bool semi_commute_agrees = false;
};

inline const ClauseList& adtp_case_list(int c) {
  static const std::vector<ClauseList> lists = {
      clauses({"H: psi", "H: conj(alpha)*beta*conj(psi)"}),
      clauses({"H: conj(phi)", "H: theta*conj(alpha)*phi"}),
      clauses({"H: conj(phi)", "H: (1 - lam*conj(alpha))*theta*phi",
               "H: (conj(alpha) - conj(lam))*beta*conj(psi)", "H: (alpha - lam)*psi",
               "H: (1 - lam*conj(alpha))*theta*phi*psi"}),
      clauses({"H: psi", "H: (1 - lam*conj(alpha))*beta*conj(psi)",
               "H: (conj(alpha) - conj(lam))*theta*phi", "H: (alpha - lam)*conj(phi)",
               "H: (1 - lam*conj(alpha))*beta*conj(phi)*conj(psi)"}),
  };
  return lists.at(static_cast<std::size_t>(c - 1));
}

namespace detail {

// First nondegenerate solution of the listed affine clauses, in order; the
// flag marks solutions that come out conjugated.  nullopt if one clause has
// no solution at all.
struct LambdaSource {
  Poly a, b;
  bool conjugated;
};

inline std::optional<QC> solve_lambda(const std::vector<LambdaSource>& sources) {
  for (const auto& s : sources) {
    auto p = solve_affine_membership(s.a, s.b);
    if (!p) return std::nullopt;
    if (!p->degenerate) return s.conjugated ? p->lambda.conj() : p->lambda;
  }
  return QC();
}

}  // namespace detail

inline AdtpVerdict adtp_product(const Poly& psi, const Poly& phi, const InnerMonomial& alpha,
                                const InnerMonomial& beta, const InnerMonomial& theta) {
  AdtpVerdict out;
  const Poly a = alpha.symbol(), ab = conj_fn(a), b = beta.symbol(), t = theta.symbol();
  Env env = {{"psi", psi}, {"phi", phi}, {"alpha", a}, {"beta", b}, {"theta", t}};
  if (all_hold(adtp_case_list(1), env)) out.cases.push_back(1);
  if (all_hold(adtp_case_list(2), env)) out.cases.push_back(2);

  auto try_case = [&](int c, const QC& lam) {
    if (lam.norm2() >= 1) return false;
    bind_constant(env, "lam", lam);
    if (!all_hold(adtp_case_list(c), env)) return false;
    out.cases.push_back(c);
    if (!out.lambda) out.lambda = lam;
    return true;
  };
  // case (3): (alpha - lam) psi, (conj(alpha) - conj(lam)) beta conj(psi), (1 - lam conj(alpha)) theta phi
  const Poly bpsib = b * conj_fn(psi);
  auto l3 = detail::solve_lambda(
      {{a * psi, psi, false}, {ab * bpsib, bpsib, true}, {t * phi, ab * t * phi, false}});
  bool remap_candidate = false;
  if (l3) {
    if (l3->norm2() < 1) try_case(3, *l3);
    else if (l3->norm2() > 1) remap_candidate = true;
  }
  // case (4): (alpha - lam) conj(phi), (conj(alpha) - conj(lam)) theta phi, (1 - lam conj(alpha)) beta conj(psi)
  const Poly phib = conj_fn(phi);
  auto l4 = detail::solve_lambda(
      {{a * phib, phib, false}, {ab * t * phi, t * phi, true}, {bpsib, ab * bpsib, false}});
  bool four = l4 && try_case(4, *l4);
  if (!four && remap_candidate) {
    const QC lam = l3->conj().inverse();
    if (try_case(4, lam)) out.remapped = true;
  }

  out.product = !out.cases.empty();
  out.sigma = phi * psi;
  const SymbolMatrix2 Psi = adtp_symbol(psi, alpha, beta), Phi = adtp_symbol(phi, theta, alpha);
  const SemiCommuteVerdict s = semi_commute(Psi, Phi);
  const bool via_semi = s.is_gsio && same_gsio_class(*s.product, adtp_symbol(out.sigma, theta, beta));
  out.semi_commute_agrees = via_semi == out.product;
  return out;
}

inline bool adtp_product_oracle(const Poly& psi, const Poly& phi, const InnerMonomial& alpha,
                                const InnerMonomial& beta, const InnerMonomial& theta) {
  return op_zero_test(gsio(adtp_symbol(psi, alpha, beta)) * gsio(adtp_symbol(phi, theta, alpha)) -
                      gsio(adtp_symbol(phi * psi, theta, beta)));
}

// ---------------------------------------------------------------------------
// dual truncated Toeplitz operators (theta = alpha = beta)

inline SymbolMatrix2 dtt_symbol(const Poly& phi, const InnerMonomial& theta) {
  return adtp_symbol(phi, theta, theta);
}

struct DttProductVerdict {
  bool product = false;  // D_phi D_psi = D_{phi psi}
  std::vector<int> cases;
  std::optional<QC> lambda;
  bool adtp_agrees = false;
};

inline const ClauseList& dtt_product_case_list(int c) {
  static const std::vector<ClauseList> lists = {
      clauses({}),
      clauses({"H: conj(phi)", "H: conj(psi)", "H: (theta - lam)*phi", "H: (theta - lam)*psi",
               "H: (theta - lam)*phi*psi"}),
      clauses({"H: phi", "H: psi", "H: (theta - lam)*conj(psi)", "H: (theta - lam)*conj(phi)",
               "H: (theta - lam)*conj(phi)*conj(psi)"}),
  };
  return lists.at(static_cast<std::size_t>(c - 1));
}

inline DttProductVerdict dtt_product(const Poly& phi, const Poly& psi, const InnerMonomial& theta) {
  DttProductVerdict out;
  const Poly t = theta.symbol();
  Env env = {{"phi", phi}, {"psi", psi}, {"theta", t}};
  if (is_constant(phi) || is_constant(psi)) out.cases.push_back(1);
  auto try_case = [&](int c, const std::optional<QC>& lam) {
    if (!lam || lam->norm2() >= 1) return;
    bind_constant(env, "lam", *lam);
    if (!all_hold(dtt_product_case_list(c), env)) return;
    out.cases.push_back(c);
    if (!out.lambda) out.lambda = *lam;
  };
  // (theta - lam) h analytic: lam from theta h - lam h
  try_case(2, detail::solve_lambda({{t * phi, phi, false}, {t * psi, psi, false}}));
  const Poly phib = conj_fn(phi), psib = conj_fn(psi);
  try_case(3, detail::solve_lambda({{t * phib, phib, false}, {t * psib, psib, false}}));
  out.product = !out.cases.empty();
  out.adtp_agrees = adtp_product(phi, psi, theta, theta, theta).product == out.product;
  return out;
}

inline bool dtt_product_oracle(const Poly& phi, const Poly& psi, const InnerMonomial& theta) {
  return adtp_product_oracle(phi, psi, theta, theta, theta);
}

struct DttCommuteVerdict {
  bool commute = false;
  std::vector<int> cases;
  std::optional<QC> lambda;      // cases (1)/(2)
  std::optional<QC> combination;  // case (3): phi - c psi is constant
  CommuteVerdict gsio;
};

inline const ClauseList& dtt_commute_case_list(int c) {
  static const std::vector<ClauseList> lists = {
      clauses({"H: phi", "H: psi", "H: conj(phi)*(theta - lam)", "H: conj(psi)*(theta - lam)"}),
      clauses({"H: conj(phi)", "H: conj(psi)", "H: phi*(theta - lam)", "H: psi*(theta - lam)"}),
      clauses({"C: phi - c*psi"}),
  };
  return lists.at(static_cast<std::size_t>(c - 1));
}

inline DttCommuteVerdict dtt_commute(const Poly& phi, const Poly& psi, const InnerMonomial& theta) {
  if (is_constant(phi) || is_constant(psi))
    throw ContractError("dtt_commute: phi and psi must be non-constant");
  DttCommuteVerdict out;
  const Poly t = theta.symbol();
  Env env = {{"phi", phi}, {"psi", psi}, {"theta", t}};
  auto try_case = [&](int c, const std::optional<QC>& lam) {
    if (!lam || lam->norm2() >= 1) return;
    bind_constant(env, "lam", *lam);
    if (!all_hold(dtt_commute_case_list(c), env)) return;
    out.cases.push_back(c);
    if (!out.lambda) out.lambda = *lam;
  };
  const Poly phib = conj_fn(phi), psib = conj_fn(psi);
  try_case(1, detail::solve_lambda({{t * phib, phib, false}, {t * psib, psib, false}}));
  try_case(2, detail::solve_lambda({{t * phi, phi, false}, {t * psi, psi, false}}));
  if (auto p = solve_proportional(nonconstant_part(phi), nonconstant_part(psi)); p && !p->degenerate) {
    bind_constant(env, "c", p->lambda);
    if (all_hold(dtt_commute_case_list(3), env)) {
      out.cases.push_back(3);
      out.combination = p->lambda;
    }
  }
  out.commute = !out.cases.empty();
  out.gsio = commute(dtt_symbol(phi, theta), dtt_symbol(psi, theta));
  return out;
}

inline bool dtt_commute_oracle(const Poly& phi, const Poly& psi, const InnerMonomial& theta) {
  return commute_oracle(dtt_symbol(phi, theta), dtt_symbol(psi, theta));
}

}  // namespace hardyops

#endif
