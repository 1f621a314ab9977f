#ifndef HARDYOPS_TOEPLITZ_HANKEL_HPP
#define HARDYOPS_TOEPLITZ_HANKEL_HPP

// T_f + HH_g and T_f - HH_g, with HH_g x = P+(g J x), together are unitarily
// equivalent to the GSIO with symbol [[f, g], [g~, f~]], g~(z) = g(zbar).

#include "hardyops/commute.hpp"

#include <string>

namespace hardyops {

inline SymbolMatrix2 toeplitz_hankel_symbol(const Poly& f, const Poly& g) {
  return {f, g, flip_tilde(g), flip_tilde(f)};
}

struct ThCommuteVerdict {
  bool commute = false;  // both pairs commute
  std::string shape;     // "brown-halmos", "hankel", "general"
  CommuteVerdict gsio;   // on the two symbol matrices
};

inline std::string th_shape(const Poly& f1, const Poly& g1, const Poly& f2, const Poly& g2) {
  if (g1.is_zero() && g2.is_zero()) return "brown-halmos";
  if (f1.is_zero() && f2.is_zero()) return "hankel";
  return "general";
}

inline ThCommuteVerdict th_commute(const Poly& f1, const Poly& g1, const Poly& f2, const Poly& g2) {
  ThCommuteVerdict out;
  out.gsio = commute(toeplitz_hankel_symbol(f1, g1), toeplitz_hankel_symbol(f2, g2));
  out.commute = out.gsio.commute;
  out.shape = th_shape(f1, g1, f2, g2);
  return out;
}

// Both commutators of T_f1 +- HH_g1 and T_f2 +- HH_g2 on H2.
inline bool th_commute_oracle(const Poly& f1, const Poly& g1, const Poly& f2, const Poly& g2) {
  for (int s : {1, -1}) {
    const QC c(s);
    const Op a = toeplitz(f1) + c * flip_hankel(g1);
    const Op b = toeplitz(f2) + c * flip_hankel(g2);
    if (!op_zero_test(a * b - b * a)) return false;
  }
  return true;
}

// Brown-Halmos: both analytic, both coanalytic, or a nontrivial linear
// combination is constant.
inline bool toeplitz_commute_classical(const Poly& f1, const Poly& f2) {
  if (is_analytic(f1) && is_analytic(f2)) return true;
  if (is_coanalytic(f1) && is_coanalytic(f2)) return true;
  return solve_proportional(nonconstant_part(f1), nonconstant_part(f2)).has_value() ||
         nonconstant_part(f2).is_zero();
}

// HH_g only sees the frequencies k >= 1 of g; commuting means HH_g1 = c HH_g2
// or HH_g2 = 0.
inline bool hankel_commute_classical(const Poly& g1, const Poly& g2) {
  const Poly a = g1.restrict(1, kMaxFreq), b = g2.restrict(1, kMaxFreq);
  return b.is_zero() || solve_proportional(a, b).has_value();
}

}  // namespace hardyops

#endif
