#ifndef HARDYOPS_TESTS_COMMON_HPP
#define HARDYOPS_TESTS_COMMON_HPP

#include "hardyops/symbol.hpp"

#include <ostream>
#include <random>

namespace hardyops::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  mpq_class rational(long bound = 9) {
    long n = uniform(-bound, bound);
    long d = uniform(1, bound);
    mpq_class q(n, d);
    q.canonicalize();
    return q;
  }
  QC coeff(long bound = 9, double complex_prob = 0.5) {
    QC c(rational(bound));
    if (coin(complex_prob)) c.im = rational(bound);
    return c;
  }
  QC nonzero_coeff(long bound = 9) {
    QC c;
    while (c.is_zero()) c = coeff(bound);
    return c;
  }

  // Random Laurent polynomial supported in [-span, span].
  Poly poly(long span, double density = 0.6, long bound = 9) {
    Poly p;
    for (long k = -span; k <= span; ++k)
      if (coin(density)) p.set(k, coeff(bound));
    return p;
  }
  Poly poly_in(long lo, long hi, double density = 0.6, long bound = 9) {
    Poly p;
    for (long k = lo; k <= hi; ++k)
      if (coin(density)) p.set(k, coeff(bound));
    return p;
  }
  Poly analytic(long deg, double density = 0.6) { return poly_in(0, deg, density); }
  Poly coanalytic(long deg, double density = 0.6) { return poly_in(-deg, 0, density); }

  SymbolMatrix2 matrix(long span, double density = 0.6) {
    return {poly(span, density), poly(span, density), poly(span, density), poly(span, density)};
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace hardyops::testing

namespace hardyops {
inline void PrintTo(const QC& c, std::ostream* os) { *os << to_string(c); }
template <class C>
void PrintTo(const Laurent<C>& p, std::ostream* os) {
  if constexpr (std::is_same_v<C, QC>) *os << to_string(p);
  else *os << "<numeric polynomial, " << p.size() << " terms>";
}
inline void PrintTo(const SymbolMatrix2& H, std::ostream* os) {
  *os << "f=" << to_string(H.f) << "; u=" << to_string(H.u) << "; g=" << to_string(H.g)
      << "; v=" << to_string(H.v);
}
}  // namespace hardyops

#endif
