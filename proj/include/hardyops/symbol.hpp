#ifndef HARDYOPS_SYMBOL_HPP
#define HARDYOPS_SYMBOL_HPP

#include "hardyops/coeff.hpp"

#include <algorithm>
#include <cctype>
#include <complex>
#include <cstdlib>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hardyops {

template <class C>
struct coeff_traits;

template <>
struct coeff_traits<QC> {
  static QC zero() { return QC(); }
  static QC one() { return QC(1); }
  static bool is_zero(const QC& c) { return c.is_zero(); }
  static QC conj(const QC& c) { return c.conj(); }
};

// Numeric coefficients drop only exact zeros from storage; tolerance
// comparisons live in the tol_* helpers below.
template <>
struct coeff_traits<std::complex<double>> {
  using C = std::complex<double>;
  static C zero() { return C(0.0, 0.0); }
  static C one() { return C(1.0, 0.0); }
  static bool is_zero(const C& c) { return c == zero(); }
  static C conj(const C& c) { return std::conj(c); }
};

// Trigonometric polynomial sum_k c_k z^k with finite support.
template <class C>
class Laurent {
 public:
  using traits = coeff_traits<C>;
  using map_type = std::map<long, C>;

  Laurent() = default;
  explicit Laurent(const C& c) { set(0, c); }
  explicit Laurent(long constant) { set(0, C(constant)); }

  static Laurent monomial(long k, const C& c = traits::one()) {
    Laurent p;
    p.set(k, c);
    return p;
  }
  static Laurent z(long k = 1) { return monomial(k); }

  const map_type& terms() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  std::size_t size() const { return c_.size(); }

  C coeff(long k) const {
    auto it = c_.find(k);
    return it == c_.end() ? traits::zero() : it->second;
  }
  void set(long k, const C& c) {
    if (traits::is_zero(c))
      c_.erase(k);
    else
      c_[k] = c;
  }
  void add_term(long k, const C& c) {
    if (traits::is_zero(c)) return;
    auto it = c_.find(k);
    if (it == c_.end()) {
      c_.emplace(k, c);
      return;
    }
    it->second += c;
    if (traits::is_zero(it->second)) c_.erase(it);
  }

  long min_deg() const { return c_.empty() ? 0 : c_.begin()->first; }
  long max_deg() const { return c_.empty() ? 0 : c_.rbegin()->first; }
  // Largest |k| in the support.
  long span() const {
    return c_.empty() ? 0 : std::max(std::labs(min_deg()), std::labs(max_deg()));
  }

  Laurent& operator+=(const Laurent& o) {
    for (const auto& [k, v] : o.c_) add_term(k, v);
    return *this;
  }
  Laurent& operator-=(const Laurent& o) {
    for (const auto& [k, v] : o.c_) add_term(k, -v);
    return *this;
  }
  Laurent& operator*=(const C& s) {
    if (traits::is_zero(s)) {
      c_.clear();
      return *this;
    }
    for (auto it = c_.begin(); it != c_.end();) {
      it->second *= s;
      if (traits::is_zero(it->second))
        it = c_.erase(it);
      else
        ++it;
    }
    return *this;
  }
  Laurent operator-() const {
    Laurent r = *this;
    for (auto& [k, v] : r.c_) v = -v;
    return r;
  }
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator*(Laurent a, const C& s) { return a *= s; }
  friend Laurent operator*(const C& s, Laurent a) { return a *= s; }
  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent r;
    for (const auto& [i, x] : a.c_)
      for (const auto& [j, y] : b.c_) r.add_term(i + j, x * y);
    return r;
  }
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }
  friend bool operator==(const Laurent& a, const Laurent& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }

  Laurent shifted(long m) const {
    Laurent r;
    for (const auto& [k, v] : c_) r.c_.emplace(k + m, v);
    return r;
  }
  Laurent pow(unsigned n) const {
    Laurent r(traits::one());
    for (unsigned i = 0; i < n; ++i) r = r * *this;
    return r;
  }

  // Keeps frequencies lo <= k <= hi.
  Laurent restrict(long lo, long hi) const {
    Laurent r;
    for (auto it = c_.lower_bound(lo); it != c_.end() && it->first <= hi; ++it)
      r.c_.emplace(it->first, it->second);
    return r;
  }

 private:
  map_type c_;
};

using Poly = Laurent<QC>;
using NPoly = Laurent<std::complex<double>>;

constexpr long kMaxFreq = 1L << 40;

template <class C>
Laurent<C> project_plus(const Laurent<C>& f) {
  return f.restrict(0, kMaxFreq);
}

template <class C>
Laurent<C> project_minus(const Laurent<C>& f) {
  return f.restrict(-kMaxFreq, -1);
}

// Pointwise conjugate on the circle: (conj f)_k = conj(f_{-k}).
template <class C>
Laurent<C> conj_fn(const Laurent<C>& f) {
  Laurent<C> r;
  for (const auto& [k, v] : f.terms()) r.set(-k, coeff_traits<C>::conj(v));
  return r;
}

// (Vf)_j = conj(f_{-j-1}), i.e. Vf = zbar * conj(f).
template <class C>
Laurent<C> v_transform(const Laurent<C>& f) {
  Laurent<C> r;
  for (const auto& [k, v] : f.terms()) r.set(-k - 1, coeff_traits<C>::conj(v));
  return r;
}

// f(zbar)
template <class C>
Laurent<C> flip_tilde(const Laurent<C>& f) {
  Laurent<C> r;
  for (const auto& [k, v] : f.terms()) r.set(-k, v);
  return r;
}

// conj(f(zbar)): coefficientwise conjugate.
template <class C>
Laurent<C> star(const Laurent<C>& f) {
  Laurent<C> r;
  for (const auto& [k, v] : f.terms()) r.set(k, coeff_traits<C>::conj(v));
  return r;
}

template <class C>
bool is_analytic(const Laurent<C>& f) {
  return f.is_zero() || f.min_deg() >= 0;
}

template <class C>
bool is_coanalytic(const Laurent<C>& f) {
  return f.is_zero() || f.max_deg() <= 0;
}

template <class C>
std::optional<C> is_constant(const Laurent<C>& f) {
  if (f.is_zero()) return coeff_traits<C>::zero();
  if (f.size() == 1 && f.min_deg() == 0) return f.coeff(0);
  return std::nullopt;
}

template <class C>
Laurent<C> nonconstant_part(const Laurent<C>& f) {
  Laurent<C> r = f;
  r.set(0, coeff_traits<C>::zero());
  return r;
}

// |f|^2 on the circle.
template <class C>
Laurent<C> abs2(const Laurent<C>& f) {
  return f * conj_fn(f);
}

// Numeric helpers; threshold is eps * (1 + scale).
inline double max_abs(const NPoly& f) {
  double m = 0;
  for (const auto& [k, v] : f.terms()) m = std::max(m, std::abs(v));
  return m;
}
inline bool tol_is_zero(const std::complex<double>& c, double eps, double scale) {
  return std::abs(c) <= eps * (1.0 + scale);
}
inline bool tol_is_analytic(const NPoly& f, double eps = 1e-10, double scale = -1) {
  if (scale < 0) scale = max_abs(f);
  for (const auto& [k, v] : f.terms())
    if (k < 0 && !tol_is_zero(v, eps, scale)) return false;
  return true;
}

inline NPoly to_numeric(const Poly& f) {
  NPoly r;
  for (const auto& [k, v] : f.terms()) r.set(k, v.to_complex());
  return r;
}

// ---------------------------------------------------------------------------
// proportionality solvers

struct Proportion {
  QC lambda;
  bool degenerate = false;  // u = v = 0
};

// u = lambda * v, lambda taken at the first index where v is nonzero.
inline std::optional<Proportion> solve_proportional(const std::vector<QC>& u,
                                                    const std::vector<QC>& v) {
  if (u.size() != v.size()) throw std::invalid_argument("solve_proportional: size mismatch");
  std::size_t pivot = v.size();
  for (std::size_t k = 0; k < v.size(); ++k)
    if (!v[k].is_zero()) {
      pivot = k;
      break;
    }
  if (pivot == v.size()) {
    for (const auto& x : u)
      if (!x.is_zero()) return std::nullopt;
    return Proportion{QC(), true};
  }
  QC lam = u[pivot] / v[pivot];
  for (std::size_t k = 0; k < v.size(); ++k)
    if (u[k] != lam * v[k]) return std::nullopt;
  return Proportion{lam, false};
}

inline std::optional<Proportion> solve_proportional(const Poly& u, const Poly& v) {
  std::vector<QC> a, b;
  auto iu = u.terms().begin();
  auto iv = v.terms().begin();
  while (iu != u.terms().end() || iv != v.terms().end()) {
    long ku = iu == u.terms().end() ? kMaxFreq : iu->first;
    long kv = iv == v.terms().end() ? kMaxFreq : iv->first;
    long k = std::min(ku, kv);
    a.push_back(ku == k ? (iu++)->second : QC());
    b.push_back(kv == k ? (iv++)->second : QC());
  }
  return solve_proportional(a, b);
}

// lambda with a - lambda*b analytic.
inline std::optional<Proportion> solve_affine_membership(const Poly& a, const Poly& b) {
  return solve_proportional(project_minus(a), project_minus(b));
}

// ---------------------------------------------------------------------------
// text form

struct ParseError : std::runtime_error {
  std::size_t column;  // 1-based
  ParseError(const std::string& what, std::size_t col)
      : std::runtime_error(what + " at column " + std::to_string(col)), column(col) {}
};

namespace detail {

class SymbolParser {
 public:
  explicit SymbolParser(const std::string& s, std::size_t col0 = 0) : s_(s), col0_(col0) {}

  Poly parse() {
    Poly out;
    skip();
    if (at_end()) fail("empty symbol");
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++i_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      auto [k, c] = term();
      out.add_term(k, sign < 0 ? -c : c);
      first = false;
      skip();
    }
    return out;
  }

 private:
  const std::string& s_;
  std::size_t col0_;
  std::size_t i_ = 0;

  bool at_end() const { return i_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[i_]; }
  void skip() {
    while (!at_end() && (s_[i_] == ' ' || s_[i_] == '\t' || s_[i_] == '\n' || s_[i_] == '\r')) ++i_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    std::string tok = at_end() ? std::string("end of input") : std::string("'") + s_[i_] + "'";
    throw ParseError(msg + " near " + tok, col0_ + i_ + 1);
  }

  std::string digits() {
    std::size_t b = i_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++i_;
    if (b == i_) fail("expected digits");
    return s_.substr(b, i_ - b);
  }
  mpq_class rational() {
    std::string num = digits();
    skip();
    std::string den = "1";
    if (peek() == '/') {
      ++i_;
      skip();
      den = digits();
      if (mpz_class(den) == 0) fail("zero denominator");
    }
    mpq_class q{mpz_class(num), mpz_class(den)};
    q.canonicalize();
    return q;
  }
  // number ['i'] | 'i'
  QC real_or_imag() {
    if (peek() == 'i') {
      ++i_;
      return QC::I();
    }
    mpq_class q = rational();
    skip();
    if (peek() == 'i') {
      ++i_;
      return QC(mpq_class(0), q);
    }
    return QC(q);
  }
  QC paren_coeff() {
    ++i_;  // '('
    skip();
    int sign = 1;
    if (peek() == '+' || peek() == '-') {
      sign = peek() == '-' ? -1 : 1;
      ++i_;
      skip();
    }
    QC c = real_or_imag();
    if (sign < 0) c = -c;
    skip();
    while (peek() == '+' || peek() == '-') {
      int sg = peek() == '-' ? -1 : 1;
      ++i_;
      skip();
      QC d = real_or_imag();
      c += sg < 0 ? -d : d;
      skip();
    }
    if (peek() != ')') fail("expected ')'");
    ++i_;
    return c;
  }
  long exponent() {
    // after 'z'
    skip();
    if (peek() != '^') return 1;
    const std::size_t caret = i_++;
    skip();
    int sign = 1;
    if (peek() == '-' || peek() == '+') {
      sign = peek() == '-' ? -1 : 1;
      ++i_;
    }
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      throw ParseError("expected integer exponent after '^'", col0_ + caret + 1);
    std::string d = digits();
    if (d.size() > 12) fail("exponent too large");
    return sign * std::stol(d);
  }
  std::pair<long, QC> term() {
    if (peek() == 'z') {
      ++i_;
      return {exponent(), QC(1)};
    }
    QC c;
    if (peek() == '(')
      c = paren_coeff();
    else if (peek() == 'i' || std::isdigit(static_cast<unsigned char>(peek())))
      c = real_or_imag();
    else
      fail("expected coefficient or 'z'");
    skip();
    if (peek() != '*') return {0, c};
    ++i_;
    skip();
    if (peek() != 'z') fail("expected 'z'");
    ++i_;
    return {exponent(), c};
  }
};

inline std::string coeff_body(const QC& c, bool& negative) {
  // Returns the printed magnitude of c; sign folded out when c is real or
  // purely imaginary.
  negative = false;
  if (sgn(c.im) == 0) {
    negative = sgn(c.re) < 0;
    return rational_str(negative ? mpq_class(-c.re) : c.re);
  }
  if (sgn(c.re) == 0) {
    negative = sgn(c.im) < 0;
    return rational_str(negative ? mpq_class(-c.im) : c.im) + "i";
  }
  return "(" + to_string(c) + ")";
}

}  // namespace detail

inline Poly parse_symbol(const std::string& text, std::size_t column_offset = 0) {
  return detail::SymbolParser(text, column_offset).parse();
}

// Canonical text: increasing frequency, e.g. "2*z^-1 + 3 + 4*z^1".
inline std::string to_string(const Poly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : f.terms()) {
    bool neg = false;
    std::string body = detail::coeff_body(c, neg);
    std::string t;
    if (k == 0)
      t = body;
    else if (body == "1")
      t = "z^" + std::to_string(k);
    else
      t = body + "*z^" + std::to_string(k);
    if (first)
      out += (neg ? "-" : "") + t;
    else
      out += (neg ? " - " : " + ") + t;
    first = false;
  }
  return out;
}

// [[f,u],[g,v]]
struct SymbolMatrix2 {
  Poly f, u, g, v;
  friend bool operator==(const SymbolMatrix2&, const SymbolMatrix2&) = default;
  long span() const { return std::max({f.span(), u.span(), g.span(), v.span()}); }
};

// theta(z) = z^power, power >= 1.
struct InnerMonomial {
  long power = 1;
  explicit InnerMonomial(long m) : power(m) {
    if (m < 1) throw std::invalid_argument("inner monomial power must be >= 1");
  }
  Poly symbol() const { return Poly::z(power); }
};

}  // namespace hardyops

#endif
