#ifndef HARDYOPS_COEFF_HPP
#define HARDYOPS_COEFF_HPP

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace hardyops {

// Complex number with exact rational parts.
struct QC {
  mpq_class re{0};
  mpq_class im{0};

  QC() = default;
  QC(long r) : re(r), im(0) {}
  QC(mpq_class r) : re(std::move(r)), im(0) {}
  QC(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}
  QC(long rn, long rd, long in, long id) : re(rn, rd), im(in, id) {
    re.canonicalize();
    im.canonicalize();
  }

  static QC I() { return QC(mpq_class(0), mpq_class(1)); }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }

  QC conj() const { return QC(re, -im); }
  mpq_class norm2() const { return re * re + im * im; }

  QC operator-() const { return QC(-re, -im); }
  QC& operator+=(const QC& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  QC& operator-=(const QC& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  QC& operator*=(const QC& o) {
    mpq_class r = re * o.re - im * o.im;
    mpq_class i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  QC& operator/=(const QC& o) {
    mpq_class n = o.norm2();
    if (sgn(n) == 0) throw std::domain_error("division by zero coefficient");
    mpq_class r = (re * o.re + im * o.im) / n;
    mpq_class i = (im * o.re - re * o.im) / n;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  QC inverse() const {
    QC one(1);
    one /= *this;
    return one;
  }

  friend QC operator+(QC a, const QC& b) { return a += b; }
  friend QC operator-(QC a, const QC& b) { return a -= b; }
  friend QC operator*(QC a, const QC& b) { return a *= b; }
  friend QC operator/(QC a, const QC& b) { return a /= b; }
  friend bool operator==(const QC& a, const QC& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const QC& a, const QC& b) { return !(a == b); }

  std::complex<double> to_complex() const {
    return {re.get_d(), im.get_d()};
  }
};

inline std::string rational_str(const mpq_class& q) {
  return q.get_str();
}

// "p/q", "p/qi", "p/q+r/si", "p/q-r/si"
inline std::string to_string(const QC& c) {
  if (c.is_zero()) return "0";
  if (sgn(c.im) == 0) return rational_str(c.re);
  if (sgn(c.re) == 0) return rational_str(c.im) + "i";
  std::string s = rational_str(c.re);
  if (sgn(c.im) > 0) s += "+";
  return s + rational_str(c.im) + "i";
}

// Parses the constant form produced by to_string.
inline QC parse_constant(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (ch != ' ' && ch != '\t') s += ch;
  if (s.empty()) throw std::invalid_argument("empty constant");
  auto rat = [](const std::string& t) {
    if (t.empty() || t == "+" || t == "-") {
      return mpq_class(t == "-" ? -1 : 1);
    }
    std::string u = t[0] == '+' ? t.substr(1) : t;
    mpq_class q;
    if (q.set_str(u, 10) != 0) throw std::invalid_argument("bad rational '" + t + "'");
    q.canonicalize();
    return q;
  };
  if (s.back() != 'i') return QC(rat(s));
  std::string body = s.substr(0, s.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != '/') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return QC(mpq_class(0), rat(body));
  return QC(rat(body.substr(0, split)), rat(body.substr(split)));
}

}  // namespace hardyops

#endif
