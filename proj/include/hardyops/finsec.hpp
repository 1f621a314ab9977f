#ifndef HARDYOPS_FINSEC_HPP
#define HARDYOPS_FINSEC_HPP

// Double-precision finite sections of the primitive operators, used as an
// independent numeric oracle for the exact engine.
//
// Bases: H2 section {z^0 .. z^{n-1}}, H2perp section {zbar^1 .. zbar^n}, L2
// section H2 block first, then H2perp block.  Finite sections of products
// differ from sections of the product only near the high-frequency edge, so
// expressions are evaluated at size n + 2 pad and compared on the n
// frequencies nearest zero on each side.

#include "hardyops/operators.hpp"

#include <fftw3.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace hardyops {

using cplx = std::complex<double>;

inline cplx to_cplx(const QC& c) { return {c.re.get_d(), c.im.get_d()}; }

// Numeric Laurent symbol: frequency -> coefficient.
using NumSymbol = std::map<long, cplx>;

inline NumSymbol to_num(const Poly& p) {
  NumSymbol s;
  for (const auto& [k, c] : p.terms()) s[k] = to_cplx(c);
  return s;
}

inline cplx num_coeff(const NumSymbol& s, long k) {
  auto it = s.find(k);
  return it == s.end() ? cplx() : it->second;
}

inline NumSymbol num_mul(const NumSymbol& a, const NumSymbol& b) {
  NumSymbol r;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) r[i + j] += x * y;
  return r;
}

inline NumSymbol num_conj_fn(const NumSymbol& a) {
  NumSymbol r;
  for (const auto& [k, c] : a) r[-k] = std::conj(c);
  return r;
}

inline long num_reach(const NumSymbol& s) {
  long r = 0;
  for (const auto& [k, c] : s)
    if (c != cplx()) r = std::max(r, std::labs(k));
  return r;
}

struct NumSymbolMatrix {
  NumSymbol f, u, g, v;
};

inline NumSymbolMatrix to_num(const SymbolMatrix2& H) { return {to_num(H.f), to_num(H.u), to_num(H.g), to_num(H.v)}; }

// ---------------------------------------------------------------------------

class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
      : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows * cols) throw std::invalid_argument("DenseMatrix: entry count mismatch");
    for (const auto& x : a_)
      if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
        throw std::invalid_argument("DenseMatrix: non-finite entry");
  }
  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  DenseMatrix operator*(const DenseMatrix& b) const {
    if (cols_ != b.rows_) throw std::invalid_argument("DenseMatrix: shape mismatch in product");
    DenseMatrix r(rows_, b.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const cplx x = (*this)(i, k);
        if (x == cplx()) continue;
        const cplx* brow = &b.a_[k * b.cols_];
        cplx* rrow = &r.a_[i * b.cols_];
        for (std::size_t j = 0; j < b.cols_; ++j) rrow[j] += x * brow[j];
      }
    return r;
  }
  DenseMatrix& operator+=(const DenseMatrix& b) {
    check_same(b);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += b.a_[i];
    return *this;
  }
  DenseMatrix operator+(const DenseMatrix& b) const { return DenseMatrix(*this) += b; }
  DenseMatrix operator-(const DenseMatrix& b) const {
    check_same(b);
    DenseMatrix r(*this);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= b.a_[i];
    return r;
  }
  DenseMatrix scaled(cplx c) const {
    DenseMatrix r(*this);
    for (auto& x : r.a_) x *= c;
    return r;
  }
  DenseMatrix adjoint() const {
    DenseMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
  }
  double max_abs() const {
    double m = 0;
    for (const auto& x : a_) m = std::max(m, std::abs(x));
    return m;
  }
  std::vector<cplx> matvec(const std::vector<cplx>& x) const {
    if (x.size() != cols_) throw std::invalid_argument("DenseMatrix: shape mismatch in matvec");
    std::vector<cplx> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      cplx s = 0;
      const cplx* row = &a_[i * cols_];
      for (std::size_t j = 0; j < cols_; ++j) s += row[j] * x[j];
      y[i] = s;
    }
    return y;
  }

 private:
  void check_same(const DenseMatrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("DenseMatrix: shape mismatch");
  }
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<cplx> a_;
};

// ---------------------------------------------------------------------------
// primitive sections

// Index of a basis vector of the section of space s, or -1 outside it.
inline long section_index(Space s, long n, long freq) {
  switch (s) {
    case Space::H2: return freq >= 0 && freq < n ? freq : -1;
    case Space::H2perp: return freq <= -1 && freq >= -n ? -freq - 1 : -1;
    case Space::L2:
      if (freq >= 0) return freq < n ? freq : -1;
      return freq >= -n ? n - freq - 1 : -1;
  }
  return -1;
}

inline long section_freq(Space s, long n, long idx) {
  switch (s) {
    case Space::H2: return idx;
    case Space::H2perp: return -idx - 1;
    case Space::L2: return idx < n ? idx : -(idx - n) - 1;
  }
  return 0;
}

inline std::size_t section_dim(Space s, long n) { return static_cast<std::size_t>(s == Space::L2 ? 2 * n : n); }

namespace detail {

// Entry (j, k) = coefficient of frequency fj in sym * z^{fk}, both restricted to the sections.
inline DenseMatrix convolution_section(const NumSymbol& sym, Space dom, Space cod, long n) {
  DenseMatrix m(section_dim(cod, n), section_dim(dom, n));
  for (std::size_t k = 0; k < m.cols(); ++k) {
    const long fk = section_freq(dom, n, static_cast<long>(k));
    for (const auto& [d, c] : sym) {
      const long j = section_index(cod, n, fk + d);
      if (j >= 0) m(static_cast<std::size_t>(j), k) += c;
    }
  }
  return m;
}

}  // namespace detail

// T_f: entry f_{j-k}.
inline DenseMatrix toeplitz_matrix(const NumSymbol& f, long n) {
  return detail::convolution_section(f, Space::H2, Space::H2, n);
}
// H_g: H2 -> H2perp, entry g_{-j-k} for row zbar^j.
inline DenseMatrix hankel_matrix(const NumSymbol& g, long n) {
  return detail::convolution_section(g, Space::H2, Space::H2perp, n);
}
// y -> P+(u y): H2perp -> H2, entry u_{j+k} for column zbar^k.
inline DenseMatrix hankel_adj_matrix(const NumSymbol& u, long n) {
  return detail::convolution_section(u, Space::H2perp, Space::H2, n);
}
// dual Toeplitz on H2perp, entry v_{k-j} on the conjugate basis.
inline DenseMatrix dual_toeplitz_matrix(const NumSymbol& v, long n) {
  return detail::convolution_section(v, Space::H2perp, Space::H2perp, n);
}
inline DenseMatrix toeplitz_matrix(const Poly& f, long n) { return toeplitz_matrix(to_num(f), n); }
inline DenseMatrix hankel_matrix(const Poly& g, long n) { return hankel_matrix(to_num(g), n); }
inline DenseMatrix hankel_adj_matrix(const Poly& u, long n) { return hankel_adj_matrix(to_num(u), n); }
inline DenseMatrix dual_toeplitz_matrix(const Poly& v, long n) { return dual_toeplitz_matrix(to_num(v), n); }

// x -> P+(g Jx), J z^k = z^{-k-1}: entry g_{j+k+1}.
inline DenseMatrix flip_hankel_matrix(const NumSymbol& g, long n) {
  DenseMatrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (long j = 0; j < n; ++j)
    for (long k = 0; k < n; ++k) m(j, k) = num_coeff(g, j + k + 1);
  return m;
}

inline DenseMatrix block2(const DenseMatrix& a, const DenseMatrix& b, const DenseMatrix& c, const DenseMatrix& d) {
  const std::size_t n = a.rows();
  DenseMatrix m(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = a(i, j);
      m(i, n + j) = b(i, j);
      m(n + i, j) = c(i, j);
      m(n + i, n + j) = d(i, j);
    }
  return m;
}

// [[T_f, P+(u .)], [H_g, dual T_v]] on the L2 section.
inline DenseMatrix gsio_matrix(const NumSymbolMatrix& H, long n) {
  return block2(toeplitz_matrix(H.f, n), hankel_adj_matrix(H.u, n), hankel_matrix(H.g, n),
                dual_toeplitz_matrix(H.v, n));
}
inline DenseMatrix gsio_matrix(const SymbolMatrix2& H, long n) { return gsio_matrix(to_num(H), n); }

inline DenseMatrix mult_matrix(const NumSymbol& f, long n) {
  return detail::convolution_section(f, Space::L2, Space::L2, n);
}

// ---------------------------------------------------------------------------
// expression sections

// Section of an operator expression, assembled from primitive sections.
inline DenseMatrix section(const Op& e, long n) {
  const OpNode& nd = e.node();
  const std::size_t dd = section_dim(nd.dom, n), dc = section_dim(nd.cod, n);
  auto embed = [&](Space from, Space to) {  // inclusion or projection between sections
    DenseMatrix m(section_dim(to, n), section_dim(from, n));
    for (std::size_t k = 0; k < m.cols(); ++k) {
      const long j = section_index(to, n, section_freq(from, n, static_cast<long>(k)));
      if (j >= 0) m(static_cast<std::size_t>(j), k) = 1.0;
    }
    return m;
  };
  switch (nd.kind) {
    case OpKind::Toeplitz: return toeplitz_matrix(to_num(nd.sym), n);
    case OpKind::Hankel: return hankel_matrix(to_num(nd.sym), n);
    case OpKind::HankelAdj: return hankel_adj_matrix(to_num(nd.sym), n);
    case OpKind::DualToeplitz: return dual_toeplitz_matrix(to_num(nd.sym), n);
    case OpKind::Mult: return mult_matrix(to_num(nd.sym), n);
    case OpKind::FlipHankel: return flip_hankel_matrix(to_num(nd.sym), n);
    case OpKind::Gsio: return gsio_matrix(nd.mat, n);
    case OpKind::RieszPlus: return embed(Space::L2, Space::H2).adjoint() * embed(Space::L2, Space::H2);
    case OpKind::RieszMinus: return embed(Space::L2, Space::H2perp).adjoint() * embed(Space::L2, Space::H2perp);
    case OpKind::Identity: return DenseMatrix::identity(dd);
    case OpKind::Zero: return DenseMatrix(dc, dd);
    case OpKind::Include: return embed(nd.dom, Space::L2);
    case OpKind::Project: return embed(Space::L2, nd.cod);
    case OpKind::Compose: return section(Op(nd.kids[0]), n) * section(Op(nd.kids[1]), n);
    case OpKind::Sum: {
      DenseMatrix r(dc, dd);
      for (const auto& k : nd.kids) r += section(Op(k), n);
      return r;
    }
    case OpKind::Scale: return section(Op(nd.kids[0]), n).scaled(to_cplx(nd.scalar));
    case OpKind::Adjoint: return section(Op(nd.kids[0]), n).adjoint();
  }
  throw std::logic_error("section: unknown node");
}

struct SectionSpec {
  long n = 32;
  long pad = 0;  // 0: derived from the expression
};

inline double numeric_tolerance(long n) { return 1e-9 * static_cast<double>(n); }

// Rows and columns of the central block: the n frequencies nearest zero.
inline DenseMatrix central_block(const DenseMatrix& m, Space dom, Space cod, long big, long n) {
  std::vector<std::size_t> rows, cols;
  for (std::size_t i = 0; i < section_dim(cod, n); ++i)
    rows.push_back(static_cast<std::size_t>(section_index(cod, big, section_freq(cod, n, static_cast<long>(i)))));
  for (std::size_t i = 0; i < section_dim(dom, n); ++i)
    cols.push_back(static_cast<std::size_t>(section_index(dom, big, section_freq(dom, n, static_cast<long>(i)))));
  DenseMatrix r(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) r(i, j) = m(rows[i], cols[j]);
  return r;
}

struct NumericVerdict {
  bool equal = false;
  double max_error = 0;
  double tolerance = 0;
  long n = 0, pad = 0;
};

// lhs == rhs on the central block of padded sections.
inline NumericVerdict numeric_compare(const Op& lhs, const Op& rhs, SectionSpec spec = {}) {
  if (lhs.domain() != rhs.domain() || lhs.codomain() != rhs.codomain())
    throw SignatureError("numeric_verify: expressions act between different spaces");
  if (spec.pad == 0) spec.pad = std::max<long>(1, std::max(degree_bound(lhs), degree_bound(rhs)));
  if (spec.n <= 2 * spec.pad) throw std::invalid_argument("numeric_verify: need n > 2 pad");
  const long big = spec.n + 2 * spec.pad;
  const DenseMatrix d = section(lhs, big) - section(rhs, big);
  NumericVerdict v;
  v.n = spec.n;
  v.pad = spec.pad;
  v.tolerance = numeric_tolerance(spec.n);
  v.max_error = central_block(d, lhs.domain(), lhs.codomain(), big, spec.n).max_abs();
  v.equal = v.max_error <= v.tolerance;
  return v;
}

inline bool numeric_verify(const Op& lhs, const Op& rhs, const SectionSpec& spec = {}) {
  return numeric_compare(lhs, rhs, spec).equal;
}

inline bool numeric_zero(const Op& e, const SectionSpec& spec = {}) {
  return numeric_verify(e, zero(e.domain(), e.codomain()), spec);
}

// ---------------------------------------------------------------------------
// FFT Toeplitz matvec by circulant embedding

class FftToeplitz {
 public:
  explicit FftToeplitz(long n) : n_(n) {
    m_ = 1;
    while (m_ < 2 * n_) m_ <<= 1;
    buf_ = fftw_alloc_complex(static_cast<std::size_t>(m_));
    sym_ = fftw_alloc_complex(static_cast<std::size_t>(m_));
    std::lock_guard<std::mutex> lock(planner_mutex());
    fwd_ = fftw_plan_dft_1d(static_cast<int>(m_), buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_1d(static_cast<int>(m_), buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
    sym_plan_ = fftw_plan_dft_1d(static_cast<int>(m_), sym_, sym_, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  FftToeplitz(const FftToeplitz&) = delete;
  FftToeplitz& operator=(const FftToeplitz&) = delete;
  ~FftToeplitz() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
    fftw_destroy_plan(sym_plan_);
    fftw_free(buf_);
    fftw_free(sym_);
  }

  // Symbol frequencies with |k| >= n never reach the section.
  void set_symbol(const NumSymbol& f) {
    for (long i = 0; i < m_; ++i) sym_[i][0] = sym_[i][1] = 0;
    for (const auto& [k, c] : f) {
      if (k <= -n_ || k >= n_) continue;
      const long i = k >= 0 ? k : m_ + k;
      sym_[i][0] = c.real();
      sym_[i][1] = c.imag();
    }
    fftw_execute(sym_plan_);
  }

  std::vector<cplx> apply(const std::vector<cplx>& x) {
    if (static_cast<long>(x.size()) != n_) throw std::invalid_argument("FftToeplitz: size mismatch");
    for (long i = 0; i < m_; ++i) buf_[i][0] = buf_[i][1] = 0;
    for (long i = 0; i < n_; ++i) {
      buf_[i][0] = x[i].real();
      buf_[i][1] = x[i].imag();
    }
    fftw_execute(fwd_);
    for (long i = 0; i < m_; ++i) {
      const cplx p = cplx(buf_[i][0], buf_[i][1]) * cplx(sym_[i][0], sym_[i][1]);
      buf_[i][0] = p.real();
      buf_[i][1] = p.imag();
    }
    fftw_execute(bwd_);
    std::vector<cplx> y(static_cast<std::size_t>(n_));
    const double s = 1.0 / static_cast<double>(m_);
    for (long i = 0; i < n_; ++i) y[i] = cplx(buf_[i][0], buf_[i][1]) * s;
    return y;
  }

 private:
  static std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
  }
  long n_, m_;
  fftw_complex *buf_, *sym_;
  fftw_plan fwd_, bwd_, sym_plan_;
};

inline std::vector<cplx> fft_toeplitz_matvec(const NumSymbol& f, const std::vector<cplx>& x) {
  FftToeplitz t(static_cast<long>(x.size()));
  t.set_symbol(f);
  return t.apply(x);
}
inline std::vector<cplx> fft_toeplitz_matvec(const Poly& f, const std::vector<cplx>& x) {
  return fft_toeplitz_matvec(to_num(f), x);
}

inline double relative_error(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num = std::max(num, std::abs(a[i] - b[i]));
    den = std::max(den, std::abs(b[i]));
  }
  return den == 0 ? num : num / den;
}

struct BenchRow {
  long n;
  std::string method;
  std::int64_t nanos;
};

// Best of `reps` runs of dense and FFT matvec for each n.
inline std::vector<BenchRow> bench_fft(const NumSymbol& f, const std::vector<long>& sizes, int reps = 3) {
  using clock = std::chrono::steady_clock;
  std::vector<BenchRow> rows;
  for (long n : sizes) {
    std::vector<cplx> x(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) x[i] = cplx(std::cos(0.37 * i), std::sin(0.11 * i));
    const DenseMatrix T = toeplitz_matrix(f, n);
    FftToeplitz fft(n);
    fft.set_symbol(f);
    std::int64_t dense = INT64_MAX, fast = INT64_MAX;
    volatile double sink = 0;
    for (int r = 0; r < reps; ++r) {
      auto t0 = clock::now();
      sink = sink + T.matvec(x)[0].real();
      auto t1 = clock::now();
      sink = sink + fft.apply(x)[0].real();
      auto t2 = clock::now();
      dense = std::min<std::int64_t>(dense, std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
      fast = std::min<std::int64_t>(fast, std::chrono::duration_cast<std::chrono::nanoseconds>(t2 - t1).count());
    }
    rows.push_back({n, "dense", dense});
    rows.push_back({n, "fft", fast});
  }
  return rows;
}

inline std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::string s = "n,method,nanos\n";
  for (const auto& r : rows) s += std::to_string(r.n) + "," + r.method + "," + std::to_string(r.nanos) + "\n";
  return s;
}

// ---------------------------------------------------------------------------
// finite Blaschke products (numeric only)

struct BlaschkeSeries {
  NumSymbol coeffs;  // frequencies 0..N
  double tail_bound = 0;  // l1 norm of the dropped coefficients, bounded
};

// prod (z - a) / (1 - conj(a) z), Taylor coefficients up to degree N.
inline BlaschkeSeries blaschke_fourier(const std::vector<cplx>& zeros, long N) {
  std::vector<cplx> acc(static_cast<std::size_t>(N + 1));
  acc[0] = 1.0;
  double tail = 0, l1 = 1;
  for (const cplx& a : zeros) {
    const double r = std::abs(a);
    if (!(r < 1)) throw std::domain_error("blaschke_fourier: zeros must lie in the open unit disk");
    std::vector<cplx> fac(static_cast<std::size_t>(N + 1));
    fac[0] = -a;
    cplx p = 1.0;
    for (long k = 1; k <= N; ++k) {
      fac[k] = p * (1.0 - r * r);
      p *= std::conj(a);
    }
    std::vector<cplx> next(static_cast<std::size_t>(N + 1));
    for (long i = 0; i <= N; ++i)
      if (acc[i] != cplx())
        for (long j = 0; i + j <= N; ++j) next[i + j] += acc[i] * fac[j];
    // dropped mass: old tail times this factor, plus the product with this factor's tail
    const double fac_l1 = 1 + 2 * r, fac_tail = std::pow(r, static_cast<double>(N)) * (1 + r);
    tail = tail * fac_l1 + l1 * fac_tail;
    l1 *= fac_l1;
    acc = std::move(next);
  }
  BlaschkeSeries s;
  for (long k = 0; k <= N; ++k)
    if (acc[k] != cplx()) s.coeffs[k] = acc[k];
  s.tail_bound = tail;
  return s;
}

// D^{alpha,beta}_psi D^{theta,alpha}_phi against D^{theta,beta}_{phi psi} through
// the GSIO symbols of the three operators, for numeric inner functions.
inline NumSymbolMatrix adtp_num_symbol(const NumSymbol& phi, const NumSymbol& theta, const NumSymbol& alpha) {
  const NumSymbol ab = num_conj_fn(alpha);
  return {num_mul(num_mul(ab, theta), phi), num_mul(ab, phi), num_mul(theta, phi), phi};
}

inline long num_reach(const NumSymbolMatrix& H) {
  return std::max({num_reach(H.f), num_reach(H.u), num_reach(H.g), num_reach(H.v)});
}

inline NumericVerdict adtp_numeric_check(const NumSymbol& psi, const NumSymbol& phi, const NumSymbol& alpha,
                                         const NumSymbol& beta, const NumSymbol& theta, long n,
                                         double tolerance) {
  const NumSymbolMatrix A = adtp_num_symbol(psi, alpha, beta), B = adtp_num_symbol(phi, theta, alpha);
  const NumSymbolMatrix C = adtp_num_symbol(num_mul(phi, psi), theta, beta);
  const long pad = num_reach(A) + num_reach(B);
  const long big = n + 2 * pad;
  // only the central columns are needed
  const std::size_t dim = section_dim(Space::L2, big);
  DenseMatrix cols(dim, section_dim(Space::L2, n));
  for (std::size_t j = 0; j < cols.cols(); ++j)
    cols(static_cast<std::size_t>(section_index(Space::L2, big, section_freq(Space::L2, n, static_cast<long>(j)))), j) = 1.0;
  const DenseMatrix d = gsio_matrix(A, big) * (gsio_matrix(B, big) * cols) - gsio_matrix(C, big) * cols;
  NumericVerdict v;
  v.n = n;
  v.pad = pad;
  v.tolerance = tolerance;
  for (std::size_t i = 0; i < section_dim(Space::L2, n); ++i) {
    const auto r = static_cast<std::size_t>(section_index(Space::L2, big, section_freq(Space::L2, n, static_cast<long>(i))));
    for (std::size_t j = 0; j < d.cols(); ++j) v.max_error = std::max(v.max_error, std::abs(d(r, j)));
  }
  v.equal = v.max_error <= tolerance;
  return v;
}

}  // namespace hardyops

#endif
