#ifndef HARDYOPS_RANKTESTS_HPP
#define HARDYOPS_RANKTESTS_HPP

#include "hardyops/symbol.hpp"

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hardyops {

struct ContractError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Element of the doubled coanalytic space; both halves live on k <= -1.
struct StackedVector {
  Poly top, bottom;

  StackedVector() = default;
  StackedVector(Poly t, Poly b) : top(std::move(t)), bottom(std::move(b)) {
    if ((!top.is_zero() && top.max_deg() > -1) || (!bottom.is_zero() && bottom.max_deg() > -1))
      throw std::invalid_argument("StackedVector: components must be supported on k <= -1");
  }
  bool is_zero() const { return top.is_zero() && bottom.is_zero(); }
  bool operator==(const StackedVector&) const = default;

  StackedVector operator+(const StackedVector& o) const { return {top + o.top, bottom + o.bottom}; }
  StackedVector operator-(const StackedVector& o) const { return {top - o.top, bottom - o.bottom}; }
  StackedVector operator*(const QC& c) const { return {top * c, bottom * c}; }

  // Flattened coordinates: top at 2k, bottom at 2k+1 (k <= -1).
  std::map<long, QC> coords() const {
    std::map<long, QC> m;
    for (const auto& [k, c] : top.terms()) m[2 * k] = c;
    for (const auto& [k, c] : bottom.terms()) m[2 * k + 1] = c;
    return m;
  }
  static StackedVector from_coords(const std::map<long, QC>& m) {
    StackedVector s;
    for (const auto& [i, c] : m) {
      long k = i >= 0 ? i / 2 : -((-i + 1) / 2);
      if (i - 2 * k == 0) s.top.set(k, c);
      else s.bottom.set(k, c);
    }
    return s;
  }
};

inline StackedVector operator*(const QC& c, const StackedVector& s) { return s * c; }

inline QC inner(const StackedVector& a, const StackedVector& b) {
  QC s;
  for (const auto& [k, c] : a.top.terms()) s += c * b.top.coeff(k).conj();
  for (const auto& [k, c] : a.bottom.terms()) s += c * b.bottom.coeff(k).conj();
  return s;
}

namespace detail {
// Maps x_j to index -j-1, turning a support in k >= 0 into k <= -1.
inline Poly relabel(const Poly& x) {
  Poly r;
  for (const auto& [k, c] : x.terms()) r.set(-k - 1, c);
  return r;
}
}  // namespace detail

// [V h_- ; w_-] with the V-image relabelled onto negative indices.
inline StackedVector stack(const Poly& h, const Poly& w) {
  return {detail::relabel(v_transform(project_minus(h))), project_minus(w)};
}

// a = lambda * b over the union of both supports.
inline std::optional<Proportion> solve_proportional(const StackedVector& a, const StackedVector& b) {
  std::map<long, std::pair<QC, QC>> m;
  for (const auto& [i, c] : a.coords()) m[i].first = c;
  for (const auto& [i, c] : b.coords()) m[i].second = c;
  std::vector<QC> x, y;
  for (const auto& [_, e] : m) {
    x.push_back(e.first);
    y.push_back(e.second);
  }
  return solve_proportional(x, y);
}

struct StackedColumns {
  StackedVector p;  // [V(conj f)_- ; g_-]
  StackedVector r;  // [V(conj u)_- ; v_-]
  StackedVector q;  // [V f_- ; (conj u)_-]
  StackedVector s;  // [V g_- ; (conj v)_-]
};

inline StackedColumns stack_columns(const SymbolMatrix2& H) {
  return {stack(conj_fn(H.f), H.g), stack(conj_fn(H.u), H.v), stack(H.f, conj_fn(H.u)),
          stack(H.g, conj_fn(H.v))};
}

struct OuterTerm {
  int sign;
  StackedVector left, right;
};

// Sum of sign * (left (x) right), where (p (x) q)x = <x,q> p.
struct OuterCombination {
  std::vector<OuterTerm> terms;

  OuterCombination() = default;
  OuterCombination(std::initializer_list<OuterTerm> t) : terms(t) {}

  OuterCombination operator-(const OuterCombination& o) const {
    OuterCombination r = *this;
    for (auto t : o.terms) {
      t.sign = -t.sign;
      r.terms.push_back(std::move(t));
    }
    return r;
  }
  OuterCombination operator+(const OuterCombination& o) const {
    OuterCombination r = *this;
    r.terms.insert(r.terms.end(), o.terms.begin(), o.terms.end());
    return r;
  }
};

// Dense realization over the union support.
struct AssembledMatrix {
  std::vector<long> rows, cols;
  std::vector<std::vector<QC>> a;
};

inline AssembledMatrix assemble(const OuterCombination& c) {
  std::map<long, std::size_t> ri, ci;
  for (const auto& t : c.terms) {
    for (const auto& [i, _] : t.left.coords()) ri.emplace(i, 0);
    for (const auto& [j, _] : t.right.coords()) ci.emplace(j, 0);
  }
  AssembledMatrix m;
  for (auto& [i, idx] : ri) {
    idx = m.rows.size();
    m.rows.push_back(i);
  }
  for (auto& [j, idx] : ci) {
    idx = m.cols.size();
    m.cols.push_back(j);
  }
  m.a.assign(m.rows.size(), std::vector<QC>(m.cols.size()));
  for (const auto& t : c.terms) {
    const auto L = t.left.coords();
    const auto R = t.right.coords();
    for (const auto& [i, x] : L)
      for (const auto& [j, y] : R) {
        QC e = x * y.conj();
        if (t.sign < 0) m.a[ri[i]][ci[j]] -= e;
        else m.a[ri[i]][ci[j]] += e;
      }
  }
  return m;
}

inline bool is_zero_combination(const OuterCombination& c) {
  for (const auto& row : assemble(c).a)
    for (const auto& e : row)
      if (!e.is_zero()) return false;
  return true;
}

inline bool outer_equal(const OuterCombination& lhs, const OuterCombination& rhs) {
  return is_zero_combination(lhs - rhs);
}

struct RankReport {
  std::size_t rank = 0;
  std::vector<StackedVector> basis_witness;  // pivot columns, a basis of the range
  // Coordinates of each term's left vector in basis_witness, when it lies in that span.
  std::vector<std::optional<std::vector<QC>>> relations;
};

namespace detail {
// Fraction-free elimination; returns pivot column indices.
inline std::vector<std::size_t> bareiss_pivots(std::vector<std::vector<QC>> a) {
  std::vector<std::size_t> piv;
  const std::size_t m = a.size();
  if (m == 0) return piv;
  const std::size_t n = a[0].size();
  QC prev(1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && a[p][c].is_zero()) ++p;
    if (p == m) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < m; ++i) {
      for (std::size_t j = c + 1; j < n; ++j) {
        QC t = a[r][c] * a[i][j];
        t -= a[i][c] * a[r][j];
        t /= prev;
        a[i][j] = t;
      }
      a[i][c] = QC();
    }
    prev = a[r][c];
    piv.push_back(c);
    ++r;
  }
  return piv;
}
}  // namespace detail

// Solves x = sum c_i basis_i exactly; nullopt when x is outside the span.
inline std::optional<std::vector<QC>> solve_in_span(const StackedVector& x,
                                                    const std::vector<StackedVector>& basis) {
  std::map<long, std::size_t> idx;
  for (const auto& b : basis)
    for (const auto& [i, _] : b.coords()) idx.emplace(i, 0);
  for (const auto& [i, _] : x.coords()) idx.emplace(i, 0);
  std::size_t n = 0;
  for (auto& [_, v] : idx) v = n++;
  const std::size_t k = basis.size();
  std::vector<std::vector<QC>> a(n, std::vector<QC>(k + 1));
  for (std::size_t j = 0; j < k; ++j)
    for (const auto& [i, c] : basis[j].coords()) a[idx[i]][j] = c;
  for (const auto& [i, c] : x.coords()) a[idx[i]][k] = c;
  // Gauss-Jordan
  std::vector<std::size_t> pivcol;
  std::size_t r = 0;
  for (std::size_t c = 0; c < k && r < n; ++c) {
    std::size_t p = r;
    while (p < n && a[p][c].is_zero()) ++p;
    if (p == n) continue;
    std::swap(a[p], a[r]);
    QC inv = a[r][c].inverse();
    for (std::size_t j = c; j <= k; ++j) a[r][j] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      QC f = a[i][c];
      for (std::size_t j = c; j <= k; ++j) a[i][j] -= f * a[r][j];
    }
    pivcol.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < n; ++i)
    if (!a[i][k].is_zero()) return std::nullopt;
  std::vector<QC> sol(k);
  for (std::size_t t = 0; t < pivcol.size(); ++t) sol[pivcol[t]] = a[t][k];
  return sol;
}

inline RankReport rank_of(const OuterCombination& c) {
  RankReport rep;
  const AssembledMatrix m = assemble(c);
  const auto piv = detail::bareiss_pivots(m.a);
  rep.rank = piv.size();
  for (std::size_t pc : piv) {
    std::map<long, QC> col;
    for (std::size_t i = 0; i < m.rows.size(); ++i)
      if (!m.a[i][pc].is_zero()) col[m.rows[i]] = m.a[i][pc];
    rep.basis_witness.push_back(StackedVector::from_coords(col));
  }
  for (const auto& t : c.terms) rep.relations.push_back(solve_in_span(t.left, rep.basis_witness));
  return rep;
}

// Sides of the commutation equation: LHS = p1 (x) q2 - r1 (x) s2, RHS = p2 (x) q1 - r2 (x) s1.
inline OuterCombination ww_lhs(const StackedColumns& a, const StackedColumns& b) {
  return {{1, a.p, b.q}, {-1, a.r, b.s}};
}
inline OuterCombination ww_lhs(const SymbolMatrix2& H1, const SymbolMatrix2& H2) {
  return ww_lhs(stack_columns(H1), stack_columns(H2));
}
inline OuterCombination ww_rhs(const SymbolMatrix2& H1, const SymbolMatrix2& H2) {
  return ww_lhs(H2, H1);
}

// For f1 = v1 and f2 = v2: true iff the left side of the commutation equation has even rank.
inline bool skew_rank_parity_check(const SymbolMatrix2& H1, const SymbolMatrix2& H2) {
  if (H1.f != H1.v || H2.f != H2.v)
    throw ContractError("skew_rank_parity_check: requires f = v in both symbols");
  return rank_of(ww_lhs(H1, H2)).rank % 2 == 0;
}

// ---------------------------------------------------------------------------
// 2x2 products

using Mat2 = std::array<std::array<QC, 2>, 2>;

inline Mat2 mat2_mul(const Mat2& A, const Mat2& B) {
  Mat2 C;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) C[i][j] = A[i][0] * B[0][j] + A[i][1] * B[1][j];
  return C;
}

inline bool mat2_is_zero(const Mat2& A) {
  for (const auto& row : A)
    for (const auto& e : row)
      if (!e.is_zero()) return false;
  return true;
}

struct ZeroProductCase {
  int which = 0;  // 0 = AB != 0, otherwise 1..3
  std::optional<QC> mu;
};

// Case 1: A = 0 or B = 0.  Case 2: second column of A and first row of B vanish.
// Case 3: column 1 of A = mu * column 2, row 2 of B = -mu * row 1.
inline ZeroProductCase matrix2_zero_product(const Mat2& A, const Mat2& B) {
  if (mat2_is_zero(A) || mat2_is_zero(B)) return {1, std::nullopt};
  if (A[0][1].is_zero() && A[1][1].is_zero()) {
    if (B[0][0].is_zero() && B[0][1].is_zero()) return {2, std::nullopt};
    return {};
  }
  auto mu = solve_proportional(std::vector<QC>{A[0][0], A[1][0]}, std::vector<QC>{A[0][1], A[1][1]});
  if (!mu) return {};
  const QC m = mu->lambda;
  if (B[1][0] == QC() - m * B[0][0] && B[1][1] == QC() - m * B[0][1]) return {3, m};
  return {};
}

}  // namespace hardyops

#endif
