#ifndef HARDYOPS_OPERATORS_HPP
#define HARDYOPS_OPERATORS_HPP

#include "hardyops/symbol.hpp"

#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hardyops {

enum class Space { H2, H2perp, L2 };

inline const char* space_name(Space s) {
  switch (s) {
    case Space::H2: return "h2";
    case Space::H2perp: return "h2perp";
    case Space::L2: return "l2";
  }
  return "?";
}

inline Space parse_space(const std::string& s) {
  if (s == "h2") return Space::H2;
  if (s == "h2perp") return Space::H2perp;
  if (s == "l2") return Space::L2;
  throw std::invalid_argument("unknown space '" + s + "'");
}

struct SignatureError : std::logic_error {
  using std::logic_error::logic_error;
};

// Vector of L2 with a support constraint given by its tag.
struct FourierVector {
  Poly coeffs;
  Space tag = Space::L2;

  FourierVector() = default;
  FourierVector(Poly p, Space t) : coeffs(std::move(p)), tag(t) {
    if (t == Space::H2 && !is_analytic(coeffs))
      throw SignatureError("H2 vector with negative frequencies");
    if (t == Space::H2perp && !coeffs.is_zero() && coeffs.max_deg() >= 0)
      throw SignatureError("H2perp vector with nonnegative frequencies");
  }
  FourierVector h2_part() const { return {project_plus(coeffs), Space::H2}; }
  FourierVector h2perp_part() const { return {project_minus(coeffs), Space::H2perp}; }
  static FourierVector join(const FourierVector& a, const FourierVector& b) {
    return {a.coeffs + b.coeffs, Space::L2};
  }
};

enum class OpKind {
  Toeplitz,
  Hankel,
  HankelAdj,
  DualToeplitz,
  Mult,
  RieszPlus,
  RieszMinus,
  Gsio,
  FlipHankel,
  Identity,
  Zero,
  Include,
  Project,
  Compose,
  Sum,
  Scale,
  Adjoint
};

struct OpNode;
using OpPtr = std::shared_ptr<const OpNode>;

struct OpNode {
  OpKind kind;
  Space dom;
  Space cod;
  Poly sym;
  SymbolMatrix2 mat;
  QC scalar;
  std::vector<OpPtr> kids;
};

class Op {
 public:
  Op() = default;
  explicit Op(OpPtr p) : p_(std::move(p)) {}

  const OpNode& node() const { return *p_; }
  OpKind kind() const { return p_->kind; }
  Space domain() const { return p_->dom; }
  Space codomain() const { return p_->cod; }
  const OpPtr& ptr() const { return p_; }

 private:
  OpPtr p_;
};

namespace detail {
inline Op make(OpKind k, Space d, Space c, Poly sym = {}, std::vector<OpPtr> kids = {},
               QC s = QC(1), SymbolMatrix2 m = {}) {
  auto n = std::make_shared<OpNode>();
  n->kind = k;
  n->dom = d;
  n->cod = c;
  n->sym = std::move(sym);
  n->kids = std::move(kids);
  n->scalar = std::move(s);
  n->mat = std::move(m);
  return Op(n);
}
}  // namespace detail

// leaves
inline Op toeplitz(Poly f) { return detail::make(OpKind::Toeplitz, Space::H2, Space::H2, std::move(f)); }
inline Op hankel(Poly g) { return detail::make(OpKind::Hankel, Space::H2, Space::H2perp, std::move(g)); }
inline Op hankel_adj(Poly u) {
  return detail::make(OpKind::HankelAdj, Space::H2perp, Space::H2, std::move(u));
}
inline Op dual_toeplitz(Poly v) {
  return detail::make(OpKind::DualToeplitz, Space::H2perp, Space::H2perp, std::move(v));
}
inline Op mult(Poly f) { return detail::make(OpKind::Mult, Space::L2, Space::L2, std::move(f)); }
inline Op riesz_plus() { return detail::make(OpKind::RieszPlus, Space::L2, Space::L2); }
inline Op riesz_minus() { return detail::make(OpKind::RieszMinus, Space::L2, Space::L2); }
inline Op gsio(SymbolMatrix2 H) {
  return detail::make(OpKind::Gsio, Space::L2, Space::L2, {}, {}, QC(1), std::move(H));
}
// x -> P+(g Jx) on H2, (Jx)(z) = zbar x(zbar).
inline Op flip_hankel(Poly g) {
  return detail::make(OpKind::FlipHankel, Space::H2, Space::H2, std::move(g));
}
inline Op identity(Space s) { return detail::make(OpKind::Identity, s, s); }
inline Op zero(Space dom, Space cod) { return detail::make(OpKind::Zero, dom, cod); }
// H2 or H2perp into L2
inline Op include(Space s) { return detail::make(OpKind::Include, s, Space::L2); }
// L2 onto H2 or H2perp
inline Op project(Space s) { return detail::make(OpKind::Project, Space::L2, s); }

inline Op sio(const Poly& f, const Poly& g) { return gsio({f, g, f, g}); }

// a after b
inline Op compose(const Op& a, const Op& b) {
  if (b.codomain() != a.domain())
    throw SignatureError(std::string("compose: ") + space_name(b.codomain()) + " into " +
                         space_name(a.domain()));
  return detail::make(OpKind::Compose, b.domain(), a.codomain(), {}, {a.ptr(), b.ptr()});
}
inline Op compose(std::initializer_list<Op> ops) {
  std::vector<Op> v(ops);
  Op r = v.back();
  for (std::size_t i = v.size() - 1; i-- > 0;) r = compose(v[i], r);
  return r;
}
inline Op sum(const std::vector<Op>& terms) {
  if (terms.empty()) throw SignatureError("sum: empty");
  std::vector<OpPtr> kids;
  for (const auto& t : terms) {
    if (t.domain() != terms[0].domain() || t.codomain() != terms[0].codomain())
      throw SignatureError("sum: mismatched signatures");
    kids.push_back(t.ptr());
  }
  return detail::make(OpKind::Sum, terms[0].domain(), terms[0].codomain(), {}, std::move(kids));
}
inline Op scale(const QC& c, const Op& a) {
  return detail::make(OpKind::Scale, a.domain(), a.codomain(), {}, {a.ptr()}, c);
}
inline Op adjoint(const Op& a) {
  return detail::make(OpKind::Adjoint, a.codomain(), a.domain(), {}, {a.ptr()});
}

inline Op operator*(const Op& a, const Op& b) { return compose(a, b); }
inline Op operator+(const Op& a, const Op& b) { return sum({a, b}); }
inline Op operator-(const Op& a, const Op& b) { return sum({a, scale(QC(-1), b)}); }
inline Op operator*(const QC& c, const Op& a) { return scale(c, a); }

// ---------------------------------------------------------------------------
// application

namespace detail {

inline Poly flip_j(const Poly& x) {
  Poly r;
  for (const auto& [k, c] : x.terms()) r.set(-k - 1, c);
  return r;
}

inline Poly apply_raw(const OpNode& n, const Poly& x) {
  switch (n.kind) {
    case OpKind::Toeplitz:
    case OpKind::HankelAdj: return project_plus(n.sym * x);
    case OpKind::Hankel:
    case OpKind::DualToeplitz: return project_minus(n.sym * x);
    case OpKind::Mult: return n.sym * x;
    case OpKind::RieszPlus: return project_plus(x);
    case OpKind::RieszMinus: return project_minus(x);
    case OpKind::Gsio: {
      Poly xp = project_plus(x), xm = project_minus(x);
      const auto& H = n.mat;
      return project_plus(H.f * xp) + project_minus(H.g * xp) + project_plus(H.u * xm) +
             project_minus(H.v * xm);
    }
    case OpKind::FlipHankel: return project_plus(n.sym * flip_j(x));
    case OpKind::Identity:
    case OpKind::Include: return x;
    case OpKind::Zero: return Poly();
    case OpKind::Project: return n.cod == Space::H2 ? project_plus(x) : project_minus(x);
    case OpKind::Compose: return apply_raw(*n.kids[0], apply_raw(*n.kids[1], x));
    case OpKind::Sum: {
      Poly r;
      for (const auto& k : n.kids) r += apply_raw(*k, x);
      return r;
    }
    case OpKind::Scale: return apply_raw(*n.kids[0], x) * n.scalar;
    case OpKind::Adjoint: throw SignatureError("apply: normalize adjoints first");
  }
  return Poly();
}

}  // namespace detail

Op adjoint_normalize(const Op& a);

namespace detail {
inline bool has_adjoint(const OpNode& n) {
  if (n.kind == OpKind::Adjoint) return true;
  for (const auto& k : n.kids)
    if (has_adjoint(*k)) return true;
  return false;
}
}  // namespace detail

inline FourierVector apply(const Op& expr, const FourierVector& x) {
  if (x.tag != expr.domain())
    throw SignatureError(std::string("apply: vector in ") + space_name(x.tag) + ", operator on " +
                         space_name(expr.domain()));
  const Op e = detail::has_adjoint(expr.node()) ? adjoint_normalize(expr) : expr;
  return FourierVector(detail::apply_raw(e.node(), x.coeffs), expr.codomain());
}

inline Poly apply(const Op& expr, const Poly& x) {
  return apply(expr, FourierVector(x, expr.domain())).coeffs;
}

// ---------------------------------------------------------------------------
// adjoints

namespace detail {
inline Op adjoint_of(const Op& a);

inline Op normalize(const Op& a) {
  const OpNode& n = a.node();
  switch (n.kind) {
    case OpKind::Adjoint: return adjoint_of(normalize(Op(n.kids[0])));
    case OpKind::Compose: return compose(normalize(Op(n.kids[0])), normalize(Op(n.kids[1])));
    case OpKind::Sum: {
      std::vector<Op> t;
      for (const auto& k : n.kids) t.push_back(normalize(Op(k)));
      return sum(t);
    }
    case OpKind::Scale: return scale(n.scalar, normalize(Op(n.kids[0])));
    default: return a;
  }
}

// a is adjoint-free
inline Op adjoint_of(const Op& a) {
  const OpNode& n = a.node();
  switch (n.kind) {
    case OpKind::Toeplitz: return toeplitz(conj_fn(n.sym));
    case OpKind::Hankel: return hankel_adj(conj_fn(n.sym));
    case OpKind::HankelAdj: return hankel(conj_fn(n.sym));
    case OpKind::DualToeplitz: return dual_toeplitz(conj_fn(n.sym));
    case OpKind::Mult: return mult(conj_fn(n.sym));
    case OpKind::RieszPlus:
    case OpKind::RieszMinus:
    case OpKind::Identity: return a;
    case OpKind::Gsio: {
      const auto& H = n.mat;
      return gsio({conj_fn(H.f), conj_fn(H.g), conj_fn(H.u), conj_fn(H.v)});
    }
    case OpKind::FlipHankel: return flip_hankel(star(n.sym));
    case OpKind::Zero: return zero(n.cod, n.dom);
    case OpKind::Include: return project(n.dom);
    case OpKind::Project: return include(n.cod);
    case OpKind::Compose: return compose(adjoint_of(Op(n.kids[1])), adjoint_of(Op(n.kids[0])));
    case OpKind::Sum: {
      std::vector<Op> t;
      for (const auto& k : n.kids) t.push_back(adjoint_of(Op(k)));
      return sum(t);
    }
    case OpKind::Scale: return scale(n.scalar.conj(), adjoint_of(Op(n.kids[0])));
    case OpKind::Adjoint: return normalize(Op(n.kids[0]));
  }
  return a;
}
}  // namespace detail

// Rewrites every Adjoint node down to the leaves.
inline Op adjoint_normalize(const Op& a) { return detail::normalize(a); }

// ---------------------------------------------------------------------------
// zero test and structural tests

// Sum of the frequency spans of every leaf symbol.
inline long degree_bound(const OpNode& n) {
  long d = 0;
  switch (n.kind) {
    case OpKind::Gsio: d = n.mat.span(); break;
    case OpKind::Toeplitz:
    case OpKind::Hankel:
    case OpKind::HankelAdj:
    case OpKind::DualToeplitz:
    case OpKind::Mult:
    case OpKind::FlipHankel: d = n.sym.span(); break;
    default: break;
  }
  for (const auto& k : n.kids) d += degree_bound(*k);
  return d;
}
inline long degree_bound(const Op& a) { return degree_bound(a.node()); }

inline std::vector<long> test_frequencies(Space s, long bound) {
  std::vector<long> ks;
  if (s != Space::H2)
    for (long k = -bound; k <= -1; ++k) ks.push_back(k);
  if (s != Space::H2perp)
    for (long k = 0; k <= bound; ++k) ks.push_back(k);
  return ks;
}

struct ZeroTestOptions {
#ifdef NDEBUG
  bool recheck = false;
#else
  bool recheck = true;
#endif
  long margin = 1;
  long recheck_margin = 6;
};

struct ZeroTestBoundError : std::logic_error {
  using std::logic_error::logic_error;
};

inline bool zero_on(const Op& e, long bound) {
  for (long k : test_frequencies(e.domain(), bound))
    if (!detail::apply_raw(e.node(), Poly::z(k)).is_zero()) return false;
  return true;
}

// True iff expr annihilates every monomial with |k| <= D + 1.
inline bool op_zero_test(const Op& expr, const ZeroTestOptions& opt = {}) {
  const Op e = adjoint_normalize(expr);
  const long D = degree_bound(e);
  bool z = zero_on(e, D + opt.margin);
  if (z && opt.recheck && !zero_on(e, D + opt.recheck_margin))
    throw ZeroTestBoundError("op_zero_test: zero up to D+1 but not up to D+6");
  return z;
}

inline std::optional<Poly> is_toeplitz(const Op& expr) {
  if (expr.domain() != Space::H2 || expr.codomain() != Space::H2)
    throw SignatureError("is_toeplitz: expects H2 -> H2");
  const Op e = adjoint_normalize(expr);
  const Op t = toeplitz(Poly::z(-1)) * e * toeplitz(Poly::z(1)) - e;
  if (!op_zero_test(t)) return std::nullopt;
  const long D = degree_bound(e) + 1;
  Poly sym = detail::apply_raw(e.node(), Poly(1L));
  for (long j = 1; j <= D; ++j)
    sym.set(-j, detail::apply_raw(e.node(), Poly::z(j)).coeff(0));
  return sym;
}

inline std::optional<Poly> is_dual_toeplitz(const Op& expr) {
  if (expr.domain() != Space::H2perp || expr.codomain() != Space::H2perp)
    throw SignatureError("is_dual_toeplitz: expects H2perp -> H2perp");
  const Op e = adjoint_normalize(expr);
  const Op t = dual_toeplitz(Poly::z(1)) * e * dual_toeplitz(Poly::z(-1)) - e;
  if (!op_zero_test(t)) return std::nullopt;
  const long D = degree_bound(e) + 1;
  Poly col = detail::apply_raw(e.node(), Poly::z(-1));
  Poly sym;
  for (const auto& [k, c] : col.terms()) sym.set(k + 1, c);  // v_{1-j} at z^{-j}
  for (long k = 2; k <= D + 1; ++k)
    sym.set(k - 1, detail::apply_raw(e.node(), Poly::z(-k)).coeff(-1));
  return sym;
}

// Returns the coanalytic part of the symbol.
inline std::optional<Poly> is_hankel(const Op& expr) {
  if (expr.domain() != Space::H2 || expr.codomain() != Space::H2perp)
    throw SignatureError("is_hankel: expects H2 -> H2perp");
  const Op e = adjoint_normalize(expr);
  const Op t = dual_toeplitz(Poly::z(1)) * e - e * toeplitz(Poly::z(1));
  if (!op_zero_test(t)) return std::nullopt;
  return detail::apply_raw(e.node(), Poly(1L));
}

struct GsioSymbol {
  SymbolMatrix2 H;  // g as g_-, u as its k >= 1 part
  bool class_representatives = true;
};

// Hankel corners are only defined modulo H^infinity: g by g_-, u by (conj u)_-.
inline bool same_gsio_class(const SymbolMatrix2& a, const SymbolMatrix2& b) {
  return a.f == b.f && a.v == b.v && project_minus(a.g) == project_minus(b.g) &&
         project_minus(conj_fn(a.u)) == project_minus(conj_fn(b.u));
}

inline SymbolMatrix2 gsio_class_rep(const SymbolMatrix2& H) {
  return {H.f, conj_fn(project_minus(conj_fn(H.u))), project_minus(H.g), H.v};
}

inline std::optional<GsioSymbol> is_gsio(const Op& expr) {
  if (expr.domain() != Space::L2 || expr.codomain() != Space::L2)
    throw SignatureError("is_gsio: expects L2 -> L2");
  const Op e = adjoint_normalize(expr);
  auto f = is_toeplitz(project(Space::H2) * e * include(Space::H2));
  if (!f) return std::nullopt;
  auto g = is_hankel(project(Space::H2perp) * e * include(Space::H2));
  if (!g) return std::nullopt;
  auto ubar = is_hankel(adjoint_normalize(adjoint(project(Space::H2) * e * include(Space::H2perp))));
  if (!ubar) return std::nullopt;
  auto v = is_dual_toeplitz(project(Space::H2perp) * e * include(Space::H2perp));
  if (!v) return std::nullopt;
  return GsioSymbol{{*f, conj_fn(*ubar), *g, *v}, true};
}

// The four corner identities of M_f M_g = M_fg.
inline bool mult_identities_check(const Poly& f, const Poly& g) {
  const Poly fg = f * g;
  return op_zero_test(toeplitz(fg) - toeplitz(f) * toeplitz(g) - hankel_adj(f) * hankel(g)) &&
         op_zero_test(hankel(fg) - hankel(f) * toeplitz(g) - dual_toeplitz(f) * hankel(g)) &&
         op_zero_test(hankel_adj(fg) - toeplitz(f) * hankel_adj(g) -
                      hankel_adj(f) * dual_toeplitz(g)) &&
         op_zero_test(dual_toeplitz(fg) - dual_toeplitz(f) * dual_toeplitz(g) -
                      hankel(f) * hankel_adj(g));
}

// ---------------------------------------------------------------------------
// prefix text form

namespace detail {
inline std::string quoted(const Poly& p) { return "\"" + to_string(p) + "\""; }

inline void print(const OpNode& n, std::ostringstream& os) {
  auto leaf = [&](const char* name) { os << "(" << name << " " << quoted(n.sym) << ")"; };
  switch (n.kind) {
    case OpKind::Toeplitz: leaf("toeplitz"); return;
    case OpKind::Hankel: leaf("hankel"); return;
    case OpKind::HankelAdj: leaf("hankel-adj"); return;
    case OpKind::DualToeplitz: leaf("dual-toeplitz"); return;
    case OpKind::Mult: leaf("mult"); return;
    case OpKind::FlipHankel: leaf("flip-hankel"); return;
    case OpKind::RieszPlus: os << "(riesz-plus)"; return;
    case OpKind::RieszMinus: os << "(riesz-minus)"; return;
    case OpKind::Gsio:
      os << "(gsio " << quoted(n.mat.f) << " " << quoted(n.mat.u) << " " << quoted(n.mat.g) << " "
         << quoted(n.mat.v) << ")";
      return;
    case OpKind::Identity: os << "(identity " << space_name(n.dom) << ")"; return;
    case OpKind::Zero: os << "(zero " << space_name(n.dom) << " " << space_name(n.cod) << ")"; return;
    case OpKind::Include: os << "(include " << space_name(n.dom) << ")"; return;
    case OpKind::Project: os << "(project " << space_name(n.cod) << ")"; return;
    case OpKind::Scale: os << "(scale \"" << to_string(n.scalar) << "\" "; break;
    case OpKind::Compose: os << "(compose "; break;
    case OpKind::Sum: os << "(sum "; break;
    case OpKind::Adjoint: os << "(adjoint "; break;
  }
  for (std::size_t i = 0; i < n.kids.size(); ++i) {
    if (i) os << " ";
    print(*n.kids[i], os);
  }
  os << ")";
}

class ExprParser {
 public:
  explicit ExprParser(const std::string& s) : s_(s) {}

  Op parse() {
    Op e = expr();
    skip();
    if (i_ < s_.size()) fail("trailing input");
    return e;
  }

 private:
  const std::string& s_;
  std::size_t i_ = 0;

  [[noreturn]] void fail(const std::string& m) const { throw ParseError(m, i_ + 1); }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  std::string atom() {
    skip();
    std::size_t b = i_;
    while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) && s_[i_] != '(' &&
           s_[i_] != ')' && s_[i_] != '"')
      ++i_;
    if (b == i_) fail("expected name");
    return s_.substr(b, i_ - b);
  }
  std::pair<std::string, std::size_t> str() {
    skip();
    if (i_ >= s_.size() || s_[i_] != '"') fail("expected string");
    std::size_t b = ++i_;
    while (i_ < s_.size() && s_[i_] != '"') ++i_;
    if (i_ >= s_.size()) fail("unterminated string");
    return {s_.substr(b, i_++ - b), b};
  }
  Poly poly() {
    auto [t, col] = str();
    return parse_symbol(t, col);
  }
  void close() {
    skip();
    if (i_ >= s_.size() || s_[i_] != ')') fail("expected ')'");
    ++i_;
  }
  Op expr() {
    skip();
    if (i_ >= s_.size() || s_[i_] != '(') fail("expected '('");
    ++i_;
    std::string h = atom();
    Op r;
    if (h == "toeplitz") r = toeplitz(poly());
    else if (h == "hankel") r = hankel(poly());
    else if (h == "hankel-adj") r = hankel_adj(poly());
    else if (h == "dual-toeplitz") r = dual_toeplitz(poly());
    else if (h == "mult") r = mult(poly());
    else if (h == "flip-hankel") r = flip_hankel(poly());
    else if (h == "riesz-plus") r = riesz_plus();
    else if (h == "riesz-minus") r = riesz_minus();
    else if (h == "gsio") {
      SymbolMatrix2 H;
      H.f = poly();
      H.u = poly();
      H.g = poly();
      H.v = poly();
      r = gsio(H);
    } else if (h == "identity") r = identity(parse_space(atom()));
    else if (h == "zero") {
      Space d = parse_space(atom());
      r = zero(d, parse_space(atom()));
    } else if (h == "include") r = include(parse_space(atom()));
    else if (h == "project") r = project(parse_space(atom()));
    else if (h == "scale") {
      auto [t, col] = str();
      QC c;
      try {
        c = parse_constant(t);
      } catch (const std::invalid_argument& ex) {
        throw ParseError(ex.what(), col);
      }
      r = scale(c, expr());
    } else if (h == "adjoint") r = adjoint(expr());
    else if (h == "compose" || h == "sum") {
      std::vector<Op> kids;
      skip();
      while (i_ < s_.size() && s_[i_] == '(') {
        kids.push_back(expr());
        skip();
      }
      if (kids.size() < (h == "compose" ? 2u : 1u)) fail("too few operands for " + h);
      if (h == "sum") r = sum(kids);
      else {
        r = kids.back();
        for (std::size_t k = kids.size() - 1; k-- > 0;) r = compose(kids[k], r);
      }
    } else fail("unknown operator '" + h + "'");
    close();
    return r;
  }
};
}  // namespace detail

inline std::string to_prefix(const Op& e) {
  std::ostringstream os;
  detail::print(e.node(), os);
  return os.str();
}

inline Op parse_prefix(const std::string& text) { return detail::ExprParser(text).parse(); }

}  // namespace hardyops

#endif
