#ifndef HARDYOPS_CLI_HPP
#define HARDYOPS_CLI_HPP

#include "hardyops/decisions.hpp"
#include "hardyops/finsec.hpp"

#include <json.hpp>

#include <chrono>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hardyops::cli {

using json = nlohmann::ordered_json;

enum ExitCode { kDecided = 0, kInputError = 2, kInconsistent = 3 };

enum class Mode { Exact, Numeric };

inline const char* mode_name(Mode m) { return m == Mode::Exact ? "exact" : "numeric"; }

struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline Mode parse_mode(const std::string& s) {
  if (s == "exact") return Mode::Exact;
  if (s == "numeric") return Mode::Numeric;
  throw InputError("unknown mode '" + s + "' (expected exact or numeric)");
}

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c = {
      "project",          "apply",          "check-product",     "check-commute",
      "classify-commute", "check-isometry", "check-normal",      "check-quasinormal",
      "check-adtp",       "check-dtt-commute", "verify-numeric", "bench-fft"};
  return c;
}

struct JobSpec {
  std::string command;
  std::map<std::string, std::string> inputs;  // raw option text by name
  Mode mode = Mode::Exact;
  long section = 32;  // finite-section size in numeric mode
  long pad = 0;       // 0: derived from the symbols
  unsigned seed = 0;
  bool timing = false;
};

struct Outcome {
  int exit_code = kDecided;
  json report;
};

// ---------------------------------------------------------------------------
// input parsing

// "f = 1/2i*z^-3 + 2; g = z" -> {f, g}. Columns in errors are 1-based in text.
inline std::map<std::string, Poly> parse_symbols(const std::string& text) {
  std::map<std::string, Poly> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string::npos) end = text.size();
    const std::string part = text.substr(start, end - start);
    std::size_t i = 0;
    while (i < part.size() && std::isspace(static_cast<unsigned char>(part[i]))) ++i;
    if (i < part.size()) {
      const std::size_t name_begin = i;
      while (i < part.size() && (std::isalnum(static_cast<unsigned char>(part[i])) || part[i] == '_')) ++i;
      if (i == name_begin) throw ParseError("expected a symbol name", start + i + 1);
      const std::string name = part.substr(name_begin, i - name_begin);
      while (i < part.size() && std::isspace(static_cast<unsigned char>(part[i]))) ++i;
      if (i >= part.size() || part[i] != '=') throw ParseError("expected '=' after '" + name + "'", start + i + 1);
      ++i;
      if (out.count(name)) throw ParseError("duplicate symbol '" + name + "'", start + name_begin + 1);
      out.emplace(name, parse_symbol(part.substr(i), start + i));
    }
    start = end + 1;
  }
  return out;
}

inline SymbolMatrix2 parse_matrix(const std::string& option, const std::string& text) {
  const auto m = parse_symbols(text);
  for (const auto& [name, p] : m)
    if (name != "f" && name != "u" && name != "g" && name != "v")
      throw InputError(option + ": unknown slot '" + name + "' (expected f, u, g, v)");
  std::vector<std::string> missing;
  for (const char* s : {"f", "u", "g", "v"})
    if (!m.count(s)) missing.emplace_back(s);
  if (!missing.empty()) {
    std::string names;
    for (const auto& s : missing) names += (names.empty() ? "" : ", ") + s;
    throw InputError(option + ": missing slot " + names);
  }
  return {m.at("f"), m.at("u"), m.at("g"), m.at("v")};
}

inline const std::string& required(const JobSpec& job, const std::string& name) {
  auto it = job.inputs.find(name);
  if (it == job.inputs.end()) throw InputError("missing input --" + name);
  return it->second;
}

inline std::optional<std::string> optional_input(const JobSpec& job, const std::string& name) {
  auto it = job.inputs.find(name);
  if (it == job.inputs.end()) return std::nullopt;
  return it->second;
}

inline Poly symbol_input(const JobSpec& job, const std::string& name) {
  try {
    return parse_symbol(required(job, name));
  } catch (const ParseError& e) {
    throw ParseError("--" + name + ": " + std::string(e.what()).substr(0, std::string(e.what()).rfind(" at column")),
                     e.column);
  }
}

inline SymbolMatrix2 matrix_input(const JobSpec& job, const std::string& name) {
  try {
    return parse_matrix("--" + name, required(job, name));
  } catch (const ParseError& e) {
    const std::string w = e.what();
    throw ParseError("--" + name + ": " + w.substr(0, w.rfind(" at column")), e.column);
  }
}

inline long integer_input(const JobSpec& job, const std::string& name) {
  const std::string& s = required(job, name);
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw InputError("--" + name + ": expected an integer, got '" + s + "'");
  return v;
}

inline InnerMonomial inner_input(const JobSpec& job, const std::string& name) {
  const long m = integer_input(job, name);
  if (m < 1) throw InputError("--" + name + ": inner power must be >= 1");
  return InnerMonomial(m);
}

// "0.5; 0.1,-0.2" -> zeros 0.5 and 0.1-0.2i
inline std::vector<cplx> parse_zeros(const std::string& option, const std::string& text) {
  std::vector<cplx> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    double re = 0, im = 0;
    char comma = 0;
    std::istringstream is(item);
    is >> re;
    if (!is) throw InputError(option + ": bad zero '" + item + "'");
    if (is >> comma) {
      if (comma != ',' || !(is >> im)) throw InputError(option + ": bad zero '" + item + "'");
    }
    std::string rest;
    if (is >> rest) throw InputError(option + ": bad zero '" + item + "'");
    if (std::abs(cplx(re, im)) >= 1) throw InputError(option + ": zeros must lie in the open unit disc");
    out.emplace_back(re, im);
  }
  return out;
}

// ---------------------------------------------------------------------------
// report pieces

inline json poly_json(const Poly& p) { return to_string(p); }

inline json matrix_json(const SymbolMatrix2& H) {
  return json{{"f", to_string(H.f)}, {"u", to_string(H.u)}, {"g", to_string(H.g)}, {"v", to_string(H.v)}};
}

inline json constants_json(const Constants& c) {
  json out = json::object();
  for (const auto& [k, v] : c) out[k] = to_string(v);
  return out;
}

inline json base_report(const JobSpec& job) {
  json r;
  r["command"] = job.command;
  r["mode"] = mode_name(job.mode);
  json in = json::object();
  for (const auto& [k, v] : job.inputs) in[k] = v;
  r["inputs"] = in;
  r["verdict"] = nullptr;
  r["case"] = nullptr;
  r["constants"] = json::object();
  r["product"] = nullptr;
  return r;
}

inline json numeric_json(const NumericVerdict& v) {
  return json{{"equal", v.equal}, {"max_error", v.max_error}, {"n", v.n}, {"pad", v.pad}};
}

struct CrossCheck {
  bool ran = false;
  bool agree = true;
};

class Runner {
 public:
  explicit Runner(const JobSpec& job) : job_(job), report_(base_report(job)) {}

  Outcome run() {
    const auto t0 = std::chrono::steady_clock::now();
    dispatch();
    if (check_.ran) report_["oracle_agree"] = check_.agree;
    if (job_.timing)
      report_["timing"] = {{"millis", std::chrono::duration<double, std::milli>(
                                          std::chrono::steady_clock::now() - t0).count()}};
    Outcome out;
    out.report = std::move(report_);
    out.exit_code = (check_.ran && !check_.agree) || !consistent_ ? kInconsistent : kDecided;
    return out;
  }

 private:
  const JobSpec& job_;
  json report_;
  CrossCheck check_;
  bool consistent_ = true;

  SectionSpec spec() const { return {job_.section, job_.pad}; }

  void agree(bool classifier, bool oracle) {
    check_.ran = true;
    check_.agree = check_.agree && classifier == oracle;
  }

  // Numeric cross-check of an operator identity in numeric mode.
  bool numeric_identity(const Op& lhs, const Op& rhs) {
    const NumericVerdict v = numeric_compare(lhs, rhs, spec());
    report_["tolerance"] = v.tolerance;
    report_["numeric"] = numeric_json(v);
    return v.equal;
  }

  void require_exact() {
    if (job_.mode != Mode::Exact) throw InputError(job_.command + " runs in exact mode only");
  }

  void dispatch() {
    const std::string& c = job_.command;
    if (c == "project") return project_cmd();
    if (c == "apply") return apply_cmd();
    if (c == "check-product") return check_product();
    if (c == "check-commute") return check_commute(false);
    if (c == "classify-commute") return check_commute(true);
    if (c == "check-isometry") return check_isometry();
    if (c == "check-normal") return check_normal();
    if (c == "check-quasinormal") return check_quasinormal();
    if (c == "check-adtp") return check_adtp();
    if (c == "check-dtt-commute") return check_dtt_commute();
    if (c == "verify-numeric") return verify_numeric();
    throw InputError("unknown command '" + c + "'");
  }

  // exact application against the numeric section of the same expression
  bool section_agrees(const Op& e, const Poly& x, const Poly& y) {
    const long reach = std::max({degree_bound(e), std::labs(x.min_deg()), std::labs(x.max_deg()),
                                 std::labs(y.min_deg()), std::labs(y.max_deg())});
    const long n = std::max(job_.section, 2 * reach + 2);
    const Space dom = e.domain(), cod = e.codomain();
    const DenseMatrix m = section(e, n);
    std::vector<cplx> xv(section_dim(dom, n));
    for (const auto& [k, c] : x.terms()) xv[static_cast<std::size_t>(section_index(dom, n, k))] = to_cplx(c);
    const std::vector<cplx> got = m.matvec(xv);
    double err = 0;
    for (std::size_t i = 0; i < got.size(); ++i)
      err = std::max(err, std::abs(got[i] - to_cplx(y.coeff(section_freq(cod, n, static_cast<long>(i))))));
    const double tol = job_.mode == Mode::Numeric ? numeric_tolerance(n) : 1e-12;
    if (job_.mode == Mode::Numeric) report_["tolerance"] = tol;
    return err <= tol;
  }

  void project_cmd() {
    const Poly f = symbol_input(job_, "f");
    std::string name = optional_input(job_, "space").value_or("h2");
    for (char& ch : name) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (name != "h2" && name != "h2perp") throw InputError("--space: expected H2 or H2perp");
    const Space s = parse_space(name);
    const Poly y = s == Space::H2 ? f.restrict(0, kMaxFreq) : f.restrict(-kMaxFreq, -1);
    report_["result"] = poly_json(y);
    const Op e = project(s);
    const bool via_op = apply(e, f) == y;
    agree(true, via_op && section_agrees(e, f, y));
  }

  void apply_cmd() {
    const Op e = parse_prefix(required(job_, "expr"));
    const Poly x = symbol_input(job_, "x");
    const Poly y = apply(e, x);
    report_["expr"] = to_prefix(e);
    report_["domain"] = space_name(e.domain());
    report_["codomain"] = space_name(e.codomain());
    report_["result"] = poly_json(y);
    agree(true, section_agrees(e, x, y));
  }

  void check_product() {
    const SymbolMatrix2 H1 = matrix_input(job_, "H1"), H2 = matrix_input(job_, "H2");
    const SemiCommuteVerdict v = semi_commute(H1, H2);
    report_["verdict"] = v.is_gsio;
    report_["case"] = v.case_label ? json(v.case_name()) : json(nullptr);
    json all = json::array();
    for (char c : v.all_cases) all.push_back(std::string(1, c));
    report_["cases"] = all;
    if (v.lambda) report_["constants"]["lambda"] = to_string(*v.lambda);
    if (v.product) report_["product"] = matrix_json(*v.product);
    if (job_.mode == Mode::Exact) {
      const auto o = semi_commute_oracle(H1, H2);
      agree(v.is_gsio, o.has_value());
      if (o && v.product) agree(true, same_gsio_class(*v.product, o->H));
    } else if (v.product) {
      agree(true, numeric_identity(gsio(H1) * gsio(H2), gsio(*v.product)));
    }
  }

  void check_commute(bool classify) {
    const SymbolMatrix2 H1 = matrix_input(job_, "H1"), H2 = matrix_input(job_, "H2");
    const CommuteVerdict v = commute(H1, H2);
    report_["verdict"] = classify ? v.classified : v.commute;
    report_["case"] = v.cases.empty() ? json(nullptr) : json(v.cases.front().label);
    if (!v.cases.empty()) report_["constants"] = constants_json(v.cases.front().constants);
    report_["lhs_rank"] = v.lhs_rank;
    report_["rhs_rank"] = v.rhs_rank;
    json cases = json::array();
    for (const CaseMatch& m : v.cases) {
      json j = {{"rank", m.rank}, {"label", m.label}};
      if (classify) {
        j["cell"] = m.cell.empty() ? json(nullptr) : json(m.cell);
        j["constants"] = constants_json(m.constants);
        if (m.reference_list_holds) j["reference_list_holds"] = *m.reference_list_holds;
      }
      cases.push_back(j);
    }
    report_["cases"] = cases;
    report_["violated"] = v.violated;
    consistent_ = v.consistent();
    const Op A = gsio(H1), B = gsio(H2);
    agree(v.classified, job_.mode == Mode::Exact ? commute_oracle(H1, H2) : numeric_identity(A * B, B * A));
  }

  void check_isometry() {
    const SymbolMatrix2 H = matrix_input(job_, "H");
    const IsometryVerdict v = isometry_check(H);
    report_["verdict"] = v.isometry;
    report_["case"] = v.case_label ? json(std::string(1, v.case_label)) : json(nullptr);
    if (v.lambda) report_["constants"]["lambda"] = to_string(*v.lambda);
    report_["unimodular_corners"] = v.unimodular_corners;
    const Op R = gsio(H);
    agree(v.isometry, job_.mode == Mode::Exact ? isometry_oracle(H)
                                               : numeric_identity(adjoint(R) * R, identity(Space::L2)));
  }

  static json int_cases(const std::vector<int>& cs) {
    json a = json::array();
    for (int c : cs) a.push_back(std::to_string(c));
    return a;
  }

  void check_normal() {
    const Poly f = symbol_input(job_, "f"), g = symbol_input(job_, "g");
    const NormalityVerdict v = sio_normal(f, g);
    report_["verdict"] = v.normal;
    report_["case"] = v.cases.empty() ? json(nullptr) : json(std::to_string(v.cases.front()));
    report_["cases"] = int_cases(v.cases);
    if (v.lambda) report_["constants"]["lambda"] = to_string(*v.lambda);
    consistent_ = v.commute_agrees;
    const Op S = sio(f, g);
    agree(v.normal, job_.mode == Mode::Exact ? sio_normal_oracle(f, g)
                                             : numeric_identity(adjoint(S) * S, S * adjoint(S)));
  }

  void check_quasinormal() {
    const Poly f = symbol_input(job_, "f"), g = symbol_input(job_, "g");
    const QuasinormalVerdict v = sio_quasinormal(f, g);
    report_["verdict"] = v.quasinormal;
    report_["case"] = v.cases.empty() ? json(nullptr) : json(v.cases.front());
    report_["cases"] = v.cases;
    if (v.mu) report_["constants"]["mu"] = to_string(*v.mu);
    if (v.alpha) report_["constants"]["alpha"] = to_string(*v.alpha);
    consistent_ = v.commute_agrees;
    const Op S = sio(f, g), Q = adjoint(S) * S;
    agree(v.quasinormal, job_.mode == Mode::Exact ? v.commute_direct : numeric_identity(S * Q, Q * S));
  }

  void check_adtp() {
    const Poly phi = symbol_input(job_, "phi"), psi = symbol_input(job_, "psi");
    const auto za = optional_input(job_, "a-zeros"), zb = optional_input(job_, "b-zeros"),
               zt = optional_input(job_, "t-zeros");
    const bool general = za || zb || zt;
    if (general && job_.mode != Mode::Numeric)
      throw InputError("inner functions given by zeros need numeric mode");
    std::optional<AdtpVerdict> exact;
    if (!general) {
      const InnerMonomial a = inner_input(job_, "a"), b = inner_input(job_, "b"), t = inner_input(job_, "t");
      exact = adtp_product(psi, phi, a, b, t);
      report_["verdict"] = exact->product;
      report_["case"] = exact->cases.empty() ? json(nullptr) : json(std::to_string(exact->cases.front()));
      report_["cases"] = int_cases(exact->cases);
      if (exact->lambda) report_["constants"]["lambda"] = to_string(*exact->lambda);
      report_["remapped"] = exact->remapped;
      if (exact->product) report_["product"] = poly_json(exact->sigma);
      consistent_ = exact->semi_commute_agrees;
      if (job_.mode == Mode::Exact) {
        agree(exact->product, adtp_product_oracle(psi, phi, a, b, t));
        return;
      }
    }
    auto inner = [&](const std::optional<std::string>& zeros, const char* opt, const char* power) {
      if (zeros) {
        const BlaschkeSeries s = blaschke_fourier(parse_zeros(std::string("--") + opt, *zeros), 256);
        return s.coeffs;
      }
      return to_num(Poly::z(inner_input(job_, power).power));
    };
    const NumSymbol A = inner(za, "a-zeros", "a"), B = inner(zb, "b-zeros", "b"), T = inner(zt, "t-zeros", "t");
    const long n = job_.section;
    const NumericVerdict nv = adtp_numeric_check(to_num(psi), to_num(phi), A, B, T, n, 1e-8);
    report_["tolerance"] = nv.tolerance;
    report_["numeric"] = numeric_json(nv);
    if (exact) {
      agree(exact->product, nv.equal);
    } else {
      report_["verdict"] = nv.equal;
      if (nv.equal) report_["product"] = poly_json(phi * psi);
    }
  }

  void check_dtt_commute() {
    const Poly phi = symbol_input(job_, "phi"), psi = symbol_input(job_, "psi");
    const InnerMonomial t = inner_input(job_, "t");
    const DttCommuteVerdict v = dtt_commute(phi, psi, t);
    report_["verdict"] = v.commute;
    report_["case"] = v.cases.empty() ? json(nullptr) : json(std::to_string(v.cases.front()));
    report_["cases"] = int_cases(v.cases);
    if (v.lambda) report_["constants"]["lambda"] = to_string(*v.lambda);
    if (v.combination) report_["constants"]["combination"] = to_string(*v.combination);
    const Op A = gsio(dtt_symbol(phi, t)), B = gsio(dtt_symbol(psi, t));
    agree(v.commute, job_.mode == Mode::Exact ? dtt_commute_oracle(phi, psi, t) : numeric_identity(A * B, B * A));
  }

  void verify_numeric() {
    const Op lhs = parse_prefix(required(job_, "lhs"));
    const auto rtext = optional_input(job_, "rhs");
    const Op rhs = rtext ? parse_prefix(*rtext) : zero(lhs.domain(), lhs.codomain());
    if (lhs.domain() != rhs.domain() || lhs.codomain() != rhs.codomain())
      throw InputError("--lhs and --rhs act between different spaces");
    const NumericVerdict v = numeric_compare(lhs, rhs, spec());
    report_["verdict"] = v.equal;
    report_["tolerance"] = v.tolerance;
    report_["numeric"] = numeric_json(v);
    agree(v.equal, op_zero_test(lhs - rhs));
  }
};

inline Outcome run(const JobSpec& job) {
  try {
    if (job.section < 1) throw InputError("section size must be positive");
    return Runner(job).run();
  } catch (const ParseError& e) {
    Outcome o{kInputError, base_report(job)};
    o.report["error"] = {{"kind", "parse"}, {"message", e.what()}, {"line", 1}, {"column", e.column}};
    return o;
  } catch (const InputError& e) {
    Outcome o{kInputError, base_report(job)};
    o.report["error"] = {{"kind", "input"}, {"message", e.what()}};
    return o;
  } catch (const SignatureError& e) {
    Outcome o{kInputError, base_report(job)};
    o.report["error"] = {{"kind", "signature"}, {"message", e.what()}};
    return o;
  } catch (const ContractError& e) {
    Outcome o{kInputError, base_report(job)};
    o.report["error"] = {{"kind", "precondition"}, {"message", e.what()}};
    return o;
  } catch (const std::invalid_argument& e) {
    Outcome o{kInputError, base_report(job)};
    o.report["error"] = {{"kind", "input"}, {"message", e.what()}};
    return o;
  } catch (const std::exception& e) {
    Outcome o{kInconsistent, base_report(job)};
    o.report["error"] = {{"kind", "internal"}, {"message", e.what()}};
    return o;
  }
}

// ---------------------------------------------------------------------------
// emission

inline void emit_text(const json& j, const std::string& prefix, std::ostringstream& os) {
  if (j.is_object()) {
    if (j.empty()) os << prefix << ": {}\n";
    for (auto it = j.begin(); it != j.end(); ++it)
      emit_text(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), os);
  } else if (j.is_array()) {
    std::string line;
    for (const auto& e : j) line += (line.empty() ? "" : ", ") + (e.is_string() ? e.get<std::string>() : e.dump());
    os << prefix << ": [" << line << "]\n";
  } else {
    os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

inline std::string report_emit(const json& report, const std::string& format) {
  if (format == "json") return report.dump(2) + "\n";
  if (format == "text") {
    std::ostringstream os;
    emit_text(report, "", os);
    return os.str();
  }
  throw InputError("unknown format '" + format + "' (expected json or text)");
}

// bench-fft: CSV rows "n,method,nanos"
inline std::string bench_fft_csv(const Poly& f, const std::vector<long>& sizes, int reps) {
  for (long n : sizes)
    if (n < 1) throw InputError("--sizes: sizes must be positive");
  return bench_csv(bench_fft(to_num(f), sizes, reps));
}

}  // namespace hardyops::cli

#endif
