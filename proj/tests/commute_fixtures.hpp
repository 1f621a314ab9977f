#ifndef HARDYOPS_TESTS_COMMUTE_FIXTURES_HPP
#define HARDYOPS_TESTS_COMMUTE_FIXTURES_HPP

// Constructed commuting pairs: one per rank-zero cell from the clause
// builder, rank-one and rank-two pairs as linear combinations of those.

#include "hardyops/commute.hpp"
#include "instance_builder.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hardyops::testing {

struct CommuteInstance {
  int rank = 0;
  std::string label;  // classifier label, "(4hat)", "(12)", "rank2"
  std::string cell;   // "L5+R5"; empty for rank two
  SymbolMatrix2 H1, H2;
  Constants constants;
};

inline SymbolMatrix2 combine(const QC& x, const SymbolMatrix2& A, const QC& y, const SymbolMatrix2& B) {
  return {x * A.f + y * B.f, x * A.u + y * B.u, x * A.g + y * B.g, x * A.v + y * B.v};
}

// Vector conditions that put one side of the outer equation into cell idx.
inline ClauseList zero_cell_clauses(int idx, bool left) {
  using namespace clause_build;
  const std::string a = left ? "1" : "2", b = left ? "2" : "1";
  const Combo p = vec("p" + a), r = vec("r" + a), q = vec("q" + b), s = vec("s" + b);
  const std::string c = left ? "lam" : "mu";
  std::vector<Combo> rel;
  switch (idx) {
    case 1: rel = {p, r}; break;
    case 2: rel = {p, s}; break;
    case 3: rel = {q, r}; break;
    case 4: rel = {q, s}; break;
    default: rel = {p - named(c) * r, s - conj(named(c)) * q}; break;
  }
  ClauseList out;
  for (const auto& x : rel)
    for (auto& cl : relation_clauses(x)) out.push_back(std::move(cl));
  return out;
}

inline const CaseMatch* find_cell(const std::vector<CaseMatch>& cases, const std::string& cell) {
  for (const auto& m : cases)
    if (m.cell == cell) return &m;
  return nullptr;
}

// A pair whose classification contains cell (Ll, Rr), with lam = 2, mu = 3
// where the cell carries a constant.
inline std::optional<CommuteInstance> build_rank0(int l, int r, Gen& gen, int attempts = 120) {
  const std::string key = rank0_table(l, r);
  ClauseList cl = rank0_lists().at(key);
  for (auto& c : zero_cell_clauses(l, true)) cl.push_back(c);
  for (auto& c : zero_cell_clauses(r, false)) cl.push_back(c);
  Env constants;
  bind_constant(constants, "lam", QC(2));
  bind_constant(constants, "mu", QC(3));
  const std::string cell = cell_name(l, r);
  for (int t = 0; t < attempts; ++t) {
    const auto& split = affine_splits()[static_cast<std::size_t>(t) % affine_splits().size()];
    auto pair = build_pair(cl, constants, split, 1, 3, gen, 0.5);
    if (!pair) continue;
    const auto& [H1, H2] = *pair;
    if (H1 == H2 || !is_zero_combination(ww_lhs(H1, H2)) || !is_zero_combination(ww_rhs(H1, H2)))
      continue;
    auto cases = commute_classify_rank0(H1, H2);
    const CaseMatch* m = find_cell(cases, cell);
    if (!m) continue;
    // prefer pairs where the cell constants are pinned down
    const bool pinned = (l != 5 || m->constants.at("lambda") == QC(2)) &&
                        (r != 5 || m->constants.at("mu") == QC(3));
    if (!pinned && t + 1 < attempts) continue;
    return CommuteInstance{0, m->label, cell, H1, H2, m->constants};
  }
  return std::nullopt;
}

inline std::vector<CommuteInstance> rank0_instances(Gen& gen) {
  std::vector<CommuteInstance> out;
  for (int r = 1; r <= 5; ++r)
    for (int l = 1; l <= 5; ++l)
      if (auto x = build_rank0(l, r, gen)) out.push_back(std::move(*x));
  return out;
}

inline QC small_coeff(Gen& gen) {
  QC c;
  while (c.is_zero()) c = QC(mpq_class(gen.uniform(-3, 3)), gen.coin(0.3) ? mpq_class(gen.uniform(-2, 2)) : 0);
  return c;
}

// Linear combinations of commuting pairs commute; collects the first
// instance of every rank-one case label and every rank-two pair found.
struct CombinationSearch {
  std::map<std::string, CommuteInstance> rank1;
  std::vector<CommuteInstance> rank2;
};

inline CombinationSearch search_combinations(const std::vector<CommuteInstance>& base, Gen& gen,
                                             int trials, std::size_t rank2_wanted = 4) {
  CombinationSearch out;
  for (int t = 0; t < trials && !base.empty(); ++t) {
    if (out.rank1.size() == 16 && out.rank2.size() >= rank2_wanted) break;
    const auto& K = base[static_cast<std::size_t>(gen.uniform(0, static_cast<long>(base.size()) - 1))];
    const SymbolMatrix2 A = combine(small_coeff(gen), K.H1, small_coeff(gen), K.H2);
    const SymbolMatrix2 B = combine(small_coeff(gen), K.H1, small_coeff(gen), K.H2);
    const std::size_t rank = rank_of(ww_lhs(A, B)).rank;
    if (rank == 1 && rank_of(ww_rhs(A, B)).rank == 1) {
      for (const auto& m : commute_classify_rank1(A, B))
        if (!out.rank1.count(m.label)) out.rank1[m.label] = {1, m.label, m.cell, A, B, m.constants};
    } else if (rank == 2 && out.rank2.size() < rank2_wanted) {
      auto cases = commute_classify_rank2(A, B);
      if (!cases.empty()) out.rank2.push_back({2, "rank2", "", A, B, cases.front().constants});
    }
  }
  return out;
}

// First single-term perturbation of H1 or H2 (adding z^k to one entry) that
// breaks commutation according to the direct check.
inline std::optional<std::pair<SymbolMatrix2, SymbolMatrix2>> perturb(const SymbolMatrix2& H1,
                                                                      const SymbolMatrix2& H2) {
  const long k = std::max(H1.span(), H2.span()) + 1;
  for (long e : {-k, k})
    for (int which = 0; which < 8; ++which) {
      SymbolMatrix2 A = H1, B = H2;
      SymbolMatrix2& M = which < 4 ? A : B;
      Poly* entry[] = {&M.f, &M.u, &M.g, &M.v};
      *entry[which % 4] += Poly::z(e);
      if (!commute_violations(A, B).empty()) return std::make_pair(A, B);
    }
  return std::nullopt;
}

}  // namespace hardyops::testing

#endif
