#include "commute_fixtures.hpp"

#include <gtest/gtest.h>

using namespace hardyops;
using namespace hardyops::testing;

namespace {

Poly P(const char* s) { return parse_symbol(s); }

// Classifier, direct check and operator oracle on one pair.
void expect_three_routes(const SymbolMatrix2& H1, const SymbolMatrix2& H2, bool want) {
  const CommuteVerdict v = commute(H1, H2);
  EXPECT_EQ(v.commute, want) << ::testing::PrintToString(H1) << " / " << ::testing::PrintToString(H2);
  EXPECT_EQ(v.classified, want);
  EXPECT_EQ(commute_oracle(H1, H2), want);
  EXPECT_TRUE(v.consistent());
}

bool has_label(const std::vector<CaseMatch>& cases, const std::string& label) {
  return std::any_of(cases.begin(), cases.end(), [&](const CaseMatch& m) { return m.label == label; });
}

const std::vector<CommuteInstance>& base_instances() {
  static const std::vector<CommuteInstance> v = [] {
    Gen gen(401);
    return rank0_instances(gen);
  }();
  return v;
}

const CombinationSearch& combinations() {
  static const CombinationSearch s = [] {
    Gen gen(402);
    return search_combinations(base_instances(), gen, 6000);
  }();
  return s;
}

const CommuteInstance* base_cell(const std::string& cell) {
  for (const auto& k : base_instances())
    if (k.cell == cell) return &k;
  return nullptr;
}

}  // namespace

TEST(Commute, EqualSymbols) {
  Gen gen(410);
  for (int t = 0; t < 10; ++t) {
    const SymbolMatrix2 H = gen.matrix(2, 0.5);
    const CommuteVerdict v = commute(H, H);
    EXPECT_TRUE(v.commute);
    EXPECT_TRUE(commute_violations(H, H).empty());
    EXPECT_TRUE(is_zero_combination(ww_lhs(H, H)) || v.lhs_rank == 2);
    EXPECT_TRUE(v.consistent());
  }
}

TEST(Commute, ScalarAffineImage) {
  Gen gen(411);
  for (int t = 0; t < 20; ++t) {
    const SymbolMatrix2 H1 = gen.matrix(2, 0.5);
    const QC c = small_coeff(gen), d = small_coeff(gen);
    const SymbolMatrix2 H2{c * H1.f + Poly(d), c * H1.u, c * H1.g, c * H1.v + Poly(d)};
    expect_three_routes(H1, H2, true);
  }
}

TEST(Commute, RandomPairReportsViolation) {
  const SymbolMatrix2 H1{P("z"), P("z^-1"), P("1+z"), P("z^-2")};
  const SymbolMatrix2 H2{P("z^-1"), P("z^2"), P("z^-1"), P("z")};
  const CommuteVerdict v = commute(H1, H2);
  EXPECT_FALSE(v.commute);
  EXPECT_FALSE(v.violated.empty());
  EXPECT_FALSE(commute_oracle(H1, H2));
  EXPECT_TRUE(v.consistent());
}

TEST(CommuteRank0, AllAnalyticTemplate) {
  const SymbolMatrix2 H1{P("z^-1+2"), P("z^-2"), P("z+1"), P("z^2-z")};
  const SymbolMatrix2 H2{P("3*z^-2"), P("1-z^-1"), P("z^3"), P("2*z")};
  const CommuteVerdict v = commute(H1, H2);
  ASSERT_TRUE(v.commute);
  EXPECT_EQ(v.lhs_rank, 0u);
  EXPECT_TRUE(has_label(v.cases, "(1)"));
  EXPECT_TRUE(commute_oracle(H1, H2));
}

TEST(CommuteRank0, ConstantCornerTemplate) {
  // g1, g2, conj(u1), conj(u2) analytic, f2 and v1 constant
  const SymbolMatrix2 H1{P("z+z^-2"), P("z^-1"), P("2*z"), P("5")};
  const SymbolMatrix2 H2{P("-2"), P("z^-3+1"), P("z^2"), P("z^-1+z")};
  const CommuteVerdict v = commute(H1, H2);
  ASSERT_TRUE(v.commute);
  EXPECT_TRUE(has_label(v.cases, "(6)"));
  EXPECT_TRUE(commute_oracle(H1, H2));
}

TEST(CommuteRank0, EveryCellConstructed) {
  const auto& inst = base_instances();
  ASSERT_EQ(inst.size(), 25u);
  std::set<std::string> labels;
  for (const auto& k : inst) {
    SCOPED_TRACE(k.cell);
    const CommuteVerdict v = commute(k.H1, k.H2);
    ASSERT_TRUE(v.commute);
    ASSERT_EQ(v.lhs_rank, 0u);
    ASSERT_EQ(v.rhs_rank, 0u);
    const CaseMatch* m = find_cell(v.cases, k.cell);
    ASSERT_NE(m, nullptr);
    EXPECT_EQ(m->label, k.label);
    EXPECT_TRUE(commute_oracle(k.H1, k.H2));
    labels.insert(k.label);
  }
  // (1)..(13) and the hatted variants of (2), (3), (4), (6), (7), (8), (10), (11)
  EXPECT_EQ(labels.size(), 21u);
}

TEST(CommuteRank0, CellConstantsRecovered) {
  for (const auto& k : base_instances()) {
    SCOPED_TRACE(k.cell);
    if (k.cell.find("L5") != std::string::npos) {
      EXPECT_EQ(k.constants.at("lambda"), QC(2));
    }
    if (k.cell.find("R5") != std::string::npos) {
      EXPECT_EQ(k.constants.at("mu"), QC(3));
    }
  }
  const CommuteInstance* k = base_cell(cell_name(5, 5));
  ASSERT_NE(k, nullptr);
  EXPECT_EQ(k->label, "(13)");
}

TEST(CommuteRank1, EveryCaseFromCombinations) {
  const auto& s = combinations();
  ASSERT_EQ(s.rank1.size(), 16u);
  for (const auto& [label, k] : s.rank1) {
    SCOPED_TRACE(label);
    const CommuteVerdict v = commute(k.H1, k.H2);
    ASSERT_TRUE(v.commute);
    EXPECT_EQ(v.lhs_rank, 1u);
    EXPECT_EQ(v.rhs_rank, 1u);
    EXPECT_TRUE(commute_oracle(k.H1, k.H2));
    const auto it = std::find_if(v.cases.begin(), v.cases.end(),
                                 [&](const CaseMatch& m) { return m.label == label; });
    ASSERT_NE(it, v.cases.end());
    ASSERT_TRUE(it->reference_list_holds.has_value());
    EXPECT_TRUE(*it->reference_list_holds);
    EXPECT_FALSE(it->constants.at("alpha").is_zero());
  }
}

TEST(CommuteRank1, PinnedConstantsRecovered) {
  // cases whose derived lists the clause builder can satisfy with fixed constants
  Gen gen(403);
  Env cs;
  bind_constant(cs, "lam", QC(2));
  bind_constant(cs, "mu", QC(3));
  bind_constant(cs, "alpha", QC(5));
  for (int k : {3, 4, 7, 8, 9, 10, 13, 14}) {
    SCOPED_TRACE(k);
    const int l = (k - 1) % 4 + 1, r = (k - 1) / 4 + 1;
    const std::string label = "(" + std::to_string(k) + ")";
    bool found = false;
    for (int t = 0; t < 120 && !found; ++t) {
      const auto& split = affine_splits()[static_cast<std::size_t>(t) % affine_splits().size()];
      auto p = build_pair(rank1_derived_list(l, r), cs, split, 1, 3, gen, 0.5);
      if (!p) continue;
      const CommuteVerdict v = commute(p->first, p->second);
      if (!v.commute || v.lhs_rank != 1) continue;
      for (const auto& m : v.cases)
        if (m.label == label && m.constants.at("lambda") == QC(2) && m.constants.at("mu") == QC(3) &&
            m.constants.at("alpha") == QC(5)) {
          found = true;
          EXPECT_TRUE(commute_oracle(p->first, p->second));
        }
    }
    EXPECT_TRUE(found);
  }
}

TEST(CommuteRank1, AlphaScalesWithH1) {
  // real scaling of H1 scales every H1 vector; alpha moves by s or 1/s
  for (const auto& [label, k] : combinations().rank1) {
    SCOPED_TRACE(label);
    const QC s(3);
    const SymbolMatrix2 H1s{s * k.H1.f, s * k.H1.u, s * k.H1.g, s * k.H1.v};
    const auto base = commute_classify_rank1(k.H1, k.H2);
    const auto scaled = commute_classify_rank1(H1s, k.H2);
    const auto a = std::find_if(base.begin(), base.end(), [&](const CaseMatch& m) { return m.label == label; });
    const auto b = std::find_if(scaled.begin(), scaled.end(), [&](const CaseMatch& m) { return m.label == label; });
    ASSERT_NE(a, base.end());
    ASSERT_NE(b, scaled.end());
    EXPECT_EQ(a->constants.at("lambda"), b->constants.at("lambda"));
    EXPECT_EQ(a->constants.at("mu"), b->constants.at("mu"));
    const QC x = a->constants.at("alpha"), y = b->constants.at("alpha");
    EXPECT_TRUE(y == s * x || y == s.inverse() * x) << to_string(x) << " -> " << to_string(y);
  }
}

TEST(CommuteRank2, CombinationsClassified) {
  const auto& s = combinations();
  ASSERT_GE(s.rank2.size(), 1u);
  for (const auto& k : s.rank2) {
    const CommuteVerdict v = commute(k.H1, k.H2);
    EXPECT_TRUE(v.commute);
    EXPECT_EQ(v.lhs_rank, 2u);
    ASSERT_TRUE(v.classified);
    EXPECT_EQ(v.cases.front().label, "rank2");
    EXPECT_TRUE(commute_oracle(k.H1, k.H2));
  }
}

TEST(CommuteRank2, DiagonalConstantsRecovered) {
  // cell L3+R2: K1 has r = s = 0 and K2 has p = q = 0, so
  // H1 = x K1 + y K2, H2 = K1 + K2 gives p1 = x p2, r1 = y r2
  Gen gen(408);
  const QC x(3), y(-1);
  int checked = 0;
  for (int t = 0; t < 40 && checked < 3; ++t) {
    const auto k = build_rank0(3, 2, gen, 6);
    if (!k) continue;
    const SymbolMatrix2 H1 = combine(x, k->H1, y, k->H2), H2 = combine(QC(1), k->H1, QC(1), k->H2);
    const CommuteVerdict v = commute(H1, H2);
    ASSERT_TRUE(v.commute);
    if (v.lhs_rank != 2) continue;
    ++checked;
    ASSERT_TRUE(v.classified);
    const Constants& c = v.cases.front().constants;
    EXPECT_EQ(c.at("a"), x);
    EXPECT_EQ(c.at("b"), QC());
    EXPECT_EQ(c.at("c"), QC());
    EXPECT_EQ(c.at("d"), y);
    EXPECT_TRUE(commute_oracle(H1, H2));
  }
  EXPECT_GT(checked, 0);
}

TEST(CommuteRank2, ScalarFamilyTraceRecoversCoefficient) {
  // H1 = c H2 + e: a = d = c, b = c = 0 whenever the pair lands in rank two
  Gen gen(405);
  int seen = 0;
  for (int t = 0; t < 60; ++t) {
    const SymbolMatrix2 H2 = gen.matrix(2, 0.6);
    const QC c = small_coeff(gen), e = small_coeff(gen);
    const SymbolMatrix2 H1{c * H2.f + Poly(e), c * H2.u, c * H2.g, c * H2.v + Poly(e)};
    const CommuteVerdict v = commute(H1, H2);
    ASSERT_TRUE(v.commute);
    if (v.lhs_rank != 2) continue;
    ++seen;
    ASSERT_TRUE(v.classified);
    const Constants& k = v.cases.front().constants;
    EXPECT_EQ((k.at("a") + k.at("d")) * QC(mpq_class(1, 2)), c);
    EXPECT_EQ(k.at("b"), QC());
    EXPECT_EQ(k.at("c"), QC());
  }
  EXPECT_GT(seen, 0);
}

TEST(CommuteRank2, RequiresRankTwo) {
  const SymbolMatrix2 H{P("z^-1"), P("z^-1"), P("z"), P("z")};
  EXPECT_THROW(commute_classify_rank2(H, H), ContractError);
}

TEST(Commute, PerturbationsBreakEveryCase) {
  std::vector<CommuteInstance> all = base_instances();
  for (const auto& [label, k] : combinations().rank1) all.push_back(k);
  for (const auto& k : combinations().rank2) all.push_back(k);
  for (const auto& k : all) {
    SCOPED_TRACE(k.label + " " + k.cell);
    const auto p = perturb(k.H1, k.H2);
    ASSERT_TRUE(p.has_value());
    expect_three_routes(p->first, p->second, false);
  }
}

TEST(Commute, RandomPairsConsistent) {
  Gen gen(406);
  for (int t = 0; t < 200; ++t) {
    const SymbolMatrix2 H1 = gen.matrix(2, 0.4), H2 = gen.matrix(2, 0.4);
    const CommuteVerdict v = commute(H1, H2);
    ASSERT_TRUE(v.consistent()) << ::testing::PrintToString(H1) << " / " << ::testing::PrintToString(H2);
    ASSERT_EQ(v.commute, commute_oracle(H1, H2));
  }
}

TEST(Commute, DiagonalPairsHaveEvenRank) {
  // f = v on both sides: commuting pairs never land in rank one
  Gen gen(407);
  int commuting = 0;
  auto check = [&](const SymbolMatrix2& H1, const SymbolMatrix2& H2) {
    const CommuteVerdict v = commute(H1, H2);
    if (!v.commute) return;
    ++commuting;
    EXPECT_NE(v.lhs_rank, 1u);
    EXPECT_EQ(v.lhs_rank % 2, 0u);
  };
  for (int t = 0; t < 200; ++t) {
    SymbolMatrix2 H1 = gen.matrix(1, 0.5), H2 = gen.matrix(1, 0.5);
    H1.v = H1.f, H2.v = H2.f;
    if (t % 2 == 0) H2 = SymbolMatrix2{QC(2) * H1.f + Poly(1), QC(2) * H1.u, QC(2) * H1.g, QC(2) * H1.f + Poly(1)};
    check(H1, H2);
  }
  EXPECT_GT(commuting, 0);
}
