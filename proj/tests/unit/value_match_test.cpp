#include <random>

#include <gtest/gtest.h>

#include "cellcheck/errors.hpp"
#include "cellcheck/fixtures.hpp"
#include "cellcheck/value_match.hpp"
#include "helpers.hpp"

using namespace cellcheck;
using namespace cellcheck::testing;

namespace {

std::vector<CellAddress> addrs(std::initializer_list<const char*> names) {
    std::vector<CellAddress> out;
    for (const char* n : names) out.push_back(at(n));
    return out;
}

}  // namespace

TEST(MatchValues, Table1AgainstTable2) {
    const FixtureSet f = load_fixture("grades");
    const MatchResult r = match_values(f.solution, f.submission);
    EXPECT_EQ(r.value_errors, addrs({"D3", "C6", "D6"}));
    EXPECT_EQ(r.formula_errors, addrs({"D3", "C6"}));
}

TEST(MatchValues, PropagationRepairTrace) {
    const FixtureSet f = load_fixture("grades");
    const MatchResult r = match_values(f.solution, f.submission);
    const TraceEntry* first = nullptr;
    const TraceEntry* again = nullptr;
    for (const auto& t : r.trace) {
        if (t.cell != at("D6")) continue;
        if (t.phase == MatchPhase::FirstCompare) first = &t;
        if (t.phase == MatchPhase::ReEvaluate) again = &t;
    }
    ASSERT_NE(first, nullptr);
    ASSERT_NE(again, nullptr);
    EXPECT_FALSE(first->equal);
    EXPECT_EQ(first->submission, Value::number(55));
    EXPECT_TRUE(again->equal);
    EXPECT_TRUE(values_equal(again->submission, Value::number((75.0 + 63 + 85) / 3)));
    // D3 is re-evaluated (and corrected) before D6.
    std::size_t d3 = 0;
    std::size_t d6 = 0;
    for (std::size_t i = 0; i < r.trace.size(); ++i) {
        if (r.trace[i].phase != MatchPhase::ReEvaluate) continue;
        if (r.trace[i].cell == at("D3")) d3 = i;
        if (r.trace[i].cell == at("D6")) d6 = i;
    }
    EXPECT_LT(d3, d6);
    EXPECT_EQ(r.corrected.cell(at("D3"))->constant(), Value::number(75));
}

TEST(MatchValues, SelfComparisonIsClean) {
    const FixtureSet f = load_fixture("grades");
    const MatchResult r = match_values(f.solution, f.solution);
    EXPECT_TRUE(r.value_errors.empty());
    EXPECT_TRUE(r.formula_errors.empty());
}

TEST(MatchValues, SingleMutationD4) {
    const FixtureSet f = load_fixture("grades");
    Workbook sub = f.solution;
    sub.set_formula(at("D4"), "=(B4-C4)/2");
    const MatchResult r = match_values(f.solution, sub);
    EXPECT_EQ(r.value_errors, addrs({"D4", "D6"}));
    EXPECT_EQ(r.formula_errors, addrs({"D4"}));
}

TEST(MatchValues, EachNodeFirstComparedOnce) {
    const FixtureSet f = load_fixture("grades");
    const MatchResult r = match_values(f.solution, f.submission);
    std::map<CellAddress, int> seen;
    for (const auto& t : r.trace) {
        if (t.phase == MatchPhase::FirstCompare) ++seen[t.cell];
    }
    EXPECT_EQ(seen.size(), 12u);
    for (const auto& [cell, n] : seen) EXPECT_EQ(n, 1) << cell.to_string();
}

TEST(MatchValues, MissingWorkBehavesLikeWrongWork) {
    const Workbook ref = make_sheet({{"A1", 2.0}, {"B1", "=A1*2"}});
    const Workbook sub = make_sheet({{"A1", 2.0}});
    const MatchResult r = match_values(ref, sub);
    EXPECT_EQ(r.value_errors, addrs({"B1"}));
    EXPECT_EQ(r.formula_errors, addrs({"B1"}));
    EXPECT_EQ(r.corrected.cell(at("B1"))->constant(), Value::number(4));
}

TEST(MatchValues, ConstantWhereFormulaExpected) {
    const Workbook ref = make_sheet({{"A1", 2.0}, {"B1", "=A1*2"}, {"C1", "=B1+1"}});
    const Workbook sub = make_sheet({{"A1", 2.0}, {"B1", 3.0}, {"C1", "=B1+1"}});
    const MatchResult r = match_values(ref, sub);
    EXPECT_EQ(r.value_errors, addrs({"B1", "C1"}));
    EXPECT_EQ(r.formula_errors, addrs({"B1"}));
}

TEST(MatchValues, SubmissionCycleBecomesFormulaError) {
    const Workbook ref = make_sheet({{"A1", 2.0}, {"B1", "=A1*2"}});
    const Workbook sub = make_sheet({{"A1", 2.0}, {"B1", "=B1*2"}});
    const MatchResult r = match_values(ref, sub);
    EXPECT_EQ(r.formula_errors, addrs({"B1"}));
}

TEST(MatchValues, ReferenceCycleRejected) {
    const Workbook ref = make_sheet({{"A1", "=B1"}, {"B1", "=A1"}});
    EXPECT_THROW(match_values(ref, ref), ConfigError);
}

TEST(MatchValues, GradedCellsRestrictComparison) {
    const FixtureSet f = load_fixture("grades");
    const MatchResult only_b6 = match_values(f.solution, f.submission, {}, std::set<CellAddress>{at("B6")});
    EXPECT_TRUE(only_b6.value_errors.empty());
    const MatchResult d6 = match_values(f.solution, f.submission, {}, std::set<CellAddress>{at("D6")});
    EXPECT_EQ(d6.value_errors, addrs({"D3", "D6"}));
    EXPECT_EQ(d6.formula_errors, addrs({"D3"}));
}

TEST(MatchValues, HelperCellsFeedReEvaluation) {
    const Workbook ref = make_sheet({{"A1", 2.0}, {"B1", "=A1*3"}});
    const Workbook sub = make_sheet({{"A1", 2.0}, {"Z9", 3.0}, {"B1", "=A1*Z9"}});
    const MatchResult r = match_values(ref, sub);
    EXPECT_TRUE(r.value_errors.empty());
}

TEST(MatchValues, ToleranceApplies) {
    const Workbook ref = make_sheet({{"A1", "=1/3"}});
    const Workbook sub = make_sheet({{"A1", 0.3333}});
    EXPECT_EQ(match_values(ref, sub).value_errors.size(), 1u);
    EXPECT_TRUE(match_values(ref, sub, Tolerance{1e-3, 0}).value_errors.empty());
}
