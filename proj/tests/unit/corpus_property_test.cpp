#include <gtest/gtest.h>

#include "corpus.hpp"
#include "properties.hpp"

using namespace cellcheck::testing;

namespace {

void expect_clean(const PropertyOutcome& o) {
    for (std::size_t i = 0; i < o.violations.size() && i < 5; ++i) ADD_FAILURE() << o.violations[i];
    EXPECT_TRUE(o.ok()) << o.violations.size() << " violations";
}

}  // namespace

TEST(CorpusProperty, GeneratorRespectsLimits) {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 500; ++i) {
        const GeneratedWorkbook g = generate_workbook(rng);
        ASSERT_LE(g.rows, 8);
        ASSERT_LE(g.cols, 8);
        for (const auto& [addr, e] : g.formulas) ASSERT_LE(formula_depth(e), 3);
    }
}

TEST(CorpusProperty, ErrorInjection) { expect_clean(check_error_injection(300, 101)); }

TEST(CorpusProperty, SelfMatch) { expect_clean(check_self_match(300, 102)); }

TEST(CorpusProperty, Canonicalization) { expect_clean(check_canonicalization(300, 103)); }
