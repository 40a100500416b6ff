#include <gtest/gtest.h>

#include "cellcheck/feedback.hpp"
#include "cellcheck/fixtures.hpp"
#include "cellcheck/workbook_io.hpp"
#include "helpers.hpp"

using namespace cellcheck;
using namespace cellcheck::testing;

namespace {

const FixtureSet& grades() {
    static const FixtureSet f = load_fixture("grades");
    return f;
}

}  // namespace

TEST(RenderJson, PassReport) {
    const FeedbackReport r = generate_feedback(grades().bundle, grades().solution, 1);
    const std::string text = render_json(r);
    EXPECT_EQ(text.rfind(R"({"task":"grades","level":1,"status":"pass","messages":["The spreadsheet is correct."],)"
                         R"("diagnoses":[],)",
                         0),
              0u);
}

TEST(RenderJson, Level6Diagnoses) {
    const FeedbackReport r = generate_feedback(grades().bundle, grades().submission, 6);
    const nlohmann::json j = nlohmann::json::parse(render_json(r));
    EXPECT_EQ(j["diagnoses"][0]["cell"], "D3");
    EXPECT_EQ(j["diagnoses"][0]["kind"], "formula_error");
    EXPECT_EQ(j["diagnoses"][0]["detail"]["category"], "operator");
    EXPECT_EQ(j["diagnoses"][1]["detail"]["expected"][0], "C3:C5");
    EXPECT_TRUE(j["diagnoses"][2]["detail"].is_null());
    EXPECT_EQ(j["metrics"]["reference"]["formula_cell_count"], 6);
}

TEST(RenderJson, SyntaxErrorReport) {
    Workbook sub = grades().submission;
    sub.set_formula(at("D4"), "=SUMM(B4)");
    const FeedbackReport r = generate_feedback(grades().bundle, sub, 3);
    const nlohmann::json j = nlohmann::json::parse(render_json(r));
    EXPECT_EQ(j["status"], "syntax_error");
    ASSERT_EQ(j["syntax"].size(), 1u);
    EXPECT_EQ(j["syntax"][0]["cell"], "D4");
    EXPECT_TRUE(j["diagnoses"].empty());
}

TEST(RenderJson, KeyOrderFixed) {
    const FeedbackReport r = generate_feedback(grades().bundle, grades().submission, 7, true);
    const std::string text = render_json(r);
    std::size_t last = 0;
    for (const char* key : {"\"task\"", "\"level\"", "\"status\"", "\"messages\"", "\"diagnoses\"", "\"quality\"",
                            "\"metrics\"", "\"syntax\""}) {
        const std::size_t pos = text.find(key);
        ASSERT_NE(pos, std::string::npos) << key;
        EXPECT_GE(pos, last) << key;
        last = pos;
    }
}

TEST(ParseReportJson, RoundTripsEveryLevel) {
    for (int level = 1; level <= 7; ++level) {
        for (const Workbook* sub : {&grades().submission, &grades().solution}) {
            const FeedbackReport r = generate_feedback(grades().bundle, *sub, level, level == 7);
            const FeedbackReport back = parse_report_json(render_json(r), "Sheet1");
            EXPECT_EQ(back, r) << "level " << level;
            EXPECT_EQ(render_json(back), render_json(r));
        }
    }
}

TEST(ParseReportJson, RoundTripsSyntaxAndFindings) {
    Workbook sub = grades().submission;
    sub.set_formula(at("A9"), "=1+");
    FeedbackReport r = generate_feedback(grades().bundle, sub, 1);
    r.quality.push_back(MetricExceeded{"operator_total", 9, 4.5});
    r.quality.push_back(DuplicateCalculation{{at("B1"), at("C1")}});
    EXPECT_EQ(parse_report_json(render_json(r), "Sheet1"), r);
}

TEST(ParseReportJson, RejectsMalformed) {
    EXPECT_THROW(parse_report_json("{}", "S"), FormatError);
    EXPECT_THROW(parse_report_json("[1]", "S"), FormatError);
    const FeedbackReport r = generate_feedback(grades().bundle, grades().solution, 1);
    std::string text = render_json(r);
    text.replace(text.find("\"pass\""), 6, "\"maybe\"");
    EXPECT_THROW(parse_report_json(text, "Sheet1"), FormatError);
}
