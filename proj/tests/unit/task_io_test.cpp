#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "cellcheck/errors.hpp"
#include "cellcheck/feedback.hpp"
#include "cellcheck/fixtures.hpp"
#include "cellcheck/workbook_io.hpp"
#include "helpers.hpp"

using namespace cellcheck;
using namespace cellcheck::testing;
using nlohmann::json;

namespace {

json minimal() {
    return json{{"task", "t"},
                {"reference", {{"name", "r"}, {"sheets", {{{"name", "S"}, {"cells", {{"A1", 1}, {"B1", "=A1*2"}}}}}}}}};
}

}  // namespace

TEST(Bundle, LoadsFixtureBundle) {
    const TaskBundle b = load_bundle(default_fixture_root() / "grades" / "task.json");
    EXPECT_EQ(b.task_id, "grades");
    ASSERT_EQ(b.annotations.size(), 1u);
    EXPECT_EQ(b.annotations[0].start, at("B3"));
    EXPECT_EQ(b.annotations[0].end, at("D6"));
    ASSERT_EQ(b.materials.size(), 1u);
    EXPECT_EQ(b.materials[0].keywords, (std::vector<std::string>{"avg", "average", "mean"}));
    EXPECT_FALSE(b.graded_cells.has_value());
    EXPECT_EQ(b.quality.overrides.at("operator_total"), (Threshold{2, 1}));
}

TEST(Bundle, DefaultsApply) {
    const TaskBundle b = bundle_from_json(minimal(), ".");
    EXPECT_EQ(b.tolerance, Tolerance{});
    EXPECT_EQ(b.quality, QualityConfig{});
    EXPECT_TRUE(b.annotations.empty());
}

TEST(Bundle, RoundTrip) {
    const TaskBundle b = load_bundle(default_fixture_root() / "grades" / "task.json");
    const TaskBundle back = bundle_from_json(json::parse(bundle_to_json(b).dump()), ".");
    EXPECT_EQ(back, b);
    TaskBundle graded = b;
    graded.graded_cells = std::set<CellAddress>{at("D6"), at("B6")};
    graded.annotations.push_back(Annotation{at("A1"), at("A1"), "x", "https://example.org"});
    EXPECT_EQ(bundle_from_json(json::parse(bundle_to_json(graded).dump()), "."), graded);
}

TEST(Bundle, KeywordsNormalized) {
    json doc = minimal();
    doc["materials"] = json::array({{{"title", "T"}, {"keywords", {"Avg.", "MEAN"}}, {"ref", "x"}}});
    EXPECT_EQ(bundle_from_json(doc, ".").materials[0].keywords, (std::vector<std::string>{"avg", "mean"}));
}

TEST(Bundle, ConfigErrors) {
    auto rejects = [](json doc) { EXPECT_THROW(bundle_from_json(doc, "."), ConfigError) << doc.dump(); };
    json d = minimal();
    d["surprise"] = 1;
    rejects(d);
    d = minimal();
    d.erase("reference");
    rejects(d);
    d = minimal();
    d["quality"] = {{"factor", 0.5}};
    rejects(d);
    d = minimal();
    d["quality"] = {{"min_idiom_operands", 1}};
    rejects(d);
    d = minimal();
    d["quality"] = {{"overrides", {{"no_such_metric", {{"factor", 2}}}}}};
    rejects(d);
    d = minimal();
    d["tolerance"] = {{"abs", -1}};
    rejects(d);
    d = minimal();
    d["materials"] = json::array({{{"title", "T"}, {"keywords", json::array()}}});
    rejects(d);
    d = minimal();
    d["reference"]["sheets"][0]["cells"]["B1"] = "=B1";
    rejects(d);
    d = minimal();
    d["reference"]["sheets"][0]["cells"]["B1"] = "=(";
    rejects(d);
    d = minimal();
    d["reference"] = "does-not-exist.wb";
    rejects(d);
    d = minimal();
    d["annotations"] = json::array({{{"range", "B3:Z"}, {"text", "t"}}});
    rejects(d);
}

TEST(Bundle, MissingFile) { EXPECT_THROW(load_bundle("/nonexistent/task.json"), ConfigError); }
