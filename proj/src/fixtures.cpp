#include "cellcheck/fixtures.hpp"

#include "cellcheck/errors.hpp"
#include "cellcheck/eval.hpp"
#include "cellcheck/workbook_io.hpp"

#ifndef CELLCHECK_FIXTURE_DIR
#define CELLCHECK_FIXTURE_DIR "data/fixtures"
#endif

namespace cellcheck {

namespace {

void check_values(const nlohmann::json& expected, const Workbook& wb, const std::string& label) {
    const ValueGrid grid = evaluate(wb);
    const std::string sheet = wb.default_sheet();
    for (const auto& [key, want] : expected.items()) {
        const Value got = grid.get(parse_address(key, sheet));
        if (!want.is_number() || !values_equal(got, Value::number(want.get<double>()), Tolerance{})) {
            throw ConfigError("fixture self-check failed: " + label + " " + key + " = " + to_display(got));
        }
    }
}

}  // namespace

std::filesystem::path default_fixture_root() { return CELLCHECK_FIXTURE_DIR; }

FixtureSet load_fixture(std::string_view name, const std::filesystem::path& root) {
    const std::filesystem::path dir = root / std::string(name);
    const std::filesystem::path manifest = dir / "fixture.json";
    if (name.empty() || name.find('/') != std::string_view::npos || !std::filesystem::is_regular_file(manifest)) {
        throw ConfigError("unknown fixture '" + std::string(name) + "'");
    }
    nlohmann::json doc;
    try {
        doc = parse_json_strict(read_text_file(manifest));
    } catch (const std::runtime_error& e) {
        throw ConfigError(e.what());
    }

    FixtureSet f;
    f.name = std::string(name);
    f.directory = dir;
    try {
        f.submission = load_workbook(dir / doc.at("submission").get<std::string>());
        f.solution = load_workbook(dir / doc.at("solution").get<std::string>());
    } catch (const FormatError& e) {
        throw ConfigError(std::string("fixture workbook: ") + e.what());
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("fixture manifest: ") + e.what());
    }
    f.bundle = load_bundle(dir / doc.at("bundle").get<std::string>());

    if (auto it = doc.find("expected_values"); it != doc.end()) {
        if (auto s = it->find("submission"); s != it->end()) check_values(*s, f.submission, "submission");
        if (auto s = it->find("solution"); s != it->end()) check_values(*s, f.solution, "solution");
    }
    if (auto it = doc.find("expected_messages"); it != doc.end()) {
        for (const auto& [level, msgs] : it->items()) {
            f.expected_messages[std::stoi(level)] = msgs.get<std::vector<std::string>>();
        }
    }
    return f;
}

}  // namespace cellcheck
