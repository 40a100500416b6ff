#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cellcheck/feedback.hpp"
#include "cellcheck/workbook.hpp"

namespace cellcheck {

/// A shipped worked example: submission, solution, task bundle and the
/// expected messages per feedback level.
struct FixtureSet {
    std::string name;
    Workbook submission;
    Workbook solution;
    TaskBundle bundle;
    std::map<int, std::vector<std::string>> expected_messages;
    std::filesystem::path directory;
};

std::filesystem::path default_fixture_root();

/// Loads `<root>/<name>/fixture.json` and checks the evaluated values it
/// lists. Throws ConfigError for unknown names or failed self-checks.
FixtureSet load_fixture(std::string_view name, const std::filesystem::path& root = default_fixture_root());

}  // namespace cellcheck
