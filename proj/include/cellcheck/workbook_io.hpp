#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "cellcheck/workbook.hpp"

namespace cellcheck {

/// Reads the JSON workbook format:
///   {"name": ..., "sheets": [{"name": ..., "cells": {"A1": <cell>, ...}}]}
/// A cell is a number, a boolean, "=formula", "'text" (apostrophe stripped) or
/// any other string (text). Throws FormatError on structural violations.
Workbook read_workbook(std::string_view text);
Workbook workbook_from_json(const nlohmann::json& doc);
Workbook load_workbook(const std::filesystem::path& path);

/// Inverse of read_workbook; cells are emitted row-major per sheet.
std::string write_workbook(const Workbook& wb);
nlohmann::ordered_json workbook_to_json(const Workbook& wb);

/// Parses JSON rejecting duplicate object keys (nlohmann silently keeps the
/// last one otherwise).
nlohmann::json parse_json_strict(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace cellcheck
