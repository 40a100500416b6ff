#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <variant>

#include "cellcheck/feedback.hpp"
#include "cellcheck/workbook.hpp"

namespace cellcheck::testing {

using CellSpec = std::pair<const char*, std::variant<double, const char*, bool>>;

/// One-sheet workbook named "Sheet1". Strings starting with '=' are formulas.
inline Workbook make_sheet(std::initializer_list<CellSpec> cells, const std::string& sheet = "Sheet1") {
    Workbook wb("test");
    wb.add_sheet(sheet);
    for (const auto& [key, content] : cells) {
        const CellAddress addr = parse_address(key, sheet);
        if (const auto* d = std::get_if<double>(&content)) {
            wb.set_constant(addr, Value::number(*d));
        } else if (const auto* b = std::get_if<bool>(&content)) {
            wb.set_constant(addr, Value::boolean(*b));
        } else {
            const std::string text = std::get<const char*>(content);
            if (!text.empty() && text[0] == '=') {
                wb.set_formula(addr, text);
            } else {
                wb.set_constant(addr, Value::text(text));
            }
        }
    }
    return wb;
}

inline CellAddress at(const char* text, const std::string& sheet = "Sheet1") { return parse_address(text, sheet); }

inline TaskBundle bundle_for(Workbook reference, std::string id = "t") {
    TaskBundle b;
    b.task_id = std::move(id);
    b.reference = std::move(reference);
    return b;
}

}  // namespace cellcheck::testing
