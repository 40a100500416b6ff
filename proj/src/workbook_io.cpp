#include "cellcheck/workbook_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

namespace cellcheck {

using nlohmann::json;

nlohmann::json parse_json_strict(std::string_view text) {
    std::vector<std::set<std::string>> seen;
    json::parser_callback_t cb = [&seen](int, json::parse_event_t event, json& parsed) {
        switch (event) {
            case json::parse_event_t::object_start:
                seen.emplace_back();
                break;
            case json::parse_event_t::object_end:
                if (!seen.empty()) seen.pop_back();
                break;
            case json::parse_event_t::key: {
                const auto& key = parsed.get_ref<const std::string&>();
                if (!seen.empty() && !seen.back().insert(key).second) {
                    throw FormatError(key, "duplicate key");
                }
                break;
            }
            default:
                break;
        }
        return true;
    };
    try {
        return json::parse(text.begin(), text.end(), cb);
    } catch (const json::parse_error& e) {
        throw FormatError("", std::string("invalid JSON: ") + e.what());
    }
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

Cell cell_from_json(const CellAddress& addr, const json& v) {
    const std::string where = addr.qualified();
    if (v.is_boolean()) return Cell::make_constant(addr, Value::boolean(v.get<bool>()));
    if (v.is_number()) return Cell::make_constant(addr, Value::number(v.get<double>()));
    if (v.is_string()) {
        const auto& s = v.get_ref<const std::string&>();
        if (!s.empty() && s.front() == '=') return Cell::make_formula(addr, s);
        if (!s.empty() && s.front() == '\'') return Cell::make_constant(addr, Value::text(s.substr(1)));
        return Cell::make_constant(addr, Value::text(s));
    }
    throw FormatError(where, "cell must be a number, boolean or string");
}

void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed,
                    const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (auto a : allowed) ok = ok || key == a;
        if (!ok) throw FormatError(where, "unknown field '" + key + "'");
    }
}

}  // namespace

Workbook workbook_from_json(const json& doc) {
    if (!doc.is_object()) throw FormatError("", "workbook must be a JSON object");
    reject_unknown(doc, {"name", "sheets"}, "workbook");
    Workbook wb;
    if (auto it = doc.find("name"); it != doc.end()) {
        if (!it->is_string()) throw FormatError("name", "must be a string");
        wb.set_name(it->get<std::string>());
    }
    auto sheets = doc.find("sheets");
    if (sheets == doc.end() || !sheets->is_array()) {
        throw FormatError("sheets", "missing or not an array");
    }
    for (std::size_t i = 0; i < sheets->size(); ++i) {
        const json& js = (*sheets)[i];
        const std::string where = "sheets[" + std::to_string(i) + "]";
        if (!js.is_object()) throw FormatError(where, "sheet must be an object");
        reject_unknown(js, {"name", "cells"}, where);
        auto name = js.find("name");
        if (name == js.end() || !name->is_string() || name->get_ref<const std::string&>().empty()) {
            throw FormatError(where, "sheet needs a non-empty string name");
        }
        Sheet& sheet = wb.add_sheet(name->get<std::string>());
        auto cells = js.find("cells");
        if (cells == js.end()) continue;
        if (!cells->is_object()) throw FormatError(where + ".cells", "must be an object");
        for (const auto& [key, value] : cells->items()) {
            if (key.find('!') != std::string::npos) {
                throw FormatError(key, "cell keys must not carry a sheet prefix");
            }
            CellAddress addr;
            try {
                addr = parse_address(key, sheet.name());
            } catch (const AddressError& e) {
                throw FormatError(key, e.what());
            }
            if (sheet.find(addr.column, addr.row) != nullptr) {
                throw FormatError(addr.qualified(), "duplicate address");
            }
            sheet.set(cell_from_json(addr, value));
        }
    }
    return wb;
}

Workbook read_workbook(std::string_view text) { return workbook_from_json(parse_json_strict(text)); }

Workbook load_workbook(const std::filesystem::path& path) {
    return read_workbook(read_text_file(path));
}

namespace {

nlohmann::ordered_json constant_to_json(const Value& v) {
    if (v.is_number()) {
        double x = v.as_number();
        if (std::nearbyint(x) == x && std::fabs(x) < 9.0e15) {
            return static_cast<long long>(x);
        }
        return x;
    }
    if (v.is_boolean()) return v.as_boolean();
    if (v.is_text()) {
        const auto& s = v.as_text();
        if (!s.empty() && (s.front() == '=' || s.front() == '\'')) return "'" + s;
        return s;
    }
    // Error constants only appear in internal working copies; they are
    // written as their display code and read back as text.
    return to_display(v);
}

}  // namespace

nlohmann::ordered_json workbook_to_json(const Workbook& wb) {
    nlohmann::ordered_json doc;
    doc["name"] = wb.name();
    doc["sheets"] = nlohmann::ordered_json::array();
    for (const auto& sheet : wb.sheets()) {
        nlohmann::ordered_json js;
        js["name"] = sheet.name();
        js["cells"] = nlohmann::ordered_json::object();
        for (const auto& [key, cell] : sheet.cells()) {
            js["cells"][cell.address.to_string()] =
                cell.is_formula() ? nlohmann::ordered_json(cell.formula().text)
                                  : constant_to_json(cell.constant());
        }
        doc["sheets"].push_back(std::move(js));
    }
    return doc;
}

std::string write_workbook(const Workbook& wb) { return workbook_to_json(wb).dump(2) + "\n"; }

}  // namespace cellcheck
