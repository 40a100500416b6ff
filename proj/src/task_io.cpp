#include <algorithm>
#include <cmath>

#include "cellcheck/errors.hpp"
#include "cellcheck/feedback.hpp"
#include "cellcheck/workbook_io.hpp"

namespace cellcheck {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw ConfigError("task bundle: " + what); }

void only_fields(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
    if (!obj.is_object()) bad(where + " must be an object");
    for (const auto& [key, value] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            bad("unknown field '" + key + "' in " + where);
        }
    }
}

double number_field(const json& obj, const char* key, double fallback, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_number()) bad(where + "." + key + " must be a number");
    return it->get<double>();
}

std::string string_field(const json& obj, const char* key, const std::string& where, bool required) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) {
        if (required) bad("missing " + where + "." + key);
        return {};
    }
    if (!it->is_string()) bad(where + "." + key + " must be a string");
    return it->get<std::string>();
}

CellAddress address_in(const std::string& text, std::string_view sheet) {
    try {
        return parse_address(text, sheet);
    } catch (const AddressError& e) {
        bad(std::string("bad address '") + text + "': " + e.what());
    }
}

std::pair<CellAddress, CellAddress> parse_area(const std::string& text, std::string_view sheet) {
    const auto colon = text.find(':');
    CellAddress a = address_in(text.substr(0, colon), sheet);
    CellAddress b = colon == std::string::npos ? a : address_in(text.substr(colon + 1), a.sheet);
    if (a.sheet != b.sheet) bad("annotation range '" + text + "' spans two sheets");
    CellAddress lo{a.sheet, std::min(a.column, b.column), std::min(a.row, b.row)};
    CellAddress hi{a.sheet, std::max(a.column, b.column), std::max(a.row, b.row)};
    return {lo, hi};
}

std::string area_text(const Annotation& a, std::string_view sheet) {
    if (a.start == a.end) return a.start.display(sheet);
    return a.start.display(sheet) + ":" + a.end.to_string();
}

}  // namespace

TaskBundle bundle_from_json(const json& doc, const std::filesystem::path& base_dir) {
    only_fields(doc, {"task", "reference", "tolerance", "graded_cells", "annotations", "materials", "quality"},
                "bundle");
    TaskBundle b;
    b.task_id = string_field(doc, "task", "bundle", true);

    auto ref = doc.find("reference");
    if (ref == doc.end()) bad("missing bundle.reference");
    try {
        if (ref->is_string()) {
            std::filesystem::path p = ref->get<std::string>();
            b.reference = load_workbook(p.is_absolute() ? p : base_dir / p);
        } else if (ref->is_object()) {
            b.reference = workbook_from_json(*ref);
        } else {
            bad("bundle.reference must be a path or a workbook object");
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::runtime_error& e) {
        throw ConfigError(std::string("reference workbook: ") + e.what());
    }
    const std::string sheet = b.reference.default_sheet();

    if (auto it = doc.find("tolerance"); it != doc.end()) {
        only_fields(*it, {"abs", "rel"}, "tolerance");
        b.tolerance.abs = number_field(*it, "abs", b.tolerance.abs, "tolerance");
        b.tolerance.rel = number_field(*it, "rel", b.tolerance.rel, "tolerance");
    }

    if (auto it = doc.find("graded_cells"); it != doc.end() && !it->is_null()) {
        if (!it->is_array()) bad("graded_cells must be a list of addresses or null");
        std::set<CellAddress> cells;
        for (const auto& a : *it) {
            if (!a.is_string()) bad("graded_cells entries must be strings");
            cells.insert(address_in(a.get<std::string>(), sheet));
        }
        b.graded_cells = std::move(cells);
    }

    if (auto it = doc.find("annotations"); it != doc.end()) {
        if (!it->is_array()) bad("annotations must be a list");
        for (const auto& a : *it) {
            only_fields(a, {"range", "text", "link"}, "annotation");
            Annotation ann;
            std::tie(ann.start, ann.end) = parse_area(string_field(a, "range", "annotation", true), sheet);
            ann.text = string_field(a, "text", "annotation", true);
            if (auto link = a.find("link"); link != a.end() && !link->is_null()) {
                ann.link = string_field(a, "link", "annotation", false);
            }
            b.annotations.push_back(std::move(ann));
        }
    }

    if (auto it = doc.find("materials"); it != doc.end()) {
        if (!it->is_array()) bad("materials must be a list");
        for (const auto& m : *it) {
            only_fields(m, {"title", "keywords", "ref"}, "material");
            MaterialEntry entry;
            entry.title = string_field(m, "title", "material", true);
            entry.ref = string_field(m, "ref", "material", false);
            auto kw = m.find("keywords");
            if (kw == m.end() || !kw->is_array()) bad("material '" + entry.title + "' needs a keywords list");
            for (const auto& k : *kw) {
                if (!k.is_string()) bad("keywords must be strings");
                for (auto& t : normalize_tokens(k.get<std::string>())) {
                    if (std::find(entry.keywords.begin(), entry.keywords.end(), t) == entry.keywords.end()) {
                        entry.keywords.push_back(std::move(t));
                    }
                }
            }
            if (entry.keywords.empty()) bad("material '" + entry.title + "' has no keywords");
            b.materials.push_back(std::move(entry));
        }
    }

    if (auto it = doc.find("quality"); it != doc.end()) {
        only_fields(*it, {"factor", "offset", "min_idiom_operands", "overrides"}, "quality");
        auto& q = b.quality;
        q.factor = number_field(*it, "factor", q.factor, "quality");
        q.offset = number_field(*it, "offset", q.offset, "quality");
        if (auto n = it->find("min_idiom_operands"); n != it->end()) {
            if (!n->is_number_integer() || n->get<long long>() < 0) {
                bad("quality.min_idiom_operands must be a non-negative integer");
            }
            q.min_idiom_operands = n->get<std::size_t>();
        }
        if (auto ov = it->find("overrides"); ov != it->end()) {
            if (!ov->is_object()) bad("quality.overrides must be an object");
            for (const auto& [metric, th] : ov->items()) {
                only_fields(th, {"factor", "offset"}, "quality.overrides." + metric);
                q.overrides[metric] = Threshold{number_field(th, "factor", q.factor, metric),
                                                number_field(th, "offset", q.offset, metric)};
            }
        }
    }

    validate_bundle(b);
    return b;
}

TaskBundle load_bundle(const std::filesystem::path& path) {
    std::string text;
    try {
        text = read_text_file(path);
    } catch (const std::runtime_error& e) {
        throw ConfigError(e.what());
    }
    json doc;
    try {
        doc = parse_json_strict(text);
    } catch (const FormatError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return bundle_from_json(doc, path.parent_path());
}

ordered_json bundle_to_json(const TaskBundle& b) {
    const std::string sheet = b.reference.default_sheet();
    ordered_json j;
    j["task"] = b.task_id;
    j["reference"] = workbook_to_json(b.reference);
    j["tolerance"] = ordered_json{{"abs", b.tolerance.abs}, {"rel", b.tolerance.rel}};
    if (b.graded_cells) {
        ordered_json cells = ordered_json::array();
        for (const auto& c : *b.graded_cells) cells.push_back(c.display(sheet));
        j["graded_cells"] = std::move(cells);
    } else {
        j["graded_cells"] = nullptr;
    }
    ordered_json anns = ordered_json::array();
    for (const auto& a : b.annotations) {
        ordered_json e{{"range", area_text(a, sheet)}, {"text", a.text}};
        e["link"] = a.link ? ordered_json(*a.link) : ordered_json(nullptr);
        anns.push_back(std::move(e));
    }
    j["annotations"] = std::move(anns);
    ordered_json mats = ordered_json::array();
    for (const auto& m : b.materials) {
        mats.push_back(ordered_json{{"title", m.title}, {"keywords", m.keywords}, {"ref", m.ref}});
    }
    j["materials"] = std::move(mats);
    ordered_json overrides = ordered_json::object();
    for (const auto& [metric, th] : b.quality.overrides) {
        overrides[metric] = ordered_json{{"factor", th.factor}, {"offset", th.offset}};
    }
    j["quality"] = ordered_json{{"factor", b.quality.factor},
                                {"offset", b.quality.offset},
                                {"min_idiom_operands", b.quality.min_idiom_operands},
                                {"overrides", std::move(overrides)}};
    return j;
}

}  // namespace cellcheck
