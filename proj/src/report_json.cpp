#include <string>

#include "cellcheck/errors.hpp"
#include "cellcheck/feedback.hpp"
#include "cellcheck/workbook_io.hpp"

namespace cellcheck {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

ordered_json cells_json(const std::vector<CellAddress>& cells, std::string_view sheet) {
    ordered_json arr = ordered_json::array();
    for (const auto& c : cells) arr.push_back(c.display(sheet));
    return arr;
}

ordered_json fan_json(const std::optional<FanEntry>& fan, std::string_view sheet) {
    if (!fan) return nullptr;
    ordered_json j;
    j["cell"] = fan->cell.display(sheet);
    j["count"] = fan->count;
    return j;
}

ordered_json detail_json(const ErrorDetail& d) {
    ordered_json j;
    j["category"] = category_name(d.category);
    j["expected"] = d.expected;
    j["found"] = d.found;
    ordered_json extras = ordered_json::array();
    for (const auto& e : d.extras) {
        extras.push_back(ordered_json{{"kind", e.kind}, {"name", e.name}, {"message", e.message}});
    }
    j["extras"] = std::move(extras);
    if (d.spelling) {
        j["spelling"] = ordered_json{{"found", d.spelling->found}, {"expected", d.spelling->expected}};
    } else {
        j["spelling"] = nullptr;
    }
    return j;
}

ordered_json finding_json(const QualityFinding& f, std::string_view sheet) {
    ordered_json j;
    if (const auto* m = std::get_if<MetricExceeded>(&f)) {
        j["kind"] = "metric_exceeded";
        j["metric"] = m->metric;
        j["submission"] = m->submission;
        j["reference"] = m->reference;
    } else if (const auto* s = std::get_if<IdiomSuggestion>(&f)) {
        j["kind"] = "idiom_suggestion";
        j["function"] = s->function;
        j["cells"] = cells_json(s->cells, sheet);
    } else {
        j["kind"] = "duplicate_calculation";
        j["cells"] = cells_json(std::get<DuplicateCalculation>(f).cells, sheet);
    }
    return j;
}

// Parsing side

[[noreturn]] void bad(const std::string& where, const std::string& what) { throw FormatError(where, what); }

const json& field(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) bad(where, "object expected");
    auto it = obj.find(key);
    if (it == obj.end()) bad(where, std::string("missing field '") + key + "'");
    return *it;
}

std::string str(const json& j, const std::string& where) {
    if (!j.is_string()) bad(where, "string expected");
    return j.get<std::string>();
}

std::size_t count(const json& j, const std::string& where) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
        bad(where, "non-negative integer expected");
    }
    return j.get<std::size_t>();
}

std::vector<std::string> strings(const json& j, const std::string& where) {
    if (!j.is_array()) bad(where, "array expected");
    std::vector<std::string> out;
    for (const auto& s : j) out.push_back(str(s, where));
    return out;
}

CellAddress addr(const json& j, std::string_view sheet, const std::string& where) {
    try {
        return parse_address(str(j, where), sheet);
    } catch (const AddressError& e) {
        bad(where, e.what());
    }
}

std::vector<CellAddress> addrs(const json& j, std::string_view sheet, const std::string& where) {
    if (!j.is_array()) bad(where, "array expected");
    std::vector<CellAddress> out;
    for (const auto& a : j) out.push_back(addr(a, sheet, where));
    return out;
}

ErrorCategory category_from(const std::string& name, const std::string& where) {
    for (auto c : {ErrorCategory::Operator, ErrorCategory::Function, ErrorCategory::Reference,
                   ErrorCategory::Constant, ErrorCategory::Unclassified}) {
        if (category_name(c) == name) return c;
    }
    bad(where, "unknown category '" + name + "'");
}

std::optional<FanEntry> fan_from(const json& j, std::string_view sheet, const std::string& where) {
    if (j.is_null()) return std::nullopt;
    return FanEntry{addr(field(j, "cell", where), sheet, where), count(field(j, "count", where), where)};
}

QualityMetrics metrics_from(const json& j, std::string_view sheet, const std::string& where) {
    QualityMetrics m;
    auto n = [&](const char* key) { return count(field(j, key, where), where + "." + key); };
    m.sheet_count = n("sheet_count");
    m.error_value_count = n("error_value_count");
    m.value_cell_count = n("value_cell_count");
    m.formula_cell_count = n("formula_cell_count");
    m.input_count = n("input_count");
    m.output_count = n("output_count");
    m.max_fan_in = fan_from(field(j, "max_fan_in", where), sheet, where + ".max_fan_in");
    m.max_fan_out = fan_from(field(j, "max_fan_out", where), sheet, where + ".max_fan_out");
    m.operator_total = n("operator_total");
    m.operand_total = n("operand_total");
    m.max_nesting_depth = n("max_nesting_depth");
    m.longest_chain = n("longest_chain");
    return m;
}

}  // namespace

ordered_json metrics_to_json(const QualityMetrics& m, std::string_view default_sheet) {
    ordered_json j;
    j["sheet_count"] = m.sheet_count;
    j["error_value_count"] = m.error_value_count;
    j["value_cell_count"] = m.value_cell_count;
    j["formula_cell_count"] = m.formula_cell_count;
    j["input_count"] = m.input_count;
    j["output_count"] = m.output_count;
    j["max_fan_in"] = fan_json(m.max_fan_in, default_sheet);
    j["max_fan_out"] = fan_json(m.max_fan_out, default_sheet);
    j["operator_total"] = m.operator_total;
    j["operand_total"] = m.operand_total;
    j["max_nesting_depth"] = m.max_nesting_depth;
    j["longest_chain"] = m.longest_chain;
    return j;
}

ordered_json report_to_json(const FeedbackReport& report) {
    const std::string_view sheet = report.default_sheet;
    ordered_json j;
    j["task"] = report.task_id;
    j["level"] = report.level;
    j["status"] = status_name(report.status);
    j["messages"] = report.messages;

    ordered_json diagnoses = ordered_json::array();
    for (const auto& d : report.diagnoses) {
        ordered_json e;
        e["cell"] = d.cell.display(sheet);
        e["kind"] = d.kind == DiagnosisKind::FormulaError ? "formula_error" : "value_error";
        e["detail"] = d.detail ? detail_json(*d.detail) : ordered_json(nullptr);
        diagnoses.push_back(std::move(e));
    }
    j["diagnoses"] = std::move(diagnoses);

    ordered_json quality = ordered_json::array();
    for (const auto& f : report.quality) quality.push_back(finding_json(f, sheet));
    j["quality"] = std::move(quality);

    if (report.metrics) {
        j["metrics"] = ordered_json{{"submission", metrics_to_json(report.metrics->submission, sheet)},
                                    {"reference", metrics_to_json(report.metrics->reference, sheet)}};
    } else {
        j["metrics"] = nullptr;
    }

    ordered_json syntax = ordered_json::array();
    for (const auto& e : report.syntax.errors) {
        syntax.push_back(
            ordered_json{{"cell", e.cell.display(sheet)}, {"message", e.message}, {"position", e.position}});
    }
    j["syntax"] = std::move(syntax);
    return j;
}

std::string render_json(const FeedbackReport& report) { return report_to_json(report).dump(); }

FeedbackReport parse_report_json(std::string_view text, std::string_view default_sheet) {
    const json doc = parse_json_strict(text);
    const std::string sheet(default_sheet);
    FeedbackReport r;
    r.default_sheet = sheet;
    r.task_id = str(field(doc, "task", ""), "task");
    const json& level = field(doc, "level", "");
    if (!level.is_number_integer()) bad("level", "integer expected");
    r.level = level.get<int>();

    const std::string status = str(field(doc, "status", ""), "status");
    if (status == "pass") {
        r.status = Status::Pass;
    } else if (status == "fail") {
        r.status = Status::Fail;
    } else if (status == "syntax_error") {
        r.status = Status::SyntaxError;
    } else {
        bad("status", "unknown status '" + status + "'");
    }
    r.messages = strings(field(doc, "messages", ""), "messages");

    const json& diagnoses = field(doc, "diagnoses", "");
    if (!diagnoses.is_array()) bad("diagnoses", "array expected");
    for (const auto& d : diagnoses) {
        Diagnosis diag;
        diag.cell = addr(field(d, "cell", "diagnoses"), sheet, "diagnoses.cell");
        const std::string kind = str(field(d, "kind", "diagnoses"), "diagnoses.kind");
        if (kind == "formula_error") {
            diag.kind = DiagnosisKind::FormulaError;
        } else if (kind != "value_error") {
            bad("diagnoses.kind", "unknown kind '" + kind + "'");
        }
        const json& detail = field(d, "detail", "diagnoses");
        if (!detail.is_null()) {
            const std::string w = "diagnoses.detail";
            ErrorDetail e;
            e.cell = diag.cell;
            e.category = category_from(str(field(detail, "category", w), w), w);
            e.expected = strings(field(detail, "expected", w), w + ".expected");
            e.found = strings(field(detail, "found", w), w + ".found");
            const json& extras = field(detail, "extras", w);
            if (!extras.is_array()) bad(w + ".extras", "array expected");
            for (const auto& x : extras) {
                e.extras.push_back(ExtraItem{str(field(x, "kind", w), w), str(field(x, "name", w), w),
                                             str(field(x, "message", w), w)});
            }
            const json& sp = field(detail, "spelling", w);
            if (!sp.is_null()) {
                e.spelling = SpellingHint{str(field(sp, "found", w), w), str(field(sp, "expected", w), w)};
            }
            diag.detail = std::move(e);
        }
        r.diagnoses.push_back(std::move(diag));
    }

    const json& quality = field(doc, "quality", "");
    if (!quality.is_array()) bad("quality", "array expected");
    for (const auto& q : quality) {
        const std::string kind = str(field(q, "kind", "quality"), "quality.kind");
        if (kind == "metric_exceeded") {
            const json& s = field(q, "submission", "quality");
            const json& ref = field(q, "reference", "quality");
            if (!s.is_number() || !ref.is_number()) bad("quality", "number expected");
            r.quality.emplace_back(
                MetricExceeded{str(field(q, "metric", "quality"), "quality"), s.get<double>(), ref.get<double>()});
        } else if (kind == "idiom_suggestion") {
            r.quality.emplace_back(IdiomSuggestion{str(field(q, "function", "quality"), "quality"),
                                                   addrs(field(q, "cells", "quality"), sheet, "quality.cells")});
        } else if (kind == "duplicate_calculation") {
            r.quality.emplace_back(DuplicateCalculation{addrs(field(q, "cells", "quality"), sheet, "quality.cells")});
        } else {
            bad("quality.kind", "unknown finding kind '" + kind + "'");
        }
    }

    const json& metrics = field(doc, "metrics", "");
    if (!metrics.is_null()) {
        r.metrics = MetricsPair{metrics_from(field(metrics, "submission", "metrics"), sheet, "metrics.submission"),
                                metrics_from(field(metrics, "reference", "metrics"), sheet, "metrics.reference")};
    }

    const json& syntax = field(doc, "syntax", "");
    if (!syntax.is_array()) bad("syntax", "array expected");
    for (const auto& s : syntax) {
        r.syntax.errors.push_back(SyntaxIssue{addr(field(s, "cell", "syntax"), sheet, "syntax.cell"),
                                              str(field(s, "message", "syntax"), "syntax.message"),
                                              count(field(s, "position", "syntax"), "syntax.position")});
    }
    return r;
}

}  // namespace cellcheck
