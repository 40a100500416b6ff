#include "cellcheck/feedback.hpp"

#include <algorithm>
#include <cctype>

#include "cellcheck/dep_graph.hpp"
#include "cellcheck/errors.hpp"
#include "cellcheck/value_match.hpp"

namespace cellcheck {

bool Annotation::contains(const CellAddress& a) const {
    return a.sheet == start.sheet && a.column >= start.column && a.column <= end.column && a.row >= start.row &&
           a.row <= end.row;
}

std::string_view status_name(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::SyntaxError: return "syntax_error";
    }
    return "fail";
}

void validate_bundle(const TaskBundle& bundle) {
    if (bundle.task_id.empty()) throw ConfigError("task id must not be empty");
    if (bundle.reference.sheets().empty()) throw ConfigError("reference workbook has no sheets");
    if (!(bundle.tolerance.abs >= 0) || !(bundle.tolerance.rel >= 0)) {
        throw ConfigError("tolerances must be non-negative");
    }
    const auto& q = bundle.quality;
    if (!(q.factor >= 1) || !(q.offset >= 0)) throw ConfigError("quality factor must be >= 1 and offset >= 0");
    if (q.min_idiom_operands < 2) throw ConfigError("min_idiom_operands must be >= 2");
    for (const auto& [name, th] : q.overrides) {
        const auto& names = scalar_metric_names();
        if (std::find(names.begin(), names.end(), name) == names.end()) {
            throw ConfigError("unknown metric '" + name + "' in quality overrides");
        }
        if (!(th.factor >= 1) || !(th.offset >= 0)) throw ConfigError("bad threshold for metric '" + name + "'");
    }
    for (const auto& m : bundle.materials) {
        if (m.keywords.empty()) throw ConfigError("material '" + m.title + "' has no keywords");
    }
    const SyntaxReport syntax = syntax_check(bundle.reference);
    if (!syntax.ok()) {
        const auto& e = syntax.errors.front();
        throw ConfigError("reference solution does not parse at " + e.cell.qualified() + ": " + e.message);
    }
    const ValueGrid grid = evaluate(bundle.reference);
    for (const auto& [addr, v] : grid.values()) {
        if (v.is_error() && v.as_error() == ErrorKind::Cycle) {
            throw ConfigError("reference solution has a reference cycle at " + addr.qualified());
        }
    }
}

// ---------------------------------------------------------------------------
// Header context and material lookup

HeaderContext header_context(const Workbook& reference, const CellAddress& cell) {
    HeaderContext out;
    const Sheet* sheet = reference.find_sheet(cell.sheet);
    if (sheet == nullptr) return out;
    int best_row = 0;
    int best_col = 0;
    for (const auto& [key, c] : sheet->cells()) {
        if (c.is_formula() || !c.constant().is_text()) continue;
        const auto& a = c.address;
        if (a.column == cell.column && a.row < cell.row && a.row > best_row) {
            best_row = a.row;
            out.column = c.constant().as_text();
        }
        if (a.row == cell.row && a.column < cell.column && a.column > best_col) {
            best_col = a.column;
            out.row = c.constant().as_text();
        }
    }
    return out;
}

std::vector<std::string> normalize_tokens(std::string_view text) {
    std::vector<std::string> out;
    std::string current;
    for (char ch : text) {
        const auto c = static_cast<unsigned char>(ch);
        if (std::isspace(c)) {
            if (!current.empty()) out.push_back(std::move(current));
            current.clear();
        } else if (!std::ispunct(c)) {
            current += static_cast<char>(std::tolower(c));
        }
    }
    if (!current.empty()) out.push_back(std::move(current));
    return out;
}

std::vector<std::string> lookup_annotations(const TaskBundle& bundle, const std::vector<CellAddress>& cells,
                                            const std::vector<HeaderContext>& headers) {
    std::vector<std::string> out;
    auto add = [&](std::string msg) {
        if (std::find(out.begin(), out.end(), msg) == out.end()) out.push_back(std::move(msg));
    };
    for (std::size_t i = 0; i < cells.size(); ++i) {
        for (const auto& a : bundle.annotations) {
            if (!a.contains(cells[i])) continue;
            add(a.link ? a.text + " (" + *a.link + ")" : a.text);
        }
        std::vector<std::string> tokens;
        if (i < headers.size()) {
            for (const auto& h : {headers[i].column, headers[i].row}) {
                if (!h) continue;
                for (auto& t : normalize_tokens(*h)) tokens.push_back(std::move(t));
            }
        }
        for (const auto& m : bundle.materials) {
            const bool hit = std::any_of(m.keywords.begin(), m.keywords.end(), [&](const std::string& k) {
                return std::find(tokens.begin(), tokens.end(), k) != tokens.end();
            });
            if (hit) add("You should recall the info in the '" + m.title + "' tutorial.");
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Message catalog

namespace {

std::string cell_list(const std::vector<CellAddress>& cells, std::string_view sheet) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) out += ", ";
        out += cells[i].display(sheet);
    }
    return out;
}

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i > 0) out += ", ";
        out += items[i];
    }
    return out;
}

std::string cells_sentence(const std::vector<CellAddress>& cells, std::string_view sheet, const char* noun) {
    if (cells.size() == 1) {
        return std::string("The ") + noun + " of cell " + cells.front().display(sheet) + " is incorrect.";
    }
    return std::string("The ") + noun + "s of cells " + cell_list(cells, sheet) + " are incorrect.";
}

std::string category_message(const ErrorDetail& d, const std::string& cell) {
    const bool formula_expected = std::any_of(d.extras.begin(), d.extras.end(),
                                              [](const ExtraItem& e) { return e.kind == "formula"; });
    if (formula_expected) return "A formula is expected in cell " + cell + ".";
    switch (d.category) {
        case ErrorCategory::Operator: return "An operator of cell " + cell + " is incorrect.";
        case ErrorCategory::Function: return "A function of cell " + cell + " is incorrect.";
        case ErrorCategory::Reference: return "A reference of cell " + cell + " is incorrect.";
        case ErrorCategory::Constant: return "A constant of cell " + cell + " is incorrect.";
        case ErrorCategory::Unclassified: break;
    }
    return "The formula of cell " + cell + " is incorrect.";
}

std::size_t covered_cells(const std::vector<std::string>& fragments) {
    std::size_t n = 0;
    for (const auto& f : fragments) n += f.find(':') == std::string::npos ? 1 : 2;
    return n;
}

std::vector<std::string> hint_messages(const ErrorDetail& d, const std::string& cell) {
    std::vector<std::string> out;
    const std::string in_cell = " in cell " + cell + ".";
    bool formula_expected = false;
    for (const auto& e : d.extras) formula_expected = formula_expected || e.kind == "formula";

    if (formula_expected) {
        const std::string& want = d.expected.front();
        if (lookup_function(want)) {
            out.push_back("A formula is expected in cell " + cell + "; use the function '" + want + "'.");
        } else if (want.size() <= 2 && !want.empty() && !std::isalnum(static_cast<unsigned char>(want[0]))) {
            out.push_back("A formula is expected in cell " + cell + "; use the operator '" + want + "'.");
        } else {
            out.push_back("A formula is expected in cell " + cell + ".");
        }
        return out;
    }

    switch (d.category) {
        case ErrorCategory::Operator:
            for (const auto& e : d.expected) out.push_back("The operator '" + e + "' should be used" + in_cell);
            break;
        case ErrorCategory::Function:
            for (const auto& e : d.expected) out.push_back("The function '" + e + "' should be used" + in_cell);
            break;
        case ErrorCategory::Reference:
            if (!d.expected.empty()) {
                const bool plural = covered_cells(d.expected) > 1;
                out.push_back(std::string(plural ? "The references " : "The reference ") + join(d.expected) +
                              " should be used" + in_cell);
            }
            break;
        case ErrorCategory::Constant:
            if (!d.expected.empty()) {
                out.push_back(std::string(d.expected.size() > 1 ? "The constants " : "The constant ") +
                              join(d.expected) + " should be used" + in_cell);
            }
            break;
        case ErrorCategory::Unclassified:
            out.push_back("The formula of cell " + cell + " does not compute the expected result.");
            break;
    }
    for (const auto& e : d.extras) {
        if (e.kind == "absolute_reference" || e.kind == "relative_reference") {
            const char* which = e.kind == "absolute_reference" ? "absolute" : "relative";
            out.push_back("The reference " + e.name + " in cell " + cell + " should be the " + which +
                          " reference " + e.message + ".");
        } else if (e.message == "used too often") {
            out.push_back("The " + e.kind + " '" + e.name + "' is used too often" + in_cell);
        }
    }
    if (d.spelling) {
        out.push_back("Check the spelling in cell " + cell + ": '" + d.spelling->found + "' should be '" +
                      d.spelling->expected + "'.");
    }
    return out;
}

std::string quality_message(const QualityFinding& f, std::string_view sheet) {
    struct Visitor {
        std::string_view sheet;
        std::string operator()(const IdiomSuggestion& s) const {
            const char first = s.function.empty() ? 'X' : s.function.front();
            const bool vowel = std::string_view("AEIOU").find(first) != std::string_view::npos;
            const std::string cells = s.cells.size() == 1 ? "cell " + s.cells.front().display(sheet)
                                                          : "cells " + cell_list(s.cells, sheet);
            return std::string("It is preferable to use ") + (vowel ? "an " : "a ") + s.function + "-formula in " +
                   cells + ".";
        }
        std::string operator()(const DuplicateCalculation& d) const {
            return "The cells " + cell_list(d.cells, sheet) + " contain the same calculation.";
        }
        std::string operator()(const MetricExceeded& m) const {
            std::string label = m.metric;
            std::replace(label.begin(), label.end(), '_', ' ');
            return "Your solution could be improved: its " + label + " is " + format_number(m.submission) +
                   ", the reference solution has " + format_number(m.reference) + ".";
        }
    };
    return std::visit(Visitor{sheet}, f);
}

const Cell& cell_or_blank(const Workbook& wb, const CellAddress& a, Cell& storage) {
    if (const Cell* c = wb.cell(a)) return *c;
    storage = Cell::make_constant(a, Value::blank());
    return storage;
}

}  // namespace

FeedbackReport generate_feedback(const TaskBundle& bundle, const Workbook& submission, int level,
                                 bool force_quality) {
    if (level < 1 || level > 7) throw ConfigError("feedback level must be between 1 and 7");
    validate_bundle(bundle);

    FeedbackReport report;
    report.task_id = bundle.task_id;
    report.level = level;
    report.default_sheet = bundle.reference.default_sheet();
    const std::string& sheet = report.default_sheet;

    report.syntax = syntax_check(submission);
    if (!report.syntax.ok()) {
        report.status = Status::SyntaxError;
        for (const auto& e : report.syntax.errors) {
            report.messages.push_back("The formula in cell " + e.cell.display(sheet) + " cannot be parsed (position " +
                                      std::to_string(e.position) + "): " + e.message + ".");
        }
        return report;
    }

    const MatchResult match = match_values(bundle.reference, submission, bundle.tolerance, bundle.graded_cells);
    report.status = match.value_errors.empty() ? Status::Pass : Status::Fail;

    std::vector<ErrorDetail> details;
    for (const auto& addr : match.value_errors) {
        Diagnosis diag{addr, DiagnosisKind::ValueError, std::nullopt};
        if (std::binary_search(match.formula_errors.begin(), match.formula_errors.end(), addr)) {
            Cell sol_storage;
            Cell sub_storage;
            diag.kind = DiagnosisKind::FormulaError;
            diag.detail = diff_formula(cell_or_blank(bundle.reference, addr, sol_storage),
                                       cell_or_blank(submission, addr, sub_storage), bundle.tolerance, sheet);
            details.push_back(*diag.detail);
        }
        report.diagnoses.push_back(std::move(diag));
    }

    const ValueGrid sub_grid = evaluate(submission);
    const ValueGrid ref_grid = evaluate(bundle.reference);
    const MetricsPair metrics{compute_metrics(submission, build_graph(submission, sub_grid), sub_grid),
                              compute_metrics(bundle.reference, build_graph(bundle.reference, ref_grid), ref_grid)};
    for (auto& f : idiom_suggestions(submission, bundle.quality)) report.quality.push_back(std::move(f));
    for (auto& f : duplicate_calculations(submission)) report.quality.push_back(std::move(f));
    for (auto& f : compare_metrics(metrics.submission, metrics.reference, bundle.quality)) {
        report.quality.push_back(std::move(f));
    }
    report.metrics = metrics;

    const bool pass = report.status == Status::Pass;
    auto& msgs = report.messages;
    auto correctness_messages = [&](int lvl) {
        if (pass) {
            msgs.push_back("The spreadsheet is correct.");
            return;
        }
        switch (lvl) {
            case 1:
                msgs.push_back("The spreadsheet is incorrect.");
                break;
            case 2:
                msgs.push_back(cells_sentence(match.value_errors, sheet, "value"));
                break;
            case 3:
                msgs.push_back(cells_sentence(match.formula_errors, sheet, "formula"));
                break;
            case 4: {
                msgs.push_back(cells_sentence(match.formula_errors, sheet, "formula"));
                std::vector<HeaderContext> headers;
                for (const auto& a : match.formula_errors) headers.push_back(header_context(bundle.reference, a));
                for (auto& m : lookup_annotations(bundle, match.formula_errors, headers)) msgs.push_back(std::move(m));
                break;
            }
            case 5:
                for (const auto& d : details) msgs.push_back(category_message(d, d.cell.display(sheet)));
                break;
            default:
                for (const auto& d : details) {
                    for (auto& m : hint_messages(d, d.cell.display(sheet))) msgs.push_back(std::move(m));
                }
                break;
        }
    };

    if (level < 7) {
        correctness_messages(level);
    } else if (pass || force_quality) {
        if (pass) msgs.push_back("The spreadsheet is correct.");
        for (const auto& f : report.quality) msgs.push_back(quality_message(f, sheet));
    } else {
        correctness_messages(6);
    }
    return report;
}

std::string render_text(const FeedbackReport& report) {
    std::string header;
    switch (report.status) {
        case Status::Pass: header = "PASS"; break;
        case Status::Fail: header = "FAIL"; break;
        case Status::SyntaxError: header = "SYNTAX ERROR"; break;
    }
    std::string out = "task " + report.task_id + ": " + header;
    for (const auto& m : report.messages) out += "\n" + m;
    return out;
}

}  // namespace cellcheck
