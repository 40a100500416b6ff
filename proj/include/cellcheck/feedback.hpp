#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cellcheck/eval.hpp"
#include "cellcheck/formula_diff.hpp"
#include "cellcheck/parser.hpp"
#include "cellcheck/quality.hpp"
#include "cellcheck/workbook.hpp"

namespace cellcheck {

/// Lecturer note attached to a rectangular area of the reference sheet.
struct Annotation {
    CellAddress start;
    CellAddress end;
    std::string text;
    std::optional<std::string> link;

    bool contains(const CellAddress& a) const;
    bool operator==(const Annotation&) const = default;
};

/// Learning material indexed by normalized keywords.
struct MaterialEntry {
    std::string title;
    std::vector<std::string> keywords;
    std::string ref;
    bool operator==(const MaterialEntry&) const = default;
};

/// Everything needed to grade submissions for one task.
struct TaskBundle {
    std::string task_id;
    Workbook reference;
    Tolerance tolerance;
    std::optional<std::set<CellAddress>> graded_cells;
    std::vector<Annotation> annotations;
    std::vector<MaterialEntry> materials;
    QualityConfig quality;
    bool operator==(const TaskBundle&) const = default;
};

/// Throws ConfigError unless the reference parses and evaluates cycle-free
/// and every configuration value is in range.
void validate_bundle(const TaskBundle& bundle);

/// Loads a bundle file. "reference" may be a path (relative to the bundle
/// file) or an inline workbook object. Throws ConfigError or FormatError.
TaskBundle load_bundle(const std::filesystem::path& path);
TaskBundle bundle_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir);
nlohmann::ordered_json bundle_to_json(const TaskBundle& bundle);

enum class Status { Pass, Fail, SyntaxError };
enum class DiagnosisKind { ValueError, FormulaError };

/// One entry per value-error cell; formula-error cells carry kind FormulaError
/// (a formula error is always also a value error) and their ErrorDetail.
struct Diagnosis {
    CellAddress cell;
    DiagnosisKind kind = DiagnosisKind::ValueError;
    std::optional<ErrorDetail> detail;
    bool operator==(const Diagnosis&) const = default;
};

struct MetricsPair {
    QualityMetrics submission;
    QualityMetrics reference;
    bool operator==(const MetricsPair&) const = default;
};

struct FeedbackReport {
    std::string task_id;
    int level = 1;
    Status status = Status::Pass;
    std::vector<std::string> messages;
    std::vector<Diagnosis> diagnoses;
    std::vector<QualityFinding> quality;
    std::optional<MetricsPair> metrics;
    SyntaxReport syntax;
    /// Sheet whose addresses render without a prefix; not serialized.
    std::string default_sheet;
    bool operator==(const FeedbackReport&) const = default;
};

/// Runs the full pipeline and renders the messages of one feedback level
/// (1..7). Diagnoses, quality findings and metrics are always complete;
/// only `messages` depends on the level. Level 7 quality messages are shown
/// for passing submissions, or for failing ones when `force_quality` is set;
/// otherwise a failing level-7 request gets the level-6 messages.
FeedbackReport generate_feedback(const TaskBundle& bundle, const Workbook& submission, int level,
                                 bool force_quality = false);

/// Column header: nearest text constant above the cell in its column. Row
/// header: nearest text constant left of it in its row.
struct HeaderContext {
    std::optional<std::string> column;
    std::optional<std::string> row;
    bool operator==(const HeaderContext&) const = default;
};
HeaderContext header_context(const Workbook& reference, const CellAddress& cell);

/// Lower-cases, strips punctuation and splits on whitespace.
std::vector<std::string> normalize_tokens(std::string_view text);

/// Annotation texts and material pointers relevant to the given cells,
/// de-duplicated in first-seen order. `headers[i]` belongs to `cells[i]`.
std::vector<std::string> lookup_annotations(const TaskBundle& bundle, const std::vector<CellAddress>& cells,
                                            const std::vector<HeaderContext>& headers);

std::string_view status_name(Status s);  // "pass", "fail", "syntax_error"

/// "task <id>: PASS|FAIL|SYNTAX ERROR" followed by one message per line.
std::string render_text(const FeedbackReport& report);
/// Compact JSON with a fixed key order.
std::string render_json(const FeedbackReport& report);
nlohmann::ordered_json report_to_json(const FeedbackReport& report);
/// Inverse of render_json; `default_sheet` resolves unqualified addresses.
FeedbackReport parse_report_json(std::string_view text, std::string_view default_sheet);

nlohmann::ordered_json metrics_to_json(const QualityMetrics& m, std::string_view default_sheet);

}  // namespace cellcheck
