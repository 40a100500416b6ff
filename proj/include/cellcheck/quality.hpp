#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cellcheck/dep_graph.hpp"
#include "cellcheck/eval.hpp"
#include "cellcheck/workbook.hpp"

namespace cellcheck {

struct FanEntry {
    CellAddress cell;
    std::size_t count = 0;
    bool operator==(const FanEntry&) const = default;
};

struct QualityMetrics {
    std::size_t sheet_count = 0;
    std::size_t error_value_count = 0;
    std::size_t value_cell_count = 0;
    std::size_t formula_cell_count = 0;
    std::size_t input_count = 0;
    std::size_t output_count = 0;
    std::optional<FanEntry> max_fan_in;
    std::optional<FanEntry> max_fan_out;
    std::size_t operator_total = 0;
    std::size_t operand_total = 0;
    std::size_t max_nesting_depth = 0;
    std::size_t longest_chain = 0;
    bool operator==(const QualityMetrics&) const = default;
};

/// Names of the scalar metrics compared against thresholds, in report order.
const std::vector<std::string_view>& scalar_metric_names();
/// Value of a scalar metric by name; throws std::out_of_range for unknown names.
double scalar_metric(const QualityMetrics& m, std::string_view name);

struct Threshold {
    double factor = 1.5;
    double offset = 1.0;
    bool operator==(const Threshold&) const = default;
};

struct QualityConfig {
    double factor = 1.5;
    double offset = 1.0;
    std::size_t min_idiom_operands = 3;
    std::map<std::string, Threshold> overrides;
    bool operator==(const QualityConfig&) const = default;
};

struct MetricExceeded {
    std::string metric;
    double submission = 0;
    double reference = 0;
    bool operator==(const MetricExceeded&) const = default;
};

struct IdiomSuggestion {
    std::string function;  // "AVG" or "SUM"
    std::vector<CellAddress> cells;
    bool operator==(const IdiomSuggestion&) const = default;
};

struct DuplicateCalculation {
    std::vector<CellAddress> cells;
    bool operator==(const DuplicateCalculation&) const = default;
};

using QualityFinding = std::variant<MetricExceeded, IdiomSuggestion, DuplicateCalculation>;

/// Size, coupling and formula-shape metrics of one workbook.
QualityMetrics compute_metrics(const Workbook& wb, const DependencyGraph& graph, const ValueGrid& grid);

/// A finding per scalar metric with sub > ref * factor + offset.
std::vector<QualityFinding> compare_metrics(const QualityMetrics& sub, const QualityMetrics& ref,
                                            const QualityConfig& cfg);

/// AVG for hand-written averages of at least `min_idiom_operands` cells, SUM
/// for +-chains over more than `min_idiom_operands` cells.
std::vector<QualityFinding> idiom_suggestions(const Workbook& wb, const QualityConfig& cfg);

/// Groups of formula cells computing exactly the same thing over the same cells.
std::vector<QualityFinding> duplicate_calculations(const Workbook& wb);

}  // namespace cellcheck
