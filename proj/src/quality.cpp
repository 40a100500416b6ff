#include "cellcheck/quality.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "cellcheck/formula_ops.hpp"
#include "cellcheck/parser.hpp"

namespace cellcheck {

const std::vector<std::string_view>& scalar_metric_names() {
    static const std::vector<std::string_view> kNames = {
        "sheet_count",    "error_value_count", "value_cell_count", "formula_cell_count",
        "input_count",    "output_count",      "operator_total",   "operand_total",
        "max_nesting_depth", "longest_chain",
    };
    return kNames;
}

double scalar_metric(const QualityMetrics& m, std::string_view name) {
    if (name == "sheet_count") return static_cast<double>(m.sheet_count);
    if (name == "error_value_count") return static_cast<double>(m.error_value_count);
    if (name == "value_cell_count") return static_cast<double>(m.value_cell_count);
    if (name == "formula_cell_count") return static_cast<double>(m.formula_cell_count);
    if (name == "input_count") return static_cast<double>(m.input_count);
    if (name == "output_count") return static_cast<double>(m.output_count);
    if (name == "operator_total") return static_cast<double>(m.operator_total);
    if (name == "operand_total") return static_cast<double>(m.operand_total);
    if (name == "max_nesting_depth") return static_cast<double>(m.max_nesting_depth);
    if (name == "longest_chain") return static_cast<double>(m.longest_chain);
    throw std::out_of_range("unknown metric '" + std::string(name) + "'");
}

namespace {

struct Shape {
    std::size_t operators = 0;  // binary, unary and function calls
    std::size_t operands = 0;   // literals and cells, ranges by size
};

void measure(const Expr& e, Shape& s) {
    struct Visitor {
        Shape& s;
        void operator()(const NumberLit&) const { ++s.operands; }
        void operator()(const TextLit&) const { ++s.operands; }
        void operator()(const BoolLit&) const { ++s.operands; }
        void operator()(const CellRef&) const { ++s.operands; }
        void operator()(const RangeRef& r) const {
            const auto& a = r.start.address;
            const auto& b = r.end.address;
            s.operands += static_cast<std::size_t>(b.column - a.column + 1) * static_cast<std::size_t>(b.row - a.row + 1);
        }
        void operator()(const Unary& u) const {
            ++s.operators;
            measure(*u.operand, s);
        }
        void operator()(const Binary& b) const {
            ++s.operators;
            measure(*b.left, s);
            measure(*b.right, s);
        }
        void operator()(const FuncCall& f) const {
            ++s.operators;
            for (const auto& a : f.args) measure(a, s);
        }
    };
    std::visit(Visitor{s}, e.node);
}

std::size_t nesting(const Expr& e) {
    if (const auto* u = e.as<Unary>()) return nesting(*u->operand);
    if (const auto* b = e.as<Binary>()) return 1 + std::max(nesting(*b->left), nesting(*b->right));
    if (const auto* f = e.as<FuncCall>()) {
        std::size_t deepest = 0;
        for (const auto& a : f->args) deepest = std::max(deepest, nesting(a));
        return 1 + deepest;
    }
    return 0;
}

bool uses_function(const Expr& e, Function fn) {
    if (const auto* u = e.as<Unary>()) return uses_function(*u->operand, fn);
    if (const auto* b = e.as<Binary>()) return uses_function(*b->left, fn) || uses_function(*b->right, fn);
    if (const auto* f = e.as<FuncCall>()) {
        if (f->function == fn) return true;
        return std::any_of(f->args.begin(), f->args.end(), [&](const Expr& a) { return uses_function(a, fn); });
    }
    return false;
}

void flatten_add(const Expr& e, std::vector<const Expr*>& out) {
    if (const auto* b = e.as<Binary>(); b && b->op == BinaryOp::Add) {
        flatten_add(*b->left, out);
        flatten_add(*b->right, out);
        return;
    }
    out.push_back(&e);
}

std::size_t distinct_cells(const std::vector<const Expr*>& operands) {
    std::set<CellAddress> cells;
    for (const auto* o : operands) {
        if (const auto* r = o->as<CellRef>()) cells.insert(r->address);
    }
    return cells.size();
}

// (c1 + ... + cn) / n over n distinct plain cell references.
bool is_manual_average(const Expr& canonical, std::size_t min_operands) {
    const auto* div = canonical.as<Binary>();
    if (div == nullptr || div->op != BinaryOp::Div) return false;
    const auto* count = div->right->as<NumberLit>();
    if (count == nullptr) return false;
    std::vector<const Expr*> operands;
    flatten_add(*div->left, operands);
    const bool all_cells =
        std::all_of(operands.begin(), operands.end(), [](const Expr* o) { return o->is<CellRef>(); });
    const std::size_t n = distinct_cells(operands);
    return all_cells && n == operands.size() && static_cast<double>(n) == count->value && n >= min_operands;
}

// Largest number of distinct cells in any maximal +-chain of the expression.
std::size_t widest_sum_chain(const Expr& e) {
    std::size_t best = 0;
    if (const auto* b = e.as<Binary>(); b && b->op == BinaryOp::Add) {
        std::vector<const Expr*> operands;
        flatten_add(e, operands);
        best = distinct_cells(operands);
        for (const auto* o : operands) best = std::max(best, widest_sum_chain(*o));
        return best;
    }
    if (const auto* b = e.as<Binary>()) return std::max(widest_sum_chain(*b->left), widest_sum_chain(*b->right));
    if (const auto* u = e.as<Unary>()) return widest_sum_chain(*u->operand);
    if (const auto* f = e.as<FuncCall>()) {
        for (const auto& a : f->args) best = std::max(best, widest_sum_chain(a));
    }
    return best;
}

}  // namespace

QualityMetrics compute_metrics(const Workbook& wb, const DependencyGraph& graph, const ValueGrid& grid) {
    QualityMetrics m;
    m.sheet_count = wb.sheets().size();
    wb.for_each_cell([&](const Cell& cell) {
        if (cell.is_formula()) {
            ++m.formula_cell_count;
        } else {
            ++m.value_cell_count;
        }
        if (grid.get(cell.address).is_error()) ++m.error_value_count;
    });

    const Terminals t = terminals(graph);
    m.input_count = t.inputs.size();
    m.output_count = t.outputs.size();
    for (const auto& [addr, value] : graph.nodes()) {
        const std::size_t in = graph.in_neighbors(addr).size();
        const std::size_t out = graph.out_neighbors(addr).size();
        if (!m.max_fan_in || in > m.max_fan_in->count) m.max_fan_in = FanEntry{addr, in};
        if (!m.max_fan_out || out > m.max_fan_out->count) m.max_fan_out = FanEntry{addr, out};
    }

    for (const auto& [addr, expr] : parse_formulas(wb)) {
        Shape s;
        measure(expr, s);
        m.operator_total += s.operators;
        m.operand_total += s.operands;
        m.max_nesting_depth = std::max(m.max_nesting_depth, nesting(expr));
    }
    m.longest_chain = longest_chain_condensed(graph);
    return m;
}

std::vector<QualityFinding> compare_metrics(const QualityMetrics& sub, const QualityMetrics& ref,
                                            const QualityConfig& cfg) {
    std::vector<QualityFinding> out;
    for (auto name : scalar_metric_names()) {
        Threshold th{cfg.factor, cfg.offset};
        if (auto it = cfg.overrides.find(std::string(name)); it != cfg.overrides.end()) th = it->second;
        const double s = scalar_metric(sub, name);
        const double r = scalar_metric(ref, name);
        if (s > r * th.factor + th.offset) out.push_back(MetricExceeded{std::string(name), s, r});
    }
    return out;
}

std::vector<QualityFinding> idiom_suggestions(const Workbook& wb, const QualityConfig& cfg) {
    IdiomSuggestion avg{"AVG", {}};
    IdiomSuggestion sum{"SUM", {}};
    for (const auto& [addr, expr] : parse_formulas(wb)) {
        Expr canonical;
        try {
            canonical = canonicalize(expr);
        } catch (const FormulaError&) {
            continue;
        }
        if (is_manual_average(canonical, cfg.min_idiom_operands)) {
            if (!uses_function(expr, Function::Avg)) avg.cells.push_back(addr);
            continue;
        }
        if (widest_sum_chain(expr) > cfg.min_idiom_operands) sum.cells.push_back(addr);
    }
    std::vector<QualityFinding> out;
    if (!avg.cells.empty()) out.emplace_back(std::move(avg));
    if (!sum.cells.empty()) out.emplace_back(std::move(sum));
    return out;
}

std::vector<QualityFinding> duplicate_calculations(const Workbook& wb) {
    std::map<std::string, std::vector<CellAddress>> groups;
    for (const auto& [addr, expr] : parse_formulas(wb)) {
        try {
            groups[print_formula(canonicalize(expr))].push_back(addr);
        } catch (const FormulaError&) {
        }
    }
    std::vector<DuplicateCalculation> found;
    for (auto& [key, cells] : groups) {
        if (cells.size() >= 2) found.push_back({std::move(cells)});
    }
    std::sort(found.begin(), found.end(),
              [](const DuplicateCalculation& a, const DuplicateCalculation& b) { return a.cells.front() < b.cells.front(); });
    return {found.begin(), found.end()};
}

}  // namespace cellcheck
