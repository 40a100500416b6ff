#include "cellcheck/value_match.hpp"

#include <algorithm>

#include "cellcheck/dep_graph.hpp"
#include "cellcheck/errors.hpp"

namespace cellcheck {

namespace {

std::set<CellAddress> graded_closure(const DependencyGraph& g, const std::set<CellAddress>& graded) {
    std::set<CellAddress> out;
    std::vector<CellAddress> todo(graded.begin(), graded.end());
    while (!todo.empty()) {
        CellAddress a = todo.back();
        todo.pop_back();
        if (!out.insert(a).second) continue;
        for (const auto& b : g.out_neighbors(a)) todo.push_back(b);
    }
    return out;
}

// The working copy needs the target sheet to exist before a patch.
void patch(Workbook& wb, const CellAddress& addr, const Value& v) {
    if (wb.find_sheet(addr.sheet) == nullptr) wb.add_sheet(addr.sheet);
    wb.set_constant(addr, v);
}

}  // namespace

MatchResult match_values(const Workbook& reference, const Workbook& submission,
                         const Tolerance& tolerance,
                         const std::optional<std::set<CellAddress>>& graded) {
    const ValueGrid solution = evaluate(reference);
    for (const auto& [addr, v] : solution.values()) {
        if (v.is_error() && v.as_error() == ErrorKind::Cycle) {
            throw ConfigError("reference solution has a reference cycle at " + addr.qualified());
        }
    }
    const DependencyGraph graph = build_graph(reference, solution);
    const ValueGrid original = evaluate(submission);

    std::optional<std::set<CellAddress>> compared;
    if (graded) compared = graded_closure(graph, *graded);
    auto is_compared = [&](const CellAddress& a) { return !compared || compared->count(a) != 0; };

    MatchResult result;
    result.corrected = submission;
    std::optional<ValueGrid> working;  // evaluation of result.corrected, invalidated on patch

    std::set<CellAddress> visited;
    std::set<CellAddress> value_errors;
    std::set<CellAddress> formula_errors;

    auto first_visit = [&](const CellAddress& a) {
        visited.insert(a);
        if (!is_compared(a)) return;
        const Value& want = solution.get(a);
        const Value& got = original.get(a);
        const bool ok = values_equal(want, got, tolerance);
        result.trace.push_back({a, MatchPhase::FirstCompare, want, got, ok});
        if (!ok) value_errors.insert(a);
    };

    auto finish = [&](const CellAddress& a) {
        if (value_errors.count(a) == 0) return;
        if (!working) working = evaluate(result.corrected);
        const Value& want = solution.get(a);
        const Value got = working->get(a);
        const bool ok = values_equal(want, got, tolerance);
        result.trace.push_back({a, MatchPhase::ReEvaluate, want, got, ok});
        if (!ok) {
            formula_errors.insert(a);
            patch(result.corrected, a, want);
            working.reset();
        }
    };

    struct Frame {
        CellAddress node;
        std::size_t next;
    };
    for (const auto& root : terminals(graph).outputs) {
        if (visited.count(root) != 0) continue;
        first_visit(root);
        std::vector<Frame> stack{{root, 0}};
        while (!stack.empty()) {
            Frame& f = stack.back();
            const auto& neighbors = graph.out_neighbors(f.node);
            if (f.next < neighbors.size()) {
                const CellAddress& nb = neighbors[f.next++];
                if (visited.count(nb) == 0) {
                    first_visit(nb);
                    stack.push_back({nb, 0});
                }
                continue;
            }
            CellAddress done = f.node;
            stack.pop_back();
            finish(done);
        }
    }

    result.value_errors.assign(value_errors.begin(), value_errors.end());
    result.formula_errors.assign(formula_errors.begin(), formula_errors.end());
    return result;
}

}  // namespace cellcheck
