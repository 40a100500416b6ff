#include "cellcheck/dep_graph.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>

#include "cellcheck/formula_ops.hpp"

namespace cellcheck {

namespace {
const std::vector<CellAddress> kNoNeighbors;
}

const Value& DependencyGraph::value(const CellAddress& a) const {
    static const Value kBlank;
    auto it = nodes_.find(a);
    return it == nodes_.end() ? kBlank : it->second;
}

const std::vector<CellAddress>& DependencyGraph::out_neighbors(const CellAddress& a) const {
    auto it = out_.find(a);
    return it == out_.end() ? kNoNeighbors : it->second;
}

const std::vector<CellAddress>& DependencyGraph::in_neighbors(const CellAddress& a) const {
    auto it = in_.find(a);
    return it == in_.end() ? kNoNeighbors : it->second;
}

std::size_t DependencyGraph::edge_count() const {
    std::size_t n = 0;
    for (const auto& [a, list] : out_) n += list.size();
    return n;
}

DependencyGraph build_graph(const Workbook& wb, const ValueGrid& grid) {
    DependencyGraph g;
    g.default_sheet_ = wb.default_sheet();
    for (const auto& [addr, expr] : parse_formulas(wb)) {
        g.nodes_.emplace(addr, grid.get(addr));
        auto refs = references_of(expr);
        for (const auto& r : refs) {
            g.nodes_.emplace(r, grid.get(r));
            g.in_[r].push_back(addr);
        }
        g.out_[addr] = std::move(refs);
    }
    for (auto& [a, list] : g.in_) std::sort(list.begin(), list.end());
    return g;
}

Terminals terminals(const DependencyGraph& g) {
    Terminals t;
    for (const auto& [addr, value] : g.nodes()) {
        if (g.in_neighbors(addr).empty()) t.outputs.push_back(addr);
        if (g.out_neighbors(addr).empty()) t.inputs.push_back(addr);
    }
    return t;
}

std::size_t longest_chain(const DependencyGraph& g) {
    enum class Mark { None, Active, Done };
    std::map<CellAddress, Mark> mark;
    std::map<CellAddress, std::size_t> depth;  // longest path starting at node
    std::vector<CellAddress> path;

    std::function<std::size_t(const CellAddress&)> visit = [&](const CellAddress& a) -> std::size_t {
        auto& m = mark[a];
        if (m == Mark::Done) return depth[a];
        if (m == Mark::Active) {
            auto from = std::find(path.begin(), path.end(), a);
            std::vector<CellAddress> cycle(from, path.end());
            std::string text;
            for (const auto& c : cycle) text += c.display(g.default_sheet()) + " -> ";
            text += a.display(g.default_sheet());
            throw CycleError(std::move(cycle), "dependency cycle: " + text);
        }
        m = Mark::Active;
        path.push_back(a);
        std::size_t best = 0;
        for (const auto& b : g.out_neighbors(a)) best = std::max(best, visit(b) + 1);
        path.pop_back();
        mark[a] = Mark::Done;
        depth[a] = best;
        return best;
    };

    std::size_t best = 0;
    for (const auto& [addr, value] : g.nodes()) best = std::max(best, visit(addr));
    return best;
}

std::size_t longest_chain_condensed(const DependencyGraph& g) {
    // Kosaraju: order by finish time on the graph, then collect components on
    // the reverse graph.
    std::map<CellAddress, bool> seen;
    std::vector<CellAddress> finish;
    std::function<void(const CellAddress&)> dfs1 = [&](const CellAddress& a) {
        seen[a] = true;
        for (const auto& b : g.out_neighbors(a)) {
            if (!seen[b]) dfs1(b);
        }
        finish.push_back(a);
    };
    for (const auto& [a, v] : g.nodes()) {
        if (!seen[a]) dfs1(a);
    }
    std::map<CellAddress, std::size_t> comp;
    std::size_t ncomp = 0;
    std::function<void(const CellAddress&)> dfs2 = [&](const CellAddress& a) {
        comp[a] = ncomp;
        for (const auto& b : g.in_neighbors(a)) {
            if (comp.count(b) == 0) dfs2(b);
        }
    };
    for (auto it = finish.rbegin(); it != finish.rend(); ++it) {
        if (comp.count(*it) == 0) {
            dfs2(*it);
            ++ncomp;
        }
    }
    std::vector<std::vector<std::size_t>> succ(ncomp);
    for (const auto& [a, v] : g.nodes()) {
        for (const auto& b : g.out_neighbors(a)) {
            if (comp[a] != comp[b]) succ[comp[a]].push_back(comp[b]);
        }
    }
    std::vector<std::ptrdiff_t> memo(ncomp, -1);
    std::function<std::size_t(std::size_t)> longest = [&](std::size_t c) -> std::size_t {
        if (memo[c] >= 0) return static_cast<std::size_t>(memo[c]);
        std::size_t best = 0;
        for (std::size_t d : succ[c]) best = std::max(best, longest(d) + 1);
        memo[c] = static_cast<std::ptrdiff_t>(best);
        return best;
    };
    std::size_t best = 0;
    for (std::size_t c = 0; c < ncomp; ++c) best = std::max(best, longest(c));
    return best;
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

std::string dot_value(const Value& v) {
    if (v.is_number()) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.2f", v.as_number());
        return buf;
    }
    return to_display(v);
}

}  // namespace

std::string export_dot(const DependencyGraph& g) {
    const Terminals t = terminals(g);
    auto is_in = [](const std::vector<CellAddress>& list, const CellAddress& a) {
        return std::binary_search(list.begin(), list.end(), a);
    };
    std::string out = "digraph dependencies {\n";
    for (const auto& [addr, value] : g.nodes()) {
        const std::string id = addr.display(g.default_sheet());
        out += "  \"" + dot_escape(id) + "\" [label=\"" + dot_escape(id + ": " + dot_value(value)) + "\"";
        if (is_in(t.outputs, addr)) {
            out += ", color=red";
        } else if (is_in(t.inputs, addr)) {
            out += ", color=green";
        }
        out += "];\n";
    }
    for (const auto& [addr, value] : g.nodes()) {
        for (const auto& b : g.out_neighbors(addr)) {
            out += "  \"" + dot_escape(addr.display(g.default_sheet())) + "\" -> \"" +
                   dot_escape(b.display(g.default_sheet())) + "\";\n";
        }
    }
    out += "}\n";
    return out;
}

}  // namespace cellcheck
