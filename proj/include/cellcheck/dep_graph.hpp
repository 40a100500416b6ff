#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cellcheck/address.hpp"
#include "cellcheck/eval.hpp"
#include "cellcheck/workbook.hpp"

namespace cellcheck {

/// Thrown by longest_chain on a cyclic graph; carries one cycle.
class CycleError : public std::runtime_error {
public:
    CycleError(std::vector<CellAddress> cycle, const std::string& message)
        : std::runtime_error(message), cycle_(std::move(cycle)) {}
    const std::vector<CellAddress>& cycle() const noexcept { return cycle_; }

private:
    std::vector<CellAddress> cycle_;
};

/// Data dependency graph: an edge A -> B iff A's formula references B. Nodes
/// are formula cells plus every referenced cell, annotated with their value.
/// Adjacency lists are row-major.
class DependencyGraph {
public:
    const std::map<CellAddress, Value>& nodes() const { return nodes_; }
    bool contains(const CellAddress& a) const { return nodes_.count(a) != 0; }
    const Value& value(const CellAddress& a) const;

    const std::vector<CellAddress>& out_neighbors(const CellAddress& a) const;
    const std::vector<CellAddress>& in_neighbors(const CellAddress& a) const;

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const;
    /// Sheet used to print addresses without a sheet prefix.
    const std::string& default_sheet() const { return default_sheet_; }

    friend DependencyGraph build_graph(const Workbook& wb, const ValueGrid& grid);

private:
    std::map<CellAddress, Value> nodes_;
    std::map<CellAddress, std::vector<CellAddress>> out_;
    std::map<CellAddress, std::vector<CellAddress>> in_;
    std::string default_sheet_;
};

DependencyGraph build_graph(const Workbook& wb, const ValueGrid& grid);

struct Terminals {
    std::vector<CellAddress> outputs;  // no incoming edge
    std::vector<CellAddress> inputs;   // no outgoing edge
};

Terminals terminals(const DependencyGraph& g);

/// Number of edges on the longest directed path. Throws CycleError.
std::size_t longest_chain(const DependencyGraph& g);

/// Longest path in the graph of strongly connected components; equals
/// longest_chain on acyclic graphs and never throws.
std::size_t longest_chain_condensed(const DependencyGraph& g);

/// Graphviz digraph: labels "ADDR: value", outputs red, inputs green.
std::string export_dot(const DependencyGraph& g);

}  // namespace cellcheck
