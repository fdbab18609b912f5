#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "spantl/ato.hpp"

namespace spantl {

struct DagNode {
    Configuration config;
    std::vector<std::string> successors; // configuration keys, canonical order
    bool dead_end = false;               // non-halting with no applicable rule
};

// Configurations reachable from the initial one, deduplicated, with their
// full successor lists (no existential pruning — the choice structure
// lives in the node roles, not the graph).
struct ComputationDag {
    std::string root;
    std::vector<std::string> order; // breadth-first discovery order
    std::map<std::string, DagNode> nodes;
};

// Breadth-first closure of the successor relation. Throws ResourceError
// ("tape_cap") when a configuration exceeds the tape bound, ResourceError
// ("max_nodes") when a configuration is first reached at depth >=
// max_computation_nodes — such a configuration cannot occur in any
// computation within the node budget, and the cut guarantees termination —
// and CycleError when the reachable graph has a cycle (no finite
// computation exists along it).
ComputationDag build_dag(const AtoMachine& m, std::string_view input,
                         const ResourceBounds& bounds);

struct DagStats {
    std::size_t node_count = 0;
    std::size_t edge_count = 0;
    std::size_t depth = 0; // longest path, in edges
    std::size_t accepting = 0;
    std::size_t rejecting = 0;
    std::size_t existential = 0;
    std::size_t universal = 0;
    std::size_t labeling = 0;
    std::size_t dead_ends = 0;
};

DagStats dag_stats(const AtoMachine& m, const ComputationDag& dag);

// Plain-text dump: one "node <key>" line per node in discovery order
// (dead ends marked), then one "edge <from> <to>" line per edge.
std::string export_edge_list(const ComputationDag& dag);

} // namespace spantl
