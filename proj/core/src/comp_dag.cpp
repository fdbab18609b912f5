#include "spantl/comp_dag.hpp"

#include <deque>

namespace spantl {
namespace {

void check_tape(const Configuration& c, const ResourceBounds& bounds) {
    if (c.work.size() > bounds.tape_cap || c.label.size() > bounds.tape_cap)
        throw ResourceError("tape_cap", configuration_key(c),
                            "configuration " + configuration_key(c)
                                + " exceeds tape_cap=" + std::to_string(bounds.tape_cap));
}

// Iterative three-color depth-first search for a back edge.
void require_acyclic(const ComputationDag& dag) {
    enum class Color { White, Gray, Black };
    std::map<std::string, Color> color;
    for (auto& [key, node] : dag.nodes)
        color[key] = Color::White;

    struct Frame {
        const std::string* key;
        std::size_t next_child = 0;
    };
    std::vector<Frame> stack;
    color[dag.root] = Color::Gray;
    stack.push_back({&dag.root, 0});
    while (!stack.empty()) {
        Frame& f = stack.back();
        const DagNode& node = dag.nodes.at(*f.key);
        if (f.next_child == node.successors.size()) {
            color[*f.key] = Color::Black;
            stack.pop_back();
            continue;
        }
        const std::string& next = node.successors[f.next_child++];
        Color c = color.at(next);
        if (c == Color::Gray)
            throw CycleError(next);
        if (c == Color::White) {
            color[next] = Color::Gray;
            stack.push_back({&next, 0});
        }
    }
}

} // namespace

ComputationDag build_dag(const AtoMachine& m, std::string_view input,
                         const ResourceBounds& bounds) {
    ComputationDag dag;
    Configuration initial = initial_configuration(m, input);
    check_tape(initial, bounds);
    dag.root = configuration_key(initial);

    std::deque<std::pair<std::string, std::size_t>> queue; // key, depth in edges
    dag.nodes.emplace(dag.root, DagNode{initial, {}, false});
    dag.order.push_back(dag.root);
    queue.push_back({dag.root, 0});

    while (!queue.empty()) {
        auto [key, depth] = queue.front();
        queue.pop_front();
        DagNode& node = dag.nodes.at(key);
        if (is_halting(m, node.config))
            continue;
        auto succ = successors(m, input, node.config);
        if (succ.empty()) {
            node.dead_end = true;
            continue;
        }
        std::vector<std::string> succ_keys;
        succ_keys.reserve(succ.size());
        for (Configuration& s : succ) {
            check_tape(s, bounds);
            std::string skey = configuration_key(s);
            if (!dag.nodes.count(skey)) {
                // depth+1 nodes precede this configuration on every path to
                // it, so it cannot occur in a computation of max_nodes nodes
                if (depth + 1 >= bounds.max_computation_nodes)
                    throw ResourceError(
                        "max_nodes", skey,
                        "configuration graph reaches depth "
                            + std::to_string(depth + 1) + " at " + skey
                            + "; no computation fits in max_nodes="
                            + std::to_string(bounds.max_computation_nodes));
                dag.nodes.emplace(skey, DagNode{std::move(s), {}, false});
                dag.order.push_back(skey);
                queue.push_back({skey, depth + 1});
            }
            succ_keys.push_back(std::move(skey));
        }
        dag.nodes.at(key).successors = std::move(succ_keys);
    }

    require_acyclic(dag);
    return dag;
}

DagStats dag_stats(const AtoMachine& m, const ComputationDag& dag) {
    DagStats stats;
    stats.node_count = dag.nodes.size();

    // Longest downward path per node. True post-order: a node is scored
    // only after all its successors are (acyclicity guarantees no
    // successor is still open on the stack).
    std::map<std::string, std::size_t> height;
    struct Frame {
        const std::string* key;
        std::size_t next = 0;
    };
    std::vector<Frame> stack;
    std::map<std::string, bool> visited;
    visited[dag.root] = true;
    stack.push_back({&dag.root, 0});
    while (!stack.empty()) {
        Frame& f = stack.back();
        const DagNode& node = dag.nodes.at(*f.key);
        if (f.next == node.successors.size()) {
            std::size_t h = 0;
            for (const auto& s : node.successors)
                h = std::max(h, height.at(s) + 1);
            height[*f.key] = h;
            stack.pop_back();
            continue;
        }
        const std::string& next = node.successors[f.next++];
        if (!visited[next]) {
            visited[next] = true;
            stack.push_back({&next, 0});
        }
    }
    stats.depth = height.at(dag.root);

    for (auto& [key, node] : dag.nodes) {
        stats.edge_count += node.successors.size();
        if (node.dead_end)
            ++stats.dead_ends;
        Classification cls = classify(m, node.config);
        switch (cls.role) {
        case StateRole::Accepting: ++stats.accepting; break;
        case StateRole::Rejecting: ++stats.rejecting; break;
        case StateRole::Existential: ++stats.existential; break;
        case StateRole::Universal: ++stats.universal; break;
        }
        if (cls.labeling)
            ++stats.labeling;
    }
    return stats;
}

std::string export_edge_list(const ComputationDag& dag) {
    std::string out;
    std::size_t edges = 0;
    for (auto& [key, node] : dag.nodes)
        edges += node.successors.size();
    out += "# nodes: " + std::to_string(dag.nodes.size()) + " edges: " + std::to_string(edges)
           + "\n";
    for (const auto& key : dag.order) {
        out += "node " + key;
        if (dag.nodes.at(key).dead_end)
            out += " dead-end";
        out += "\n";
    }
    for (const auto& key : dag.order) {
        for (const auto& s : dag.nodes.at(key).successors)
            out += "edge " + key + " " + s + "\n";
    }
    return out;
}

} // namespace spantl
