#include "spantl/computation.hpp"

#include <map>

namespace spantl {
namespace {

// Depth-first backtracking over the choice structure: existential nodes
// try one successor at a time, universal nodes keep all successors and
// expand them left to right through chained continuations. `sink` fires
// at the bottom of the continuation chain, when the whole tree is built.
struct Enumerator {
    const AtoMachine& m;
    std::string_view input;
    const ResourceBounds& bounds;
    const std::function<void(const ComputationTree&)>& sink;
    ComputationTree root;
    std::size_t node_count = 0;

    void check_tape(const Configuration& c) const {
        if (c.work.size() > bounds.tape_cap || c.label.size() > bounds.tape_cap)
            throw ResourceError("tape_cap", configuration_key(c),
                                "configuration " + configuration_key(c)
                                    + " exceeds tape_cap=" + std::to_string(bounds.tape_cap));
    }

    void check_budget(const Configuration& at) const {
        if (node_count > bounds.max_computation_nodes)
            throw ResourceError("max_nodes", configuration_key(at),
                                "a computation exceeds max_nodes="
                                    + std::to_string(bounds.max_computation_nodes)
                                    + " while expanding " + configuration_key(at));
    }

    void run(const Configuration& initial) {
        check_tape(initial);
        root.config = initial;
        node_count = 1;
        check_budget(initial);
        expand(root, [this] { sink(root); });
    }

    void expand(ComputationTree& node, const std::function<void()>& then) {
        if (is_halting(m, node.config)) {
            then();
            return;
        }
        auto succ = successors(m, input, node.config);
        if (succ.empty())
            return; // dead end: no computation passes through here

        for (const Configuration& s : succ)
            check_tape(s);

        if (classify(m, node.config).role == StateRole::Existential) {
            for (Configuration& s : succ) {
                node.children.clear();
                node.children.emplace_back();
                node.children.back().config = std::move(s);
                ++node_count;
                check_budget(node.children.back().config);
                expand(node.children.back(), then);
                --node_count;
            }
            node.children.clear();
        } else { // universal: all successors become children
            node.children.clear();
            node.children.reserve(succ.size());
            for (Configuration& s : succ) {
                node.children.emplace_back();
                node.children.back().config = std::move(s);
            }
            node_count += node.children.size();
            check_budget(node.children.back().config);
            expand_from(node, 0, then);
            node_count -= node.children.size();
            node.children.clear();
        }
    }

    void expand_from(ComputationTree& node, std::size_t i, const std::function<void()>& then) {
        if (i == node.children.size()) {
            then();
            return;
        }
        expand(node.children[i], [this, &node, i, &then] { expand_from(node, i + 1, then); });
    }
};

void attach_output_children(const AtoMachine& m, const ComputationTree& node, LabeledTree& out) {
    for (const ComputationTree& child : node.children) {
        if (classify(m, child.config).labeling) {
            out.children.emplace_back();
            out.children.back().label = child.config.label;
            attach_output_children(m, child, out.children.back());
        } else {
            // pass through: the nearest labeling descendants attach here
            attach_output_children(m, child, out);
        }
    }
}

bool all_leaves_accept(const AtoMachine& m, const ComputationTree& t) {
    if (t.children.empty())
        return t.config.state == m.accept_state;
    for (const auto& c : t.children) {
        if (!all_leaves_accept(m, c))
            return false;
    }
    return true;
}

void collect_tape_violations(const ComputationTree& t, const ResourceBounds& bounds,
                             std::vector<Violation>& out) {
    if (t.config.work.size() > bounds.tape_cap || t.config.label.size() > bounds.tape_cap)
        out.push_back({"tape-cap", "configuration " + configuration_key(t.config)
                                       + " exceeds tape_cap="
                                       + std::to_string(bounds.tape_cap)});
    for (const auto& c : t.children)
        collect_tape_violations(c, bounds, out);
}

// Walks one label-free region downward, emitting a violation for each
// maximal path that holds too many universal configurations.
void walk_label_free_paths(const AtoMachine& m, const ComputationTree& node,
                           std::size_t universal_seen, const ResourceBounds& bounds,
                           std::vector<Violation>& out) {
    if (classify(m, node.config).role == StateRole::Universal)
        ++universal_seen;
    bool has_label_free_child = false;
    for (const auto& child : node.children) {
        if (!classify(m, child.config).labeling) {
            has_label_free_child = true;
            walk_label_free_paths(m, child, universal_seen, bounds, out);
        }
    }
    if (!has_label_free_child && universal_seen > bounds.universal_branch_limit)
        out.push_back({"universal-path",
                       "label-free path ending at " + configuration_key(node.config) + " holds "
                           + std::to_string(universal_seen) + " universal configurations, limit "
                           + std::to_string(bounds.universal_branch_limit)});
}

void find_label_free_regions(const AtoMachine& m, const ComputationTree& node, bool parent_labeling,
                             const ResourceBounds& bounds, std::vector<Violation>& out) {
    bool labeling = classify(m, node.config).labeling;
    if (!labeling && parent_labeling)
        walk_label_free_paths(m, node, 0, bounds, out);
    for (const auto& child : node.children)
        find_label_free_regions(m, child, labeling, bounds, out);
}

} // namespace

std::size_t computation_size(const ComputationTree& t) {
    std::size_t n = 1;
    for (const auto& c : t.children)
        n += computation_size(c);
    return n;
}

void enumerate_computations(const AtoMachine& m, std::string_view input,
                            const ResourceBounds& bounds,
                            const std::function<void(const ComputationTree&)>& sink) {
    Enumerator e{m, input, bounds, sink, {}, 0};
    e.run(initial_configuration(m, input));
}

std::vector<ComputationTree> collect_computations(const AtoMachine& m, std::string_view input,
                                                  const ResourceBounds& bounds) {
    std::vector<ComputationTree> out;
    enumerate_computations(m, input, bounds,
                           [&](const ComputationTree& t) { out.push_back(t); });
    return out;
}

bool is_accepting_computation(const AtoMachine& m, const ComputationTree& t) {
    return all_leaves_accept(m, t);
}

LabeledTree extract_output(const AtoMachine& m, const ComputationTree& t, CodeMode mode) {
    if (!classify(m, t.config).labeling)
        throw Error("output extraction requires a labeling root configuration");
    LabeledTree root;
    root.label = t.config.label;
    attach_output_children(m, t, root);
    if (mode == CodeMode::Unordered)
        return sort_unordered(root);
    return root;
}

std::uint64_t span_exact(const AtoMachine& m, std::string_view input, const ResourceBounds& bounds,
                         CodeMode mode) {
    std::set<std::string> codes;
    enumerate_computations(m, input, bounds, [&](const ComputationTree& t) {
        if (is_accepting_computation(m, t))
            codes.insert(canonical_code(extract_output(m, t, mode), mode).bytes);
    });
    return codes.size();
}

std::vector<std::string> distinct_outputs(const AtoMachine& m, std::string_view input,
                                          const ResourceBounds& bounds, CodeMode mode) {
    std::map<std::string, std::string> by_code;
    enumerate_computations(m, input, bounds, [&](const ComputationTree& t) {
        if (is_accepting_computation(m, t)) {
            LabeledTree output = extract_output(m, t, mode);
            by_code.emplace(canonical_code(output, mode).bytes, serialize_tree(output));
        }
    });
    std::vector<std::string> out;
    out.reserve(by_code.size());
    for (auto& [code, text] : by_code)
        out.push_back(std::move(text));
    return out;
}

std::vector<Violation> check_well_behaved(const AtoMachine& m, const ComputationTree& t,
                                          const ResourceBounds& bounds) {
    std::vector<Violation> out;
    std::size_t size = computation_size(t);
    if (size > bounds.max_computation_nodes)
        out.push_back({"max-nodes", "computation has " + std::to_string(size)
                                        + " nodes, bound max_nodes="
                                        + std::to_string(bounds.max_computation_nodes)});
    collect_tape_violations(t, bounds, out);
    // An absent parent counts as labeling, so a label-free root starts a region.
    find_label_free_regions(m, t, true, bounds, out);
    return out;
}

} // namespace spantl
