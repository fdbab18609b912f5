#include "oracles.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "spantl/comp_dag.hpp"
#include "spantl/reduction.hpp"

namespace spantl::testing {
namespace {

void compositions(std::size_t total, std::size_t parts, std::vector<std::size_t>& acc,
                  std::vector<std::vector<std::size_t>>& out) {
    if (parts == 0) {
        if (total == 0)
            out.push_back(acc);
        return;
    }
    for (std::size_t first = 1; first + (parts - 1) <= total; ++first) {
        acc.push_back(first);
        compositions(total - first, parts - 1, acc, out);
        acc.pop_back();
    }
}

// Memo-free mirror of the reduction's recursive case analysis.
TupleSet process_without_memo(const AtoMachine& m, const ComputationDag& dag,
                              const std::string& key, NftaDraft& draft) {
    const DagNode& node = dag.nodes.at(key);
    Classification cls = classify(m, node.config);

    if (node.successors.empty()) {
        if (cls.labeling) {
            draft.states.insert(key);
            draft.alphabet.insert(node.config.label);
            if (cls.role == StateRole::Accepting)
                draft.transitions.insert({key, node.config.label, {}});
            return {StateTuple{key}};
        }
        if (cls.role == StateRole::Accepting)
            return {StateTuple{}};
        return {};
    }

    std::vector<TupleSet> parts;
    for (const std::string& child : node.successors)
        parts.push_back(process_without_memo(m, dag, child, draft));

    TupleSet combined;
    if (cls.role == StateRole::Existential) {
        for (TupleSet& p : parts)
            combined.merge(p);
    } else {
        combined = tuple_product(parts);
    }

    if (cls.labeling) {
        draft.states.insert(key);
        draft.alphabet.insert(node.config.label);
        for (const StateTuple& tup : combined)
            draft.transitions.insert({key, node.config.label, tup});
        return {StateTuple{key}};
    }
    return combined;
}

} // namespace

std::vector<LabeledTree> all_trees(const std::vector<std::string>& labels, std::size_t max_arity,
                                   std::size_t size) {
    std::vector<LabeledTree> out;
    if (size == 0)
        return out;
    std::size_t top_arity = std::min(max_arity, size - 1);
    for (std::size_t arity = 0; arity <= top_arity; ++arity) {
        std::vector<std::vector<std::size_t>> splits;
        std::vector<std::size_t> acc;
        compositions(size - 1, arity, acc, splits);
        for (const auto& split : splits) {
            std::vector<std::vector<LabeledTree>> child_options;
            child_options.reserve(arity);
            for (std::size_t part : split)
                child_options.push_back(all_trees(labels, max_arity, part));
            // odometer over child choices
            std::vector<std::size_t> pick(arity, 0);
            bool dead = std::any_of(child_options.begin(), child_options.end(),
                                    [](const auto& v) { return v.empty(); });
            if (dead)
                continue;
            while (true) {
                for (const std::string& label : labels) {
                    LabeledTree t{label, {}};
                    t.children.reserve(arity);
                    for (std::size_t i = 0; i < arity; ++i)
                        t.children.push_back(child_options[i][pick[i]]);
                    out.push_back(std::move(t));
                }
                std::size_t i = 0;
                for (; i < arity; ++i) {
                    if (++pick[i] < child_options[i].size())
                        break;
                    pick[i] = 0;
                }
                if (i == arity)
                    break;
            }
        }
    }
    return out;
}

std::uint64_t brute_force_count(const Nfta& a, std::size_t size) {
    std::vector<std::string> labels(a.alphabet.begin(), a.alphabet.end());
    std::uint64_t n = 0;
    for (const LabeledTree& t : all_trees(labels, max_arity(a), size)) {
        if (accepts(a, t))
            ++n;
    }
    return n;
}

Nfta reference_build_nfta(const AtoMachine& m, std::string_view input,
                          const ResourceBounds& bounds) {
    ComputationDag dag = build_dag(m, input, bounds);
    NftaDraft draft;
    TupleSet root_set = process_without_memo(m, dag, dag.root, draft);
    if (root_set != TupleSet{StateTuple{dag.root}})
        throw Error("reference reduction: unexpected root tuple set");
    Nfta a;
    a.states = std::move(draft.states);
    a.alphabet = std::move(draft.alphabet);
    a.initial = dag.root;
    a.transitions = std::move(draft.transitions);
    return a;
}

Nfta random_nfta(std::mt19937& rng, std::size_t max_states, std::size_t max_labels) {
    static const std::vector<std::string> label_pool = {"a", "b", "c"};
    Nfta a;
    std::uniform_int_distribution<std::size_t> state_count(1, max_states);
    std::uniform_int_distribution<std::size_t> label_count(1, std::min(max_labels,
                                                                       label_pool.size()));
    std::size_t ns = state_count(rng);
    std::size_t nl = label_count(rng);
    std::vector<std::string> states;
    for (std::size_t i = 0; i < ns; ++i) {
        states.push_back("q" + std::to_string(i));
        a.states.insert(states.back());
    }
    for (std::size_t i = 0; i < nl; ++i)
        a.alphabet.insert(label_pool[i]);
    a.initial = states[0];

    std::uniform_int_distribution<std::size_t> transition_count(1, 8);
    std::uniform_int_distribution<std::size_t> pick_state(0, ns - 1);
    std::uniform_int_distribution<std::size_t> pick_label(0, nl - 1);
    std::uniform_int_distribution<std::size_t> pick_arity(0, 2);
    std::size_t nt = transition_count(rng);
    for (std::size_t i = 0; i < nt; ++i) {
        NftaTransition t;
        t.from = states[pick_state(rng)];
        t.label = label_pool[pick_label(rng)];
        std::size_t arity = pick_arity(rng);
        for (std::size_t j = 0; j < arity; ++j)
            t.children.push_back(states[pick_state(rng)]);
        a.transitions.insert(std::move(t));
    }
    return a;
}

LabeledTree random_tree(std::mt19937& rng, std::size_t max_depth, std::size_t max_children) {
    static const std::vector<std::string> labels = {
        "a", "bc", "", "x y", "q\"uote", "back\\slash", "par(en", "comma,", "\xF0\x9F\x8C\xB2",
    };
    std::uniform_int_distribution<std::size_t> pick_label(0, labels.size() - 1);
    LabeledTree t{labels[pick_label(rng)], {}};
    if (max_depth == 0)
        return t;
    std::uniform_int_distribution<std::size_t> child_count(0, max_children);
    std::size_t n = child_count(rng);
    for (std::size_t i = 0; i < n; ++i)
        t.children.push_back(random_tree(rng, max_depth - 1, max_children));
    return t;
}

LabeledTree shuffle_siblings(const LabeledTree& t, std::mt19937& rng) {
    LabeledTree out{t.label, {}};
    for (const LabeledTree& c : t.children)
        out.children.push_back(shuffle_siblings(c, rng));
    std::shuffle(out.children.begin(), out.children.end(), rng);
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string corpus_path(const std::string& name) {
    return std::string(SPANTL_CORPUS_DIR) + "/" + name;
}

} // namespace spantl::testing
