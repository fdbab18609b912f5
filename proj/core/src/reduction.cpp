#include "spantl/reduction.hpp"

namespace spantl {

TupleSet tuple_product(const std::vector<TupleSet>& parts) {
    TupleSet acc;
    acc.insert(StateTuple{}); // empty product: the empty tuple
    for (const TupleSet& part : parts) {
        if (part.empty())
            return {}; // an empty factor annihilates everything
        TupleSet next;
        for (const StateTuple& a : acc) {
            for (const StateTuple& b : part) {
                StateTuple t = a;
                t.insert(t.end(), b.begin(), b.end());
                next.insert(std::move(t));
            }
        }
        acc = std::move(next);
    }
    return acc;
}

const TupleSet& process(const AtoMachine& m, const ComputationDag& dag, const std::string& key,
                        ReductionMemo& memo, NftaDraft& draft) {
    if (auto it = memo.find(key); it != memo.end())
        return it->second;

    const DagNode& node = dag.nodes.at(key);
    Classification cls = classify(m, node.config);
    TupleSet result;

    if (node.successors.empty()) {
        // leaf of the graph: halting, or a dead end no computation contains
        if (cls.labeling) {
            draft.states.insert(key);
            draft.alphabet.insert(node.config.label);
            if (cls.role == StateRole::Accepting)
                draft.transitions.insert({key, node.config.label, {}});
            // rejecting/dead-end labeling leaves keep their state but get no
            // transition; tuples carrying it never complete a run
            result.insert(StateTuple{key});
        } else if (cls.role == StateRole::Accepting) {
            result.insert(StateTuple{}); // contributes no labeled nodes
        }
        // non-labeling rejecting or dead-end leaf: empty set
    } else {
        std::vector<TupleSet> parts;
        parts.reserve(node.successors.size());
        for (const std::string& child : node.successors)
            parts.push_back(process(m, dag, child, memo, draft));

        TupleSet combined;
        if (cls.role == StateRole::Existential) {
            for (TupleSet& p : parts)
                combined.merge(p);
        } else if (cls.role == StateRole::Universal) {
            combined = tuple_product(parts);
        } else {
            throw Error("halting configuration " + key + " has successors in the graph");
        }

        if (cls.labeling) {
            draft.states.insert(key);
            draft.alphabet.insert(node.config.label);
            for (const StateTuple& tup : combined)
                draft.transitions.insert({key, node.config.label, tup});
            result.insert(StateTuple{key});
        } else {
            result = std::move(combined);
        }
    }

    auto [it, inserted] = memo.emplace(key, std::move(result));
    (void)inserted;
    return it->second;
}

Nfta build_nfta(const AtoMachine& m, std::string_view input, const ResourceBounds& bounds) {
    ComputationDag dag = build_dag(m, input, bounds);
    ReductionMemo memo;
    NftaDraft draft;
    const TupleSet& root_set = process(m, dag, dag.root, memo, draft);

    if (root_set != TupleSet{StateTuple{dag.root}})
        throw Error("reduction invariant violated: the initial configuration must resolve to "
                    "exactly its own state");

    Nfta a;
    a.states = std::move(draft.states);
    a.alphabet = std::move(draft.alphabet);
    a.initial = dag.root;
    a.transitions = std::move(draft.transitions);
    return a;
}

std::size_t size_bound(const AtoMachine& m, const ResourceBounds& bounds) {
    (void)m;
    // every output node is a distinct labeling node of some computation,
    // so no output outgrows the computation node budget
    return bounds.max_computation_nodes;
}

} // namespace spantl
