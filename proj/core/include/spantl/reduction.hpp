#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "spantl/ato.hpp"
#include "spantl/comp_dag.hpp"
#include "spantl/nfta.hpp"

namespace spantl {

// Ordered list of automaton states contributed by one resolved subtree:
// the labeling configurations that end up as children of the nearest
// labeling ancestor, left to right.
using StateTuple = std::vector<std::string>;
using TupleSet = std::set<StateTuple>;

// Per-configuration memo of the reduction; keys are configuration keys.
using ReductionMemo = std::map<std::string, TupleSet>;

// All concatenations picking one tuple from each part, in order. The
// empty product is the singleton empty tuple; an empty part annihilates
// the whole product.
TupleSet tuple_product(const std::vector<TupleSet>& parts);

// Automaton under construction during the reduction.
struct NftaDraft {
    std::set<std::string> states;
    std::set<std::string> alphabet;
    std::set<NftaTransition> transitions;
};

// Resolves one configuration of the graph: fills the memo for `key` (and
// everything below it) and adds the states/transitions its labeling
// configurations induce. Returns the memoized tuple set.
const TupleSet& process(const AtoMachine& m, const ComputationDag& dag, const std::string& key,
                        ReductionMemo& memo, NftaDraft& draft);

// The whole pipeline: configuration graph, then the reduction, rooted at
// the initial configuration. The resulting automaton accepts exactly the
// valid outputs of the machine on this input (ordered reading).
Nfta build_nfta(const AtoMachine& m, std::string_view input, const ResourceBounds& bounds);

// Upper bound on the node count of any single output of a machine
// honoring max_computation_nodes; safe size argument for count_exact.
std::size_t size_bound(const AtoMachine& m, const ResourceBounds& bounds);

} // namespace spantl
