#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "spantl/ato.hpp"
#include "spantl/trees.hpp"

namespace spantl {

// One machine computation: a finite configuration tree rooted at the
// initial configuration. Existential nodes keep exactly one successor,
// universal nodes keep all of them (in canonical configuration order);
// leaves are halting.
struct ComputationTree {
    Configuration config;
    std::vector<ComputationTree> children;

    friend bool operator==(const ComputationTree&, const ComputationTree&) = default;
};

std::size_t computation_size(const ComputationTree& t);

// Streams every computation of the machine on the input to the sink, in
// the depth-first order induced by canonical successor order. Branches
// that reach a dead end (a non-halting configuration with no applicable
// rule) complete no computation and are dropped. Throws ResourceError
// when a partial computation exceeds max_computation_nodes or a
// configuration exceeds tape_cap. The tree passed to the sink is only
// valid during the call.
void enumerate_computations(const AtoMachine& m, std::string_view input,
                            const ResourceBounds& bounds,
                            const std::function<void(const ComputationTree&)>& sink);

// Convenience wrapper collecting copies; prefer the streaming form.
std::vector<ComputationTree> collect_computations(const AtoMachine& m, std::string_view input,
                                                  const ResourceBounds& bounds);

// True iff every leaf is accepting (the enumerator only produces trees
// whose leaves halt, so this reduces to checking leaf states).
bool is_accepting_computation(const AtoMachine& m, const ComputationTree& t);

// The output of a computation: the subgraph induced by labeling
// configurations, each node carrying the configuration's label string.
// The root configuration is labeling by definition and carries the empty
// label. Under Unordered mode sibling lists are put in canonical
// unordered order.
LabeledTree extract_output(const AtoMachine& m, const ComputationTree& t, CodeMode mode);

// Number of distinct outputs over all accepting computations.
std::uint64_t span_exact(const AtoMachine& m, std::string_view input, const ResourceBounds& bounds,
                         CodeMode mode);

// The distinct outputs themselves, serialized, in canonical byte order of
// their codes. Under Unordered mode each class is represented once.
std::vector<std::string> distinct_outputs(const AtoMachine& m, std::string_view input,
                                          const ResourceBounds& bounds, CodeMode mode);

// Checks one computation against the declared bounds. Reported kinds:
// "max-nodes" (node count), "tape-cap" (a configuration's work or label
// string too long), "universal-path" (a maximal label-free path holding
// more than universal_branch_limit universal configurations).
std::vector<Violation> check_well_behaved(const AtoMachine& m, const ComputationTree& t,
                                          const ResourceBounds& bounds);

} // namespace spantl
