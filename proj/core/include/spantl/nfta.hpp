#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "spantl/errors.hpp"
#include "spantl/trees.hpp"

namespace spantl {

// One top-down transition: a node in state `from` with label `label` may
// hand its children the states in `children` (empty for leaves).
struct NftaTransition {
    std::string from;
    std::string label;
    std::vector<std::string> children;

    friend bool operator==(const NftaTransition&, const NftaTransition&) = default;
    friend auto operator<=>(const NftaTransition&, const NftaTransition&) = default;
};

// Nondeterministic finite tree automaton over ordered labeled trees.
// A tree is accepted when some transition-respecting state assignment
// gives the root the initial state. Transition arities may differ.
struct Nfta {
    std::set<std::string> states;
    std::set<std::string> alphabet; // node labels; the empty label is allowed
    std::string initial;
    std::set<NftaTransition> transitions;

    friend bool operator==(const Nfta&, const Nfta&) = default;
};

std::size_t max_arity(const Nfta& a);

// File format: sections states / alphabet / init / delta; labels are
// always quoted; child lists written (s1, s2) with () for leaves.
Nfta parse_nfta(std::string_view text);
std::string serialize_nfta(const Nfta& a);

// Membership by bottom-up possible-state sets.
bool accepts(const Nfta& a, const LabeledTree& t);

struct EnumerationLimits {
    std::size_t max_size = 4096;          // refuse absurd size requests
    std::size_t max_trees = 2'000'000;    // total distinct trees stored
};

// All accepted trees with at most max_size nodes, ordered by (size,
// ordered canonical code). Throws ResourceError("enumeration_cap") when
// the limits are hit.
std::vector<LabeledTree> enumerate_accepted(const Nfta& a, std::size_t max_size,
                                            const EnumerationLimits& limits = {});

// Bottom-up deterministic automaton from the subset construction,
// restricted to reachable nonempty subsets. Trees mapping to no entry
// fall into an implicit sink. det-states are indices into `subsets`.
struct DetTreeAutomaton {
    std::vector<std::set<std::string>> subsets;
    std::map<std::pair<std::string, std::vector<std::size_t>>, std::size_t> transitions;
    std::set<std::size_t> accepting; // subsets containing the initial state
    std::size_t arity = 0;
};

DetTreeAutomaton determinize(const Nfta& a, std::size_t subset_cap = 1u << 14);

// det-state of the tree, or nothing when it falls into the sink.
std::optional<std::size_t> det_state(const DetTreeAutomaton& d, const LabeledTree& t);
bool det_accepts(const DetTreeAutomaton& d, const LabeledTree& t);

using BigCount = boost::multiprecision::cpp_int;

// counts[s] = number of distinct accepted trees with exactly s nodes, for
// s in [0, max_size]. Exact arbitrary-precision dynamic programming over
// the determinized automaton.
std::vector<BigCount> count_by_size(const Nfta& a, std::size_t max_size,
                                    std::size_t subset_cap = 1u << 14);

// Number of accepted trees with exactly (cumulative=false) or at most
// (cumulative=true) max_size nodes.
BigCount count_exact(const Nfta& a, std::size_t max_size, bool cumulative,
                     std::size_t subset_cap = 1u << 14);

} // namespace spantl
