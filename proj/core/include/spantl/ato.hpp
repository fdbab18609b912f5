#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "spantl/errors.hpp"

namespace spantl {

// Tape symbols are single printable characters. The blank and the left
// end marker have one spelling, shared by files and in-memory strings.
using Symbol = char;
inline constexpr Symbol kBlank = '_';
inline constexpr Symbol kMarker = '>';

// One transition right-hand side: successor state, head moves on the
// input and work tapes, the symbol written under the work head, and the
// string appended to (or, after a label reset, starting) the label tape.
struct TransitionRule {
    std::string next_state;
    int input_move = 0; // -1, 0, +1
    int work_move = 0;  // -1, 0, +1
    Symbol work_write = kBlank;
    std::string label_emit;

    friend bool operator==(const TransitionRule&, const TransitionRule&) = default;
};

// Declared per-run resource limits. max_computation_nodes bounds the node
// count of a single computation tree, tape_cap bounds |work| (marker
// included) and |label| of every configuration, universal_branch_limit is
// the largest number of universal configurations allowed on one maximal
// label-free path.
struct ResourceBounds {
    std::size_t max_computation_nodes = 0;
    std::size_t tape_cap = 0;
    std::size_t universal_branch_limit = 0;

    friend bool operator==(const ResourceBounds&, const ResourceBounds&) = default;
};

// Alternating machine with a write-only label tape. The non-halting states
// are partitioned into existential and universal; labeling states reset
// the label tape on their outgoing steps.
struct AtoMachine {
    std::set<std::string> states;
    std::set<Symbol> alphabet; // always contains kBlank and kMarker
    std::string initial_state;
    std::string accept_state;
    std::string reject_state;
    std::set<std::string> existential;
    std::set<std::string> universal;
    std::set<std::string> labeling;
    std::map<std::tuple<std::string, Symbol, Symbol>, std::vector<TransitionRule>> delta;
    ResourceBounds bounds;
};

// Machine snapshot. The read-only input is per run, not stored here; the
// work tape string always starts with the marker. Heads are 1-based; the
// work head may sit one cell past the written prefix (reads blank there).
struct Configuration {
    std::string state;
    std::string work = std::string(1, kMarker);
    std::string label;
    std::size_t input_head = 1;
    std::size_t work_head = 1;

    friend bool operator==(const Configuration&, const Configuration&) = default;
};

// Deterministic injective encoding "state|work|label|in-head|work-head"
// with zero-padded heads. Its bytewise order is the canonical
// configuration order used for successor lists, graph edges, and the
// sibling order of computations and outputs.
std::string configuration_key(const Configuration& c);

enum class StateRole {
    Accepting,
    Rejecting,
    Existential,
    Universal,
};

struct Classification {
    StateRole role;
    bool labeling = false;
};

// Parses the machine file format and validates the result; throws
// ParseError on bad syntax, ValidationError when violations are found.
AtoMachine parse_machine(std::string_view text);

// Parse without the validation step (syntax errors still throw).
AtoMachine parse_machine_unchecked(std::string_view text);

// All structural violations of the definition, empty when well formed.
std::vector<Violation> validate_machine(const AtoMachine& m);

// Symbol under the given 1-based head position of the virtual input tape
// "marker, w, blanks..." — defined for every position >= 1.
Symbol input_symbol_at(std::string_view input, std::size_t pos);

// Same for a stored work-tape prefix.
Symbol work_symbol_at(const std::string& work, std::size_t pos);

// Checks the input word (marker/blank are not allowed in it, every symbol
// must be in the machine alphabet) and builds the starting configuration.
Configuration initial_configuration(const AtoMachine& m, std::string_view input);

// All successor configurations in canonical order, duplicates removed.
// Empty for dead ends; throws Error when called on a halting configuration.
std::vector<Configuration> successors(const AtoMachine& m, std::string_view input,
                                      const Configuration& c);

bool is_halting(const AtoMachine& m, const Configuration& c);

// Role and labeling flag of the configuration's state; throws Error for
// states the machine does not know.
Classification classify(const AtoMachine& m, const Configuration& c);
Classification classify_state(const AtoMachine& m, const std::string& state);

std::string serialize_machine(const AtoMachine& m);

} // namespace spantl
