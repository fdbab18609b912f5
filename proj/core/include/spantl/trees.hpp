#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "spantl/errors.hpp"

namespace spantl {

// Finite rooted tree with string node labels and an ordered child list.
// Plain value type: copy, move, compare all behave structurally.
struct LabeledTree {
    std::string label;
    std::vector<LabeledTree> children;

    friend bool operator==(const LabeledTree&, const LabeledTree&) = default;
};

enum class CodeMode {
    Ordered,   // sibling order is significant
    Unordered, // trees equal up to sibling permutation share a code
};

// Injective byte encoding of a tree under the chosen mode. Bytewise
// comparison of codes is the canonical order used throughout.
struct CanonicalCode {
    std::string bytes;
    CodeMode mode = CodeMode::Ordered;

    friend bool operator==(const CanonicalCode&, const CanonicalCode&) = default;
    friend std::strong_ordering operator<=>(const CanonicalCode& a, const CanonicalCode& b) {
        if (auto c = a.mode <=> b.mode; c != 0)
            return c;
        return a.bytes <=> b.bytes;
    }
};

// Term syntax: tree := label | label "(" tree ("," tree)* ")".
// Labels are bare words or double-quoted strings ("" is the empty label;
// \" and \\ are the only escapes). Throws ParseError with position info.
LabeledTree parse_tree(std::string_view text);

// Inverse of parse_tree; quotes labels exactly when necessary.
std::string serialize_tree(const LabeledTree& tree);

std::size_t tree_size(const LabeledTree& tree);

// True iff every node has at most max_arity children.
bool validate_k_tree(const LabeledTree& tree, std::size_t max_arity);

CanonicalCode canonical_code(const LabeledTree& tree, CodeMode mode);

// Rebuilds the tree with every sibling list sorted by unordered code —
// the representative of the tree's unordered equivalence class.
LabeledTree sort_unordered(const LabeledTree& tree);

} // namespace spantl
