#include "spantl/trees.hpp"

#include <algorithm>

namespace spantl {
namespace {

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;
    std::size_t line = 1;
    std::size_t col = 1;

    bool done() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }

    void advance() {
        if (text[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }

    void skip_ws() {
        while (!done() && (peek() == ' ' || peek() == '\t' || peek() == '\r' || peek() == '\n'))
            advance();
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line, col); }
};

// Characters a label may contain without quoting: anything printable that
// is not term structure. Bytes >= 0x80 pass so UTF-8 labels stay bare.
bool is_bare_char(char c) {
    unsigned char u = static_cast<unsigned char>(c);
    if (u < 0x21)
        return false;
    switch (c) {
    case '(':
    case ')':
    case ',':
    case '"':
    case '\\':
        return false;
    default:
        return true;
    }
}

std::string parse_label(Cursor& c) {
    if (!c.done() && c.peek() == '"') {
        c.advance();
        std::string out;
        while (true) {
            if (c.done())
                c.fail("unterminated quoted label");
            char ch = c.peek();
            if (ch == '"') {
                c.advance();
                return out;
            }
            if (ch == '\\') {
                c.advance();
                if (c.done())
                    c.fail("unterminated escape in quoted label");
                char e = c.peek();
                if (e != '"' && e != '\\')
                    c.fail("invalid escape in quoted label");
                out.push_back(e);
                c.advance();
            } else {
                out.push_back(ch);
                c.advance();
            }
        }
    }
    std::string out;
    while (!c.done() && is_bare_char(c.peek())) {
        out.push_back(c.peek());
        c.advance();
    }
    if (out.empty())
        c.fail("expected a label");
    return out;
}

LabeledTree parse_node(Cursor& c) {
    c.skip_ws();
    LabeledTree node;
    node.label = parse_label(c);
    c.skip_ws();
    if (!c.done() && c.peek() == '(') {
        c.advance();
        c.skip_ws();
        if (!c.done() && c.peek() == ')')
            c.fail("empty child list; write a leaf without parentheses");
        while (true) {
            node.children.push_back(parse_node(c));
            c.skip_ws();
            if (c.done())
                c.fail("unbalanced '(' in tree term");
            if (c.peek() == ',') {
                c.advance();
                continue;
            }
            if (c.peek() == ')') {
                c.advance();
                break;
            }
            c.fail("expected ',' or ')' in child list");
        }
    }
    return node;
}

bool needs_quotes(const std::string& label) {
    if (label.empty())
        return true;
    return !std::all_of(label.begin(), label.end(), is_bare_char);
}

void serialize_into(const LabeledTree& t, std::string& out) {
    if (needs_quotes(t.label)) {
        out.push_back('"');
        for (char ch : t.label) {
            if (ch == '"' || ch == '\\')
                out.push_back('\\');
            out.push_back(ch);
        }
        out.push_back('"');
    } else {
        out += t.label;
    }
    if (!t.children.empty()) {
        out.push_back('(');
        for (std::size_t i = 0; i < t.children.size(); ++i) {
            if (i)
                out.push_back(',');
            serialize_into(t.children[i], out);
        }
        out.push_back(')');
    }
}

// Length-prefixed label plus delimited child block; injective because the
// label's byte count is explicit and child codes are self-delimiting.
void code_into(const LabeledTree& t, CodeMode mode, std::string& out) {
    out += std::to_string(t.label.size());
    out.push_back(':');
    out += t.label;
    out.push_back('(');
    if (mode == CodeMode::Ordered) {
        for (const auto& child : t.children)
            code_into(child, mode, out);
    } else {
        std::vector<std::string> codes;
        codes.reserve(t.children.size());
        for (const auto& child : t.children) {
            std::string c;
            code_into(child, mode, c);
            codes.push_back(std::move(c));
        }
        std::sort(codes.begin(), codes.end());
        for (const auto& c : codes)
            out += c;
    }
    out.push_back(')');
}

} // namespace

LabeledTree parse_tree(std::string_view text) {
    Cursor c{text};
    LabeledTree t = parse_node(c);
    c.skip_ws();
    if (!c.done())
        c.fail("trailing characters after tree term");
    return t;
}

std::string serialize_tree(const LabeledTree& tree) {
    std::string out;
    serialize_into(tree, out);
    return out;
}

std::size_t tree_size(const LabeledTree& tree) {
    std::size_t n = 1;
    for (const auto& child : tree.children)
        n += tree_size(child);
    return n;
}

bool validate_k_tree(const LabeledTree& tree, std::size_t max_arity) {
    if (tree.children.size() > max_arity)
        return false;
    return std::all_of(tree.children.begin(), tree.children.end(),
                       [&](const LabeledTree& c) { return validate_k_tree(c, max_arity); });
}

CanonicalCode canonical_code(const LabeledTree& tree, CodeMode mode) {
    CanonicalCode code;
    code.mode = mode;
    code_into(tree, mode, code.bytes);
    return code;
}

LabeledTree sort_unordered(const LabeledTree& tree) {
    LabeledTree out;
    out.label = tree.label;
    out.children.reserve(tree.children.size());
    for (const auto& child : tree.children)
        out.children.push_back(sort_unordered(child));
    std::stable_sort(out.children.begin(), out.children.end(),
                     [](const LabeledTree& a, const LabeledTree& b) {
                         return canonical_code(a, CodeMode::Unordered).bytes
                                < canonical_code(b, CodeMode::Unordered).bytes;
                     });
    return out;
}

} // namespace spantl
