#pragma once

// Internal helpers for the line/section based file formats. Not installed.

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "spantl/errors.hpp"

namespace spantl::detail {

struct Line {
    std::string text;
    std::size_t number = 0;
};

inline std::string strip(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r'))
        ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r'))
        --e;
    return std::string(s.substr(b, e - b));
}

// Lines with '#' comments and blank lines removed, original numbering kept.
// Quoted strings never contain '#' in these formats, so stripping is plain.
inline std::vector<Line> significant_lines(std::string_view text) {
    std::vector<Line> out;
    std::size_t line_no = 1;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == '\n') {
            std::string_view raw = text.substr(start, i - start);
            if (auto hash = raw.find('#'); hash != std::string_view::npos)
                raw = raw.substr(0, hash);
            std::string t = strip(raw);
            if (!t.empty())
                out.push_back({std::move(t), line_no});
            ++line_no;
            start = i + 1;
        }
    }
    return out;
}

struct Section {
    std::string name;
    std::size_t header_line = 0;
    std::vector<Line> payload;
};

inline bool is_section_header(const std::string& line, std::string& name, std::string& rest) {
    std::size_t i = 0;
    while (i < line.size() && (std::isalpha(static_cast<unsigned char>(line[i])) || line[i] == '_'))
        ++i;
    if (i == 0 || i >= line.size() || line[i] != ':')
        return false;
    name = line.substr(0, i);
    rest = strip(std::string_view(line).substr(i + 1));
    return true;
}

inline std::vector<Section> split_sections(std::string_view text) {
    std::vector<Section> out;
    for (auto& ln : significant_lines(text)) {
        std::string name, rest;
        if (is_section_header(ln.text, name, rest)) {
            out.push_back({name, ln.number, {}});
            if (!rest.empty())
                out.back().payload.push_back({rest, ln.number});
        } else {
            if (out.empty())
                throw ParseError("content before the first section header", ln.number, 1);
            out.back().payload.push_back(ln);
        }
    }
    return out;
}

inline std::vector<std::string> split_tokens(const std::string& s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t'))
            ++i;
        std::size_t b = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t')
            ++i;
        if (i > b)
            out.push_back(s.substr(b, i - b));
    }
    return out;
}

// Single-line scanner for rule syntax; positions reported 1-based.
struct LineCursor {
    const std::string& s;
    std::size_t line;
    std::size_t i = 0;

    bool done() const { return i >= s.size(); }
    void skip_ws() {
        while (!done() && (s[i] == ' ' || s[i] == '\t'))
            ++i;
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line, i + 1); }

    void expect(char c, const char* what) {
        skip_ws();
        if (done() || s[i] != c)
            fail(std::string("expected ") + what);
        ++i;
    }

    bool try_consume(char c) {
        skip_ws();
        if (!done() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }

    std::string token(std::string_view stops, const char* what) {
        skip_ws();
        std::size_t b = i;
        while (!done() && s[i] != ' ' && s[i] != '\t' && stops.find(s[i]) == std::string_view::npos)
            ++i;
        if (i == b)
            fail(std::string("expected ") + what);
        return s.substr(b, i - b);
    }

    std::string quoted() {
        skip_ws();
        if (done() || s[i] != '"')
            fail("expected a quoted string");
        ++i;
        std::string out;
        while (true) {
            if (done())
                fail("unterminated quoted string");
            char c = s[i];
            if (c == '"') {
                ++i;
                return out;
            }
            if (c == '\\') {
                ++i;
                if (done())
                    fail("unterminated escape");
                char e = s[i];
                if (e != '"' && e != '\\')
                    fail("invalid escape in quoted string");
                out.push_back(e);
                ++i;
            } else {
                out.push_back(c);
                ++i;
            }
        }
    }

    void expect_arrow() {
        skip_ws();
        if (done() || s[i] != '-' || i + 1 >= s.size() || s[i + 1] != '>')
            fail("expected '->'");
        i += 2;
    }

    void expect_end() {
        skip_ws();
        if (!done())
            fail("trailing characters on rule line");
    }
};

} // namespace spantl::detail
