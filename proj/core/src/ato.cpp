#include "spantl/ato.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>

#include "text_util.hpp"

namespace spantl {
namespace {

bool valid_state_name(const std::string& s) {
    if (s.empty())
        return false;
    for (char c : s) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-'))
            return false;
    }
    return true;
}

// Tape symbols: printable ASCII minus term delimiters, '|' (the key field
// separator) and '#' (the comment character).
bool valid_symbol(char c) {
    unsigned char u = static_cast<unsigned char>(c);
    if (u < 0x21 || u > 0x7E)
        return false;
    switch (c) {
    case '(':
    case ')':
    case ',':
    case '"':
    case '\\':
    case '|':
    case '#':
        return false;
    default:
        return true;
    }
}

std::string pad12(std::size_t v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%012zu", v);
    return buf;
}

Symbol parse_symbol_token(detail::LineCursor& cur) {
    cur.skip_ws();
    if (cur.done())
        cur.fail("expected a tape symbol");
    char c = cur.s[cur.i];
    if (!valid_symbol(c))
        cur.fail("invalid tape symbol");
    ++cur.i;
    return c;
}

int parse_move(detail::LineCursor& cur) {
    std::string t = cur.token(",)", "a head move");
    if (t == "-1")
        return -1;
    if (t == "0")
        return 0;
    if (t == "+1")
        return 1;
    cur.fail("head move must be -1, 0, or +1");
}

std::string parse_state_token(detail::LineCursor& cur) {
    std::string t = cur.token(",)", "a state name");
    if (!valid_state_name(t))
        cur.fail("invalid state name '" + t + "'");
    return t;
}

// (state, in-sym, work-sym) -> (state, dx, dy, write-sym, "emit")
void parse_delta_line(AtoMachine& m, const detail::Line& ln) {
    detail::LineCursor cur{ln.text, ln.number};
    cur.expect('(', "'('");
    std::string from = parse_state_token(cur);
    cur.expect(',', "','");
    Symbol in_sym = parse_symbol_token(cur);
    cur.expect(',', "','");
    Symbol work_sym = parse_symbol_token(cur);
    cur.expect(')', "')'");
    cur.expect_arrow();
    cur.expect('(', "'('");
    TransitionRule r;
    r.next_state = parse_state_token(cur);
    cur.expect(',', "','");
    r.input_move = parse_move(cur);
    cur.expect(',', "','");
    r.work_move = parse_move(cur);
    cur.expect(',', "','");
    r.work_write = parse_symbol_token(cur);
    cur.expect(',', "','");
    r.label_emit = cur.quoted();
    for (char c : r.label_emit) {
        if (!valid_symbol(c))
            cur.fail("invalid character in emitted label string");
    }
    cur.expect(')', "')'");
    cur.expect_end();
    m.delta[{from, in_sym, work_sym}].push_back(std::move(r));
}

std::size_t parse_bound_value(const std::string& text, std::size_t line) {
    std::size_t value = 0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || p != text.data() + text.size())
        throw ParseError("bound value must be a nonnegative integer, got '" + text + "'", line, 1);
    return value;
}

std::string rule_site(const std::string& from, Symbol a, Symbol b) {
    return std::string("(") + from + ", " + a + ", " + b + ")";
}

} // namespace

std::string configuration_key(const Configuration& c) {
    std::string key = c.state;
    key.push_back('|');
    key += c.work;
    key.push_back('|');
    key += c.label;
    key.push_back('|');
    key += pad12(c.input_head);
    key.push_back('|');
    key += pad12(c.work_head);
    return key;
}

AtoMachine parse_machine_unchecked(std::string_view text) {
    static const std::vector<std::string> known = {
        "states", "alphabet", "init",     "accept", "reject",
        "existential", "universal", "labeling", "bounds", "delta",
    };

    std::map<std::string, detail::Section> merged;
    for (auto& sec : detail::split_sections(text)) {
        if (std::find(known.begin(), known.end(), sec.name) == known.end())
            throw ParseError("unknown section '" + sec.name + "'", sec.header_line, 1);
        auto [it, fresh] = merged.try_emplace(sec.name, sec);
        if (!fresh) {
            for (auto& l : sec.payload)
                it->second.payload.push_back(l);
        }
    }
    for (auto& name : known) {
        if (!merged.count(name))
            throw ParseError("missing section '" + name + "'", 1, 1);
    }

    auto tokens_of = [&](const std::string& name) {
        std::vector<detail::Line> out;
        for (auto& l : merged.at(name).payload) {
            for (auto& t : detail::split_tokens(l.text))
                out.push_back({t, l.number});
        }
        return out;
    };

    AtoMachine m;
    m.alphabet = {kBlank, kMarker};

    auto read_states = [&](const std::string& name, std::set<std::string>& into) {
        for (auto& t : tokens_of(name)) {
            if (!valid_state_name(t.text))
                throw ParseError("invalid state name '" + t.text + "' in section '" + name + "'",
                                 t.number, 1);
            into.insert(t.text);
        }
    };
    read_states("states", m.states);
    read_states("existential", m.existential);
    read_states("universal", m.universal);
    read_states("labeling", m.labeling);

    for (auto& t : tokens_of("alphabet")) {
        if (t.text.size() != 1 || !valid_symbol(t.text[0]))
            throw ParseError("alphabet symbols are single printable characters, got '" + t.text
                                 + "'",
                             t.number, 1);
        m.alphabet.insert(t.text[0]);
    }

    auto read_single = [&](const std::string& name) {
        auto toks = tokens_of(name);
        if (toks.size() != 1)
            throw ParseError("section '" + name + "' must name exactly one state",
                             merged.at(name).header_line, 1);
        if (!valid_state_name(toks[0].text))
            throw ParseError("invalid state name '" + toks[0].text + "' in section '" + name + "'",
                             toks[0].number, 1);
        return toks[0].text;
    };
    m.initial_state = read_single("init");
    m.accept_state = read_single("accept");
    m.reject_state = read_single("reject");

    bool saw_max_nodes = false, saw_tape_cap = false, saw_k = false;
    for (auto& t : tokens_of("bounds")) {
        auto eq = t.text.find('=');
        if (eq == std::string::npos)
            throw ParseError("bounds entries have the form key=value, got '" + t.text + "'",
                             t.number, 1);
        std::string key = t.text.substr(0, eq);
        std::size_t value = parse_bound_value(t.text.substr(eq + 1), t.number);
        if (key == "max_nodes") {
            if (saw_max_nodes)
                throw ParseError("duplicate bound 'max_nodes'", t.number, 1);
            saw_max_nodes = true;
            m.bounds.max_computation_nodes = value;
        } else if (key == "tape_cap") {
            if (saw_tape_cap)
                throw ParseError("duplicate bound 'tape_cap'", t.number, 1);
            saw_tape_cap = true;
            m.bounds.tape_cap = value;
        } else if (key == "k") {
            if (saw_k)
                throw ParseError("duplicate bound 'k'", t.number, 1);
            saw_k = true;
            m.bounds.universal_branch_limit = value;
        } else {
            throw ParseError("unknown bound '" + key + "'", t.number, 1);
        }
    }
    if (!saw_max_nodes || !saw_tape_cap || !saw_k)
        throw ParseError("bounds must define max_nodes, tape_cap, and k",
                         merged.at("bounds").header_line, 1);

    for (auto& ln : merged.at("delta").payload)
        parse_delta_line(m, ln);

    return m;
}

AtoMachine parse_machine(std::string_view text) {
    AtoMachine m = parse_machine_unchecked(text);
    auto violations = validate_machine(m);
    if (!violations.empty())
        throw ValidationError(std::move(violations));
    return m;
}

std::vector<Violation> validate_machine(const AtoMachine& m) {
    std::vector<Violation> out;

    if (!m.alphabet.count(kBlank) || !m.alphabet.count(kMarker))
        out.push_back({"alphabet", "alphabet must contain the blank and the end marker"});

    auto require_state = [&](const std::string& s, const std::string& where) {
        if (!m.states.count(s))
            out.push_back({"unknown-state", "'" + s + "' in " + where + " is not a declared state"});
    };
    require_state(m.initial_state, "init");
    require_state(m.accept_state, "accept");
    require_state(m.reject_state, "reject");
    for (auto& s : m.existential)
        require_state(s, "existential");
    for (auto& s : m.universal)
        require_state(s, "universal");
    for (auto& s : m.labeling)
        require_state(s, "labeling");

    if (m.accept_state == m.reject_state)
        out.push_back({"halting-conflict", "accept and reject must be distinct states"});

    for (auto& s : m.states) {
        bool halting = (s == m.accept_state || s == m.reject_state);
        bool e = m.existential.count(s) > 0;
        bool u = m.universal.count(s) > 0;
        if (halting) {
            if (e || u)
                out.push_back({"partition-halting",
                               "halting state '" + s + "' listed as existential or universal"});
            continue;
        }
        if (e && u)
            out.push_back({"partition-overlap", "state '" + s + "' is both existential and universal"});
        if (!e && !u)
            out.push_back({"partition-gap", "state '" + s + "' is neither existential nor universal"});
    }

    if (!m.labeling.count(m.initial_state))
        out.push_back({"initial-not-labeling",
                       "the initial state '" + m.initial_state + "' must be labeling"});

    if (m.bounds.max_computation_nodes == 0)
        out.push_back({"bounds", "max_nodes must be positive"});
    if (m.bounds.tape_cap == 0)
        out.push_back({"bounds", "tape_cap must be positive"});

    for (auto& [lhs, rules] : m.delta) {
        const auto& [from, in_sym, work_sym] = lhs;
        std::string site = rule_site(from, in_sym, work_sym);
        if (!m.states.count(from))
            out.push_back({"unknown-state", "rule " + site + " starts from an undeclared state"});
        else if (from == m.accept_state || from == m.reject_state)
            out.push_back({"halting-delta", "rule " + site + " starts from a halting state"});
        if (!m.alphabet.count(in_sym))
            out.push_back({"undeclared-symbol", "rule " + site + " reads an undeclared input symbol"});
        if (!m.alphabet.count(work_sym))
            out.push_back({"undeclared-symbol", "rule " + site + " reads an undeclared work symbol"});

        for (const TransitionRule& r : rules) {
            if (!m.states.count(r.next_state))
                out.push_back(
                    {"unknown-state", "rule " + site + " moves to undeclared state '" + r.next_state + "'"});
            if (!m.alphabet.count(r.work_write))
                out.push_back({"undeclared-symbol", "rule " + site + " writes an undeclared symbol"});
            if (in_sym == kMarker && r.input_move < 0)
                out.push_back({"marker-underflow", "rule " + site + " moves the input head left of the marker"});
            if (work_sym == kMarker && r.work_move < 0)
                out.push_back({"marker-underflow", "rule " + site + " moves the work head left of the marker"});
            if (work_sym == kMarker && r.work_write != kMarker)
                out.push_back({"marker-overwrite", "rule " + site + " overwrites the work tape marker"});
            if (work_sym != kMarker && r.work_write == kMarker)
                out.push_back({"marker-write", "rule " + site + " writes the marker onto a plain cell"});
            for (char c : r.label_emit) {
                if (c == kBlank || c == kMarker || !m.alphabet.count(c)) {
                    out.push_back({"emit-symbol",
                                   "rule " + site + " emits a character outside the plain alphabet"});
                    break;
                }
            }
        }
    }

    return out;
}

Symbol input_symbol_at(std::string_view input, std::size_t pos) {
    if (pos == 0)
        throw Error("tape positions are 1-based");
    if (pos == 1)
        return kMarker;
    if (pos <= input.size() + 1)
        return input[pos - 2];
    return kBlank;
}

Symbol work_symbol_at(const std::string& work, std::size_t pos) {
    if (pos == 0)
        throw Error("tape positions are 1-based");
    if (pos <= work.size())
        return work[pos - 1];
    return kBlank;
}

Configuration initial_configuration(const AtoMachine& m, std::string_view input) {
    std::vector<Violation> bad;
    for (char c : input) {
        if (c == kBlank || c == kMarker)
            bad.push_back({"input-symbol", "input words may not contain the blank or the marker"});
        else if (!m.alphabet.count(c))
            bad.push_back({"input-symbol",
                           std::string("input symbol '") + c + "' is not in the machine alphabet"});
    }
    if (!bad.empty())
        throw ValidationError(std::move(bad));
    Configuration c;
    c.state = m.initial_state;
    return c;
}

bool is_halting(const AtoMachine& m, const Configuration& c) {
    return c.state == m.accept_state || c.state == m.reject_state;
}

std::vector<Configuration> successors(const AtoMachine& m, std::string_view input,
                                      const Configuration& c) {
    if (is_halting(m, c))
        throw Error("successors of a halting configuration requested");
    if (c.work_head == 0 || c.work_head > c.work.size() + 1)
        throw Error("work head out of range in " + configuration_key(c));

    Symbol in_sym = input_symbol_at(input, c.input_head);
    Symbol work_sym = work_symbol_at(c.work, c.work_head);
    auto it = m.delta.find({c.state, in_sym, work_sym});
    if (it == m.delta.end())
        return {};

    bool reset = m.labeling.count(c.state) > 0;
    std::vector<Configuration> out;
    out.reserve(it->second.size());
    for (const TransitionRule& r : it->second) {
        if ((r.input_move < 0 && c.input_head == 1) || (r.work_move < 0 && c.work_head == 1))
            throw Error("head underflow in a rule from " + configuration_key(c)
                        + "; machine not validated");
        Configuration n;
        n.state = r.next_state;
        n.work = c.work;
        if (c.work_head == n.work.size() + 1)
            n.work.push_back(r.work_write); // touching a fresh cell extends the prefix
        else
            n.work[c.work_head - 1] = r.work_write;
        n.label = reset ? r.label_emit : c.label + r.label_emit;
        n.input_head = c.input_head + static_cast<std::size_t>(r.input_move + 1) - 1;
        n.work_head = c.work_head + static_cast<std::size_t>(r.work_move + 1) - 1;
        out.push_back(std::move(n));
    }
    std::sort(out.begin(), out.end(), [](const Configuration& a, const Configuration& b) {
        return configuration_key(a) < configuration_key(b);
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Classification classify_state(const AtoMachine& m, const std::string& state) {
    if (!m.states.count(state))
        throw Error("unknown state '" + state + "'");
    Classification c;
    c.labeling = m.labeling.count(state) > 0;
    if (state == m.accept_state)
        c.role = StateRole::Accepting;
    else if (state == m.reject_state)
        c.role = StateRole::Rejecting;
    else if (m.existential.count(state))
        c.role = StateRole::Existential;
    else if (m.universal.count(state))
        c.role = StateRole::Universal;
    else
        throw Error("state '" + state + "' has no role; machine not validated");
    return c;
}

Classification classify(const AtoMachine& m, const Configuration& c) {
    return classify_state(m, c.state);
}

std::string serialize_machine(const AtoMachine& m) {
    std::string out;
    auto join = [](const std::set<std::string>& xs) {
        std::string s;
        for (auto& x : xs) {
            if (!s.empty())
                s.push_back(' ');
            s += x;
        }
        return s;
    };

    out += "states: " + join(m.states) + "\n";
    out += "alphabet:";
    for (Symbol c : m.alphabet) {
        if (c == kBlank || c == kMarker)
            continue; // implied members
        out.push_back(' ');
        out.push_back(c);
    }
    out += "\ninit: " + m.initial_state + "\n";
    out += "accept: " + m.accept_state + "\n";
    out += "reject: " + m.reject_state + "\n";
    out += "existential: " + join(m.existential) + "\n";
    out += "universal: " + join(m.universal) + "\n";
    out += "labeling: " + join(m.labeling) + "\n";
    out += "bounds: max_nodes=" + std::to_string(m.bounds.max_computation_nodes)
           + " tape_cap=" + std::to_string(m.bounds.tape_cap)
           + " k=" + std::to_string(m.bounds.universal_branch_limit) + "\n";
    out += "delta:\n";
    for (auto& [lhs, rules] : m.delta) {
        const auto& [from, in_sym, work_sym] = lhs;
        for (const TransitionRule& r : rules) {
            out += "(" + from + ", ";
            out.push_back(in_sym);
            out += ", ";
            out.push_back(work_sym);
            out += ") -> (" + r.next_state + ", ";
            out += (r.input_move < 0 ? "-1" : r.input_move > 0 ? "+1" : "0");
            out += ", ";
            out += (r.work_move < 0 ? "-1" : r.work_move > 0 ? "+1" : "0");
            out += ", ";
            out.push_back(r.work_write);
            out += ", \"";
            out += r.label_emit; // emit characters never need escaping
            out += "\")\n";
        }
    }
    return out;
}

} // namespace spantl
