#include "spantl/nfta.hpp"

#include <algorithm>

#include "text_util.hpp"

namespace spantl {
namespace {

bool valid_nfta_state(const std::string& s) {
    if (s.empty())
        return false;
    for (char c : s) {
        unsigned char u = static_cast<unsigned char>(c);
        if (u < 0x21 || u > 0x7E)
            return false;
        if (c == '(' || c == ')' || c == ',' || c == '"' || c == '\\' || c == '#')
            return false;
    }
    return true;
}

using TransitionIndex = std::map<std::pair<std::string, std::size_t>,
                                 std::vector<const NftaTransition*>>;

TransitionIndex index_transitions(const Nfta& a) {
    TransitionIndex idx;
    for (const NftaTransition& t : a.transitions)
        idx[{t.label, t.children.size()}].push_back(&t);
    return idx;
}

std::set<std::string> possible_states(const TransitionIndex& idx, const LabeledTree& t) {
    std::vector<std::set<std::string>> child_states;
    child_states.reserve(t.children.size());
    for (const LabeledTree& c : t.children)
        child_states.push_back(possible_states(idx, c));

    std::set<std::string> out;
    auto it = idx.find({t.label, t.children.size()});
    if (it == idx.end())
        return out;
    for (const NftaTransition* tr : it->second) {
        bool ok = true;
        for (std::size_t i = 0; i < tr->children.size(); ++i) {
            if (!child_states[i].count(tr->children[i])) {
                ok = false;
                break;
            }
        }
        if (ok)
            out.insert(tr->from);
    }
    return out;
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

// Splits `total` into `parts` positive summands, invoking fn on each split.
template <typename Fn>
void for_each_composition(std::size_t total, std::size_t parts, std::vector<std::size_t>& sizes,
                          const Fn& fn) {
    if (parts == 0) {
        if (total == 0)
            fn(sizes);
        return;
    }
    if (total < parts)
        return; // every part needs at least one node
    for (std::size_t first = 1; first + (parts - 1) <= total; ++first) {
        sizes.push_back(first);
        for_each_composition(total - first, parts - 1, sizes, fn);
        sizes.pop_back();
    }
}

} // namespace

std::size_t max_arity(const Nfta& a) {
    std::size_t k = 0;
    for (const NftaTransition& t : a.transitions)
        k = std::max(k, t.children.size());
    return k;
}

Nfta parse_nfta(std::string_view text) {
    static const std::vector<std::string> known = {"states", "alphabet", "init", "delta"};

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

    Nfta a;
    for (auto& ln : merged.at("states").payload) {
        for (auto& t : detail::split_tokens(ln.text)) {
            if (!valid_nfta_state(t))
                throw ParseError("invalid automaton state name '" + t + "'", ln.number, 1);
            a.states.insert(t);
        }
    }

    for (auto& ln : merged.at("alphabet").payload) {
        detail::LineCursor cur{ln.text, ln.number};
        cur.skip_ws();
        while (!cur.done()) {
            a.alphabet.insert(cur.quoted());
            cur.skip_ws();
        }
    }

    {
        auto toks = detail::split_tokens(merged.at("init").payload.size() == 1
                                             ? merged.at("init").payload[0].text
                                             : std::string());
        if (merged.at("init").payload.size() != 1 || toks.size() != 1)
            throw ParseError("section 'init' must name exactly one state",
                             merged.at("init").header_line, 1);
        a.initial = toks[0];
        if (!a.states.count(a.initial))
            throw ParseError("initial state '" + a.initial + "' is not declared",
                             merged.at("init").payload[0].number, 1);
    }

    for (auto& ln : merged.at("delta").payload) {
        detail::LineCursor cur{ln.text, ln.number};
        NftaTransition t;
        cur.expect('(', "'('");
        t.from = cur.token(",)", "a state name");
        cur.expect(',', "','");
        t.label = cur.quoted();
        cur.expect(')', "')'");
        cur.expect_arrow();
        cur.expect('(', "'('");
        if (!cur.try_consume(')')) {
            while (true) {
                t.children.push_back(cur.token(",)", "a state name"));
                if (cur.try_consume(')'))
                    break;
                cur.expect(',', "',' or ')'");
            }
        }
        cur.expect_end();

        if (!a.states.count(t.from))
            throw ParseError("transition from undeclared state '" + t.from + "'", ln.number, 1);
        for (auto& c : t.children) {
            if (!a.states.count(c))
                throw ParseError("transition child uses undeclared state '" + c + "'", ln.number,
                                 1);
        }
        if (!a.alphabet.count(t.label))
            throw ParseError("transition label " + quote(t.label) + " is not in the alphabet",
                             ln.number, 1);
        a.transitions.insert(std::move(t));
    }

    return a;
}

std::string serialize_nfta(const Nfta& a) {
    std::string out = "states:";
    for (auto& s : a.states)
        out += " " + s;
    out += "\nalphabet:";
    for (auto& l : a.alphabet)
        out += " " + quote(l);
    out += "\ninit: " + a.initial + "\ndelta:\n";
    for (const NftaTransition& t : a.transitions) {
        out += "(" + t.from + ", " + quote(t.label) + ") -> (";
        for (std::size_t i = 0; i < t.children.size(); ++i) {
            if (i)
                out += ", ";
            out += t.children[i];
        }
        out += ")\n";
    }
    return out;
}

bool accepts(const Nfta& a, const LabeledTree& t) {
    TransitionIndex idx = index_transitions(a);
    return possible_states(idx, t).count(a.initial) > 0;
}

std::vector<LabeledTree> enumerate_accepted(const Nfta& a, std::size_t max_size,
                                            const EnumerationLimits& limits) {
    if (max_size > limits.max_size)
        throw ResourceError("enumeration_cap", "",
                            "enumeration up to size " + std::to_string(max_size)
                                + " exceeds the supported maximum of "
                                + std::to_string(limits.max_size));

    TransitionIndex idx = index_transitions(a);

    // table[state][s] = distinct trees of size s reachable in that state
    std::map<std::string, std::vector<std::vector<LabeledTree>>> table;
    std::map<std::string, std::vector<std::set<std::string>>> seen;
    for (auto& s : a.states) {
        table[s].assign(max_size + 1, {});
        seen[s].assign(max_size + 1, {});
    }
    std::size_t stored = 0;

    auto add = [&](const std::string& state, std::size_t size, LabeledTree tree) {
        auto code = canonical_code(tree, CodeMode::Ordered).bytes;
        if (!seen.at(state)[size].insert(std::move(code)).second)
            return;
        if (++stored > limits.max_trees)
            throw ResourceError("enumeration_cap", "",
                                "enumeration exceeded " + std::to_string(limits.max_trees)
                                    + " stored trees");
        table.at(state)[size].push_back(std::move(tree));
    };

    for (std::size_t s = 1; s <= max_size; ++s) {
        for (const NftaTransition& tr : a.transitions) {
            std::size_t k = tr.children.size();
            if (k == 0) {
                if (s == 1)
                    add(tr.from, 1, LabeledTree{tr.label, {}});
                continue;
            }
            std::vector<std::size_t> sizes;
            for_each_composition(s - 1, k, sizes, [&](const std::vector<std::size_t>& split) {
                for (std::size_t i = 0; i < k; ++i) {
                    if (table.at(tr.children[i])[split[i]].empty())
                        return; // no tree fits this slot at this size
                }
                // odometer over one stored tree per child slot
                std::vector<std::size_t> pick(k, 0);
                while (true) {
                    LabeledTree t{tr.label, {}};
                    t.children.reserve(k);
                    for (std::size_t i = 0; i < k; ++i)
                        t.children.push_back(table.at(tr.children[i])[split[i]][pick[i]]);
                    add(tr.from, s, std::move(t));

                    std::size_t i = 0;
                    for (; i < k; ++i) {
                        if (++pick[i] < table.at(tr.children[i])[split[i]].size())
                            break;
                        pick[i] = 0;
                    }
                    if (i == k)
                        break;
                }
            });
        }
    }

    std::vector<LabeledTree> out;
    const auto& rows = table.at(a.initial);
    for (std::size_t s = 1; s <= max_size; ++s) {
        std::vector<LabeledTree> row = rows[s];
        std::sort(row.begin(), row.end(), [](const LabeledTree& x, const LabeledTree& y) {
            return canonical_code(x, CodeMode::Ordered).bytes
                   < canonical_code(y, CodeMode::Ordered).bytes;
        });
        for (auto& t : row)
            out.push_back(std::move(t));
    }
    return out;
}

DetTreeAutomaton determinize(const Nfta& a, std::size_t subset_cap) {
    DetTreeAutomaton d;
    d.arity = max_arity(a);
    TransitionIndex idx = index_transitions(a);

    std::map<std::set<std::string>, std::size_t> ids;
    auto subset_id = [&](std::set<std::string> subset) {
        auto it = ids.find(subset);
        if (it != ids.end())
            return it->second;
        if (d.subsets.size() >= subset_cap)
            throw ResourceError("determinization_cap", "",
                                "subset construction exceeded " + std::to_string(subset_cap)
                                    + " reachable subsets; try the enumeration method");
        std::size_t id = d.subsets.size();
        if (subset.count(a.initial))
            d.accepting.insert(id);
        d.subsets.push_back(subset);
        ids.emplace(std::move(subset), id);
        return id;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& [key, transitions] : idx) {
            const auto& [label, arity] = key;
            if (arity == 0) {
                std::pair<std::string, std::vector<std::size_t>> tk{label, {}};
                if (!d.transitions.count(tk)) {
                    std::set<std::string> to;
                    for (auto* t : transitions)
                        to.insert(t->from);
                    d.transitions.emplace(std::move(tk), subset_id(std::move(to)));
                    changed = true;
                }
                continue;
            }
            std::size_t known = d.subsets.size();
            if (known == 0)
                continue;
            std::vector<std::size_t> combo(arity, 0);
            while (true) {
                std::pair<std::string, std::vector<std::size_t>> tk{label, combo};
                if (!d.transitions.count(tk)) {
                    std::set<std::string> to;
                    for (auto* t : transitions) {
                        bool ok = true;
                        for (std::size_t i = 0; i < arity; ++i) {
                            if (!d.subsets[combo[i]].count(t->children[i])) {
                                ok = false;
                                break;
                            }
                        }
                        if (ok)
                            to.insert(t->from);
                    }
                    if (!to.empty()) {
                        d.transitions.emplace(std::move(tk), subset_id(std::move(to)));
                        changed = true;
                    }
                }
                std::size_t i = 0;
                for (; i < arity; ++i) {
                    if (++combo[i] < known)
                        break;
                    combo[i] = 0;
                }
                if (i == arity)
                    break;
            }
        }
    }
    return d;
}

std::optional<std::size_t> det_state(const DetTreeAutomaton& d, const LabeledTree& t) {
    std::vector<std::size_t> child_ids;
    child_ids.reserve(t.children.size());
    for (const LabeledTree& c : t.children) {
        auto id = det_state(d, c);
        if (!id)
            return std::nullopt;
        child_ids.push_back(*id);
    }
    auto it = d.transitions.find({t.label, child_ids});
    if (it == d.transitions.end())
        return std::nullopt;
    return it->second;
}

bool det_accepts(const DetTreeAutomaton& d, const LabeledTree& t) {
    auto id = det_state(d, t);
    return id && d.accepting.count(*id) > 0;
}

std::vector<BigCount> count_by_size(const Nfta& a, std::size_t max_size, std::size_t subset_cap) {
    DetTreeAutomaton det = determinize(a, subset_cap);
    std::size_t n = max_size;
    std::size_t states = det.subsets.size();

    // c[q][s]: distinct trees of size s that evaluate to det-state q.
    // Determinism makes every tree count exactly once.
    std::vector<std::vector<BigCount>> c(states, std::vector<BigCount>(n + 1));

    struct Row {
        const std::vector<std::size_t>* children;
        std::size_t target;
        // pc[j][u]: ways to fill the first j child slots with total size u
        std::vector<std::vector<BigCount>> pc;
    };
    std::vector<Row> rows;
    rows.reserve(det.transitions.size());
    for (auto& [key, target] : det.transitions) {
        Row r;
        r.children = &key.second;
        r.target = target;
        r.pc.assign(key.second.size() + 1, std::vector<BigCount>(n == 0 ? 0 : n, 0));
        if (n > 0)
            r.pc[0][0] = 1;
        rows.push_back(std::move(r));
    }

    for (std::size_t s = 1; s <= n; ++s) {
        std::size_t u = s - 1; // total size available for children
        for (Row& r : rows) {
            std::size_t k = r.children->size();
            for (std::size_t j = 1; j <= k; ++j) {
                BigCount acc = 0;
                const auto& child = c[(*r.children)[j - 1]];
                for (std::size_t v = 1; v <= u; ++v)
                    acc += r.pc[j - 1][u - v] * child[v];
                r.pc[j][u] = std::move(acc);
            }
            c[r.target][s] += r.pc[k][u];
        }
    }

    std::vector<BigCount> out(n + 1, 0);
    for (std::size_t s = 1; s <= n; ++s) {
        for (std::size_t q : det.accepting)
            out[s] += c[q][s];
    }
    return out;
}

BigCount count_exact(const Nfta& a, std::size_t max_size, bool cumulative,
                     std::size_t subset_cap) {
    auto by_size = count_by_size(a, max_size, subset_cap);
    if (!cumulative)
        return by_size.empty() ? BigCount(0) : by_size.back();
    BigCount total = 0;
    for (auto& v : by_size)
        total += v;
    return total;
}

} // namespace spantl
