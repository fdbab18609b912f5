// Acceptance gate: nine checks covering the toolkit end to end, one
// pass/fail line each. Returns nonzero if any check fails.
//
//   1. tuple-product worked example (exact, < 1 ms)
//   2. span vs compiled-automaton count across the machine corpus (< 60 s)
//   3. automaton counting vs brute-force enumeration on random automata (< 120 s)
//   4. known counting sequence for the single-label arity-<=2 automaton
//   5. well-behavedness guard on consecutive universal configurations
//   6. output invariants (root label, unordered canonical form)
//   7. configuration-graph soundness plus cycle rejection
//   8. determinization agrees with direct membership (exhaustive, < 60 s)
//   9. reduction wall-time scaling on growing inputs (< 10 s each)

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "oracles.hpp"
#include "spantl/comp_dag.hpp"
#include "spantl/computation.hpp"
#include "spantl/nfta.hpp"
#include "spantl/reduction.hpp"

using namespace spantl;
using testing::corpus_path;
using testing::read_file;

namespace {

// Pinned tolerances.
constexpr double kTupleProductBudgetMs = 1.0;
constexpr double kCrossCheckBudgetMs = 60'000.0;
constexpr double kOracleBudgetMs = 120'000.0;
constexpr double kDeterminizeBudgetMs = 60'000.0;
constexpr double kReducePerInputBudgetMs = 10'000.0;
constexpr std::size_t kRandomAutomata = 24;     // >= 20 required
constexpr std::size_t kOracleMaxSize = 6;       // tree sizes checked per automaton
constexpr std::size_t kExhaustiveTreeSize = 4;  // determinization check depth
constexpr unsigned kRandomSeed = 20260819;

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        pass = false;
        if (!detail.empty())
            detail += "; ";
        detail += why;
    }
};

const std::vector<std::string> kValidCorpus = {
    "ex1_forced_accept.ato",  "ex2_existential_choice.ato", "ex3_universal_pair.ato",
    "ex4_universal_chain.ato", "ex6_prefix_select.ato",      "ex7_reject_annihilation.ato",
    "ex8_tape_writer.ato",     "ex9_nested_universal.ato",   "ex10_dead_end.ato",
    "ex11_mirror.ato",
};

AtoMachine load(const std::string& name) {
    return parse_machine(read_file(corpus_path(name)));
}

bool word_fits(const AtoMachine& m, const std::string& w) {
    return std::all_of(w.begin(), w.end(), [&](char c) { return m.alphabet.count(c) > 0; });
}

// Inputs of length <= 6 tried against every machine whose alphabet covers them.
const std::vector<std::string> kInputs = {"",   "a",    "ab",   "abba", "aabbab",
                                          "d",  "dg",   "gddg", "g",    "gg",
                                          "b",  "ba",   "abab"};

Outcome criterion1() {
    Outcome o;
    TupleSet p1 = {{}, {"s1", "s2"}, {"s3"}};
    TupleSet p2 = {{"s5"}, {"s6", "s7"}};
    TupleSet expected = {{"s5"},       {"s6", "s7"},       {"s1", "s2", "s5"},
                         {"s1", "s2", "s6", "s7"}, {"s3", "s5"}, {"s3", "s6", "s7"}};

    TupleSet got = tuple_product({p1, p2});
    if (got != expected)
        o.fail("tuple product differs from the expected 6-tuple set");

    // Best of 100 timed runs; the work is far below a millisecond.
    double best = 1e9;
    for (int i = 0; i < 100; ++i) {
        double t0 = now_ms();
        TupleSet again = tuple_product({p1, p2});
        double t = now_ms() - t0;
        if (again.size() != 6)
            o.fail("unexpected product size");
        best = std::min(best, t);
    }
    if (best >= kTupleProductBudgetMs)
        o.fail("took " + std::to_string(best) + " ms, budget 1 ms");
    o.detail = o.pass ? "6 tuples, best " + std::to_string(best) + " ms" : o.detail;
    return o;
}

Outcome criterion2() {
    Outcome o;
    double t0 = now_ms();
    std::size_t pairs = 0;
    for (const auto& name : kValidCorpus) {
        AtoMachine m = load(name);
        for (const auto& w : kInputs) {
            if (w.size() > 6 || !word_fits(m, w))
                continue;
            auto span = span_exact(m, w, m.bounds, CodeMode::Ordered);
            Nfta a = build_nfta(m, w, m.bounds);
            BigCount count = count_exact(a, size_bound(m, m.bounds), true);
            ++pairs;
            if (count != span)
                o.fail(name + " on '" + w + "': span " + std::to_string(span) + " vs count "
                       + count.str());
        }
    }
    double elapsed = now_ms() - t0;
    if (pairs < 8)
        o.fail("fewer than 8 machine/input pairs exercised");
    if (elapsed >= kCrossCheckBudgetMs)
        o.fail("suite took " + std::to_string(elapsed) + " ms, budget 60 s");
    if (o.pass)
        o.detail = std::to_string(pairs) + " machine/input pairs, "
                   + std::to_string(static_cast<long>(elapsed)) + " ms";
    return o;
}

Outcome criterion3() {
    Outcome o;
    double t0 = now_ms();
    std::mt19937 rng(kRandomSeed);
    for (std::size_t trial = 0; trial < kRandomAutomata; ++trial) {
        Nfta a = testing::random_nfta(rng);
        auto counts = count_by_size(a, kOracleMaxSize);
        for (std::size_t n = 1; n <= kOracleMaxSize; ++n) {
            auto brute = testing::brute_force_count(a, n);
            if (counts[n] != brute) {
                o.fail("trial " + std::to_string(trial) + ", size " + std::to_string(n) + ": dp "
                       + counts[n].str() + " vs brute " + std::to_string(brute));
            }
        }
    }
    double elapsed = now_ms() - t0;
    if (elapsed >= kOracleBudgetMs)
        o.fail("took " + std::to_string(elapsed) + " ms, budget 120 s");
    if (o.pass)
        o.detail = std::to_string(kRandomAutomata) + " automata x sizes 1..6, "
                   + std::to_string(static_cast<long>(elapsed)) + " ms";
    return o;
}

Outcome criterion4() {
    Outcome o;
    Nfta a = parse_nfta(read_file(corpus_path("motzkin.nfta")));
    auto counts = count_by_size(a, 6);
    std::vector<BigCount> expected = {0, 1, 1, 2, 4, 9, 21};
    if (counts != expected) {
        std::string got;
        for (std::size_t i = 1; i < counts.size(); ++i)
            got += (i > 1 ? "," : "") + counts[i].str();
        o.fail("per-size counts " + got + " differ from 1,1,2,4,9,21");
    } else {
        o.detail = "counts 1,1,2,4,9,21 for sizes 1..6";
    }
    return o;
}

Outcome criterion5() {
    Outcome o;
    AtoMachine m = load("ex4_universal_chain.ato");
    std::vector<ComputationTree> all = collect_computations(m, "", m.bounds);
    if (all.size() != 1) {
        o.fail("expected exactly one computation");
        return o;
    }
    ResourceBounds k1 = m.bounds;
    k1.universal_branch_limit = 1;
    auto tight = check_well_behaved(m, all[0], k1);
    if (tight.size() != 1 || tight[0].kind != "universal-path")
        o.fail("k=1 produced " + std::to_string(tight.size()) + " violations, expected one path violation");
    ResourceBounds k2 = m.bounds;
    k2.universal_branch_limit = 2;
    if (!check_well_behaved(m, all[0], k2).empty())
        o.fail("k=2 still reports violations");
    if (o.pass)
        o.detail = "k=1: one path violation; k=2: clean";
    return o;
}

Outcome criterion6() {
    Outcome o;
    std::size_t checked = 0;
    for (const auto& name : kValidCorpus) {
        AtoMachine m = load(name);
        enumerate_computations(m, "", m.bounds, [&](const ComputationTree& t) {
            ++checked;
            LabeledTree ordered = extract_output(m, t, CodeMode::Ordered);
            if (!ordered.label.empty())
                o.fail(name + ": output root label is not empty");
            LabeledTree unordered = extract_output(m, t, CodeMode::Unordered);
            if (canonical_code(unordered, CodeMode::Unordered)
                != canonical_code(ordered, CodeMode::Unordered))
                o.fail(name + ": unordered extraction does not match the ordered tree's unordered code");
            if (serialize_tree(unordered) != serialize_tree(sort_unordered(ordered)))
                o.fail(name + ": unordered extraction is not the sorted representative");
        });
    }
    if (checked == 0)
        o.fail("no computations enumerated");
    if (o.pass)
        o.detail = std::to_string(checked) + " computations checked";
    return o;
}

Outcome criterion7() {
    Outcome o;
    std::size_t checked = 0;
    for (const auto& name : kValidCorpus) {
        AtoMachine m = load(name);
        ComputationDag dag = build_dag(m, "", m.bounds);
        std::function<void(const ComputationTree&)> walk = [&](const ComputationTree& t) {
            ++checked;
            if (!dag.nodes.count(configuration_key(t.config)))
                o.fail(name + ": computation configuration missing from the graph");
            for (const auto& c : t.children)
                walk(c);
        };
        enumerate_computations(m, "", m.bounds, walk);
    }
    bool cycle_caught = false;
    try {
        AtoMachine looping = load("ex5_loop.ato");
        build_dag(looping, "", looping.bounds);
    } catch (const CycleError&) {
        cycle_caught = true;
    }
    if (!cycle_caught)
        o.fail("the looping machine did not raise a cycle error");
    if (checked == 0)
        o.fail("no configurations checked");
    if (o.pass)
        o.detail = std::to_string(checked) + " configurations checked; cycle rejected";
    return o;
}

Outcome criterion8() {
    Outcome o;
    double t0 = now_ms();
    std::vector<Nfta> automata;
    automata.push_back(parse_nfta(read_file(corpus_path("motzkin.nfta"))));
    for (const auto& name : kValidCorpus) {
        AtoMachine m = load(name);
        automata.push_back(build_nfta(m, "", m.bounds));
    }
    std::mt19937 rng(kRandomSeed + 1);
    for (std::size_t i = 0; i < 10; ++i)
        automata.push_back(testing::random_nfta(rng));

    std::size_t trees_checked = 0;
    for (const Nfta& a : automata) {
        DetTreeAutomaton d = determinize(a);
        std::vector<std::string> labels(a.alphabet.begin(), a.alphabet.end());
        std::size_t arity = std::max<std::size_t>(max_arity(a), 1);
        for (std::size_t s = 1; s <= kExhaustiveTreeSize; ++s) {
            for (const LabeledTree& t : testing::all_trees(labels, arity, s)) {
                ++trees_checked;
                if (det_accepts(d, t) != accepts(a, t))
                    o.fail("determinized membership differs on " + serialize_tree(t));
            }
        }
    }
    double elapsed = now_ms() - t0;
    if (elapsed >= kDeterminizeBudgetMs)
        o.fail("took " + std::to_string(elapsed) + " ms, budget 60 s");
    if (o.pass)
        o.detail = std::to_string(automata.size()) + " automata, "
                   + std::to_string(trees_checked) + " trees, "
                   + std::to_string(static_cast<long>(elapsed)) + " ms";
    return o;
}

// Spawns the command line tool once, returning wall milliseconds or -1.
double timed_cli(const std::string& args) {
    std::string cmd = std::string(SPANTL_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    double t0 = now_ms();
    int rc = std::system(cmd.c_str());
    double t = now_ms() - t0;
    if (rc == -1 || !WIFEXITED(rc) || WEXITSTATUS(rc) != 0)
        return -1;
    return t;
}

Outcome criterion9() {
    Outcome o;
    const std::vector<std::string> words = {"ab", "abab", "ababab", "abababab"};
    std::string out = (std::filesystem::temp_directory_path() / "spantl_acceptance.nfta").string();
    std::vector<double> best(words.size(), 1e18);
    for (int round = 0; round < 5; ++round) {
        for (std::size_t i = 0; i < words.size(); ++i) {
            double t = timed_cli("reduce " + corpus_path("ex6_prefix_select.ato") + " " + words[i]
                                 + " --out " + out);
            if (t < 0) {
                o.fail("reduction failed on input length " + std::to_string(words[i].size()));
                return o;
            }
            best[i] = std::min(best[i], t);
        }
    }
    std::filesystem::remove(out);

    for (std::size_t i = 0; i < words.size(); ++i) {
        if (best[i] >= kReducePerInputBudgetMs)
            o.fail("input length " + std::to_string(words[i].size()) + " took "
                   + std::to_string(best[i]) + " ms, budget 10 s");
    }
    // Sub-exponential band: the growth ratio may not blow up by 8x per step.
    double floor_ms = 0.1; // guards the ratios against sub-timer-resolution runs
    double t4 = std::max(best[1], floor_ms);
    double t6 = std::max(best[2], floor_ms);
    double t8 = std::max(best[3], floor_ms);
    if (t8 / t6 >= 8.0 * (t6 / t4))
        o.fail("growth ratio " + std::to_string(t8 / t6) + " exceeds band "
               + std::to_string(8.0 * (t6 / t4)));
    if (o.pass) {
        std::ostringstream ss;
        ss.precision(2);
        ss << std::fixed << "best ms for |w|=2,4,6,8: " << best[0] << ", " << best[1] << ", "
           << best[2] << ", " << best[3];
        o.detail = ss.str();
    }
    return o;
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        Outcome (*fn)();
    };
    const Criterion criteria[] = {
        {"tuple-product worked example", criterion1},
        {"span equals compiled-automaton count on the corpus", criterion2},
        {"automaton counts match brute-force enumeration", criterion3},
        {"known arity-<=2 counting sequence", criterion4},
        {"well-behavedness guard on universal chains", criterion5},
        {"output root label and unordered canonical form", criterion6},
        {"configuration-graph soundness and cycle rejection", criterion7},
        {"determinization preserves the language", criterion8},
        {"reduction wall-time scaling", criterion9},
    };

    int failures = 0;
    int index = 0;
    for (const Criterion& c : criteria) {
        ++index;
        Outcome o;
        try {
            o = c.fn();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        if (!o.pass)
            ++failures;
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << index << ". " << c.name
                  << (o.detail.empty() ? "" : " — " + o.detail) << "\n";
    }
    return failures == 0 ? 0 : 1;
}
