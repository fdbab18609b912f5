// Microbenchmarks for the hot paths: machine-to-automaton compilation on
// growing inputs, the counting dynamic program, span enumeration, and
// canonical tree codes.

#include <algorithm>
#include <random>
#include <string>

#include <benchmark/benchmark.h>

#include "spantl/computation.hpp"
#include "spantl/nfta.hpp"
#include "spantl/reduction.hpp"

namespace {

using namespace spantl;

// Input-scanning machine: guesses a stopping point and emits the prefix
// read so far. Its configuration graph grows linearly with the input.
AtoMachine prefix_machine(std::size_t input_length) {
    AtoMachine m = parse_machine(
        "states: init scan emit acc rej\nalphabet: a b\ninit: init\naccept: acc\n"
        "reject: rej\nexistential: init scan emit\nuniversal:\nlabeling: init emit\n"
        "bounds: max_nodes=64 tape_cap=16 k=1\ndelta:\n"
        "(init, >, >) -> (scan, +1, 0, >, \"\")\n"
        "(scan, a, >) -> (scan, +1, 0, >, \"a\")\n"
        "(scan, a, >) -> (emit, 0, 0, >, \"\")\n"
        "(scan, b, >) -> (scan, +1, 0, >, \"b\")\n"
        "(scan, b, >) -> (emit, 0, 0, >, \"\")\n"
        "(scan, _, >) -> (emit, 0, 0, >, \"\")\n"
        "(emit, a, >) -> (acc, 0, 0, >, \"\")\n"
        "(emit, b, >) -> (acc, 0, 0, >, \"\")\n"
        "(emit, _, >) -> (acc, 0, 0, >, \"\")\n");
    // the label tape holds the emitted prefix; scale both caps with |w|
    m.bounds.max_computation_nodes = 4 * input_length + 16;
    m.bounds.tape_cap = input_length + 2;
    return m;
}

std::string word(std::size_t n) {
    std::string w;
    for (std::size_t i = 0; i < n; ++i)
        w.push_back(i % 2 ? 'b' : 'a');
    return w;
}

Nfta motzkin() {
    return parse_nfta("states: q\nalphabet: \"a\"\ninit: q\ndelta:\n"
                      "(q, \"a\") -> ()\n(q, \"a\") -> (q)\n(q, \"a\") -> (q, q)\n");
}

LabeledTree random_tree(std::mt19937& rng, std::size_t nodes) {
    LabeledTree root{"r", {}};
    std::vector<LabeledTree*> open = {&root};
    std::uniform_int_distribution<std::size_t> pick_label(0, 2);
    static const char* labels[] = {"a", "b", "c"};
    for (std::size_t i = 1; i < nodes; ++i) {
        std::uniform_int_distribution<std::size_t> pick(0, open.size() - 1);
        LabeledTree* parent = open[pick(rng)];
        parent->children.push_back(LabeledTree{labels[pick_label(rng)], {}});
        if (parent->children.size() >= 4) // keep arity bounded
            open.erase(std::find(open.begin(), open.end(), parent));
        open.push_back(&parent->children.back());
    }
    return root;
}

void BM_BuildNfta(benchmark::State& state) {
    std::size_t n = static_cast<std::size_t>(state.range(0));
    AtoMachine m = prefix_machine(n);
    std::string w = word(n);
    for (auto _ : state)
        benchmark::DoNotOptimize(build_nfta(m, w, m.bounds));
    state.SetComplexityN(static_cast<benchmark::IterationCount>(n));
}
BENCHMARK(BM_BuildNfta)->RangeMultiplier(2)->Range(2, 32)->Complexity();

void BM_SpanExact(benchmark::State& state) {
    std::size_t n = static_cast<std::size_t>(state.range(0));
    AtoMachine m = prefix_machine(n);
    std::string w = word(n);
    for (auto _ : state)
        benchmark::DoNotOptimize(span_exact(m, w, m.bounds, CodeMode::Ordered));
    state.SetComplexityN(static_cast<benchmark::IterationCount>(n));
}
BENCHMARK(BM_SpanExact)->RangeMultiplier(2)->Range(2, 32)->Complexity();

void BM_CountExact(benchmark::State& state) {
    std::size_t n = static_cast<std::size_t>(state.range(0));
    Nfta a = motzkin();
    for (auto _ : state)
        benchmark::DoNotOptimize(count_exact(a, n, true));
    state.SetComplexityN(static_cast<benchmark::IterationCount>(n));
}
BENCHMARK(BM_CountExact)->RangeMultiplier(2)->Range(8, 256)->Complexity();

void BM_CanonicalCodeOrdered(benchmark::State& state) {
    std::mt19937 rng(7);
    LabeledTree t = random_tree(rng, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(canonical_code(t, CodeMode::Ordered));
}
BENCHMARK(BM_CanonicalCodeOrdered)->RangeMultiplier(4)->Range(16, 4096);

void BM_CanonicalCodeUnordered(benchmark::State& state) {
    std::mt19937 rng(7);
    LabeledTree t = random_tree(rng, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(canonical_code(t, CodeMode::Unordered));
}
BENCHMARK(BM_CanonicalCodeUnordered)->RangeMultiplier(4)->Range(16, 4096);

} // namespace

BENCHMARK_MAIN();
