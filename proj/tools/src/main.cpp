// Command line surface for the span toolkit: validate machine files,
// simulate computations, count distinct outputs, compile machines to tree
// automata, count automaton languages, and cross-check the two counts.
//
// Exit codes: 0 success/agreement, 1 validation failure, 2 I/O or parse
// failure, 3 resource/bound/cycle failure, 4 cross-check disagreement.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "spantl/comp_dag.hpp"
#include "spantl/computation.hpp"
#include "spantl/nfta.hpp"
#include "spantl/reduction.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace spantl;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;
constexpr int kExitResource = 3;
constexpr int kExitDisagreement = 4;

struct Stopwatch {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

// One run's machine-readable record; the text renderer uses `lines`.
struct Report {
    std::string command;
    json params = json::object();
    json counts = json::object();
    json timings_ms = json::object();
    std::vector<Violation> violations;
    std::string error;
    int exit_status = kExitOk;
    std::vector<std::string> lines;

    void say(const std::string& line) { lines.push_back(line); }

    json to_json() const {
        json vs = json::array();
        for (const auto& v : violations)
            vs.push_back({{"kind", v.kind}, {"message", v.message}});
        return json{{"command", command},   {"params", params},
                    {"counts", counts},     {"timings_ms", timings_ms},
                    {"violations", vs},     {"error", error.empty() ? json() : json(error)},
                    {"exit_status", exit_status}};
    }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot open file for writing: " + path);
    out << text;
    if (!out)
        throw Error("write failed: " + path);
}

// "max_nodes=..,tape_cap=..,k=.." — keys not mentioned keep the file value.
void apply_bounds_override(const std::string& overrides, ResourceBounds& bounds) {
    std::stringstream ss(overrides);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            continue;
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw Error("bounds override entries have the form key=value, got '" + item + "'");
        std::string key = item.substr(0, eq);
        std::size_t value = 0;
        try {
            value = std::stoull(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw Error("bounds override value must be a nonnegative integer, got '" + item + "'");
        }
        if (key == "max_nodes")
            bounds.max_computation_nodes = value;
        else if (key == "tape_cap")
            bounds.tape_cap = value;
        else if (key == "k")
            bounds.universal_branch_limit = value;
        else
            throw Error("unknown bounds override key '" + key + "'");
    }
}

AtoMachine load_machine(const std::string& path, const std::string& bounds_override) {
    AtoMachine m = parse_machine(read_file(path));
    if (!bounds_override.empty())
        apply_bounds_override(bounds_override, m.bounds);
    return m;
}

// The computation rendered as a tree term over configuration keys.
LabeledTree key_tree(const ComputationTree& t) {
    LabeledTree out;
    out.label = configuration_key(t.config);
    out.children.reserve(t.children.size());
    for (const auto& c : t.children)
        out.children.push_back(key_tree(c));
    return out;
}

struct CommonFlags {
    std::string format = "text";
    std::string bounds_override;

    bool machine_readable() const { return format == "machine-readable"; }
};

void cmd_validate(Report& r, const std::string& machine_path) {
    AtoMachine m = parse_machine_unchecked(read_file(machine_path));
    r.violations = validate_machine(m);
    r.counts["violations"] = r.violations.size();
    r.counts["states"] = m.states.size();
    r.counts["rules"] = m.delta.size();
    for (const auto& v : r.violations)
        r.say("[" + v.kind + "] " + v.message);
    if (r.violations.empty()) {
        r.say("validation: clean");
    } else {
        r.say("validation: " + std::to_string(r.violations.size()) + " violation"
              + (r.violations.size() == 1 ? "" : "s"));
        r.exit_status = kExitValidation;
    }
}

void cmd_run(Report& r, const std::string& machine_path, const std::string& input,
             const CommonFlags& common, bool list) {
    AtoMachine m = load_machine(machine_path, common.bounds_override);
    std::size_t total = 0;
    std::size_t accepting = 0;
    std::size_t well_behaved_violations = 0;
    enumerate_computations(m, input, m.bounds, [&](const ComputationTree& t) {
        ++total;
        bool ok = is_accepting_computation(m, t);
        if (ok)
            ++accepting;
        well_behaved_violations += check_well_behaved(m, t, m.bounds).size();
        if (list)
            r.say(std::string("computation ") + std::to_string(total)
                  + (ok ? " (accepting): " : " (rejecting): ") + serialize_tree(key_tree(t)));
    });
    r.counts["computations"] = total;
    r.counts["accepting"] = accepting;
    r.counts["well_behaved_violations"] = well_behaved_violations;
    r.say("computations: " + std::to_string(total));
    r.say("accepting: " + std::to_string(accepting));
    if (well_behaved_violations > 0) {
        r.say("well-behavedness violations: " + std::to_string(well_behaved_violations));
        r.exit_status = kExitValidation;
    }
}

void cmd_span(Report& r, const std::string& machine_path, const std::string& input,
              const CommonFlags& common, const std::string& mode_name, bool list) {
    AtoMachine m = load_machine(machine_path, common.bounds_override);
    CodeMode mode = mode_name == "unordered" ? CodeMode::Unordered : CodeMode::Ordered;
    r.params["mode"] = mode_name;
    if (list) {
        auto outputs = distinct_outputs(m, input, m.bounds, mode);
        r.counts["span"] = outputs.size();
        r.say("span (" + mode_name + "): " + std::to_string(outputs.size()));
        for (const auto& text : outputs)
            r.say(text);
    } else {
        auto span = span_exact(m, input, m.bounds, mode);
        r.counts["span"] = span;
        r.say("span (" + mode_name + "): " + std::to_string(span));
    }
}

void cmd_reduce(Report& r, const std::string& machine_path, const std::string& input,
                const CommonFlags& common, const std::string& out_path) {
    AtoMachine m = load_machine(machine_path, common.bounds_override);
    Nfta a = build_nfta(m, input, m.bounds);
    std::size_t bound = size_bound(m, m.bounds);
    r.counts["states"] = a.states.size();
    r.counts["transitions"] = a.transitions.size();
    r.counts["alphabet"] = a.alphabet.size();
    r.counts["max_arity"] = max_arity(a);
    r.counts["size_bound"] = bound;
    r.say("states: " + std::to_string(a.states.size()));
    r.say("transitions: " + std::to_string(a.transitions.size()));
    r.say("alphabet: " + std::to_string(a.alphabet.size()));
    r.say("max arity: " + std::to_string(max_arity(a)));
    r.say("size bound: " + std::to_string(bound));
    if (!out_path.empty()) {
        write_file(out_path, serialize_nfta(a));
        r.params["out"] = out_path;
        r.say("written: " + out_path);
    } else if (!common.machine_readable()) {
        r.say(serialize_nfta(a));
    }
}

void cmd_count(Report& r, const std::string& nfta_path, std::size_t size, bool cumulative,
               const std::string& method) {
    Nfta a = parse_nfta(read_file(nfta_path));
    r.params["size"] = size;
    r.params["cumulative"] = cumulative;
    r.params["method"] = method;
    BigCount total = 0;
    if (method == "enum") {
        for (const LabeledTree& t : enumerate_accepted(a, size)) {
            if (cumulative || tree_size(t) == size)
                ++total;
        }
    } else {
        total = count_exact(a, size, cumulative);
    }
    r.counts["count"] = total.str();
    r.say(std::string("count (") + (cumulative ? "size <= " : "size = ") + std::to_string(size)
          + ", method " + method + "): " + total.str());
}

void cmd_check(Report& r, const std::string& machine_path, const std::string& input,
               const CommonFlags& common) {
    AtoMachine m = load_machine(machine_path, common.bounds_override);

    Stopwatch t_span_ordered;
    auto span_ordered = span_exact(m, input, m.bounds, CodeMode::Ordered);
    r.timings_ms["span_ordered"] = t_span_ordered.ms();

    Stopwatch t_span_unordered;
    auto span_unordered = span_exact(m, input, m.bounds, CodeMode::Unordered);
    r.timings_ms["span_unordered"] = t_span_unordered.ms();

    Stopwatch t_reduce;
    Nfta a = build_nfta(m, input, m.bounds);
    r.timings_ms["reduce"] = t_reduce.ms();
    std::size_t bound = size_bound(m, m.bounds);

    Stopwatch t_count;
    BigCount automaton_count = count_exact(a, bound, true);
    r.timings_ms["count"] = t_count.ms();

    Stopwatch t_enumerate;
    std::set<std::string> unordered_codes;
    for (const LabeledTree& t : enumerate_accepted(a, bound))
        unordered_codes.insert(canonical_code(t, CodeMode::Unordered).bytes);
    r.timings_ms["enumerate"] = t_enumerate.ms();

    r.counts["span_ordered"] = span_ordered;
    r.counts["span_unordered"] = span_unordered;
    r.counts["automaton_count"] = automaton_count.str();
    r.counts["automaton_unordered_classes"] = unordered_codes.size();

    r.say("span (ordered): " + std::to_string(span_ordered));
    r.say("span (unordered): " + std::to_string(span_unordered));
    r.say("automaton count (size <= " + std::to_string(bound) + "): " + automaton_count.str());
    r.say("automaton outputs (unordered classes): " + std::to_string(unordered_codes.size()));

    if (span_ordered != span_unordered)
        r.say("INFO: ordered and unordered spans diverge (sibling order carries information)");

    bool agree = automaton_count == span_ordered;
    r.say(std::string("check: ") + (agree ? "PASS" : "FAIL")
          + " (ordered span == automaton count)");
    if (!agree)
        r.exit_status = kExitDisagreement;
}

void cmd_dag(Report& r, const std::string& machine_path, const std::string& input,
             const CommonFlags& common, const std::string& export_path) {
    AtoMachine m = load_machine(machine_path, common.bounds_override);
    ComputationDag dag = build_dag(m, input, m.bounds);
    DagStats stats = dag_stats(m, dag);
    r.counts["nodes"] = stats.node_count;
    r.counts["edges"] = stats.edge_count;
    r.counts["depth"] = stats.depth;
    r.counts["accepting"] = stats.accepting;
    r.counts["rejecting"] = stats.rejecting;
    r.counts["existential"] = stats.existential;
    r.counts["universal"] = stats.universal;
    r.counts["labeling"] = stats.labeling;
    r.counts["dead_ends"] = stats.dead_ends;
    r.say("nodes: " + std::to_string(stats.node_count));
    r.say("edges: " + std::to_string(stats.edge_count));
    r.say("depth: " + std::to_string(stats.depth));
    r.say("accepting: " + std::to_string(stats.accepting));
    r.say("rejecting: " + std::to_string(stats.rejecting));
    r.say("existential: " + std::to_string(stats.existential));
    r.say("universal: " + std::to_string(stats.universal));
    r.say("labeling: " + std::to_string(stats.labeling));
    r.say("dead ends: " + std::to_string(stats.dead_ends));
    if (!export_path.empty()) {
        std::string text = export_edge_list(dag);
        if (export_path == "-") {
            r.say(text);
        } else {
            write_file(export_path, text);
            r.params["export"] = export_path;
            r.say("written: " + export_path);
        }
    }
}

void emit(const Report& r, bool machine_readable) {
    if (machine_readable) {
        std::cout << r.to_json().dump(2) << "\n";
    } else {
        for (const auto& line : r.lines)
            std::cout << line << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Alternating-machine span toolkit: simulate machines with output,\n"
                 "count their distinct output trees, compile them to tree automata,\n"
                 "count automaton languages, and cross-check the counts."};
    app.require_subcommand(1);

    CommonFlags common;
    std::string machine_path;
    std::string nfta_path;
    std::string input;
    std::string mode_name = "ordered";
    std::string out_path;
    std::string export_path;
    std::size_t size = 0;
    bool cumulative = false;
    std::string method = "dp";
    bool list = false;

    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", common.format, "Output format")
            ->check(CLI::IsMember({"text", "machine-readable"}))
            ->capture_default_str();
    };
    auto add_bounds = [&](CLI::App* cmd) {
        cmd->add_option("--bounds", common.bounds_override,
                        "Override declared bounds: max_nodes=..,tape_cap=..,k=..");
    };
    auto add_machine = [&](CLI::App* cmd) {
        cmd->add_option("machine", machine_path, "Machine description file")->required();
    };
    auto add_input = [&](CLI::App* cmd) {
        cmd->add_option("input", input, "Input word (defaults to the empty word)");
    };

    CLI::App* validate = app.add_subcommand("validate", "Check a machine file for violations");
    add_machine(validate);
    add_format(validate);

    CLI::App* run = app.add_subcommand("run", "Enumerate the computations on an input");
    add_machine(run);
    add_input(run);
    run->add_flag("--list", list, "Print each computation as a tree term");
    add_bounds(run);
    add_format(run);

    CLI::App* span = app.add_subcommand("span", "Count distinct valid outputs on an input");
    add_machine(span);
    add_input(span);
    span->add_option("--mode", mode_name, "Sibling-order reading of outputs")
        ->check(CLI::IsMember({"ordered", "unordered"}))
        ->capture_default_str();
    span->add_flag("--list", list, "Print each distinct output term");
    add_bounds(span);
    add_format(span);

    CLI::App* reduce = app.add_subcommand("reduce", "Compile machine plus input to a tree automaton");
    add_machine(reduce);
    add_input(reduce);
    reduce->add_option("--out", out_path, "Write the automaton to this file");
    add_bounds(reduce);
    add_format(reduce);

    CLI::App* count = app.add_subcommand("count", "Count the trees an automaton accepts");
    count->add_option("automaton", nfta_path, "Automaton description file")->required();
    count->add_option("--size", size, "Tree size (node count) of interest")->required();
    count->add_flag("--cumulative", cumulative, "Count all sizes up to --size");
    count->add_option("--method", method, "Counting method")
        ->check(CLI::IsMember({"dp", "enum"}))
        ->capture_default_str();
    add_format(count);

    CLI::App* check = app.add_subcommand(
        "check", "Cross-check the span against the compiled automaton's count");
    add_machine(check);
    add_input(check);
    add_bounds(check);
    add_format(check);

    CLI::App* dag = app.add_subcommand("dag", "Configuration-graph statistics and export");
    add_machine(dag);
    add_input(dag);
    dag->add_option("--export", export_path, "Write the edge list ('-' for stdout)");
    add_bounds(dag);
    add_format(dag);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitIo;
    }

    Report r;
    r.params["machine"] = machine_path;
    Stopwatch total;
    try {
        if (app.got_subcommand(validate)) {
            r.command = "validate";
            cmd_validate(r, machine_path);
        } else if (app.got_subcommand(run)) {
            r.command = "run";
            r.params["input"] = input;
            cmd_run(r, machine_path, input, common, list);
        } else if (app.got_subcommand(span)) {
            r.command = "span";
            r.params["input"] = input;
            cmd_span(r, machine_path, input, common, mode_name, list);
        } else if (app.got_subcommand(reduce)) {
            r.command = "reduce";
            r.params["input"] = input;
            cmd_reduce(r, machine_path, input, common, out_path);
        } else if (app.got_subcommand(count)) {
            r.command = "count";
            r.params.erase("machine");
            r.params["automaton"] = nfta_path;
            cmd_count(r, nfta_path, size, cumulative, method);
        } else if (app.got_subcommand(check)) {
            r.command = "check";
            r.params["input"] = input;
            cmd_check(r, machine_path, input, common);
        } else if (app.got_subcommand(dag)) {
            r.command = "dag";
            r.params["input"] = input;
            cmd_dag(r, machine_path, input, common, export_path);
        }
    } catch (const ParseError& e) {
        r.error = e.what();
        r.say(std::string("error: ") + e.what());
        r.exit_status = kExitIo;
    } catch (const ValidationError& e) {
        r.violations = e.violations();
        for (const auto& v : r.violations)
            r.say("[" + v.kind + "] " + v.message);
        r.error = "validation failed";
        r.say("error: validation failed");
        r.exit_status = kExitValidation;
    } catch (const ResourceError& e) {
        r.error = e.what();
        r.say(std::string("error: ") + e.what());
        r.exit_status = kExitResource;
    } catch (const CycleError& e) {
        r.error = e.what();
        r.say(std::string("error: ") + e.what());
        r.exit_status = kExitResource;
    } catch (const Error& e) {
        r.error = e.what();
        r.say(std::string("error: ") + e.what());
        r.exit_status = kExitIo;
    } catch (const std::exception& e) {
        r.error = e.what();
        r.say(std::string("error: ") + e.what());
        r.exit_status = kExitIo;
    }
    r.timings_ms["total"] = total.ms();
    emit(r, common.machine_readable());
    return r.exit_status;
}
