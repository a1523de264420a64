#include "afsm/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "afsm/bench.hpp"
#include "afsm/bisimulation.hpp"
#include "afsm/compositional.hpp"
#include "afsm/expansion.hpp"
#include "afsm/format.hpp"

namespace afsm {

namespace {

using Stat = std::variant<std::uint64_t, double, std::string>;

struct RunReport {
    std::string command;
    std::vector<std::string> inputs;
    std::optional<bool> verdict;
    std::map<std::string, Stat> statistics;
    std::vector<std::string> outputs;

    void count(const std::string& key, const boost::multiprecision::cpp_int& v) {
        if (v <= std::numeric_limits<std::uint64_t>::max()) {
            statistics[key] = v.convert_to<std::uint64_t>();
        } else {
            statistics[key] = v.str();
        }
    }
};

struct Flags {
    bool json = false;
    std::string output;
};

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text)) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
}

void print_report(const RunReport& r, const Flags& flags, std::ostream& out) {
    if (flags.json) {
        nlohmann::ordered_json j;
        j["command"] = r.command;
        j["inputs"] = r.inputs;
        j["verdict"] = r.verdict ? nlohmann::ordered_json(*r.verdict) : nlohmann::ordered_json();
        auto& stats = j["statistics"] = nlohmann::ordered_json::object();
        for (const auto& [k, v] : r.statistics) {
            std::visit([&](const auto& x) { stats[k] = x; }, v);
        }
        j["outputs"] = r.outputs;
        out << j.dump(2) << '\n';
        return;
    }
    if (r.verdict) {
        out << "verdict: " << (*r.verdict ? "yes" : "no") << '\n';
    }
    for (const auto& [k, v] : r.statistics) {
        out << k << ": ";
        std::visit(
            [&](const auto& x) {
                if constexpr (std::is_same_v<std::decay_t<decltype(x)>, double>) {
                    out << std::fixed << std::setprecision(3) << x << std::defaultfloat;
                } else {
                    out << x;
                }
            },
            v);
        out << '\n';
    }
    for (const auto& p : r.outputs) {
        out << "wrote: " << p << '\n';
    }
}

const Fsm& need_fsm(const ModelDocument& doc, const std::string& name) {
    if (const auto* f = doc.find_fsm(name)) {
        return *f;
    }
    throw std::runtime_error("no fsm named '" + name + "' in " + doc.source);
}

const Arena& need_arena(const ModelDocument& doc, const std::string& name) {
    if (const auto* a = doc.find_arena(name)) {
        return *a;
    }
    throw std::runtime_error("no arena named '" + name + "' in " + doc.source);
}

double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

// Witness listings are plain text and precede the report.
void print_relation(const Fsm& m1, const Fsm& m2, const Relation& r, std::ostream& out) {
    out << "relation (" << r.size() << " pairs):\n";
    for (auto [a, b] : r.pairs) {
        out << "  " << m1.state_name(a) << " ~ " << m2.state_name(b) << '\n';
    }
}

void print_classes(const MachineClasses& c, const std::vector<const Arena*>& arenas, std::ostream& out) {
    out << "classes (" << c.size() << "):\n";
    for (std::uint32_t k = 0; k < c.size(); ++k) {
        out << "  " << MachineClasses::token(k) << ":";
        for (const auto& ref : c.classes[k]) {
            out << ' ';
            if (arenas.size() > 1) {
                out << arenas[ref.arena]->id() << '/';
            }
            out << arenas[ref.arena]->vertex(ref.vertex).id;
        }
        out << '\n';
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Arenas of finite state machines: expansion, bisimulation, compositional reduction", "afsm"};
    app.require_subcommand(1);

    Flags flags;
    std::size_t max_states = kDefaultMaxStates;
    bool witness = false;
    bool oracle = false;
    bool accessible = false;
    std::vector<std::string> pos;
    std::string family = "star";
    std::size_t n_max = 20;
    std::string csv;

    auto common = [&](CLI::App* sub) {
        sub->add_flag("--json", flags.json, "Machine-readable report");
        sub->add_option("-o,--output", flags.output, "Output file");
    };

    auto* check_bisim = app.add_subcommand("check-bisim", "Bisimilarity of two machines");
    check_bisim->add_option("args", pos, "FILE FSM1 FSM2 | FILE1 FSM1 FILE2 FSM2")->required()->expected(3, 4);
    check_bisim->add_flag("--witness", witness, "Print the maximal bisimulation");
    check_bisim->add_flag("--oracle", oracle, "Cross-check against the naive fixpoint");
    common(check_bisim);

    auto* expand_cmd = app.add_subcommand("expand", "Expand an arena into a flat machine");
    expand_cmd->add_option("args", pos, "FILE ARENA")->required()->expected(2);
    expand_cmd->add_flag("--accessible", accessible, "Keep only states reachable from the initial state");
    expand_cmd->add_option("--max-states", max_states, "Expansion guard");
    common(expand_cmd);

    auto* minimize = app.add_subcommand("minimize", "Quotient of a machine by its self-bisimulation");
    minimize->add_option("args", pos, "FILE FSM")->required()->expected(2);
    common(minimize);

    auto* comp = app.add_subcommand("check-comp-bisim", "Compositional bisimilarity of two arenas");
    comp->add_option("args", pos, "FILE ARENA1 ARENA2 | FILE1 ARENA1 FILE2 ARENA2")->required()->expected(3, 4);
    comp->add_flag("--witness", witness, "Print machine classes and the maximal relation");
    common(comp);

    auto* reduce_cmd = app.add_subcommand("reduce", "Minimal flat machine via the arena quotient");
    reduce_cmd->add_option("args", pos, "FILE ARENA")->required()->expected(2);
    reduce_cmd->add_option("--max-states", max_states, "Expansion guard");
    common(reduce_cmd);

    auto* classes_cmd = app.add_subcommand("classes", "Machine classes and arena quotient");
    classes_cmd->add_option("args", pos, "FILE ARENA")->required()->expected(2);
    common(classes_cmd);

    auto* dot = app.add_subcommand("export-dot", "GraphViz rendering of a machine or arena");
    dot->add_option("args", pos, "FILE NAME")->required()->expected(2);
    common(dot);

    auto* bench = app.add_subcommand("bench-scaling", "Product size vs. compositional check time");
    bench->add_option("--family", family, "star or ring")->check(CLI::IsMember({"star", "ring"}));
    bench->add_option("--n-max", n_max, "Largest arena size")->check(CLI::Range(1, 64));
    bench->add_option("--csv", csv, "CSV output file");
    common(bench);

    auto* stats = app.add_subcommand("stats", "Sizes of every machine and arena in a file");
    stats->add_option("args", pos, "FILE")->required()->expected(1);
    common(stats);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    auto* sub = app.get_subcommands().front();
    RunReport report;
    report.command = sub->get_name();
    const auto start = std::chrono::steady_clock::now();
    std::string artifact;  // written to -o when set

    try {
        if (sub == check_bisim) {
            const bool two_files = pos.size() == 4;
            const auto doc1 = parse_file(pos[0]);
            const auto doc2 = two_files ? parse_file(pos[2]) : ModelDocument{};
            const auto& m1 = need_fsm(doc1, pos[1]);
            const auto& m2 = two_files ? need_fsm(doc2, pos[3]) : need_fsm(doc1, pos[2]);
            report.inputs = two_files ? std::vector{pos[0], pos[2]} : std::vector{pos[0]};
            const auto r = max_bisimulation(m1, m2);
            if (oracle) {
                const auto naive = naive_bisim_oracle(m1, m2);
                report.statistics["oracle_pairs"] = std::uint64_t{naive.size()};
                if (!(naive == r)) {
                    err << "error: oracle divergence: partition refinement gives " << r.size()
                        << " pairs, naive fixpoint gives " << naive.size() << '\n';
                    return 2;
                }
            }
            report.verdict = is_bisimilar(m1, m2);
            report.statistics["pairs"] = std::uint64_t{r.size()};
            report.statistics["states_1"] = std::uint64_t{m1.state_count()};
            report.statistics["states_2"] = std::uint64_t{m2.state_count()};
            if (witness && !flags.json) {
                print_relation(m1, m2, r, out);
            }
        } else if (sub == expand_cmd) {
            const auto doc = parse_file(pos[0]);
            report.inputs = {pos[0]};
            const auto& arena = need_arena(doc, pos[1]);
            report.count("product_states", state_count(arena));
            const auto e = expand(arena, {accessible ? ExpandMode::Accessible : ExpandMode::Full, max_states});
            report.statistics["states"] = std::uint64_t{e.machine.state_count()};
            report.statistics["transitions"] = std::uint64_t{e.machine.transitions().size()};
            artifact = serialize(e.machine);
        } else if (sub == minimize) {
            const auto doc = parse_file(pos[0]);
            report.inputs = {pos[0]};
            const auto& m = need_fsm(doc, pos[1]);
            const auto q = quotient(m);
            report.statistics["states_in"] = std::uint64_t{m.state_count()};
            report.statistics["transitions_in"] = std::uint64_t{m.transitions().size()};
            report.statistics["states"] = std::uint64_t{q.state_count()};
            report.statistics["transitions"] = std::uint64_t{q.transitions().size()};
            artifact = serialize(q);
        } else if (sub == comp) {
            const bool two_files = pos.size() == 4;
            const auto doc1 = parse_file(pos[0]);
            const auto doc2 = two_files ? parse_file(pos[2]) : ModelDocument{};
            const auto& a1 = need_arena(doc1, pos[1]);
            const auto& a2 = two_files ? need_arena(doc2, pos[3]) : need_arena(doc1, pos[2]);
            report.inputs = two_files ? std::vector{pos[0], pos[2]} : std::vector{pos[0]};
            const auto result = comp_bisimulation(a1, a2);
            report.verdict = result.bisimilar;
            report.statistics["classes"] = std::uint64_t{result.classes.size()};
            report.statistics["pairs"] = std::uint64_t{result.witness.size()};
            report.statistics["vertices_1"] = std::uint64_t{a1.size()};
            report.statistics["vertices_2"] = std::uint64_t{a2.size()};
            if (witness && !flags.json) {
                print_classes(result.classes, {&a1, &a2}, out);
                out << "relation (" << result.witness.size() << " pairs):\n";
                for (auto [v, w] : result.witness.pairs) {
                    out << "  " << a1.vertex(v).id << " ~ " << a2.vertex(w).id << '\n';
                }
            }
        } else if (sub == reduce_cmd) {
            const auto doc = parse_file(pos[0]);
            report.inputs = {pos[0]};
            const auto r = reduce(need_arena(doc, pos[1]), {ExpandMode::Full, max_states});
            report.statistics["classes"] = std::uint64_t{r.report.classes};
            report.statistics["quotient_vertices"] = std::uint64_t{r.report.quotient_vertices};
            report.statistics["quotient_edges"] = std::uint64_t{r.report.quotient_edges};
            report.statistics["expansion_states"] = std::uint64_t{r.report.expansion_states};
            report.statistics["expansion_transitions"] = std::uint64_t{r.report.expansion_transitions};
            report.statistics["final_states"] = std::uint64_t{r.report.final_states};
            report.statistics["final_transitions"] = std::uint64_t{r.report.final_transitions};
            artifact = serialize(r.minimal);
        } else if (sub == classes_cmd) {
            const auto doc = parse_file(pos[0]);
            report.inputs = {pos[0]};
            const auto& arena = need_arena(doc, pos[1]);
            const auto c = machine_classes(arena);
            report.statistics["classes"] = std::uint64_t{c.size()};
            report.statistics["vertices"] = std::uint64_t{arena.size()};
            report.statistics["induced_states"] = std::uint64_t{induce_fsm(arena, c).state_count()};
            if (!flags.json) {
                print_classes(c, {&arena}, out);
            }
            if (!flags.output.empty()) {
                // The quotient arena together with the machines it uses.
                ModelDocument q;
                q.arenas.push_back(arena_quotient(arena, c));
                std::map<std::string, FsmPtr> used;
                for (const auto& v : q.arenas.front().vertices()) {
                    used.emplace(v.machine->id(), v.machine);
                }
                for (auto& [name, m] : used) {
                    q.fsms.push_back(m);
                }
                report.statistics["quotient_vertices"] = std::uint64_t{q.arenas.front().size()};
                report.statistics["quotient_edges"] = std::uint64_t{q.arenas.front().edges().size()};
                artifact = serialize(q);
            }
        } else if (sub == dot) {
            const auto doc = parse_file(pos[0]);
            report.inputs = {pos[0]};
            if (const auto* a = doc.find_arena(pos[1])) {
                artifact = export_dot(*a);
            } else {
                artifact = export_dot(need_fsm(doc, pos[1]));
            }
            if (flags.output.empty()) {
                out << artifact;
                return 0;
            }
        } else if (sub == bench) {
            const auto rows = run_scaling(parse_family(family), n_max);
            const auto text = scaling_csv(rows);
            if (!csv.empty()) {
                write_file(csv, text);
                report.outputs.push_back(csv);
            } else if (!flags.json) {
                out << text;
            }
            report.statistics["rows"] = std::uint64_t{rows.size()};
            report.count("max_product_states", rows.back().product_states);
            report.statistics["max_comp_check_ms"] = rows.back().comp_check_ms;
        } else if (sub == stats) {
            const auto doc = parse_file(pos[0]);
            report.inputs = {pos[0]};
            report.statistics["fsms"] = std::uint64_t{doc.fsms.size()};
            report.statistics["arenas"] = std::uint64_t{doc.arenas.size()};
            for (const auto& f : doc.fsms) {
                report.statistics["fsm." + f->id() + ".states"] = std::uint64_t{f->state_count()};
                report.statistics["fsm." + f->id() + ".transitions"] = std::uint64_t{f->transitions().size()};
            }
            for (const auto& a : doc.arenas) {
                report.statistics["arena." + a.id() + ".vertices"] = std::uint64_t{a.size()};
                report.statistics["arena." + a.id() + ".edges"] = std::uint64_t{a.edges().size()};
                report.count("arena." + a.id() + ".product_states", state_count(a));
            }
        }

        if (!artifact.empty() && !flags.output.empty()) {
            write_file(flags.output, artifact);
            report.outputs.push_back(flags.output);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    report.statistics["elapsed_ms"] = ms_since(start);
    print_report(report, flags, out);
    if (report.verdict) {
        return *report.verdict ? 0 : 1;
    }
    return 0;
}

}  // namespace afsm
