// Copyright 2026 The qskc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qskc/qskc.hpp"

namespace {

using namespace qskc;

/// Exit codes: 0 ok, 1 runtime failure, 2 usage error, 3 unsupported
/// operation, 4 node budget exhausted.
enum Exit { kOk = 0, kFail = 1, kUsage = 2, kUnsupported = 3, kBudget = 4 };

void emit(const std::string &out, const AnyState &s) {
    if (out.empty() || out == "-") {
        write_state(std::cout, s);
    } else {
        save_state(out, s);
    }
}

std::string family_list() {
    std::string s;
    for (const auto &f : families()) {
        s += "  " + f.name + ": " + f.help + "\n";
    }
    return s;
}

void print_stats(const AnyState &s) {
    std::cout << "representation " << rep_name(rep_of(s)) << "\n";
    std::cout << "qubits " << qubits(s) << "\n";
    std::cout << "size " << state_size(s) << "\n";
    if (auto d = std::get_if<Diagram>(&s)) {
        DiagramStats st = stats(*d);
        std::cout << "internal_nodes " << st.internal_nodes << "\n";
        std::cout << "leaves " << st.leaves << "\n";
        std::cout << "edges " << st.edges << "\n";
        std::cout << "level_counts";
        auto lc = level_counts(*d);
        for (int q = d->n; q >= 1; q--) {
            std::cout << " " << lc[q];
        }
        std::cout << "\n";
    } else if (auto m = std::get_if<Mps>(&s)) {
        std::cout << "max_bond " << m->max_bond() << "\n";
        std::cout << "bonds";
        for (int b : m->bonds()) {
            std::cout << " " << b;
        }
        std::cout << "\n";
    } else if (auto r = std::get_if<Rbm>(&s)) {
        std::cout << "hidden " << r->m << "\n";
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum state knowledge compilation toolkit: build, convert, simulate and measure states in "
                 "vector, ADD, QMDD, LIMDD, MPS and RBM form."};
    app.require_subcommand(1);
    const std::string reps = "vector, add, qmdd, limdd, mps or rbm";

    std::string family, rep, out, graph_path;
    int n = 3, k = 1;
    auto *build = app.add_subcommand("build", "Build a state family member and serialize it");
    build->add_option("--family", family, "State family:\n" + family_list())->required();
    build->add_option("--n", n, "Family size parameter");
    build->add_option("--k", k, "Dicke weight");
    build->add_option("--graph", graph_path, "Graph file for the graph family");
    build->add_option("--as", rep, "Representation: " + reps)->required();
    build->add_option("-o,--out", out, "Output file (default stdout)");

    std::string circuit_path, final_out;
    std::uint64_t seed = 1;
    auto *sim = app.add_subcommand("simulate", "Run a circuit and print the measurement transcript");
    sim->add_option("--circuit", circuit_path, "Circuit file")->required()->check(CLI::ExistingFile);
    sim->add_option("--backend", rep, "Backend: " + reps)->required();
    sim->add_option("--seed", seed, "Random seed");
    sim->add_option("--state-out", final_out, "Write the final state here");

    std::string in_path, from, to;
    auto *conv = app.add_subcommand("convert", "Convert a serialized state to another representation");
    conv->add_option("--in", in_path, "Input state file")->required()->check(CLI::ExistingFile);
    conv->add_option("--from", from, "Expected input representation (checked against the file)");
    conv->add_option("--to", to, "Target representation: " + reps)->required();
    conv->add_option("-o,--out", out, "Output file (default stdout)");

    auto *st = app.add_subcommand("stats", "Print size statistics of a serialized state");
    st->add_option("--in", in_path, "State file")->required()->check(CLI::ExistingFile);

    std::string a_path, b_path;
    auto *fid = app.add_subcommand("fidelity", "|<a|b>|^2 / (<a|a><b|b>) of two serialized states");
    fid->add_option("a", a_path, "First state file")->required()->check(CLI::ExistingFile);
    fid->add_option("b", b_path, "Second state file")->required()->check(CLI::ExistingFile);

    std::string suite, csv;
    int n_min = 4, n_max = 10;
    auto *bench = app.add_subcommand("bench", "Run a benchmark suite and write CSV (" + std::string(kBenchHeader) + ")");
    bench->add_option("--suite", suite, "succinctness, swap-blowup, hadamard-blowup or rapidity-transform")->required();
    bench->add_option("--n-min", n_min, "Smallest n");
    bench->add_option("--n-max", n_max, "Largest n");
    bench->add_option("--csv", csv, "CSV output file (default stdout)");
    bench->add_option("--seed", seed, "Seed recorded in every row and used for random graphs");

    std::string method = "alg2";
    auto *sub = app.add_subcommand("subgraphs", "Count k-vertex induced subgraphs with an even number of edges");
    sub->add_option("--graph", graph_path, "Graph file: `n m` then m lines `u v`")->required()->check(CLI::ExistingFile);
    sub->add_option("--k", k, "Subset size")->required();
    sub->add_option("--method", method,
                    "brute: enumerate subsets; alg2: sign bootstrapping over a brute-force |e-o| oracle; "
                    "fidelity: the same over the Dicke/graph-state fidelity oracle");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*build) {
            FamilyParams p;
            p.n = n;
            p.k = k;
            if (!graph_path.empty()) {
                p.graph = load_graph(graph_path);
            } else if (family == "graph") {
                throw std::invalid_argument("family 'graph' needs --graph");
            }
            emit(out, build_family(family, p, parse_rep(rep)));
        } else if (*sim) {
            Circuit c = load_circuit(circuit_path);
            SimResult r = simulate(c, parse_rep(rep), seed);
            for (const auto &line : r.transcript) {
                std::cout << line << "\n";
            }
            if (!final_out.empty()) {
                save_state(final_out, r.state);
            }
        } else if (*conv) {
            AnyState s = load_state(in_path);
            if (!from.empty() && parse_rep(from) != rep_of(s)) {
                throw std::invalid_argument("--from " + from + " but the file holds a " + rep_name(rep_of(s)) +
                                            " state");
            }
            emit(out, convert(s, parse_rep(to)));
        } else if (*st) {
            print_stats(load_state(in_path));
        } else if (*fid) {
            double f = any_fidelity(load_state(a_path), load_state(b_path));
            std::cout.precision(17);
            std::cout << f << "\n";
        } else if (*bench) {
            auto rows = run_bench(suite, n_min, n_max, seed);
            std::ofstream file;
            if (!csv.empty() && csv != "-") {
                file.open(csv);
                if (!file) {
                    throw Error("cannot write " + csv);
                }
            }
            std::ostream &os = file.is_open() ? file : std::cout;
            write_csv_header(os);
            for (const auto &r : rows) {
                write_csv_row(os, r);
            }
        } else if (*sub) {
            Graph g = load_graph(graph_path);
            if (method == "brute") {
                std::cout << brute_counts(g, k).even << "\n";
            } else if (method == "alg2") {
                std::cout << count_even_subgraphs(g, k, EosdMethod::Brute).even << "\n";
            } else if (method == "fidelity") {
                std::cout << count_even_subgraphs(g, k, EosdMethod::Fidelity).even << "\n";
            } else {
                throw std::invalid_argument("unknown method '" + method + "' (expected brute, alg2 or fidelity)");
            }
        }
    } catch (const Unsupported &e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return kUnsupported;
    } catch (const BudgetExceeded &e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kBudget;
    } catch (const std::invalid_argument &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
    return kOk;
}
