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

#ifndef QSKC_BENCH_HPP
#define QSKC_BENCH_HPP

#include <algorithm>
#include <chrono>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qskc/backend.hpp"
#include "qskc/states.hpp"
#include "qskc/transform.hpp"

namespace qskc {

/// One CSV row. size_after is unset (written as budget_exceeded) when the
/// node budget ran out.
struct BenchRecord {
    std::string suite, family, backend;
    int n = 0;
    std::string op;
    std::size_t size_before = 0;
    std::optional<std::size_t> size_after;
    std::int64_t time_ns = 0;
    std::uint64_t seed = 0;
};

inline constexpr const char *kBenchHeader = "suite,family,backend,n,op,size_before,size_after,time_ns,seed";

inline void write_csv_header(std::ostream &os) {
    os << kBenchHeader << "\n";
}

inline void write_csv_row(std::ostream &os, const BenchRecord &r) {
    os << r.suite << "," << r.family << "," << r.backend << "," << r.n << "," << r.op << "," << r.size_before
       << "," << (r.size_after ? std::to_string(*r.size_after) : "budget_exceeded") << "," << r.time_ns << ","
       << r.seed << "\n";
}

inline const std::vector<std::string> &bench_suites() {
    static const std::vector<std::string> s{"succinctness", "swap-blowup", "hadamard-blowup", "rapidity-transform"};
    return s;
}

inline constexpr int kBenchReps = 5;

/// Median wall time of kBenchReps runs. Each run repeats fn until at least
/// min_ns has elapsed and reports the per-call mean, so sub-microsecond
/// operations still get a usable reading.
template <class F>
std::int64_t time_median(F &&fn, std::int64_t min_ns = 200000) {
    using clock = std::chrono::steady_clock;
    std::vector<std::int64_t> t;
    for (int r = 0; r < kBenchReps; r++) {
        std::int64_t calls = 0;
        auto start = clock::now();
        std::int64_t el = 0;
        do {
            fn();
            calls++;
            el = std::chrono::duration_cast<std::chrono::nanoseconds>(clock::now() - start).count();
        } while (el < min_ns);
        t.push_back(el / calls);
    }
    std::nth_element(t.begin(), t.begin() + kBenchReps / 2, t.end());
    return t[kBenchReps / 2];
}

namespace bench_detail {

inline FamilyParams params_for(const std::string &family, int n, std::uint64_t seed) {
    FamilyParams p;
    p.n = n;
    p.k = n / 2;
    if (family == "graph") {
        p.graph = random_graph(n, 0.5, seed + std::uint64_t(n));
    }
    return p;
}

/// Runs one cell; a budget overrun yields a row with no size_after and the
/// time spent until the overrun.
inline BenchRecord cell(const std::string &suite, const std::string &family, const std::string &backend, int n,
                        const std::string &op, std::uint64_t seed, const std::function<std::size_t()> &before,
                        const std::function<std::size_t()> &run) {
    BenchRecord r{suite, family, backend, n, op, 0, std::nullopt, 0, seed};
    auto start = std::chrono::steady_clock::now();
    try {
        r.size_before = before();
        std::size_t after = run();
        r.size_after = after;
        r.time_ns = time_median([&] { run(); });
    } catch (const BudgetExceeded &) {
        r.time_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start)
                        .count();
    }
    return r;
}

}  // namespace bench_detail

/// Builds each family in each representation for n = n_min..n_max and
/// records the built size. Unsupported (family, representation) pairs are
/// skipped; dense vectors stop at 16 qubits.
inline std::vector<BenchRecord> bench_succinctness(int n_min, int n_max, std::uint64_t seed) {
    std::vector<BenchRecord> out;
    const std::vector<std::string> fams{"ghz", "sum", "weighted_binary", "ip_prime", "dicke", "cycle", "grid", "graph"};
    for (const auto &f : fams) {
        for (int n = n_min; n <= n_max; n++) {
            if (f == "ip_prime" && n % 2) {
                continue;
            }
            FamilyParams p = bench_detail::params_for(f, n, seed);
            for (Rep r : all_reps()) {
                if (r == Rep::Vector && family_qubits(f, p) > 16) {
                    continue;
                }
                try {
                    build_family(f, p, r);
                } catch (const Unsupported &) {
                    continue;
                } catch (const BudgetExceeded &) {
                }
                out.push_back(bench_detail::cell(
                    "succinctness", f, rep_name(r), n, "build", seed, [] { return std::size_t(0); },
                    [&] { return state_size(build_family(f, p, r)); }));
            }
        }
    }
    return out;
}

/// Swap(1, n+2) on rho(n).
inline std::vector<BenchRecord> bench_swap_blowup(int n_min, int n_max, std::uint64_t seed) {
    std::vector<BenchRecord> out;
    for (int n = n_min; n <= n_max; n++) {
        FamilyParams p{n, 1, {}};
        for (Rep r : {Rep::QMDD, Rep::LIMDD, Rep::MPS}) {
            std::optional<AnyState> s;
            out.push_back(bench_detail::cell(
                "swap-blowup", "rho", rep_name(r), n, "swap(1," + std::to_string(n + 2) + ")", seed,
                [&] {
                    s = build_family("rho", p, r);
                    return state_size(*s);
                },
                [&] { return state_size(any_apply_gate(*s, Gate::swap(1, n + 2))); }));
        }
    }
    return out;
}

/// H on the selector qubit n+2 of rho(n), which leaves |+^n> + |Rot^n> under
/// one branch.
inline std::vector<BenchRecord> bench_hadamard_blowup(int n_min, int n_max, std::uint64_t seed) {
    std::vector<BenchRecord> out;
    for (int n = n_min; n <= n_max; n++) {
        FamilyParams p{n, 1, {}};
        for (Rep r : {Rep::ADD, Rep::QMDD, Rep::LIMDD, Rep::MPS}) {
            std::optional<AnyState> s;
            out.push_back(bench_detail::cell(
                "hadamard-blowup", "rho", rep_name(r), n, "h(" + std::to_string(n + 2) + ")", seed,
                [&] {
                    s = build_family("rho", p, r);
                    return state_size(*s);
                },
                [&] { return state_size(any_apply_gate(*s, Gate::h(n + 2))); }));
        }
    }
    return out;
}

/// Each transformation timed on GHZ inputs; size_before is the input size.
inline std::vector<BenchRecord> bench_rapidity_transform(int n_min, int n_max, std::uint64_t seed) {
    std::vector<BenchRecord> out;
    struct Op {
        const char *name;
        Rep from;
        std::function<AnyState(const AnyState &)> fn;
    };
    const std::vector<Op> ops{
        {"qmdd_to_mps", Rep::QMDD, [](const AnyState &s) { return AnyState(qmdd_to_mps(std::get<Diagram>(s))); }},
        {"mps_to_qmdd", Rep::MPS, [](const AnyState &s) { return AnyState(mps_to_qmdd(std::get<Mps>(s))); }},
        {"qmdd_to_limdd", Rep::QMDD, [](const AnyState &s) { return AnyState(qmdd_to_limdd(std::get<Diagram>(s))); }},
        {"limdd_to_qmdd", Rep::LIMDD, [](const AnyState &s) { return AnyState(limdd_to_qmdd(std::get<Diagram>(s))); }},
        {"qmdd_to_add", Rep::QMDD, [](const AnyState &s) { return AnyState(qmdd_to_add(std::get<Diagram>(s))); }},
        {"add_to_qmdd", Rep::ADD, [](const AnyState &s) { return AnyState(add_to_qmdd(std::get<Diagram>(s))); }},
    };
    for (const Op &op : ops) {
        for (int n = n_min; n <= n_max; n++) {
            FamilyParams p{n, 1, {}};
            std::optional<AnyState> s;
            out.push_back(bench_detail::cell(
                "rapidity-transform", "ghz", rep_name(op.from), n, op.name, seed,
                [&] {
                    s = build_family("ghz", p, op.from);
                    return state_size(*s);
                },
                [&] { return state_size(op.fn(*s)); }));
        }
    }
    return out;
}

inline std::vector<BenchRecord> run_bench(const std::string &suite, int n_min, int n_max, std::uint64_t seed) {
    require(n_min >= 1 && n_min <= n_max, "bench needs 1 <= n_min <= n_max");
    if (suite == "succinctness") {
        return bench_succinctness(n_min, n_max, seed);
    }
    if (suite == "swap-blowup") {
        return bench_swap_blowup(n_min, n_max, seed);
    }
    if (suite == "hadamard-blowup") {
        return bench_hadamard_blowup(n_min, n_max, seed);
    }
    if (suite == "rapidity-transform") {
        return bench_rapidity_transform(n_min, n_max, seed);
    }
    throw std::invalid_argument("unknown bench suite '" + suite +
                                "' (expected succinctness, swap-blowup, hadamard-blowup or rapidity-transform)");
}

}  // namespace qskc

#endif
