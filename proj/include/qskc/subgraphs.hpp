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

#ifndef QSKC_SUBGRAPHS_HPP
#define QSKC_SUBGRAPHS_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qskc/graph.hpp"
#include "qskc/states.hpp"

namespace qskc {

struct ParityCounts {
    std::int64_t even = 0;
    std::int64_t odd = 0;
};

inline constexpr int kBruteGraphCap = 24;

/// Enumerates every k-subset (Gosper's hack).
inline ParityCounts brute_counts(const Graph &g, int k) {
    require(k >= 0 && k <= g.n(), "k out of range [0, n]");
    require(g.n() <= kBruteGraphCap, "brute-force counting is capped at " + std::to_string(kBruteGraphCap) + " vertices");
    ParityCounts c;
    if (k == 0) {
        c.even = 1;
        return c;
    }
    std::uint64_t limit = std::uint64_t(1) << g.n();
    for (std::uint64_t s = (std::uint64_t(1) << k) - 1; s < limit;) {
        (g.induced_edges(s) % 2 ? c.odd : c.even)++;
        std::uint64_t lo = s & (~s + 1), r = s + lo;
        s = (((r ^ s) >> 2) / lo) | r;
    }
    return c;
}

enum class EosdMethod { Brute, Fidelity };

inline EosdMethod parse_eosd_method(const std::string &s) {
    if (s == "brute") {
        return EosdMethod::Brute;
    }
    if (s == "fidelity") {
        return EosdMethod::Fidelity;
    }
    throw std::invalid_argument("unknown eosd method '" + s + "' (expected brute or fidelity)");
}

/// Largest n for which the fidelity route uses dense vectors; MPS above.
inline constexpr int kEosdDenseMax = 12;

/// |<D_n^k | G>|^2, with the graph state built by CZ gates on `rep`.
inline double dicke_graph_fidelity(const Graph &g, int k, Rep rep) {
    int n = g.n();
    if (rep == Rep::Vector) {
        DenseState d = dense_from_fn(n, [k](const BasisString &x) { return dicke_amp(x, k); });
        return dense_fidelity(d, std::get<DenseState>(graph_state(g, Rep::Vector)));
    }
    require(rep == Rep::MPS, "dicke-graph fidelity needs the vector or mps backend");
    return mps_fidelity(dicke_mps(n, k), std::get<Mps>(graph_state(g, Rep::MPS)));
}

/// |e(G,k) - o(G,k)|. The fidelity route rounds sqrt(C(n,k) 2^n F).
inline std::int64_t eosd(const Graph &g, int k, EosdMethod method) {
    require(k >= 0 && k <= g.n(), "k out of range [0, n]");
    if (method == EosdMethod::Brute) {
        ParityCounts c = brute_counts(g, k);
        return std::llabs(c.even - c.odd);
    }
    if (k == 0 || g.n() == 0) {
        return 1;
    }
    Rep rep = g.n() <= kEosdDenseMax ? Rep::Vector : Rep::MPS;
    double f = dicke_graph_fidelity(g, k, rep);
    double sq = binomial(g.n(), k) * std::ldexp(1.0, g.n()) * f;
    if (sq < -0.25) {
        throw Error("negative eosd radicand " + std::to_string(sq) + "; the fidelity backend is inconsistent");
    }
    return std::llround(std::sqrt(std::max(sq, 0.0)));
}

using EosdFn = std::function<std::int64_t(const Graph &, int)>;

struct EvenCount {
    std::int64_t even = 0;
    int eosd_calls = 0;
};

/// Bootstraps the signed differences d_j = e(G,j) - o(G,j) from |d_j| queries,
/// using isolated vertices to recover signs; at most 2k <= 2n oracle calls.
inline EvenCount count_even_subgraphs(const Graph &g, int k, const EosdFn &eosd_fn) {
    require(k >= 0 && k <= g.n(), "k out of range [0, n]");
    EvenCount out;
    std::vector<std::int64_t> d(k + 1, 0);
    d[0] = 1;
    int ell = 0;
    for (int j = 1; j <= k; j++) {
        std::int64_t q = eosd_fn(g, j);
        out.eosd_calls++;
        if (q == 0) {
            d[j] = 0;
            continue;
        }
        Graph h = g.with_isolated(j - ell);
        std::int64_t p = eosd_fn(h, j);
        out.eosd_calls++;
        bool plus = std::llabs(d[ell] + q) == p, minus = std::llabs(d[ell] - q) == p;
        if (plus == minus) {
            throw Error("eosd oracle is inconsistent at j = " + std::to_string(j));
        }
        d[j] = plus ? q : -q;
        ell = j;
    }
    out.even = (std::llround(binomial(g.n(), k)) + d[k]) / 2;
    return out;
}

inline EvenCount count_even_subgraphs(const Graph &g, int k, EosdMethod method) {
    return count_even_subgraphs(g, k, [method](const Graph &h, int j) { return eosd(h, j, method); });
}

}  // namespace qskc

#endif
