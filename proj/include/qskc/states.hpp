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

#ifndef QSKC_STATES_HPP
#define QSKC_STATES_HPP

#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qskc/backend.hpp"
#include "qskc/graph.hpp"

namespace qskc {

// Benchmark state families. Amplitude functions serve as the reference for
// every builder; hard families are produced by the operation that makes them
// hard (addition, swap) rather than from a dense vector.

inline double binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0;
    }
    double r = 1;
    for (int i = 1; i <= k; i++) {
        r = r * (n - k + i) / i;
    }
    return r;
}

// ---- amplitude functions ----

inline Amplitude ghz_amp(const BasisString &x) {
    std::uint64_t all = (x.size() == 64) ? ~0ull : ((std::uint64_t(1) << x.size()) - 1);
    return x.index() == 0 || x.index() == all ? Amplitude(1 / std::sqrt(2.0)) : Amplitude(0.0);
}

/// Phase of qubit j in |Rot^n>.
inline double rot_angle(int j) {
    return kPi * std::ldexp(1.0, -j - 1);
}

inline Amplitude rot_amp(const BasisString &x) {
    double t = 0;
    for (int j = 1; j <= x.size(); j++) {
        t += x.bit(j) * rot_angle(j);
    }
    return expi(t);
}

/// 1 + e^{i pi sum_j x_j 2^{-j-1}}
inline Amplitude sum_amp(const BasisString &x) {
    return 1.0 + rot_amp(x);
}

/// |+^n>|0> + |Rot^n>|1> on n+1 qubits; qubit 1 selects the branch.
inline Amplitude sum_prime_amp(const BasisString &x) {
    int n = x.size() - 1;
    if (!x.bit(1)) {
        return 1.0;
    }
    double t = 0;
    for (int j = 1; j <= n; j++) {
        t += x.bit(j + 1) * rot_angle(j);
    }
    return expi(t);
}

/// |0>|+^n>|0> + |1>|Rot^n>|0> on n+2 qubits.
inline Amplitude rho_amp(const BasisString &x) {
    int n = x.size() - 2;
    if (x.bit(1)) {
        return 0.0;
    }
    if (!x.bit(n + 2)) {
        return 1.0;
    }
    double t = 0;
    for (int j = 1; j <= n; j++) {
        t += x.bit(j + 1) * rot_angle(j);
    }
    return expi(t);
}

/// sum_j 2^{j-1} x_j
inline Amplitude weighted_binary_amp(const BasisString &x) {
    return double(x.index());
}

/// x_1 x_2 + x_3 x_4 + ... mod 2, unnormalized.
inline int ip_prime(const BasisString &x) {
    int v = 0;
    for (int j = 1; j + 1 <= x.size(); j += 2) {
        v ^= x.bit(j) & x.bit(j + 1);
    }
    return v;
}

/// sqrt of the number of strings with IP' = 1.
inline double ip_prime_norm(int n) {
    // pairs with product 1: 1 of 4; odd count of such pairs among n/2
    double h = n / 2.0;
    double ones = (std::pow(4.0, h) - std::pow(2.0, h)) / 2.0;
    return std::sqrt(ones);
}

inline Amplitude ip_prime_amp(const BasisString &x) {
    return ip_prime(x) / ip_prime_norm(x.size());
}

inline Amplitude dicke_amp(const BasisString &x, int k) {
    return x.weight() == k ? Amplitude(1 / std::sqrt(binomial(x.size(), k))) : Amplitude(0.0);
}

/// (-1)^{|G[S]|} / 2^{n/2}, S the set of qubits reading 1.
inline Amplitude graph_state_amp(const Graph &g, const BasisString &x) {
    return (g.induced_edges(x.index()) % 2 ? -1.0 : 1.0) / std::sqrt(std::ldexp(1.0, x.size()));
}

// ---- product families ----

inline Factors plus_factors(int n) {
    return Factors(n, {1.0, 1.0});
}

inline Factors rot_factors(int n) {
    Factors f(n);
    for (int j = 1; j <= n; j++) {
        f[j - 1] = {1.0, expi(rot_angle(j))};
    }
    return f;
}

inline Factors normalized_plus_factors(int n) {
    double r = 1 / std::sqrt(2.0);
    return Factors(n, {r, r});
}

// ---- GHZ ----

inline Diagram ghz_qmdd(int n) {
    require(n >= 2, "GHZ needs n >= 2");
    Diagram d = new_diagram(Variant::QMDD, n);
    Edge a = qmdd_basis_edge(*d.store, BasisString(n, 0));
    Edge b = qmdd_basis_edge(*d.store, BasisString(n, (std::uint64_t(1) << n) - 1));
    Diagram sum = qmdd_add(with_root(d, a), with_root(d, b));
    return qmdd_scale(sum, 1 / std::sqrt(2.0));
}

inline Mps ghz_mps(int n) {
    require(n >= 2, "GHZ needs n >= 2");
    Mps m;
    m.n = n;
    m.sites.resize(n);
    Matrix p0(2, 2), p1(2, 2);
    p0 << 1, 0, 0, 0;
    p1 << 0, 0, 0, 1;
    for (int k = 2; k < n; k++) {
        m.site(k) = {p0, p1};
    }
    Matrix top0(1, 2), top1(1, 2), bot0(2, 1), bot1(2, 1);
    double r = 1 / std::sqrt(2.0);
    top0 << r, 0;
    top1 << 0, r;
    bot0 << 1, 0;
    bot1 << 0, 1;
    m.site(n) = {top0, top1};
    m.site(1) = {bot0, bot1};
    return m;
}

// ---- Sum, Sum', rho ----

inline Diagram plus_qmdd(int n) {
    return qmdd_product(plus_factors(n));
}

inline Diagram rot_qmdd(int n) {
    return qmdd_product(rot_factors(n));
}

/// |+^n> + |Rot^n> by QMDD addition (exponential output).
inline Diagram sum_qmdd(int n) {
    return qmdd_add(plus_qmdd(n), rot_qmdd(n));
}

inline Diagram sum_add(int n) {
    return add_sum(qmdd_to_add(plus_qmdd(n)), qmdd_to_add(rot_qmdd(n)));
}

/// Bond dimension 2: A^0 is all ones on its diagonal/row/column; A^1 carries
/// (1, f_j) with f_j = e^{i pi 2^{-j-1}}.
inline Mps sum_mps(int n) {
    require(n >= 2, "Sum needs n >= 2");
    Mps m;
    m.n = n;
    m.sites.resize(n);
    auto f = [](int j) { return expi(rot_angle(j)); };
    for (int k = 2; k < n; k++) {
        Matrix a0 = Matrix::Identity(2, 2), a1 = Matrix::Zero(2, 2);
        a1(0, 0) = 1.0;
        a1(1, 1) = f(k);
        m.site(k) = {a0, a1};
    }
    Matrix t0(1, 2), t1(1, 2), b0(2, 1), b1(2, 1);
    t0 << 1.0, 1.0;
    t1 << 1.0, f(n);
    b0 << 1.0, 1.0;
    b1 << 1.0, f(1);
    m.site(n) = {t0, t1};
    m.site(1) = {b0, b1};
    return m;
}

inline Factors with_low_qubit(const Factors &f, std::array<Amplitude, 2> low) {
    Factors g{low};
    g.insert(g.end(), f.begin(), f.end());
    return g;
}

inline Diagram sum_prime_qmdd(int n) {
    return qmdd_add(qmdd_product(with_low_qubit(plus_factors(n), {1.0, 0.0})),
                    qmdd_product(with_low_qubit(rot_factors(n), {0.0, 1.0})));
}

inline Mps sum_prime_mps(int n) {
    return mps_add(mps_product(with_low_qubit(plus_factors(n), {1.0, 0.0})),
                   mps_product(with_low_qubit(rot_factors(n), {0.0, 1.0})));
}

/// Root on qubit n+2 choosing between |+^n>|0> and |Rot^n>|0>; O(n) nodes.
inline Diagram rho_qmdd(int n) {
    require(n >= 1, "rho needs n >= 1");
    Diagram d = new_diagram(Variant::QMDD, n + 2);
    Store &s = *d.store;
    Edge lo = qmdd_make_node(s, 1, Edge{1.0, {}, kLeaf}, zero_edge());
    Edge plus = lo, rot = lo;
    for (int j = 1; j <= n; j++) {
        plus = qmdd_make_node(s, j + 1, plus, plus);
        rot = qmdd_make_node(s, j + 1, rot, scale_edge(rot, expi(rot_angle(j))));
    }
    d.root = qmdd_make_node(s, n + 2, plus, rot);
    return d;
}

inline Mps rho_mps(int n) {
    Factors a = with_low_qubit(plus_factors(n), {1.0, 0.0});
    a.push_back({1.0, 0.0});
    Factors b = with_low_qubit(rot_factors(n), {1.0, 0.0});
    b.push_back({0.0, 1.0});
    return mps_add(mps_product(a), mps_product(b));
}

// ---- weighted binary ----

/// The bond-2 matrices exactly as displayed in the construction.
inline Mps weighted_binary_mps(int n) {
    require(n >= 2, "weighted binary state needs n >= 2");
    Mps m;
    m.n = n;
    m.sites.resize(n);
    for (int j = 2; j < n; j++) {
        Matrix a0 = Matrix::Identity(2, 2), a1(2, 2);
        a1 << 1.0, std::ldexp(1.0, j - 1), 0.0, 1.0;
        m.site(j) = {a0, a1};
    }
    Matrix t0(1, 2), t1(1, 2), b0(2, 1), b1(2, 1);
    t0 << 1.0, 0.0;
    t1 << 1.0, std::ldexp(1.0, n - 1);
    b0 << 0.0, 1.0;
    b1 << 1.0, 1.0;
    m.site(n) = {t0, t1};
    m.site(1) = {b0, b1};
    return m;
}

// ---- IP' ----

/// Blocks of two levels: above each block the diagram only remembers the
/// running parity (2 nodes), inside it also the first bit of the pair (4).
inline Diagram ip_prime_add(int n) {
    require(n >= 2 && n % 2 == 0, "IP' needs an even n >= 2");
    Diagram d = new_diagram(Variant::ADD, n);
    Store &s = *d.store;
    double a = ip_prime_norm(n);
    // node[level][state]: level even -> state = parity; odd -> 2 parity + bit
    std::vector<std::vector<Edge>> node(n + 1);
    node[0] = {add_leaf(s, 0.0), add_leaf(s, 1.0 / a)};
    for (int l = 1; l <= n; l++) {
        if (l % 2 == 1) {
            // reading x_l, the low qubit of the pair (l, l+1); state (p, x_{l+1})
            for (int st = 0; st < 4; st++) {
                int p = st >> 1, hi = st & 1;
                node[l].push_back(add_make_node(s, l, node[l - 1][p], node[l - 1][p ^ hi]));
            }
        } else {
            // reading x_l, the high qubit of the pair (l-1, l); state p
            for (int p = 0; p < 2; p++) {
                node[l].push_back(add_make_node(s, l, node[l - 1][2 * p], node[l - 1][2 * p + 1]));
            }
        }
    }
    d.root = node[n][0];
    return d;
}

// ---- Dicke ----

/// Counting construction: the node for (level l, ones still needed c) has
/// children (l-1, c) and (l-1, c-1). `mk` is the variant's MakeNode.
inline Edge dicke_edge(Store &s, int n, int k, const std::function<Edge(int, Edge, Edge)> &mk,
                       const std::function<Edge(int)> &zero_at, Edge one) {
    std::vector<Edge> prev(k + 1);
    for (int c = 0; c <= k; c++) {
        prev[c] = c == 0 ? one : zero_at(0);
    }
    for (int l = 1; l <= n; l++) {
        std::vector<Edge> cur(k + 1);
        for (int c = 0; c <= k; c++) {
            cur[c] = mk(l, prev[c], c > 0 ? prev[c - 1] : zero_at(l - 1));
        }
        prev = std::move(cur);
    }
    (void)s;
    return prev[k];
}

inline Diagram dicke_dd(Variant v, int n, int k) {
    require(n >= 1 && k >= 0 && k <= n, "dicke weight out of range");
    Diagram d = new_diagram(v, n);
    Store &s = *d.store;
    Amplitude c = 1 / std::sqrt(binomial(n, k));
    switch (v) {
        case Variant::QMDD:
            d.root = dicke_edge(
                s, n, k, [&](int l, Edge a, Edge b) { return qmdd_make_node(s, l, a, b); },
                [](int) { return zero_edge(); }, Edge{1.0, {}, kLeaf});
            d.root = scale_edge(d.root, c);
            break;
        case Variant::LIMDD:
            d.root = dicke_edge(
                s, n, k, [&](int l, Edge a, Edge b) { return limdd_make_node(s, l, a, b); },
                [](int) { return zero_edge(); }, Edge{1.0, {}, kLeaf});
            d.root = scale_edge(d.root, c);
            break;
        case Variant::ADD: {
            std::vector<Edge> zeros{add_leaf(s, 0.0)};
            for (int l = 1; l <= n; l++) {
                zeros.push_back(add_make_node(s, l, zeros.back(), zeros.back()));
            }
            d.root = dicke_edge(
                s, n, k, [&](int l, Edge a, Edge b) { return add_make_node(s, l, a, b); },
                [&](int l) { return zeros[l]; }, add_leaf(s, c));
            break;
        }
    }
    return d;
}

/// Bond dimension k+1: the bond index counts the ones seen so far.
inline Mps dicke_mps(int n, int k) {
    require(n >= 1 && k >= 0 && k <= n, "dicke weight out of range");
    Mps m;
    m.n = n;
    m.sites.resize(n);
    // below bond l (between sites l and l+1) the index is the count among 1..l
    auto dim = [&](int l) { return (l == 0 || l == n) ? 1 : std::min(l, k) + 1; };
    for (int l = 1; l <= n; l++) {
        Matrix a0 = Matrix::Zero(dim(l), dim(l - 1)), a1 = Matrix::Zero(dim(l), dim(l - 1));
        for (int c = 0; c < dim(l - 1); c++) {
            int row0 = c, row1 = c + 1;
            if (l == n) {
                // the top row must be exactly k ones
                if (c == k) {
                    a0(0, c) = 1.0;
                }
                if (c + 1 == k) {
                    a1(0, c) = 1.0;
                }
                continue;
            }
            if (row0 < dim(l)) {
                a0(row0, c) = 1.0;
            }
            if (row1 < dim(l)) {
                a1(row1, c) = 1.0;
            }
        }
        m.site(l) = {a0, a1};
    }
    return mps_scale(m, 1 / std::sqrt(binomial(n, k)));
}

// ---- graph states ----

inline void check_graph(const Graph &g) {
    require(g.n() >= 1, "graph state needs at least one vertex");
}

/// |+>^n then CZ per edge, in any representation.
inline AnyState graph_state(const Graph &g, Rep r) {
    check_graph(g);
    AnyState s = any_product(normalized_plus_factors(g.n()), r);
    for (auto [u, v] : g.edges()) {
        s = any_apply_gate(s, Gate::cz(u, v));
    }
    return s;
}

// ---- family catalog ----

struct FamilyParams {
    int n = 3;
    int k = 1;
    Graph graph;  // family "graph"
};

struct FamilyInfo {
    std::string name;
    std::string help;
};

inline const std::vector<FamilyInfo> &families() {
    static const std::vector<FamilyInfo> f{
        {"ghz", "(|0..0> + |1..1>)/sqrt 2 on n qubits"},
        {"plus", "|+>^n, unnormalized"},
        {"rot", "(x)_j (|0> + e^{i pi 2^{-j-1}}|1>), unnormalized"},
        {"sum", "|+^n> + |Rot^n>"},
        {"sum_prime", "|+^n>|0> + |Rot^n>|1> on n+1 qubits"},
        {"rho", "|0>|+^n>|0> + |1>|Rot^n>|0> on n+2 qubits"},
        {"weighted_binary", "amplitude (x)_2"},
        {"ip_prime", "amplitude (x1 x2 + x3 x4 + ... mod 2)/A, n even"},
        {"dicke", "uniform over weight-k strings"},
        {"cycle", "graph state of the n-cycle"},
        {"complete", "graph state of K_n"},
        {"grid", "graph state of the 3 x n grid (3n qubits)"},
        {"graph", "graph state of a graph file"},
    };
    return f;
}

inline int family_qubits(const std::string &name, const FamilyParams &p) {
    if (name == "sum_prime") {
        return p.n + 1;
    }
    if (name == "rho") {
        return p.n + 2;
    }
    if (name == "grid") {
        return 3 * p.n;
    }
    if (name == "graph") {
        return p.graph.n();
    }
    return p.n;
}

/// Closed-form amplitude of a family member.
inline std::function<Amplitude(const BasisString &)> family_amplitude(const std::string &name, const FamilyParams &p) {
    if (name == "ghz") {
        return ghz_amp;
    }
    if (name == "plus") {
        return [](const BasisString &) { return Amplitude(1.0); };
    }
    if (name == "rot") {
        return rot_amp;
    }
    if (name == "sum") {
        return sum_amp;
    }
    if (name == "sum_prime") {
        return sum_prime_amp;
    }
    if (name == "rho") {
        return rho_amp;
    }
    if (name == "weighted_binary") {
        return weighted_binary_amp;
    }
    if (name == "ip_prime") {
        return ip_prime_amp;
    }
    if (name == "dicke") {
        int k = p.k;
        return [k](const BasisString &x) { return dicke_amp(x, k); };
    }
    Graph g = name == "cycle"      ? cycle_graph(p.n)
              : name == "complete" ? complete_graph(p.n)
              : name == "grid"     ? grid_graph(3, p.n)
              : name == "graph"    ? p.graph
                                   : Graph();
    if (g.n() == 0) {
        throw std::invalid_argument("unknown family '" + name + "'");
    }
    return [g](const BasisString &x) { return graph_state_amp(g, x); };
}

inline Graph family_graph(const std::string &name, const FamilyParams &p) {
    if (name == "cycle") {
        return cycle_graph(p.n);
    }
    if (name == "complete") {
        return complete_graph(p.n);
    }
    if (name == "grid") {
        return grid_graph(3, p.n);
    }
    return p.graph;
}

/// Builds a family member natively in representation r. Families without a
/// native builder for r fall back to a transformation from one that has it.
inline AnyState build_family(const std::string &name, const FamilyParams &p, Rep r) {
    bool known = false;
    for (auto &f : families()) {
        known = known || f.name == name;
    }
    if (!known) {
        throw std::invalid_argument("unknown family '" + name + "'");
    }
    int n = family_qubits(name, p);
    require(n >= 1 && n <= kMaxQubits, "qubit count out of range");
    auto unsupported = [&]() -> AnyState {
        throw Unsupported("family '" + name + "' has no " + rep_name(r) + " construction");
    };
    if (r == Rep::Vector) {
        return dense_from_fn(n, family_amplitude(name, p));
    }
    if (name == "ghz") {
        switch (r) {
            case Rep::MPS:
                return ghz_mps(p.n);
            case Rep::RBM:
                return rbm_build_ghz(p.n);
            default:
                return convert(AnyState(ghz_qmdd(p.n)), r);
        }
    }
    if (name == "plus" || name == "rot") {
        return any_product(name == "plus" ? plus_factors(n) : rot_factors(n), r);
    }
    if (name == "sum") {
        switch (r) {
            case Rep::MPS:
                return sum_mps(n);
            case Rep::RBM:
                return rbm_build_sum(n);
            case Rep::ADD:
                return sum_add(n);
            case Rep::QMDD:
                return sum_qmdd(n);
            default:
                return qmdd_to_limdd(sum_qmdd(n));
        }
    }
    if (name == "sum_prime") {
        switch (r) {
            case Rep::MPS:
                return sum_prime_mps(p.n);
            case Rep::RBM:
                return unsupported();
            default:
                return convert(AnyState(sum_prime_qmdd(p.n)), r);
        }
    }
    if (name == "rho") {
        switch (r) {
            case Rep::MPS:
                return rho_mps(p.n);
            case Rep::RBM:
                return unsupported();
            default:
                return convert(AnyState(rho_qmdd(p.n)), r);
        }
    }
    if (name == "weighted_binary") {
        if (r == Rep::RBM) {
            return unsupported();
        }
        return convert(AnyState(weighted_binary_mps(n)), r);
    }
    if (name == "ip_prime") {
        if (r == Rep::RBM) {
            return unsupported();
        }
        return convert(AnyState(ip_prime_add(n)), r);
    }
    if (name == "dicke") {
        require(p.k >= 0 && p.k <= n, "dicke weight out of range");
        switch (r) {
            case Rep::MPS:
                return dicke_mps(n, p.k);
            case Rep::RBM:
                return rbm_build_dicke(n, p.k);
            case Rep::ADD:
                return dicke_dd(Variant::ADD, n, p.k);
            case Rep::QMDD:
                return dicke_dd(Variant::QMDD, n, p.k);
            default:
                return dicke_dd(Variant::LIMDD, n, p.k);
        }
    }
    return graph_state(family_graph(name, p), r);
}

}  // namespace qskc

#endif
