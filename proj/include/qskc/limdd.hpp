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

#ifndef QSKC_LIMDD_HPP
#define QSKC_LIMDD_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qskc/circuit.hpp"
#include "qskc/pauli.hpp"
#include "qskc/qdd/store.hpp"
#include "qskc/qdd/walk.hpp"

namespace qskc {

// Every stored LIMDD node has the form N(v0, B, v1) = |0>|v0> + |1> B|v1>:
// the low edge is the identity into v0 and B is either zero or the canonical
// representative of its isomorphism class. Each node also keeps generators of
// its stabilizer group {G : G|v> = |v>}, a signed abelian Pauli group.

namespace limdd_detail {

inline int top_bit(u128 k) {
    std::uint64_t hi = std::uint64_t(k >> 64), lo = std::uint64_t(k);
    if (hi) {
        return 127 - __builtin_clzll(hi);
    }
    return lo ? 63 - __builtin_clzll(lo) : -1;
}

/// Snaps lambda of a stabilizer element to exactly +-1.
inline PauliLim snap_sign(PauliLim g) {
    g.lam = g.lam.real() >= 0 ? 1.0 : -1.0;
    return g;
}

/// A row of a GF(2) elimination over Pauli strings; `a` and `b` track the
/// group elements whose strings xor to `key`.
struct Row {
    u128 key;
    PauliLim a, b;
};

/// Inserts r into a fully reduced echelon basis sorted by descending pivot.
/// Returns false (and leaves rows untouched) if r reduces to zero; the reduced
/// remainder is written back to r either way.
inline bool insert_row(std::vector<Row> &rows, Row &r) {
    for (const Row &o : rows) {
        if ((r.key >> top_bit(o.key)) & 1) {
            r.key ^= o.key;
            r.a = r.a * o.a;
            r.b = r.b * o.b;
        }
    }
    if (r.key == 0) {
        return false;
    }
    int piv = top_bit(r.key);
    for (Row &o : rows) {
        if ((o.key >> piv) & 1) {
            o.key ^= r.key;
            o.a = o.a * r.a;
            o.b = o.b * r.b;
        }
    }
    auto pos = std::find_if(rows.begin(), rows.end(), [&](const Row &o) { return top_bit(o.key) < piv; });
    rows.insert(pos, r);
    return true;
}

/// Echelon form of a generator list, with signs snapped.
inline std::vector<PauliLim> reduce_generators(const std::vector<PauliLim> &gens) {
    std::vector<Row> rows;
    for (const PauliLim &g : gens) {
        Row r{g.p.key(), snap_sign(g), PauliLim{}};
        insert_row(rows, r);
    }
    std::vector<PauliLim> out;
    for (const Row &r : rows) {
        out.push_back(snap_sign(r.a));
    }
    return out;
}

/// lambda -> (canonical lambda, whether it was negated). The representative
/// has positive imaginary part, or is real and positive.
inline std::pair<Amplitude, bool> canon_sign(Amplitude lam) {
    bool flip = lam.imag() < -kEps || (std::abs(lam.imag()) <= kEps && lam.real() < 0);
    return {flip ? -lam : lam, flip};
}

/// Label order: Pauli string (I < X < Y < Z, high qubit first), then
/// |lambda|, then arg(lambda).
inline bool lim_less(const PauliLim &a, const PauliLim &b) {
    u128 ka = a.p.key(), kb = b.p.key();
    if (ka != kb) {
        return ka < kb;
    }
    double ma = std::abs(a.lam), mb = std::abs(b.lam);
    if (std::abs(ma - mb) > kEps) {
        return ma < mb;
    }
    double pa = std::arg(a.lam), pb = std::arg(b.lam);
    if (std::abs(pa - pb) > kEps) {
        return pa < pb;
    }
    return false;
}

/// Pauli P placed on qubit q.
inline PauliLim lim_at(int q, char p) {
    return PauliLim{1.0, PauliString::single(q, p)};
}

/// I (x) A or X (x) A on `level` qubits, where A acts on level-1 qubits.
inline PauliLim lift(const PauliLim &a, int level, char top) {
    PauliLim r = a;
    r.p.set(level, top);
    return r;
}

struct Canon {
    PauliLim b;     // canonical high label
    PauliLim corr;  // N(v0, B, v1) = corr * N(v0, b, v1), on `level` qubits
};

/// Minimal representative of { +-g0 B g1 : g0 in Stab(v0), g1 in Stab(v1) }.
inline Canon canonical_high(const Store &s, int level, NodeId v0, const PauliLim &B, NodeId v1) {
    std::vector<Row> rows;
    for (const PauliLim &g : s.stab(v0)) {
        Row r{g.p.key(), g, PauliLim{}};
        insert_row(rows, r);
    }
    for (const PauliLim &h : s.stab(v1)) {
        Row r{h.p.key(), PauliLim{}, h};
        insert_row(rows, r);
    }
    u128 k = B.p.key();
    PauliLim g0, g1;
    for (const Row &r : rows) {
        if ((k >> top_bit(r.key)) & 1) {
            k ^= r.key;
            g0 = g0 * r.a;
            g1 = g1 * r.b;
        }
    }
    g0 = snap_sign(g0);
    g1 = snap_sign(g1);
    PauliLim bc = g0 * B * g1;
    auto [lam, flip] = canon_sign(bc.lam);
    bc.lam = lam;
    // N(v0, bc, v1) = (Z^flip (x) g0) N(v0, B, v1); the inverse is itself
    PauliLim corr = lift(g0, level, flip ? 'Z' : 'I');
    return {bc, corr};
}

/// Stabilizer generators of N(v0, B, v1) at `level`.
inline std::vector<PauliLim> node_stabilizer(const Store &s, int level, NodeId v0, const Edge &hi) {
    std::vector<PauliLim> gens;
    const auto &s0 = s.stab(v0);
    if (hi.zero()) {
        for (const PauliLim &g : s0) {
            gens.push_back(g);
        }
        gens.push_back(lim_at(level, 'Z'));
        return reduce_generators(gens);
    }
    NodeId v1 = hi.node;
    PauliLim B = hi.lim();
    // Elements Z^s (x) P: P must stabilize v0 up to sign s0 and B^-1 P B must
    // stabilize v1 up to sign s1; then s0 s1 fixes s. Intersect the string
    // spaces, tracking each side's group element.
    std::vector<Row> rows;
    std::vector<Row> kernel;
    for (const PauliLim &g : s0) {
        Row r{g.p.key(), g, PauliLim{}};
        if (!insert_row(rows, r)) {
            kernel.push_back(r);
        }
    }
    for (const PauliLim &h : s.stab(v1)) {
        PauliLim hc = anticommute(h.p, B.p) ? h.scaled(-1.0) : h;
        Row r{hc.p.key(), PauliLim{}, hc};
        if (!insert_row(rows, r)) {
            kernel.push_back(r);
        }
    }
    for (const Row &r : kernel) {
        PauliLim u = snap_sign(r.a), v = snap_sign(r.b);
        bool minus = (u.lam * v.lam).real() < 0;
        gens.push_back(lift(u, level, minus ? 'Z' : 'I'));
    }
    if (v0 == v1) {
        // X (x) g B^-1 or Y (x) i g B^-1, where g is I or a stabilizer of the
        // child that anticommutes with B.
        Amplitude l2 = B.lam * B.lam;
        const PauliLim *anti = nullptr;
        for (const PauliLim &g : s0) {
            if (anticommute(g.p, B.p)) {
                anti = &g;
                break;
            }
        }
        PauliLim binv = B.inverse();
        std::optional<PauliLim> extra;
        if (approx_equal(l2, 1.0)) {
            extra = lift(binv, level, 'X');
        } else if (approx_equal(l2, -1.0) && anti) {
            extra = lift(*anti * binv, level, 'X');
        } else if (approx_equal(l2, -1.0)) {
            extra = lift(binv.scaled(Amplitude(0, 1)), level, 'Y');
        } else if (approx_equal(l2, 1.0) && anti) {
            extra = lift((*anti * binv).scaled(Amplitude(0, 1)), level, 'Y');
        }
        if (extra) {
            gens.push_back(*extra);
        }
    }
    return reduce_generators(gens);
}

}  // namespace limdd_detail

/// Canonical LIMDD node for |0>|e0> + |1>|e1>; returns the edge into it.
inline Edge limdd_make_node(Store &s, int level, Edge e0, Edge e1) {
    using namespace limdd_detail;
    if (!e0.zero() && approx_zero(e0.w)) {
        e0 = zero_edge();
    }
    if (!e1.zero() && approx_zero(e1.w)) {
        e1 = zero_edge();
    }
    if (e0.zero() && e1.zero()) {
        return zero_edge();
    }
    for (const Edge &e : {e0, e1}) {
        if (!e.zero() && s.level(e.node) != level - 1) {
            throw std::invalid_argument("make_node: child level " + std::to_string(s.level(e.node)) +
                                        " under a level " + std::to_string(level) + " node");
        }
    }
    auto store_node = [&](NodeId v0, const Edge &hi) {
        std::size_t before = s.node_count();
        NodeId id = s.unique(level, Edge{1.0, {}, v0}, hi);
        if (s.node_count() != before) {
            s.set_stab(id, node_stabilizer(s, level, v0, s.node(id).hi));
        }
        return id;
    };
    auto finish = [&](const PauliLim &outer, NodeId id) {
        PauliLim l = outer;
        return Edge{l.lam, l.p, id};
    };
    if (e1.zero()) {
        return finish(lift(e0.lim(), level, 'I'), store_node(e0.node, zero_edge()));
    }
    if (e0.zero()) {
        return finish(lift(e1.lim(), level, 'X'), store_node(e1.node, zero_edge()));
    }
    PauliLim a0 = e0.lim(), a1 = e1.lim();
    auto build = [&](NodeId v0, const PauliLim &b, NodeId v1, const PauliLim &outer) {
        Canon c = canonical_high(s, level, v0, b, v1);
        return std::make_pair(c, outer * c.corr);
    };
    if (e0.node != e1.node) {
        bool keep = e0.node < e1.node;
        NodeId v0 = keep ? e0.node : e1.node, v1 = keep ? e1.node : e0.node;
        PauliLim b = keep ? a0.inverse() * a1 : a1.inverse() * a0;
        PauliLim outer = keep ? lift(a0, level, 'I') : lift(a1, level, 'X');
        auto [c, lab] = build(v0, b, v1, outer);
        return finish(lab, store_node(v0, Edge{c.b.lam, c.b.p, v1}));
    }
    NodeId v = e0.node;
    auto [c1, lab1] = build(v, a0.inverse() * a1, v, lift(a0, level, 'I'));
    auto [c2, lab2] = build(v, a1.inverse() * a0, v, lift(a1, level, 'X'));
    if (lim_less(c2.b, c1.b)) {
        return finish(lab2, store_node(v, Edge{c2.b.lam, c2.b.p, v}));
    }
    return finish(lab1, store_node(v, Edge{c1.b.lam, c1.b.p, v}));
}

inline Diagram limdd_from_dense(const DenseState &s) {
    require(s.n >= 1, "limdd_from_dense needs n >= 1");
    check_dense_size(s.n);
    Diagram d = new_diagram(Variant::LIMDD, s.n);
    std::vector<Edge> layer(s.dim());
    for (std::size_t k = 0; k < s.dim(); k++) {
        layer[k] = approx_zero(s.amps[k]) ? zero_edge() : Edge{s.amps[k], {}, kLeaf};
    }
    for (int q = 1; q <= s.n; q++) {
        std::vector<Edge> next(layer.size() / 2);
        for (std::size_t k = 0; k < next.size(); k++) {
            next[k] = limdd_make_node(*d.store, q, layer[2 * k], layer[2 * k + 1]);
        }
        layer = std::move(next);
    }
    d.root = layer[0];
    return d;
}

inline Edge limdd_basis_edge(Store &s, const BasisString &x, Amplitude phase = 1.0) {
    Edge e{1.0, {}, kLeaf};
    for (int q = 1; q <= x.size(); q++) {
        e = x.bit(q) ? limdd_make_node(s, q, zero_edge(), e) : limdd_make_node(s, q, e, zero_edge());
    }
    return scale_edge(e, phase);
}

/// Product state; factors[j-1] holds the two amplitudes of qubit j.
inline Diagram limdd_product(const std::vector<std::array<Amplitude, 2>> &factors) {
    Diagram d = new_diagram(Variant::LIMDD, (int)factors.size());
    Edge e{1.0, {}, kLeaf};
    for (int q = 1; q <= d.n; q++) {
        e = limdd_make_node(*d.store, q, scale_edge(e, factors[q - 1][0]), scale_edge(e, factors[q - 1][1]));
    }
    d.root = e;
    return d;
}

/// Rebuilds src inside dst through limdd_make_node.
inline Edge limdd_import(Store &dst, const Diagram &src) {
    if (&dst == src.store.get()) {
        return src.root;
    }
    std::unordered_map<NodeId, Edge> map{{kLeaf, Edge{1.0, {}, kLeaf}}};
    auto child = [&](const Edge &e) {
        if (e.zero()) {
            return e;
        }
        PauliLim l = e.lim() * map.at(e.node).lim();
        return Edge{l.lam, l.p, map.at(e.node).node};
    };
    for (NodeId id : reachable(src)) {
        const Node &nd = src.node(id);
        if (nd.level > 0) {
            map[id] = limdd_make_node(dst, nd.level, child(nd.lo), child(nd.hi));
        }
    }
    return child(src.root);
}

namespace limdd_detail {
inline void check_qubit(const Diagram &d, int q) {
    require(q >= 1 && q <= d.n, "qubit " + std::to_string(q) + " out of range [1, " + std::to_string(d.n) + "]");
}

inline Edge times(const PauliLim &l, const Edge &e) {
    if (e.zero() || l.zero()) {
        return zero_edge();
    }
    PauliLim r = l * e.lim();
    return Edge{r.lam, r.p, e.node};
}
}  // namespace limdd_detail

/// Multiplies the root label by P on qubit q.
inline Diagram limdd_apply_pauli(const Diagram &d, int q, char p) {
    limdd_detail::check_qubit(d, q);
    require(p == 'X' || p == 'Y' || p == 'Z', "Pauli must be X, Y or Z");
    return Diagram{d.variant, d.n, d.store, limdd_detail::times(limdd_detail::lim_at(q, p), d.root)};
}

inline Diagram limdd_scale(const Diagram &d, Amplitude c) {
    return Diagram{d.variant, d.n, d.store, scale_edge(d.root, c)};
}

/// diag(rho, omega) on qubit q. Passing a label with X or Y at q swaps the two
/// diagonal entries, so the cache is keyed by (node, swapped).
inline Diagram limdd_apply_diag(const Diagram &d, int q, Amplitude rho, Amplitude omega) {
    using namespace limdd_detail;
    check_qubit(d, q);
    Store &s = *d.store;
    std::unordered_map<std::uint64_t, Edge> memo;
    std::function<Edge(const Edge &, bool)> edge_fn;
    std::function<Edge(NodeId, bool)> node_fn = [&](NodeId v, bool flip) -> Edge {
        std::uint64_t key = (std::uint64_t(v) << 1) | std::uint64_t(flip);
        auto it = memo.find(key);
        if (it != memo.end()) {
            return it->second;
        }
        Node nd = s.node(v);
        Edge r;
        if (nd.level == q) {
            Amplitude a = flip ? omega : rho, b = flip ? rho : omega;
            r = limdd_make_node(s, q, scale_edge(nd.lo, a), scale_edge(nd.hi, b));
        } else {
            r = limdd_make_node(s, nd.level, edge_fn(nd.lo, flip), edge_fn(nd.hi, flip));
        }
        memo.emplace(key, r);
        return r;
    };
    edge_fn = [&](const Edge &e, bool flip) -> Edge {
        if (e.zero()) {
            return e;
        }
        bool f = flip ^ e.p.has_x(q);
        PauliLim l = e.lim();
        return times(l, node_fn(e.node, f));
    };
    return Diagram{d.variant, d.n, d.store, edge_fn(d.root, false)};
}

/// Controlled-Z. Pushing CZ through a label P gives
/// P (-1)^{x_a x_b} Z_a^{x_b} Z_b^{x_a} CZ, so each node at or above level a is
/// rebuilt exactly once and the size never grows.
inline Diagram limdd_apply_cz(const Diagram &d, int a, int b) {
    using namespace limdd_detail;
    check_qubit(d, a);
    check_qubit(d, b);
    require(a != b, "cz needs two distinct qubits");
    if (a < b) {
        std::swap(a, b);
    }
    Store &s = *d.store;
    std::unordered_map<NodeId, Edge> memo;
    auto correct = [&](const PauliLim &l) {
        bool xa = l.p.has_x(a), xb = l.p.has_x(b);
        PauliLim r = l;
        if (xb) {
            r = r * lim_at(a, 'Z');
        }
        if (xa) {
            r = r * lim_at(b, 'Z');
        }
        return xa && xb ? r.scaled(-1.0) : r;
    };
    std::function<Edge(const Edge &)> edge_fn;
    std::function<Edge(NodeId)> node_fn = [&](NodeId v) -> Edge {
        auto it = memo.find(v);
        if (it != memo.end()) {
            return it->second;
        }
        Node nd = s.node(v);
        Edge r;
        if (nd.level == a) {
            r = limdd_make_node(s, a, nd.lo, times(lim_at(b, 'Z'), nd.hi));
        } else {
            r = limdd_make_node(s, nd.level, edge_fn(nd.lo), edge_fn(nd.hi));
        }
        memo.emplace(v, r);
        return r;
    };
    edge_fn = [&](const Edge &e) -> Edge {
        if (e.zero()) {
            return e;
        }
        return times(correct(e.lim()), node_fn(e.node));
    };
    return Diagram{d.variant, d.n, d.store, edge_fn(d.root)};
}

inline double limdd_prob(const Diagram &d, const BasisString &x) {
    return prob(d, x);
}

inline std::pair<BasisString, Diagram> limdd_sample(const Diagram &d, std::uint64_t seed) {
    Rng rng(seed);
    BasisString x = sample_string(d, rng);
    Amplitude a = amplitude(d, x);
    return {x, Diagram{d.variant, d.n, d.store, limdd_basis_edge(*d.store, x, a / std::abs(a))}};
}

inline Diagram limdd_project(const Diagram &d, int q, int b, double p) {
    return limdd_scale(limdd_apply_diag(d, q, b ? 0.0 : 1.0, b ? 1.0 : 0.0), 1.0 / std::sqrt(p));
}

/// True iff a = lambda b. Both roots must reach the same canonical node, and
/// the two root strings may differ only by a stabilizer of that node.
inline bool limdd_equal(const Diagram &a, const Diagram &b) {
    using namespace limdd_detail;
    require(a.n == b.n, "operands have different qubit counts");
    Edge rb = limdd_import(*a.store, b);
    if (a.root.zero() || rb.zero()) {
        return a.root.zero() && rb.zero();
    }
    if (a.root.node != rb.node) {
        return false;
    }
    u128 k = PauliString{a.root.p.x ^ rb.p.x, a.root.p.z ^ rb.p.z}.key();
    for (const PauliLim &g : a.store->stab(rb.node)) {
        if ((k >> top_bit(g.p.key())) & 1) {
            k ^= g.p.key();
        }
    }
    return k == 0;
}

/// Exponential reference: expands both operands densely.
inline Amplitude limdd_inner_product_bruteforce(const Diagram &a, const Diagram &b) {
    require(a.n == b.n, "operands have different qubit counts");
    return dense_inner_product(to_dense(a), to_dense(b));
}

}  // namespace qskc

#endif
