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

#ifndef QSKC_TRANSFORM_HPP
#define QSKC_TRANSFORM_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qskc/add.hpp"
#include "qskc/limdd.hpp"
#include "qskc/mps.hpp"
#include "qskc/qmdd.hpp"

namespace qskc {

/// Site l holds the weighted adjacency between level-l and level-(l-1) nodes;
/// nodes within a level are ordered by store id. Linear in the diagram size.
inline Mps qmdd_to_mps(const Diagram &d) {
    require(d.variant == Variant::QMDD, "qmdd_to_mps needs a QMDD");
    Mps m;
    m.n = d.n;
    m.sites.resize(d.n);
    if (d.root.zero()) {
        for (auto &s : m.sites) {
            s = {Matrix::Zero(1, 1), Matrix::Zero(1, 1)};
        }
        return m;
    }
    std::vector<std::vector<NodeId>> levels(d.n + 1);
    for (NodeId id : reachable(d)) {
        levels[d.node(id).level].push_back(id);
    }
    std::unordered_map<NodeId, Eigen::Index> pos;
    for (auto &lv : levels) {
        std::sort(lv.begin(), lv.end());
        for (std::size_t i = 0; i < lv.size(); i++) {
            pos[lv[i]] = Eigen::Index(i);
        }
    }
    for (int l = 1; l <= d.n; l++) {
        auto rows = Eigen::Index(levels[l].size()), cols = Eigen::Index(levels[l - 1].size());
        std::array<Matrix, 2> a{Matrix::Zero(rows, cols), Matrix::Zero(rows, cols)};
        for (NodeId id : levels[l]) {
            const Node &nd = d.node(id);
            for (int x = 0; x < 2; x++) {
                const Edge &c = x ? nd.hi : nd.lo;
                if (!c.zero()) {
                    a[x](pos.at(id), pos.at(c.node)) += c.w;
                }
            }
        }
        m.site(l) = std::move(a);
    }
    m.site(d.n)[0] *= d.root.w;
    m.site(d.n)[1] *= d.root.w;
    return m;
}

/// Relative residual below which two sub-states count as co-linear while
/// converting an MPS.
inline constexpr double kColinearTol = 1e-9;

struct MpsToQmddResult {
    Diagram diagram;
    std::size_t calls = 0;  // recursive calls that missed the co-linearity cache
};

/// Top-down expansion of the prefix vectors L = A_n^{x_n} ... A_{k+1}^{x_{k+1}}.
/// Before expanding, L is compared with every sub-state already built on its
/// level; a co-linear match reuses that node with the overlap as its weight.
inline MpsToQmddResult mps_to_qmdd_counted(const Mps &m) {
    m.validate();
    MpsToQmddResult res{new_diagram(Variant::QMDD, m.n), 0};
    Store &s = *res.diagram.store;
    auto envs = mps_detail::right_envs(m);
    struct Seen {
        Matrix l;
        double norm2;
        Edge edge;
    };
    std::vector<std::vector<Seen>> seen(m.n + 1);
    std::function<Edge(int, const Matrix &)> rec = [&](int k, const Matrix &l) -> Edge {
        if (k == 0) {
            Amplitude v = l(0, 0);
            return approx_zero(v) ? zero_edge() : Edge{v, {}, kLeaf};
        }
        const Matrix &r = envs[k];
        double nn = (l * r * l.adjoint())(0, 0).real();
        if (!(nn > kEps * kEps)) {
            return zero_edge();
        }
        for (const Seen &v : seen[k]) {
            Amplitude lam = (l * r * v.l.adjoint())(0, 0) / v.norm2;  // <v|l> / <v|v>
            // The residual is formed directly; 1 - cos^2 would cancel away
            // differences below about 1e-8.
            Matrix delta = l - lam * v.l;
            double res = (delta * r * delta.adjoint())(0, 0).real();
            if (res <= kColinearTol * kColinearTol * nn) {
                return scale_edge(v.edge, lam);
            }
        }
        res.calls++;
        Edge lo = rec(k - 1, l * m.site(k)[0]);
        Edge hi = rec(k - 1, l * m.site(k)[1]);
        Edge e = qmdd_make_node(s, k, lo, hi);
        seen[k].push_back(Seen{l, nn, e});
        return e;
    };
    res.diagram.root = rec(m.n, Matrix::Ones(1, 1));
    return res;
}

inline Diagram mps_to_qmdd(const Mps &m) {
    return mps_to_qmdd_counted(m).diagram;
}

/// Expands Pauli labels into scalars. A label P on node v is first reduced by
/// v's stabilizer, so the cache key (node, reduced P) only distinguishes
/// genuinely different sub-states.
inline Diagram limdd_to_qmdd(const Diagram &d) {
    require(d.variant == Variant::LIMDD, "limdd_to_qmdd needs a LIMDD");
    Diagram out = new_diagram(Variant::QMDD, d.n);
    Store &dst = *out.store;
    const Store &src = *d.store;
    struct Key {
        NodeId node;
        std::uint64_t x, z;
        bool operator==(const Key &) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key &k) const {
            std::size_t h = k.node;
            hash_combine(h, std::size_t(k.x * 0x9E3779B97F4A7C15ull));
            hash_combine(h, std::size_t(k.z));
            return h;
        }
    };
    std::unordered_map<Key, Edge, KeyHash> memo;
    std::function<Edge(const Edge &)> rec = [&](const Edge &e) -> Edge {
        if (e.zero()) {
            return zero_edge();
        }
        if (src.is_leaf(e.node)) {
            return Edge{e.w * src.node(e.node).leaf, {}, kLeaf};
        }
        PauliLim p{1.0, e.p};
        for (const PauliLim &g : src.stab(e.node)) {
            if ((p.p.key() >> limdd_detail::top_bit(g.p.key())) & 1) {
                p = p * g;
            }
        }
        Key key{e.node, p.p.x, p.p.z};
        Amplitude factor = e.w * p.lam;
        auto it = memo.find(key);
        if (it == memo.end()) {
            Edge unit{1.0, p.p, e.node};
            Edge r = qmdd_make_node(dst, src.level(e.node), rec(follow(src, Variant::LIMDD, unit, 0)),
                                    rec(follow(src, Variant::LIMDD, unit, 1)));
            it = memo.emplace(key, r).first;
        }
        return scale_edge(it->second, factor);
    };
    out.root = rec(d.root);
    return out;
}

/// Reads every scalar weight as lambda I and rebuilds through the LIMDD
/// MakeNode, which merges Pauli-isomorphic nodes.
inline Diagram qmdd_to_limdd(const Diagram &d) {
    require(d.variant == Variant::QMDD, "qmdd_to_limdd needs a QMDD");
    Diagram out = new_diagram(Variant::LIMDD, d.n);
    Store &dst = *out.store;
    std::unordered_map<NodeId, Edge> map{{kLeaf, Edge{1.0, {}, kLeaf}}};
    auto child = [&](const Edge &e) { return e.zero() ? zero_edge() : scale_edge(map.at(e.node), e.w); };
    for (NodeId id : reachable(d)) {
        Node nd = d.node(id);
        if (nd.level > 0) {
            map[id] = limdd_make_node(dst, nd.level, child(nd.lo), child(nd.hi));
        }
    }
    out.root = child(d.root);
    return out;
}

/// Moves each leaf value onto its incoming edges and reroutes them to the unit
/// leaf; the QMDD MakeNode then merges nodes equal up to a factor.
inline Diagram add_to_qmdd(const Diagram &d) {
    require(d.variant == Variant::ADD, "add_to_qmdd needs an ADD");
    Diagram out = new_diagram(Variant::QMDD, d.n);
    Store &dst = *out.store;
    std::unordered_map<NodeId, Edge> map;
    for (NodeId id : reachable(d)) {
        Node nd = d.node(id);
        if (nd.level == 0) {
            map[id] = approx_zero(nd.leaf) ? zero_edge() : Edge{nd.leaf, {}, kLeaf};
        } else {
            map[id] = qmdd_make_node(dst, nd.level, map.at(nd.lo.node), map.at(nd.hi.node));
        }
    }
    out.root = map.at(d.root.node);
    return out;
}

/// Expands w |v> for every (weight, node) pair met on the way down, sharing
/// pointwise-equal results. Exponential in the worst case; the store budget
/// stops runaway builds.
inline Diagram qmdd_to_add(const Diagram &d) {
    require(d.variant == Variant::QMDD, "qmdd_to_add needs a QMDD");
    Diagram out = new_diagram(Variant::ADD, d.n);
    Store &dst = *out.store;
    struct Key {
        NodeId node;
        Amplitude w;
        bool operator==(const Key &) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key &k) const {
            std::size_t h = k.node;
            hash_combine(h, hash_amplitude(k.w));
            return h;
        }
    };
    std::unordered_map<Key, Edge, KeyHash> memo;
    std::vector<Edge> zeros{add_leaf(dst, 0.0)};
    for (int q = 1; q <= d.n; q++) {
        zeros.push_back(add_make_node(dst, q, zeros.back(), zeros.back()));
    }
    std::function<Edge(int, const Edge &)> rec = [&](int level, const Edge &e) -> Edge {
        if (e.zero() || approx_zero(e.w)) {
            return zeros[level];
        }
        Amplitude w = dst.intern(e.w);
        Key key{e.node, w};
        auto it = memo.find(key);
        if (it != memo.end()) {
            return it->second;
        }
        Node nd = d.node(e.node);
        Edge r = level == 0 ? add_leaf(dst, w)
                            : add_make_node(dst, level, rec(level - 1, scale_edge(nd.lo, w)),
                                            rec(level - 1, scale_edge(nd.hi, w)));
        memo.emplace(key, r);
        return r;
    };
    out.root = rec(d.n, d.root);
    return out;
}

inline Diagram add_to_limdd(const Diagram &d) {
    return qmdd_to_limdd(add_to_qmdd(d));
}

inline Diagram limdd_to_add(const Diagram &d) {
    return qmdd_to_add(limdd_to_qmdd(d));
}

inline Amplitude qmdd_inner_product(const Diagram &a, const Diagram &b) {
    require(a.n == b.n, "operands have different qubit counts");
    return mps_inner_product(qmdd_to_mps(a), qmdd_to_mps(b));
}

inline double qmdd_fidelity(const Diagram &a, const Diagram &b) {
    require(a.n == b.n, "operands have different qubit counts");
    return mps_fidelity(qmdd_to_mps(a), qmdd_to_mps(b));
}

/// Round trip through a QMDD for the gates a LIMDD has no native routine for.
inline Diagram limdd_via_qmdd(const Diagram &d, const std::function<Diagram(const Diagram &)> &op) {
    return qmdd_to_limdd(op(limdd_to_qmdd(d)));
}

inline Diagram limdd_apply_hadamard(const Diagram &d, int q) {
    return limdd_via_qmdd(d, [&](const Diagram &x) { return qmdd_apply_hadamard(x, q); });
}

inline Diagram limdd_apply_swap(const Diagram &d, int a, int b) {
    return limdd_via_qmdd(d, [&](const Diagram &x) { return qmdd_apply_swap(x, a, b); });
}

inline Diagram limdd_apply_gate(const Diagram &d, const Gate &g) {
    switch (g.kind) {
        case GateKind::X:
            return limdd_apply_pauli(d, g.targets[0], 'X');
        case GateKind::Y:
            return limdd_apply_pauli(d, g.targets[0], 'Y');
        case GateKind::Z:
            return limdd_apply_pauli(d, g.targets[0], 'Z');
        case GateKind::S:
        case GateKind::T:
        case GateKind::Phase:
            return limdd_apply_diag(d, g.targets[0], g.at(0, 0), g.at(1, 1));
        case GateKind::CZ:
            return limdd_apply_cz(d, g.targets[0], g.targets[1]);
        case GateKind::H:
            return limdd_apply_hadamard(d, g.targets[0]);
        case GateKind::Swap:
            return limdd_apply_swap(d, g.targets[0], g.targets[1]);
        case GateKind::Local:
            if (g.is_diagonal()) {
                return limdd_apply_diag(d, g.targets[0], g.at(0, 0), g.at(1, 1));
            }
            return limdd_via_qmdd(d, [&](const Diagram &x) { return qmdd_apply_gate(x, g); });
    }
    return d;
}

inline Amplitude limdd_inner_product(const Diagram &a, const Diagram &b) {
    return qmdd_inner_product(limdd_to_qmdd(a), limdd_to_qmdd(b));
}

inline double limdd_fidelity(const Diagram &a, const Diagram &b) {
    return qmdd_fidelity(limdd_to_qmdd(a), limdd_to_qmdd(b));
}

}  // namespace qskc

#endif
