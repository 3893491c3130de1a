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

#ifndef QSKC_QMDD_HPP
#define QSKC_QMDD_HPP

#include <array>
#include <cmath>
#include <functional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qskc/circuit.hpp"
#include "qskc/qdd/store.hpp"
#include "qskc/qdd/walk.hpp"

namespace qskc {

/// Canonical QMDD node: the first nonzero child weight becomes exactly 1 and
/// is returned on the incoming edge.
inline Edge qmdd_make_node(Store &s, int level, Edge lo, Edge hi) {
    if (!lo.zero() && approx_zero(lo.w)) {
        lo = zero_edge();
    }
    if (!hi.zero() && approx_zero(hi.w)) {
        hi = zero_edge();
    }
    if (lo.zero() && hi.zero()) {
        return zero_edge();
    }
    Amplitude f;
    if (!lo.zero()) {
        f = lo.w;
        lo.w = 1.0;
        hi.w = hi.zero() ? Amplitude(0.0) : hi.w / f;
    } else {
        f = hi.w;
        hi.w = 1.0;
    }
    return Edge{f, {}, s.unique(level, lo, hi)};
}

inline Diagram with_root(const Diagram &d, Edge root) {
    return Diagram{d.variant, d.n, d.store, root};
}

/// Product state; factors[j-1] holds (<0|, <1|) of qubit j.
inline Diagram qmdd_product(const std::vector<std::array<Amplitude, 2>> &factors) {
    Diagram d = new_diagram(Variant::QMDD, (int)factors.size());
    Edge e{1.0, {}, kLeaf};
    for (int q = 1; q <= d.n; q++) {
        e = qmdd_make_node(*d.store, q, scale_edge(e, factors[q - 1][0]), scale_edge(e, factors[q - 1][1]));
    }
    d.root = e;
    return d;
}

/// Path to x carrying the given phase, built in an existing store.
inline Edge qmdd_basis_edge(Store &s, const BasisString &x, Amplitude phase = 1.0) {
    Edge e{1.0, {}, kLeaf};
    for (int q = 1; q <= x.size(); q++) {
        e = x.bit(q) ? qmdd_make_node(s, q, zero_edge(), e) : qmdd_make_node(s, q, e, zero_edge());
    }
    return scale_edge(e, phase);
}

inline Diagram qmdd_basis(const BasisString &x) {
    Diagram d = new_diagram(Variant::QMDD, x.size());
    d.root = qmdd_basis_edge(*d.store, x);
    return d;
}

inline Diagram qmdd_zero(int n) {
    Diagram d = new_diagram(Variant::QMDD, n);
    d.root = zero_edge();
    return d;
}

inline Diagram qmdd_from_dense(const DenseState &s) {
    require(s.n >= 1, "qmdd_from_dense needs n >= 1");
    check_dense_size(s.n);
    Diagram d = new_diagram(Variant::QMDD, s.n);
    std::vector<Edge> layer(s.dim());
    for (std::size_t k = 0; k < s.dim(); k++) {
        layer[k] = approx_zero(s.amps[k]) ? zero_edge() : Edge{s.amps[k], {}, kLeaf};
    }
    for (int q = 1; q <= s.n; q++) {
        std::vector<Edge> next(layer.size() / 2);
        for (std::size_t k = 0; k < next.size(); k++) {
            next[k] = qmdd_make_node(*d.store, q, layer[2 * k], layer[2 * k + 1]);
        }
        layer = std::move(next);
    }
    d.root = layer[0];
    return d;
}

/// Rebuilds src's reachable nodes inside dst; returns the equivalent root.
inline Edge qmdd_import(Store &dst, const Diagram &src) {
    if (&dst == src.store.get()) {
        return src.root;
    }
    std::unordered_map<NodeId, Edge> map{{kLeaf, Edge{1.0, {}, kLeaf}}};
    for (NodeId id : reachable(src)) {
        const Node &nd = src.node(id);
        if (nd.level == 0) {
            continue;
        }
        auto child = [&](const Edge &e) { return e.zero() ? e : scale_edge(map.at(e.node), e.w); };
        map[id] = qmdd_make_node(dst, nd.level, child(nd.lo), child(nd.hi));
    }
    return scale_edge(map.at(src.root.node), src.root.w);
}

namespace detail {

inline void check_qubit(const Diagram &d, int q) {
    require(q >= 1 && q <= d.n, "qubit " + std::to_string(q) + " out of range [1, " + std::to_string(d.n) + "]");
}

/// Memoized rewrite of the part of a diagram above (and at) some level: for a
/// node at the target level `at` calls leaf_fn, above it recurses.
class LevelRewrite {
   public:
    LevelRewrite(Store &s, int at, std::function<Edge(NodeId)> at_fn) : s_(s), at_(at), at_fn_(std::move(at_fn)) {}

    Edge edge(const Edge &e) {
        if (e.zero()) {
            return e;
        }
        return scale_edge(node(e.node), e.w);
    }

    Edge node(NodeId v) {
        auto it = memo_.find(v);
        if (it != memo_.end()) {
            return it->second;
        }
        Node nd = s_.node(v);
        Edge r;
        if (nd.level == at_) {
            r = at_fn_(v);
        } else {
            Edge lo = edge(nd.lo);
            Edge hi = edge(nd.hi);
            r = qmdd_make_node(s_, nd.level, lo, hi);
        }
        memo_.emplace(v, r);
        return r;
    }

   private:
    Store &s_;
    int at_;
    std::function<Edge(NodeId)> at_fn_;
    std::unordered_map<NodeId, Edge> memo_;
};

}  // namespace detail

/// diag(alpha, beta) on qubit q, or [[0, alpha], [beta, 0]] when antidiag.
inline Diagram qmdd_apply_diag1q(const Diagram &d, int q, Amplitude alpha, Amplitude beta, bool antidiag) {
    detail::check_qubit(d, q);
    Store &s = *d.store;
    detail::LevelRewrite rw(s, q, [&](NodeId v) {
        Edge lo = s.node(v).lo, hi = s.node(v).hi;
        if (antidiag) {
            return qmdd_make_node(s, q, scale_edge(hi, alpha), scale_edge(lo, beta));
        }
        return qmdd_make_node(s, q, scale_edge(lo, alpha), scale_edge(hi, beta));
    });
    return with_root(d, rw.edge(d.root));
}

inline Diagram qmdd_scale(const Diagram &d, Amplitude c) {
    return with_root(d, scale_edge(d.root, c));
}

/// Controlled-Z with per-call caches on the control and target passes.
inline Diagram qmdd_apply_cz(const Diagram &d, int a, int b) {
    detail::check_qubit(d, a);
    detail::check_qubit(d, b);
    require(a != b, "cz needs two distinct qubits");
    if (a < b) {
        std::swap(a, b);
    }
    Store &s = *d.store;
    detail::LevelRewrite apply_z(s, b, [&](NodeId v) {
        Node nd = s.node(v);
        return qmdd_make_node(s, b, nd.lo, scale_edge(nd.hi, -1.0));
    });
    detail::LevelRewrite apply_cz(s, a, [&](NodeId v) {
        Node nd = s.node(v);
        Edge hi = apply_z.edge(nd.hi);
        return qmdd_make_node(s, a, nd.lo, hi);
    });
    return with_root(d, apply_cz.edge(d.root));
}

namespace detail {

class QmddAdder {
   public:
    explicit QmddAdder(Store &s) : s_(s) {}

    Edge add(const Edge &x, const Edge &y) {
        if (x.zero()) {
            return y;
        }
        if (y.zero()) {
            return x;
        }
        int level = s_.level(x.node);
        if (level != s_.level(y.node)) {
            throw std::invalid_argument("qmdd add: operands at different levels");
        }
        if (level == 0) {
            Amplitude w = x.w + y.w;
            return approx_zero(w) ? zero_edge() : Edge{w, {}, kLeaf};
        }
        Amplitude ratio = s_.intern(y.w / x.w);
        Key k{x.node, y.node, ratio};
        auto it = memo_.find(k);
        Edge r;
        if (it != memo_.end()) {
            r = it->second;
        } else {
            Edge xe{1.0, {}, x.node}, ye{ratio, {}, y.node};
            Edge lo = add(follow(s_, Variant::QMDD, xe, 0), follow(s_, Variant::QMDD, ye, 0));
            Edge hi = add(follow(s_, Variant::QMDD, xe, 1), follow(s_, Variant::QMDD, ye, 1));
            r = qmdd_make_node(s_, level, lo, hi);
            memo_.emplace(k, r);
        }
        return scale_edge(r, x.w);
    }

   private:
    struct Key {
        NodeId a, b;
        Amplitude r;
        bool operator==(const Key &) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key &k) const {
            std::size_t h = k.a;
            hash_combine(h, k.b);
            hash_combine(h, hash_amplitude(k.r));
            return h;
        }
    };
    Store &s_;
    std::unordered_map<Key, Edge, KeyHash> memo_;
};

inline void check_same_n(const Diagram &a, const Diagram &b) {
    require(a.n == b.n, "operands have different qubit counts");
}

}  // namespace detail

/// Pointwise sum. Exact, but the output can be exponentially larger.
inline Diagram qmdd_add(const Diagram &a, const Diagram &b) {
    detail::check_same_n(a, b);
    Edge rb = qmdd_import(*a.store, b);
    detail::QmddAdder adder(*a.store);
    return with_root(a, adder.add(a.root, rb));
}

/// H on qubit q via child addition; exponential in the worst case.
inline Diagram qmdd_apply_hadamard(const Diagram &d, int q) {
    detail::check_qubit(d, q);
    Store &s = *d.store;
    detail::QmddAdder adder(s);
    double r = 1 / std::sqrt(2.0);
    detail::LevelRewrite rw(s, q, [&](NodeId v) {
        const Node &nd = s.node(v);
        Edge lo = nd.lo, hi = nd.hi;
        Edge plus = adder.add(lo, hi);
        Edge minus = adder.add(lo, scale_edge(hi, -1.0));
        return qmdd_make_node(s, q, scale_edge(plus, r), scale_edge(minus, r));
    });
    return with_root(d, rw.edge(d.root));
}

namespace detail {

/// Builds, for the swap of levels a > b, the level-(a-1) function
/// h(x_b = d, rest) = f_d(x_b = c, rest) from f_0 = e0 and f_1 = e1.
class SwapPlacer {
   public:
    SwapPlacer(Store &s, int b) : s_(s), b_(b) {}

    Edge place(const Edge &e0, const Edge &e1, int c) {
        if (e0.zero() && e1.zero()) {
            return zero_edge();
        }
        const Edge &lead = e0.zero() ? e1 : e0;
        Amplitude f = lead.w;
        Key k{e0.zero() ? kNone : e0.node, e1.zero() ? kNone : e1.node,
              e0.zero() || e1.zero() ? Amplitude(1.0) : s_.intern(e1.w / f), c};
        auto it = memo_.find(k);
        if (it != memo_.end()) {
            return scale_edge(it->second, f);
        }
        Edge n0 = e0.zero() ? e0 : Edge{1.0, {}, e0.node};
        Edge n1 = e1.zero() ? e1 : Edge{e0.zero() ? Amplitude(1.0) : k.r, {}, e1.node};
        int level = s_.level(lead.node);
        Edge r;
        auto fl = [&](const Edge &e, int x) { return follow(s_, Variant::QMDD, e, x); };
        if (level == b_) {
            r = qmdd_make_node(s_, b_, fl(n0, c), fl(n1, c));
        } else {
            r = qmdd_make_node(s_, level, place(fl(n0, 0), fl(n1, 0), c), place(fl(n0, 1), fl(n1, 1), c));
        }
        memo_.emplace(k, r);
        return scale_edge(r, f);
    }

   private:
    static constexpr NodeId kNone = ~NodeId(0);
    struct Key {
        NodeId a, b;
        Amplitude r;
        int c;
        bool operator==(const Key &) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key &k) const {
            std::size_t h = k.a;
            hash_combine(h, k.b);
            hash_combine(h, hash_amplitude(k.r));
            hash_combine(h, std::size_t(k.c));
            return h;
        }
    };
    Store &s_;
    int b_;
    std::unordered_map<Key, Edge, KeyHash> memo_;
};

}  // namespace detail

/// Swap by direct level exchange.
inline Diagram qmdd_apply_swap(const Diagram &d, int a, int b) {
    detail::check_qubit(d, a);
    detail::check_qubit(d, b);
    require(a != b, "swap needs two distinct qubits");
    if (a < b) {
        std::swap(a, b);
    }
    Store &s = *d.store;
    detail::SwapPlacer placer(s, b);
    detail::LevelRewrite rw(s, a, [&](NodeId v) {
        const Node &nd = s.node(v);
        Edge lo = nd.lo, hi = nd.hi;
        return qmdd_make_node(s, a, placer.place(lo, hi, 0), placer.place(lo, hi, 1));
    });
    return with_root(d, rw.edge(d.root));
}

/// Swap as three CX gates, each CX = H_t CZ H_t. Kept to cross-check
/// qmdd_apply_swap.
inline Diagram qmdd_apply_swap_cx(const Diagram &d, int a, int b) {
    require(a != b, "swap needs two distinct qubits");
    auto cx = [](const Diagram &x, int c, int t) {
        return qmdd_apply_hadamard(qmdd_apply_cz(qmdd_apply_hadamard(x, t), c, t), t);
    };
    return cx(cx(cx(d, a, b), b, a), a, b);
}

/// Any unitary on k targets, as the sum of its 4^k terms U[x,y] |x><y|.
inline Diagram qmdd_apply_local(const Diagram &d, const Gate &g) {
    for (int t : g.targets) {
        detail::check_qubit(d, t);
    }
    int k = g.arity();
    if (k == 1) {
        int q = g.targets[0];
        Diagram diag = qmdd_apply_diag1q(d, q, g.at(0, 0), g.at(1, 1), false);
        Diagram anti = qmdd_apply_diag1q(d, q, g.at(0, 1), g.at(1, 0), true);
        return qmdd_add(diag, anti);
    }
    int dim = g.dim();
    Diagram acc = with_root(d, zero_edge());
    for (int x = 0; x < dim; x++) {
        for (int y = 0; y < dim; y++) {
            Amplitude u = g.at(x, y);
            if (approx_zero(u)) {
                continue;
            }
            Diagram term = d;
            for (int i = 0; i < k; i++) {
                int xi = (x >> (k - 1 - i)) & 1, yi = (y >> (k - 1 - i)) & 1;
                int q = g.targets[i];
                if (xi == yi) {
                    term = qmdd_apply_diag1q(term, q, xi ? 0.0 : 1.0, xi ? 1.0 : 0.0, false);
                } else {
                    term = qmdd_apply_diag1q(term, q, xi ? 0.0 : 1.0, xi ? 1.0 : 0.0, true);
                }
            }
            acc = qmdd_add(acc, qmdd_scale(term, u));
        }
    }
    return acc;
}

inline Diagram qmdd_apply_gate(const Diagram &d, const Gate &g) {
    switch (g.kind) {
        case GateKind::X:
        case GateKind::Y:
            return qmdd_apply_diag1q(d, g.targets[0], g.at(0, 1), g.at(1, 0), true);
        case GateKind::Z:
        case GateKind::S:
        case GateKind::T:
        case GateKind::Phase:
            return qmdd_apply_diag1q(d, g.targets[0], g.at(0, 0), g.at(1, 1), false);
        case GateKind::H:
            return qmdd_apply_hadamard(d, g.targets[0]);
        case GateKind::CZ:
            return qmdd_apply_cz(d, g.targets[0], g.targets[1]);
        case GateKind::Swap:
            return qmdd_apply_swap(d, g.targets[0], g.targets[1]);
        case GateKind::Local:
            if (g.is_diagonal()) {
                return qmdd_apply_diag1q(d, g.targets[0], g.at(0, 0), g.at(1, 1), false);
            }
            if (g.is_antidiagonal()) {
                return qmdd_apply_diag1q(d, g.targets[0], g.at(0, 1), g.at(1, 0), true);
            }
            return qmdd_apply_local(d, g);
    }
    return d;
}

inline double qmdd_prob(const Diagram &d, const BasisString &x) {
    return prob(d, x);
}

/// Draws x and returns the collapsed state, a single path carrying the phase
/// of the sampled amplitude.
inline std::pair<BasisString, Diagram> qmdd_sample(const Diagram &d, std::uint64_t seed) {
    Rng rng(seed);
    BasisString x = sample_string(d, rng);
    Amplitude a = amplitude(d, x);
    return {x, with_root(d, qmdd_basis_edge(*d.store, x, a / std::abs(a)))};
}

/// Projects qubit q onto |b> and renormalizes.
inline Diagram qmdd_project(const Diagram &d, int q, int b, double p) {
    Diagram r = qmdd_apply_diag1q(d, q, b ? 0.0 : 1.0, b ? 1.0 : 0.0, false);
    return qmdd_scale(r, 1.0 / std::sqrt(p));
}

/// True iff a = lambda b for some nonzero lambda; compares canonical roots.
inline bool qmdd_equal(const Diagram &a, const Diagram &b) {
    detail::check_same_n(a, b);
    Edge rb = qmdd_import(*a.store, b);
    if (a.root.zero() || rb.zero()) {
        return a.root.zero() && rb.zero();
    }
    return a.root.node == rb.node;
}

/// Structural identity of two diagrams in the same store, weights included.
inline bool qmdd_identical(const Diagram &a, const Diagram &b) {
    if (a.store != b.store || a.root.node != b.root.node) {
        return false;
    }
    return a.root.zero() == b.root.zero() && approx_equal(a.root.w, b.root.w);
}

}  // namespace qskc

#endif
