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

#ifndef QSKC_ADD_HPP
#define QSKC_ADD_HPP

#include <functional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qskc/circuit.hpp"
#include "qskc/qdd/store.hpp"
#include "qskc/qdd/walk.hpp"

namespace qskc {

// ADD edges always carry the label 1 and nodes are merged only when both
// children coincide. Redundant nodes stay, since levels may not be skipped.

inline Edge add_make_node(Store &s, int level, const Edge &lo, const Edge &hi) {
    return Edge{1.0, {}, s.unique(level, lo, hi)};
}

inline Edge add_leaf(Store &s, Amplitude v) {
    return Edge{1.0, {}, s.leaf(v)};
}

/// All-zero function over levels level..1.
inline Edge add_zero_chain(Store &s, int level) {
    Edge e = add_leaf(s, 0.0);
    for (int q = 1; q <= level; q++) {
        e = add_make_node(s, q, e, e);
    }
    return e;
}

inline Diagram add_zero(int n) {
    Diagram d = new_diagram(Variant::ADD, n);
    d.root = add_zero_chain(*d.store, n);
    return d;
}

inline Diagram add_from_dense(const DenseState &s) {
    require(s.n >= 1, "add_from_dense needs n >= 1");
    check_dense_size(s.n);
    Diagram d = new_diagram(Variant::ADD, s.n);
    std::vector<Edge> layer(s.dim());
    for (std::size_t k = 0; k < s.dim(); k++) {
        layer[k] = add_leaf(*d.store, approx_zero(s.amps[k]) ? Amplitude(0.0) : s.amps[k]);
    }
    for (int q = 1; q <= s.n; q++) {
        std::vector<Edge> next(layer.size() / 2);
        for (std::size_t k = 0; k < next.size(); k++) {
            next[k] = add_make_node(*d.store, q, layer[2 * k], layer[2 * k + 1]);
        }
        layer = std::move(next);
    }
    d.root = layer[0];
    return d;
}

/// Single path to x with leaf value `value`, all other paths reaching 0.
inline Edge add_basis_edge(Store &s, const BasisString &x, Amplitude value = 1.0) {
    Edge e = add_leaf(s, value);
    Edge z = add_leaf(s, 0.0);
    for (int q = 1; q <= x.size(); q++) {
        e = x.bit(q) ? add_make_node(s, q, z, e) : add_make_node(s, q, e, z);
        z = add_make_node(s, q, z, z);
    }
    return e;
}

inline Diagram add_basis(const BasisString &x) {
    Diagram d = new_diagram(Variant::ADD, x.size());
    d.root = add_basis_edge(*d.store, x);
    return d;
}

/// Copies src's reachable nodes into dst.
inline Edge add_import(Store &dst, const Diagram &src) {
    if (&dst == src.store.get()) {
        return src.root;
    }
    std::unordered_map<NodeId, Edge> map;
    for (NodeId id : reachable(src)) {
        const Node &nd = src.node(id);
        map[id] = nd.level == 0 ? add_leaf(dst, nd.leaf)
                                : add_make_node(dst, nd.level, map.at(nd.lo.node), map.at(nd.hi.node));
    }
    return map.at(src.root.node);
}

namespace detail {

/// Memoized bottom-up rebuild: leaves through leaf_fn, internal nodes through
/// node_fn(level, new_lo, new_hi, old_node).
inline Edge add_rebuild(Store &s, const Edge &root, const std::function<Edge(Amplitude)> &leaf_fn,
                        const std::function<Edge(int, Edge, Edge, NodeId)> &node_fn) {
    std::unordered_map<NodeId, Edge> map;
    for (NodeId id : reachable(s, root)) {
        Node nd = s.node(id);
        map[id] = nd.level == 0 ? leaf_fn(nd.leaf) : node_fn(nd.level, map.at(nd.lo.node), map.at(nd.hi.node), id);
    }
    return map.at(root.node);
}

}  // namespace detail

inline Diagram add_scale(const Diagram &d, Amplitude c) {
    Store &s = *d.store;
    Edge r = detail::add_rebuild(
        s, d.root, [&](Amplitude v) { return add_leaf(s, v * c); },
        [&](int level, Edge lo, Edge hi, NodeId) { return add_make_node(s, level, lo, hi); });
    return Diagram{d.variant, d.n, d.store, r};
}

namespace detail {

class AddSummer {
   public:
    explicit AddSummer(Store &s) : s_(s) {}

    Edge sum(NodeId a, NodeId b) {
        auto key = std::make_pair(a, b);
        auto it = memo_.find(key);
        if (it != memo_.end()) {
            return it->second;
        }
        Node na = s_.node(a), nb = s_.node(b);
        require(na.level == nb.level, "add_sum: operands at different levels");
        Edge r = na.level == 0 ? add_leaf(s_, na.leaf + nb.leaf)
                               : add_make_node(s_, na.level, sum(na.lo.node, nb.lo.node), sum(na.hi.node, nb.hi.node));
        memo_.emplace(key, r);
        return r;
    }

   private:
    struct PairHash {
        std::size_t operator()(const std::pair<NodeId, NodeId> &p) const {
            std::size_t h = p.first;
            hash_combine(h, p.second);
            return h;
        }
    };
    Store &s_;
    std::unordered_map<std::pair<NodeId, NodeId>, Edge, PairHash> memo_;
};

}  // namespace detail

/// Pointwise sum, O(|a| |b|) by pair memoization.
inline Diagram add_sum(const Diagram &a, const Diagram &b) {
    require(a.n == b.n, "operands have different qubit counts");
    Edge rb = add_import(*a.store, b);
    detail::AddSummer summer(*a.store);
    return Diagram{a.variant, a.n, a.store, summer.sum(a.root.node, rb.node)};
}

/// Applies |x><y| on qubit q: restrict to x_q = y and place the result at x_q = x.
inline Diagram add_apply_ketbra(const Diagram &d, int q, int x, int y) {
    require(q >= 1 && q <= d.n, "qubit out of range");
    Store &s = *d.store;
    Edge root = detail::add_rebuild(
        s, d.root, [&](Amplitude v) { return add_leaf(s, v); },
        [&](int level, Edge lo, Edge hi, NodeId old) {
            if (level != q) {
                return add_make_node(s, level, lo, hi);
            }
            // children below q are unchanged, so take them from the old node
            Node nd = s.node(old);
            Edge src = y ? nd.hi : nd.lo;
            Edge z = add_zero_chain(s, q - 1);
            return x ? add_make_node(s, q, z, src) : add_make_node(s, q, src, z);
        });
    return Diagram{d.variant, d.n, d.store, root};
}

inline constexpr int kAddMaxLocal = 3;

/// k-local unitary as the sum of 4^k restricted-and-rerouted terms.
inline Diagram add_apply_local(const Diagram &d, const Gate &g) {
    int k = g.arity();
    if (k > kAddMaxLocal) {
        throw Unsupported("ADD local gates are limited to " + std::to_string(kAddMaxLocal) + " qubits");
    }
    for (int t : g.targets) {
        require(t >= 1 && t <= d.n, "gate target out of range");
    }
    int dim = g.dim();
    Diagram acc{d.variant, d.n, d.store, add_zero_chain(*d.store, d.n)};
    for (int x = 0; x < dim; x++) {
        for (int y = 0; y < dim; y++) {
            Amplitude u = g.at(x, y);
            if (approx_zero(u)) {
                continue;
            }
            Diagram term = d;
            for (int i = 0; i < k; i++) {
                term = add_apply_ketbra(term, g.targets[i], (x >> (k - 1 - i)) & 1, (y >> (k - 1 - i)) & 1);
            }
            acc = add_sum(acc, add_scale(term, u));
        }
    }
    return acc;
}

inline Diagram add_apply_gate(const Diagram &d, const Gate &g) {
    return add_apply_local(d, g);
}

/// <a|b> by pair memoization.
inline Amplitude add_inner_product(const Diagram &a, const Diagram &b) {
    require(a.n == b.n, "operands have different qubit counts");
    Edge rb = add_import(*a.store, b);
    const Store &s = *a.store;
    struct PairHash {
        std::size_t operator()(const std::pair<NodeId, NodeId> &p) const {
            std::size_t h = p.first;
            hash_combine(h, p.second);
            return h;
        }
    };
    std::unordered_map<std::pair<NodeId, NodeId>, Amplitude, PairHash> memo;
    std::function<Amplitude(NodeId, NodeId)> ip = [&](NodeId u, NodeId v) -> Amplitude {
        auto key = std::make_pair(u, v);
        auto it = memo.find(key);
        if (it != memo.end()) {
            return it->second;
        }
        const Node &nu = s.node(u), &nv = s.node(v);
        Amplitude r = nu.level == 0 ? std::conj(nu.leaf) * nv.leaf
                                    : ip(nu.lo.node, nv.lo.node) + ip(nu.hi.node, nv.hi.node);
        memo.emplace(key, r);
        return r;
    };
    return ip(a.root.node, rb.node);
}

inline double add_prob(const Diagram &d, const BasisString &x) {
    return prob(d, x);
}

inline std::pair<BasisString, Diagram> add_sample(const Diagram &d, std::uint64_t seed) {
    Rng rng(seed);
    BasisString x = sample_string(d, rng);
    Amplitude a = amplitude(d, x);
    return {x, Diagram{d.variant, d.n, d.store, add_basis_edge(*d.store, x, a / std::abs(a))}};
}

inline Diagram add_project(const Diagram &d, int q, int b, double p) {
    return add_scale(add_apply_ketbra(d, q, b, b), 1.0 / std::sqrt(p));
}

/// Equality up to a nonzero factor: both sides are scaled so their first
/// nonzero amplitude is 1, then compared structurally.
inline bool add_equal(const Diagram &a, const Diagram &b) {
    require(a.n == b.n, "operands have different qubit counts");
    auto lead = first_nonzero(a);
    if (!lead) {
        return !first_nonzero(b).has_value();
    }
    Amplitude va = amplitude(a, *lead), vb = amplitude(b, *lead);
    if (approx_zero(vb)) {
        return false;
    }
    Diagram na = add_scale(a, 1.0 / va);
    Diagram nb = add_scale(b, 1.0 / vb);
    return add_import(*na.store, nb).node == na.root.node;
}

}  // namespace qskc

#endif
