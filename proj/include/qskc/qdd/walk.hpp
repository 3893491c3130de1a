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

#ifndef QSKC_QDD_WALK_HPP
#define QSKC_QDD_WALK_HPP

#include <cmath>
#include <optional>
#include <unordered_map>

#include "qskc/basis.hpp"
#include "qskc/dense.hpp"
#include "qskc/qdd/store.hpp"

namespace qskc {

/// <x|P|y> for a single-qubit Pauli: returns y and the coefficient.
inline std::pair<int, Amplitude> pauli_row(char p, int x) {
    switch (p) {
        case 'X':
            return {1 - x, 1.0};
        case 'Y':
            return {1 - x, x ? Amplitude(0, 1) : Amplitude(0, -1)};
        case 'Z':
            return {x, x ? -1.0 : 1.0};
        default:
            return {x, 1.0};
    }
}

/// Edge for (<x| (x) I)|e>, where e targets a node at level >= 1.
inline Edge follow(const Store &s, Variant v, const Edge &e, int x) {
    if (e.zero()) {
        return zero_edge();
    }
    const Node &nd = s.node(e.node);
    if (nd.level == 0) {
        throw std::invalid_argument("follow: edge targets a leaf");
    }
    switch (v) {
        case Variant::ADD:
            return x ? nd.hi : nd.lo;
        case Variant::QMDD: {
            const Edge &c = x ? nd.hi : nd.lo;
            if (c.zero()) {
                return zero_edge();
            }
            return Edge{e.w * c.w, {}, c.node};
        }
        case Variant::LIMDD: {
            auto [y, coef] = pauli_row(e.p.at(nd.level), x);
            const Edge &c = y ? nd.hi : nd.lo;
            if (c.zero()) {
                return zero_edge();
            }
            PauliLim rest{e.w * coef, e.p.below(nd.level)};
            PauliLim out = rest * c.lim();
            return Edge{out.lam, out.p, c.node};
        }
    }
    return zero_edge();
}

inline Edge follow(const Diagram &d, const Edge &e, int x) {
    return follow(*d.store, d.variant, e, x);
}

/// Value of a level-0 edge.
inline Amplitude leaf_value(const Diagram &d, const Edge &e) {
    return e.zero() ? Amplitude(0.0) : e.w * d.node(e.node).leaf;
}

inline Amplitude amplitude(const Diagram &d, const BasisString &x) {
    require(x.size() == d.n, "basis string length does not match the diagram");
    Edge e = d.root;
    for (int q = d.n; q >= 1 && !e.zero(); q--) {
        e = follow(d, e, x.bit(q));
    }
    return leaf_value(d, e);
}

/// Squared norm of the state an edge represents (labels are unitary up to lambda).
inline double edge_norm2(const Diagram &d, const Edge &e) {
    return e.zero() ? 0.0 : std::norm(e.w) * d.node(e.node).norm2;
}

namespace detail {
inline void fill_dense(const Diagram &d, const Edge &e, int level, std::uint64_t prefix, DenseState &out) {
    if (e.zero()) {
        return;
    }
    if (level == 0) {
        out.amps[prefix] = leaf_value(d, e);
        return;
    }
    for (int x = 0; x < 2; x++) {
        fill_dense(d, follow(d, e, x), level - 1, prefix | (std::uint64_t(x) << (level - 1)), out);
    }
}
}  // namespace detail

/// Exponential: expands every path.
inline DenseState to_dense(const Diagram &d) {
    DenseState out(d.n);
    detail::fill_dense(d, d.root, d.n, 0, out);
    return out;
}

inline double prob(const Diagram &d, const BasisString &x) {
    double nn = norm2(d);
    if (!(nn > 0)) {
        throw Error("probability of a zero-norm diagram");
    }
    return std::norm(amplitude(d, x)) / nn;
}

/// Probability that qubit q reads 0, by summing branch norms over the levels
/// above q.
inline double prob_zero(const Diagram &d, int q) {
    require(q >= 1 && q <= d.n, "qubit out of range");
    double nn = norm2(d);
    if (!(nn > 0)) {
        throw Error("probability of a zero-norm diagram");
    }
    // Disjoint prefixes add in probability, and the norm of a branch depends
    // only on the node and the Pauli part of the label, so prefixes reaching
    // the same (node, string) merge with their |lambda|^2 summed.
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
    std::unordered_map<Key, double, KeyHash> frontier{{Key{d.root.node, d.root.p.x, d.root.p.z}, std::norm(d.root.w)}};
    if (d.root.zero()) {
        frontier.clear();
    }
    for (int level = d.n; level > q; level--) {
        std::unordered_map<Key, double, KeyHash> next;
        for (auto &[k, w] : frontier) {
            Edge e{1.0, {k.x, k.z}, k.node};
            for (int x = 0; x < 2; x++) {
                Edge c = follow(d, e, x);
                if (!c.zero()) {
                    next[Key{c.node, c.p.x, c.p.z}] += w * std::norm(c.w);
                }
            }
        }
        frontier = std::move(next);
    }
    double p0 = 0;
    for (auto &[k, w] : frontier) {
        p0 += w * edge_norm2(d, follow(d, Edge{1.0, {k.x, k.z}, k.node}, 0));
    }
    return p0 / nn;
}

/// First basis string, in index order, with a nonzero amplitude.
inline std::optional<BasisString> first_nonzero(const Diagram &d) {
    std::uint64_t index = 0;
    Edge e = d.root;
    if (edge_norm2(d, e) <= 0) {
        return std::nullopt;
    }
    for (int q = d.n; q >= 1; q--) {
        Edge lo = follow(d, e, 0);
        if (edge_norm2(d, lo) > 0) {
            e = lo;
        } else {
            e = follow(d, e, 1);
            index |= std::uint64_t(1) << (q - 1);
        }
    }
    return BasisString(d.n, index);
}

/// Chain-rule draw, qubit n first, one uniform per qubit.
inline BasisString sample_string(const Diagram &d, Rng &rng) {
    if (!(norm2(d) > 0)) {
        throw Error("sampling a zero-norm diagram");
    }
    std::uint64_t index = 0;
    Edge e = d.root;
    for (int q = d.n; q >= 1; q--) {
        Edge lo = follow(d, e, 0), hi = follow(d, e, 1);
        if (choose_bit(edge_norm2(d, lo), edge_norm2(d, hi), rng.uniform())) {
            e = hi;
            index |= std::uint64_t(1) << (q - 1);
        } else {
            e = lo;
        }
    }
    return BasisString(d.n, index);
}

}  // namespace qskc

#endif
