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

#ifndef QSKC_QDD_STORE_HPP
#define QSKC_QDD_STORE_HPP

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qskc/complex.hpp"
#include "qskc/error.hpp"
#include "qskc/pauli.hpp"

namespace qskc {

enum class Variant { ADD, QMDD, LIMDD };

inline const char *variant_name(Variant v) {
    switch (v) {
        case Variant::ADD:
            return "add";
        case Variant::QMDD:
            return "qmdd";
        case Variant::LIMDD:
            return "limdd";
    }
    return "?";
}

using NodeId = std::uint32_t;

/// The unit leaf; every store creates it first.
inline constexpr NodeId kLeaf = 0;

/// Default node budget, overridable by QSKC_NODE_BUDGET.
inline constexpr std::size_t kDefaultNodeBudget = 1000000;

inline std::size_t node_budget_from_env() {
    if (const char *s = std::getenv("QSKC_NODE_BUDGET")) {
        char *end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (end != s && *end == 0 && v > 0) {
            return std::size_t(v);
        }
    }
    return kDefaultNodeBudget;
}

/// Interns complex values so that values within kEps share one representative.
class ScalarTable {
   public:
    ScalarTable() {
        intern(0.0);
        intern(1.0);
    }

    Amplitude intern(Amplitude a) {
        if (approx_zero(a)) {
            return 0.0;
        }
        double bx = std::floor(a.real() / kEps), by = std::floor(a.imag() / kEps);
        for (double dx = -1; dx <= 1; dx++) {
            for (double dy = -1; dy <= 1; dy++) {
                auto it = buckets_.find(Cell{bx + dx, by + dy});
                if (it == buckets_.end()) {
                    continue;
                }
                for (Amplitude c : it->second) {
                    if (approx_equal(a, c)) {
                        return c;
                    }
                }
            }
        }
        buckets_[Cell{bx, by}].push_back(a);
        return a;
    }

   private:
    struct Cell {
        double x, y;
        bool operator==(const Cell &) const = default;
    };
    struct CellHash {
        std::size_t operator()(const Cell &c) const {
            return hash_amplitude({c.x, c.y});
        }
    };
    std::unordered_map<Cell, std::vector<Amplitude>, CellHash> buckets_;
};

/// Edge label and target. ADD uses w = 1 throughout; QMDD uses w; LIMDD uses
/// w as lambda and p as the Pauli string over the target's level. w == 0 is the
/// zero edge, which always targets the unit leaf.
struct Edge {
    Amplitude w = 1.0;
    PauliString p;
    NodeId node = kLeaf;

    bool zero() const {
        return w == 0.0;
    }
    bool operator==(const Edge &) const = default;
    PauliLim lim() const {
        return {w, p};
    }
};

inline Edge zero_edge() {
    return Edge{0.0, {}, kLeaf};
}

/// e scaled by c; tiny results become the zero edge.
inline Edge scale_edge(const Edge &e, Amplitude c) {
    if (e.zero()) {
        return e;
    }
    Amplitude w = e.w * c;
    if (approx_zero(w)) {
        return zero_edge();
    }
    return Edge{w, e.p, e.node};
}

struct Node {
    int level = 0;
    Edge lo, hi;
    Amplitude leaf = 1.0;  // leaves only
    double norm2 = 1.0;    // squared norm of the node's (unlabelled) state
};

/// Append-only node arena with a unique table. Nodes are immutable; derived
/// diagrams share their operand's store.
class Store {
   public:
    explicit Store(Variant v) : variant_(v), budget_(node_budget_from_env()) {
        nodes_.push_back(Node{0, {}, {}, 1.0, 1.0});
        stabs_.emplace_back();
        leaves_[hash_amplitude(1.0)].push_back(kLeaf);
    }

    Variant variant() const {
        return variant_;
    }
    std::size_t budget() const {
        return budget_;
    }
    void set_budget(std::size_t b) {
        budget_ = b;
    }
    std::size_t node_count() const {
        return nodes_.size();
    }
    const Node &node(NodeId id) const {
        return nodes_[id];
    }
    int level(NodeId id) const {
        return nodes_[id].level;
    }
    bool is_leaf(NodeId id) const {
        return nodes_[id].level == 0;
    }
    Amplitude intern(Amplitude a) {
        return scalars_.intern(a);
    }

    /// Hash-consed leaf; only ADD has leaves other than the unit leaf.
    NodeId leaf(Amplitude value) {
        value = intern(value);
        auto &bucket = leaves_[hash_amplitude(value)];
        for (NodeId id : bucket) {
            if (nodes_[id].leaf == value) {
                return id;
            }
        }
        NodeId id = push(Node{0, {}, {}, value, std::norm(value)});
        bucket.push_back(id);
        return id;
    }

    /// Looks up or inserts an internal node whose edges are already normalized
    /// by the caller's variant rule.
    NodeId unique(int level, Edge lo, Edge hi) {
        lo.w = intern(lo.w);
        hi.w = intern(hi.w);
        if (lo.zero()) {
            lo = zero_edge();
        }
        if (hi.zero()) {
            hi = zero_edge();
        }
        for (const Edge &e : {lo, hi}) {
            if (!e.zero() && nodes_[e.node].level != level - 1) {
                throw std::invalid_argument("make_node: child level " + std::to_string(nodes_[e.node].level) +
                                            " under a level " + std::to_string(level) + " node");
            }
        }
        Key k{level, lo, hi};
        auto it = table_.find(k);
        if (it != table_.end()) {
            return it->second;
        }
        double n2 = std::norm(lo.w) * nodes_[lo.node].norm2 + std::norm(hi.w) * nodes_[hi.node].norm2;
        NodeId id = push(Node{level, lo, hi, 0.0, n2});
        table_.emplace(k, id);
        return id;
    }

    /// Per-node stabilizer generators (LIMDD only).
    const std::vector<PauliLim> &stab(NodeId id) const {
        return stabs_[id];
    }
    void set_stab(NodeId id, std::vector<PauliLim> g) {
        stabs_[id] = std::move(g);
    }

   private:
    struct Key {
        int level;
        Edge lo, hi;
        bool operator==(const Key &) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key &k) const {
            std::size_t h = std::size_t(k.level);
            for (const Edge &e : {k.lo, k.hi}) {
                hash_combine(h, e.node);
                hash_combine(h, hash_amplitude(e.w));
                hash_combine(h, std::size_t(e.p.x * 0x9E3779B97F4A7C15ull));
                hash_combine(h, std::size_t(e.p.z * 0xC2B2AE3D27D4EB4Full));
            }
            return h;
        }
    };

    NodeId push(Node n) {
        if (nodes_.size() >= budget_) {
            throw BudgetExceeded("node budget of " + std::to_string(budget_) +
                                 " exhausted (set QSKC_NODE_BUDGET to raise it)");
        }
        nodes_.push_back(n);
        stabs_.emplace_back();
        return NodeId(nodes_.size() - 1);
    }

    Variant variant_;
    std::size_t budget_;
    std::vector<Node> nodes_;
    std::vector<std::vector<PauliLim>> stabs_;
    ScalarTable scalars_;
    std::unordered_map<Key, NodeId, KeyHash> table_;
    std::unordered_map<std::size_t, std::vector<NodeId>> leaves_;
};

struct Diagram {
    Variant variant = Variant::QMDD;
    int n = 0;
    std::shared_ptr<Store> store;
    Edge root;

    const Node &node(NodeId id) const {
        return store->node(id);
    }
};

inline Diagram new_diagram(Variant v, int n) {
    require(n >= 1 && n <= kMaxQubits, "qubit count out of range");
    return Diagram{v, n, std::make_shared<Store>(v), Edge{}};
}

/// Reachable nodes, children before parents.
inline std::vector<NodeId> reachable(const Store &s, const Edge &root) {
    std::vector<NodeId> order;
    std::vector<char> seen(s.node_count(), 0);
    std::vector<std::pair<NodeId, int>> stack{{root.node, 0}};
    while (!stack.empty()) {
        auto &[id, state] = stack.back();
        if (state == 0) {
            if (seen[id]) {
                stack.pop_back();
                continue;
            }
            seen[id] = 1;
            state = 1;
            const Node &nd = s.node(id);
            if (nd.level > 0) {
                NodeId lo = nd.lo.node, hi = nd.hi.node;
                if (!seen[hi]) {
                    stack.push_back({hi, 0});
                }
                if (!seen[lo]) {
                    stack.push_back({lo, 0});
                }
            }
            continue;
        }
        order.push_back(id);
        stack.pop_back();
    }
    return order;
}

inline std::vector<NodeId> reachable(const Diagram &d) {
    return reachable(*d.store, d.root);
}

struct DiagramStats {
    std::size_t internal_nodes = 0;
    std::size_t leaves = 0;
    std::size_t edges = 0;  // including the root edge
    std::size_t size = 0;
};

/// Label size: 1 for a scalar or the zero label, 1 + level for a Pauli LIM.
inline std::size_t label_size(const Diagram &d, const Edge &e) {
    if (d.variant != Variant::LIMDD || e.zero()) {
        return 1;
    }
    return 1 + std::size_t(d.node(e.node).level);
}

/// size = |V| + |E| + sum of leaf label sizes + sum of edge label sizes, where
/// the root edge contributes its label only.
inline DiagramStats stats(const Diagram &d) {
    DiagramStats st;
    st.size += label_size(d, d.root);
    st.edges = 1;
    for (NodeId id : reachable(d)) {
        const Node &nd = d.node(id);
        if (nd.level == 0) {
            st.leaves++;
            st.size += 2;
            continue;
        }
        st.internal_nodes++;
        st.edges += 2;
        st.size += 3 + label_size(d, nd.lo) + label_size(d, nd.hi);
    }
    return st;
}

inline std::size_t size(const Diagram &d) {
    return stats(d).size;
}

inline std::size_t node_count(const Diagram &d) {
    return stats(d).internal_nodes;
}

/// Internal node count per level, index 0..n.
inline std::vector<std::size_t> level_counts(const Diagram &d) {
    std::vector<std::size_t> c(d.n + 1, 0);
    for (NodeId id : reachable(d)) {
        c[d.node(id).level]++;
    }
    return c;
}

/// Squared norm of the diagram's state.
inline double norm2(const Diagram &d) {
    return std::norm(d.root.w) * d.node(d.root.node).norm2;
}

}  // namespace qskc

#endif
