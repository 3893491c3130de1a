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

#ifndef QSKC_GRAPH_HPP
#define QSKC_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qskc/error.hpp"

namespace qskc {

/// Simple undirected graph on vertices 1..n.
class Graph {
   public:
    Graph() = default;
    explicit Graph(int n) : n_(n), adj_(std::size_t(n) + 1, 0) {
        require(n >= 0 && n <= 63, "graph vertex count out of range");
    }

    int n() const {
        return n_;
    }
    const std::vector<std::pair<int, int>> &edges() const {
        return edges_;
    }
    std::size_t edge_count() const {
        return edges_.size();
    }

    bool has_edge(int u, int v) const {
        return (adj_[u] >> (v - 1)) & 1;
    }

    void add_edge(int u, int v) {
        require(u >= 1 && u <= n_ && v >= 1 && v <= n_, "edge endpoint out of range");
        require(u != v, "self-loops are not allowed");
        require(!has_edge(u, v), "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
        adj_[u] |= std::uint64_t(1) << (v - 1);
        adj_[v] |= std::uint64_t(1) << (u - 1);
        edges_.push_back({std::min(u, v), std::max(u, v)});
    }

    /// Number of edges inside the vertex set `mask` (bit v-1 for vertex v).
    int induced_edges(std::uint64_t mask) const {
        int c = 0;
        for (int u = 1; u <= n_; u++) {
            if ((mask >> (u - 1)) & 1) {
                c += __builtin_popcountll(adj_[u] & mask);
            }
        }
        return c / 2;
    }

    /// Copy with `extra` isolated vertices appended.
    Graph with_isolated(int extra) const {
        Graph g(n_ + extra);
        for (auto [u, v] : edges_) {
            g.add_edge(u, v);
        }
        return g;
    }

    std::string str() const {
        std::ostringstream os;
        os << n_ << " " << edges_.size() << "\n";
        for (auto [u, v] : edges_) {
            os << u << " " << v << "\n";
        }
        return os.str();
    }

   private:
    int n_ = 0;
    std::vector<std::uint64_t> adj_{0};
    std::vector<std::pair<int, int>> edges_;
};

/// `n m` then m lines `u v`, 1-based. `#` starts a comment.
inline Graph parse_graph(std::istream &in) {
    std::vector<long long> nums;
    std::string line;
    while (std::getline(in, line)) {
        if (auto h = line.find('#'); h != std::string::npos) {
            line.resize(h);
        }
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) {
            try {
                std::size_t used = 0;
                nums.push_back(std::stoll(tok, &used));
                if (used != tok.size()) {
                    throw ParseError("bad integer '" + tok + "' in graph file");
                }
            } catch (const std::logic_error &) {
                throw ParseError("bad integer '" + tok + "' in graph file");
            }
        }
    }
    if (nums.size() < 2) {
        throw ParseError("graph file needs a header `n m`");
    }
    long long n = nums[0], m = nums[1];
    if (n < 0 || n > 63 || m < 0 || nums.size() != std::size_t(2 + 2 * m)) {
        throw ParseError("graph file: header does not match the edge list");
    }
    Graph g((int)n);
    for (long long i = 0; i < m; i++) {
        long long u = nums[2 + 2 * i], v = nums[3 + 2 * i];
        if (u < 1 || u > n || v < 1 || v > n) {
            throw ParseError("graph file: edge endpoint out of range");
        }
        try {
            g.add_edge((int)u, (int)v);
        } catch (const std::invalid_argument &e) {
            throw ParseError(std::string("graph file: ") + e.what());
        }
    }
    return g;
}

inline Graph load_graph(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open graph file " + path.string());
    }
    return parse_graph(in);
}

inline Graph complete_graph(int n) {
    Graph g(n);
    for (int u = 1; u <= n; u++) {
        for (int v = u + 1; v <= n; v++) {
            g.add_edge(u, v);
        }
    }
    return g;
}

inline Graph path_graph(int n) {
    Graph g(n);
    for (int u = 1; u < n; u++) {
        g.add_edge(u, u + 1);
    }
    return g;
}

inline Graph cycle_graph(int n) {
    Graph g = path_graph(n);
    if (n >= 3) {
        g.add_edge(1, n);
    }
    return g;
}

/// rows x cols grid, numbered row by row: (r, c) -> r * cols + c + 1.
inline Graph grid_graph(int rows, int cols) {
    Graph g(rows * cols);
    auto id = [&](int r, int c) { return r * cols + c + 1; };
    for (int r = 0; r < rows; r++) {
        for (int c = 0; c < cols; c++) {
            if (c + 1 < cols) {
                g.add_edge(id(r, c), id(r, c + 1));
            }
            if (r + 1 < rows) {
                g.add_edge(id(r, c), id(r + 1, c));
            }
        }
    }
    return g;
}

/// Erdos-Renyi G(n, p).
inline Graph random_graph(int n, double p, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Graph g(n);
    for (int a = 1; a <= n; a++) {
        for (int b = a + 1; b <= n; b++) {
            if (u(gen) < p) {
                g.add_edge(a, b);
            }
        }
    }
    return g;
}

}  // namespace qskc

#endif
