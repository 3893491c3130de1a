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

#ifndef QSKC_GATE_HPP
#define QSKC_GATE_HPP

#include <cmath>
#include <string>
#include <vector>

#include "qskc/complex.hpp"

namespace qskc {

enum class GateKind { X, Y, Z, S, T, H, Phase, CZ, Swap, Local };

inline const char *gate_kind_name(GateKind k) {
    switch (k) {
        case GateKind::X:
            return "x";
        case GateKind::Y:
            return "y";
        case GateKind::Z:
            return "z";
        case GateKind::S:
            return "s";
        case GateKind::T:
            return "t";
        case GateKind::H:
            return "h";
        case GateKind::Phase:
            return "phase";
        case GateKind::CZ:
            return "cz";
        case GateKind::Swap:
            return "swap";
        case GateKind::Local:
            return "local";
    }
    return "?";
}

/// A k-qubit gate. The matrix is 2^k x 2^k, row-major, and indexes target bits
/// with targets[0] as the most significant bit.
struct Gate {
    GateKind kind = GateKind::Local;
    std::vector<int> targets;
    std::vector<Amplitude> matrix;
    double theta = 0;  // only for Phase

    int arity() const {
        return (int)targets.size();
    }
    int dim() const {
        return 1 << arity();
    }
    Amplitude at(int r, int c) const {
        return matrix[r * dim() + c];
    }

    bool is_unitary(double eps = kEps) const {
        int d = dim();
        for (int i = 0; i < d; i++) {
            for (int j = 0; j < d; j++) {
                Amplitude acc = 0;
                for (int k = 0; k < d; k++) {
                    acc += std::conj(at(k, i)) * at(k, j);
                }
                if (!approx_equal(acc, i == j ? 1.0 : 0.0, eps)) {
                    return false;
                }
            }
        }
        return true;
    }

    /// Single-qubit diagonal gates; used by backends with a cheap diagonal path.
    bool is_diagonal() const {
        return arity() == 1 && at(0, 1) == 0.0 && at(1, 0) == 0.0;
    }
    bool is_antidiagonal() const {
        return arity() == 1 && at(0, 0) == 0.0 && at(1, 1) == 0.0;
    }

    Gate adjoint() const {
        Gate g = *this;
        int d = dim();
        for (int i = 0; i < d; i++) {
            for (int j = 0; j < d; j++) {
                g.matrix[i * d + j] = std::conj(at(j, i));
            }
        }
        switch (kind) {
            case GateKind::S:
            case GateKind::T:
                g.kind = GateKind::Phase;
                g.theta = kind == GateKind::S ? -kPi / 2 : -kPi / 4;
                break;
            case GateKind::Phase:
                g.theta = -theta;
                break;
            default:
                break;
        }
        return g;
    }

    std::string describe() const {
        std::string s = gate_kind_name(kind);
        for (int t : targets) {
            s += " " + std::to_string(t);
        }
        return s;
    }

    static Gate one(GateKind kind, int q, Amplitude a, Amplitude b, Amplitude c, Amplitude d) {
        return Gate{kind, {q}, {a, b, c, d}};
    }
    static Gate x(int q) {
        return one(GateKind::X, q, 0, 1, 1, 0);
    }
    static Gate y(int q) {
        return one(GateKind::Y, q, 0, Amplitude(0, -1), Amplitude(0, 1), 0);
    }
    static Gate z(int q) {
        return one(GateKind::Z, q, 1, 0, 0, -1);
    }
    static Gate s(int q) {
        return one(GateKind::S, q, 1, 0, 0, Amplitude(0, 1));
    }
    static Gate t(int q) {
        return one(GateKind::T, q, 1, 0, 0, expi(kPi / 4));
    }
    static Gate h(int q) {
        double r = 1 / std::sqrt(2.0);
        return one(GateKind::H, q, r, r, r, -r);
    }
    /// diag(1, e^{i theta})
    static Gate phase(int q, double theta) {
        Gate g = one(GateKind::Phase, q, 1, 0, 0, expi(theta));
        g.theta = theta;
        return g;
    }
    static Gate cz(int a, int b) {
        require(a != b, "cz needs two distinct qubits");
        return Gate{GateKind::CZ, {a, b}, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1}};
    }
    static Gate swap(int a, int b) {
        require(a != b, "swap needs two distinct qubits");
        return Gate{GateKind::Swap, {a, b}, {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1}};
    }
    static Gate local(std::vector<int> targets, std::vector<Amplitude> matrix) {
        Gate g{GateKind::Local, std::move(targets), std::move(matrix)};
        require(g.arity() >= 1, "local gate needs at least one target");
        for (size_t i = 0; i < g.targets.size(); i++) {
            for (size_t j = i + 1; j < g.targets.size(); j++) {
                require(g.targets[i] != g.targets[j], "local gate targets must be distinct");
            }
        }
        require((int)g.matrix.size() == g.dim() * g.dim(), "local gate matrix has wrong size");
        require(g.is_unitary(), "local gate matrix is not unitary");
        return g;
    }
};

}  // namespace qskc

#endif
