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

#ifndef QSKC_PAULI_HPP
#define QSKC_PAULI_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include "qskc/complex.hpp"

namespace qskc {

using u128 = unsigned __int128;

/// Tensor product of single-qubit Paulis in symplectic form. Qubit j lives in
/// bit j-1 of both masks; x=z=1 is Y itself (not XZ), so every string is
/// Hermitian and squares to the identity.
struct PauliString {
    std::uint64_t x = 0;
    std::uint64_t z = 0;

    bool operator==(const PauliString &) const = default;

    bool identity() const {
        return x == 0 && z == 0;
    }

    static PauliString single(int q, char p) {
        PauliString s;
        s.set(q, p);
        return s;
    }

    char at(int q) const {
        int xb = int((x >> (q - 1)) & 1), zb = int((z >> (q - 1)) & 1);
        return xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
    }

    void set(int q, char p) {
        std::uint64_t m = std::uint64_t(1) << (q - 1);
        x &= ~m;
        z &= ~m;
        if (p == 'X' || p == 'Y') {
            x |= m;
        }
        if (p == 'Z' || p == 'Y') {
            z |= m;
        }
    }

    bool has_x(int q) const {
        return (x >> (q - 1)) & 1;
    }
    bool has_z(int q) const {
        return (z >> (q - 1)) & 1;
    }

    /// Drops qubit `level` and everything above it.
    PauliString below(int level) const {
        std::uint64_t m = level >= 65 ? ~std::uint64_t(0) : ((std::uint64_t(1) << (level - 1)) - 1);
        return {x & m, z & m};
    }

    /// Leftmost symbol is qubit `level`.
    std::string str(int level) const {
        std::string s;
        for (int q = level; q >= 1; q--) {
            s += at(q);
        }
        return s;
    }

    static PauliString parse(std::string_view text) {
        PauliString s;
        int level = (int)text.size();
        for (int i = 0; i < level; i++) {
            char c = text[i];
            if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
                throw ParseError("bad Pauli string '" + std::string(text) + "'");
            }
            s.set(level - i, c);
        }
        return s;
    }

    /// Lexicographic key over qubits level..1 with I < X < Y < Z.
    u128 key() const {
        // per qubit: high bit z, low bit x^z
        u128 k = 0;
        std::uint64_t lo = x ^ z;
        for (int j = 0; j < 64; j++) {
            if (((z | lo) >> j) == 0) {
                break;
            }
            k |= u128((z >> j) & 1) << (2 * j + 1);
            k |= u128((lo >> j) & 1) << (2 * j);
        }
        return k;
    }
};

inline bool anticommute(const PauliString &a, const PauliString &b) {
    return __builtin_popcountll((a.x & b.z) ^ (a.z & b.x)) & 1;
}

/// a * b = i^k (a xor b); returns k mod 4.
inline int pauli_mul_phase(const PauliString &a, const PauliString &b) {
    std::uint64_t X1 = a.x & ~a.z, Y1 = a.x & a.z, Z1 = ~a.x & a.z;
    int plus = __builtin_popcountll(Y1 & ~b.x & b.z) + __builtin_popcountll(X1 & b.x & b.z) +
               __builtin_popcountll(Z1 & b.x & ~b.z);
    int minus = __builtin_popcountll(Y1 & b.x & ~b.z) + __builtin_popcountll(X1 & ~b.x & b.z) +
                __builtin_popcountll(Z1 & b.x & b.z);
    return ((plus - minus) % 4 + 4) % 4;
}

inline Amplitude i_pow(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0:
            return {1, 0};
        case 1:
            return {0, 1};
        case 2:
            return {-1, 0};
        default:
            return {0, -1};
    }
}

/// lambda * P, a local invertible map. lambda == 0 is the zero map.
struct PauliLim {
    Amplitude lam = 1.0;
    PauliString p;

    bool zero() const {
        return lam == 0.0;
    }
    PauliLim operator*(const PauliLim &o) const {
        if (zero() || o.zero()) {
            return {0.0, {}};
        }
        return {lam * o.lam * i_pow(pauli_mul_phase(p, o.p)), {p.x ^ o.p.x, p.z ^ o.p.z}};
    }
    PauliLim scaled(Amplitude c) const {
        return c == 0.0 ? PauliLim{0.0, {}} : PauliLim{lam * c, p};
    }
    PauliLim inverse() const {
        require(!zero(), "the zero map has no inverse");
        return {1.0 / lam, p};
    }

    /// `re,im:PSTRING`, or `0,0` for the zero map.
    std::string str(int level) const {
        if (zero()) {
            return "0,0";
        }
        return format_amplitude(lam) + ":" + p.str(level);
    }
};

}  // namespace qskc

#endif
