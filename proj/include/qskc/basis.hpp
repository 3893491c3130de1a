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

#ifndef QSKC_BASIS_HPP
#define QSKC_BASIS_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include "qskc/error.hpp"

namespace qskc {

inline constexpr int kMaxQubits = 63;

/// Computational basis string x_n ... x_1.
///
/// Qubit n is written first and is the root variable of every decision
/// diagram. The integer index is sum_j 2^(j-1) x_j, so qubit 1 is the least
/// significant bit.
class BasisString {
   public:
    BasisString() = default;
    BasisString(int n, std::uint64_t index) : n_(n), index_(index) {
        require(n >= 0 && n <= kMaxQubits, "basis string length out of range");
        require(n == 64 || (index >> n) == 0, "basis index does not fit in n bits");
    }

    /// Parses "x_n...x_1".
    static BasisString parse(std::string_view text) {
        std::uint64_t index = 0;
        for (char c : text) {
            if (c != '0' && c != '1') {
                throw ParseError("bad basis string '" + std::string(text) + "'");
            }
            index = (index << 1) | std::uint64_t(c - '0');
        }
        return BasisString((int)text.size(), index);
    }

    int size() const {
        return n_;
    }
    std::uint64_t index() const {
        return index_;
    }
    /// Bit of qubit q, 1-based.
    int bit(int q) const {
        require(q >= 1 && q <= n_, "qubit out of range");
        return int((index_ >> (q - 1)) & 1u);
    }
    BasisString with_bit(int q, int b) const {
        require(q >= 1 && q <= n_, "qubit out of range");
        std::uint64_t m = std::uint64_t(1) << (q - 1);
        return BasisString(n_, b ? (index_ | m) : (index_ & ~m));
    }
    int weight() const {
        return __builtin_popcountll(index_);
    }
    std::string str() const {
        std::string s(n_, '0');
        for (int q = 1; q <= n_; q++) {
            s[n_ - q] = char('0' + bit(q));
        }
        return s;
    }

    bool operator==(const BasisString &) const = default;

   private:
    int n_ = 0;
    std::uint64_t index_ = 0;
};

}  // namespace qskc

#endif
