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

#ifndef QSKC_DENSE_HPP
#define QSKC_DENSE_HPP

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qskc/basis.hpp"
#include "qskc/complex.hpp"
#include "qskc/gate.hpp"

namespace qskc {

/// Largest qubit count the dense oracle accepts.
inline constexpr int kDenseCap = 24;

/// Seeded uniform source shared by every sampler, so that backends given the
/// same seed consume identical random streams.
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    /// Uniform double in [0, 1).
    double uniform() {
        return double(gen_() >> 11) * 0x1.0p-53;
    }
    /// Uniform integer in [lo, hi].
    int uniform_int(int lo, int hi) {
        return lo + int(gen_() % std::uint64_t(hi - lo + 1));
    }
    std::mt19937_64 &engine() {
        return gen_;
    }

   private:
    std::mt19937_64 gen_;
};

/// Picks bit 0 iff u < w0 / (w0 + w1).
inline int choose_bit(double w0, double w1, double u) {
    double tot = w0 + w1;
    if (!(tot > 0)) {
        throw Error("sampling from a zero-norm branch");
    }
    return u < w0 / tot ? 0 : 1;
}

inline void check_dense_size(int n) {
    require(n >= 0, "negative qubit count");
    if (n > kDenseCap) {
        throw Error("dense oracle is capped at " + std::to_string(kDenseCap) + " qubits (got " +
                    std::to_string(n) + ")");
    }
}

struct DenseState {
    int n = 0;
    std::vector<Amplitude> amps;

    DenseState() = default;
    explicit DenseState(int n_) : n(n_) {
        check_dense_size(n_);
        amps.assign(std::size_t(1) << n_, 0.0);
    }

    std::size_t dim() const {
        return amps.size();
    }
    Amplitude operator[](const BasisString &x) const {
        require(x.size() == n, "basis string length mismatch");
        return amps[x.index()];
    }
    Amplitude &operator[](const BasisString &x) {
        require(x.size() == n, "basis string length mismatch");
        return amps[x.index()];
    }
    double norm2() const {
        double s = 0;
        for (auto a : amps) {
            s += std::norm(a);
        }
        return s;
    }
    bool normalized() const {
        return std::abs(norm2() - 1.0) <= kEps;
    }
    DenseState scaled(Amplitude c) const {
        DenseState r = *this;
        for (auto &a : r.amps) {
            a *= c;
        }
        return r;
    }
    DenseState normalized_copy() const {
        double s = norm2();
        require(s > 0, "cannot normalize the zero vector");
        return scaled(1.0 / std::sqrt(s));
    }
};

template <class F>
DenseState dense_from_fn(int n, F &&f) {
    require(n >= 1, "dense_from_fn needs n >= 1");
    DenseState s(n);
    for (std::uint64_t k = 0; k < s.dim(); k++) {
        s.amps[k] = f(BasisString(n, k));
    }
    return s;
}

inline DenseState dense_basis(const BasisString &x) {
    DenseState s(x.size());
    s.amps[x.index()] = 1.0;
    return s;
}

inline DenseState dense_apply_gate(const DenseState &s, const Gate &g) {
    int k = g.arity();
    for (int t : g.targets) {
        require(t >= 1 && t <= s.n, "gate target out of range");
    }
    std::vector<std::uint64_t> masks(k);
    std::uint64_t all = 0;
    for (int i = 0; i < k; i++) {
        masks[i] = std::uint64_t(1) << (g.targets[i] - 1);
        all |= masks[i];
    }
    int d = g.dim();
    // offsets[r]: index bits contributed by matrix row/column r
    std::vector<std::uint64_t> offsets(d, 0);
    for (int r = 0; r < d; r++) {
        for (int i = 0; i < k; i++) {
            if ((r >> (k - 1 - i)) & 1) {
                offsets[r] |= masks[i];
            }
        }
    }
    DenseState out(s.n);
    std::vector<Amplitude> in(d);
    for (std::uint64_t base = 0; base < s.dim(); base++) {
        if (base & all) {
            continue;
        }
        for (int c = 0; c < d; c++) {
            in[c] = s.amps[base | offsets[c]];
        }
        for (int r = 0; r < d; r++) {
            Amplitude acc = 0;
            for (int c = 0; c < d; c++) {
                acc += g.matrix[r * d + c] * in[c];
            }
            out.amps[base | offsets[r]] = acc;
        }
    }
    return out;
}

inline Amplitude dense_inner_product(const DenseState &a, const DenseState &b) {
    require(a.n == b.n, "inner product of states with different qubit counts");
    Amplitude acc = 0;
    for (std::size_t k = 0; k < a.dim(); k++) {
        acc += std::conj(a.amps[k]) * b.amps[k];
    }
    return acc;
}

inline double dense_fidelity(const DenseState &a, const DenseState &b) {
    double na = a.norm2(), nb = b.norm2();
    require(na > 0 && nb > 0, "fidelity with a zero-norm state");
    return std::norm(dense_inner_product(a, b)) / (na * nb);
}

inline double dense_prob(const DenseState &s, const BasisString &x) {
    double nn = s.norm2();
    require(nn > 0, "probability of a zero-norm state");
    return std::norm(s[x]) / nn;
}

/// True iff a = lambda * b for some nonzero lambda.
inline bool dense_equal(const DenseState &a, const DenseState &b, double eps = kEps) {
    require(a.n == b.n, "comparing states with different qubit counts");
    std::size_t lead = a.dim();
    for (std::size_t k = 0; k < a.dim(); k++) {
        if (!approx_zero(a.amps[k], eps) || !approx_zero(b.amps[k], eps)) {
            lead = k;
            break;
        }
    }
    if (lead == a.dim()) {
        return true;
    }
    if (approx_zero(a.amps[lead], eps) || approx_zero(b.amps[lead], eps)) {
        return false;
    }
    Amplitude ca = 1.0 / a.amps[lead], cb = 1.0 / b.amps[lead];
    for (std::size_t k = 0; k < a.dim(); k++) {
        if (!approx_equal(a.amps[k] * ca, b.amps[k] * cb, eps)) {
            return false;
        }
    }
    return true;
}

/// Chain-rule draw of all qubits, qubit n first, one uniform per qubit.
inline BasisString dense_sample_string(const DenseState &s, Rng &rng) {
    // prefix sums of |a|^2; a prefix x_n..x_j is a contiguous index range
    std::vector<double> cum(s.dim() + 1, 0.0);
    for (std::size_t k = 0; k < s.dim(); k++) {
        cum[k + 1] = cum[k] + std::norm(s.amps[k]);
    }
    std::uint64_t lo = 0;
    for (int q = s.n; q >= 1; q--) {
        std::uint64_t half = std::uint64_t(1) << (q - 1);
        double w0 = cum[lo + half] - cum[lo];
        double w1 = cum[lo + 2 * half] - cum[lo + half];
        if (choose_bit(w0, w1, rng.uniform())) {
            lo += half;
        }
    }
    return BasisString(s.n, lo);
}

inline std::pair<BasisString, DenseState> dense_sample(const DenseState &s, std::uint64_t rng_seed) {
    require(s.normalized(), "dense_sample needs a normalized state");
    Rng rng(rng_seed);
    BasisString x = dense_sample_string(s, rng);
    DenseState post(s.n);
    post[x] = s[x] / std::abs(s[x]);
    return {x, post};
}

}  // namespace qskc

#endif
