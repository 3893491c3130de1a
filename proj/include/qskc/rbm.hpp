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

#ifndef QSKC_RBM_HPP
#define QSKC_RBM_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qskc/basis.hpp"
#include "qskc/dense.hpp"
#include "qskc/gate.hpp"

namespace qskc {

/// psi(x) = e^{scale} e^{x.alpha} prod_j (1 + e^{beta_j + x.W_j}).
///
/// `log_scale` is a global factor. Gates such as X and CZ produce one and it is
/// kept exactly rather than dropped, so amplitudes stay comparable with the
/// dense image of the same circuit.
struct Rbm {
    int n = 0;
    int m = 0;
    Amplitude log_scale = 0.0;
    std::vector<Amplitude> alpha;            // n
    std::vector<Amplitude> beta;             // m
    std::vector<std::vector<Amplitude>> w;   // n rows of m

    /// n + m + n m
    std::size_t size() const {
        return std::size_t(n) + std::size_t(m) + std::size_t(n) * std::size_t(m);
    }

    Amplitude &weight(int q, int j) {
        return w[q - 1][j];
    }
    Amplitude weight(int q, int j) const {
        return w[q - 1][j];
    }

    void add_hidden(Amplitude b, const std::vector<std::pair<int, Amplitude>> &edges) {
        beta.push_back(b);
        for (auto &row : w) {
            row.push_back(0.0);
        }
        m++;
        for (auto [q, v] : edges) {
            weight(q, m - 1) += v;
        }
    }

    void validate() const {
        require(n >= 1, "rbm needs at least one visible unit");
        require((int)alpha.size() == n && (int)beta.size() == m && (int)w.size() == n, "rbm shape mismatch");
        for (auto &row : w) {
            require((int)row.size() == m, "rbm weight row has the wrong length");
        }
    }
};

/// n visible units, no hidden units, zero biases: the unnormalized |+>^n.
inline Rbm rbm_uniform(int n) {
    require(n >= 1 && n <= kMaxQubits, "qubit count out of range");
    Rbm r;
    r.n = n;
    r.alpha.assign(n, 0.0);
    r.w.assign(n, {});
    return r;
}

namespace rbm_detail {
inline void check_qubit(const Rbm &r, int q) {
    require(q >= 1 && q <= r.n, "qubit " + std::to_string(q) + " out of range [1, " + std::to_string(r.n) + "]");
}
}  // namespace rbm_detail

inline Amplitude rbm_log_amplitude(const Rbm &r, const BasisString &x) {
    require(x.size() == r.n, "basis string length does not match the rbm");
    Amplitude acc = r.log_scale;
    std::vector<Amplitude> theta = r.beta;
    for (int q = 1; q <= r.n; q++) {
        if (!x.bit(q)) {
            continue;
        }
        acc += r.alpha[q - 1];
        for (int j = 0; j < r.m; j++) {
            theta[j] += r.weight(q, j);
        }
    }
    for (Amplitude t : theta) {
        acc += std::log(1.0 + std::exp(t));
    }
    return acc;
}

inline Amplitude rbm_amplitude(const Rbm &r, const BasisString &x) {
    require(x.size() == r.n, "basis string length does not match the rbm");
    Amplitude a = std::exp(r.log_scale);
    std::vector<Amplitude> theta = r.beta;
    Amplitude lin = 0.0;
    for (int q = 1; q <= r.n; q++) {
        if (!x.bit(q)) {
            continue;
        }
        lin += r.alpha[q - 1];
        for (int j = 0; j < r.m; j++) {
            theta[j] += r.weight(q, j);
        }
    }
    a *= std::exp(lin);
    for (Amplitude t : theta) {
        a *= 1.0 + std::exp(t);
    }
    return a;
}

/// Exponential in n.
inline DenseState rbm_to_dense_bruteforce(const Rbm &r) {
    return dense_from_fn(r.n, [&](const BasisString &x) { return rbm_amplitude(r, x); });
}

/// diag(1, e^{i theta}) on qubit q.
inline Rbm rbm_apply_phase(Rbm r, int q, double theta) {
    rbm_detail::check_qubit(r, q);
    r.alpha[q - 1] += Amplitude(0, theta);
    return r;
}

/// psi'(x) = psi(x with bit q flipped).
inline Rbm rbm_apply_x(Rbm r, int q) {
    rbm_detail::check_qubit(r, q);
    r.log_scale += r.alpha[q - 1];
    r.alpha[q - 1] = -r.alpha[q - 1];
    for (int j = 0; j < r.m; j++) {
        r.beta[j] += r.weight(q, j);
        r.weight(q, j) = -r.weight(q, j);
    }
    return r;
}

/// Y = i X Z.
inline Rbm rbm_apply_y(Rbm r, int q) {
    r = rbm_apply_x(rbm_apply_phase(std::move(r), q, kPi), q);
    r.log_scale += Amplitude(0, kPi / 2);
    return r;
}

/// One hidden unit with weight i pi on both qubits and bias i pi / 2 gives
/// 1 + i (-1)^{x_a + x_b}; together with i^{x_a + x_b} from the visible biases
/// and a factor 1 / (1 + i) this is (-1)^{x_a x_b}.
inline Rbm rbm_apply_cz(Rbm r, int a, int b) {
    rbm_detail::check_qubit(r, a);
    rbm_detail::check_qubit(r, b);
    require(a != b, "cz needs two distinct qubits");
    Amplitude ipi(0, kPi);
    r.add_hidden(ipi / 2.0, {{a, ipi}, {b, ipi}});
    r.alpha[a - 1] += ipi / 2.0;
    r.alpha[b - 1] += ipi / 2.0;
    r.log_scale -= std::log(Amplitude(1, 1));
    return r;
}

inline Rbm rbm_apply_swap(Rbm r, int a, int b) {
    rbm_detail::check_qubit(r, a);
    rbm_detail::check_qubit(r, b);
    require(a != b, "swap needs two distinct qubits");
    std::swap(r.alpha[a - 1], r.alpha[b - 1]);
    std::swap(r.w[a - 1], r.w[b - 1]);
    return r;
}

/// X, Y, Z, S, T, phase, CZ and swap. Hadamard and general local gates have no
/// known polynomial construction.
inline Rbm rbm_apply_gate(const Rbm &r, const Gate &g) {
    switch (g.kind) {
        case GateKind::X:
            return rbm_apply_x(r, g.targets[0]);
        case GateKind::Y:
            return rbm_apply_y(r, g.targets[0]);
        case GateKind::Z:
            return rbm_apply_phase(r, g.targets[0], kPi);
        case GateKind::S:
            return rbm_apply_phase(r, g.targets[0], kPi / 2);
        case GateKind::T:
            return rbm_apply_phase(r, g.targets[0], kPi / 4);
        case GateKind::Phase:
            return rbm_apply_phase(r, g.targets[0], g.theta);
        case GateKind::CZ:
            return rbm_apply_cz(r, g.targets[0], g.targets[1]);
        case GateKind::Swap:
            return rbm_apply_swap(r, g.targets[0], g.targets[1]);
        case GateKind::H:
            throw Unsupported("tractability map: RBM x H = ? (no polynomial Hadamard construction is known)");
        case GateKind::Local:
            break;
    }
    throw Unsupported("tractability map: RBM x local gate = ? (only Pauli, phase, CZ and swap are supported)");
}

/// Single-hidden-unit construction of |+>^n + (x) (|0> + e^{i pi 2^{-j-1}} |1>).
inline Rbm rbm_build_sum(int n) {
    Rbm r = rbm_uniform(n);
    std::vector<std::pair<int, Amplitude>> edges;
    for (int j = 1; j <= n; j++) {
        edges.push_back({j, Amplitude(0, kPi * std::ldexp(1.0, -j - 1))});
    }
    r.add_hidden(0.0, edges);
    return r;
}

/// Weight filter. For each j in `reject` a pair of hidden units contributes
/// 2 + 2 cos(pi (1 + (|x| - j) / n)), which vanishes exactly when |x| = j.
/// log_scale is set so the smallest kept weight has amplitude exactly 1.
inline Rbm rbm_weight_filter(int n, const std::vector<int> &reject) {
    Rbm r = rbm_uniform(n);
    int kept = 0;
    while (kept <= n && std::find(reject.begin(), reject.end(), kept) != reject.end()) {
        kept++;
    }
    for (int j : reject) {
        if (kept <= n) {
            r.log_scale -= std::log(2.0 - 2.0 * std::cos(kPi * double(kept - j) / n));
        }
    }
    for (int j : reject) {
        for (double sign : {1.0, -1.0}) {
            std::vector<std::pair<int, Amplitude>> edges;
            for (int q = 1; q <= n; q++) {
                edges.push_back({q, Amplitude(0, sign * kPi / n)});
            }
            r.add_hidden(Amplitude(0, sign * kPi * (1.0 - double(j) / n)), edges);
        }
    }
    return r;
}

/// Rejects every weight except k: 2n hidden units.
inline Rbm rbm_build_dicke(int n, int k) {
    require(n >= 1 && k >= 0 && k <= n, "dicke weight out of range");
    std::vector<int> reject;
    for (int j = 0; j <= n; j++) {
        if (j != k) {
            reject.push_back(j);
        }
    }
    return rbm_weight_filter(n, reject);
}

/// Rejects every weight strictly between 0 and n, with 2(n-1) hidden units.
/// For n = 3 the weights are +-i pi/3 and the biases i pi (2/3, -2/3, 1/3, -1/3).
inline Rbm rbm_build_ghz(int n) {
    require(n >= 2, "GHZ needs n >= 2");
    std::vector<int> reject;
    for (int j = 1; j < n; j++) {
        reject.push_back(j);
    }
    return rbm_weight_filter(n, reject);
}

/// Product state from per-qubit amplitudes. A factor with a zero entry gets a
/// hidden unit that vanishes on the unwanted value of its qubit.
inline Rbm rbm_product(const std::vector<std::array<Amplitude, 2>> &factors) {
    Rbm r = rbm_uniform((int)factors.size());
    for (int q = 1; q <= r.n; q++) {
        auto [a0, a1] = factors[q - 1];
        if (a0 != 0.0 && a1 != 0.0) {
            r.log_scale += std::log(a0);
            r.alpha[q - 1] = std::log(a1 / a0);
        } else {
            require(a0 != 0.0 || a1 != 0.0, "product factor is the zero vector");
        }
    }
    for (int q = 1; q <= r.n; q++) {
        auto [a0, a1] = factors[q - 1];
        if (a0 != 0.0 && a1 != 0.0) {
            continue;
        }
        // 1 + e^{i pi + i pi x} is 0 at x = 0 and 2 at x = 1
        Amplitude ipi(0, kPi);
        if (a0 == 0.0) {
            r.add_hidden(ipi, {{q, ipi}});
            r.log_scale += std::log(a1 / 2.0);
        } else {
            r.add_hidden(0.0, {{q, ipi}});
            r.log_scale += std::log(a0 / 2.0);
        }
    }
    return r;
}

inline Rbm rbm_basis(const BasisString &x) {
    std::vector<std::array<Amplitude, 2>> f(x.size());
    for (int q = 1; q <= x.size(); q++) {
        f[q - 1] = x.bit(q) ? std::array<Amplitude, 2>{0.0, 1.0} : std::array<Amplitude, 2>{1.0, 0.0};
    }
    return rbm_product(f);
}

inline constexpr int kRbmBurnIn = 1000;

/// Metropolis chain with single-bit-flip proposals; returns the state after
/// burn_in + chain_len steps. Zero-amplitude starts are escaped by accepting
/// any move out of them.
inline BasisString rbm_sample_chain(const Rbm &r, Rng &rng, int chain_len = 1, int burn_in = kRbmBurnIn) {
    std::uint64_t x = 0;
    if (r.n < 64) {
        x = std::uint64_t(rng.engine()()) & ((std::uint64_t(1) << r.n) - 1);
    }
    BasisString cur(r.n, x);
    double lp = 2 * rbm_log_amplitude(r, cur).real();
    for (int step = 0; step < burn_in + chain_len; step++) {
        int q = rng.uniform_int(1, r.n);
        BasisString nxt = cur.with_bit(q, 1 - cur.bit(q));
        double lq = 2 * rbm_log_amplitude(r, nxt).real();
        double u = rng.uniform();
        bool accept = std::isinf(lp) && lp < 0 ? true : (lq >= lp || u < std::exp(lq - lp));
        if (std::isnan(lq)) {
            accept = false;
        }
        if (accept) {
            cur = nxt;
            lp = lq;
        }
    }
    return cur;
}

inline BasisString rbm_sample(const Rbm &r, std::uint64_t seed, int chain_len = 1, int burn_in = kRbmBurnIn) {
    Rng rng(seed);
    return rbm_sample_chain(r, rng, chain_len, burn_in);
}

/// Exponential reference.
inline Amplitude rbm_inner_product_bruteforce(const Rbm &a, const Rbm &b) {
    require(a.n == b.n, "operands have different qubit counts");
    return dense_inner_product(rbm_to_dense_bruteforce(a), rbm_to_dense_bruteforce(b));
}

/// Exponential reference.
inline double rbm_prob_bruteforce(const Rbm &r, const BasisString &x) {
    DenseState s = rbm_to_dense_bruteforce(r);
    return dense_prob(s, x);
}

}  // namespace qskc

#endif
