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

#ifndef QSKC_MPS_HPP
#define QSKC_MPS_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <utility>
#include <vector>

#include "qskc/basis.hpp"
#include "qskc/circuit.hpp"
#include "qskc/dense.hpp"

namespace qskc {

using Matrix = Eigen::MatrixXcd;

/// Singular values below this fraction of the largest are exact zeros.
inline constexpr double kSvdCutoff = 1e-12;

/// Site k (1-based) holds A_k^0 and A_k^1, each D_k x D_{k-1}, with
/// D_0 = D_n = 1. <x|M> = A_n^{x_n} ... A_1^{x_1}.
struct Mps {
    int n = 0;
    std::vector<std::array<Matrix, 2>> sites;

    std::array<Matrix, 2> &site(int k) {
        return sites[k - 1];
    }
    const std::array<Matrix, 2> &site(int k) const {
        return sites[k - 1];
    }
    /// D_k for k = 0..n.
    int bond(int k) const {
        if (k == 0) {
            return 1;
        }
        return (int)sites[k - 1][0].rows();
    }
    int max_bond() const {
        int m = 1;
        for (int k = 1; k < n; k++) {
            m = std::max(m, bond(k));
        }
        return m;
    }
    std::vector<int> bonds() const {
        std::vector<int> b;
        for (int k = 0; k <= n; k++) {
            b.push_back(bond(k));
        }
        return b;
    }
    /// 2 * sum_k D_k D_{k-1}
    std::size_t size() const {
        std::size_t s = 0;
        for (int k = 1; k <= n; k++) {
            s += 2 * std::size_t(bond(k)) * std::size_t(bond(k - 1));
        }
        return s;
    }

    void validate() const {
        require(n >= 1 && (int)sites.size() == n, "mps site count mismatch");
        for (int k = 1; k <= n; k++) {
            for (int x = 0; x < 2; x++) {
                const Matrix &a = site(k)[x];
                require(a.rows() == site(k)[0].rows() && a.cols() == site(k)[0].cols(), "mps site shape mismatch");
            }
            require(site(k)[0].cols() == (k == 1 ? 1 : site(k - 1)[0].rows()), "mps bond mismatch");
        }
        require(site(n)[0].rows() == 1, "mps needs D_n = 1");
    }
};

namespace mps_detail {

struct Svd {
    Matrix u;
    Eigen::VectorXd s;
    Matrix v;
    int rank;
};

/// Thin SVD keeping singular values above cutoff * sigma_max (at least one).
inline Svd svd(const Matrix &m, double cutoff) {
    Svd r;
    if (std::min(m.rows(), m.cols()) > 16) {
        Eigen::BDCSVD<Matrix> dec(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
        r.u = dec.matrixU();
        r.s = dec.singularValues();
        r.v = dec.matrixV();
    } else {
        Eigen::JacobiSVD<Matrix> dec(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
        r.u = dec.matrixU();
        r.s = dec.singularValues();
        r.v = dec.matrixV();
    }
    double smax = r.s.size() ? r.s(0) : 0.0;
    int rank = 0;
    for (int i = 0; i < r.s.size(); i++) {
        if (r.s(i) > cutoff * smax && r.s(i) > 0) {
            rank++;
        }
    }
    r.rank = std::max(rank, 1);
    return r;
}

inline void check_qubit(const Mps &m, int q) {
    require(q >= 1 && q <= m.n, "qubit " + std::to_string(q) + " out of range [1, " + std::to_string(m.n) + "]");
}

}  // namespace mps_detail

/// Product state; factors[j-1] holds the amplitudes of qubit j.
inline Mps mps_product(const std::vector<std::array<Amplitude, 2>> &factors) {
    Mps m;
    m.n = (int)factors.size();
    require(m.n >= 1, "mps needs at least one qubit");
    for (auto &f : factors) {
        m.sites.push_back({Matrix::Constant(1, 1, f[0]), Matrix::Constant(1, 1, f[1])});
    }
    return m;
}

inline Mps mps_basis(const BasisString &x, Amplitude phase = 1.0) {
    std::vector<std::array<Amplitude, 2>> f(x.size());
    for (int q = 1; q <= x.size(); q++) {
        f[q - 1] = x.bit(q) ? std::array<Amplitude, 2>{0.0, 1.0} : std::array<Amplitude, 2>{1.0, 0.0};
    }
    f[0][x.bit(1)] *= phase;
    return mps_product(f);
}

inline Amplitude mps_amplitude(const Mps &m, const BasisString &x) {
    require(x.size() == m.n, "basis string length does not match the mps");
    Matrix row = m.site(m.n)[x.bit(m.n)];
    for (int k = m.n - 1; k >= 1; k--) {
        row = row * m.site(k)[x.bit(k)];
    }
    return row(0, 0);
}

inline DenseState mps_to_dense(const Mps &m) {
    return dense_from_fn(m.n, [&](const BasisString &x) { return mps_amplitude(m, x); });
}

/// SVD sweep from qubit n down; bonds come out at their exact ranks.
inline Mps mps_from_dense(const DenseState &s) {
    require(s.n >= 1, "mps_from_dense needs n >= 1");
    Mps m;
    m.n = s.n;
    m.sites.resize(s.n);
    // R: D x 2^k, columns indexed by (x_k .. x_1) with x_k most significant
    Matrix r(1, (Eigen::Index)s.dim());
    for (std::size_t i = 0; i < s.dim(); i++) {
        r(0, (Eigen::Index)i) = s.amps[i];
    }
    for (int k = s.n; k >= 2; k--) {
        Eigen::Index d = r.rows(), half = r.cols() / 2;
        Matrix t(2 * d, half);
        t.topRows(d) = r.leftCols(half);
        t.bottomRows(d) = r.rightCols(half);
        auto dec = mps_detail::svd(t, kSvdCutoff);
        int rk = dec.rank;
        m.site(k)[0] = dec.u.topRows(d).leftCols(rk);
        m.site(k)[1] = dec.u.bottomRows(d).leftCols(rk);
        r = dec.s.head(rk).asDiagonal() * dec.v.leftCols(rk).adjoint();
    }
    m.site(1)[0] = r.col(0);
    m.site(1)[1] = r.col(1);
    return m;
}

/// <a|b> by a ladder contraction from qubit 1 upward.
inline Amplitude mps_inner_product(const Mps &a, const Mps &b) {
    require(a.n == b.n, "operands have different qubit counts");
    Matrix e = Matrix::Ones(1, 1);
    for (int k = 1; k <= a.n; k++) {
        Matrix next = b.site(k)[0] * e * a.site(k)[0].adjoint();
        next += b.site(k)[1] * e * a.site(k)[1].adjoint();
        e = std::move(next);
    }
    return e(0, 0);
}

inline double mps_norm2(const Mps &m) {
    return mps_inner_product(m, m).real();
}

inline double mps_fidelity(const Mps &a, const Mps &b) {
    double na = mps_norm2(a), nb = mps_norm2(b);
    require(na > 0 && nb > 0, "fidelity with a zero-norm state");
    return std::norm(mps_inner_product(a, b)) / (na * nb);
}

inline Mps mps_scale(Mps m, Amplitude c) {
    m.site(m.n)[0] *= c;
    m.site(m.n)[1] *= c;
    return m;
}

/// Block sum: bond dimensions add.
inline Mps mps_add(const Mps &a, const Mps &b) {
    require(a.n == b.n, "operands have different qubit counts");
    Mps c;
    c.n = a.n;
    c.sites.resize(a.n);
    for (int k = 1; k <= a.n; k++) {
        for (int x = 0; x < 2; x++) {
            const Matrix &p = a.site(k)[x], &q = b.site(k)[x];
            Matrix &r = c.site(k)[x];
            if (a.n == 1) {
                r = p + q;
            } else if (k == a.n) {
                r.resize(1, p.cols() + q.cols());
                r << p, q;
            } else if (k == 1) {
                r.resize(p.rows() + q.rows(), 1);
                r << p, q;
            } else {
                r = Matrix::Zero(p.rows() + q.rows(), p.cols() + q.cols());
                r.topLeftCorner(p.rows(), p.cols()) = p;
                r.bottomRightCorner(q.rows(), q.cols()) = q;
            }
        }
    }
    return c;
}

/// A_q^y := sum_x g[y][x] A_q^x. g need not be unitary.
inline Mps mps_apply_1q(Mps m, int q, const std::array<Amplitude, 4> &g) {
    mps_detail::check_qubit(m, q);
    auto &s = m.site(q);
    Matrix a0 = g[0] * s[0] + g[1] * s[1];
    Matrix a1 = g[2] * s[0] + g[3] * s[1];
    s[0] = std::move(a0);
    s[1] = std::move(a1);
    return m;
}

namespace mps_detail {

/// Gate on sites q+1 and q; u indexes (x_{q+1}, x_q) with x_{q+1} as the
/// high bit.
inline void apply_adjacent(Mps &m, int q, const Matrix &u) {
    auto &hi = m.site(q + 1);
    auto &lo = m.site(q);
    Eigen::Index dl = hi[0].rows(), dr = lo[0].cols();
    std::array<Matrix, 4> theta;
    for (int x1 = 0; x1 < 2; x1++) {
        for (int x0 = 0; x0 < 2; x0++) {
            theta[2 * x1 + x0] = hi[x1] * lo[x0];
        }
    }
    // rows (y1, l), cols (y0, r)
    Matrix big = Matrix::Zero(2 * dl, 2 * dr);
    for (int y = 0; y < 4; y++) {
        Matrix acc = Matrix::Zero(dl, dr);
        for (int x = 0; x < 4; x++) {
            if (u(y, x) != 0.0) {
                acc += u(y, x) * theta[x];
            }
        }
        big.block((y >> 1) * dl, (y & 1) * dr, dl, dr) = acc;
    }
    auto dec = svd(big, kSvdCutoff);
    int rk = dec.rank;
    Matrix sv = dec.s.head(rk).asDiagonal() * dec.v.leftCols(rk).adjoint();
    for (int y = 0; y < 2; y++) {
        hi[y] = dec.u.block(y * dl, 0, dl, rk);
        lo[y] = sv.block(0, y * dr, rk, dr);
    }
}

inline Matrix swap_matrix() {
    Matrix s = Matrix::Zero(4, 4);
    s(0, 0) = s(1, 2) = s(2, 1) = s(3, 3) = 1.0;
    return s;
}

}  // namespace mps_detail

/// Two-qubit gate. g is 4x4 with q1 as the high bit. Non-adjacent targets are
/// brought together by a swap chain and moved back afterwards.
inline Mps mps_apply_2q(Mps m, int q1, int q2, const Matrix &g) {
    mps_detail::check_qubit(m, q1);
    mps_detail::check_qubit(m, q2);
    require(q1 != q2, "two-qubit gate needs distinct qubits");
    require(g.rows() == 4 && g.cols() == 4, "two-qubit gate must be 4x4");
    Matrix u = g;
    if (q1 < q2) {
        // reorder so that the higher qubit is the high bit
        Matrix p = mps_detail::swap_matrix();
        u = p * g * p;
        std::swap(q1, q2);
    }
    Matrix sw = mps_detail::swap_matrix();
    // move q2 up next to q1
    for (int k = q2; k < q1 - 1; k++) {
        mps_detail::apply_adjacent(m, k, sw);
    }
    mps_detail::apply_adjacent(m, q1 - 1, u);
    for (int k = q1 - 2; k >= q2; k--) {
        mps_detail::apply_adjacent(m, k, sw);
    }
    return m;
}

/// Two SVD sweeps; each bond is cut to its numerical rank at tol * sigma_max.
inline Mps mps_compress(Mps m, double tol = kSvdCutoff) {
    require(tol >= 0, "tolerance must be non-negative");
    // qubit n down to 2: left-orthonormal sites, remainder pushed right
    for (int k = m.n; k >= 2; k--) {
        auto &s = m.site(k);
        Eigen::Index d = s[0].rows();
        Matrix t(2 * d, s[0].cols());
        t << s[0], s[1];
        auto dec = mps_detail::svd(t, tol);
        int rk = dec.rank;
        s[0] = dec.u.topRows(d).leftCols(rk);
        s[1] = dec.u.bottomRows(d).leftCols(rk);
        Matrix rest = dec.s.head(rk).asDiagonal() * dec.v.leftCols(rk).adjoint();
        for (int x = 0; x < 2; x++) {
            m.site(k - 1)[x] = rest * m.site(k - 1)[x];
        }
    }
    // qubit 1 up to n-1: right-orthonormal sites, remainder pushed left
    for (int k = 1; k < m.n; k++) {
        auto &s = m.site(k);
        Eigen::Index c = s[0].cols();
        Matrix t(s[0].rows(), 2 * c);
        t << s[0], s[1];
        auto dec = mps_detail::svd(t, tol);
        int rk = dec.rank;
        Matrix vh = dec.v.leftCols(rk).adjoint();
        s[0] = vh.leftCols(c);
        s[1] = vh.rightCols(c);
        Matrix rest = dec.u.leftCols(rk) * dec.s.head(rk).asDiagonal();
        for (int x = 0; x < 2; x++) {
            m.site(k + 1)[x] = m.site(k + 1)[x] * rest;
        }
    }
    return m;
}

inline Mps mps_apply_gate(const Mps &m, const Gate &g) {
    if (g.arity() == 1) {
        return mps_apply_1q(m, g.targets[0], {g.at(0, 0), g.at(0, 1), g.at(1, 0), g.at(1, 1)});
    }
    if (g.arity() == 2) {
        Matrix u(4, 4);
        for (int r = 0; r < 4; r++) {
            for (int c = 0; c < 4; c++) {
                u(r, c) = g.at(r, c);
            }
        }
        return mps_apply_2q(m, g.targets[0], g.targets[1], u);
    }
    throw Unsupported("MPS applies gates on at most two qubits (got " + std::to_string(g.arity()) + ")");
}

namespace mps_detail {
/// R_k = sum_x A_k^x R_{k-1} A_k^x^dagger, for k = 0..n.
inline std::vector<Matrix> right_envs(const Mps &m) {
    std::vector<Matrix> r(m.n + 1);
    r[0] = Matrix::Ones(1, 1);
    for (int k = 1; k <= m.n; k++) {
        r[k] = m.site(k)[0] * r[k - 1] * m.site(k)[0].adjoint() + m.site(k)[1] * r[k - 1] * m.site(k)[1].adjoint();
    }
    return r;
}
}  // namespace mps_detail

inline double mps_prob(const Mps &m, const BasisString &x) {
    double nn = mps_norm2(m);
    if (!(nn > 0)) {
        throw Error("probability of a zero-norm mps");
    }
    return std::norm(mps_amplitude(m, x)) / nn;
}

/// Marginal probability that qubit q reads 0.
inline double mps_prob_zero(const Mps &m, int q) {
    mps_detail::check_qubit(m, q);
    auto r = mps_detail::right_envs(m);
    double nn = r[m.n](0, 0).real();
    if (!(nn > 0)) {
        throw Error("probability of a zero-norm mps");
    }
    Matrix l = Matrix::Ones(1, 1);
    for (int k = m.n; k > q; k--) {
        l = m.site(k)[0].adjoint() * l * m.site(k)[0] + m.site(k)[1].adjoint() * l * m.site(k)[1];
    }
    const Matrix &a = m.site(q)[0];
    return (a.adjoint() * l * a * r[q - 1]).trace().real() / nn;
}

/// Exact chain-rule draw, qubit n first.
inline BasisString mps_sample_string(const Mps &m, Rng &rng) {
    auto r = mps_detail::right_envs(m);
    if (!(r[m.n](0, 0).real() > 0)) {
        throw Error("sampling a zero-norm mps");
    }
    Matrix left = Matrix::Ones(1, 1);
    std::uint64_t index = 0;
    for (int k = m.n; k >= 1; k--) {
        Matrix v0 = left * m.site(k)[0], v1 = left * m.site(k)[1];
        double w0 = (v0 * r[k - 1] * v0.adjoint())(0, 0).real();
        double w1 = (v1 * r[k - 1] * v1.adjoint())(0, 0).real();
        if (choose_bit(std::max(w0, 0.0), std::max(w1, 0.0), rng.uniform())) {
            left = std::move(v1);
            index |= std::uint64_t(1) << (k - 1);
        } else {
            left = std::move(v0);
        }
    }
    return BasisString(m.n, index);
}

inline std::pair<BasisString, Mps> mps_sample(const Mps &m, std::uint64_t seed) {
    Rng rng(seed);
    BasisString x = mps_sample_string(m, rng);
    Amplitude a = mps_amplitude(m, x);
    return {x, mps_basis(x, a / std::abs(a))};
}

inline Mps mps_project(const Mps &m, int q, int b, double p) {
    double s = 1.0 / std::sqrt(p);
    return mps_apply_1q(m, q, b ? std::array<Amplitude, 4>{0, 0, 0, s} : std::array<Amplitude, 4>{s, 0, 0, 0});
}

/// Equal up to a nonzero factor: normalized fidelity 1 within 1e-9.
inline bool mps_equal(const Mps &a, const Mps &b) {
    require(a.n == b.n, "operands have different qubit counts");
    double na = mps_norm2(a), nb = mps_norm2(b);
    if (na <= 0 || nb <= 0) {
        return na <= 0 && nb <= 0;
    }
    return std::abs(mps_fidelity(a, b) - 1.0) <= kEps;
}

}  // namespace qskc

#endif
