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

#ifndef QSKC_TESTS_SUPPORT_HPP
#define QSKC_TESTS_SUPPORT_HPP

#include <Eigen/QR>
#include <cmath>
#include <random>
#include <vector>

#include "qskc/qskc.hpp"

namespace qskc::testing {

inline DenseState random_dense(int n, std::mt19937_64 &gen, double zero_fraction = 0.0) {
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u(0, 1);
    DenseState s(n);
    for (auto &a : s.amps) {
        a = u(gen) < zero_fraction ? Amplitude(0.0) : Amplitude(g(gen), g(gen));
    }
    if (s.norm2() == 0) {
        s.amps[0] = 1.0;
    }
    return s.normalized_copy();
}

/// Haar-ish unitary from the QR decomposition of a Gaussian matrix.
inline std::vector<Amplitude> random_unitary(int k, std::mt19937_64 &gen) {
    std::normal_distribution<double> g;
    int d = 1 << k;
    Eigen::MatrixXcd m(d, d);
    for (int r = 0; r < d; r++) {
        for (int c = 0; c < d; c++) {
            m(r, c) = Amplitude(g(gen), g(gen));
        }
    }
    Eigen::MatrixXcd q = Eigen::HouseholderQR<Eigen::MatrixXcd>(m).householderQ();
    std::vector<Amplitude> out;
    for (int r = 0; r < d; r++) {
        for (int c = 0; c < d; c++) {
            out.push_back(q(r, c));
        }
    }
    return out;
}

/// Random gate from the full gate set, on at most two qubits.
inline Gate random_gate(int n, std::mt19937_64 &gen) {
    std::uniform_int_distribution<int> qd(1, n);
    int a = qd(gen), b = a;
    if (n >= 2) {
        while (b == a) {
            b = qd(gen);
        }
    }
    int kinds = n >= 2 ? 11 : 8;
    switch (std::uniform_int_distribution<int>(0, kinds - 1)(gen)) {
        case 0:
            return Gate::x(a);
        case 1:
            return Gate::y(a);
        case 2:
            return Gate::z(a);
        case 3:
            return Gate::s(a);
        case 4:
            return Gate::t(a);
        case 5:
            return Gate::h(a);
        case 6:
            return Gate::phase(a, std::uniform_real_distribution<double>(0, 6.28)(gen));
        case 7:
            return Gate::local({a}, random_unitary(1, gen));
        case 8:
            return Gate::cz(a, b);
        case 9:
            return Gate::swap(a, b);
        default:
            return Gate::local({a, b}, random_unitary(2, gen));
    }
}

/// Random RBM with small parameters, so amplitudes stay well away from zero.
inline Rbm random_rbm(int n, int m, std::mt19937_64 &gen, double scale = 0.4) {
    std::normal_distribution<double> g(0, scale);
    auto c = [&] { return Amplitude(g(gen), g(gen)); };
    Rbm r = rbm_uniform(n);
    for (auto &a : r.alpha) {
        a = c();
    }
    for (int j = 0; j < m; j++) {
        std::vector<std::pair<int, Amplitude>> e;
        for (int q = 1; q <= n; q++) {
            e.push_back({q, c()});
        }
        r.add_hidden(c(), e);
    }
    return r;
}

inline double max_diff(const DenseState &a, const DenseState &b) {
    if (a.n != b.n) {
        return INFINITY;
    }
    double m = 0;
    for (std::size_t k = 0; k < a.dim(); k++) {
        m = std::max(m, std::abs(a.amps[k] - b.amps[k]));
    }
    return m;
}

/// Least-squares slope of log y against log x.
inline double loglog_slope(const std::vector<double> &x, const std::vector<double> &y) {
    double n = double(x.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); i++) {
        double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace qskc::testing

#endif
