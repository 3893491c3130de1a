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

// Per-representation operations, state families and transformations, each
// checked against the dense oracle.

#include <gtest/gtest.h>

#include <set>

#include "qskc/qskc.hpp"
#include "support.hpp"

namespace qskc {
namespace {

using testing::max_diff;
using testing::random_dense;

const double kR2 = 1.0 / std::sqrt(2.0);

DenseState plus_dense(int n) {
    return dense_from_fn(n, [n](const BasisString &) { return Amplitude(std::pow(2.0, -0.5 * n)); });
}

DenseState cz_pp() {
    DenseState s(2);
    s.amps = {0.5, 0.5, 0.5, -0.5};
    return s;
}

std::set<std::complex<double>, bool (*)(const Amplitude &, const Amplitude &)> leaf_values(const Diagram &d) {
    auto less = [](const Amplitude &a, const Amplitude &b) {
        return a.real() + 1e-9 < b.real() || (std::abs(a.real() - b.real()) <= 1e-9 && a.imag() + 1e-9 < b.imag());
    };
    std::set<std::complex<double>, bool (*)(const Amplitude &, const Amplitude &)> out(less);
    for (NodeId id : reachable(d)) {
        if (d.node(id).level == 0) {
            out.insert(d.node(id).leaf);
        }
    }
    return out;
}

// Every backend that supports a gate agrees with the dense oracle on random
// states and gate sequences.
class OracleEquivalence : public ::testing::TestWithParam<Rep> {};

TEST_P(OracleEquivalence, RandomCircuits) {
    Rep r = GetParam();
    std::mt19937_64 gen(1234 + int(r));
    for (int trial = 0; trial < 12; trial++) {
        int n = 2 + trial % 5;
        DenseState ref = random_dense(n, gen, trial % 3 == 0 ? 0.4 : 0.0);
        AnyState s = any_from_dense(ref, r);
        for (int step = 0; step < 8; step++) {
            Gate g = testing::random_gate(n, gen);
            if (r == Rep::MPS && g.arity() > 2) {
                continue;
            }
            s = any_apply_gate(s, g);
            ref = dense_apply_gate(ref, g);
            ASSERT_LT(max_diff(any_to_dense(s), ref), 1e-8) << rep_name(r) << " after " << g.describe();
        }
        for (int q = 1; q <= n; q++) {
            double p0 = 0;
            for (std::uint64_t k = 0; k < ref.dim(); k++) {
                if (!BasisString(n, k).bit(q)) {
                    p0 += std::norm(ref.amps[k]);
                }
            }
            EXPECT_NEAR(any_prob_zero(s, q), p0, 1e-8);
        }
        BasisString x(n, gen() % ref.dim());
        EXPECT_NEAR(any_prob(s, x), std::norm(ref[x]) / ref.norm2(), 1e-8);
    }
}

INSTANTIATE_TEST_SUITE_P(StrongReps, OracleEquivalence,
                         ::testing::Values(Rep::ADD, Rep::QMDD, Rep::LIMDD, Rep::MPS),
                         [](const auto &info) { return std::string(rep_name(info.param)); });

TEST(Add, FromDenseExamples) {
    Diagram g = add_from_dense(dense_from_fn(3, ghz_amp));
    auto leaves = leaf_values(g);
    EXPECT_EQ(leaves.size(), 2u);
    EXPECT_TRUE(leaves.count(0.0));
    EXPECT_TRUE(leaves.count(kR2));
    Diagram z = add_from_dense(DenseState(3));
    EXPECT_EQ(leaf_values(z).size(), 1u);
    EXPECT_EQ(stats(z).internal_nodes, 3u);
    Diagram ip = ip_prime_add(4);
    auto ipl = leaf_values(ip);
    EXPECT_EQ(ipl.size(), 2u);
    EXPECT_TRUE(ipl.count(0.0));
    EXPECT_TRUE(ipl.count(1.0 / ip_prime_norm(4)));
    EXPECT_LT(max_diff(to_dense(ip), dense_from_fn(4, ip_prime_amp)), 1e-12);
}

TEST(Add, SumExamples) {
    std::mt19937_64 gen(2);
    Diagram a = add_from_dense(random_dense(4, gen));
    EXPECT_LT(max_diff(to_dense(add_sum(a, add_zero(4))), to_dense(a)), kEps);
    Diagram u = add_sum(add_basis(BasisString::parse("0")), add_basis(BasisString::parse("1")));
    EXPECT_EQ(to_dense(u).amps, (std::vector<Amplitude>{1, 1}));
    Diagram s = add_sum(add_from_dense(dense_from_fn(5, [](const BasisString &) { return Amplitude(1); })),
                        add_from_dense(dense_from_fn(5, rot_amp)));
    for (std::uint64_t k = 0; k < 32; k++) {
        BasisString x(5, k);
        double e = 0;
        for (int j = 1; j <= 5; j++) {
            e += x.bit(j) * std::pow(2.0, -j - 1);
        }
        EXPECT_NEAR(std::abs(amplitude(s, x) - (1.0 + expi(kPi * e))), 0, kEps);
    }
    EXPECT_THROW(add_sum(add_zero(2), add_zero(3)), std::invalid_argument);
}

TEST(Add, LocalGateExamples) {
    Diagram p = add_apply_local(add_basis(BasisString(1, 0)), Gate::h(1));
    EXPECT_LT(max_diff(to_dense(p), plus_dense(1)), kEps);
    Diagram pp = add_from_dense(plus_dense(2));
    EXPECT_LT(max_diff(to_dense(add_apply_local(pp, Gate::cz(1, 2))), cz_pp()), kEps);
    Diagram sw = add_apply_local(add_basis(BasisString::parse("01")), Gate::swap(1, 2));
    EXPECT_TRUE(add_equal(sw, add_basis(BasisString::parse("10"))));
    std::vector<Amplitude> id16(256, 0);
    for (int i = 0; i < 16; i++) {
        id16[i * 17] = 1;
    }
    EXPECT_THROW(add_apply_local(add_zero(5), Gate::local({1, 2, 3, 4}, id16)), Unsupported);
}

TEST(Add, ProbSampleEqual) {
    Diagram g = add_from_dense(dense_from_fn(3, ghz_amp));
    EXPECT_NEAR(add_prob(g, BasisString::parse("000")), 0.5, kEps);
    EXPECT_NEAR(add_prob(add_basis(BasisString::parse("1")), BasisString::parse("0")), 0, kEps);
    int zeros = 0;
    for (std::uint64_t seed = 0; seed < 10000; seed++) {
        zeros += add_sample(g, seed).first.index() == 0;
    }
    EXPECT_NEAR(zeros / 1e4, 0.5, 0.02);
    EXPECT_TRUE(add_equal(g, g));
    EXPECT_TRUE(add_equal(g, add_scale(g, 2.0)));
    EXPECT_FALSE(add_equal(g, add_basis(BasisString(3, 0))));
}

TEST(Qmdd, FromDenseAndCanonicity) {
    Diagram g = qmdd_from_dense(dense_from_fn(3, ghz_amp));
    EXPECT_NEAR(std::abs(g.root.w - kR2), 0, kEps);
    auto lc = level_counts(g);
    EXPECT_EQ(lc[3], 1u);
    EXPECT_EQ(lc[2], 2u);
    EXPECT_EQ(lc[1], 2u);
    Diagram zero = qmdd_from_dense(dense_basis(BasisString(4, 0)));
    EXPECT_EQ(stats(zero).internal_nodes, 4u);
    Diagram wb = qmdd_from_dense(dense_from_fn(6, weighted_binary_amp));
    EXPECT_GE(level_counts(wb)[2], 16u);

    std::mt19937_64 gen(8);
    for (int trial = 0; trial < 10; trial++) {
        Diagram d = qmdd_from_dense(random_dense(1 + trial % 6, gen, 0.3));
        Diagram again = with_root(d, qmdd_import(*d.store, qmdd_from_dense(to_dense(d))));
        EXPECT_TRUE(qmdd_identical(d, again));
    }
}

TEST(Qmdd, GateExamples) {
    Diagram g = ghz_qmdd(3);
    Diagram z = qmdd_apply_gate(g, Gate::z(1));
    EXPECT_NEAR(std::abs(amplitude(z, BasisString::parse("111")) + kR2), 0, kEps);
    Diagram t = qmdd_apply_gate(qmdd_from_dense(plus_dense(1)), Gate::t(1));
    EXPECT_NEAR(std::abs(amplitude(t, BasisString::parse("1")) / amplitude(t, BasisString::parse("0")) -
                         expi(kPi / 4)),
                0, kEps);
    EXPECT_TRUE(qmdd_equal(qmdd_apply_gate(qmdd_basis(BasisString::parse("0")), Gate::x(1)),
                           qmdd_basis(BasisString::parse("1"))));
    EXPECT_LT(max_diff(to_dense(qmdd_apply_cz(qmdd_from_dense(plus_dense(2)), 1, 2)), cz_pp()), kEps);
    Diagram b = qmdd_basis(BasisString(4, 0));
    EXPECT_TRUE(qmdd_identical(qmdd_apply_cz(b, 4, 1), b));
    EXPECT_TRUE(qmdd_equal(qmdd_apply_hadamard(qmdd_basis(BasisString(1, 0)), 1), qmdd_from_dense(plus_dense(1))));
    EXPECT_TRUE(qmdd_equal(qmdd_apply_swap(qmdd_basis(BasisString::parse("01")), 1, 2),
                           qmdd_basis(BasisString::parse("10"))));
}

TEST(Qmdd, Involutions) {
    std::mt19937_64 gen(21);
    for (int trial = 0; trial < 8; trial++) {
        int n = 2 + trial % 5;
        DenseState ref = random_dense(n, gen);
        Diagram d = qmdd_from_dense(ref);
        int a = 1 + gen() % n, b = 1 + (a + gen() % (n - 1)) % n;
        Diagram hh = qmdd_apply_hadamard(qmdd_apply_hadamard(d, a), a);
        Diagram ss = qmdd_apply_swap(qmdd_apply_swap(d, a, b), a, b);
        Diagram cc = qmdd_apply_cz(qmdd_apply_cz(d, a, b), a, b);
        Diagram t8 = d;
        for (int i = 0; i < 8; i++) {
            t8 = qmdd_apply_gate(t8, Gate::t(a));
        }
        for (const Diagram &x : {hh, ss, cc, t8}) {
            EXPECT_LT(max_diff(to_dense(x), ref), 1e-9);
            EXPECT_TRUE(qmdd_identical(with_root(x, x.root), with_root(d, qmdd_import(*x.store, d))));
        }
    }
}

TEST(Qmdd, AddExamples) {
    Diagram g = ghz_qmdd(4);
    Diagram zero = qmdd_zero(4);
    EXPECT_TRUE(qmdd_identical(qmdd_add(g, with_root(g, qmdd_import(*g.store, zero))), g));
    Diagram gg = qmdd_add(g, g);
    EXPECT_EQ(gg.root.node, g.root.node);
    EXPECT_NEAR(std::abs(gg.root.w - 2.0 * g.root.w), 0, kEps);
    std::size_t prev = 0;
    for (int n = 4; n <= 10; n++) {
        Diagram s = sum_qmdd(n);
        EXPECT_GE(node_count(s), std::size_t(1) << (n - 2));
        EXPECT_GT(node_count(s), prev);
        prev = node_count(s);
    }
}

TEST(Qmdd, SwapAndHadamardBlowUp) {
    for (int n = 4; n <= 10; n++) {
        Diagram rho = rho_qmdd(n);
        EXPECT_LE(node_count(rho), std::size_t(6 * n));
        EXPECT_GE(node_count(qmdd_apply_swap(rho, 1, n + 2)), std::size_t(1) << (n - 2));
        EXPECT_GE(node_count(qmdd_apply_hadamard(rho, n + 2)), std::size_t(1) << (n - 2));
    }
}

TEST(Qmdd, InnerProductProbEqual) {
    Diagram g = ghz_qmdd(3);
    EXPECT_NEAR(std::abs(qmdd_inner_product(g, g) - 1.0), 0, kEps);
    EXPECT_NEAR(qmdd_fidelity(g, qmdd_basis(BasisString(3, 0))), 0.5, kEps);
    std::mt19937_64 gen(4);
    DenseState a = random_dense(7, gen), b = random_dense(7, gen);
    EXPECT_NEAR(std::abs(qmdd_inner_product(qmdd_from_dense(a), qmdd_from_dense(b)) - dense_inner_product(a, b)), 0,
                1e-8);
    EXPECT_NEAR(qmdd_prob(g, BasisString::parse("111")), 0.5, kEps);
    EXPECT_NEAR(qmdd_prob(g, BasisString::parse("010")), 0, kEps);
    int zeros = 0;
    for (std::uint64_t seed = 0; seed < 10000; seed++) {
        zeros += qmdd_sample(g, seed).first.index() == 0;
    }
    EXPECT_NEAR(zeros / 1e4, 0.5, 0.02);
    EXPECT_TRUE(qmdd_equal(g, qmdd_scale(g, expi(0.7))));
    EXPECT_FALSE(qmdd_equal(plus_qmdd(4), rot_qmdd(4)));
}

TEST(Limdd, GhzAndPauli) {
    Diagram g = qmdd_to_limdd(ghz_qmdd(3));
    EXPECT_EQ(stats(g).internal_nodes, 3u);
    EXPECT_EQ(node_count(qmdd_to_limdd(ghz_qmdd(5))), 5u);
    Diagram zero = limdd_product({{1, 0}, {1, 0}, {1, 0}});
    Diagram x1 = limdd_apply_pauli(zero, 1, 'X');
    EXPECT_NEAR(std::abs(amplitude(x1, BasisString::parse("001")) - 1.0), 0, kEps);
    Diagram z1 = limdd_apply_pauli(g, 1, 'Z');
    EXPECT_NEAR(std::abs(amplitude(z1, BasisString::parse("111")) + kR2), 0, kEps);
    for (char p : {'X', 'Y', 'Z'}) {
        EXPECT_TRUE(limdd_equal(limdd_apply_pauli(limdd_apply_pauli(g, 2, p), 2, p), g));
    }
    EXPECT_NEAR(limdd_prob(g, BasisString(3, 0)), 0.5, kEps);
    EXPECT_TRUE(limdd_equal(g, limdd_scale(g, Amplitude(0, 3))));
    EXPECT_FALSE(limdd_equal(g, zero));
}

TEST(Limdd, DiagAndCz) {
    Diagram p1 = limdd_from_dense(plus_dense(1));
    Diagram t = limdd_apply_gate(p1, Gate::t(1));
    EXPECT_NEAR(std::abs(amplitude(t, BasisString::parse("1")) / amplitude(t, BasisString::parse("0")) -
                         expi(kPi / 4)),
                0, kEps);
    // A diagonal gate on a qubit reached through an X-labelled edge.
    DenseState crafted(3);
    crafted.amps = {1, 2, 0, 0, 2, 1, 0, 0};
    Diagram c = limdd_from_dense(crafted);
    Gate d = Gate::phase(1, 0.9);
    EXPECT_LT(max_diff(to_dense(limdd_apply_gate(c, d)), dense_apply_gate(crafted, d)), kEps);

    std::mt19937_64 gen(31);
    for (int trial = 0; trial < 5; trial++) {
        DenseState ref = random_dense(5, gen);
        Diagram x = limdd_from_dense(ref);
        Diagram t8 = x;
        for (int i = 0; i < 8; i++) {
            t8 = limdd_apply_gate(t8, Gate::t(1 + trial));
        }
        EXPECT_LT(max_diff(to_dense(t8), ref), 1e-9);
        Diagram cc = limdd_apply_cz(limdd_apply_cz(x, 2, 5), 2, 5);
        EXPECT_LT(max_diff(to_dense(cc), ref), 1e-9);
    }
    EXPECT_LT(max_diff(to_dense(limdd_apply_cz(limdd_from_dense(plus_dense(2)), 1, 2)), cz_pp()), kEps);

    for (int n = 4; n <= 16; n += 4) {
        Diagram s = limdd_product(normalized_plus_factors(n));
        Graph cyc = cycle_graph(n);
        for (auto [u, v] : cyc.edges()) {
            std::size_t before = size(s);
            s = limdd_apply_cz(s, u, v);
            EXPECT_LE(size(s), before);
        }
        EXPECT_LE(node_count(s), std::size_t(2 * n));
    }
}

TEST(Limdd, InnerProductBruteforce) {
    Diagram g = qmdd_to_limdd(ghz_qmdd(3));
    EXPECT_NEAR(std::abs(limdd_inner_product_bruteforce(g, g) - 1.0), 0, kEps);
    Diagram dk = std::get<Diagram>(build_family("dicke", {3, 2, {}}, Rep::LIMDD));
    Diagram gk = std::get<Diagram>(graph_state(complete_graph(3), Rep::LIMDD));
    EXPECT_NEAR(std::abs(limdd_inner_product_bruteforce(dk, gk) - Amplitude(-3.0 / std::sqrt(24.0))), 0, 1e-9);
}

TEST(Mps, AmplitudeExamples) {
    Mps g = ghz_mps(3);
    EXPECT_NEAR(std::abs(mps_amplitude(g, BasisString::parse("000")) - kR2), 0, kEps);
    EXPECT_NEAR(std::abs(mps_amplitude(g, BasisString::parse("011"))), 0, kEps);
    Mps wb = weighted_binary_mps(3);
    EXPECT_NEAR(std::abs(mps_amplitude(wb, BasisString::parse("101")) - 5.0), 0, kEps);
    EXPECT_NEAR(std::abs(mps_amplitude(wb, BasisString::parse("111")) - 7.0), 0, kEps);
    EXPECT_NEAR(std::abs(mps_amplitude(wb, BasisString::parse("000"))), 0, kEps);
}

TEST(Mps, InnerProductAndAdd) {
    Mps g = ghz_mps(4);
    EXPECT_NEAR(std::abs(mps_inner_product(g, g) - 1.0), 0, kEps);
    Mps dk = dicke_mps(3, 2);
    Mps gk = std::get<Mps>(graph_state(complete_graph(3), Rep::MPS));
    EXPECT_NEAR(mps_fidelity(dk, gk), 9.0 / 24.0, 1e-9);
    std::mt19937_64 gen(6);
    DenseState a = random_dense(8, gen), b = random_dense(8, gen);
    EXPECT_NEAR(std::abs(mps_inner_product(mps_from_dense(a), mps_from_dense(b)) - dense_inner_product(a, b)), 0,
                1e-8);

    Mps plus = mps_product(plus_factors(6)), rot = mps_product(rot_factors(6));
    Mps s = mps_add(plus, rot);
    for (int k = 1; k < 6; k++) {
        EXPECT_EQ(s.bond(k), 2);
    }
    EXPECT_LT(max_diff(mps_to_dense(s), dense_from_fn(6, sum_amp)), 1e-9);
    Mps z = mps_scale(g, 0.0);
    EXPECT_LT(max_diff(mps_to_dense(mps_compress(mps_add(g, z))), mps_to_dense(g)), 1e-9);
    Mps gg = mps_add(g, g);
    EXPECT_LT(max_diff(mps_to_dense(gg), mps_to_dense(g).scaled(2.0)), 1e-9);
    EXPECT_EQ(mps_compress(gg).max_bond(), 2);
    Mps padded = mps_add(mps_product(plus_factors(5)), mps_product(plus_factors(5)));
    EXPECT_EQ(mps_compress(padded).max_bond(), 1);
    Mps r8 = mps_from_dense(random_dense(8, gen));
    EXPECT_LT(max_diff(mps_to_dense(mps_compress(r8)), mps_to_dense(r8)), 1e-9);
}

TEST(Mps, GateExamples) {
    Mps p = mps_apply_gate(mps_basis(BasisString(1, 0)), Gate::h(1));
    EXPECT_LT(max_diff(mps_to_dense(p), plus_dense(1)), kEps);
    Mps t = mps_apply_gate(p, Gate::t(1));
    EXPECT_NEAR(std::abs(mps_amplitude(t, BasisString::parse("1")) - kR2 * expi(kPi / 4)), 0, kEps);
    Mps s8 = sum_mps(8);
    for (int q = 1; q <= 8; q++) {
        EXPECT_LE(mps_apply_gate(s8, Gate::h(q)).max_bond(), 2);
    }
    EXPECT_LT(max_diff(mps_to_dense(mps_apply_gate(mps_product(normalized_plus_factors(2)), Gate::cz(1, 2))),
                       cz_pp()),
              kEps);
    for (int n = 4; n <= 12; n++) {
        Mps rho = rho_mps(n);
        Mps sw = mps_apply_gate(rho, Gate::swap(1, n + 2));
        EXPECT_LE(sw.max_bond(), 4);
        if (n <= 8) {
            EXPECT_LT(max_diff(mps_to_dense(mps_apply_gate(sw, Gate::swap(1, n + 2))), mps_to_dense(rho)), 1e-9);
        }
    }
}

TEST(Mps, ProbSampleEqual) {
    Mps g = ghz_mps(3);
    EXPECT_NEAR(mps_prob(g, BasisString::parse("111")), 0.5, kEps);
    EXPECT_TRUE(mps_equal(g, mps_scale(g, Amplitude(0, 3))));
    EXPECT_FALSE(mps_equal(g, mps_basis(BasisString(3, 0))));
    std::mt19937_64 gen(17);
    DenseState ref = random_dense(4, gen);
    Mps m = mps_from_dense(ref);
    std::vector<int> counts(16, 0);
    for (std::uint64_t seed = 0; seed < 10000; seed++) {
        counts[mps_sample(m, seed).first.index()]++;
    }
    for (int k = 0; k < 16; k++) {
        EXPECT_NEAR(counts[k] / 1e4, std::norm(ref.amps[k]), 0.02);
    }
    EXPECT_THROW(mps_sample(mps_scale(g, 0.0), 1), Error);
}

TEST(Rbm, AmplitudeAndGates) {
    Rbm u = rbm_uniform(3);
    for (std::uint64_t k = 0; k < 8; k++) {
        EXPECT_NEAR(std::abs(rbm_amplitude(u, BasisString(3, k)) - 1.0), 0, kEps);
    }
    Rbm g = rbm_build_ghz(3);
    DenseState gd = rbm_to_dense_bruteforce(g);
    EXPECT_TRUE(dense_equal(gd, dense_from_fn(3, ghz_amp)));

    Rbm zz = rbm_apply_phase(rbm_apply_phase(u, 2, kPi), 2, kPi);
    EXPECT_LT(max_diff(rbm_to_dense_bruteforce(zz), rbm_to_dense_bruteforce(u)), kEps);
    Rbm tp = rbm_apply_phase(rbm_uniform(1), 1, kPi / 4);
    EXPECT_NEAR(std::abs(rbm_amplitude(tp, BasisString::parse("1")) - expi(kPi / 4)), 0, kEps);

    Rbm b = rbm_basis(BasisString(3, 0));
    Rbm x2 = rbm_apply_x(b, 2);
    EXPECT_TRUE(dense_equal(rbm_to_dense_bruteforce(x2), dense_basis(BasisString::parse("010"))));
    std::mt19937_64 gen(9);
    Rbm r = testing::random_rbm(4, 3, gen);
    DenseState rd = rbm_to_dense_bruteforce(r);
    EXPECT_LT(max_diff(rbm_to_dense_bruteforce(rbm_apply_x(rbm_apply_x(r, 3), 3)), rd), 1e-9);
    DenseState xzx = rbm_to_dense_bruteforce(rbm_apply_x(rbm_apply_phase(rbm_apply_x(r, 1), 1, kPi), 1));
    EXPECT_LT(max_diff(xzx, dense_apply_gate(rd, Gate::z(1)).scaled(-1.0)), 1e-9);

    Rbm c = rbm_apply_cz(rbm_uniform(2), 1, 2);
    EXPECT_LT(max_diff(rbm_to_dense_bruteforce(c), cz_pp().scaled(2.0)), 1e-9);
    Rbm cyc = rbm_uniform(6);
    Graph c6 = cycle_graph(6);
    for (auto [a, bb] : c6.edges()) {
        cyc = rbm_apply_cz(cyc, a, bb);
    }
    EXPECT_TRUE(dense_equal(rbm_to_dense_bruteforce(cyc),
                            dense_from_fn(6, [](const BasisString &x) { return graph_state_amp(cycle_graph(6), x); })));

    Rbm sw = rbm_apply_swap(rbm_apply_swap(r, 1, 4), 1, 4);
    EXPECT_EQ(sw.w, r.w);
    EXPECT_EQ(sw.alpha, r.alpha);
    EXPECT_LT(max_diff(rbm_to_dense_bruteforce(rbm_apply_swap(r, 1, 4)), dense_apply_gate(rd, Gate::swap(1, 4))),
              1e-9);
    EXPECT_THROW(rbm_apply_gate(r, Gate::h(1)), Unsupported);
}

TEST(Rbm, Constructions) {
    Rbm d = rbm_build_dicke(3, 2);
    EXPECT_EQ(d.m, 6);
    for (std::uint64_t k = 0; k < 8; k++) {
        BasisString x(3, k);
        EXPECT_NEAR(std::abs(rbm_amplitude(d, x)), x.weight() == 2 ? 1.0 : 0.0, 1e-9) << x.str();
    }
    Rbm d0 = rbm_build_dicke(4, 0);
    EXPECT_NEAR(std::abs(rbm_amplitude(d0, BasisString(4, 0))), 1.0, 1e-9);
    EXPECT_NEAR(std::abs(rbm_amplitude(d0, BasisString(4, 3))), 0.0, 1e-9);

    Rbm s = rbm_build_sum(4);
    EXPECT_EQ(s.m, 1);
    EXPECT_NEAR(std::abs(rbm_amplitude(s, BasisString(4, 0)) - 2.0), 0, kEps);
    EXPECT_TRUE(dense_equal(rbm_to_dense_bruteforce(s), dense_from_fn(4, sum_amp)));
}

TEST(Rbm, Sampling) {
    Rbm b = rbm_basis(BasisString::parse("101"));
    for (std::uint64_t seed = 0; seed < 50; seed++) {
        EXPECT_EQ(rbm_sample(b, seed).str(), "101");
    }
    Rbm g = rbm_build_ghz(3);
    int zeros = 0;
    for (std::uint64_t seed = 0; seed < 10000; seed++) {
        BasisString x = rbm_sample(g, seed);
        ASSERT_TRUE(x.index() == 0 || x.index() == 7);
        zeros += x.index() == 0;
    }
    EXPECT_NEAR(zeros / 1e4, 0.5, 0.05);
    Rbm u = rbm_uniform(2);
    std::vector<int> c(4, 0);
    for (std::uint64_t seed = 0; seed < 10000; seed++) {
        c[rbm_sample(u, seed).index()]++;
    }
    for (int v : c) {
        EXPECT_NEAR(v / 1e4, 0.25, 0.05);
    }
}

TEST(States, Families) {
    EXPECT_TRUE(dense_equal(dense_from_fn(2, ghz_amp), [] {
        DenseState s(2);
        s.amps = {1, 0, 0, 1};
        return s;
    }()));
    EXPECT_LE(node_count(ghz_qmdd(10)), std::size_t(2 * 10));
    Diagram r = rot_qmdd(5);
    EXPECT_NEAR(std::abs(amplitude(r, BasisString::parse("10000")) / amplitude(r, BasisString(5, 0)) -
                         expi(kPi * std::pow(2.0, -6))),
                0, 1e-12);
    EXPECT_LT(max_diff(to_dense(plus_qmdd(1)), dense_from_fn(1, [](const BasisString &) { return Amplitude(1); })),
              kEps);
    EXPECT_LT(max_diff(to_dense(sum_qmdd(6)), dense_from_fn(6, sum_amp)), 1e-9);
    EXPECT_LE(node_count(rho_qmdd(6)), std::size_t(36));
    for (int k = 1; k < 9; k++) {
        EXPECT_LE(sum_mps(9).bond(k), 2);
    }
    EXPECT_NEAR(std::abs(weighted_binary_amp(BasisString::parse("111")) - 7.0), 0, 0);
    EXPECT_EQ(weighted_binary_amp(BasisString::parse("000")), Amplitude(0));
    // x1 x2 + x3 x4 = 2 is even, so the amplitude vanishes.
    EXPECT_EQ(ip_prime_amp(BasisString::parse("1111")), Amplitude(0));
    EXPECT_NEAR(std::abs(ip_prime_amp(BasisString::parse("0011")) - 1.0 / ip_prime_norm(4)), 0, 1e-12);
    EXPECT_EQ(ip_prime_amp(BasisString::parse("0000")), Amplitude(0));
    for (int n = 4; n <= 12; n += 2) {
        EXPECT_LE(node_count(ip_prime_add(n)), std::size_t(3 * n + 6));
    }
    DenseState d32 = dense_from_fn(3, [](const BasisString &x) { return dicke_amp(x, 2); });
    for (std::uint64_t k = 0; k < 8; k++) {
        EXPECT_NEAR(std::abs(d32.amps[k]), BasisString(3, k).weight() == 2 ? 1 / std::sqrt(3.0) : 0.0, 1e-12);
    }
    EXPECT_TRUE(dense_equal(dense_from_fn(4, [](const BasisString &x) { return dicke_amp(x, 0); }),
                            dense_basis(BasisString(4, 0))));
    EXPECT_TRUE(dense_equal(any_to_dense(graph_state(Graph(3), Rep::QMDD)), plus_dense(3)));
    DenseState k3 = any_to_dense(graph_state(complete_graph(3), Rep::Vector));
    for (std::uint64_t k = 0; k < 8; k++) {
        int w = BasisString(3, k).weight();
        double sign = (w * (w - 1) / 2) % 2 ? -1 : 1;
        EXPECT_NEAR(std::abs(k3.amps[k] - Amplitude(sign / std::sqrt(8.0))), 0, 1e-12);
    }
}

TEST(States, AllBuildsAgree) {
    for (const auto &f : families()) {
        FamilyParams p{4, 2, {}};
        if (f.name == "graph") {
            p.graph = random_graph(5, 0.5, 3);
        }
        if (f.name == "grid") {
            p.n = 2;
        }
        DenseState ref = dense_from_fn(family_qubits(f.name, p), family_amplitude(f.name, p));
        for (Rep r : all_reps()) {
            try {
                AnyState s = build_family(f.name, p, r);
                EXPECT_TRUE(dense_equal(any_to_dense(s), ref)) << f.name << " as " << rep_name(r);
            } catch (const Unsupported &) {
            }
        }
    }
    EXPECT_THROW(build_family("nope", {}, Rep::QMDD), std::invalid_argument);
}

TEST(Transform, QmddToMps) {
    Mps m = qmdd_to_mps(ghz_qmdd(3));
    EXPECT_EQ(m.bonds(), (std::vector<int>{1, 2, 2, 1}));
    EXPECT_LT(max_diff(mps_to_dense(m), dense_from_fn(3, ghz_amp)), 1e-12);
    EXPECT_EQ(qmdd_to_mps(qmdd_basis(BasisString(5, 9))).max_bond(), 1);
    std::mt19937_64 gen(12);
    DenseState a = random_dense(7, gen, 0.2), b = random_dense(7, gen);
    EXPECT_NEAR(std::abs(mps_inner_product(qmdd_to_mps(qmdd_from_dense(a)), mps_from_dense(b)) -
                         dense_inner_product(a, b)),
                0, 1e-8);
}

TEST(Transform, MpsToQmdd) {
    Diagram g = mps_to_qmdd(ghz_mps(3));
    EXPECT_TRUE(qmdd_identical(with_root(g, g.root), with_root(g, qmdd_import(*g.store, ghz_qmdd(3)))));
    std::mt19937_64 gen(13);
    for (int trial = 0; trial < 10; trial++) {
        Diagram d = qmdd_from_dense(random_dense(2 + trial % 6, gen, 0.3));
        Diagram back = mps_to_qmdd(qmdd_to_mps(d));
        Diagram in_src = with_root(d, qmdd_import(*d.store, back));
        EXPECT_TRUE(qmdd_identical(in_src, d));
        EXPECT_EQ(node_count(back), node_count(d));
    }
    Diagram s6 = mps_to_qmdd(sum_mps(6));
    EXPECT_GE(node_count(s6), 16u);
    EXPECT_LT(max_diff(to_dense(s6), dense_from_fn(6, sum_amp)), 1e-9);
}

TEST(Transform, LimddQmddAdd) {
    Diagram lg = qmdd_to_limdd(ghz_qmdd(3));
    Diagram qg = limdd_to_qmdd(lg);
    EXPECT_EQ(stats(qg).internal_nodes, 5u);
    Diagram basis = limdd_product({{1, 0}, {0, 1}, {1, 0}});
    EXPECT_EQ(node_count(limdd_to_qmdd(basis)), node_count(basis));
    Diagram cyc = std::get<Diagram>(graph_state(cycle_graph(8), Rep::LIMDD));
    EXPECT_LT(max_diff(to_dense(limdd_to_qmdd(cyc)), to_dense(cyc)), 1e-9);
    EXPECT_EQ(node_count(qmdd_to_limdd(limdd_to_qmdd(lg))), 3u);

    std::mt19937_64 gen(14);
    DenseState r6 = random_dense(6, gen, 0.3);
    EXPECT_LT(max_diff(to_dense(qmdd_to_limdd(qmdd_from_dense(r6))), r6), 1e-9);
    EXPECT_LT(max_diff(to_dense(add_to_qmdd(add_from_dense(r6))), r6), 1e-9);
    EXPECT_LT(max_diff(to_dense(qmdd_to_add(qmdd_from_dense(r6))), r6), 1e-9);

    Diagram fig_add = add_from_dense(dense_from_fn(3, ghz_amp));
    Diagram q = add_to_qmdd(fig_add);
    EXPECT_TRUE(qmdd_identical(q, with_root(q, qmdd_import(*q.store, ghz_qmdd(3)))));
    EXPECT_TRUE(add_to_qmdd(add_zero(3)).root.zero());
    EXPECT_TRUE(add_equal(qmdd_to_add(ghz_qmdd(3)), fig_add));
    EXPECT_EQ(leaf_values(qmdd_to_add(qmdd_from_dense(plus_dense(4)))).size(), 1u);
    EXPECT_GE(leaf_values(qmdd_to_add(qmdd_from_dense(dense_from_fn(5, weighted_binary_amp)))).size(), 8u);
}

TEST(Transform, Dispatch) {
    AnyState g = build_family("ghz", {3, 1, {}}, Rep::QMDD);
    EXPECT_THROW(convert(g, Rep::RBM), Unsupported);
    for (Rep r : {Rep::Vector, Rep::ADD, Rep::QMDD, Rep::LIMDD, Rep::MPS}) {
        EXPECT_NEAR(any_fidelity(convert(g, r), g), 1.0, 1e-9) << rep_name(r);
    }
}

}  // namespace
}  // namespace qskc
