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

// Basis strings, dense oracle, gates, Pauli algebra, parsers, the node store
// and serialization.

#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "qskc/qskc.hpp"
#include "support.hpp"

namespace qskc {
namespace {

using testing::max_diff;
using testing::random_dense;

const double kR2 = 1.0 / std::sqrt(2.0);

TEST(Basis, BitOrderPutsQubitNLeftmost) {
    BasisString x = BasisString::parse("100");
    EXPECT_EQ(x.index(), 4u);
    EXPECT_EQ(x.bit(3), 1);
    EXPECT_EQ(x.bit(1), 0);
    EXPECT_EQ(x.str(), "100");
    EXPECT_EQ(x.with_bit(1, 1).str(), "101");
    EXPECT_EQ(BasisString::parse("1011").weight(), 3);
    EXPECT_THROW(BasisString::parse("10a"), ParseError);
}

TEST(Dense, FromFnExamples) {
    DenseState ghz = dense_from_fn(3, ghz_amp);
    EXPECT_NEAR(std::abs(ghz[BasisString::parse("000")] - kR2), 0, kEps);
    EXPECT_NEAR(std::abs(ghz[BasisString::parse("111")] - kR2), 0, kEps);
    EXPECT_EQ(ghz[BasisString::parse("010")], Amplitude(0));
    DenseState z = dense_from_fn(1, [](const BasisString &) { return Amplitude(0); });
    EXPECT_FALSE(z.normalized());
    DenseState ones = dense_from_fn(2, [](const BasisString &) { return Amplitude(1); });
    ASSERT_EQ(ones.dim(), 4u);
    for (auto a : ones.amps) {
        EXPECT_EQ(a, Amplitude(1));
    }
}

TEST(Dense, GateExamples) {
    DenseState one = dense_apply_gate(dense_basis(BasisString::parse("0")), Gate::x(1));
    EXPECT_EQ(one[BasisString::parse("1")], Amplitude(1));

    // H on every qubit, then CX(3->2) and CX(2->1) as H.CZ.H.
    DenseState s = dense_basis(BasisString(3, 0));
    s = dense_apply_gate(s, Gate::h(3));
    for (auto [c, t] : {std::pair{3, 2}, std::pair{2, 1}}) {
        s = dense_apply_gate(s, Gate::h(t));
        s = dense_apply_gate(s, Gate::cz(c, t));
        s = dense_apply_gate(s, Gate::h(t));
    }
    EXPECT_LT(max_diff(s, dense_from_fn(3, ghz_amp)), 1e-12);

    DenseState plus = dense_apply_gate(dense_basis(BasisString(1, 0)), Gate::h(1));
    DenseState tp = dense_apply_gate(plus, Gate::t(1));
    EXPECT_NEAR(std::abs(tp.amps[0] - kR2), 0, 1e-12);
    EXPECT_NEAR(std::abs(tp.amps[1] - kR2 * expi(kPi / 4)), 0, 1e-12);

    EXPECT_THROW(dense_apply_gate(plus, Gate::x(2)), std::invalid_argument);
}

TEST(Dense, InnerProductExamples) {
    DenseState ghz = dense_from_fn(3, ghz_amp);
    EXPECT_NEAR(std::abs(dense_inner_product(ghz, ghz) - 1.0), 0, kEps);
    EXPECT_NEAR(std::abs(dense_inner_product(dense_basis(BasisString(3, 0)), ghz) - kR2), 0, kEps);
    DenseState plus = dense_apply_gate(dense_basis(BasisString(1, 0)), Gate::h(1));
    DenseState minus = dense_apply_gate(dense_basis(BasisString(1, 1)), Gate::h(1));
    EXPECT_NEAR(std::abs(dense_inner_product(plus, minus)), 0, kEps);
    EXPECT_THROW(dense_inner_product(plus, ghz), std::invalid_argument);
}

TEST(Dense, InvariantsOnRandomStates) {
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 50; trial++) {
        int n = 1 + trial % 5;
        DenseState a = random_dense(n, gen), b = random_dense(n, gen);
        EXPECT_NEAR(a.norm2(), 1.0, kEps);
        Amplitude ab = dense_inner_product(a, b), ba = dense_inner_product(b, a);
        EXPECT_NEAR(std::abs(ab - std::conj(ba)), 0, 1e-12);
        Gate g = testing::random_gate(n, gen);
        DenseState back = dense_apply_gate(dense_apply_gate(a, g), g.adjoint());
        EXPECT_LT(max_diff(a, back), kEps) << g.describe();
    }
}

TEST(Dense, SampleExamples) {
    DenseState b = dense_basis(BasisString::parse("101"));
    for (std::uint64_t seed = 0; seed < 20; seed++) {
        auto [x, post] = dense_sample(b, seed);
        EXPECT_EQ(x.str(), "101");
        EXPECT_LT(max_diff(post, b), kEps);
    }
    DenseState ghz = dense_from_fn(3, ghz_amp);
    int zeros = 0;
    const int draws = 10000;
    Rng rng(99);
    for (int i = 0; i < draws; i++) {
        BasisString x = dense_sample_string(ghz, rng);
        ASSERT_TRUE(x.str() == "000" || x.str() == "111");
        zeros += x.str() == "000";
    }
    EXPECT_NEAR(double(zeros) / draws, 0.5, 0.02);
    DenseState plus = dense_apply_gate(dense_basis(BasisString(1, 0)), Gate::h(1));
    EXPECT_EQ(dense_sample(plus, 5).first.str(), dense_sample(plus, 5).first.str());
    EXPECT_THROW(dense_sample(DenseState(2), 1), std::invalid_argument);
}

TEST(Gate, UnitarityAndAdjoint) {
    for (Gate g : {Gate::x(1), Gate::y(1), Gate::z(1), Gate::s(1), Gate::t(1), Gate::h(1), Gate::phase(1, 0.3),
                   Gate::cz(1, 2), Gate::swap(1, 2)}) {
        EXPECT_TRUE(g.is_unitary()) << g.describe();
    }
    EXPECT_TRUE(Gate::t(1).is_diagonal());
    EXPECT_TRUE(Gate::x(1).is_antidiagonal());
    EXPECT_THROW(Gate::local({1}, {1, 1, 0, 1}), std::invalid_argument);
    EXPECT_THROW(Gate::local({1, 1}, std::vector<Amplitude>(16, 0.5)), std::invalid_argument);
    EXPECT_THROW(Gate::cz(2, 2), std::invalid_argument);
}

TEST(Pauli, ParseMultiplyCommute) {
    PauliString xx = PauliString::parse("XXI");
    EXPECT_EQ(xx.str(3), "XXI");
    EXPECT_EQ(xx.at(3), 'X');
    EXPECT_EQ(xx.at(1), 'I');
    PauliString zi = PauliString::parse("ZII");
    EXPECT_TRUE(anticommute(xx, zi));
    EXPECT_FALSE(anticommute(xx, PauliString::parse("ZZI")));
    // X * Z = -i Y
    PauliLim x{1.0, PauliString::parse("X")}, z{1.0, PauliString::parse("Z")};
    PauliLim xz = x * z;
    EXPECT_EQ(xz.p.str(1), "Y");
    EXPECT_NEAR(std::abs(xz.lam - Amplitude(0, -1)), 0, 1e-15);
    EXPECT_TRUE((x * PauliLim{0.0, {}}).zero());
    EXPECT_THROW(PauliString::parse("XQ"), ParseError);
    EXPECT_THROW(PauliLim({0.0, {}}).inverse(), std::invalid_argument);
}

TEST(GraphParse, FileAndErrors) {
    Graph k3 = load_graph(QSKC_EXAMPLES_DIR "/k3.graph");
    EXPECT_EQ(k3.n(), 3);
    EXPECT_EQ(k3.edge_count(), 3u);
    EXPECT_TRUE(k3.has_edge(1, 3));
    std::istringstream bad_count("3 2\n1 2\n");
    EXPECT_THROW(parse_graph(bad_count), ParseError);
    std::istringstream bad_vertex("2 1\n1 5\n");
    EXPECT_THROW(parse_graph(bad_vertex), ParseError);
    std::istringstream loop("2 1\n1 1\n");
    EXPECT_THROW(parse_graph(loop), ParseError);
    Graph g = grid_graph(3, 2);
    EXPECT_EQ(g.n(), 6);
    EXPECT_EQ(g.edge_count(), 7u);
    EXPECT_EQ(cycle_graph(5).edge_count(), 5u);
    EXPECT_EQ(complete_graph(4).edge_count(), 6u);
    EXPECT_EQ(k3.with_isolated(2).n(), 5);
}

TEST(CircuitParse, FilesAndErrors) {
    Circuit c = load_circuit(QSKC_EXAMPLES_DIR "/ghz.circuit");
    EXPECT_EQ(c.n, 3);
    EXPECT_EQ(c.steps.size(), 8u);
    EXPECT_TRUE(std::get<Measure>(c.steps.back()).all());
    Circuit l = load_circuit(QSKC_EXAMPLES_DIR "/local.circuit");
    EXPECT_EQ(std::get<Gate>(l.steps[1]).kind, GateKind::Local);

    auto parse = [](const std::string &text) {
        std::istringstream in(text);
        return parse_circuit(in);
    };
    EXPECT_THROW(parse("h 1\n"), ParseError);
    EXPECT_THROW(parse("qubits 2\nfoo 1\n"), ParseError);
    EXPECT_THROW(parse("qubits 2\ncz 1\n"), ParseError);
    EXPECT_THROW(parse("qubits 2\ncz 1 1\n"), ParseError);
    EXPECT_THROW(parse("qubits 2\nh 3\n"), std::exception);
    EXPECT_THROW(parse(""), ParseError);
    EXPECT_NO_THROW(parse("# comment\nqubits 2 # trailing\n\nh 1\nmeasure 2\n"));
}

TEST(Store, HashConsingAndMerging) {
    Diagram q = new_diagram(Variant::QMDD, 1);
    Store &s = *q.store;
    Edge one{1.0, {}, s.leaf(1.0)};
    Edge a = qmdd_make_node(s, 1, one, scale_edge(one, 0.5));
    Edge b = qmdd_make_node(s, 1, one, scale_edge(one, 0.5));
    EXPECT_EQ(a.node, b.node);
    Edge twice = qmdd_make_node(s, 1, scale_edge(one, 2.0), scale_edge(one, 1.0));
    EXPECT_EQ(twice.node, a.node);
    EXPECT_NEAR(std::abs(twice.w - 2.0), 0, kEps);

    Diagram ad = new_diagram(Variant::ADD, 1);
    Store &t = *ad.store;
    Edge f = add_make_node(t, 1, add_leaf(t, 1.0), add_leaf(t, 0.5));
    Edge f2 = add_make_node(t, 1, add_leaf(t, 2.0), add_leaf(t, 1.0));
    EXPECT_NE(f.node, f2.node);
}

TEST(Diagram, SizeFollowAmplitude) {
    Diagram leaf = qmdd_basis(BasisString(1, 0));
    leaf.root = Edge{1.0, {}, leaf.store->leaf(1.0)};
    leaf.n = 1;
    // A one-leaf diagram has one node and one root edge.
    DiagramStats ls = stats(leaf);
    EXPECT_EQ(ls.internal_nodes + ls.leaves, 1u);
    EXPECT_EQ(ls.edges, 1u);
    EXPECT_EQ(ls.size, 3u);

    Diagram g = ghz_qmdd(3);
    DiagramStats st = stats(g);
    EXPECT_EQ(st.internal_nodes, 5u);
    EXPECT_EQ(st.leaves, 1u);
    EXPECT_EQ(st.edges, 11u);
    EXPECT_EQ(size(g), 28u);
    EXPECT_NEAR(std::abs(amplitude(g, BasisString::parse("000")) - kR2), 0, kEps);
    EXPECT_EQ(amplitude(g, BasisString::parse("010")), Amplitude(0));
    Edge f0 = follow(g, g.root, 0);
    Diagram sub{Variant::QMDD, 2, g.store, f0};
    EXPECT_NEAR(std::abs(amplitude(sub, BasisString::parse("00")) - kR2), 0, kEps);
    EXPECT_EQ(amplitude(sub, BasisString::parse("11")), Amplitude(0));
    EXPECT_TRUE(follow(g, zero_edge(), 1).zero());
    EXPECT_THROW(amplitude(g, BasisString::parse("00")), std::invalid_argument);

    Diagram lg = std::get<Diagram>(build_family("ghz", {3, 1, {}}, Rep::LIMDD));
    DiagramStats lst = stats(lg);
    EXPECT_EQ(lst.internal_nodes, 3u);
    EXPECT_EQ(lst.leaves, 1u);
}

TEST(Diagram, RandomRoundTripAgainstOracle) {
    std::mt19937_64 gen(11);
    for (Variant v : {Variant::ADD, Variant::QMDD, Variant::LIMDD}) {
        DenseState s = random_dense(5, gen, 0.3);
        AnyState d = any_from_dense(s, v == Variant::ADD ? Rep::ADD : v == Variant::QMDD ? Rep::QMDD : Rep::LIMDD);
        for (std::uint64_t k = 0; k < 32; k++) {
            BasisString x(5, k);
            EXPECT_NEAR(std::abs(any_amplitude(d, x) - s[x]), 0, kEps) << variant_name(v) << " " << x.str();
        }
    }
}

TEST(Store, BudgetIsEnforced) {
    Diagram d = new_diagram(Variant::QMDD, 12);
    d.store->set_budget(50);
    std::mt19937_64 gen(3);
    DenseState s = random_dense(12, gen);
    auto build = [&] {
        Store &st = *d.store;
        Edge e{1.0, {}, st.leaf(1.0)};
        std::vector<Edge> level(s.dim());
        for (std::size_t k = 0; k < s.dim(); k++) {
            level[k] = scale_edge(e, s.amps[k]);
        }
        for (int q = 1; q <= 12; q++) {
            std::vector<Edge> up(level.size() / 2);
            for (std::size_t i = 0; i < up.size(); i++) {
                up[i] = qmdd_make_node(st, q, level[2 * i], level[2 * i + 1]);
            }
            level = up;
        }
    };
    EXPECT_THROW(build(), BudgetExceeded);
}

class SerializeRoundTrip : public ::testing::TestWithParam<Rep> {};

TEST_P(SerializeRoundTrip, ByteExact) {
    Rep r = GetParam();
    std::vector<AnyState> states;
    for (const char *fam : {"ghz", "sum", "dicke", "cycle"}) {
        try {
            states.push_back(build_family(fam, {5, 2, {}}, r));
        } catch (const Unsupported &) {
        }
    }
    std::mt19937_64 gen(5);
    if (r != Rep::RBM) {
        states.push_back(any_from_dense(random_dense(4, gen, 0.25), r));
    } else {
        states.push_back(testing::random_rbm(4, 3, gen));
    }
    ASSERT_FALSE(states.empty());
    for (const AnyState &s : states) {
        std::string text = to_text(s);
        AnyState back = from_text(text);
        EXPECT_EQ(rep_of(back), r);
        EXPECT_EQ(to_text(back), text);
        EXPECT_EQ(state_size(back), state_size(s));
        EXPECT_LT(max_diff(any_to_dense(back), any_to_dense(s)), 1e-12);
    }
}

INSTANTIATE_TEST_SUITE_P(AllReps, SerializeRoundTrip, ::testing::ValuesIn(all_reps()),
                         [](const auto &info) { return std::string(rep_name(info.param)); });

TEST(Serialize, RejectsMalformedInput) {
    EXPECT_THROW(from_text("bogus 3"), ParseError);
    EXPECT_THROW(from_text("vector 1\n1,0\n"), ParseError);
    EXPECT_THROW(from_text("vector 1\n1,0 0,0 0,0\n"), ParseError);
    EXPECT_THROW(from_text("mps 2\nsite 2 1 1\n1,0\n0,0\n"), ParseError);
    // A QMDD whose low label is not 1 is not canonical.
    std::string ghz = to_text(AnyState(ghz_qmdd(2)));
    EXPECT_NO_THROW(from_text(ghz));
    std::string text = to_text(AnyState(qmdd_basis(BasisString::parse("0"))));
    std::istringstream lines(text);
    std::string line, node_line;
    while (std::getline(lines, line)) {
        if (detail::split_ws(line).size() == 6) {
            node_line = line;
        }
    }
    ASSERT_FALSE(node_line.empty()) << text;
    auto toks = detail::split_ws(node_line);
    std::string bad = toks[0] + " " + toks[1] + " 2,0 " + toks[3] + " " + toks[4] + " " + toks[5];
    std::string mangled = text;
    mangled.replace(mangled.find(node_line), node_line.size(), bad);
    EXPECT_THROW(from_text(mangled), ParseError);
}

}  // namespace
}  // namespace qskc
