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

#ifndef QSKC_BACKEND_HPP
#define QSKC_BACKEND_HPP

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "qskc/rbm.hpp"
#include "qskc/transform.hpp"

namespace qskc {

// Uniform access to the six representations, used by the simulator, the CLI
// and the benchmarks.

enum class Rep { Vector, ADD, QMDD, LIMDD, MPS, RBM };

inline const char *rep_name(Rep r) {
    switch (r) {
        case Rep::Vector:
            return "vector";
        case Rep::ADD:
            return "add";
        case Rep::QMDD:
            return "qmdd";
        case Rep::LIMDD:
            return "limdd";
        case Rep::MPS:
            return "mps";
        case Rep::RBM:
            return "rbm";
    }
    return "?";
}

inline const std::vector<Rep> &all_reps() {
    static const std::vector<Rep> reps{Rep::Vector, Rep::ADD, Rep::QMDD, Rep::LIMDD, Rep::MPS, Rep::RBM};
    return reps;
}

inline Rep parse_rep(const std::string &s) {
    for (Rep r : all_reps()) {
        if (s == rep_name(r)) {
            return r;
        }
    }
    throw std::invalid_argument("unknown representation '" + s + "' (expected vector, add, qmdd, limdd, mps or rbm)");
}

inline Rep rep_of(Variant v) {
    switch (v) {
        case Variant::ADD:
            return Rep::ADD;
        case Variant::QMDD:
            return Rep::QMDD;
        case Variant::LIMDD:
            return Rep::LIMDD;
    }
    return Rep::QMDD;
}

using AnyState = std::variant<DenseState, Diagram, Mps, Rbm>;

inline Rep rep_of(const AnyState &s) {
    switch (s.index()) {
        case 0:
            return Rep::Vector;
        case 1:
            return rep_of(std::get<Diagram>(s).variant);
        case 2:
            return Rep::MPS;
        default:
            return Rep::RBM;
    }
}

inline int qubits(const AnyState &s) {
    return std::visit([](const auto &v) { return v.n; }, s);
}

/// Size per each representation's own measure: 2^n amplitudes for a vector.
inline std::size_t state_size(const AnyState &s) {
    switch (rep_of(s)) {
        case Rep::Vector:
            return std::get<DenseState>(s).dim();
        case Rep::MPS:
            return std::get<Mps>(s).size();
        case Rep::RBM:
            return std::get<Rbm>(s).size();
        default:
            return size(std::get<Diagram>(s));
    }
}

/// Exponential in n.
inline DenseState any_to_dense(const AnyState &s) {
    switch (rep_of(s)) {
        case Rep::Vector:
            return std::get<DenseState>(s);
        case Rep::MPS:
            return mps_to_dense(std::get<Mps>(s));
        case Rep::RBM:
            return rbm_to_dense_bruteforce(std::get<Rbm>(s));
        default:
            return to_dense(std::get<Diagram>(s));
    }
}

inline Amplitude any_amplitude(const AnyState &s, const BasisString &x) {
    switch (rep_of(s)) {
        case Rep::Vector:
            return std::get<DenseState>(s)[x];
        case Rep::MPS:
            return mps_amplitude(std::get<Mps>(s), x);
        case Rep::RBM:
            return rbm_amplitude(std::get<Rbm>(s), x);
        default:
            return amplitude(std::get<Diagram>(s), x);
    }
}

inline AnyState any_from_dense(const DenseState &s, Rep r) {
    switch (r) {
        case Rep::Vector:
            return s;
        case Rep::ADD:
            return add_from_dense(s);
        case Rep::QMDD:
            return qmdd_from_dense(s);
        case Rep::LIMDD:
            return limdd_from_dense(s);
        case Rep::MPS:
            return mps_from_dense(s);
        case Rep::RBM:
            break;
    }
    throw Unsupported("no transformation into RBM exists");
}

using Factors = std::vector<std::array<Amplitude, 2>>;

inline AnyState any_product(const Factors &f, Rep r) {
    switch (r) {
        case Rep::Vector:
            return dense_from_fn((int)f.size(), [&](const BasisString &x) {
                Amplitude a = 1.0;
                for (int q = 1; q <= x.size(); q++) {
                    a *= f[q - 1][x.bit(q)];
                }
                return a;
            });
        case Rep::ADD: {
            // ADDs have no cheap product builder; go through the QMDD
            return qmdd_to_add(qmdd_product(f));
        }
        case Rep::QMDD:
            return qmdd_product(f);
        case Rep::LIMDD:
            return limdd_product(f);
        case Rep::MPS:
            return mps_product(f);
        case Rep::RBM:
            return rbm_product(f);
    }
    return qmdd_product(f);
}

inline AnyState any_basis(const BasisString &x, Rep r) {
    Factors f(x.size());
    for (int q = 1; q <= x.size(); q++) {
        f[q - 1] = x.bit(q) ? std::array<Amplitude, 2>{0.0, 1.0} : std::array<Amplitude, 2>{1.0, 0.0};
    }
    if (r == Rep::ADD) {
        return add_basis(x);
    }
    return any_product(f, r);
}

inline AnyState any_apply_gate(const AnyState &s, const Gate &g) {
    for (int t : g.targets) {
        require(t >= 1 && t <= qubits(s), "gate " + g.describe() + " targets a qubit outside [1, n]");
    }
    switch (rep_of(s)) {
        case Rep::Vector:
            return dense_apply_gate(std::get<DenseState>(s), g);
        case Rep::ADD:
            return add_apply_gate(std::get<Diagram>(s), g);
        case Rep::QMDD:
            return qmdd_apply_gate(std::get<Diagram>(s), g);
        case Rep::LIMDD:
            return limdd_apply_gate(std::get<Diagram>(s), g);
        case Rep::MPS:
            return mps_apply_gate(std::get<Mps>(s), g);
        case Rep::RBM:
            return rbm_apply_gate(std::get<Rbm>(s), g);
    }
    return s;
}

inline AnyState any_scale(const AnyState &s, Amplitude c) {
    switch (rep_of(s)) {
        case Rep::Vector:
            return std::get<DenseState>(s).scaled(c);
        case Rep::ADD:
            return add_scale(std::get<Diagram>(s), c);
        case Rep::QMDD:
            return qmdd_scale(std::get<Diagram>(s), c);
        case Rep::LIMDD:
            return limdd_scale(std::get<Diagram>(s), c);
        case Rep::MPS:
            return mps_scale(std::get<Mps>(s), c);
        case Rep::RBM: {
            Rbm r = std::get<Rbm>(s);
            r.log_scale += std::log(c);
            return r;
        }
    }
    return s;
}

/// Squared norm; exponential for RBM.
inline double any_norm2(const AnyState &s) {
    switch (rep_of(s)) {
        case Rep::Vector:
            return std::get<DenseState>(s).norm2();
        case Rep::MPS:
            return mps_norm2(std::get<Mps>(s));
        case Rep::RBM:
            return rbm_to_dense_bruteforce(std::get<Rbm>(s)).norm2();
        default:
            return norm2(std::get<Diagram>(s));
    }
}

/// Probability that qubit q reads 0. Not available for RBM.
inline double any_prob_zero(const AnyState &s, int q) {
    require(q >= 1 && q <= qubits(s), "qubit out of range");
    switch (rep_of(s)) {
        case Rep::Vector: {
            const DenseState &d = std::get<DenseState>(s);
            double p0 = 0, tot = 0;
            for (std::size_t k = 0; k < d.dim(); k++) {
                double w = std::norm(d.amps[k]);
                tot += w;
                if (!((k >> (q - 1)) & 1)) {
                    p0 += w;
                }
            }
            if (!(tot > 0)) {
                throw Error("probability of a zero-norm state");
            }
            return p0 / tot;
        }
        case Rep::MPS:
            return mps_prob_zero(std::get<Mps>(s), q);
        case Rep::RBM:
            throw Unsupported("tractability map: RBM x Prob = ? (outcome probabilities are not available)");
        default:
            return prob_zero(std::get<Diagram>(s), q);
    }
}

inline double any_prob(const AnyState &s, const BasisString &x) {
    switch (rep_of(s)) {
        case Rep::Vector:
            return dense_prob(std::get<DenseState>(s), x);
        case Rep::MPS:
            return mps_prob(std::get<Mps>(s), x);
        case Rep::RBM:
            throw Unsupported("tractability map: RBM x Prob = ? (outcome probabilities are not available)");
        default:
            return prob(std::get<Diagram>(s), x);
    }
}

/// Projects qubit q onto |b>, dividing by sqrt(p). For RBM a hidden unit that
/// vanishes on the other value of q does the projection, and p is ignored.
inline AnyState any_project(const AnyState &s, int q, int b, double p) {
    switch (rep_of(s)) {
        case Rep::Vector: {
            DenseState d = std::get<DenseState>(s);
            double c = 1.0 / std::sqrt(p);
            for (std::size_t k = 0; k < d.dim(); k++) {
                d.amps[k] = int((k >> (q - 1)) & 1) == b ? d.amps[k] * c : Amplitude(0.0);
            }
            return d;
        }
        case Rep::ADD:
            return add_project(std::get<Diagram>(s), q, b, p);
        case Rep::QMDD:
            return qmdd_project(std::get<Diagram>(s), q, b, p);
        case Rep::LIMDD:
            return limdd_project(std::get<Diagram>(s), q, b, p);
        case Rep::MPS:
            return mps_project(std::get<Mps>(s), q, b, p);
        case Rep::RBM: {
            Rbm r = std::get<Rbm>(s);
            Amplitude ipi(0, kPi);
            // 1 + e^{beta + i pi x_q} is 2 on the kept value and 0 on the other
            r.add_hidden(b ? ipi : Amplitude(0.0), {{q, ipi}});
            r.log_scale -= std::log(2.0);
            return r;
        }
    }
    return s;
}

/// Exact chain-rule draw for every backend except RBM, which runs a Metropolis
/// chain seeded from the same stream.
inline BasisString any_sample_string(const AnyState &s, Rng &rng) {
    switch (rep_of(s)) {
        case Rep::Vector:
            return dense_sample_string(std::get<DenseState>(s), rng);
        case Rep::MPS:
            return mps_sample_string(std::get<Mps>(s), rng);
        case Rep::RBM:
            return rbm_sample_chain(std::get<Rbm>(s), rng);
        default:
            return sample_string(std::get<Diagram>(s), rng);
    }
}

/// Basis state x in representation r, with amplitude `phase`.
inline AnyState any_collapse(const AnyState &s, const BasisString &x, Amplitude phase) {
    switch (rep_of(s)) {
        case Rep::ADD: {
            const Diagram &d = std::get<Diagram>(s);
            return with_root(d, add_basis_edge(*d.store, x, phase));
        }
        case Rep::QMDD: {
            const Diagram &d = std::get<Diagram>(s);
            return with_root(d, qmdd_basis_edge(*d.store, x, phase));
        }
        case Rep::LIMDD: {
            const Diagram &d = std::get<Diagram>(s);
            return with_root(d, limdd_basis_edge(*d.store, x, phase));
        }
        case Rep::MPS:
            return mps_basis(x, phase);
        default:
            return any_scale(any_basis(x, rep_of(s)), phase);
    }
}

/// Converts between representations. Every direction among ADD, QMDD, LIMDD
/// and MPS is supported (some by composing two transformations); vectors
/// convert both ways; RBMs only expand to vectors.
inline AnyState convert(const AnyState &s, Rep to) {
    Rep from = rep_of(s);
    if (from == to) {
        return s;
    }
    if (from == Rep::RBM || to == Rep::RBM) {
        if (from == Rep::RBM && to == Rep::Vector) {
            return any_to_dense(s);
        }
        throw Unsupported(std::string("no transformation ") + rep_name(from) + " -> " + rep_name(to) +
                          " (RBM has no conversion routines)");
    }
    if (from == Rep::Vector) {
        return any_from_dense(std::get<DenseState>(s), to);
    }
    if (to == Rep::Vector) {
        return any_to_dense(s);
    }
    // route everything else through the QMDD
    Diagram q;
    switch (from) {
        case Rep::ADD:
            q = add_to_qmdd(std::get<Diagram>(s));
            break;
        case Rep::QMDD:
            q = std::get<Diagram>(s);
            break;
        case Rep::LIMDD:
            q = limdd_to_qmdd(std::get<Diagram>(s));
            break;
        case Rep::MPS:
            q = mps_to_qmdd(std::get<Mps>(s));
            break;
        default:
            break;
    }
    switch (to) {
        case Rep::ADD:
            return qmdd_to_add(q);
        case Rep::QMDD:
            return q;
        case Rep::LIMDD:
            return qmdd_to_limdd(q);
        case Rep::MPS:
            return qmdd_to_mps(q);
        default:
            break;
    }
    return q;
}

/// |<a|b>|^2 / (<a|a><b|b>). Decision diagrams go through their MPS image;
/// RBM operands are expanded densely.
inline double any_fidelity(const AnyState &a, const AnyState &b) {
    require(qubits(a) == qubits(b), "operands have different qubit counts");
    auto as_mps = [](const AnyState &s) -> Mps {
        switch (rep_of(s)) {
            case Rep::MPS:
                return std::get<Mps>(s);
            case Rep::Vector:
                return mps_from_dense(std::get<DenseState>(s));
            default:
                return std::get<Mps>(convert(s, Rep::MPS));
        }
    };
    if (rep_of(a) == Rep::RBM || rep_of(b) == Rep::RBM || (rep_of(a) == Rep::Vector && rep_of(b) == Rep::Vector)) {
        return dense_fidelity(any_to_dense(a), any_to_dense(b));
    }
    return mps_fidelity(as_mps(a), as_mps(b));
}

}  // namespace qskc

#endif
