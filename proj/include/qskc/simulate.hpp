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

#ifndef QSKC_SIMULATE_HPP
#define QSKC_SIMULATE_HPP

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "qskc/backend.hpp"
#include "qskc/circuit.hpp"

namespace qskc {

/// Outcome distributions are printed in full up to this many qubits.
inline constexpr int kDistributionMaxQubits = 10;

struct SimResult {
    AnyState state;
    std::vector<std::string> transcript;
};

inline std::string format_prob(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", std::abs(p) < 1e-12 ? 0.0 : p);
    return buf;
}

/// Runs the circuit from |0..0> on backend `rep`. Every backend draws one
/// uniform per measured qubit from the same seeded stream, so strong
/// simulators produce identical transcripts. RBMs have no Prob operation and
/// are simulated weakly: outcomes come from the sampler and no probabilities
/// are printed.
inline SimResult simulate(const Circuit &c, Rep rep, std::uint64_t seed) {
    c.validate();
    Rng rng(seed);
    SimResult r{any_basis(BasisString(c.n, 0), rep), {}};
    bool strong = rep != Rep::RBM;
    for (const Step &st : c.steps) {
        if (const Gate *g = std::get_if<Gate>(&st)) {
            r.state = any_apply_gate(r.state, *g);
            continue;
        }
        const Measure &m = std::get<Measure>(st);
        if (!m.all()) {
            int q = m.qubit;
            if (strong) {
                double p0 = std::clamp(any_prob_zero(r.state, q), 0.0, 1.0);
                int b = choose_bit(p0, 1.0 - p0, rng.uniform());
                r.transcript.push_back("measure " + std::to_string(q) + " -> " + std::to_string(b) +
                                       " p0=" + format_prob(p0) + " p1=" + format_prob(1.0 - p0));
                r.state = any_project(r.state, q, b, b ? 1.0 - p0 : p0);
            } else {
                int b = any_sample_string(r.state, rng).bit(q);
                r.transcript.push_back("measure " + std::to_string(q) + " -> " + std::to_string(b));
                r.state = any_project(r.state, q, b, 1.0);
            }
            continue;
        }
        if (strong && c.n <= kDistributionMaxQubits) {
            std::string line = "distribution";
            for (std::uint64_t k = 0; k < (std::uint64_t(1) << c.n); k++) {
                BasisString x(c.n, k);
                double p = any_prob(r.state, x);
                if (p > 1e-12) {
                    line += " " + x.str() + ":" + format_prob(p);
                }
            }
            r.transcript.push_back(line);
        }
        BasisString x = any_sample_string(r.state, rng);
        std::string line = "measure_all -> " + x.str();
        if (strong) {
            line += " p=" + format_prob(any_prob(r.state, x));
        }
        r.transcript.push_back(line);
        r.state = any_collapse(r.state, x, 1.0);
    }
    return r;
}

}  // namespace qskc

#endif
