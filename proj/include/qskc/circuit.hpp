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

#ifndef QSKC_CIRCUIT_HPP
#define QSKC_CIRCUIT_HPP

#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "qskc/gate.hpp"

namespace qskc {

/// Measurement of one qubit, or of all qubits when qubit == 0.
struct Measure {
    int qubit = 0;
    bool all() const {
        return qubit == 0;
    }
};

using Step = std::variant<Gate, Measure>;

struct Circuit {
    int n = 0;
    std::vector<Step> steps;

    void validate() const {
        require(n >= 1, "circuit needs at least one qubit");
        for (const auto &st : steps) {
            if (auto g = std::get_if<Gate>(&st)) {
                for (int t : g->targets) {
                    require(t >= 1 && t <= n, "gate " + g->describe() + " references a qubit outside [1, n]");
                }
            } else {
                int q = std::get<Measure>(st).qubit;
                require(q >= 0 && q <= n, "measurement references a qubit outside [1, n]");
            }
        }
    }
};

namespace detail {

inline std::vector<std::string> split_ws(const std::string &line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) {
        out.push_back(tok);
    }
    return out;
}

inline int parse_int(const std::string &s, int line_no) {
    try {
        size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) {
            throw ParseError("");
        }
        return v;
    } catch (const std::exception &) {
        throw ParseError("line " + std::to_string(line_no) + ": expected an integer, got '" + s + "'");
    }
}

}  // namespace detail

/// Reads a 2^k x 2^k matrix: one row per line, entries `re,im`.
inline std::vector<Amplitude> read_matrix(std::istream &in, int k) {
    int d = 1 << k;
    std::vector<Amplitude> m;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        auto toks = detail::split_ws(line);
        if (toks.empty()) {
            continue;
        }
        if ((int)toks.size() != d) {
            throw ParseError("matrix row has " + std::to_string(toks.size()) + " entries, expected " +
                             std::to_string(d));
        }
        for (auto &t : toks) {
            m.push_back(parse_amplitude(t));
        }
    }
    if ((int)m.size() != d * d) {
        throw ParseError("matrix has wrong number of rows");
    }
    return m;
}

inline std::vector<Amplitude> load_matrix_file(const std::filesystem::path &path, int k) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open matrix file " + path.string());
    }
    return read_matrix(in, k);
}

/// Parses the circuit text format. Relative matrix paths resolve against base_dir.
inline Circuit parse_circuit(std::istream &in, const std::filesystem::path &base_dir = ".") {
    Circuit c;
    std::string line;
    int line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        line_no++;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        auto t = detail::split_ws(line);
        if (t.empty()) {
            continue;
        }
        auto where = [&] { return "line " + std::to_string(line_no) + ": "; };
        auto want = [&](size_t count) {
            if (t.size() != count) {
                throw ParseError(where() + "'" + t[0] + "' expects " + std::to_string(count - 1) + " operands");
            }
        };
        auto q = [&](size_t i) { return detail::parse_int(t[i], line_no); };
        const std::string &op = t[0];
        if (!have_header) {
            if (op != "qubits") {
                throw ParseError(where() + "circuit must start with 'qubits N'");
            }
            want(2);
            c.n = q(1);
            have_header = true;
            continue;
        }
        if (op == "x" || op == "y" || op == "z" || op == "s" || op == "t" || op == "h") {
            want(2);
            int a = q(1);
            Gate g = op == "x"   ? Gate::x(a)
                     : op == "y" ? Gate::y(a)
                     : op == "z" ? Gate::z(a)
                     : op == "s" ? Gate::s(a)
                     : op == "t" ? Gate::t(a)
                                 : Gate::h(a);
            c.steps.emplace_back(g);
        } else if (op == "cz" || op == "swap") {
            want(3);
            int a = q(1), b = q(2);
            if (a == b) {
                throw ParseError(where() + op + " needs two distinct qubits");
            }
            c.steps.emplace_back(op == "cz" ? Gate::cz(a, b) : Gate::swap(a, b));
        } else if (op == "local") {
            if (t.size() < 3) {
                throw ParseError(where() + "local expects k, k qubits and a matrix path");
            }
            int k = q(1);
            if (k < 1 || t.size() != size_t(k) + 3) {
                throw ParseError(where() + "local expects k, k qubits and a matrix path");
            }
            std::vector<int> targets;
            for (int i = 0; i < k; i++) {
                targets.push_back(q(2 + i));
            }
            std::filesystem::path mp = t.back();
            if (mp.is_relative()) {
                mp = base_dir / mp;
            }
            try {
                c.steps.emplace_back(Gate::local(targets, load_matrix_file(mp, k)));
            } catch (const std::invalid_argument &e) {
                throw ParseError(where() + e.what());
            }
        } else if (op == "measure") {
            want(2);
            int a = q(1);
            if (a < 1) {
                throw ParseError(where() + "measure needs a qubit in [1, n]");
            }
            c.steps.emplace_back(Measure{a});
        } else if (op == "measure_all") {
            want(1);
            c.steps.emplace_back(Measure{0});
        } else {
            throw ParseError(where() + "unknown instruction '" + op + "'");
        }
    }
    if (!have_header) {
        throw ParseError("empty circuit");
    }
    try {
        c.validate();
    } catch (const std::invalid_argument &e) {
        throw ParseError(e.what());
    }
    return c;
}

inline Circuit load_circuit(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open circuit file " + path.string());
    }
    return parse_circuit(in, path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path());
}

}  // namespace qskc

#endif
