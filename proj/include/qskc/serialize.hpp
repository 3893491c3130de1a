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

#ifndef QSKC_SERIALIZE_HPP
#define QSKC_SERIALIZE_HPP

#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "qskc/backend.hpp"

// Text formats. Scalars are `re,im` printed with the shortest round-tripping
// precision, so write -> read -> write is byte-identical.
//
//   qdd <add|qmdd|limdd> <n>
//   <id> 0 <value>                                  leaf
//   <id> <level> <lo_label> <lo_id> <hi_label> <hi_id>
//   root <label> <id>
//
// Node ids are file-local and every child precedes its parent. A LIMDD label
// is `re,im:PSTRING` with one symbol per level of the target, leftmost symbol
// for the highest qubit; the zero label is `0,0`.
//
//   mps <n>
//   site <k> <D_k> <D_k-1>      then A_k^0 and A_k^1, one matrix row per line
//
//   rbm <n> <m>
//   alpha, beta, then n rows of W, then `scale <log_scale>`
//
//   vector <n>                  then 2^n amplitudes in index order

namespace qskc {

namespace serialize_detail {

/// Whitespace-separated tokens, `#` comments stripped, line numbers kept for
/// error messages.
class Tokens {
   public:
    explicit Tokens(std::istream &in) {
        std::string line;
        int no = 0;
        while (std::getline(in, line)) {
            no++;
            if (auto h = line.find('#'); h != std::string::npos) {
                line.resize(h);
            }
            std::istringstream ls(line);
            std::string t;
            while (ls >> t) {
                toks_.push_back({t, no});
            }
        }
    }
    bool done() const {
        return pos_ >= toks_.size();
    }
    std::string next(const char *what) {
        if (done()) {
            throw ParseError(std::string("unexpected end of input, expected ") + what);
        }
        return toks_[pos_++].first;
    }
    int line() const {
        return toks_.empty() ? 0 : toks_[std::min(pos_, toks_.size() - 1)].second;
    }
    long long integer(const char *what) {
        std::string t = next(what);
        try {
            std::size_t used = 0;
            long long v = std::stoll(t, &used);
            if (used == t.size()) {
                return v;
            }
        } catch (const std::logic_error &) {
        }
        throw ParseError("line " + std::to_string(line()) + ": bad " + what + " '" + t + "'");
    }
    Amplitude amplitude(const char *what) {
        std::string t = next(what);
        if (t.find(',') == std::string::npos) {
            throw ParseError("line " + std::to_string(line()) + ": " + what + " must be re,im, got '" + t + "'");
        }
        return parse_amplitude(t);
    }
    void expect(const std::string &word) {
        std::string t = next(word.c_str());
        if (t != word) {
            throw ParseError("line " + std::to_string(line()) + ": expected '" + word + "', got '" + t + "'");
        }
    }

   private:
    std::vector<std::pair<std::string, int>> toks_;
    std::size_t pos_ = 0;
};

inline const char *variant_tag(Variant v) {
    switch (v) {
        case Variant::ADD:
            return "add";
        case Variant::QMDD:
            return "qmdd";
        case Variant::LIMDD:
            return "limdd";
    }
    return "?";
}

inline Variant parse_variant_tag(const std::string &s) {
    if (s == "add") {
        return Variant::ADD;
    }
    if (s == "qmdd") {
        return Variant::QMDD;
    }
    if (s == "limdd") {
        return Variant::LIMDD;
    }
    throw ParseError("unknown diagram variant '" + s + "'");
}

inline std::string label_str(const Diagram &d, const Edge &e) {
    if (e.zero()) {
        return "0,0";
    }
    if (d.variant == Variant::LIMDD) {
        return e.lim().str(d.node(e.node).level);
    }
    return format_amplitude(e.w);
}

}  // namespace serialize_detail

inline void write_diagram(std::ostream &os, const Diagram &d) {
    using namespace serialize_detail;
    std::vector<NodeId> order = reachable(d);
    std::unordered_map<NodeId, std::size_t> id;
    for (std::size_t i = 0; i < order.size(); i++) {
        id[order[i]] = i;
    }
    // Zero edges point at the unit leaf, which is reachable in any QMDD/LIMDD.
    auto target = [&](const Edge &e) { return id.at(e.zero() ? kLeaf : e.node); };
    os << "qdd " << variant_tag(d.variant) << " " << d.n << "\n";
    for (std::size_t i = 0; i < order.size(); i++) {
        const Node &nd = d.node(order[i]);
        if (nd.level == 0) {
            os << i << " 0 " << format_amplitude(nd.leaf) << "\n";
            continue;
        }
        os << i << " " << nd.level << " " << label_str(d, nd.lo) << " " << target(nd.lo) << " "
           << label_str(d, nd.hi) << " " << target(nd.hi) << "\n";
    }
    os << "root " << label_str(d, d.root) << " " << target(d.root) << "\n";
}

namespace serialize_detail {

inline Diagram read_diagram_body(Tokens &t, Variant v, int n) {
    require_parse(n >= 1 && n <= kMaxQubits, "qdd qubit count out of range");
    Diagram d = new_diagram(v, n);
    Store &s = *d.store;
    std::vector<NodeId> ids;
    auto child = [&](long long k) -> NodeId {
        if (k < 0 || k >= (long long)ids.size()) {
            throw ParseError("line " + std::to_string(t.line()) + ": node id " + std::to_string(k) +
                             " is not defined above");
        }
        return ids[k];
    };
    // A label is read before its target, whose level the Pauli string must match.
    auto edge = [&]() {
        std::string lab = t.next("edge label");
        NodeId target = child(t.integer("node id"));
        const std::string &tok = lab;
        Edge e;
        if (tok == "0,0" || tok == "0") {
            return zero_edge();
        }
        e.node = target;
        if (v == Variant::LIMDD) {
            auto colon = tok.find(':');
            if (colon == std::string::npos) {
                throw ParseError("line " + std::to_string(t.line()) + ": LIMDD label needs re,im:PSTRING");
            }
            e.w = parse_amplitude(tok.substr(0, colon));
            std::string ps = tok.substr(colon + 1);
            if ((int)ps.size() != s.level(target)) {
                throw ParseError("line " + std::to_string(t.line()) + ": Pauli string length " +
                                 std::to_string(ps.size()) + " does not match target level " +
                                 std::to_string(s.level(target)));
            }
            e.p = PauliString::parse(ps);
        } else {
            e.w = parse_amplitude(tok);
        }
        return e.w == 0.0 ? zero_edge() : e;
    };
    while (true) {
        std::string head = t.next("node line or root");
        if (head == "root") {
            break;
        }
        std::size_t used = 0;
        long long fid = -1;
        try {
            fid = std::stoll(head, &used);
        } catch (const std::logic_error &) {
        }
        if (used != head.size() || fid != (long long)ids.size()) {
            throw ParseError("line " + std::to_string(t.line()) + ": expected node id " +
                             std::to_string(ids.size()) + ", got '" + head + "'");
        }
        long long level = t.integer("level");
        if (level == 0) {
            Amplitude val = t.amplitude("leaf value");
            if (v != Variant::ADD && val != 1.0) {
                throw ParseError("line " + std::to_string(t.line()) + ": " + variant_tag(v) +
                                 " diagrams have only the unit leaf");
            }
            ids.push_back(v == Variant::ADD ? s.leaf(val) : kLeaf);
            continue;
        }
        if (level < 1 || level > n) {
            throw ParseError("line " + std::to_string(t.line()) + ": level out of range");
        }
        Edge lo = edge(), hi = edge();
        int line = t.line();
        auto bad = [&](const std::string &why) {
            return ParseError("line " + std::to_string(line) + ": " + why);
        };
        switch (v) {
            case Variant::ADD:
                if (lo.w != 1.0 || hi.w != 1.0) {
                    throw bad("ADD edge labels must be 1,0");
                }
                break;
            case Variant::QMDD:
                if (lo.zero() && hi.zero()) {
                    throw bad("QMDD node with two zero edges");
                }
                if (lo.zero() ? hi.w != 1.0 : lo.w != 1.0) {
                    throw bad("QMDD node is not normalized: first nonzero label must be 1,0");
                }
                break;
            case Variant::LIMDD:
                if (lo.zero() || lo.w != 1.0 || !lo.p.identity()) {
                    throw bad("LIMDD low edge must carry the identity label");
                }
                break;
        }
        std::size_t before = s.node_count();
        NodeId nid;
        try {
            nid = s.unique((int)level, lo, hi);
        } catch (const std::invalid_argument &e) {
            throw bad(e.what());
        }
        if (v == Variant::LIMDD && s.node_count() != before) {
            s.set_stab(nid, limdd_detail::node_stabilizer(s, (int)level, lo.node, s.node(nid).hi));
        }
        ids.push_back(nid);
    }
    d.root = edge();
    if (!d.root.zero() && s.level(d.root.node) != n) {
        throw ParseError("root targets a level " + std::to_string(s.level(d.root.node)) + " node, expected " +
                         std::to_string(n));
    }
    if (v == Variant::ADD && s.level(d.root.node) != n) {
        throw ParseError("ADD root must target a level-n node");
    }
    return d;
}

}  // namespace serialize_detail

inline void write_mps(std::ostream &os, const Mps &m) {
    os << "mps " << m.n << "\n";
    for (int k = 1; k <= m.n; k++) {
        const auto &a = m.site(k);
        os << "site " << k << " " << a[0].rows() << " " << a[0].cols() << "\n";
        for (int x = 0; x < 2; x++) {
            for (Eigen::Index r = 0; r < a[x].rows(); r++) {
                for (Eigen::Index c = 0; c < a[x].cols(); c++) {
                    os << (c ? " " : "") << format_amplitude(a[x](r, c));
                }
                os << "\n";
            }
        }
    }
}

inline void write_rbm(std::ostream &os, const Rbm &r) {
    auto row = [&](const std::vector<Amplitude> &v) {
        for (std::size_t i = 0; i < v.size(); i++) {
            os << (i ? " " : "") << format_amplitude(v[i]);
        }
        os << "\n";
    };
    os << "rbm " << r.n << " " << r.m << "\n";
    row(r.alpha);
    row(r.beta);
    for (const auto &w : r.w) {
        row(w);
    }
    os << "scale " << format_amplitude(r.log_scale) << "\n";
}

inline void write_dense(std::ostream &os, const DenseState &s) {
    os << "vector " << s.n << "\n";
    for (Amplitude a : s.amps) {
        os << format_amplitude(a) << "\n";
    }
}

inline void write_state(std::ostream &os, const AnyState &s) {
    std::visit(
        [&](const auto &x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, DenseState>) {
                write_dense(os, x);
            } else if constexpr (std::is_same_v<T, Diagram>) {
                write_diagram(os, x);
            } else if constexpr (std::is_same_v<T, Mps>) {
                write_mps(os, x);
            } else {
                write_rbm(os, x);
            }
        },
        s);
}

inline std::string to_text(const AnyState &s) {
    std::ostringstream os;
    write_state(os, s);
    return os.str();
}

/// Reads any of the four formats, dispatching on the header word.
inline AnyState read_state(std::istream &in) {
    using namespace serialize_detail;
    Tokens t(in);
    std::string kind = t.next("format header");
    AnyState out;
    if (kind == "qdd") {
        Variant v = parse_variant_tag(t.next("variant"));
        out = read_diagram_body(t, v, (int)t.integer("qubit count"));
    } else if (kind == "mps") {
        Mps m;
        m.n = (int)t.integer("qubit count");
        require_parse(m.n >= 1 && m.n <= kMaxQubits, "mps qubit count out of range");
        for (int k = 1; k <= m.n; k++) {
            t.expect("site");
            require_parse(t.integer("site index") == k, "mps sites must be listed in order 1..n");
            long long rows = t.integer("D_k"), cols = t.integer("D_k-1");
            require_parse(rows >= 1 && cols >= 1 && rows * cols <= (1LL << 26), "bad mps bond dimension");
            std::array<Matrix, 2> a{Matrix(rows, cols), Matrix(rows, cols)};
            for (int x = 0; x < 2; x++) {
                for (long long r = 0; r < rows; r++) {
                    for (long long c = 0; c < cols; c++) {
                        a[x](r, c) = t.amplitude("matrix entry");
                    }
                }
            }
            m.sites.push_back(std::move(a));
        }
        try {
            m.validate();
        } catch (const std::invalid_argument &e) {
            throw ParseError(e.what());
        }
        out = std::move(m);
    } else if (kind == "rbm") {
        Rbm r;
        r.n = (int)t.integer("visible count");
        r.m = (int)t.integer("hidden count");
        require_parse(r.n >= 1 && r.n <= kMaxQubits && r.m >= 0 && r.m <= (1 << 20), "rbm shape out of range");
        for (int i = 0; i < r.n; i++) {
            r.alpha.push_back(t.amplitude("alpha"));
        }
        for (int j = 0; j < r.m; j++) {
            r.beta.push_back(t.amplitude("beta"));
        }
        r.w.assign(r.n, {});
        for (int i = 0; i < r.n; i++) {
            for (int j = 0; j < r.m; j++) {
                r.w[i].push_back(t.amplitude("weight"));
            }
        }
        t.expect("scale");
        r.log_scale = t.amplitude("log scale");
        out = std::move(r);
    } else if (kind == "vector") {
        long long n = t.integer("qubit count");
        require_parse(n >= 1 && n <= kDenseCap, "vector qubit count out of range");
        DenseState s((int)n);
        for (auto &a : s.amps) {
            a = t.amplitude("amplitude");
        }
        out = std::move(s);
    } else {
        throw ParseError("unknown format header '" + kind + "' (expected qdd, mps, rbm or vector)");
    }
    if (!t.done()) {
        throw ParseError("line " + std::to_string(t.line()) + ": trailing input after the state");
    }
    return out;
}

inline AnyState from_text(const std::string &text) {
    std::istringstream in(text);
    return read_state(in);
}

inline AnyState load_state(const std::filesystem::path &p) {
    std::ifstream in(p);
    if (!in) {
        throw Error("cannot open state file " + p.string());
    }
    return read_state(in);
}

inline void save_state(const std::filesystem::path &p, const AnyState &s) {
    std::ofstream out(p);
    if (!out) {
        throw Error("cannot write state file " + p.string());
    }
    write_state(out, s);
}

}  // namespace qskc

#endif
