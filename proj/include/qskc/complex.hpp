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

#ifndef QSKC_COMPLEX_HPP
#define QSKC_COMPLEX_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <numbers>
#include <string>
#include <string_view>

#include "qskc/error.hpp"

namespace qskc {

using Amplitude = std::complex<double>;

/// Absolute tolerance used for every amplitude comparison and merge decision.
inline constexpr double kEps = 1e-9;

inline constexpr double kPi = std::numbers::pi;

inline bool approx_equal(Amplitude a, Amplitude b, double eps = kEps) {
    return std::abs(a.real() - b.real()) <= eps && std::abs(a.imag() - b.imag()) <= eps;
}

inline bool approx_zero(Amplitude a, double eps = kEps) {
    return std::abs(a.real()) <= eps && std::abs(a.imag()) <= eps;
}

inline Amplitude expi(double theta) {
    return {std::cos(theta), std::sin(theta)};
}

/// Bit pattern hash; callers intern values first so equal values share bits.
inline std::size_t hash_amplitude(Amplitude a) {
    double re = a.real() == 0.0 ? 0.0 : a.real();
    double im = a.imag() == 0.0 ? 0.0 : a.imag();
    std::uint64_t r, i;
    std::memcpy(&r, &re, sizeof r);
    std::memcpy(&i, &im, sizeof i);
    return std::hash<std::uint64_t>{}(r * 0x9E3779B97F4A7C15ull ^ (i + 0x7F4A7C159E3779B9ull));
}

inline void hash_combine(std::size_t &seed, std::size_t v) {
    seed ^= v + 0x9E3779B97F4A7C15ull + (seed << 6) + (seed >> 2);
}

/// Shortest text that reads back to the same doubles.
inline std::string format_double(double v) {
    if (v == 0.0) {
        return "0";
    }
    char buf[40];
    for (int prec = 15; prec <= 17; prec++) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) {
            break;
        }
    }
    return buf;
}

/// `re,im`
inline std::string format_amplitude(Amplitude a) {
    return format_double(a.real()) + "," + format_double(a.imag());
}

inline double parse_double(std::string_view text) {
    std::string s(text);
    char *end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) {
        throw ParseError("bad number '" + s + "'");
    }
    return v;
}

inline Amplitude parse_amplitude(std::string_view text) {
    auto comma = text.find(',');
    if (comma == std::string_view::npos) {
        return {parse_double(text), 0.0};
    }
    return {parse_double(text.substr(0, comma)), parse_double(text.substr(comma + 1))};
}

}  // namespace qskc

#endif
