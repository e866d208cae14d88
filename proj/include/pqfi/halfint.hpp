// Copyright 2026 The pqfi Authors
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

#pragma once

#include <charconv>
#include <compare>
#include <cstdlib>
#include <string>
#include <string_view>

#include "pqfi/errors.hpp"

namespace pqfi {

/// A half-integer quantum number (j or m) stored as twice its value.
struct HalfInt {
    int twice = 0;

    constexpr HalfInt() = default;
    constexpr explicit HalfInt(int twice_value) : twice(twice_value) {}

    static constexpr HalfInt from_twice(int t) { return HalfInt{t}; }
    static constexpr HalfInt from_int(int v) { return HalfInt{2 * v}; }

    constexpr double value() const { return 0.5 * twice; }
    constexpr bool is_integer() const { return twice % 2 == 0; }
    constexpr HalfInt operator-() const { return HalfInt{-twice}; }

    /// Parses "3/2", "1/1", "1.5", or a bare integer, which is read as the
    /// twice-value ("3" means 3/2).
    static HalfInt parse(std::string_view text);

    std::string str() const {
        if (twice % 2 == 0) {
            return std::to_string(twice / 2);
        }
        return std::to_string(twice) + "/2";
    }

    friend constexpr auto operator<=>(HalfInt, HalfInt) = default;
};

/// True when m is one of the 2j+1 magnetic numbers of spin j.
constexpr bool valid_magnetic_pair(HalfInt j, HalfInt m) {
    if (j.twice < 0) {
        return false;
    }
    const int diff = j.twice - m.twice;
    return (m.twice <= j.twice) && (m.twice >= -j.twice) && (diff % 2 == 0);
}

inline void require_magnetic_pair(HalfInt j, HalfInt m) {
    if (!valid_magnetic_pair(j, m)) {
        throw DomainError("invalid magnetic pair (j=" + j.str() + ", m=" + m.str() + ")");
    }
}

inline HalfInt HalfInt::parse(std::string_view text) {
    auto parse_int = [&](std::string_view s) {
        int v = 0;
        const auto *end = s.data() + s.size();
        auto [ptr, ec] = std::from_chars(s.data(), end, v);
        if (ec != std::errc{} || ptr != end) {
            throw DomainError("cannot parse half-integer '" + std::string(text) + "'");
        }
        return v;
    };
    if (text.empty()) {
        throw DomainError("empty half-integer");
    }
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        const int num = parse_int(text.substr(0, slash));
        const int den = parse_int(text.substr(slash + 1));
        if (den == 1) {
            return from_int(num);
        }
        if (den == 2) {
            return from_twice(num);
        }
        throw DomainError("half-integer denominator must be 1 or 2: '" + std::string(text) + "'");
    }
    if (text.find('.') != std::string_view::npos) {
        const std::string owned(text);
        char *end = nullptr;
        const double v = std::strtod(owned.c_str(), &end);
        const double t = 2.0 * v;
        if (end != owned.c_str() + owned.size() || t != static_cast<double>(static_cast<int>(t))) {
            throw DomainError("not a half-integer: '" + owned + "'");
        }
        return from_twice(static_cast<int>(t));
    }
    return from_twice(parse_int(text));
}

} // namespace pqfi
