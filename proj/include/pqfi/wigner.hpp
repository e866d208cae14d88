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

/**
 * @file
 * Wigner small-d matrix elements d^{(j)}_{m',m}(beta) = <j,m'| exp(-i beta J_y) |j,m>
 * and their first derivative in beta.
 *
 * In this convention d^{(j)}_{-j,j}(beta) = sin^{2j}(beta/2), with a positive
 * sign for every j. Elements are evaluated from the finite factorial sum with
 * log-factorial coefficients; the terms are summed in descending magnitude.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "pqfi/errors.hpp"
#include "pqfi/halfint.hpp"

namespace pqfi {

/// Largest supported 2j.
inline constexpr int kMaxTwiceJ = 200;

namespace detail {

inline const std::array<double, 2 * kMaxTwiceJ + 1> &log_factorials() {
    static const auto table = [] {
        std::array<double, 2 * kMaxTwiceJ + 1> t{};
        t[0] = 0.0;
        for (std::size_t k = 1; k < t.size(); ++k) {
            t[k] = t[k - 1] + std::log(static_cast<double>(k));
        }
        return t;
    }();
    return table;
}

// x^p with 0^0 = 1.
inline double ipow(double x, int p) {
    if (p == 0) {
        return 1.0;
    }
    return std::pow(x, p);
}

inline double sum_by_magnitude(std::vector<double> &terms) {
    std::sort(terms.begin(), terms.end(),
              [](double a, double b) { return std::abs(a) > std::abs(b); });
    // Neumaier summation, largest terms first.
    double sum = 0.0;
    double comp = 0.0;
    for (double t : terms) {
        const double s = sum + t;
        if (std::abs(sum) >= std::abs(t)) {
            comp += (sum - s) + t;
        } else {
            comp += (t - s) + sum;
        }
        sum = s;
    }
    return sum + comp;
}

} // namespace detail

/**
 * One matrix element d^{(j)}_{m_f,m_i}(.) with its factorial-sum coefficients
 * precomputed, so repeated evaluation at many angles is cheap.
 */
class WignerElement {
  public:
    WignerElement(HalfInt j, HalfInt m_f, HalfInt m_i) : j_(j), m_f_(m_f), m_i_(m_i) {
        require_magnetic_pair(j, m_f);
        require_magnetic_pair(j, m_i);
        if (j.twice > kMaxTwiceJ) {
            throw DomainError("wigner_d supports 2j <= " + std::to_string(kMaxTwiceJ));
        }
        const auto &lf = detail::log_factorials();
        const int J = j.twice;
        const int jpmf = (J + m_f.twice) / 2;
        const int jmmf = (J - m_f.twice) / 2;
        const int jpmi = (J + m_i.twice) / 2;
        const int jmmi = (J - m_i.twice) / 2;
        const int diff = (m_f.twice - m_i.twice) / 2;
        const double norm = 0.5 * (lf[jpmf] + lf[jmmf] + lf[jpmi] + lf[jmmi]);
        const int s_lo = std::max(0, -diff);
        const int s_hi = std::min(jpmi, jmmf);
        for (int s = s_lo; s <= s_hi; ++s) {
            Term t;
            t.coefficient = std::exp(norm - lf[jpmi - s] - lf[s] - lf[diff + s] - lf[jmmf - s]);
            if ((diff + s) % 2 != 0) {
                t.coefficient = -t.coefficient;
            }
            t.cos_power = J - diff - 2 * s;
            t.sin_power = diff + 2 * s;
            terms_.push_back(t);
        }
    }

    HalfInt j() const { return j_; }
    HalfInt m_f() const { return m_f_; }
    HalfInt m_i() const { return m_i_; }

    double value(double beta) const {
        const double c = std::cos(0.5 * beta);
        const double s = std::sin(0.5 * beta);
        if (terms_.size() == 1) {
            const Term &t = terms_.front();
            return t.coefficient * detail::ipow(c, t.cos_power) * detail::ipow(s, t.sin_power);
        }
        std::vector<double> parts;
        parts.reserve(terms_.size());
        for (const Term &t : terms_) {
            parts.push_back(t.coefficient * detail::ipow(c, t.cos_power) *
                            detail::ipow(s, t.sin_power));
        }
        return detail::sum_by_magnitude(parts);
    }

    /// d/dbeta of value(), differentiated term by term:
    /// d[c^a s^b] = (1/2)(b c^{a+1} s^{b-1} - a c^{a-1} s^{b+1}).
    double derivative(double beta) const {
        const double c = std::cos(0.5 * beta);
        const double s = std::sin(0.5 * beta);
        std::vector<double> parts;
        parts.reserve(2 * terms_.size());
        for (const Term &t : terms_) {
            if (t.sin_power > 0) {
                parts.push_back(0.5 * t.coefficient * t.sin_power *
                                detail::ipow(c, t.cos_power + 1) *
                                detail::ipow(s, t.sin_power - 1));
            }
            if (t.cos_power > 0) {
                parts.push_back(-0.5 * t.coefficient * t.cos_power *
                                detail::ipow(c, t.cos_power - 1) *
                                detail::ipow(s, t.sin_power + 1));
            }
        }
        if (parts.size() == 1) {
            return parts.front();
        }
        return detail::sum_by_magnitude(parts);
    }

    std::size_t term_count() const { return terms_.size(); }

  private:
    struct Term {
        double coefficient = 0.0;
        int cos_power = 0;
        int sin_power = 0;
    };

    HalfInt j_;
    HalfInt m_f_;
    HalfInt m_i_;
    std::vector<Term> terms_;
};

inline double wigner_d(HalfInt j, HalfInt m_f, HalfInt m_i, double beta) {
    return WignerElement(j, m_f, m_i).value(beta);
}

inline double wigner_d_deriv(HalfInt j, HalfInt m_f, HalfInt m_i, double beta) {
    return WignerElement(j, m_f, m_i).derivative(beta);
}

} // namespace pqfi
