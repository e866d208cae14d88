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
 * Characteristic postselection phases: Theta_T (maximum of I^T), Theta_perp
 * (maximum of I^perp) and Theta_par (minimum of Q^par). Closed forms are used
 * where they hold to optimizer precision, the numeric maximizer otherwise. All
 * returned angles lie in (-pi, pi]. The lambda argument of every function is
 * taken from params; params.theta is ignored.
 */

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "pqfi/channel.hpp"
#include "pqfi/errors.hpp"
#include "pqfi/meter.hpp"
#include "pqfi/optimize.hpp"

namespace pqfi {

enum class LandmarkMethod { analytic, numeric, convention, undefined };

inline std::string to_string(LandmarkMethod m) {
    switch (m) {
    case LandmarkMethod::analytic:
        return "analytic";
    case LandmarkMethod::numeric:
        return "numeric";
    case LandmarkMethod::convention:
        return "convention";
    case LandmarkMethod::undefined:
        break;
    }
    return "undefined";
}

struct Landmark {
    double theta = 0.0;
    LandmarkMethod method = LandmarkMethod::undefined;

    bool defined() const { return method != LandmarkMethod::undefined; }
};

struct ThetaLandmarks {
    Landmark total;
    Landmark perp;
    Landmark parallel;
    double pancharatnam = 0.0;
    bool pancharatnam_defined = false;
    double baseline = 0.0;          // (2j)^2
    double parallel_residual = 0.0; // Q^par at Theta_par
    bool degenerate = false;        // lambda = 0: every Theta is stationary
};

struct CoincidenceReport {
    double theta_t = 0.0;
    double theta_perp = 0.0;
    double theta_par = 0.0;
    double max_gap = 0.0;
};

/// Below this |n lambda| the arccos form of Theta_perp is within 2.1e-10 of the argmax.
inline constexpr double kQubitPerpClosedFormLimit = 2e-3;

namespace detail {

inline bool is_qubit_pancharatnam(const ChannelParams &p, const MeterSpec &spec) {
    return p.j.twice == 1 && p.is_extremal() && spec.law() == MeterLaw::pancharatnam &&
           spec.dimension() == 2;
}

inline double landmark_objective_guard(double v) {
    return std::isfinite(v) ? v : -std::numeric_limits<double>::infinity();
}

// Narrow features of the landscape sit near the dark band, Theta ~ n u_k lambda,
// and can fall between points of the global grid. A second search covers the
// band with the window padded by four band widths; the better value wins.
template <class F>
double maximize_with_band(F &&f, const ChannelParams &params, const MeterSpec &spec) {
    const MaximizeResult global = maximize(f);
    const auto [lo, hi] = std::minmax_element(spec.eigenvalues().begin(), spec.eigenvalues().end());
    const double scale = spec.copies() * params.lambda;
    const double a = std::min(scale * *lo, scale * *hi);
    const double b = std::max(scale * *lo, scale * *hi);
    const double pad = 4.0 * std::max(b - a, std::abs(scale));
    if (b - a + 2.0 * pad >= 2.0 * std::numbers::pi) {
        return global.x;
    }
    MaximizeOptions opt;
    opt.lo = a - pad;
    opt.hi = b + pad;
    opt.periodic = false;
    try {
        const MaximizeResult band = maximize(f, opt);
        if (band.value > global.value * (1.0 + opt.tie_rel) &&
            std::abs(wrap_angle(band.x - global.x)) > opt.zoom_width) {
            return band.x;
        }
    } catch (const DegenerateLandscape &) {
    }
    return global.x;
}

} // namespace detail

inline Landmark theta_total_max(const ChannelParams &params, const MeterSpec &spec) {
    params.validate();
    if (params.lambda == 0.0) {
        return {0.0, LandmarkMethod::convention};
    }
    const ComplexExpectation o = expect_O(spec, params.lambda);
    if (params.j.twice == 1 && params.is_extremal() && o.phase_defined) {
        return {wrap_angle(o.phase), LandmarkMethod::analytic};
    }
    ChannelParams p = params;
    auto f = [&](double theta) {
        p.theta = theta;
        const ChannelSums s = channel_sums(p, spec);
        if (!(s.p > kProbabilityFloor)) {
            return -std::numeric_limits<double>::infinity();
        }
        return detail::landmark_objective_guard(4.0 * s.q_total / s.p);
    };
    return {wrap_angle(detail::maximize_with_band(f, params, spec)), LandmarkMethod::numeric};
}

inline Landmark theta_perp_max(const ChannelParams &params, const MeterSpec &spec) {
    params.validate();
    if (params.lambda == 0.0) {
        return {0.0, LandmarkMethod::convention};
    }
    const int n = spec.copies();
    if (detail::is_qubit_pancharatnam(params, spec) &&
        std::abs(n * params.lambda) <= kQubitPerpClosedFormLimit) {
        return {qubit_theta_perp(n, params.lambda), LandmarkMethod::analytic};
    }
    ChannelParams p = params;
    auto f = [&](double theta) {
        p.theta = theta;
        const ChannelSums s = channel_sums(p, spec);
        if (!(s.p > kProbabilityFloor)) {
            return -std::numeric_limits<double>::infinity();
        }
        return detail::landmark_objective_guard(breakdown_from_sums(s, p.j, n).i_perp);
    };
    return {wrap_angle(detail::maximize_with_band(f, params, spec)), LandmarkMethod::numeric};
}

/// Theta minimizing Q^par. For spin 1/2 the minimum is an exact zero only when all
/// nonzero eigenvalues coincide (u = {0, 1} for instance); compute_landmarks
/// reports the residual.
/// Throws NoSuppression when Q^par does not depend on Theta.
inline Landmark theta_parallel_zero(const ChannelParams &params, const MeterSpec &spec) {
    params.validate();
    if (params.lambda == 0.0) {
        return {0.0, LandmarkMethod::convention};
    }
    const double n = spec.copies();
    if (params.j.twice == 1 && params.is_extremal()) {
        // Q^par is proportional to |sum_k u_k - exp(-i Theta) Z_u|^2.
        if (spec.law() == MeterLaw::pancharatnam) {
            return {wrap_angle(qudit_theta_parallel(spec.dimension(), spec.copies(), params.lambda)),
                    LandmarkMethod::analytic};
        }
        double sum_u = 0.0;
        double sum_abs = 0.0;
        Complex z{0.0, 0.0};
        for (double u : spec.eigenvalues()) {
            sum_u += u;
            sum_abs += std::abs(u);
            z += u * std::polar(1.0, n * u * params.lambda);
        }
        if (std::abs(sum_u) <= 1e-12 * sum_abs || std::abs(z) <= 1e-12 * sum_abs) {
            throw NoSuppression("parallel change is independent of Theta");
        }
        double theta = std::arg(z);
        if (sum_u < 0.0) {
            theta += std::numbers::pi;
        }
        return {wrap_angle(theta), LandmarkMethod::analytic};
    }
    ChannelParams p = params;
    auto f = [&](double theta) {
        p.theta = theta;
        return -std::abs(channel_sums(p, spec).overlap);
    };
    try {
        return {wrap_angle(detail::maximize_with_band(f, params, spec)), LandmarkMethod::numeric};
    } catch (const DegenerateLandscape &) {
        throw NoSuppression("parallel change is independent of Theta");
    }
}

inline ThetaLandmarks compute_landmarks(const ChannelParams &params, const MeterSpec &spec) {
    params.validate();
    ThetaLandmarks out;
    out.baseline = static_cast<double>(params.j.twice) * params.j.twice;
    const ComplexExpectation o = expect_O(spec, params.lambda);
    out.pancharatnam = o.phase;
    out.pancharatnam_defined = o.phase_defined;
    out.degenerate = params.lambda == 0.0;
    out.total = theta_total_max(params, spec);
    out.perp = theta_perp_max(params, spec);
    try {
        out.parallel = theta_parallel_zero(params, spec);
        ChannelParams p = params;
        p.theta = out.parallel.theta;
        out.parallel_residual = q_parallel(p, spec);
    } catch (const NoSuppression &) {
        out.parallel = {0.0, LandmarkMethod::undefined};
        out.parallel_residual = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

/// Landmarks side by side with the largest pairwise separation.
inline CoincidenceReport coincidence_check(const ChannelParams &params, const MeterSpec &spec) {
    CoincidenceReport r;
    r.theta_t = theta_total_max(params, spec).theta;
    r.theta_perp = theta_perp_max(params, spec).theta;
    r.theta_par = theta_parallel_zero(params, spec).theta;
    const double a = std::abs(wrap_angle(r.theta_t - r.theta_perp));
    const double b = std::abs(wrap_angle(r.theta_perp - r.theta_par));
    const double c = std::abs(wrap_angle(r.theta_t - r.theta_par));
    r.max_gap = std::max({a, b, c});
    return r;
}

} // namespace pqfi
