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
 * Deterministic 1-D maximizer for smooth landscapes: a uniform coarse grid,
 * nested zoom grids around every surviving local maximum, then golden-section
 * polishing. Points where the objective is not finite are excluded.
 */

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "pqfi/errors.hpp"

namespace pqfi {

struct MaximizeOptions {
    double lo = 0.0;
    double hi = 2.0 * std::numbers::pi;
    bool periodic = true;    // hi is identified with lo
    int coarse_points = 4096;
    int zoom_points = 65;
    int max_candidates = 8;  // local maxima kept per grid
    double zoom_width = 1e-7;
    double tolerance = 1e-12;
    double tie_rel = 1e-10;  // relative value gap treated as a tie
};

struct MaximizeResult {
    double x = 0.0;
    double value = 0.0;
    long evaluations = 0;
};

namespace detail {

struct Bracket {
    double a;
    double b;
    double best_x;
    double best_value;
};

template <class F>
double golden_section(F &f, double a, double b, double tol, long &evals) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c);
    double fd = f(d);
    evals += 2;
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
        ++evals;
        if (c >= d) {
            break;
        }
    }
    return 0.5 * (a + b);
}

// Indices of local maxima of a sampled curve, best first.
inline std::vector<std::size_t> local_maxima(const std::vector<double> &v, bool cyclic,
                                             int keep) {
    const std::size_t m = v.size();
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < m; ++i) {
        if (!std::isfinite(v[i])) {
            continue;
        }
        const bool has_left = cyclic || i > 0;
        const bool has_right = cyclic || i + 1 < m;
        const double left = has_left ? v[(i + m - 1) % m] : -std::numeric_limits<double>::infinity();
        const double right = has_right ? v[(i + 1) % m] : -std::numeric_limits<double>::infinity();
        const bool l_ok = !std::isfinite(left) || v[i] >= left;
        const bool r_ok = !std::isfinite(right) || v[i] >= right;
        // On a plateau only the first sample counts.
        const bool plateau_tail = std::isfinite(left) && v[i] == left;
        if (l_ok && r_ok && !plateau_tail) {
            idx.push_back(i);
        }
    }
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t p, std::size_t q) { return v[p] > v[q]; });
    if (idx.size() > static_cast<std::size_t>(keep)) {
        idx.resize(static_cast<std::size_t>(keep));
    }
    return idx;
}

} // namespace detail

/// Maximizes f over [lo, hi) (periodic) or [lo, hi]. Throws DegenerateLandscape when no sample is finite
/// or the sampled landscape is flat. Among maxima whose values agree within
/// tie_rel, the one with the smallest position in [lo, hi) wins.
template <class F>
MaximizeResult maximize(F &&f, const MaximizeOptions &opt = {}) {
    const double span = opt.hi - opt.lo;
    const int m = std::max(opt.coarse_points, 3);
    const double step = opt.periodic ? span / m : span / (m - 1);
    long evals = 0;

    std::vector<double> coarse(static_cast<std::size_t>(m));
    double vmin = std::numeric_limits<double>::infinity();
    double vmax = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
        const double v = f(opt.lo + i * step);
        coarse[static_cast<std::size_t>(i)] = std::isfinite(v) ? v : -std::numeric_limits<double>::infinity();
        if (std::isfinite(v)) {
            vmin = std::min(vmin, v);
            vmax = std::max(vmax, v);
        }
    }
    evals += m;
    if (!std::isfinite(vmax)) {
        throw DegenerateLandscape("objective is not finite anywhere on the grid");
    }
    if (vmax - vmin <= 1e-14 * std::max(std::abs(vmax), std::abs(vmin)) || vmax == vmin) {
        throw DegenerateLandscape("objective is flat on the grid");
    }

    auto clamp = [&](double x) { return opt.periodic ? x : std::clamp(x, opt.lo, opt.hi); };
    std::vector<detail::Bracket> work;
    for (std::size_t i : detail::local_maxima(coarse, opt.periodic, opt.max_candidates)) {
        const double x = opt.lo + static_cast<double>(i) * step;
        work.push_back({clamp(x - step), clamp(x + step), x, coarse[i]});
    }

    std::vector<MaximizeResult> finals;
    std::vector<double> zoom(static_cast<std::size_t>(opt.zoom_points));
    int budget = 64 * opt.max_candidates;
    while (!work.empty() && budget-- > 0) {
        const detail::Bracket br = work.back();
        work.pop_back();
        if (br.b - br.a <= opt.zoom_width) {
            const double x = detail::golden_section(f, br.a, br.b, opt.tolerance, evals);
            double v = f(x);
            ++evals;
            MaximizeResult r{x, v, 0};
            if (!(v >= br.best_value)) {
                r = {br.best_x, br.best_value, 0};
            }
            finals.push_back(r);
            continue;
        }
        const double h = (br.b - br.a) / (opt.zoom_points - 1);
        for (int i = 0; i < opt.zoom_points; ++i) {
            const double v = f(br.a + i * h);
            zoom[static_cast<std::size_t>(i)] = std::isfinite(v) ? v : -std::numeric_limits<double>::infinity();
        }
        evals += opt.zoom_points;
        const auto peaks = detail::local_maxima(zoom, false, 4);
        if (peaks.empty()) {
            finals.push_back({br.best_x, br.best_value, 0});
            continue;
        }
        // Push in reverse so the best peak is refined first.
        for (auto it = peaks.rbegin(); it != peaks.rend(); ++it) {
            const double x = br.a + static_cast<double>(*it) * h;
            work.push_back({clamp(x - h), clamp(x + h), x, zoom[*it]});
        }
    }
    if (finals.empty()) {
        throw DegenerateLandscape("optimizer found no maximum");
    }

    // Ordering key for ties: position in [lo, hi), except that a maximum sitting
    // within zoom_width below the seam counts as lying just below lo.
    auto canonical = [&](double x) {
        if (!opt.periodic) {
            return x;
        }
        double r = std::fmod(x - opt.lo, span);
        if (r < 0.0) {
            r += span;
        }
        if (span - r < opt.zoom_width) {
            r -= span;
        }
        return opt.lo + r;
    };
    MaximizeResult best = finals.front();
    best.x = canonical(best.x);
    for (const auto &r : finals) {
        const double x = canonical(r.x);
        const double scale = std::max(std::abs(r.value), std::abs(best.value));
        const bool tie = std::abs(r.value - best.value) <= opt.tie_rel * scale;
        if ((tie && x < best.x) || (!tie && r.value > best.value)) {
            best = {x, r.value, 0};
        }
    }
    best.evaluations = evals;
    return best;
}

/// Wraps an angle to (-pi, pi].
inline double wrap_angle(double x) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::remainder(x, two_pi);
    if (r <= -std::numbers::pi) {
        r += two_pi;
    }
    return r;
}

} // namespace pqfi
