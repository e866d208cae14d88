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
 * Parameter sweeps over (j, lambda, Theta), deterministic CSV output, JSON run
 * manifests and the six figure presets.
 *
 * CSV layout: header `law,d,n,j,lambda,theta,<quantities...>`, one row per grid
 * point, rows ordered by series, then j, then lambda index, then Theta index.
 * Doubles use 17 significant digits; lines end in LF. Points whose
 * postselection probability is at the floor carry the token NA in every
 * quantity column, as do non-finite values.
 */

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "pqfi/channel.hpp"
#include "pqfi/errors.hpp"
#include "pqfi/landmarks.hpp"
#include "pqfi/meter.hpp"
#include "pqfi/tolerances.hpp"

namespace pqfi {

inline constexpr std::string_view kVersion = "1.0.0";
inline constexpr long long kMaxSweepPoints = 10'000'000;

enum class Quantity { P, QT, Qpar, IT, Ipar, Iperp, T, SNR, dlambda, IT_n2, Ipar_n2, Iperp_n2, T_n2 };

inline constexpr std::pair<Quantity, std::string_view> kQuantityNames[] = {
    {Quantity::P, "P"},           {Quantity::QT, "QT"},
    {Quantity::Qpar, "Qpar"},     {Quantity::IT, "IT"},
    {Quantity::Ipar, "Ipar"},     {Quantity::Iperp, "Iperp"},
    {Quantity::T, "T"},           {Quantity::SNR, "SNR"},
    {Quantity::dlambda, "dlambda"}, {Quantity::IT_n2, "IT_n2"},
    {Quantity::Ipar_n2, "Ipar_n2"}, {Quantity::Iperp_n2, "Iperp_n2"},
    {Quantity::T_n2, "T_n2"},
};

inline std::string_view to_string(Quantity q) {
    for (const auto &[k, name] : kQuantityNames) {
        if (k == q) {
            return name;
        }
    }
    return "?";
}

inline Quantity parse_quantity(std::string_view s) {
    for (const auto &[k, name] : kQuantityNames) {
        if (name == s) {
            return k;
        }
    }
    throw DomainError("unknown quantity: " + std::string(s));
}

enum class GridScale { linear, log };

struct Grid {
    double min = 0.0;
    double max = 0.0;
    int count = 1;
    GridScale scale = GridScale::linear;
    bool endpoint = true; // false: [min, max) with the last point dropped

    double at(int i) const {
        if (count == 1) {
            return min;
        }
        const int div = endpoint ? count - 1 : count;
        const double t = static_cast<double>(i) / div;
        if (scale == GridScale::log) {
            return std::exp(std::log(min) + t * (std::log(max) - std::log(min)));
        }
        return min + t * (max - min);
    }

    void validate(std::string_view what) const {
        if (count < 1) {
            throw DomainError(std::string(what) + " grid is empty");
        }
        if (!std::isfinite(min) || !std::isfinite(max)) {
            throw DomainError(std::string(what) + " grid bounds must be finite");
        }
        if (scale == GridScale::log && !(min > 0.0 && max > 0.0)) {
            throw DomainError(std::string(what) + " log grid needs positive bounds");
        }
    }
};

struct SweepConfig {
    std::vector<HalfInt> j_list{HalfInt{1}};
    MeterSpec spec = MeterSpec::pancharatnam(2);
    Grid lambda{1e-3, 1e-3, 1};
    Grid theta{0.0, 2.0 * std::numbers::pi, 256, GridScale::linear, false};
    std::vector<Quantity> outputs{Quantity::P, Quantity::IT, Quantity::Ipar, Quantity::Iperp,
                                  Quantity::T};
    long long trials = 1;

    long long point_count() const {
        return static_cast<long long>(j_list.size()) * lambda.count * theta.count;
    }

    void validate() const {
        if (j_list.empty()) {
            throw DomainError("j list is empty");
        }
        for (HalfInt j : j_list) {
            if (j.twice < 1 || j.twice > kMaxTwiceJ) {
                throw DomainError("j out of range: " + j.str());
            }
        }
        lambda.validate("lambda");
        theta.validate("theta");
        if (theta.scale == GridScale::log) {
            throw DomainError("theta grid must be linear");
        }
        if (outputs.empty()) {
            throw DomainError("no output quantities");
        }
        if (trials < 1) {
            throw DomainError("trial count must be >= 1");
        }
        if (point_count() > kMaxSweepPoints) {
            throw DomainError("sweep exceeds 1e7 points");
        }
    }
};

inline std::string format_double(double v) {
    if (!std::isfinite(v)) {
        return "NA";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

inline double quantity_value(Quantity q, const QfiBreakdown &b, double lambda, long long trials) {
    const double n2 = b.n_squared();
    switch (q) {
    case Quantity::P:
        return b.p;
    case Quantity::QT:
        return b.q_total;
    case Quantity::Qpar:
        return b.q_parallel;
    case Quantity::IT:
        return b.i_total;
    case Quantity::Ipar:
        return b.i_parallel;
    case Quantity::Iperp:
        return b.i_perp;
    case Quantity::T:
        return b.t_per_trial;
    case Quantity::SNR:
        return lambda * std::sqrt(b.i_perp);
    case Quantity::dlambda:
        return 1.0 / std::sqrt(static_cast<double>(trials) * b.i_perp);
    case Quantity::IT_n2:
        return b.i_total / n2;
    case Quantity::Ipar_n2:
        return b.i_parallel / n2;
    case Quantity::Iperp_n2:
        return b.i_perp / n2;
    case Quantity::T_n2:
        return b.t_per_trial / n2;
    }
    return 0.0;
}

/// Worker count: hardware concurrency, capped by PQFI_THREADS when set.
inline unsigned worker_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char *env = std::getenv("PQFI_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) {
            n = std::min(n, static_cast<unsigned>(cap));
        }
    }
    return n;
}

/// Runs body(i) for i in [0, count) on up to `threads` workers.
template <class Body>
void parallel_for(long long count, unsigned threads, Body &&body) {
    constexpr long long chunk = 256;
    threads = static_cast<unsigned>(std::min<long long>(threads, (count + chunk - 1) / chunk));
    if (threads <= 1) {
        for (long long i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::atomic<long long> next{0};
    auto worker = [&] {
        for (;;) {
            const long long start = next.fetch_add(chunk);
            if (start >= count) {
                return;
            }
            const long long stop = std::min(count, start + chunk);
            for (long long i = start; i < stop; ++i) {
                body(i);
            }
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back(worker);
    }
}

struct SweepResult {
    std::vector<Quantity> columns;
    std::vector<std::string> rows; // formatted, without trailing newline
    long long na_rows = 0;
};

inline std::string csv_header(const std::vector<Quantity> &columns) {
    std::string h = "law,d,n,j,lambda,theta";
    for (Quantity q : columns) {
        h += ',';
        h += to_string(q);
    }
    return h;
}

/// Evaluates every series; all series must request the same columns.
inline SweepResult run_sweep(const std::vector<SweepConfig> &series, unsigned threads = 0) {
    if (series.empty()) {
        throw DomainError("no sweep series");
    }
    long long total = 0;
    for (const auto &cfg : series) {
        cfg.validate();
        if (cfg.outputs != series.front().outputs) {
            throw DomainError("series disagree on output columns");
        }
        total += cfg.point_count();
    }
    if (total > kMaxSweepPoints) {
        throw DomainError("sweep exceeds 1e7 points");
    }
    if (threads == 0) {
        threads = worker_count();
    }

    SweepResult out;
    out.columns = series.front().outputs;
    out.rows.resize(static_cast<std::size_t>(total));
    std::vector<char> na(static_cast<std::size_t>(total), 0);

    std::vector<long long> offsets;
    long long acc = 0;
    for (const auto &cfg : series) {
        offsets.push_back(acc);
        acc += cfg.point_count();
    }

    parallel_for(total, threads, [&](long long idx) {
        const auto s = static_cast<std::size_t>(
            std::upper_bound(offsets.begin(), offsets.end(), idx) - offsets.begin() - 1);
        const SweepConfig &cfg = series[s];
        long long local = idx - offsets[s];
        const int ti = static_cast<int>(local % cfg.theta.count);
        local /= cfg.theta.count;
        const int li = static_cast<int>(local % cfg.lambda.count);
        const auto ji = static_cast<std::size_t>(local / cfg.lambda.count);

        const HalfInt j = cfg.j_list[ji];
        const double lambda = cfg.lambda.at(li);
        const double theta = cfg.theta.at(ti);
        std::string row = to_string(cfg.spec.law());
        row += ',' + std::to_string(cfg.spec.dimension());
        row += ',' + std::to_string(cfg.spec.copies());
        row += ',' + j.str();
        row += ',' + format_double(lambda);
        row += ',' + format_double(theta);
        const ChannelParams params = ChannelParams::extremal(j, lambda, theta);
        const ChannelSums sums = channel_sums(params, cfg.spec);
        if (sums.p > kProbabilityFloor) {
            const QfiBreakdown b = breakdown_from_sums(sums, j, cfg.spec.copies());
            for (Quantity q : cfg.outputs) {
                row += ',' + format_double(quantity_value(q, b, lambda, cfg.trials));
            }
        } else {
            for (std::size_t q = 0; q < cfg.outputs.size(); ++q) {
                row += ",NA";
            }
            na[static_cast<std::size_t>(idx)] = 1;
        }
        out.rows[static_cast<std::size_t>(idx)] = std::move(row);
    });
    out.na_rows = std::count(na.begin(), na.end(), 1);
    return out;
}

inline void write_csv(std::ostream &os, const SweepResult &r) {
    os << csv_header(r.columns) << '\n';
    for (const auto &row : r.rows) {
        os << row << '\n';
    }
}

// ---------------------------------------------------------------------------
// Manifest

inline nlohmann::json grid_json(const Grid &g) {
    return {{"min", g.min},
            {"max", g.max},
            {"count", g.count},
            {"scale", g.scale == GridScale::log ? "log" : "linear"},
            {"endpoint", g.endpoint}};
}

inline nlohmann::json landmark_json(const Landmark &l) {
    if (!l.defined()) {
        return nullptr;
    }
    return {{"theta", l.theta}, {"method", to_string(l.method)}};
}

inline nlohmann::json landmarks_json(const ThetaLandmarks &lm) {
    nlohmann::json j = {{"theta_t", landmark_json(lm.total)},
                        {"theta_perp", landmark_json(lm.perp)},
                        {"theta_par", landmark_json(lm.parallel)},
                        {"baseline", lm.baseline},
                        {"degenerate", lm.degenerate}};
    j["pancharatnam"] = lm.pancharatnam_defined ? nlohmann::json(lm.pancharatnam) : nlohmann::json(nullptr);
    j["parallel_residual"] = std::isfinite(lm.parallel_residual) ? nlohmann::json(lm.parallel_residual)
                                                                 : nlohmann::json(nullptr);
    return j;
}

inline nlohmann::json tolerances_json() {
    return {{"probability_floor", kProbabilityFloor},
            {"phase_floor", kPhaseFloor},
            {"optimizer_coarse_points", MaximizeOptions{}.coarse_points},
            {"optimizer_tolerance", MaximizeOptions{}.tolerance},
            {"oracle_qfi_rel", OracleTolerances::qfi_rel},
            {"oracle_qfi_abs", OracleTolerances::qfi_abs},
            {"oracle_probability_abs", OracleTolerances::prob_abs}};
}

/// Manifest for one CSV. Landmarks are attached to series with a single lambda.
inline nlohmann::json make_manifest(const std::vector<SweepConfig> &series, const SweepResult &r,
                                    std::string_view csv_name, std::optional<int> figure) {
    nlohmann::json m;
    m["tool"] = "pqfi";
    m["version"] = std::string(kVersion);
    m["preset"] = figure ? nlohmann::json("fig" + std::to_string(*figure)) : nlohmann::json(nullptr);
    m["figure"] = figure ? nlohmann::json(*figure) : nlohmann::json(nullptr);
    m["csv"] = std::string(csv_name);
    nlohmann::json cols = nlohmann::json::array({"law", "d", "n", "j", "lambda", "theta"});
    for (Quantity q : r.columns) {
        cols.push_back(std::string(to_string(q)));
    }
    m["columns"] = cols;
    m["rows"] = r.rows.size();
    m["na_rows"] = r.na_rows;
    m["tolerances"] = tolerances_json();
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &cfg : series) {
        nlohmann::json s;
        s["law"] = to_string(cfg.spec.law());
        s["d"] = cfg.spec.dimension();
        s["n"] = cfg.spec.copies();
        s["epsilon"] = cfg.spec.law() == MeterLaw::fractional ? nlohmann::json(cfg.spec.epsilon())
                                                              : nlohmann::json(nullptr);
        if (cfg.spec.law() == MeterLaw::explicit_list) {
            s["u"] = std::vector<double>(cfg.spec.eigenvalues().begin(), cfg.spec.eigenvalues().end());
        }
        nlohmann::json js = nlohmann::json::array();
        for (HalfInt j : cfg.j_list) {
            js.push_back(j.str());
        }
        s["j"] = js;
        s["lambda"] = grid_json(cfg.lambda);
        s["theta"] = grid_json(cfg.theta);
        s["trials"] = cfg.trials;
        if (cfg.lambda.count == 1) {
            nlohmann::json lms = nlohmann::json::object();
            for (HalfInt j : cfg.j_list) {
                try {
                    lms[j.str()] = landmarks_json(
                        compute_landmarks(ChannelParams::extremal(j, cfg.lambda.min, 0.0), cfg.spec));
                } catch (const std::runtime_error &) {
                    lms[j.str()] = nullptr;
                }
            }
            s["landmarks"] = lms;
        }
        arr.push_back(s);
    }
    m["series"] = arr;
    return m;
}

// ---------------------------------------------------------------------------
// Figure presets

struct FigurePreset {
    int id = 0;
    std::string title;
    std::vector<SweepConfig> series;
};

inline FigurePreset figure_preset(int id) {
    using Q = Quantity;
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const HalfInt half{1};
    FigurePreset f;
    f.id = id;
    auto line = [](double lo, double hi, int count) { return Grid{lo, hi, count, GridScale::linear, true}; };
    const Grid weak{1e-3, 1e-3, 1};
    switch (id) {
    case 1: {
        f.title = "per-trial QFI over (lambda, Theta), d = 30";
        for (const MeterSpec &spec : {MeterSpec::pancharatnam(30), MeterSpec::symmetric(30)}) {
            SweepConfig c;
            c.j_list = {HalfInt{1}, HalfInt{2}, HalfInt{3}};
            c.spec = spec;
            c.lambda = Grid{1e-3, 1.0, 256, GridScale::log, true};
            c.theta = Grid{0.0, two_pi, 256, GridScale::linear, false};
            c.outputs = {Q::P, Q::Iperp_n2, Q::T_n2};
            f.series.push_back(c);
        }
        break;
    }
    case 2: {
        f.title = "probability decay and QFI growth with j, d = 2";
        SweepConfig c;
        c.j_list = {HalfInt{1}, HalfInt{2}, HalfInt{3}, HalfInt{4}};
        c.spec = MeterSpec::pancharatnam(2);
        c.lambda = weak;
        c.theta = line(-0.01, 0.01, 2001);
        c.outputs = {Q::P, Q::Iperp_n2, Q::T_n2};
        f.series.push_back(c);
        break;
    }
    case 3: {
        f.title = "QFI components against Theta, d = 2";
        for (const MeterSpec &spec : {MeterSpec::pancharatnam(2), MeterSpec::symmetric(2)}) {
            SweepConfig c;
            c.j_list = {half};
            c.spec = spec;
            c.lambda = weak;
            c.theta = line(-3e-3, 3e-3, 2001);
            c.outputs = {Q::P, Q::IT_n2, Q::Ipar_n2, Q::Iperp_n2};
            f.series.push_back(c);
        }
        break;
    }
    case 4: {
        f.title = "QFI components against Theta for several d";
        for (int d : {2, 5, 10, 30}) {
            for (const MeterSpec &spec : {MeterSpec::pancharatnam(d), MeterSpec::symmetric(d)}) {
                SweepConfig c;
                c.j_list = {half};
                c.spec = spec;
                c.lambda = weak;
                c.theta = line(-0.03, 0.05, 2001);
                c.outputs = {Q::P, Q::IT_n2, Q::Ipar_n2, Q::Iperp_n2};
                f.series.push_back(c);
            }
        }
        break;
    }
    case 5: {
        f.title = "per-trial QFI, uncertainty and SNR, d = 30";
        for (const MeterSpec &spec : {MeterSpec::pancharatnam(30), MeterSpec::symmetric(30)}) {
            SweepConfig c;
            c.j_list = {half};
            c.spec = spec;
            c.lambda = weak;
            c.theta = line(-0.01, 0.05, 2001);
            c.outputs = {Q::P, Q::T_n2, Q::dlambda, Q::SNR};
            f.series.push_back(c);
        }
        break;
    }
    case 6: {
        f.title = "fractional meter, d = 1e4, eps = 1e-4";
        SweepConfig c;
        c.j_list = {half};
        c.spec = MeterSpec::fractional(10000, 1, 1e-4);
        c.lambda = weak;
        c.theta = line(1e-3 - 2e-3, 1e-3 + 2e-3, 2001);
        c.outputs = {Q::P, Q::IT_n2, Q::Ipar_n2, Q::Iperp_n2};
        f.series.push_back(c);
        break;
    }
    default:
        throw DomainError("figure id must be 1..6");
    }
    return f;
}

} // namespace pqfi
