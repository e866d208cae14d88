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

// Acceptance gate. Prints one PASS/FAIL line per criterion; exits 0 only when
// every selected criterion passes.
//
//   acceptance                 run all ten
//   acceptance --criterion N   run criterion N only

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pqfi/pqfi.hpp"

namespace {

using namespace pqfi;
using Clock = std::chrono::steady_clock;
namespace fs = std::filesystem;

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

double peak_i_perp(HalfInt j, const MeterSpec &spec, double lambda) {
    const ChannelParams p = ChannelParams::extremal(j, lambda, 0.0);
    ChannelParams at = p;
    at.theta = theta_perp_max(p, spec).theta;
    return qfi_breakdown(at, spec).i_perp;
}

// 1: qubit landmarks against their closed forms, and the dark parallel channel.
Outcome qubit_closed_forms() {
    const auto t0 = Clock::now();
    const double lambda = 1e-3;
    const auto spec = MeterSpec::pancharatnam(2);
    const ChannelParams p = ChannelParams::extremal(HalfInt{1}, lambda, 0.0);
    const ThetaLandmarks lm = compute_landmarks(p, spec);
    const double perp_ref = std::acos(std::pow(std::cos(5e-4), 2));
    const double e_t = std::abs(lm.total.theta - 5e-4);
    const double e_perp = std::abs(lm.perp.theta - perp_ref);
    const double e_par = lm.parallel.defined() ? std::abs(lm.parallel.theta - 1e-3) : std::numeric_limits<double>::infinity();
    ChannelParams at = p;
    at.theta = lm.parallel.theta;
    const double i_par = qfi_breakdown(at, spec).i_parallel;
    const double dt = seconds_since(t0);
    Outcome o;
    o.pass = e_t <= 1e-12 && e_perp <= 1e-12 && e_par <= 1e-12 && i_par <= 1e-18 && dt < 1.0;
    o.detail = "|dTheta_T|=" + num(e_t) + " |dTheta_perp|=" + num(e_perp) + " |dTheta_par|=" + num(e_par) +
               " (tol 1e-12); I_par(Theta_par)=" + num(i_par) + " (<= 1e-18); " + num(dt) + " s (< 1 s)";
    return o;
}

// 2: peak orthogonal QFI of the qubit meter and the implied SNR bound.
Outcome asymptotic_qfi() {
    const auto t0 = Clock::now();
    const double lambda = 1e-3;
    const double peak = peak_i_perp(HalfInt{1}, MeterSpec::pancharatnam(2), lambda);
    const double ref = (1 + kSqrt2) * (1 + kSqrt2) / (lambda * lambda);
    const double snr = lambda * std::sqrt(peak);
    const double dt = seconds_since(t0);
    const double e1 = rel_err(peak, ref);
    const double e2 = rel_err(snr, 2.414);
    Outcome o;
    o.pass = e1 <= 1e-3 && e2 <= 1e-3 && dt < 1.0;
    o.detail = "max I_perp lambda^2=" + num(peak * lambda * lambda) + " vs (1+sqrt2)^2=" +
               num((1 + kSqrt2) * (1 + kSqrt2)) + " rel " + num(e1) + "; SNR=" + num(snr) + " vs 2.414 rel " +
               num(e2) + " (tol 1e-3); " + num(dt) + " s (< 1 s)";
    return o;
}

// 3: symmetric-law peak as one sixth of the pancharatnam-law peak.
Outcome reduction_ratio() {
    const auto t0 = Clock::now();
    const double lambda = 1e-3;
    const double pan = peak_i_perp(HalfInt{1}, MeterSpec::pancharatnam(2), lambda);
    const double sym = peak_i_perp(HalfInt{1}, MeterSpec::symmetric(2), lambda);
    const double ratio = sym / pan;
    const double e = rel_err(ratio, 1.0 / 6.0);
    const double dt = seconds_since(t0);
    Outcome o;
    o.pass = e <= 5e-3 && dt < 1.0;
    o.detail = "ratio=" + num(ratio) + " (reduction " + num(100 * (1 - ratio)) + "%) vs 1/6 rel " + num(e) +
               " (tol 5e-3); 1/(3+2 sqrt2)=" + num(1 / (3 + 2 * kSqrt2)) + "; " + num(dt) + " s (< 1 s)";
    return o;
}

// 4: analytic channel against the dense finite-difference oracle.
Outcome oracle_equivalence() {
    const auto t0 = Clock::now();
    const OracleMatrixReport rep = run_oracle_matrix({});
    OracleMatrixConfig wrong;
    wrong.q_scale = 4.0;
    const bool control_fails = !run_oracle_matrix(wrong).passed();
    const double dt = seconds_since(t0);
    Outcome o;
    o.pass = rep.passed() && rep.points + rep.skipped == 200 && control_fails && dt < 60.0;
    o.detail = std::to_string(rep.points) + " points, " + std::to_string(rep.skipped) +
               " skipped; worst I_perp rel " + num(rep.worst_qfi_rel) + " (tol 1e-6 rel / 1e-8 abs); worst |P - ||Phi||^2| " +
               num(rep.worst_prob_abs) + " (tol 1e-10); fourfold prefactor rejected: " +
               (control_fails ? "yes" : "no") + "; " + num(dt) + " s (< 60 s)";
    if (!rep.failures.empty()) {
        o.detail += "; first failure: " + rep.failures.front();
    }
    return o;
}

// 5: probability decay P_j = P_{1/2}^{2j} and linear growth of the peak QFI in j.
Outcome decay_and_growth() {
    const double lambda = 1e-3;
    const auto spec = MeterSpec::pancharatnam(2);
    const std::vector<HalfInt> js{HalfInt{1}, HalfInt{2}, HalfInt{3}, HalfInt{4}};
    double worst_decay = 0.0;
    for (int i = 0; i <= 1000; ++i) {
        const double theta = 0.1 + (2 * kPi - 0.2) * i / 1000.0;
        const double p_half = postselection_probability(ChannelParams::extremal(HalfInt{1}, lambda, theta), spec);
        for (HalfInt j : js) {
            const double pj = postselection_probability(ChannelParams::extremal(j, lambda, theta), spec);
            worst_decay = std::max(worst_decay, rel_err(pj, std::pow(p_half, j.twice)));
        }
    }
    std::vector<double> peaks;
    double worst_growth = 0.0;
    for (HalfInt j : js) {
        peaks.push_back(peak_i_perp(j, spec, lambda));
        worst_growth = std::max(worst_growth, rel_err(peaks.back() / peaks.front(), static_cast<double>(j.twice)));
    }
    const bool decay_ok = worst_decay <= 1e-2;
    const bool growth_ok = worst_growth <= 5e-2;
    Outcome o;
    o.pass = decay_ok && growth_ok;
    std::string ratios;
    for (double p : peaks) {
        ratios += (ratios.empty() ? "" : ", ") + num(p / peaks.front());
    }
    o.detail = std::string("decay ") + (decay_ok ? "ok" : "off") + ": worst rel " + num(worst_decay) +
               " on Theta in [0.1, 2pi-0.1] (tol 1e-2); growth " + (growth_ok ? "ok" : "off") +
               ": peak ratios for 2j = 1..4 are " + ratios + " vs 1, 2, 3, 4, worst rel " + num(worst_growth) +
               " (tol 5e-2)";
    return o;
}

// 6: fractional meter landmarks coincide and the parallel QFI vanishes at Theta_T.
Outcome fractional_coincidence() {
    const auto t0 = Clock::now();
    const double lambda = 1e-3;
    const auto spec = MeterSpec::fractional(10000, 1, 1e-4);
    const ChannelParams p = ChannelParams::extremal(HalfInt{1}, lambda, 0.0);
    const CoincidenceReport c = coincidence_check(p, spec);
    auto i_par = [&](double theta) {
        ChannelParams at = p;
        at.theta = theta;
        try {
            return qfi_breakdown(at, spec).i_parallel;
        } catch (const VanishingPostselection &) {
            return -std::numeric_limits<double>::infinity();
        }
    };
    MaximizeOptions opt;
    opt.lo = c.theta_t - 1e-2;
    opt.hi = c.theta_t + 1e-2;
    opt.periodic = false;
    const double peak = maximize(i_par, opt).value;
    const double ratio = i_par(c.theta_t) / peak;
    const double dt = seconds_since(t0);
    Outcome o;
    o.pass = c.max_gap <= 0.02 * lambda && ratio < 1e-3 && dt < 30.0;
    o.detail = "Theta_T=" + num(c.theta_t) + " Theta_perp=" + num(c.theta_perp) + " Theta_par=" + num(c.theta_par) +
               " max gap/lambda=" + num(c.max_gap / lambda) + " (<= 0.02); I_par(Theta_T)/peak=" + num(ratio) +
               " (< 1e-3); " + num(dt) + " s (< 30 s)";
    return o;
}

// 7: growth of the pancharatnam peak with d against a flat symmetric peak.
Outcome d_scaling() {
    const double lambda = 1e-3;
    std::vector<double> pan;
    std::vector<double> sym;
    for (int d : {2, 5, 10, 30}) {
        pan.push_back(peak_i_perp(HalfInt{1}, MeterSpec::pancharatnam(d), lambda));
        sym.push_back(peak_i_perp(HalfInt{1}, MeterSpec::symmetric(d), lambda));
    }
    const bool increasing = std::is_sorted(pan.begin(), pan.end(), std::less_equal<>{}) &&
                            std::adjacent_find(pan.begin(), pan.end()) == pan.end();
    const auto [lo, hi] = std::minmax_element(sym.begin(), sym.end());
    const double spread = (*hi - *lo) / *lo;
    Outcome o;
    o.pass = increasing && spread < 0.1;
    std::string ps;
    for (double v : pan) {
        ps += (ps.empty() ? "" : ", ") + num(v * lambda * lambda);
    }
    o.detail = "pancharatnam peak lambda^2 over d = 2, 5, 10, 30: " + ps + (increasing ? " (increasing)" : " (NOT increasing)") +
               "; symmetric spread " + num(spread) + " (< 0.1)";
    return o;
}

// 8: per-trial QFI is larger at Theta_par than at Theta_perp and beats the baseline.
Outcome t_optimum() {
    const double lambda = 1e-3;
    const auto spec = MeterSpec::pancharatnam(30);
    const ChannelParams p = ChannelParams::extremal(HalfInt{1}, lambda, 0.0);
    const ThetaLandmarks lm = compute_landmarks(p, spec);
    auto t_at = [&](double theta) {
        ChannelParams at = p;
        at.theta = theta;
        return qfi_breakdown(at, spec).t_per_trial;
    };
    const double t_par = t_at(lm.parallel.theta);
    const double t_perp = t_at(lm.perp.theta);
    Outcome o;
    o.pass = lm.parallel.defined() && t_par > t_perp && t_par > lm.baseline;
    o.detail = "T(Theta_par)=" + num(t_par) + " at " + num(lm.parallel.theta) + ", T(Theta_perp)=" + num(t_perp) +
               " at " + num(lm.perp.theta) + ", baseline (2j)^2=" + num(lm.baseline);
    return o;
}

// 9: gauge invariance, noncyclic phase decomposition and parallel transport.
Outcome gauge_and_phase_suite() {
    std::mt19937_64 rng(2026);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    double worst_gauge = 0.0;
    for (int i = 0; i < 40; ++i) {
        const HalfInt j{1 + i % 4};
        const MeterSpec spec = i % 3 == 0   ? MeterSpec::pancharatnam(2 + i % 7, 1 + i % 3)
                               : i % 3 == 1 ? MeterSpec::symmetric(2 + i % 7, 1 + i % 3)
                                            : MeterSpec::fractional(2 + i % 7, 1 + i % 3, 0.5);
        const ChannelParams p = ChannelParams::extremal(j, 1e-3 + 0.5 * unit(rng), 2 * kPi * unit(rng));
        std::vector<double> g(1 + i % 4);
        for (double &c : g) {
            c = coef(rng);
        }
        const double ref = qfi_finite_difference(p, spec).i_perp;
        worst_gauge = std::max(worst_gauge, gauge_invariance_check(p, spec, g) / ref);
    }

    const auto frac = MeterSpec::fractional(6, 1, 0.5);
    double worst_scaled = 0.0;
    bool shrinking = true;
    double prev = std::numeric_limits<double>::infinity();
    for (int steps : {16, 32, 64, 128, 256}) {
        const auto r = noncyclic_geometric_phase(frac, 0.0, 0.5, steps);
        const double err = std::abs(r.geometric_discrete - r.geometric);
        worst_scaled = std::max(worst_scaled, err * steps);
        shrinking = shrinking && err < prev;
        prev = err;
    }

    double worst_sym = 0.0;
    double worst_pan = 0.0;
    for (int d = 2; d <= 8; ++d) {
        worst_sym = std::max(worst_sym, parallel_transport_residual(MeterSpec::symmetric(d), 0.3));
        worst_pan = std::max(worst_pan, std::abs(parallel_transport_residual(MeterSpec::pancharatnam(d), 0.3) - 0.5 * (d - 1)));
    }
    Outcome o;
    o.pass = worst_gauge < 1e-6 && shrinking && worst_scaled <= 1.0 && worst_sym < 1e-9 && worst_pan < 1e-8;
    o.detail = "gauge worst rel " + num(worst_gauge) + " (< 1e-6); noncyclic max steps*|err| " + num(worst_scaled) +
               (shrinking ? " shrinking" : " NOT shrinking") + "; transport residual symmetric " + num(worst_sym) +
               ", pancharatnam minus (d-1)/2 " + num(worst_pan);
    return o;
}

// 10: figure presets through the CLI, twice, byte for byte.
std::string slurp(const fs::path &p) {
    std::ifstream is(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(is), {}};
}

Outcome figure_regression() {
    const auto t0 = Clock::now();
    const fs::path root = fs::temp_directory_path() / "pqfi_acceptance_figures";
    fs::remove_all(root);
    Outcome o;
    o.pass = true;
    std::string bad;
    for (const char *run : {"a", "b"}) {
        for (int id = 1; id <= 6; ++id) {
            const std::string cmd = std::string("\"") + PQFI_CLI_PATH + "\" figure " + std::to_string(id) +
                                    " --out \"" + (root / run).string() + "\" > /dev/null";
            if (std::system(cmd.c_str()) != 0) {
                o.pass = false;
                bad += " fig" + std::to_string(id) + "(exit)";
            }
        }
    }
    std::uintmax_t bytes = 0;
    for (int id = 1; id <= 6; ++id) {
        for (const std::string ext : {".csv", ".manifest.json"}) {
            const std::string name = "fig" + std::to_string(id) + ext;
            const std::string a = slurp(root / "a" / name);
            if (a.empty() || a != slurp(root / "b" / name)) {
                o.pass = false;
                bad += " " + name;
            }
            bytes += a.size();
        }
    }
    const double dt = seconds_since(t0);
    o.pass = o.pass && dt < 300.0;
    fs::remove_all(root);
    o.detail = "6 presets x 2 runs, " + std::to_string(bytes) + " bytes per run, " +
               (bad.empty() ? std::string("identical") : "mismatch:" + bad) + "; " + num(dt) + " s (< 300 s)";
    return o;
}

struct Criterion {
    const char *name;
    std::function<Outcome()> run;
};

const std::vector<Criterion> &criteria() {
    static const std::vector<Criterion> list{
        {"qubit closed forms", qubit_closed_forms},
        {"asymptotic QFI", asymptotic_qfi},
        {"83.33% reduction", reduction_ratio},
        {"oracle equivalence", oracle_equivalence},
        {"exponential decay and linear growth", decay_and_growth},
        {"qudit landmark coincidence", fractional_coincidence},
        {"d-scaling", d_scaling},
        {"T optimum location", t_optimum},
        {"gauge and phase suite", gauge_and_phase_suite},
        {"figure-grid regression", figure_regression},
    };
    return list;
}

} // namespace

int main(int argc, char **argv) {
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--criterion" && i + 1 < argc) {
            selected.push_back(std::atoi(argv[++i]));
        } else {
            std::cerr << "usage: acceptance [--criterion N]...\n";
            return 2;
        }
    }
    const auto &list = criteria();
    if (selected.empty()) {
        for (int n = 1; n <= static_cast<int>(list.size()); ++n) {
            selected.push_back(n);
        }
    }
    bool all = true;
    for (int n : selected) {
        if (n < 1 || n > static_cast<int>(list.size())) {
            std::cerr << "no criterion " << n << '\n';
            return 2;
        }
        const Criterion &c = list[static_cast<std::size_t>(n - 1)];
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o.pass = false;
            o.detail = std::string("error: ") + e.what();
        }
        all = all && o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " [" << n << "] " << c.name << ": " << o.detail << std::endl;
    }
    return all ? 0 : 1;
}
