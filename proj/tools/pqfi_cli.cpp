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

// pqfi: sweeps, landmark reports, oracle regression and figure presets for
// postselected compression channels.
//
// Exit codes: 0 success, 1 failed check or computation error, 2 bad configuration.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pqfi/pqfi.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheck = 1;
constexpr int kExitConfig = 2;

struct MeterOptions {
    int d = 2;
    int n = 1;
    std::string law = "pancharatnam";
    double eps = 1.0;
    std::vector<double> u_list;

    pqfi::MeterSpec build() const {
        if (law == "pancharatnam") {
            return pqfi::MeterSpec::pancharatnam(d, n);
        }
        if (law == "symmetric") {
            return pqfi::MeterSpec::symmetric(d, n);
        }
        if (law == "fractional") {
            return pqfi::MeterSpec::fractional(d, n, eps);
        }
        if (law == "explicit") {
            if (u_list.empty()) {
                throw pqfi::DomainError("explicit law needs --u-list");
            }
            return pqfi::MeterSpec::explicit_values(u_list, n);
        }
        throw pqfi::DomainError("unknown law: " + law);
    }
};

void add_meter_options(CLI::App *cmd, MeterOptions &m) {
    cmd->add_option("--d", m.d, "meter dimension")->capture_default_str();
    cmd->add_option("--n", m.n, "copy count")->capture_default_str();
    cmd->add_option("--law", m.law, "eigenvalue law")
        ->check(CLI::IsMember({"pancharatnam", "symmetric", "fractional", "explicit"}))
        ->capture_default_str();
    cmd->add_option("--eps", m.eps, "fractional exponent")->capture_default_str();
    cmd->add_option("--u-list", m.u_list, "explicit eigenvalues (comma separated)")->delimiter(',');
}

pqfi::GridScale parse_scale(const std::string &s) {
    return s == "log" ? pqfi::GridScale::log : pqfi::GridScale::linear;
}

std::filesystem::path manifest_path_for(const std::filesystem::path &csv) {
    std::filesystem::path p = csv;
    p.replace_extension(".manifest.json");
    return p;
}

void write_outputs(const std::vector<pqfi::SweepConfig> &series, const pqfi::SweepResult &r,
                   const std::string &out, std::optional<int> figure) {
    if (out.empty() || out == "-") {
        pqfi::write_csv(std::cout, r);
        return;
    }
    const std::filesystem::path csv(out);
    if (csv.has_parent_path()) {
        std::filesystem::create_directories(csv.parent_path());
    }
    {
        std::ofstream os(csv, std::ios::binary);
        if (!os) {
            throw std::runtime_error("cannot open " + csv.string());
        }
        pqfi::write_csv(os, r);
    }
    const auto manifest = pqfi::make_manifest(series, r, csv.filename().string(), figure);
    std::ofstream ms(manifest_path_for(csv), std::ios::binary);
    ms << manifest.dump(2) << '\n';
}

std::string fmt(double v) { return pqfi::format_double(v); }

// --- landmarks --------------------------------------------------------------

nlohmann::json landmark_entry(const pqfi::Landmark &l, const pqfi::ChannelParams &base,
                              const pqfi::MeterSpec &spec) {
    nlohmann::json j = pqfi::landmark_json(l);
    if (j.is_null()) {
        return j;
    }
    pqfi::ChannelParams p = base;
    p.theta = l.theta;
    try {
        const auto b = pqfi::qfi_breakdown(p, spec);
        j["T"] = b.t_per_trial;
        j["T_n2"] = b.t_per_trial_n2();
        j["Iperp"] = b.i_perp;
        j["P"] = b.p;
    } catch (const pqfi::VanishingPostselection &) {
        j["T"] = nullptr;
    }
    return j;
}

int run_landmarks(const pqfi::ChannelParams &params, const pqfi::MeterSpec &spec, bool as_json) {
    const pqfi::ThetaLandmarks lm = pqfi::compute_landmarks(params, spec);
    nlohmann::json out = pqfi::landmarks_json(lm);
    out["theta_t"] = landmark_entry(lm.total, params, spec);
    out["theta_perp"] = landmark_entry(lm.perp, params, spec);
    out["theta_par"] = landmark_entry(lm.parallel, params, spec);
    out["lambda"] = params.lambda;
    out["j"] = params.j.str();
    out["law"] = pqfi::to_string(spec.law());
    out["d"] = spec.dimension();
    out["n"] = spec.copies();
    double best_t = 0.0;
    for (const char *key : {"theta_t", "theta_perp", "theta_par"}) {
        if (out[key].is_object() && out[key]["T"].is_number()) {
            best_t = std::max(best_t, out[key]["T"].get<double>());
        }
    }
    out["quantum_advantage"] = !lm.degenerate && best_t > lm.baseline;

    if (as_json) {
        std::cout << out.dump(2) << '\n';
        return kExitOk;
    }
    std::cout << "law " << out["law"].get<std::string>() << "  d " << spec.dimension() << "  n "
              << spec.copies() << "  j " << params.j.str() << "  lambda " << fmt(params.lambda)
              << '\n';
    if (lm.degenerate) {
        std::cout << "degenerate: lambda = 0, every Theta is stationary\n";
    }
    std::cout << "pancharatnam phase  "
              << (lm.pancharatnam_defined ? fmt(lm.pancharatnam) : std::string("undefined")) << '\n';
    auto row = [&](const char *name, const char *key, const pqfi::Landmark &l) {
        std::cout << name << "  ";
        if (!l.defined()) {
            std::cout << "undefined\n";
            return;
        }
        std::cout << fmt(l.theta) << "  (" << pqfi::to_string(l.method) << ")";
        if (out[key]["T"].is_number()) {
            std::cout << "  T = " << fmt(out[key]["T"].get<double>());
        }
        std::cout << '\n';
    };
    row("theta_T   ", "theta_t", lm.total);
    row("theta_perp", "theta_perp", lm.perp);
    row("theta_par ", "theta_par", lm.parallel);
    if (std::isfinite(lm.parallel_residual)) {
        std::cout << "Q_par residual  " << fmt(lm.parallel_residual) << '\n';
    }
    std::cout << "baseline (2j)^2  " << fmt(lm.baseline) << '\n';
    std::cout << "quantum advantage  " << (out["quantum_advantage"].get<bool>() ? "yes" : "no") << '\n';
    return kExitOk;
}

// --- oracle-check -------------------------------------------------------------

int run_oracle_check(const pqfi::OracleMatrixConfig &cfg) {
    const pqfi::OracleMatrixReport rep = pqfi::run_oracle_matrix(cfg);
    std::cout << "points " << rep.points << "  skipped " << rep.skipped << "  seed " << cfg.seed
              << '\n';
    std::cout << "worst |P - ||Phi||^2|      " << fmt(rep.worst_prob_abs) << '\n';
    std::cout << "worst I_perp relative error " << fmt(rep.worst_qfi_rel) << '\n';
    std::cout << "worst Q_T relative error    " << fmt(rep.worst_qtotal_rel) << '\n';
    std::cout << "worst Q_par relative error  " << fmt(rep.worst_qpar_rel) << '\n';
    for (const auto &f : rep.failures) {
        std::cout << "FAIL " << f << '\n';
    }
    std::cout << (rep.passed() ? "PASS" : "FAIL") << '\n';
    return rep.passed() ? kExitOk : kExitCheck;
}

// --- phase --------------------------------------------------------------------

int run_phase(const pqfi::MeterSpec &spec, double lambda) {
    const pqfi::ComplexExpectation o = pqfi::expect_O(spec, lambda);
    std::cout << "law " << pqfi::to_string(spec.law()) << "  d " << spec.dimension() << "  n "
              << spec.copies() << "  lambda " << fmt(lambda) << '\n';
    std::cout << "<O>          " << fmt(o.value.real()) << " + " << fmt(o.value.imag()) << "i\n";
    std::cout << "visibility   " << fmt(o.modulus) << '\n';
    std::cout << "phase        " << (o.phase_defined ? fmt(o.phase) : std::string("undefined")) << '\n';
    if (spec.law() == pqfi::MeterLaw::pancharatnam) {
        std::cout << "dirichlet    " << fmt(pqfi::dirichlet_modulus(spec.dimension(), spec.copies(), lambda))
                  << '\n';
    }
    const pqfi::Complex pt = pqfi::parallel_transport_term(spec, lambda);
    std::cout << "<O^dag dO>   " << fmt(pt.real()) << " + " << fmt(pt.imag()) << "i\n";
    return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"pqfi: quantum Fisher information of postselected compression channels"};
    app.set_version_flag("--version", std::string(pqfi::kVersion));
    app.require_subcommand(1);

    // sweep
    MeterOptions sweep_meter;
    std::vector<std::string> sweep_j{"1/2"};
    pqfi::SweepConfig sweep_cfg;
    std::string lambda_scale = "linear";
    std::string outputs_text = "P,IT,Ipar,Iperp,T";
    std::string sweep_out;
    bool theta_endpoint = true;
    auto *sweep = app.add_subcommand("sweep", "evaluate quantities on a (j, lambda, Theta) grid");
    add_meter_options(sweep, sweep_meter);
    sweep->add_option("--j", sweep_j, "spin(s), e.g. 1/2 or 3 (twice-value)");
    std::optional<double> sweep_lambda;
    std::optional<double> sweep_theta;
    sweep->add_option("--lambda", sweep_lambda, "single lambda (overrides the lambda grid)");
    sweep->add_option("--theta", sweep_theta, "single Theta (overrides the Theta grid)");
    sweep->add_option("--lambda-min", sweep_cfg.lambda.min)->default_val(1e-3);
    sweep->add_option("--lambda-max", sweep_cfg.lambda.max)->default_val(1e-3);
    sweep->add_option("--lambda-count", sweep_cfg.lambda.count)->default_val(1);
    sweep->add_option("--lambda-scale", lambda_scale)->check(CLI::IsMember({"linear", "log"}));
    sweep->add_option("--theta-min", sweep_cfg.theta.min)->default_val(0.0);
    sweep->add_option("--theta-max", sweep_cfg.theta.max)->default_val(2.0 * std::numbers::pi);
    sweep->add_option("--theta-count", sweep_cfg.theta.count)->default_val(256);
    sweep->add_option("--theta-endpoint", theta_endpoint, "include theta-max")->default_val(false);
    sweep->add_option("--outputs", outputs_text, "comma separated quantity names")->capture_default_str();
    sweep->add_option("--trials", sweep_cfg.trials, "trial count M for dlambda")->default_val(1);
    sweep->add_option("--out", sweep_out, "CSV path; a manifest is written next to it");

    // landmarks
    MeterOptions lm_meter;
    std::string lm_j = "1/2";
    double lm_lambda = 1e-3;
    bool lm_json = false;
    auto *landmarks = app.add_subcommand("landmarks", "report Theta_T, Theta_perp, Theta_par");
    add_meter_options(landmarks, lm_meter);
    landmarks->add_option("--j", lm_j)->capture_default_str();
    landmarks->add_option("--lambda", lm_lambda)->capture_default_str();
    landmarks->add_flag("--json", lm_json, "emit JSON");

    // oracle-check
    pqfi::OracleMatrixConfig ocfg;
    auto *oracle = app.add_subcommand("oracle-check", "compare analytic QFI against the dense oracle");
    oracle->add_option("--max-j-twice", ocfg.max_j_twice)->capture_default_str();
    oracle->add_option("--max-d", ocfg.max_d)->capture_default_str();
    oracle->add_option("--max-n", ocfg.max_n)->capture_default_str();
    oracle->add_option("--points", ocfg.points)->capture_default_str();
    oracle->add_option("--seed", ocfg.seed)->capture_default_str();
    oracle->add_flag("--richardson,!--no-richardson", ocfg.richardson,
                     "Richardson-extrapolated differences (default on)");
    oracle->add_option("--fd-step-scale", ocfg.fd_step_scale,
                       "step h = scale (1 + |lambda|); 0 selects the single-step default")
        ->capture_default_str();
    oracle->add_option("--debug-scale-q", ocfg.q_scale, "scale analytic Q (negative control)");

    // figure
    int figure_id = 1;
    std::string figure_dir = ".";
    auto *figure = app.add_subcommand("figure", "run a figure preset (1..6) to CSV + manifest");
    figure->add_option("id", figure_id)->required()->check(CLI::Range(1, 6));
    figure->add_option("--out", figure_dir, "output directory")->capture_default_str();

    // phase
    MeterOptions ph_meter;
    double ph_lambda = 1e-3;
    auto *phase = app.add_subcommand("phase", "meter expectation, visibility and phase");
    add_meter_options(phase, ph_meter);
    phase->add_option("--lambda", ph_lambda)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*sweep) {
            sweep_cfg.spec = sweep_meter.build();
            sweep_cfg.j_list.clear();
            for (const auto &s : sweep_j) {
                sweep_cfg.j_list.push_back(pqfi::HalfInt::parse(s));
            }
            sweep_cfg.lambda.scale = parse_scale(lambda_scale);
            sweep_cfg.theta.endpoint = theta_endpoint;
            if (sweep_lambda) {
                sweep_cfg.lambda = pqfi::Grid{*sweep_lambda, *sweep_lambda, 1};
            }
            if (sweep_theta) {
                sweep_cfg.theta = pqfi::Grid{*sweep_theta, *sweep_theta, 1};
            }
            sweep_cfg.outputs.clear();
            std::stringstream ss(outputs_text);
            for (std::string item; std::getline(ss, item, ',');) {
                sweep_cfg.outputs.push_back(pqfi::parse_quantity(item));
            }
            const std::vector<pqfi::SweepConfig> series{sweep_cfg};
            write_outputs(series, pqfi::run_sweep(series), sweep_out, std::nullopt);
            return kExitOk;
        }
        if (*landmarks) {
            const auto params = pqfi::ChannelParams::extremal(pqfi::HalfInt::parse(lm_j), lm_lambda, 0.0);
            params.validate();
            return run_landmarks(params, lm_meter.build(), lm_json);
        }
        if (*oracle) {
            return run_oracle_check(ocfg);
        }
        if (*figure) {
            const pqfi::FigurePreset preset = pqfi::figure_preset(figure_id);
            const auto csv = std::filesystem::path(figure_dir) / ("fig" + std::to_string(figure_id) + ".csv");
            write_outputs(preset.series, pqfi::run_sweep(preset.series), csv.string(), figure_id);
            std::cout << csv.string() << '\n';
            return kExitOk;
        }
        if (*phase) {
            return run_phase(ph_meter.build(), ph_lambda);
        }
    } catch (const pqfi::DomainError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCheck;
    }
    return kExitOk;
}
