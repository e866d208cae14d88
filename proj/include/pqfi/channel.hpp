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
 * Postselected compression channel K = <j,m_f| J_lambda(Theta) |j,m_i> acting
 * on a qudit meter: postselection probability, total and parallel channel
 * changes, and the quantum Fisher information split into total, parallel and
 * orthogonal parts.
 *
 * Conventions. With beta_k = Theta - n u_k lambda the meter amplitudes are
 *
 *   c_k = exp(i j Theta) exp(i j n u_k lambda) d^{(j)}_{m_f,m_i}(beta_k) / sqrt(d),
 *
 * and the channel changes are defined as
 *
 *   Q^T   = <dK^dagger dK>   = (n^2/d) sum_k u_k^2 |A_k|^2,
 *   Q^par = |<K^dagger dK>|^2 = |(n/d) sum_k u_k d(beta_k) A_k|^2,
 *   A_k   = i j d(beta_k) - d'(beta_k).
 *
 * For extremal selection (m_i = j, m_f = -j) this gives prefactors n^2 j^2 / d
 * and n^2 j^2 / d^2 on the sin-power series. The finite-difference oracle in
 * oracle.hpp confirms these prefactors; a factor-of-4 larger prefactor
 * reproduces neither the oracle nor the qubit closed forms below.
 */

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "pqfi/errors.hpp"
#include "pqfi/halfint.hpp"
#include "pqfi/meter.hpp"
#include "pqfi/wigner.hpp"

namespace pqfi {

inline constexpr double kProbabilityFloor = 1e-300;

struct ChannelParams {
    double lambda = 0.0;
    double theta = 0.0; // taken modulo 2 pi; all outputs are 2 pi periodic
    HalfInt j{1};
    HalfInt m_i{1};
    HalfInt m_f{-1};

    /// Highest-weight preselection, lowest-weight postselection.
    static ChannelParams extremal(HalfInt j, double lambda, double theta) {
        return ChannelParams{lambda, theta, j, j, -j};
    }

    bool is_extremal() const { return m_i == j && m_f == -j; }

    void validate() const {
        require_magnetic_pair(j, m_i);
        require_magnetic_pair(j, m_f);
        if (!std::isfinite(lambda) || !std::isfinite(theta)) {
            throw DomainError("lambda and theta must be finite");
        }
    }
};

struct QfiBreakdown {
    double p = 0.0;
    double q_total = 0.0;
    double q_parallel = 0.0;
    double i_total = 0.0;
    double i_parallel = 0.0;
    double i_perp = 0.0;
    double t_per_trial = 0.0;
    double baseline = 0.0; // (2j)^2
    int copies = 1;

    double n_squared() const { return static_cast<double>(copies) * copies; }
    double i_total_n2() const { return i_total / n_squared(); }
    double i_parallel_n2() const { return i_parallel / n_squared(); }
    double i_perp_n2() const { return i_perp / n_squared(); }
    double t_per_trial_n2() const { return t_per_trial / n_squared(); }
    bool quantum_advantage() const { return t_per_trial > baseline; }
};

struct EstimationBudget {
    long long trials = 1;
};

/// Raw sums over the meter basis: P, Q^T and <K^dagger dK>.
struct ChannelSums {
    double p = 0.0;
    double q_total = 0.0;
    Complex overlap{0.0, 0.0};
};

inline ChannelSums channel_sums(const ChannelParams &params, const MeterSpec &spec) {
    params.validate();
    const WignerElement element(params.j, params.m_f, params.m_i);
    const double jv = params.j.value();
    const double n = spec.copies();
    const double d = spec.dimension();
    double p = 0.0;
    double qt = 0.0;
    Complex s{0.0, 0.0};
    for (double u : spec.eigenvalues()) {
        const double beta = params.theta - n * u * params.lambda;
        const double dv = element.value(beta);
        const double dd = element.derivative(beta);
        const Complex a{-dd, jv * dv};
        p += dv * dv;
        qt += u * u * std::norm(a);
        s += (u * dv) * a;
    }
    return ChannelSums{p / d, n * n * qt / d, (n / d) * s};
}

/// (1/d) sum_k [d^{(j)}_{m_f,m_i}(beta_k)]^2
inline double postselection_probability(const ChannelParams &params, const MeterSpec &spec) {
    params.validate();
    const WignerElement element(params.j, params.m_f, params.m_i);
    const double n = spec.copies();
    double p = 0.0;
    for (double u : spec.eigenvalues()) {
        const double dv = element.value(params.theta - n * u * params.lambda);
        p += dv * dv;
    }
    return p / spec.dimension();
}

inline double q_total(const ChannelParams &params, const MeterSpec &spec) {
    return channel_sums(params, spec).q_total;
}

inline double q_parallel(const ChannelParams &params, const MeterSpec &spec) {
    return std::norm(channel_sums(params, spec).overlap);
}

inline QfiBreakdown breakdown_from_sums(const ChannelSums &sums, HalfInt j, int copies,
                                        double p_floor = kProbabilityFloor) {
    if (!(sums.p > p_floor)) {
        throw VanishingPostselection("postselection probability at or below floor");
    }
    QfiBreakdown b;
    b.p = sums.p;
    b.q_total = sums.q_total;
    b.q_parallel = std::norm(sums.overlap);
    b.i_total = 4.0 * b.q_total / b.p;
    b.i_parallel = 4.0 * b.q_parallel / (b.p * b.p);
    b.i_perp = 4.0 * (b.q_total * b.p - b.q_parallel) / (b.p * b.p);
    // Cauchy-Schwarz makes i_perp >= 0; clear sign noise from the cancellation.
    if (b.i_perp < 0.0 && -b.i_perp <= 1e-12 * b.i_total) {
        b.i_perp = 0.0;
    }
    b.t_per_trial = b.p * b.i_perp;
    b.baseline = static_cast<double>(j.twice) * j.twice;
    b.copies = copies;
    return b;
}

inline QfiBreakdown qfi_breakdown(const ChannelParams &params, const MeterSpec &spec,
                                  double p_floor = kProbabilityFloor) {
    return breakdown_from_sums(channel_sums(params, spec), params.j, spec.copies(), p_floor);
}

/// SNR <= lambda_true sqrt(I_perp)
inline double snr_bound(const ChannelParams &params, const MeterSpec &spec,
                        double lambda_true) {
    return lambda_true * std::sqrt(qfi_breakdown(params, spec).i_perp);
}

inline double cramer_rao_uncertainty(double i_perp, EstimationBudget budget) {
    if (budget.trials < 1) {
        throw DomainError("trial count must be >= 1");
    }
    return 1.0 / std::sqrt(static_cast<double>(budget.trials) * i_perp);
}

/// Delta lambda = [M I_perp]^{-1/2}
inline double cramer_rao_uncertainty(const ChannelParams &params, const MeterSpec &spec,
                                     EstimationBudget budget) {
    return cramer_rao_uncertainty(qfi_breakdown(params, spec).i_perp, budget);
}

/// Spin-1/2 fringe: (1/2)[1 - |<O>| cos(Theta - Im ln <O>)].
inline double interference_probability_qubit(double theta, const MeterSpec &spec,
                                             double lambda) {
    const ComplexExpectation o = expect_O(spec, lambda, 0.0);
    return 0.5 * (1.0 - o.modulus * std::cos(theta - o.phase));
}

/// Coefficients of K|M> in the |b_k>^{(x)n} basis.
inline std::vector<Complex> channel_amplitudes(const ChannelParams &params,
                                               const MeterSpec &spec) {
    params.validate();
    const WignerElement element(params.j, params.m_f, params.m_i);
    const double jv = params.j.value();
    const double n = spec.copies();
    const double norm = 1.0 / std::sqrt(static_cast<double>(spec.dimension()));
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(spec.dimension()));
    for (double u : spec.eigenvalues()) {
        const double beta = params.theta - n * u * params.lambda;
        const double phase = jv * params.theta + jv * n * u * params.lambda;
        out.push_back(std::polar(norm * element.value(beta), phase));
    }
    return out;
}

/// Coefficients of (dK/dlambda)|M>: n u_k exp(...) A_k / sqrt(d).
inline std::vector<Complex> channel_amplitude_derivatives(const ChannelParams &params,
                                                          const MeterSpec &spec) {
    params.validate();
    const WignerElement element(params.j, params.m_f, params.m_i);
    const double jv = params.j.value();
    const double n = spec.copies();
    const double norm = 1.0 / std::sqrt(static_cast<double>(spec.dimension()));
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(spec.dimension()));
    for (double u : spec.eigenvalues()) {
        const double beta = params.theta - n * u * params.lambda;
        const double phase = jv * params.theta + jv * n * u * params.lambda;
        const Complex a{-element.derivative(beta), jv * element.value(beta)};
        out.push_back(norm * n * u * std::polar(1.0, phase) * a);
    }
    return out;
}

/// d^{(j)}_{m_f,m_i}(beta) rebuilt from the J_y eigenbasis:
///   exp(i pi (m_i - m_f)/2) sum_mu d_{m_f,mu}(pi/2) d_{m_i,mu}(pi/2) exp(-i beta mu).
/// The result is real up to rounding.
inline Complex jy_basis_element(HalfInt j, HalfInt m_f, HalfInt m_i, double beta) {
    require_magnetic_pair(j, m_f);
    require_magnetic_pair(j, m_i);
    constexpr double half_pi = 0.5 * std::numbers::pi;
    Complex sum{0.0, 0.0};
    for (int mu = -j.twice; mu <= j.twice; mu += 2) {
        const HalfInt m_y{mu};
        const double w = wigner_d(j, m_f, m_y, half_pi) * wigner_d(j, m_i, m_y, half_pi);
        sum += w * std::polar(1.0, -beta * m_y.value());
    }
    return std::polar(1.0, half_pi * (m_i.value() - m_f.value())) * sum;
}

// ---------------------------------------------------------------------------
// Closed forms for extremal selection, where d_{-j,j}(beta) = sin^{2j}(beta/2).

/// (1/d) sum_k sin^{4j}(beta_k/2)
inline double extremal_probability(HalfInt j, const MeterSpec &spec, double lambda,
                                   double theta) {
    const double n = spec.copies();
    double p = 0.0;
    for (double u : spec.eigenvalues()) {
        p += detail::ipow(std::sin(0.5 * (theta - n * u * lambda)), 2 * j.twice);
    }
    return p / spec.dimension();
}

/// (n^2 j^2 / d) sum_k u_k^2 sin^{4j-2}(beta_k/2)
inline double extremal_q_total(HalfInt j, const MeterSpec &spec, double lambda, double theta) {
    const double n = spec.copies();
    const double jv = j.value();
    double sum = 0.0;
    for (double u : spec.eigenvalues()) {
        sum += u * u * detail::ipow(std::sin(0.5 * (theta - n * u * lambda)), 2 * j.twice - 2);
    }
    return n * n * jv * jv * sum / spec.dimension();
}

/// (n^2 j^2 / d^2) |sum_k u_k sin^{4j-1}(beta_k/2) exp(i n u_k lambda / 2)|^2
inline double extremal_q_parallel(HalfInt j, const MeterSpec &spec, double lambda,
                                  double theta) {
    const double n = spec.copies();
    const double jv = j.value();
    const double d = spec.dimension();
    Complex sum{0.0, 0.0};
    for (double u : spec.eigenvalues()) {
        const double s = std::sin(0.5 * (theta - n * u * lambda));
        sum += u * detail::ipow(s, 2 * j.twice - 1) * std::polar(1.0, 0.5 * n * u * lambda);
    }
    return n * n * jv * jv * std::norm(sum) / (d * d);
}

// Qubit meter (d = 2, u = {0, 1}), spin-1/2 extremal selection.

/// n^2 [1 - cos(n lambda/2) cos(Theta - n lambda/2)]^{-1}
inline double qubit_i_total(int n, double lambda, double theta) {
    const double a = n * lambda;
    return n * n / (1.0 - std::cos(0.5 * a) * std::cos(theta - 0.5 * a));
}

/// n^2 sin^2((n lambda - Theta)/2) [1 - cos(n lambda/2) cos(Theta - n lambda/2)]^{-2}
inline double qubit_i_parallel(int n, double lambda, double theta) {
    const double a = n * lambda;
    const double den = 1.0 - std::cos(0.5 * a) * std::cos(theta - 0.5 * a);
    const double s = std::sin(0.5 * (a - theta));
    return n * n * s * s / (den * den);
}

/// arccos(cos^2(n lambda / 2)), signed with n lambda. Exact to O((n lambda)^3).
inline double qubit_theta_perp(int n, double lambda) {
    const double a = n * lambda;
    const double c = std::cos(0.5 * a);
    return std::copysign(std::acos(c * c), a);
}

// Qudit meter with u_k = k, spin-1/2 extremal selection.

/// (1/2)[1 - sin(d n lambda/2) / (d sin(n lambda/2)) cos(Theta - (d-1) n lambda/2)]
inline double qudit_probability(int d, int n, double lambda, double theta) {
    const double x = 0.5 * n * lambda;
    double ratio = 0.0;
    if (std::abs(x) < 1e-6) {
        ratio = 1.0 - (static_cast<double>(d) * d - 1.0) * x * x / 6.0;
    } else {
        ratio = std::sin(d * x) / (d * std::sin(x));
    }
    return 0.5 * (1.0 - ratio * std::cos(theta - (d - 1) * x));
}

/// n^2 (d-1)(2d-1) / 24, independent of Theta and lambda.
inline double qudit_q_total(int d, int n) {
    return static_cast<double>(n) * n * (d - 1.0) * (2.0 * d - 1.0) / 24.0;
}

/// Z(lambda) = sum_k k exp(i n k lambda), summed directly.
inline Complex pancharatnam_z(int d, int n, double lambda) {
    Complex z{0.0, 0.0};
    for (int k = 1; k < d; ++k) {
        z += static_cast<double>(k) * std::polar(1.0, static_cast<double>(n) * k * lambda);
    }
    return z;
}

/// Z(lambda) from the geometric-series closed form; ill-conditioned as n lambda -> 0.
inline Complex pancharatnam_z_closed(int d, int n, double lambda) {
    const double a = n * lambda;
    const Complex e1 = std::polar(1.0, a);
    const Complex num = e1 - static_cast<double>(d) * std::polar(1.0, d * a) +
                        (d - 1.0) * std::polar(1.0, (d + 1.0) * a);
    const Complex den = (1.0 - e1) * (1.0 - e1);
    return num / den;
}

/// n^2 |Z(lambda) - exp(i Theta) Z_0|^2 / (16 d^2), Z_0 = d(d-1)/2.
inline double qudit_q_parallel(int d, int n, double lambda, double theta) {
    const double z0 = 0.5 * d * (d - 1.0);
    const Complex diff = pancharatnam_z(d, n, lambda) - std::polar(z0, theta);
    return static_cast<double>(n) * n * std::norm(diff) / (16.0 * d * d);
}

namespace detail {

// exp(ix) - 1 - ix without cancellation.
inline Complex expm1_minus_linear(double x) {
    const double s = std::sin(0.5 * x);
    double im = 0.0;
    if (std::abs(x) < 0.5) {
        // sin x - x as a series
        const double x2 = x * x;
        double term = -x * x2 / 6.0;
        im = term;
        for (int k = 2; k < 12; ++k) {
            term *= -x2 / ((2.0 * k) * (2.0 * k + 1.0));
            im += term;
        }
    } else {
        im = std::sin(x) - x;
    }
    return {-2.0 * s * s, im};
}

} // namespace detail

/// Theta at which Q^par is minimal for the u_k = k meter:
///   -n lambda + Im ln[d e^{i n d lambda} - e^{i n lambda} + (1-d) e^{i n (d+1) lambda}].
/// The bracket equals e^{i n lambda} [d F((d-1) n lambda) - (d-1) F(d n lambda)] with
/// F(x) = e^{ix} - 1 - ix, which is how it is evaluated. Exact zero of Q^par only for d = 2.
inline double qudit_theta_parallel(int d, int n, double lambda) {
    const double a = n * lambda;
    const Complex x = static_cast<double>(d) * detail::expm1_minus_linear((d - 1.0) * a) -
                      (d - 1.0) * detail::expm1_minus_linear(d * a);
    return std::arg(x);
}

} // namespace pqfi
