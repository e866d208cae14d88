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
 * Qudit meter states |M> = d^{-1/2} sum_k |b_k>^{(x)n} and the diagonal meter
 * operators O_lambda = sum_k exp(i n u_k lambda) |b_k><b_k| they are probed with.
 *
 * The n copies are folded into effective eigenvalues n*u_k; every quantity
 * here lives in the d-dimensional span of the |b_k>^{(x)n}.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "pqfi/errors.hpp"

namespace pqfi {

using Complex = std::complex<double>;

enum class MeterLaw { pancharatnam, symmetric, fractional, explicit_list };

inline std::string to_string(MeterLaw law) {
    switch (law) {
    case MeterLaw::pancharatnam:
        return "pancharatnam";
    case MeterLaw::symmetric:
        return "symmetric";
    case MeterLaw::fractional:
        return "fractional";
    case MeterLaw::explicit_list:
        return "explicit";
    }
    return "unknown";
}

/// Meter dimension d, copy count n and eigenvalue law u_k. Amplitudes are
/// always uniform.
class MeterSpec {
  public:
    /// u_k = k
    static MeterSpec pancharatnam(int d, int n = 1) {
        check_dims(d, n);
        std::vector<double> u(static_cast<std::size_t>(d));
        std::iota(u.begin(), u.end(), 0.0);
        return MeterSpec(MeterLaw::pancharatnam, n, 0.0, std::move(u));
    }

    /// u_k = k - (d-1)/2, a zero-sum spectrum.
    static MeterSpec symmetric(int d, int n = 1) {
        check_dims(d, n);
        std::vector<double> u(static_cast<std::size_t>(d));
        const double centre = 0.5 * (d - 1);
        for (int k = 0; k < d; ++k) {
            u[static_cast<std::size_t>(k)] = k - centre;
        }
        return MeterSpec(MeterLaw::symmetric, n, 0.0, std::move(u));
    }

    /// u_0 = 0, u_k = k^eps.
    static MeterSpec fractional(int d, int n, double eps) {
        check_dims(d, n);
        if (!(eps > 0.0) || !std::isfinite(eps)) {
            throw DomainError("fractional law needs eps > 0");
        }
        std::vector<double> u(static_cast<std::size_t>(d));
        u[0] = 0.0;
        for (int k = 1; k < d; ++k) {
            u[static_cast<std::size_t>(k)] = std::pow(static_cast<double>(k), eps);
        }
        return MeterSpec(MeterLaw::fractional, n, eps, std::move(u));
    }

    static MeterSpec explicit_values(std::vector<double> u, int n = 1) {
        check_dims(static_cast<int>(u.size()), n);
        for (double v : u) {
            if (!std::isfinite(v)) {
                throw DomainError("explicit meter eigenvalues must be finite");
            }
        }
        return MeterSpec(MeterLaw::explicit_list, n, 0.0, std::move(u));
    }

    int dimension() const { return static_cast<int>(u_.size()); }
    int copies() const { return n_; }
    MeterLaw law() const { return law_; }
    double epsilon() const { return eps_; }
    std::span<const double> eigenvalues() const { return u_; }

    /// Same meter with every eigenvalue shifted by c (an explicit law).
    MeterSpec shifted(double c) const {
        std::vector<double> u = u_;
        for (double &v : u) {
            v += c;
        }
        return explicit_values(std::move(u), n_);
    }

    MeterSpec with_copies(int n) const {
        check_dims(dimension(), n);
        MeterSpec out = *this;
        out.n_ = n;
        return out;
    }

    double spectral_width() const {
        const auto [lo, hi] = std::minmax_element(u_.begin(), u_.end());
        return *hi - *lo;
    }

  private:
    MeterSpec(MeterLaw law, int n, double eps, std::vector<double> u)
        : law_(law), n_(n), eps_(eps), u_(std::move(u)) {}

    static void check_dims(int d, int n) {
        if (d < 2) {
            throw DomainError("meter dimension must be >= 2");
        }
        if (n < 1) {
            throw DomainError("meter copy count must be >= 1");
        }
    }

    MeterLaw law_;
    int n_;
    double eps_;
    std::vector<double> u_;
};

inline constexpr double kPhaseFloor = 1e-14;

/// <O_lambda> split into visibility and principal-branch phase.
struct ComplexExpectation {
    Complex value;
    double modulus = 0.0;
    double phase = 0.0;        // (-pi, pi]; 0 when undefined
    bool phase_defined = false; // false when modulus < phase floor
};

inline ComplexExpectation make_expectation(Complex value, double phase_floor = kPhaseFloor) {
    ComplexExpectation out;
    out.value = value;
    out.modulus = std::abs(value);
    out.phase_defined = out.modulus >= phase_floor;
    out.phase = out.phase_defined ? std::arg(value) : 0.0;
    if (out.phase == -std::numbers::pi) {
        out.phase = std::numbers::pi;
    }
    return out;
}

/// Diagonal of O_lambda: exp(i n u_k lambda).
inline std::vector<Complex> meter_diagonal(const MeterSpec &spec, double lambda) {
    const double n = spec.copies();
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(spec.dimension()));
    for (double u : spec.eigenvalues()) {
        out.push_back(std::polar(1.0, n * u * lambda));
    }
    return out;
}

/// <M| O_lambda |M> = (1/d) sum_k exp(i n u_k lambda).
inline ComplexExpectation expect_O(const MeterSpec &spec, double lambda,
                                   double phase_floor = kPhaseFloor) {
    Complex sum{0.0, 0.0};
    const double n = spec.copies();
    for (double u : spec.eigenvalues()) {
        sum += std::polar(1.0, n * u * lambda);
    }
    return make_expectation(sum / static_cast<double>(spec.dimension()), phase_floor);
}

/// |sin(d x)| / (d |sin x|) with x = n lambda / 2; the visibility of the
/// u_k = k meter.
inline double dirichlet_modulus(int d, int n, double lambda) {
    const double x = 0.5 * n * lambda;
    // |sin(d x)| and |sin x| are both pi-periodic in x.
    const double xr = x - std::numbers::pi * std::round(x / std::numbers::pi);
    if (std::abs(xr) < 1e-6) {
        const double dd = static_cast<double>(d);
        return std::abs(1.0 - (dd * dd - 1.0) * xr * xr / 6.0);
    }
    return std::abs(std::sin(d * xr)) / (d * std::abs(std::sin(xr)));
}

/// <O^dagger dO/dlambda> = (i n / d) sum_k u_k; purely imaginary and
/// independent of lambda. Evaluated as the literal matrix-element sum.
inline Complex parallel_transport_term(const MeterSpec &spec, double lambda) {
    const double n = spec.copies();
    Complex sum{0.0, 0.0};
    for (double u : spec.eigenvalues()) {
        const Complex o = std::polar(1.0, n * u * lambda);
        const Complex d_o = Complex{0.0, n * u} * o;
        sum += std::conj(o) * d_o;
    }
    return sum / static_cast<double>(spec.dimension());
}

/// Global phase g(lambda) with diag(O^P) = g * diag(O^(0)).
inline Complex gauge_shift_equivalence(const MeterSpec &spec_p, const MeterSpec &spec_0,
                                       double lambda) {
    if (spec_p.law() != MeterLaw::pancharatnam || spec_0.law() != MeterLaw::symmetric) {
        throw DomainError("gauge shift compares a pancharatnam meter with a symmetric one");
    }
    if (spec_p.dimension() != spec_0.dimension() || spec_p.copies() != spec_0.copies()) {
        throw DomainError("gauge shift needs matching d and n");
    }
    const auto dp = meter_diagonal(spec_p, lambda);
    const auto d0 = meter_diagonal(spec_0, lambda);
    const Complex g = dp[0] / d0[0];
    for (std::size_t k = 1; k < dp.size(); ++k) {
        if (std::abs(dp[k] / d0[k] - g) > 1e-12) {
            throw DomainError("meter diagonals are not related by a global phase");
        }
    }
    return g;
}

/// Large-d integral approximation of <O> for the fractional law (n = 1):
/// 1/d + exp(i lambda) (d^{i lambda eps} - 1/d) / (1 + i lambda eps).
inline Complex fractional_expectation_integral(int d, double eps, double lambda) {
    const double dd = static_cast<double>(d);
    const Complex d_pow = std::polar(1.0, lambda * eps * std::log(dd));
    return 1.0 / dd + std::polar(1.0, lambda) * (d_pow - 1.0 / dd) / Complex{1.0, lambda * eps};
}

/// Leading-order phase of the fractional meter: lambda [1 - eps + eps ln d].
inline double fractional_phase_leading(int d, double eps, double lambda) {
    return lambda * (1.0 - eps + eps * std::log(static_cast<double>(d)));
}

} // namespace pqfi
