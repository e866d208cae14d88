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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "pqfi/meter.hpp"

namespace pqfi {
namespace {

TEST(MeterSpec, LawsProduceTheirSpectra) {
    const auto p = MeterSpec::pancharatnam(4, 2);
    EXPECT_EQ(p.dimension(), 4);
    EXPECT_EQ(p.copies(), 2);
    for (int k = 0; k < 4; ++k) {
        EXPECT_EQ(p.eigenvalues()[static_cast<std::size_t>(k)], k);
    }
    const auto s = MeterSpec::symmetric(5);
    double sum = 0.0;
    for (double u : s.eigenvalues()) {
        sum += u;
    }
    EXPECT_EQ(sum, 0.0);
    EXPECT_EQ(s.eigenvalues()[0], -2.0);

    const auto f = MeterSpec::fractional(100, 1, 0.5);
    EXPECT_EQ(f.eigenvalues()[0], 0.0);
    for (std::size_t k = 1; k < 100; ++k) {
        EXPECT_GT(f.eigenvalues()[k], f.eigenvalues()[k - 1]);
    }
    EXPECT_DOUBLE_EQ(f.eigenvalues()[16], 4.0);
    EXPECT_DOUBLE_EQ(f.epsilon(), 0.5);

    const auto one = MeterSpec::fractional(7, 1, 1.0);
    for (int k = 0; k < 7; ++k) {
        EXPECT_EQ(one.eigenvalues()[static_cast<std::size_t>(k)], k);
    }
}

TEST(MeterSpec, RejectsInvalidConfigurations) {
    EXPECT_THROW(MeterSpec::pancharatnam(1), DomainError);
    EXPECT_THROW(MeterSpec::symmetric(3, 0), DomainError);
    EXPECT_THROW(MeterSpec::fractional(3, 1, 0.0), DomainError);
    EXPECT_THROW(MeterSpec::fractional(3, 1, -1.0), DomainError);
    EXPECT_THROW(MeterSpec::explicit_values({1.0}), DomainError);
    EXPECT_THROW(MeterSpec::explicit_values({1.0, NAN}), DomainError);
}

TEST(MeterSpec, ShiftAndWidth) {
    const auto p = MeterSpec::pancharatnam(3).shifted(0.25);
    EXPECT_EQ(p.law(), MeterLaw::explicit_list);
    EXPECT_DOUBLE_EQ(p.eigenvalues()[2], 2.25);
    EXPECT_DOUBLE_EQ(p.spectral_width(), 2.0);
    EXPECT_EQ(MeterSpec::pancharatnam(3).with_copies(5).copies(), 5);
}

TEST(ExpectO, QubitPancharatnam) {
    for (double lambda : {1e-3, 0.2, 1.0, 2.5}) {
        const auto o = expect_O(MeterSpec::pancharatnam(2), lambda);
        EXPECT_NEAR(o.modulus, std::abs(std::cos(lambda / 2)), 1e-15);
        EXPECT_NEAR(o.phase, lambda / 2, 1e-15);
        EXPECT_TRUE(o.phase_defined);
    }
}

TEST(ExpectO, SymmetricLawHasZeroPhase) {
    for (int d : {2, 3, 10, 30}) {
        for (int n : {1, 3}) {
            // Inside the first lobe |d n lambda / 2| < pi the real sum is positive.
            const auto o = expect_O(MeterSpec::symmetric(d, n), 3.0 / (d * n));
            EXPECT_NEAR(o.phase, 0.0, 1e-15);
            EXPECT_NEAR(o.value.imag(), 0.0, 1e-15);
        }
    }
}

TEST(ExpectO, SymmetricLawIsRealBeyondFirstLobe) {
    // The sum stays real but changes sign, so the principal phase becomes pi.
    const auto o = expect_O(MeterSpec::symmetric(30, 3), 0.37);
    EXPECT_NEAR(o.value.imag(), 0.0, 1e-15);
    EXPECT_LT(o.value.real(), 0.0);
    EXPECT_EQ(o.phase, std::numbers::pi);
}

TEST(ExpectO, IdentityAtZeroCoupling) {
    for (const auto &spec : {MeterSpec::pancharatnam(5), MeterSpec::symmetric(4, 2),
                             MeterSpec::fractional(9, 1, 0.3), MeterSpec::explicit_values({-2, 7})}) {
        const auto o = expect_O(spec, 0.0);
        EXPECT_EQ(o.value, Complex(1.0, 0.0));
        EXPECT_EQ(o.modulus, 1.0);
        EXPECT_EQ(o.phase, 0.0);
    }
}

TEST(ExpectO, FractionalPhaseNearLambda) {
    const double lambda = 1e-3;
    const auto o = expect_O(MeterSpec::fractional(10000, 1, 1e-4), lambda);
    const double leading = fractional_phase_leading(10000, 1e-4, lambda);
    EXPECT_NEAR(o.phase, leading, 0.01 * lambda);
    EXPECT_NEAR(o.phase, lambda, 0.01 * lambda);
}

TEST(ExpectO, UndefinedPhaseBelowFloor) {
    // d = 4, n lambda = pi/2: the four roots 1, i, -1, -i cancel.
    const auto o = expect_O(MeterSpec::pancharatnam(4), std::numbers::pi / 2);
    EXPECT_LT(o.modulus, kPhaseFloor);
    EXPECT_FALSE(o.phase_defined);
    EXPECT_EQ(o.phase, 0.0);
}

TEST(ExpectO, ConjugationSymmetry) {
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> lam(-3.0, 3.0);
    for (int i = 0; i < 50; ++i) {
        const double l = lam(rng);
        for (const auto &spec : {MeterSpec::pancharatnam(6, 2), MeterSpec::fractional(20, 1, 0.4)}) {
            const auto a = expect_O(spec, l);
            const auto b = expect_O(spec, -l);
            EXPECT_NEAR(a.value.real(), b.value.real(), 1e-15);
            EXPECT_NEAR(a.value.imag(), -b.value.imag(), 1e-15);
        }
    }
}

TEST(ExpectO, DiagonalIsUnitary) {
    const auto diag = meter_diagonal(MeterSpec::fractional(50, 2, 0.7), 0.9);
    double norm = 0.0;
    for (const Complex &c : diag) {
        EXPECT_NEAR(std::abs(c), 1.0, 1e-15);
        norm += std::norm(c);
    }
    EXPECT_NEAR(norm / 50.0, 1.0, 1e-15);
}

TEST(Dirichlet, MatchesPancharatnamModulus) {
    std::mt19937 rng(2);
    std::uniform_real_distribution<double> lam(-6.0, 6.0);
    for (int i = 0; i < 200; ++i) {
        const double l = lam(rng);
        for (int d : {2, 3, 7, 30}) {
            for (int n : {1, 2}) {
                const double x = 0.5 * n * l;
                if (std::abs(std::sin(x)) < 1e-3) {
                    continue;
                }
                EXPECT_NEAR(dirichlet_modulus(d, n, l), expect_O(MeterSpec::pancharatnam(d, n), l).modulus,
                            1e-12);
            }
        }
    }
}

TEST(Dirichlet, PhaseIsHalfSpread) {
    for (int d : {2, 5, 30}) {
        const double l = 1e-3;
        EXPECT_NEAR(expect_O(MeterSpec::pancharatnam(d), l).phase, 0.5 * (d - 1) * l, 1e-15);
    }
}

TEST(Dirichlet, SeriesBranchNearZero) {
    EXPECT_EQ(dirichlet_modulus(30, 1, 0.0), 1.0);
    EXPECT_NEAR(dirichlet_modulus(30, 1, 1e-7), 1.0, 1e-10);
    EXPECT_NEAR(dirichlet_modulus(30, 1, 2 * std::numbers::pi), 1.0, 1e-10);
    const double l = 1.9e-6;
    EXPECT_NEAR(dirichlet_modulus(10, 1, l), expect_O(MeterSpec::pancharatnam(10), l).modulus, 1e-14);
}

TEST(ParallelTransport, PancharatnamIsHalfSpread) {
    const Complex v = parallel_transport_term(MeterSpec::pancharatnam(3), 0.4);
    EXPECT_NEAR(v.real(), 0.0, 1e-15);
    EXPECT_NEAR(v.imag(), 1.0, 1e-15);
    for (int d : {2, 6, 11}) {
        EXPECT_NEAR(parallel_transport_term(MeterSpec::pancharatnam(d, 2), 1.3).imag(), (d - 1.0), 1e-13);
    }
}

TEST(ParallelTransport, SymmetricIsZero) {
    for (int d : {2, 3, 8}) {
        EXPECT_NEAR(std::abs(parallel_transport_term(MeterSpec::symmetric(d, 3), 0.8)), 0.0, 1e-15);
    }
}

TEST(ParallelTransport, ExplicitList) {
    const Complex v = parallel_transport_term(MeterSpec::explicit_values({0.0, 2.0}, 2), 0.123);
    EXPECT_NEAR(v.real(), 0.0, 1e-15);
    EXPECT_NEAR(v.imag(), 2.0, 1e-15);
}

TEST(GaugeShift, GlobalPhaseBetweenLaws) {
    for (double l : {0.0, 0.3, -1.1, 2.0}) {
        const Complex g3 = gauge_shift_equivalence(MeterSpec::pancharatnam(3), MeterSpec::symmetric(3), l);
        EXPECT_NEAR(std::abs(g3 - std::polar(1.0, l)), 0.0, 1e-12);
        const Complex g2 = gauge_shift_equivalence(MeterSpec::pancharatnam(2, 4), MeterSpec::symmetric(2, 4), l);
        EXPECT_NEAR(std::abs(g2 - std::polar(1.0, 2.0 * l)), 0.0, 1e-12);
    }
    EXPECT_EQ(gauge_shift_equivalence(MeterSpec::pancharatnam(5), MeterSpec::symmetric(5), 0.0), Complex(1.0, 0.0));
}

TEST(GaugeShift, RejectsMismatches) {
    EXPECT_THROW(gauge_shift_equivalence(MeterSpec::pancharatnam(3), MeterSpec::symmetric(4), 0.1), DomainError);
    EXPECT_THROW(gauge_shift_equivalence(MeterSpec::pancharatnam(3, 1), MeterSpec::symmetric(3, 2), 0.1),
                 DomainError);
    EXPECT_THROW(gauge_shift_equivalence(MeterSpec::symmetric(3), MeterSpec::pancharatnam(3), 0.1), DomainError);
}

TEST(Fractional, IntegralApproximationPhase) {
    for (int d : {100, 1000, 10000}) {
        for (double eps : {1e-4, 1e-3, 1e-2}) {
            const double bound = 5.0 * eps * std::log(static_cast<double>(d));
            for (double lambda : {1e-3, 1e-2, 0.1}) {
                if (std::abs(lambda * eps * std::log(static_cast<double>(d))) > 0.01) {
                    continue;
                }
                const double exact = expect_O(MeterSpec::fractional(d, 1, eps), lambda).phase;
                const double approx = std::arg(fractional_expectation_integral(d, eps, lambda));
                EXPECT_LE(std::abs(exact - approx) / std::abs(exact), bound)
                    << "d=" << d << " eps=" << eps << " lambda=" << lambda;
            }
        }
    }
}

} // namespace
} // namespace pqfi
