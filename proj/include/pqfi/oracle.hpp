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
 * Brute-force reference: the joint spin-j system and single-copy meter are held
 * as a dense vector of length (2j+1) d, evolved by explicit matrix exponentials
 * and projected onto the postselected state. n copies enter through the
 * effective eigenvalues n u_k. Nothing here calls the Wigner kernel.
 *
 * Ordering of the factors: exp(-i pi/2 J_x), then exp[i lambda (J_t + J_z) (x) n U],
 * then exp[i Theta (J_t - J_z)], then exp(+i pi/2 J_x). With this rotation
 * sense the projected amplitudes are exp(i j (Theta + n u_k lambda)) d_{m_f,m_i}(beta_k)
 * with the positive corner element d_{-j,j}(beta) = sin^{2j}(beta/2).
 *
 * Arithmetic is carried in long double: near-dark points build amplitudes of
 * order 1e-9 out of O(1) terms, and double rounding there swamps the finite
 * differences.
 */

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pqfi/channel.hpp"
#include "pqfi/errors.hpp"
#include "pqfi/halfint.hpp"
#include "pqfi/meter.hpp"
#include "pqfi/tolerances.hpp"

namespace pqfi {

using Real = long double;
using ComplexL = std::complex<Real>;
using MatrixC = Eigen::Matrix<ComplexL, Eigen::Dynamic, Eigen::Dynamic>;
using VectorC = Eigen::Matrix<ComplexL, Eigen::Dynamic, 1>;

/// Spin-j matrices in the basis |j, j - i>, i = 0 .. 2j.
struct SpinOps {
    HalfInt j{0};
    MatrixC jx, jy, jz, jt;

    explicit SpinOps(HalfInt spin) : j(spin) {
        if (spin.twice < 0) {
            throw DomainError("spin must be non-negative");
        }
        const int dim = spin.twice + 1;
        const Real jv = static_cast<Real>(spin.twice) / 2;
        MatrixC jp = MatrixC::Zero(dim, dim);
        jz = MatrixC::Zero(dim, dim);
        for (int i = 0; i < dim; ++i) {
            const Real m = jv - i;
            jz(i, i) = m;
            if (i > 0) {
                // J+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>, and |m+1> has index i-1
                jp(i - 1, i) = std::sqrt(jv * (jv + 1) - m * (m + 1));
            }
        }
        const MatrixC jm = jp.adjoint();
        jx = 0.5 * (jp + jm);
        jy = ComplexL(0, Real(-0.5)) * (jp - jm);
        jt = jv * MatrixC::Identity(dim, dim);
    }

    int dim() const { return j.twice + 1; }

    static int index(HalfInt j, HalfInt m) { return (j.twice - m.twice) / 2; }
};

/// exp(i theta H) for Hermitian H.
inline MatrixC expm_hermitian(const MatrixC &h, Real theta) {
    Eigen::SelfAdjointEigenSolver<MatrixC> es(h);
    const auto &w = es.eigenvalues();
    VectorC phases(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        phases(i) = std::polar(Real(1), theta * w(i));
    }
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

struct DenseState {
    VectorC amplitudes; // index sys * meter_dim + k
    int system_dim = 0;
    int meter_dim = 0;

    double norm_squared() const { return static_cast<double>(amplitudes.squaredNorm()); }
};

struct JointEvolution {
    DenseState joint; // before projection
    VectorC phi;      // unnormalized postselected meter state K|M>
    double probability = 0.0;
};

namespace detail {

// Applies a system-only operator to every meter slice.
inline void apply_system(DenseState &s, const MatrixC &u) {
    Eigen::Map<Eigen::Matrix<ComplexL, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
        s.amplitudes.data(), s.system_dim, s.meter_dim);
    m = (u * m).eval();
}

} // namespace detail

inline JointEvolution evolve_joint(const ChannelParams &params, const MeterSpec &spec) {
    params.validate();
    const SpinOps ops(params.j);
    const int sd = ops.dim();
    const int md = spec.dimension();
    const Real n = spec.copies();
    constexpr Real half_pi = std::numbers::pi_v<Real> / 2;

    DenseState s;
    s.system_dim = sd;
    s.meter_dim = md;
    s.amplitudes = VectorC::Zero(static_cast<Eigen::Index>(sd) * md);
    const int i0 = SpinOps::index(params.j, params.m_i);
    const Real amp = 1 / std::sqrt(static_cast<Real>(md));
    for (int k = 0; k < md; ++k) {
        s.amplitudes(i0 * md + k) = amp;
    }

    detail::apply_system(s, expm_hermitian(ops.jx, -half_pi));

    // The coupling is diagonal in both factors.
    const MatrixC gen = ops.jt + ops.jz;
    for (int i = 0; i < sd; ++i) {
        const Real g = gen(i, i).real();
        for (int k = 0; k < md; ++k) {
            const Real u = spec.eigenvalues()[static_cast<std::size_t>(k)];
            s.amplitudes(i * md + k) *= std::polar(Real(1), Real(params.lambda) * g * n * u);
        }
    }

    detail::apply_system(s, expm_hermitian(ops.jt - ops.jz, params.theta));
    detail::apply_system(s, expm_hermitian(ops.jx, half_pi));

    JointEvolution out;
    out.joint = s;
    const int f0 = SpinOps::index(params.j, params.m_f);
    out.phi = s.amplitudes.segment(static_cast<Eigen::Index>(f0) * md, md);
    out.probability = static_cast<double>(out.phi.squaredNorm());
    return out;
}

struct FiniteDifferenceQfi {
    double i_perp = 0.0;     // 4 (<dpsi|dpsi> - |<psi|dpsi>|^2) on the normalized state
    double norm_sq = 0.0;    // <dpsi|dpsi>
    double overlap_sq = 0.0; // |<psi|dpsi>|^2
    double p = 0.0;          // ||Phi||^2 at lambda
    double q_total = 0.0;    // ||dPhi||^2
    double q_parallel = 0.0; // |<Phi|dPhi>|^2
};

inline double default_fd_step(double lambda) { return 1e-6 * (1.0 + std::abs(lambda)); }

namespace detail {

using Gauge = std::function<double(double)>;

inline FiniteDifferenceQfi fd_single(const ChannelParams &params, const MeterSpec &spec, double h,
                                     const Gauge &gauge) {
    if (!(h > 0.0) || params.lambda + h == params.lambda) {
        throw DomainError("finite-difference step underflows");
    }
    auto phi_at = [&](double lambda) {
        ChannelParams p = params;
        p.lambda = lambda;
        VectorC phi = evolve_joint(p, spec).phi;
        if (gauge) {
            phi *= std::polar(Real(1), static_cast<Real>(gauge(lambda)));
        }
        return phi;
    };
    const double lp = params.lambda + h;
    const double lm = params.lambda - h;
    const Real width = static_cast<Real>(lp) - static_cast<Real>(lm);
    const VectorC c = phi_at(params.lambda);
    const VectorC plus = phi_at(lp);
    const VectorC minus = phi_at(lm);
    const Real pc = c.squaredNorm();
    const Real pp = plus.squaredNorm();
    const Real pm = minus.squaredNorm();
    if (!(pc > kProbabilityFloor && pp > kProbabilityFloor && pm > kProbabilityFloor)) {
        throw VanishingPostselection("postselection probability at or below floor");
    }

    FiniteDifferenceQfi r;
    const VectorC dphi = (plus - minus) / width;
    r.p = static_cast<double>(pc);
    r.q_total = static_cast<double>(dphi.squaredNorm());
    r.q_parallel = static_cast<double>(std::norm(c.dot(dphi)));

    const VectorC psi = c / std::sqrt(pc);
    const VectorC dpsi = (plus / std::sqrt(pp) - minus / std::sqrt(pm)) / width;
    const ComplexL ov = psi.dot(dpsi);
    r.norm_sq = static_cast<double>(dpsi.squaredNorm());
    r.overlap_sq = static_cast<double>(std::norm(ov));
    // Project out psi before squaring instead of subtracting the two norms.
    r.i_perp = static_cast<double>(4 * (dpsi - ov * psi).squaredNorm());
    return r;
}

inline FiniteDifferenceQfi fd_qfi(const ChannelParams &params, const MeterSpec &spec, double h,
                                  bool richardson, const Gauge &gauge) {
    FiniteDifferenceQfi a = fd_single(params, spec, h, gauge);
    if (!richardson) {
        return a;
    }
    const FiniteDifferenceQfi b = fd_single(params, spec, 0.5 * h, gauge);
    auto rx = [](double coarse, double fine) { return (4.0 * fine - coarse) / 3.0; };
    a.i_perp = rx(a.i_perp, b.i_perp);
    a.norm_sq = rx(a.norm_sq, b.norm_sq);
    a.overlap_sq = rx(a.overlap_sq, b.overlap_sq);
    a.q_total = rx(a.q_total, b.q_total);
    a.q_parallel = rx(a.q_parallel, b.q_parallel);
    return a;
}

} // namespace detail

/// Central-difference QFI of the normalized postselected meter state.
inline FiniteDifferenceQfi qfi_finite_difference(const ChannelParams &params, const MeterSpec &spec,
                                                 double h = 0.0, bool richardson = false) {
    params.validate();
    if (h == 0.0) {
        h = default_fd_step(params.lambda);
    }
    return detail::fd_qfi(params, spec, h, richardson, {});
}

/// |I_gauged - I| after multiplying the state path by exp(i phi(lambda)),
/// phi(lambda) = sum_i coeffs[i] lambda^i.
inline double gauge_invariance_check(const ChannelParams &params, const MeterSpec &spec,
                                     const std::vector<double> &coeffs, double h = 0.0) {
    params.validate();
    if (h == 0.0) {
        h = default_fd_step(params.lambda);
    }
    auto phase = [coeffs](double lambda) {
        double acc = 0.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
            acc = acc * lambda + *it;
        }
        return acc;
    };
    const double plain = detail::fd_qfi(params, spec, h, false, {}).i_perp;
    const double gauged = detail::fd_qfi(params, spec, h, false, phase).i_perp;
    return std::abs(gauged - plain);
}

struct NoncyclicPhase {
    double total = 0.0;         // arg <chi(start)|chi(end)>
    double dynamic = 0.0;       // Im integral <chi|d chi>
    double geometric = 0.0;     // total - dynamic
    double dynamic_discrete = 0.0;   // sum of arg <chi_s|chi_{s+1}>
    double geometric_discrete = 0.0; // total - dynamic_discrete
};

/// Noncyclic phase along chi(lambda) = O_lambda |M>, lambda from start to end.
inline NoncyclicPhase noncyclic_geometric_phase(const MeterSpec &spec, double lambda_start,
                                                double lambda_end, int steps,
                                                double overlap_floor = 1e-12) {
    if (steps < 2) {
        throw DomainError("noncyclic phase needs at least 2 steps");
    }
    NoncyclicPhase r;
    if (lambda_start == lambda_end) {
        return r;
    }
    auto chi = [&](double lambda) {
        const auto diag = meter_diagonal(spec, lambda);
        Eigen::VectorXcd v(static_cast<Eigen::Index>(diag.size()));
        const double amp = 1.0 / std::sqrt(static_cast<double>(diag.size()));
        for (std::size_t k = 0; k < diag.size(); ++k) {
            v(static_cast<Eigen::Index>(k)) = amp * diag[k];
        }
        return v;
    };
    const Eigen::VectorXcd first = chi(lambda_start);
    const Complex tot = first.dot(chi(lambda_end));
    if (std::abs(tot) < overlap_floor) {
        throw ConjugatePoint("end points are orthogonal");
    }
    r.total = std::arg(tot);

    const double step = (lambda_end - lambda_start) / steps;
    Eigen::VectorXcd prev = first;
    double dyn = 0.0;
    double dyn_disc = 0.0;
    for (int s = 1; s <= steps; ++s) {
        const double lam = lambda_start + s * step;
        const Eigen::VectorXcd next = chi(lam);
        const Complex ov = prev.dot(next);
        if (std::abs(ov) < overlap_floor) {
            throw ConjugatePoint("successive states are orthogonal");
        }
        dyn_disc += std::arg(ov);
        dyn += parallel_transport_term(spec, lam - 0.5 * step).imag() * step;
        prev = next;
    }
    r.dynamic = dyn;
    r.dynamic_discrete = dyn_disc;
    r.geometric = r.total - r.dynamic;
    r.geometric_discrete = r.total - r.dynamic_discrete;
    return r;
}

/// |Im <chi|d chi>| on the normalized meter path, by central differences.
inline double parallel_transport_residual(const MeterSpec &spec, double lambda, double h = 1e-5) {
    const double amp = 1.0 / std::sqrt(static_cast<double>(spec.dimension()));
    const auto c = meter_diagonal(spec, lambda);
    const auto p = meter_diagonal(spec, lambda + h);
    const auto m = meter_diagonal(spec, lambda - h);
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k < c.size(); ++k) {
        acc += std::conj(amp * c[k]) * (amp * (p[k] - m[k])) / (2.0 * h);
    }
    return std::abs(acc.imag());
}

// ---------------------------------------------------------------------------
// Seeded analytic-vs-oracle regression matrix.

struct OracleMatrixConfig {
    int max_j_twice = 4;
    int max_d = 8;
    int max_n = 3;
    int points = 200;
    std::uint64_t seed = 42;
    double lambda_min = 1e-3;
    double lambda_max = 1.0;
    double q_scale = 1.0; // != 1 only as a negative control
    // Near-dark points (P ~ 1e-18) leave the plain default step at ~7e-7;
    // Richardson on a slightly wider step keeps the worst case near 1e-8.
    bool richardson = true;
    double fd_step_scale = 1e-5; // h = scale (1 + |lambda|); 0 selects default_fd_step
    double qfi_rel_tol = OracleTolerances::qfi_rel;
    double qfi_abs_tol = OracleTolerances::qfi_abs;
    double prob_abs_tol = OracleTolerances::prob_abs;
};

struct OracleMatrixReport {
    int points = 0;
    int skipped = 0; // points at the probability floor
    double worst_prob_abs = 0.0;
    double worst_qfi_rel = 0.0;   // |I_fd - I| / max(I, abs_tol / rel_tol)
    double worst_qtotal_rel = 0.0;
    double worst_qpar_rel = 0.0;
    std::vector<std::string> failures;

    bool passed() const { return failures.empty(); }
};

inline std::string describe_point(const ChannelParams &p, const MeterSpec &spec) {
    std::ostringstream os;
    os.precision(17);
    os << "j=" << p.j.str() << " m_i=" << p.m_i.str() << " m_f=" << p.m_f.str()
       << " law=" << to_string(spec.law()) << " d=" << spec.dimension() << " n=" << spec.copies()
       << " lambda=" << p.lambda << " theta=" << p.theta;
    return os.str();
}

inline OracleMatrixReport run_oracle_matrix(const OracleMatrixConfig &cfg) {
    if (cfg.max_j_twice < 1 || cfg.max_j_twice > 8 || cfg.max_d < 2 || cfg.max_n < 1 ||
        cfg.points < 1 || !(cfg.lambda_min > 0.0) || !(cfg.lambda_max >= cfg.lambda_min)) {
        throw DomainError("oracle matrix bounds out of range");
    }
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<int> jdist(1, cfg.max_j_twice);
    std::uniform_int_distribution<int> ddist(2, cfg.max_d);
    std::uniform_int_distribution<int> ndist(1, cfg.max_n);
    std::uniform_int_distribution<int> lawdist(0, 2);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double log_lo = std::log(cfg.lambda_min);
    const double log_hi = std::log(cfg.lambda_max);

    OracleMatrixReport rep;
    for (int i = 0; i < cfg.points; ++i) {
        const HalfInt j{jdist(rng)};
        const int d = ddist(rng);
        const int n = ndist(rng);
        const int law = lawdist(rng);
        const double eps = 0.1 + 0.9 * unit(rng);
        const double lambda = std::exp(log_lo + (log_hi - log_lo) * unit(rng));
        const double theta = 2.0 * std::numbers::pi * unit(rng);
        // Extremal selection on even points, random magnetic numbers otherwise.
        HalfInt m_i = j;
        HalfInt m_f = -j;
        if (i % 2 == 1) {
            std::uniform_int_distribution<int> mdist(0, j.twice);
            m_i = HalfInt{j.twice - 2 * mdist(rng)};
            m_f = HalfInt{j.twice - 2 * mdist(rng)};
        }
        const MeterSpec spec = law == 0   ? MeterSpec::pancharatnam(d, n)
                               : law == 1 ? MeterSpec::symmetric(d, n)
                                          : MeterSpec::fractional(d, n, eps);
        const ChannelParams params{lambda, theta, j, m_i, m_f};

        ChannelSums sums = channel_sums(params, spec);
        sums.q_total *= cfg.q_scale;
        sums.overlap *= std::sqrt(cfg.q_scale);
        FiniteDifferenceQfi fd;
        QfiBreakdown an;
        try {
            an = breakdown_from_sums(sums, j, n);
            fd = qfi_finite_difference(
                params, spec, cfg.fd_step_scale * (1.0 + std::abs(lambda)), cfg.richardson);
        } catch (const VanishingPostselection &) {
            ++rep.skipped;
            continue;
        }
        ++rep.points;

        const double prob_err = std::abs(fd.p - an.p);
        const double scale = std::max(an.i_perp, cfg.qfi_abs_tol / cfg.qfi_rel_tol);
        const double qfi_rel = std::abs(fd.i_perp - an.i_perp) / scale;
        const double qt_rel =
            std::abs(fd.q_total - an.q_total) / std::max(an.q_total, cfg.qfi_abs_tol);
        const double qp_rel =
            std::abs(fd.q_parallel - an.q_parallel) / std::max(an.q_parallel, cfg.qfi_abs_tol);
        rep.worst_prob_abs = std::max(rep.worst_prob_abs, prob_err);
        rep.worst_qfi_rel = std::max(rep.worst_qfi_rel, qfi_rel);
        rep.worst_qtotal_rel = std::max(rep.worst_qtotal_rel, qt_rel);
        rep.worst_qpar_rel = std::max(rep.worst_qpar_rel, qp_rel);

        const bool qfi_ok = std::abs(fd.i_perp - an.i_perp) <=
                            std::max(cfg.qfi_rel_tol * an.i_perp, cfg.qfi_abs_tol);
        if (!qfi_ok || prob_err > cfg.prob_abs_tol) {
            std::ostringstream os;
            os.precision(17);
            os << describe_point(params, spec) << " I_perp=" << an.i_perp
               << " I_fd=" << fd.i_perp << " P=" << an.p << " P_oracle=" << fd.p;
            rep.failures.push_back(os.str());
        }
    }
    return rep;
}

} // namespace pqfi
