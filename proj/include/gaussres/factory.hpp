#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "gaussres/modes.hpp"
#include "gaussres/state.hpp"
#include "gaussres/symplectic.hpp"

namespace gaussres {

struct ThermalSpec {
    ModeTable modes;
    Eigen::VectorXd nbar;  // one entry per mode, >= 0
};

struct UniformSpec {
    ModeTable modes;
    Eigen::VectorXd budget;  // per-frequency total occupation N_omega, >= 0
};

// d = 0, V = (+)_m (2 nbar_m + 1) I_2.
[[nodiscard]] inline GaussianState thermal_state(const ThermalSpec& spec) {
    const int M = spec.modes.mode_count();
    if (spec.nbar.size() != M)
        throw std::invalid_argument("thermal_state: need one occupation per mode");
    Eigen::VectorXd diag(2 * M);
    for (int m = 0; m < M; ++m) {
        if (spec.nbar(m) < 0.0)
            throw std::invalid_argument("thermal_state: occupations must be >= 0");
        diag.segment<2>(2 * m).setConstant(2.0 * spec.nbar(m) + 1.0);
    }
    return {spec.modes, Eigen::VectorXd::Zero(2 * M), Eigen::MatrixXd(diag.asDiagonal())};
}

[[nodiscard]] inline GaussianState thermal_state(const ModeTable& modes, double nbar) {
    return thermal_state({modes, Eigen::VectorXd::Constant(modes.mode_count(), nbar)});
}

// Maximum-entropy state at fixed per-frequency occupation: every mode of
// sector omega carries delta_omega = N_omega / M_s.
[[nodiscard]] inline GaussianState uniform_state(const UniformSpec& spec) {
    if (spec.budget.size() != spec.modes.frequency_count())
        throw std::invalid_argument("uniform_state: need one budget per frequency");
    Eigen::VectorXd nbar(spec.modes.mode_count());
    for (int f = 0; f < spec.modes.frequency_count(); ++f) {
        if (spec.budget(f) < 0.0)
            throw std::invalid_argument("uniform_state: budgets must be >= 0");
        const double delta = spec.budget(f) / spec.modes.spatial_count(f);
        for (int j = 0; j < spec.modes.spatial_count(f); ++j)
            nbar(spec.modes.first_mode(f) + j) = delta;
    }
    return thermal_state({spec.modes, nbar});
}

// The uniform state sharing s's per-frequency occupations (its closest free
// state at fixed energy).
[[nodiscard]] inline GaussianState uniform_reference(const GaussianState& s) {
    return uniform_state({s.modes, mean_occupation(s).per_frequency});
}

[[nodiscard]] inline GaussianState coherent_state(const ModeTable& modes,
                                                  const std::vector<std::complex<double>>& alpha) {
    const int M = modes.mode_count();
    if (static_cast<int>(alpha.size()) != M)
        throw std::invalid_argument("coherent_state: need one amplitude per mode");
    Eigen::VectorXd d(2 * M);
    const double sqrt2 = std::sqrt(2.0);
    for (int m = 0; m < M; ++m) {
        d(2 * m) = sqrt2 * alpha[static_cast<std::size_t>(m)].real();
        d(2 * m + 1) = sqrt2 * alpha[static_cast<std::size_t>(m)].imag();
    }
    return {modes, std::move(d), Eigen::MatrixXd::Identity(2 * M, 2 * M)};
}

// Per-mode squeezed vacuum: V_m = R(theta) diag(e^-2r, e^2r) R(theta)^T,
// which carries nbar = sinh^2 r.
[[nodiscard]] inline GaussianState squeezed_vacuum(const ModeTable& modes,
                                                   const Eigen::VectorXd& r,
                                                   const Eigen::VectorXd& theta) {
    const int M = modes.mode_count();
    if (r.size() != M || theta.size() != M)
        throw std::invalid_argument("squeezed_vacuum: need r and theta per mode");
    Eigen::MatrixXd V = Eigen::MatrixXd::Zero(2 * M, 2 * M);
    for (int m = 0; m < M; ++m) {
        Eigen::Matrix2d Z;
        Z << std::exp(-2.0 * r(m)), 0.0, 0.0, std::exp(2.0 * r(m));
        Eigen::Matrix2d R;
        const double c = std::cos(theta(m)), s = std::sin(theta(m));
        R << c, -s, s, c;
        V.block<2, 2>(2 * m, 2 * m) = R * Z * R.transpose();
    }
    return {modes, Eigen::VectorXd::Zero(2 * M), std::move(V)};
}

[[nodiscard]] inline GaussianState squeezed_vacuum(const ModeTable& modes, double r) {
    return squeezed_vacuum(modes, Eigen::VectorXd::Constant(modes.mode_count(), r),
                           Eigen::VectorXd::Zero(modes.mode_count()));
}

// Two-mode squeezed vacuum embedded at (m1, m2), vacuum elsewhere. Diagonal
// blocks cosh(2r) I, off-diagonal sinh(2r) diag(1,-1); both marginals are
// thermal with nbar = sinh^2 r. Pairs of unequal frequency never arise from
// energy-preserving optics, so they are refused unless explicitly allowed.
[[nodiscard]] inline GaussianState two_mode_squeezed(const ModeTable& modes, int m1, int m2,
                                                     double r,
                                                     bool allow_mixed_frequency = false) {
    if (m1 == m2 || m1 < 0 || m2 < 0 || m1 >= modes.mode_count() || m2 >= modes.mode_count())
        throw std::invalid_argument("two_mode_squeezed: need two distinct valid modes");
    if (!allow_mixed_frequency && modes.frequency_of(m1) != modes.frequency_of(m2))
        throw std::invalid_argument(
            "two_mode_squeezed: modes have different frequencies (pass "
            "allow_mixed_frequency to override)");
    const double c = std::cosh(2.0 * r);
    const double s = std::sinh(2.0 * r);
    Eigen::MatrixXd V = Eigen::MatrixXd::Identity(modes.dim(), modes.dim());
    V.block<2, 2>(2 * m1, 2 * m1) = c * Eigen::Matrix2d::Identity();
    V.block<2, 2>(2 * m2, 2 * m2) = c * Eigen::Matrix2d::Identity();
    Eigen::Matrix2d off;
    off << s, 0.0, 0.0, -s;
    V.block<2, 2>(2 * m1, 2 * m2) = off;
    V.block<2, 2>(2 * m2, 2 * m1) = off;
    return {modes, Eigen::VectorXd::Zero(modes.dim()), std::move(V)};
}

struct RandomStateParams {
    double r_max = 2.0;
    double nbar_max = 3.0;
    double displacement_scale = 1.0;
};

// V = S diag(nu) S^T with a random symplectic S and nu_m = 2u + 1,
// u ~ U[0, nbar_max]; displacement entries are N(0, scale^2).
[[nodiscard]] inline GaussianState random_state(const ModeTable& modes, std::mt19937_64& rng,
                                                const RandomStateParams& params = {}) {
    if (params.nbar_max < 0.0 || params.displacement_scale < 0.0)
        throw std::invalid_argument("random_state: parameters must be >= 0");
    const SymplecticMatrix S = random_symplectic(modes, rng, params.r_max);
    std::uniform_real_distribution<double> uni(0.0, params.nbar_max);
    Eigen::VectorXd diag(modes.dim());
    for (int m = 0; m < modes.mode_count(); ++m) {
        const double u = (params.nbar_max > 0.0) ? uni(rng) : 0.0;
        diag.segment<2>(2 * m).setConstant(2.0 * u + 1.0);
    }
    Eigen::MatrixXd V = S.S * diag.asDiagonal() * S.S.transpose();
    V = 0.5 * (V + V.transpose()).eval();
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd d(modes.dim());
    for (int i = 0; i < modes.dim(); ++i) {
        const double g = gauss(rng);
        d(i) = params.displacement_scale * g;
    }
    return {modes, std::move(d), std::move(V)};
}

// Thermal symplectic eigenvalue of a mode at frequency omega and temperature
// T (hbar = k_B = 1): nu = 2 nbar + 1 with the Bose-Einstein occupation
// nbar = 1 / (exp(omega / T) - 1); T = 0 gives the vacuum value 1.
[[nodiscard]] inline double nu_from_temperature(double omega, double temperature) {
    if (!(omega > 0.0))
        throw std::invalid_argument("nu_from_temperature: omega must be > 0");
    if (temperature < 0.0)
        throw std::invalid_argument("nu_from_temperature: temperature must be >= 0");
    if (temperature == 0.0)
        return 1.0;
    const double nbar = 1.0 / std::expm1(omega / temperature);
    return 1.0 + 2.0 * nbar;
}

}  // namespace gaussres
