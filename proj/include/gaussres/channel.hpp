#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gaussres/factory.hpp"
#include "gaussres/state.hpp"
#include "gaussres/symplectic.hpp"

namespace gaussres {

// Gaussian channel in moment form: d -> T d + v, V -> T V T^T + N.
struct GaussianChannel {
    ModeTable modes;
    Eigen::MatrixXd T;
    Eigen::MatrixXd N;
    Eigen::VectorXd v;

    GaussianChannel(ModeTable modes_, Eigen::MatrixXd T_, Eigen::MatrixXd N_, Eigen::VectorXd v_)
        : modes(std::move(modes_)), T(std::move(T_)), N(std::move(N_)), v(std::move(v_)) {
        const int n = modes.dim();
        if (T.rows() != n || T.cols() != n || N.rows() != n || N.cols() != n || v.size() != n)
            throw std::invalid_argument("GaussianChannel: matrix dimensions do not match mode table");
    }
};

enum class ChannelVerdict { ok, not_cp, malformed };

struct ChannelValidation {
    struct Violation {
        std::string invariant;
        double residual = 0.0;
        std::string detail;
    };
    bool ok = true;
    ChannelVerdict verdict = ChannelVerdict::ok;
    std::vector<Violation> violations;

    void add(ChannelVerdict kind, std::string invariant, double residual, std::string detail) {
        ok = false;
        if (verdict != ChannelVerdict::malformed)
            verdict = kind;
        violations.push_back({std::move(invariant), residual, std::move(detail)});
    }
};

// Checks N >= 0 and the complete-positivity condition
// N + i(Omega - T Omega T^T) >= 0, along with symmetry and finiteness of the
// noise block. Residuals report the most negative eigenvalue found.
[[nodiscard]] inline ChannelValidation validate_channel(const GaussianChannel& ch,
                                                        double tol = 1e-9) {
    ChannelValidation result;
    if (!ch.T.allFinite() || !ch.N.allFinite() || !ch.v.allFinite()) {
        result.add(ChannelVerdict::malformed, "finite", std::numeric_limits<double>::infinity(),
                   "channel contains NaN or infinite entries");
        return result;
    }
    const double n_scale = std::max(1.0, ch.N.cwiseAbs().maxCoeff());
    const double sym_residual = (ch.N - ch.N.transpose()).cwiseAbs().maxCoeff();
    if (sym_residual > tol * n_scale)
        result.add(ChannelVerdict::malformed, "noise_symmetric", sym_residual,
                   "noise block N is not symmetric");

    const int M = ch.modes.mode_count();
    const Eigen::MatrixXd sym_n = 0.5 * (ch.N + ch.N.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> n_eig(sym_n, Eigen::EigenvaluesOnly);
    if (n_eig.info() == Eigen::Success) {
        const double n_min = n_eig.eigenvalues().minCoeff();
        if (n_min < -tol * n_scale)
            result.add(ChannelVerdict::not_cp, "noise_psd", -n_min,
                       "noise block N has a negative eigenvalue");
    }

    const Eigen::MatrixXd omega = symplectic_form(M);
    const Eigen::MatrixXd defect = omega - ch.T * omega * ch.T.transpose();
    Eigen::MatrixXcd cp = sym_n.cast<std::complex<double>>();
    cp += std::complex<double>(0.0, 1.0) * defect.cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(cp, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success) {
        result.add(ChannelVerdict::malformed, "complete_positivity",
                   std::numeric_limits<double>::infinity(),
                   "eigenvalue computation failed on the CP matrix");
        return result;
    }
    const double cp_scale = std::max({1.0, n_scale, ch.T.cwiseAbs().maxCoeff() *
                                                        ch.T.cwiseAbs().maxCoeff()});
    const double min_eig = eig.eigenvalues().minCoeff();
    if (min_eig < -tol * cp_scale)
        result.add(ChannelVerdict::not_cp, "complete_positivity", -min_eig,
                   "N + i(Omega - T Omega T^T) has a negative eigenvalue");
    return result;
}

inline void require_valid_channel(const GaussianChannel& ch, double tol = 1e-9) {
    const ChannelValidation result = validate_channel(ch, tol);
    if (result.ok)
        return;
    std::string msg = "channel is not completely positive:";
    for (const auto& violation : result.violations)
        msg += " [" + violation.invariant + "] " + violation.detail +
               " (residual " + std::to_string(violation.residual) + ")";
    throw std::invalid_argument(msg);
}

[[nodiscard]] inline GaussianState apply_channel(const GaussianState& s, const GaussianChannel& ch,
                                                 double tol = 1e-9) {
    if (s.modes != ch.modes)
        throw std::invalid_argument("apply_channel: state and channel registers differ");
    require_valid_channel(ch, tol);
    Eigen::MatrixXd V = ch.T * s.V * ch.T.transpose() + ch.N;
    V = 0.5 * (V + V.transpose()).eval();
    return GaussianState(s.modes, ch.T * s.d + ch.v, std::move(V));
}

// compose(second, first) acts as first, then second.
[[nodiscard]] inline GaussianChannel compose(const GaussianChannel& second,
                                             const GaussianChannel& first) {
    if (second.modes != first.modes)
        throw std::invalid_argument("compose: channel registers differ");
    Eigen::MatrixXd N = second.T * first.N * second.T.transpose() + second.N;
    N = 0.5 * (N + N.transpose()).eval();
    return GaussianChannel(first.modes, second.T * first.T, std::move(N),
                           second.T * first.v + second.v);
}

// ---------------------------------------------------------------------------
// intra-group channels
// ---------------------------------------------------------------------------

// One-mode-to-one-mode wiring inside frequency sectors: output mode j takes
// input mode source[j] through gain t_j, an orthogonal quadrature rotation,
// and isotropic added noise w_j. v = 0, so displacements are only rescaled.
struct IGChannelSpec {
    ModeTable modes;
    std::vector<int> source;
    Eigen::VectorXd t;
    std::vector<Eigen::Matrix2d> rotation;
    Eigen::VectorXd w;

    explicit IGChannelSpec(ModeTable modes_)
        : modes(std::move(modes_)),
          source(static_cast<std::size_t>(modes.mode_count())),
          t(Eigen::VectorXd::Ones(modes.mode_count())),
          rotation(static_cast<std::size_t>(modes.mode_count()), Eigen::Matrix2d::Identity()),
          w(Eigen::VectorXd::Zero(modes.mode_count())) {
        std::iota(source.begin(), source.end(), 0);
    }
};

// For a 2x2 block t O the CP condition reduces per mode to
// w >= |1 - t^2 det O|, since A Omega_2 A^T = det(A) Omega_2.
[[nodiscard]] inline GaussianChannel make_ig_channel(const IGChannelSpec& spec,
                                                     double tol = 1e-9) {
    const int M = spec.modes.mode_count();
    if (static_cast<int>(spec.source.size()) != M || spec.t.size() != M ||
        static_cast<int>(spec.rotation.size()) != M || spec.w.size() != M)
        throw std::invalid_argument("make_ig_channel: per-mode arrays do not match mode count");

    std::vector<bool> hit(static_cast<std::size_t>(M), false);
    for (int j = 0; j < M; ++j) {
        const int src = spec.source[static_cast<std::size_t>(j)];
        if (src < 0 || src >= M || hit[static_cast<std::size_t>(src)])
            throw std::invalid_argument("make_ig_channel: source is not a permutation of the modes");
        hit[static_cast<std::size_t>(src)] = true;
        if (spec.modes.frequency_of(j) != spec.modes.frequency_of(src))
            throw std::invalid_argument(
                "make_ig_channel: source wiring couples distinct frequencies (mode " +
                std::to_string(j) + " <- mode " + std::to_string(src) + ")");
    }

    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(2 * M, 2 * M);
    Eigen::MatrixXd N = Eigen::MatrixXd::Zero(2 * M, 2 * M);
    for (int j = 0; j < M; ++j) {
        const Eigen::Matrix2d& O = spec.rotation[static_cast<std::size_t>(j)];
        const double ortho = (O.transpose() * O - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff();
        if (ortho > 1e-8)
            throw std::invalid_argument("make_ig_channel: rotation block " + std::to_string(j) +
                                        " is not orthogonal (residual " + std::to_string(ortho) + ")");
        const double t = spec.t(j);
        if (!(t >= 0.0))
            throw std::invalid_argument("make_ig_channel: gains must be non-negative");
        if (!(spec.w(j) >= 0.0))
            throw std::invalid_argument("make_ig_channel: noise weights must be non-negative");
        const double needed = std::abs(1.0 - t * t * O.determinant());
        if (spec.w(j) < needed - tol) {
            std::ostringstream msg;
            msg << "make_ig_channel: mode " << j << " violates complete positivity: w = "
                << spec.w(j) << " but the minimal admissible noise for t = " << t
                << " is w = " << needed;
            throw std::invalid_argument(msg.str());
        }
        T.block<2, 2>(2 * j, 2 * spec.source[static_cast<std::size_t>(j)]) = t * O;
        N.block<2, 2>(2 * j, 2 * j) = spec.w(j) * Eigen::Matrix2d::Identity();
    }
    return GaussianChannel(spec.modes, std::move(T), std::move(N),
                           Eigen::VectorXd::Zero(2 * M));
}

// ---------------------------------------------------------------------------
// global-noise channels
// ---------------------------------------------------------------------------

// Register for system plus environment; within each frequency sector the
// system modes come first, matching tensor_product order. Environment counts
// default to one ancilla per system mode; zero is allowed (unitary limit).
[[nodiscard]] inline ModeTable gn_joint_table(const ModeTable& system,
                                              std::vector<int> env_counts = {}) {
    if (env_counts.empty())
        env_counts = system.spatial_counts();
    if (static_cast<int>(env_counts.size()) != system.frequency_count())
        throw std::invalid_argument("gn_joint_table: one environment count per frequency required");
    std::vector<int> joint_counts = system.spatial_counts();
    for (int f = 0; f < system.frequency_count(); ++f) {
        if (env_counts[static_cast<std::size_t>(f)] < 0)
            throw std::invalid_argument("gn_joint_table: environment counts must be >= 0");
        joint_counts[static_cast<std::size_t>(f)] += env_counts[static_cast<std::size_t>(f)];
    }
    return ModeTable(system.omegas(), joint_counts);
}

// rho -> Tr_E[ U (rho (x) tau_E) U^dagger ] with U passive on the joint
// register and tau_E uniform at env_delta per frequency. With O split into
// system/environment blocks this is T = O_SS, N = O_SE V_E O_SE^T, v = 0;
// the channel is completely positive by construction.
[[nodiscard]] inline GaussianChannel make_gn_channel(const ModeTable& system,
                                                     const PassiveUnitary& joint,
                                                     const Eigen::VectorXd& env_delta,
                                                     std::vector<int> env_counts = {}) {
    if (env_counts.empty())
        env_counts = system.spatial_counts();
    const ModeTable joint_table = gn_joint_table(system, env_counts);
    if (joint.modes != joint_table)
        throw std::invalid_argument(
            "make_gn_channel: joint passive transform does not act on system + environment");
    if (env_delta.size() != system.frequency_count())
        throw std::invalid_argument("make_gn_channel: one environment occupation per frequency");
    for (int f = 0; f < env_delta.size(); ++f)
        if (!(env_delta(f) >= 0.0) || !std::isfinite(env_delta(f)))
            throw std::invalid_argument("make_gn_channel: environment occupations must be >= 0");

    std::vector<int> sys_modes;
    std::vector<int> env_modes;
    std::vector<double> env_mode_delta;
    for (int f = 0; f < system.frequency_count(); ++f) {
        const int base = joint_table.first_mode(f);
        const int ms = system.spatial_count(f);
        for (int k = 0; k < ms; ++k) sys_modes.push_back(base + k);
        for (int k = 0; k < env_counts[static_cast<std::size_t>(f)]; ++k) {
            env_modes.push_back(base + ms + k);
            env_mode_delta.push_back(env_delta(f));
        }
    }

    const int M = system.mode_count();
    const int ME = static_cast<int>(env_modes.size());
    Eigen::MatrixXd O_SS(2 * M, 2 * M);
    Eigen::MatrixXd O_SE(2 * M, 2 * ME);
    for (int r = 0; r < M; ++r) {
        for (int c = 0; c < M; ++c)
            O_SS.block<2, 2>(2 * r, 2 * c) =
                joint.O.block<2, 2>(2 * sys_modes[static_cast<std::size_t>(r)],
                                    2 * sys_modes[static_cast<std::size_t>(c)]);
        for (int c = 0; c < ME; ++c)
            O_SE.block<2, 2>(2 * r, 2 * c) =
                joint.O.block<2, 2>(2 * sys_modes[static_cast<std::size_t>(r)],
                                    2 * env_modes[static_cast<std::size_t>(c)]);
    }
    Eigen::VectorXd env_diag(2 * ME);
    for (int c = 0; c < ME; ++c)
        env_diag.segment<2>(2 * c).setConstant(2.0 * env_mode_delta[static_cast<std::size_t>(c)] +
                                               1.0);
    Eigen::MatrixXd N = O_SE * env_diag.asDiagonal() * O_SE.transpose();
    N = 0.5 * (N + N.transpose()).eval();
    return GaussianChannel(system, std::move(O_SS), std::move(N), Eigen::VectorXd::Zero(2 * M));
}

[[nodiscard]] inline GaussianChannel random_gn_channel(const ModeTable& system,
                                                       const Eigen::VectorXd& env_delta,
                                                       std::mt19937_64& rng,
                                                       std::vector<int> env_counts = {}) {
    if (env_counts.empty())
        env_counts = system.spatial_counts();
    const ModeTable joint_table = gn_joint_table(system, env_counts);
    return make_gn_channel(system, random_passive(joint_table, rng), env_delta,
                           std::move(env_counts));
}

// ---------------------------------------------------------------------------
// uniformity preservation
// ---------------------------------------------------------------------------

// True iff the channel fixes the uniform state described by spec, compared
// entrywise in (d, V).
[[nodiscard]] inline bool is_uniformity_preserving(const GaussianChannel& ch,
                                                   const UniformSpec& spec, double tol = 1e-8) {
    if (ch.modes != spec.modes)
        throw std::invalid_argument("is_uniformity_preserving: channel and spec registers differ");
    const GaussianState fixed = uniform_state(spec);
    const GaussianState out = apply_channel(fixed, ch, tol);
    const double scale = std::max(1.0, fixed.V.cwiseAbs().maxCoeff());
    return (out.d - fixed.d).cwiseAbs().maxCoeff() <= tol * scale &&
           (out.V - fixed.V).cwiseAbs().maxCoeff() <= tol * scale;
}

}  // namespace gaussres
