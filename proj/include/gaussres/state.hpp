#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "gaussres/modes.hpp"

namespace gaussres {

// Conventions used throughout:
//   * quadratures interleaved per mode: r = (q1, p1, q2, p2, ...)
//   * covariance normalized so the vacuum has V = I and a thermal mode
//     has V = (2*nbar + 1) I; displacement of a coherent state alpha is
//     d = (sqrt(2) Re alpha, sqrt(2) Im alpha)
//   * hbar = 1, frequencies are dimensionless energy multipliers
struct GaussianState {
    ModeTable modes;
    Eigen::VectorXd d;  // length 2M
    Eigen::MatrixXd V;  // 2M x 2M, symmetric

    GaussianState(ModeTable m, Eigen::VectorXd d_, Eigen::MatrixXd V_)
        : modes(std::move(m)), d(std::move(d_)), V(std::move(V_)) {
        if (d.size() != modes.dim() || V.rows() != modes.dim() || V.cols() != modes.dim())
            throw std::invalid_argument(
                "GaussianState: phase-space dimensions do not match the mode table (expected " +
                std::to_string(modes.dim()) + ")");
    }
};

// Symplectic form Omega = blkdiag([[0,1],[-1,0]], ...): Omega^2 = -I.
[[nodiscard]] inline Eigen::MatrixXd symplectic_form(int mode_count) {
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * mode_count, 2 * mode_count);
    for (int m = 0; m < mode_count; ++m) {
        omega(2 * m, 2 * m + 1) = 1.0;
        omega(2 * m + 1, 2 * m) = -1.0;
    }
    return omega;
}

[[nodiscard]] inline GaussianState vacuum_state(const ModeTable& modes) {
    return {modes, Eigen::VectorXd::Zero(modes.dim()),
            Eigen::MatrixXd::Identity(modes.dim(), modes.dim())};
}

// ---------------------------------------------------------------------------
// validation
// ---------------------------------------------------------------------------

struct StateValidation {
    struct Violation {
        std::string invariant;
        double residual;
        std::string detail;
    };
    bool ok = true;
    std::vector<Violation> violations;

    void add(std::string invariant, double residual, std::string detail = {}) {
        ok = false;
        violations.push_back({std::move(invariant), residual, std::move(detail)});
    }
};

// Checks symmetry of V and physicality V + i*Omega >= 0 (equivalently all
// symplectic eigenvalues >= 1). Dimension mismatches are structural and are
// caught by the GaussianState constructor, not reported here.
[[nodiscard]] inline StateValidation validate_state(const GaussianState& s, double tol = 1e-9) {
    StateValidation out;
    if (!s.d.allFinite() || !s.V.allFinite()) {
        out.add("finite", std::numeric_limits<double>::infinity(), "non-finite entries");
        return out;
    }
    const double sym = (s.V - s.V.transpose()).cwiseAbs().maxCoeff();
    const double scale = 1.0 + s.V.cwiseAbs().maxCoeff();
    if (sym > tol * scale)
        out.add("symmetry", sym, "V differs from its transpose");

    Eigen::MatrixXcd h = s.V.cast<std::complex<double>>();
    h += std::complex<double>(0.0, 1.0) * symplectic_form(s.modes.mode_count());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (h + h.adjoint()),
                                                       Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -tol * scale)
        out.add("physicality", -min_eig,
                "V + i*Omega has negative eigenvalue " + std::to_string(min_eig) +
                    " (some symplectic eigenvalue < 1)");
    return out;
}

inline void require_valid(const GaussianState& s, double tol = 1e-9) {
    const StateValidation v = validate_state(s, tol);
    if (!v.ok) {
        std::string msg = "invalid Gaussian state:";
        for (const auto& violation : v.violations)
            msg += " [" + violation.invariant + " residual " + std::to_string(violation.residual) + "]";
        throw std::invalid_argument(msg);
    }
}

// ---------------------------------------------------------------------------
// occupations
// ---------------------------------------------------------------------------

struct OccupationProfile {
    Eigen::VectorXd per_mode;       // nbar_m
    Eigen::VectorXd per_frequency;  // N_omega
    double total = 0.0;             // <N>
    double energy = 0.0;            // <H> = sum omega * N_omega
};

// nbar_m = (tr V_m + 2 |d_m|^2 - 2) / 4 per mode.
[[nodiscard]] inline OccupationProfile mean_occupation(const GaussianState& s) {
    const int M = s.modes.mode_count();
    OccupationProfile p;
    p.per_mode.resize(M);
    for (int m = 0; m < M; ++m) {
        const double tr = s.V(2 * m, 2 * m) + s.V(2 * m + 1, 2 * m + 1);
        const double dd = s.d(2 * m) * s.d(2 * m) + s.d(2 * m + 1) * s.d(2 * m + 1);
        p.per_mode(m) = 0.25 * (tr + 2.0 * dd - 2.0);
    }
    p.per_frequency = Eigen::VectorXd::Zero(s.modes.frequency_count());
    for (int f = 0; f < s.modes.frequency_count(); ++f)
        for (int j = 0; j < s.modes.spatial_count(f); ++j)
            p.per_frequency(f) += p.per_mode(s.modes.first_mode(f) + j);
    p.total = p.per_frequency.sum();
    for (int f = 0; f < s.modes.frequency_count(); ++f)
        p.energy += s.modes.omega(f) * p.per_frequency(f);
    return p;
}

// ---------------------------------------------------------------------------
// partial trace and tensor product
// ---------------------------------------------------------------------------

// Partial trace onto `keep` (flat mode indices, any order; result follows the
// ascending flat order). Frequencies that lose all modes are dropped.
[[nodiscard]] inline GaussianState reduced_state(const GaussianState& s, std::vector<int> keep) {
    if (keep.empty())
        throw std::invalid_argument("reduced_state: keep set must be non-empty");
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    if (keep.front() < 0 || keep.back() >= s.modes.mode_count())
        throw std::out_of_range("reduced_state: mode index out of range");

    std::vector<double> omegas;
    std::vector<int> counts;
    for (int m : keep) {
        const double w = s.modes.omega(s.modes.frequency_of(m));
        if (omegas.empty() || omegas.back() != w) {
            omegas.push_back(w);
            counts.push_back(1);
        } else {
            ++counts.back();
        }
    }
    ModeTable table(std::move(omegas), std::move(counts));

    const int M = static_cast<int>(keep.size());
    Eigen::VectorXd d(2 * M);
    Eigen::MatrixXd V(2 * M, 2 * M);
    for (int a = 0; a < M; ++a) {
        d.segment<2>(2 * a) = s.d.segment<2>(2 * keep[a]);
        for (int b = 0; b < M; ++b)
            V.block<2, 2>(2 * a, 2 * b) = s.V.block<2, 2>(2 * keep[a], 2 * keep[b]);
    }
    return {std::move(table), std::move(d), std::move(V)};
}

// Tensor product with the combined register re-sorted into frequency-major
// order (a's modes precede b's within a shared frequency). Frequencies match
// by exact value.
[[nodiscard]] inline GaussianState tensor_product(const GaussianState& a, const GaussianState& b) {
    struct Sector {
        int count_a = 0;
        int count_b = 0;
    };
    std::map<double, Sector> sectors;
    for (int f = 0; f < a.modes.frequency_count(); ++f)
        sectors[a.modes.omega(f)].count_a += a.modes.spatial_count(f);
    for (int f = 0; f < b.modes.frequency_count(); ++f)
        sectors[b.modes.omega(f)].count_b += b.modes.spatial_count(f);

    std::vector<double> omegas;
    std::vector<int> counts;
    for (const auto& [w, sec] : sectors) {
        omegas.push_back(w);
        counts.push_back(sec.count_a + sec.count_b);
    }
    ModeTable table(std::move(omegas), std::move(counts));

    // old flat index -> merged flat index, a first within each sector
    const int Ma = a.modes.mode_count();
    const int M = table.mode_count();
    std::vector<int> map_a(Ma), map_b(b.modes.mode_count());
    {
        std::map<double, int> cursor;
        int base = 0;
        for (const auto& [w, sec] : sectors) {
            cursor[w] = base;
            base += sec.count_a + sec.count_b;
        }
        for (int m = 0; m < Ma; ++m)
            map_a[m] = cursor[a.modes.omega(a.modes.frequency_of(m))]++;
        for (int m = 0; m < b.modes.mode_count(); ++m)
            map_b[m] = cursor[b.modes.omega(b.modes.frequency_of(m))]++;
    }

    Eigen::VectorXd d = Eigen::VectorXd::Zero(2 * M);
    Eigen::MatrixXd V = Eigen::MatrixXd::Zero(2 * M, 2 * M);
    auto place = [&](const GaussianState& src, const std::vector<int>& map) {
        const int n = src.modes.mode_count();
        for (int i = 0; i < n; ++i) {
            d.segment<2>(2 * map[i]) = src.d.segment<2>(2 * i);
            for (int j = 0; j < n; ++j)
                V.block<2, 2>(2 * map[i], 2 * map[j]) = src.V.block<2, 2>(2 * i, 2 * j);
        }
    };
    place(a, map_a);
    place(b, map_b);
    return {std::move(table), std::move(d), std::move(V)};
}

// ---------------------------------------------------------------------------
// mode-pair correlator
// ---------------------------------------------------------------------------

// <a_{m1} a_{m2}^dag> for distinct modes, in the V-normalization above:
//   1/4 [(V_q1q2 + V_p1p2) + i (V_p1q2 - V_q1p2)]
// + 1/2 [(d_q1 d_q2 + d_p1 d_p2) + i (d_p1 d_q2 - d_q1 d_p2)]
[[nodiscard]] inline std::complex<double> mode_pair_correlator(const GaussianState& s, int m1,
                                                               int m2) {
    if (m1 == m2)
        throw std::invalid_argument("mode_pair_correlator: modes must be distinct");
    if (m1 < 0 || m2 < 0 || m1 >= s.modes.mode_count() || m2 >= s.modes.mode_count())
        throw std::out_of_range("mode_pair_correlator: mode index out of range");
    const int q1 = 2 * m1, p1 = 2 * m1 + 1, q2 = 2 * m2, p2 = 2 * m2 + 1;
    const double re =
        0.25 * (s.V(q1, q2) + s.V(p1, p2)) + 0.5 * (s.d(q1) * s.d(q2) + s.d(p1) * s.d(p2));
    const double im =
        0.25 * (s.V(p1, q2) - s.V(q1, p2)) + 0.5 * (s.d(p1) * s.d(q2) - s.d(q1) * s.d(p2));
    return {re, im};
}

}  // namespace gaussres
