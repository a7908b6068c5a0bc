#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gaussres/modes.hpp"
#include "gaussres/state.hpp"

namespace gaussres {

struct SymplecticMatrix {
    ModeTable modes;
    Eigen::MatrixXd S;

    SymplecticMatrix(ModeTable m, Eigen::MatrixXd S_) : modes(std::move(m)), S(std::move(S_)) {
        if (S.rows() != modes.dim() || S.cols() != modes.dim())
            throw std::invalid_argument("SymplecticMatrix: dimension mismatch with mode table");
    }
};

// max-norm of S Omega S^T - Omega
[[nodiscard]] inline double symplectic_residual(const Eigen::MatrixXd& S) {
    const int M = static_cast<int>(S.rows()) / 2;
    const Eigen::MatrixXd omega = symplectic_form(M);
    return (S * omega * S.transpose() - omega).cwiseAbs().maxCoeff();
}

// Real phase-space representation of a mode-space unitary: the 2x2 block at
// (j,k) is [[Re U_jk, -Im U_jk], [Im U_jk, Re U_jk]]. Unitary U gives an
// orthogonal symplectic O.
[[nodiscard]] inline Eigen::MatrixXd to_real_symplectic(const Eigen::MatrixXcd& U) {
    const int M = static_cast<int>(U.rows());
    Eigen::MatrixXd O(2 * M, 2 * M);
    for (int j = 0; j < M; ++j)
        for (int k = 0; k < M; ++k) {
            const double a = U(j, k).real();
            const double b = U(j, k).imag();
            O(2 * j, 2 * k) = a;
            O(2 * j, 2 * k + 1) = -b;
            O(2 * j + 1, 2 * k) = b;
            O(2 * j + 1, 2 * k + 1) = a;
        }
    return O;
}

// Inverse of to_real_symplectic for matrices of that block shape.
[[nodiscard]] inline Eigen::MatrixXcd unitary_from_real(const Eigen::MatrixXd& O) {
    const int M = static_cast<int>(O.rows()) / 2;
    Eigen::MatrixXcd U(M, M);
    for (int j = 0; j < M; ++j)
        for (int k = 0; k < M; ++k)
            U(j, k) = std::complex<double>(O(2 * j, 2 * k), O(2 * j + 1, 2 * k));
    return U;
}

struct PassiveUnitary {
    ModeTable modes;
    Eigen::MatrixXcd U;  // M x M, unitary, block-diagonal over frequency sectors
    Eigen::MatrixXd O;   // derived real 2M x 2M orthogonal symplectic
};

// Builds a PassiveUnitary after checking unitarity and that U never couples
// modes of different frequency.
[[nodiscard]] inline PassiveUnitary passive_from_unitary(const Eigen::MatrixXcd& U,
                                                         const ModeTable& modes,
                                                         double tol = 1e-8) {
    const int M = modes.mode_count();
    if (U.rows() != M || U.cols() != M)
        throw std::invalid_argument("passive_from_unitary: U must be M x M");
    const double unit_res =
        (U.adjoint() * U - Eigen::MatrixXcd::Identity(M, M)).cwiseAbs().maxCoeff();
    if (unit_res > tol)
        throw std::invalid_argument("passive_from_unitary: U is not unitary (residual " +
                                    std::to_string(unit_res) + ")");
    for (int j = 0; j < M; ++j)
        for (int k = 0; k < M; ++k)
            if (modes.frequency_of(j) != modes.frequency_of(k) && std::abs(U(j, k)) > tol)
                throw std::invalid_argument(
                    "passive_from_unitary: U couples modes of different frequency at (" +
                    std::to_string(j) + "," + std::to_string(k) + ")");
    return {modes, U, to_real_symplectic(U)};
}

[[nodiscard]] inline PassiveUnitary passive_identity(const ModeTable& modes) {
    const int M = modes.mode_count();
    return {modes, Eigen::MatrixXcd::Identity(M, M), Eigen::MatrixXd::Identity(2 * M, 2 * M)};
}

// ---------------------------------------------------------------------------
// applying transforms to states
// ---------------------------------------------------------------------------

[[nodiscard]] inline GaussianState apply_symplectic(const GaussianState& s,
                                                    const Eigen::MatrixXd& S) {
    if (S.rows() != s.modes.dim() || S.cols() != s.modes.dim())
        throw std::invalid_argument("apply_symplectic: dimension mismatch");
    Eigen::MatrixXd V = S * s.V * S.transpose();
    V = 0.5 * (V + V.transpose()).eval();
    return {s.modes, S * s.d, std::move(V)};
}

[[nodiscard]] inline GaussianState apply_symplectic(const GaussianState& s,
                                                    const SymplecticMatrix& S) {
    if (S.modes != s.modes)
        throw std::invalid_argument("apply_symplectic: mode tables differ");
    return apply_symplectic(s, S.S);
}

[[nodiscard]] inline GaussianState apply_passive(const GaussianState& s, const PassiveUnitary& u) {
    if (u.modes != s.modes)
        throw std::invalid_argument("apply_passive: mode tables differ");
    return apply_symplectic(s, u.O);
}

// ---------------------------------------------------------------------------
// symplectic eigenvalues
// ---------------------------------------------------------------------------

namespace detail {

inline void require_symmetric_positive(const Eigen::MatrixXd& V, const char* who) {
    if (V.rows() != V.cols() || V.rows() % 2 != 0)
        throw std::invalid_argument(std::string(who) + ": V must be square with even dimension");
    const double scale = 1.0 + V.cwiseAbs().maxCoeff();
    if ((V - V.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
        throw std::invalid_argument(std::string(who) + ": V must be symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (V + V.transpose()),
                                                      Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw std::invalid_argument(std::string(who) + ": V must be positive definite");
}

}  // namespace detail

// Moduli of the eigenvalues of Omega*V, one per +/- pair, sorted descending.
// The two members of each pair must agree to a 1e-8 relative tolerance.
[[nodiscard]] inline Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd& V) {
    detail::require_symmetric_positive(V, "symplectic_eigenvalues");
    const int M = static_cast<int>(V.rows()) / 2;
    Eigen::EigenSolver<Eigen::MatrixXd> es(symplectic_form(M) * V, false);
    std::vector<double> mods(2 * M);
    for (int i = 0; i < 2 * M; ++i) mods[static_cast<std::size_t>(i)] = std::abs(es.eigenvalues()(i));
    std::sort(mods.begin(), mods.end(), std::greater<>());
    Eigen::VectorXd nu(M);
    for (int m = 0; m < M; ++m) {
        const double a = mods[static_cast<std::size_t>(2 * m)];
        const double b = mods[static_cast<std::size_t>(2 * m + 1)];
        if (std::abs(a - b) > 1e-8 * (1.0 + std::abs(a)))
            throw std::runtime_error(
                "symplectic_eigenvalues: eigenvalue moduli failed to pair (" + std::to_string(a) +
                " vs " + std::to_string(b) + ")");
        nu(m) = 0.5 * (a + b);
    }
    return nu;
}

[[nodiscard]] inline Eigen::VectorXd symplectic_eigenvalues(const GaussianState& s) {
    return symplectic_eigenvalues(s.V);
}

// ---------------------------------------------------------------------------
// Williamson normal form
// ---------------------------------------------------------------------------

struct WilliamsonResult {
    SymplecticMatrix S;
    Eigen::VectorXd nu;  // sorted descending
    double reconstruction_residual = 0.0;
    double symplectic_residual = 0.0;

    [[nodiscard]] Eigen::MatrixXd D() const {
        Eigen::VectorXd diag(2 * nu.size());
        for (int m = 0; m < nu.size(); ++m) diag.segment<2>(2 * m).setConstant(nu(m));
        return diag.asDiagonal();
    }
};

// V = S D S^T with D = diag(nu_1, nu_1, ..., nu_M, nu_M).
//
// Route: with K = V^{1/2}, the antisymmetric matrix W = K^{-1} Omega K^{-1}
// has canonical blocks (1/nu_m) J under a real orthogonal O built from the
// eigenvectors of the Hermitian matrix iW; then S = K O D^{-1/2}. The
// remaining per-mode rotation freedom is fixed by zeroing the (q-row, p-col)
// entry of each column pair and making the (q,q) entry nonnegative.
[[nodiscard]] inline WilliamsonResult williamson(const GaussianState& state, double tol = 1e-10) {
    const Eigen::MatrixXd& V = state.V;
    detail::require_symmetric_positive(V, "williamson");
    const int M = state.modes.mode_count();
    const int n = 2 * M;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> vs(0.5 * (V + V.transpose()));
    if (vs.info() != Eigen::Success)
        throw std::runtime_error("williamson: eigendecomposition of V failed");
    const Eigen::VectorXd lam = vs.eigenvalues();
    const Eigen::MatrixXd K = vs.eigenvectors() * lam.cwiseSqrt().asDiagonal() *
                              vs.eigenvectors().transpose();
    const Eigen::MatrixXd Kinv = vs.eigenvectors() * lam.cwiseSqrt().cwiseInverse().asDiagonal() *
                                 vs.eigenvectors().transpose();

    Eigen::MatrixXd W = Kinv * symplectic_form(M) * Kinv;
    W = 0.5 * (W - W.transpose()).eval();
    Eigen::MatrixXcd H = std::complex<double>(0.0, 1.0) * W.cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> hs(H);
    if (hs.info() != Eigen::Success)
        throw std::runtime_error("williamson: eigendecomposition of iW failed");

    // positive half of the spectrum, ascending: mu_m = 1/nu_m, so nu descends
    Eigen::MatrixXd O(n, n);
    Eigen::VectorXd nu(M);
    const double sqrt2 = std::sqrt(2.0);
    for (int m = 0; m < M; ++m) {
        const double mu = hs.eigenvalues()(M + m);
        if (!(mu > 0.0))
            throw std::runtime_error("williamson: nonpositive canonical frequency");
        nu(m) = 1.0 / mu;
        const Eigen::VectorXcd x = hs.eigenvectors().col(M + m);
        O.col(2 * m) = sqrt2 * x.imag();
        O.col(2 * m + 1) = sqrt2 * x.real();
    }

    Eigen::VectorXd dinv_sqrt(n);
    for (int m = 0; m < M; ++m) dinv_sqrt.segment<2>(2 * m).setConstant(1.0 / std::sqrt(nu(m)));
    Eigen::MatrixXd S = K * O * dinv_sqrt.asDiagonal();

    // gauge fix each column pair
    for (int m = 0; m < M; ++m) {
        int pivot = -1;
        auto pair_norm = [&](int r) { return std::hypot(S(r, 2 * m), S(r, 2 * m + 1)); };
        if (pair_norm(2 * m) > 1e-12) {
            pivot = 2 * m;
        } else {
            for (int r = 0; r < n; ++r)
                if (pair_norm(r) > 1e-12) {
                    pivot = r;
                    break;
                }
        }
        if (pivot < 0)
            throw std::runtime_error("williamson: degenerate column pair");
        const double theta = std::atan2(S(pivot, 2 * m + 1), S(pivot, 2 * m));
        const double c = std::cos(theta), sn = std::sin(theta);
        const Eigen::VectorXd c0 = S.col(2 * m), c1 = S.col(2 * m + 1);
        S.col(2 * m) = c * c0 + sn * c1;
        S.col(2 * m + 1) = -sn * c0 + c * c1;
    }

    WilliamsonResult out{SymplecticMatrix(state.modes, S), nu, 0.0, 0.0};
    out.reconstruction_residual = (S * out.D() * S.transpose() - V).cwiseAbs().maxCoeff();
    out.symplectic_residual = symplectic_residual(S);
    if (out.reconstruction_residual > tol)
        throw std::runtime_error("williamson: reconstruction residual " +
                                 std::to_string(out.reconstruction_residual) +
                                 " exceeds tolerance " + std::to_string(tol));
    return out;
}

[[nodiscard]] inline WilliamsonResult williamson(const Eigen::MatrixXd& V, const ModeTable& modes,
                                                 double tol = 1e-10) {
    return williamson(GaussianState(modes, Eigen::VectorXd::Zero(modes.dim()), V), tol);
}

// ---------------------------------------------------------------------------
// Bloch-Messiah normal form
// ---------------------------------------------------------------------------

struct BlochMessiahResult {
    Eigen::MatrixXd O1;  // orthogonal symplectic
    Eigen::MatrixXd O2;  // orthogonal symplectic
    Eigen::VectorXd r;   // squeezing parameters, >= 0, sorted descending
    double reconstruction_residual = 0.0;

    [[nodiscard]] Eigen::MatrixXd Z() const {
        Eigen::VectorXd diag(2 * r.size());
        for (int m = 0; m < r.size(); ++m) {
            diag(2 * m) = std::exp(-r(m));
            diag(2 * m + 1) = std::exp(r(m));
        }
        return diag.asDiagonal();
    }
};

// S = O1 (+)Z(r_m) O2 with Z(r) = diag(e^-r, e^r).
//
// Polar route: P = (S S^T)^{1/2} is symmetric positive definite symplectic
// and O = P^{-1} S is orthogonal symplectic. Eigenvalues of S S^T pair as
// (e^{2r}, e^{-2r}) with Omega mapping one eigenspace onto the other, so the
// column pairs (Omega v, v) over the e^{2r}-half assemble an orthogonal
// symplectic O1 with P = O1 Z O1^T; then O2 = O1^T O. Pairs are consumed
// greedily from the largest eigenvalue down, which keeps clustered or unit
// eigenvalues stable.
[[nodiscard]] inline BlochMessiahResult bloch_messiah(const SymplecticMatrix& sm,
                                                      double tol = 1e-10) {
    const Eigen::MatrixXd& S = sm.S;
    const int M = sm.modes.mode_count();
    const int n = 2 * M;
    const double symp = symplectic_residual(S);
    if (symp > 1e-8)
        throw std::invalid_argument("bloch_messiah: input is not symplectic (residual " +
                                    std::to_string(symp) + ")");

    Eigen::MatrixXd A = S * S.transpose();
    A = 0.5 * (A + A.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("bloch_messiah: eigendecomposition of S S^T failed");

    struct Entry {
        double lambda;
        Eigen::VectorXd vec;
    };
    std::vector<Entry> pool;
    pool.reserve(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) {  // descending eigenvalues
        Eigen::VectorXd v = es.eigenvectors().col(i);
        for (int k = 0; k < n; ++k)
            if (std::abs(v(k)) > 1e-8) {
                if (v(k) < 0.0) v = -v;
                break;
            }
        pool.push_back({es.eigenvalues()(i), std::move(v)});
    }

    const Eigen::MatrixXd omega = symplectic_form(M);
    Eigen::MatrixXd O1(n, n);
    Eigen::VectorXd r(M);
    for (int m = 0; m < M; ++m) {
        Entry front = std::move(pool.front());
        pool.erase(pool.begin());
        front.vec.normalize();
        r(m) = std::max(0.0, 0.5 * std::log(front.lambda));
        const Eigen::VectorXd cp = front.vec;
        const Eigen::VectorXd cq = omega * cp;
        O1.col(2 * m) = cq;
        O1.col(2 * m + 1) = cp;

        // remove span{cq, cp} from the pool: project, drop the collapsed
        // partner, re-orthonormalize what is left
        for (auto& e : pool)
            e.vec -= cq.dot(e.vec) * cq + cp.dot(e.vec) * cp;
        if (!pool.empty()) {
            std::size_t drop = 0;
            for (std::size_t i = 1; i < pool.size(); ++i)
                if (pool[i].vec.norm() < pool[drop].vec.norm()) drop = i;
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(drop));
        }
        for (std::size_t i = 0; i < pool.size(); ++i) {
            for (std::size_t j = 0; j < i; ++j)
                pool[i].vec -= pool[j].vec.dot(pool[i].vec) * pool[j].vec;
            const double norm = pool[i].vec.norm();
            if (norm < 1e-8)
                throw std::runtime_error("bloch_messiah: eigenvector pool degenerated");
            pool[i].vec /= norm;
        }
    }

    const Eigen::MatrixXd Pinv = es.eigenvectors() *
                                 es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                                 es.eigenvectors().transpose();
    BlochMessiahResult out;
    out.O1 = O1;
    out.r = r;
    out.O2 = O1.transpose() * (Pinv * S);
    out.reconstruction_residual = (out.O1 * out.Z() * out.O2 - S).cwiseAbs().maxCoeff();
    if (out.reconstruction_residual > tol)
        throw std::runtime_error("bloch_messiah: reconstruction residual " +
                                 std::to_string(out.reconstruction_residual) +
                                 " exceeds tolerance " + std::to_string(tol));
    return out;
}

// ---------------------------------------------------------------------------
// classification
// ---------------------------------------------------------------------------

enum class SymplecticClass { not_symplectic, active, passive };

// passive = symplectic + orthogonal + no coupling between frequencies;
// active = symplectic but failing orthogonality or the block structure.
[[nodiscard]] inline SymplecticClass classify_symplectic(const Eigen::MatrixXd& S,
                                                         const ModeTable& modes,
                                                         double tol = 1e-9) {
    if (S.rows() != modes.dim() || S.cols() != modes.dim())
        throw std::invalid_argument("classify_symplectic: dimension mismatch");
    if (symplectic_residual(S) > tol)
        return SymplecticClass::not_symplectic;
    const int n = modes.dim();
    const double orth = (S.transpose() * S - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
    if (orth > tol)
        return SymplecticClass::active;
    const int M = modes.mode_count();
    for (int a = 0; a < M; ++a)
        for (int b = 0; b < M; ++b)
            if (modes.frequency_of(a) != modes.frequency_of(b) &&
                S.block<2, 2>(2 * a, 2 * b).cwiseAbs().maxCoeff() > tol)
                return SymplecticClass::active;
    return SymplecticClass::passive;
}

[[nodiscard]] inline SymplecticClass classify_symplectic(const SymplecticMatrix& S,
                                                         double tol = 1e-9) {
    return classify_symplectic(S.S, S.modes, tol);
}

// ---------------------------------------------------------------------------
// elementary transforms
// ---------------------------------------------------------------------------

[[nodiscard]] inline SymplecticMatrix make_squeezer(const ModeTable& modes, int mode, double r) {
    if (mode < 0 || mode >= modes.mode_count())
        throw std::invalid_argument("make_squeezer: mode index out of range");
    Eigen::MatrixXd S = Eigen::MatrixXd::Identity(modes.dim(), modes.dim());
    S(2 * mode, 2 * mode) = std::exp(-r);
    S(2 * mode + 1, 2 * mode + 1) = std::exp(r);
    return {modes, std::move(S)};
}

[[nodiscard]] inline SymplecticMatrix make_phase_shifter(const ModeTable& modes, int mode,
                                                         double theta) {
    if (mode < 0 || mode >= modes.mode_count())
        throw std::invalid_argument("make_phase_shifter: mode index out of range");
    Eigen::MatrixXcd U = Eigen::MatrixXcd::Identity(modes.mode_count(), modes.mode_count());
    U(mode, mode) = std::polar(1.0, theta);
    return {modes, to_real_symplectic(U)};
}

// b1 = sqrt(T) a1 + e^{i phi} sqrt(1-T) a2, b2 = -e^{-i phi} sqrt(1-T) a1 + sqrt(T) a2.
// Allowed between any two modes; it is passive only when they share a frequency.
[[nodiscard]] inline SymplecticMatrix make_beam_splitter(const ModeTable& modes, int m1, int m2,
                                                         double phi, double transmissivity = 0.5) {
    if (m1 == m2 || m1 < 0 || m2 < 0 || m1 >= modes.mode_count() || m2 >= modes.mode_count())
        throw std::invalid_argument("make_beam_splitter: need two distinct valid modes");
    if (transmissivity < 0.0 || transmissivity > 1.0)
        throw std::invalid_argument("make_beam_splitter: transmissivity must lie in [0,1]");
    const double t = std::sqrt(transmissivity);
    const double rr = std::sqrt(1.0 - transmissivity);
    Eigen::MatrixXcd U = Eigen::MatrixXcd::Identity(modes.mode_count(), modes.mode_count());
    U(m1, m1) = t;
    U(m1, m2) = std::polar(rr, phi);
    U(m2, m1) = -std::polar(rr, -phi);
    U(m2, m2) = t;
    return {modes, to_real_symplectic(U)};
}

// Discrete Fourier transform within every frequency sector:
// U_jk = exp(2 pi i j k / n) / sqrt(n) on each sector of size n.
[[nodiscard]] inline PassiveUnitary qft_passive(const ModeTable& modes) {
    const int M = modes.mode_count();
    Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(M, M);
    constexpr double two_pi = 6.283185307179586476925286766559;
    for (int f = 0; f < modes.frequency_count(); ++f) {
        const int base = modes.first_mode(f);
        const int ns = modes.spatial_count(f);
        const double scale = 1.0 / std::sqrt(static_cast<double>(ns));
        for (int j = 0; j < ns; ++j)
            for (int k = 0; k < ns; ++k)
                U(base + j, base + k) =
                    std::polar(scale, two_pi * static_cast<double>(j) * static_cast<double>(k) /
                                          static_cast<double>(ns));
    }
    return passive_from_unitary(U, modes, 1e-10);
}

// ---------------------------------------------------------------------------
// random transforms
// ---------------------------------------------------------------------------

// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
// fixed so the triangular factor has positive diagonal.
[[nodiscard]] inline Eigen::MatrixXcd random_unitary(int n, std::mt19937_64& rng) {
    if (n < 1)
        throw std::invalid_argument("random_unitary: n must be >= 1");
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd G(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            G(j, k) = std::complex<double>(re, im);
        }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(G);
    Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
    const Eigen::MatrixXcd R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        const std::complex<double> rjj = R(j, j);
        const double mag = std::abs(rjj);
        Q.col(j) *= (mag > 0.0) ? rjj / mag : std::complex<double>(1.0, 0.0);
    }
    return Q;
}

// Independent Haar unitary on each frequency sector.
[[nodiscard]] inline PassiveUnitary random_passive(const ModeTable& modes, std::mt19937_64& rng) {
    const int M = modes.mode_count();
    Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(M, M);
    for (int f = 0; f < modes.frequency_count(); ++f) {
        const int base = modes.first_mode(f);
        const int ns = modes.spatial_count(f);
        U.block(base, base, ns, ns) = random_unitary(ns, rng);
    }
    return passive_from_unitary(U, modes, 1e-10);
}

// Random symplectic via normal-form synthesis: O1 (+)Z(r_m) O2 with Haar
// passive factors and r_m uniform on [0, r_max].
[[nodiscard]] inline SymplecticMatrix random_symplectic(const ModeTable& modes,
                                                        std::mt19937_64& rng,
                                                        double r_max = 2.0) {
    if (r_max < 0.0)
        throw std::invalid_argument("random_symplectic: r_max must be >= 0");
    const PassiveUnitary o1 = random_passive(modes, rng);
    const PassiveUnitary o2 = random_passive(modes, rng);
    std::uniform_real_distribution<double> uni(0.0, r_max);
    Eigen::VectorXd z(modes.dim());
    for (int m = 0; m < modes.mode_count(); ++m) {
        const double r = (r_max > 0.0) ? uni(rng) : 0.0;
        z(2 * m) = std::exp(-r);
        z(2 * m + 1) = std::exp(r);
    }
    return {modes, o1.O * z.asDiagonal() * o2.O};
}

}  // namespace gaussres
