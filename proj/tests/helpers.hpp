#pragma once

#include <cmath>
#include <random>
#include <vector>

#include <gaussres/gaussres.hpp>

namespace testutil {

// Reference values computed with an independent high-precision evaluator and
// frozen here as decimal literals.
inline constexpr double kSinh2One = 1.3810978455418157;     // sinh^2(1)
inline constexpr double kGSinh2One = 1.6198220928977023;    // g(sinh^2(1))
inline constexpr double kThreeGThird = 2.7304289923881617;  // 3 g(sinh^2(1)/3)
inline constexpr double kTwoLn2 = 1.3862943611198906;
inline constexpr double kFourLn2 = 2.7725887222397812;
inline constexpr double kLn9Over8 = 0.11778303565638346;
inline constexpr double kAsinh1 = 0.88137358701954303;  // r with sinh^2 r = 1

// Frozen two-mode single-frequency state assembled from a fixed squeezing
// network; every oracle below was computed independently of this library.
inline gaussres::GaussianState frozen_two_mode_state() {
    gaussres::ModeTable modes({1.0}, 2);
    Eigen::VectorXd d(4);
    d << 0.25, -0.4, 0.1, 0.55;
    Eigen::MatrixXd V(4, 4);
    V << 2.726834606586275, 1.8845871575588713, 2.7154507537712425, 0.17682831230413149,
        1.8845871575588713, 3.586519931344409, 1.3145655284475515, -1.3646815367984209,
        2.7154507537712425, 1.3145655284475515, 4.940784045300248, 0.74390623029574,
        0.17682831230413149, -1.3646815367984209, 0.74390623029574, 1.3725704926304358;
    return gaussres::GaussianState(std::move(modes), std::move(d), std::move(V));
}

struct FrozenOracles {
    double entropy = 1.2178731748468108;
    double coherence = 1.8281782827451885;
    double coherence_max = 1.8283671141545885;
    double nonuniformity = 1.8283671141545885;
    double discord = 1.1686003566856278;
    double nbar0 = 1.1895886344826712;
    double nbar1 = 1.2345886344826709;
    double nu0 = 1.7;
    double nu1 = 1.3;
};

inline gaussres::GaussianState tmsv_unit() {
    return gaussres::two_mode_squeezed(gaussres::ModeTable({1.0}, 2), 0, 1, kAsinh1);
}

inline gaussres::ModeTable random_table(std::mt19937_64& rng, int max_f, int max_s) {
    std::uniform_int_distribution<int> pick_f(1, max_f);
    std::uniform_int_distribution<int> pick_s(1, max_s);
    std::uniform_real_distribution<double> gap(0.3, 1.5);
    const int mf = pick_f(rng);
    const int ms = pick_s(rng);
    std::vector<double> omegas;
    double w = gap(rng);
    for (int f = 0; f < mf; ++f) {
        omegas.push_back(w);
        w += gap(rng);
    }
    return gaussres::ModeTable(std::move(omegas), ms);
}

inline std::mt19937_64 engine(std::uint64_t seed, std::uint64_t index = 0) {
    return gaussres::detail::candidate_engine(seed, index);
}

}  // namespace testutil
