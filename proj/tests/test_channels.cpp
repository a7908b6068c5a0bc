#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "helpers.hpp"

using namespace gaussres;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

Eigen::Matrix2d rotation2(double angle, bool reflect) {
    Eigen::Matrix2d O;
    const double c = std::cos(angle), s = std::sin(angle);
    O << c, -s, s, c;
    if (reflect) O.col(1) *= -1.0;
    return O;
}

IGChannelSpec random_ig_spec(const ModeTable& table, std::mt19937_64& rng) {
    IGChannelSpec spec(table);
    std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
    std::uniform_real_distribution<double> gain(0.0, 1.4);
    std::uniform_real_distribution<double> slack(0.0, 1.0);
    for (int f = 0; f < table.frequency_count(); ++f) {
        std::vector<int> sector(static_cast<std::size_t>(table.spatial_count(f)));
        std::iota(sector.begin(), sector.end(), table.first_mode(f));
        std::shuffle(sector.begin(), sector.end(), rng);
        for (int j = 0; j < table.spatial_count(f); ++j)
            spec.source[static_cast<std::size_t>(table.first_mode(f) + j)] =
                sector[static_cast<std::size_t>(j)];
    }
    for (int m = 0; m < table.mode_count(); ++m) {
        const bool reflect = (rng() & 1u) != 0u;
        spec.rotation[static_cast<std::size_t>(m)] = rotation2(angle(rng), reflect);
        spec.t(m) = gain(rng);
        const double det = spec.rotation[static_cast<std::size_t>(m)].determinant();
        spec.w(m) = std::abs(1.0 - spec.t(m) * spec.t(m) * det) + slack(rng);
    }
    return spec;
}

}  // namespace

TEST_CASE("pure loss attenuates thermal occupation by the transmissivity", "[channels][ig]") {
    const ModeTable table({1.0}, 1);
    const double eta = 0.36;
    IGChannelSpec spec(table);
    spec.t(0) = std::sqrt(eta);
    spec.w(0) = 1.0 - eta;
    const GaussianChannel loss = make_ig_channel(spec);
    const GaussianState out = apply_channel(thermal_state(table, 2.5), loss);
    CHECK_THAT(mean_occupation(out).per_mode(0), WithinAbs(eta * 2.5, 1e-12));
    CHECK(out.d.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("intra-group channels map thermal states to thermal states", "[channels][ig]") {
    SECTION("closed form survives a source permutation") {
        const ModeTable table({1.0}, 2);
        IGChannelSpec spec(table);
        spec.source = {1, 0};
        spec.t = Eigen::VectorXd{{0.9, 1.1}};
        spec.w = Eigen::VectorXd{{0.5, 0.8}};
        const Eigen::VectorXd nbar{{0.4, 1.7}};
        const GaussianState out =
            apply_channel(thermal_state({table, nbar}), make_ig_channel(spec));
        for (int j = 0; j < 2; ++j) {
            const int src = spec.source[static_cast<std::size_t>(j)];
            const double expected =
                0.5 * (spec.t(j) * spec.t(j) * (2.0 * nbar(src) + 1.0) + spec.w(j) - 1.0);
            CHECK_THAT(mean_occupation(out).per_mode(j), WithinAbs(expected, 1e-12));
        }
    }

    SECTION("random channels keep the thermal family closed") {
        std::mt19937_64 rng = testutil::engine(51);
        std::uniform_real_distribution<double> occ(0.0, 3.0);
        for (int trial = 0; trial < 100; ++trial) {
            const ModeTable table = testutil::random_table(rng, 2, 3);
            Eigen::VectorXd nbar(table.mode_count());
            for (int m = 0; m < nbar.size(); ++m) nbar(m) = occ(rng);
            const IGChannelSpec spec = random_ig_spec(table, rng);
            const GaussianState out =
                apply_channel(thermal_state({table, nbar}), make_ig_channel(spec));
            CHECK(out.d.cwiseAbs().maxCoeff() == 0.0);
            Eigen::VectorXd expected(table.mode_count());
            for (int j = 0; j < table.mode_count(); ++j) {
                const int src = spec.source[static_cast<std::size_t>(j)];
                expected(j) =
                    0.5 * (spec.t(j) * spec.t(j) * (2.0 * nbar(src) + 1.0) + spec.w(j) - 1.0);
            }
            const GaussianState want = thermal_state({table, expected});
            CHECK((out.V - want.V).cwiseAbs().maxCoeff() <
                  1e-9 * (1.0 + want.V.cwiseAbs().maxCoeff()));
        }
    }
}

TEST_CASE("intra-group constructor rejects bad wiring", "[channels][ig]") {
    const ModeTable table({1.0}, 1);

    SECTION("amplification without noise names the minimal admissible value") {
        IGChannelSpec spec(table);
        spec.t(0) = 1.2;
        spec.w(0) = 0.0;
        CHECK_THROWS_WITH(make_ig_channel(spec), ContainsSubstring("0.44"));
    }

    SECTION("negative parameters are refused") {
        IGChannelSpec neg_t(table);
        neg_t.t(0) = -0.5;
        CHECK_THROWS_AS(make_ig_channel(neg_t), std::invalid_argument);
        IGChannelSpec neg_w(table);
        neg_w.t(0) = 1.0;
        neg_w.w(0) = -0.1;
        CHECK_THROWS_AS(make_ig_channel(neg_w), std::invalid_argument);
    }

    SECTION("source wiring may not couple distinct frequencies") {
        const ModeTable mixed({1.0, 2.0}, 1);
        IGChannelSpec spec(mixed);
        spec.source = {1, 0};
        spec.w = Eigen::VectorXd::Constant(2, 2.0);
        CHECK_THROWS_WITH(make_ig_channel(spec), ContainsSubstring("distinct frequencies"));
    }

    SECTION("non-orthogonal rotation block is refused") {
        IGChannelSpec spec(table);
        spec.rotation[0] << 1.0, 0.0, 0.0, 2.0;
        spec.w(0) = 5.0;
        CHECK_THROWS_WITH(make_ig_channel(spec), ContainsSubstring("not orthogonal"));
    }
}

TEST_CASE("constant and swap channels behave as maps of registers", "[channels][ig]") {
    const ModeTable table({1.0}, 2);

    SECTION("zero gain erases the input") {
        IGChannelSpec spec(table);
        spec.t = Eigen::VectorXd::Zero(2);
        spec.w = Eigen::VectorXd{{2.0 * 0.3 + 1.0, 2.0 * 1.2 + 1.0}};
        const GaussianChannel constant = make_ig_channel(spec);
        std::mt19937_64 rng = testutil::engine(52);
        const GaussianState out = apply_channel(random_state(table, rng), constant);
        const GaussianState want = thermal_state({table, Eigen::VectorXd{{0.3, 1.2}}});
        CHECK((out.V - want.V).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(out.d.cwiseAbs().maxCoeff() == 0.0);
    }

    SECTION("swap exchanges the marginals") {
        IGChannelSpec spec(table);
        spec.source = {1, 0};
        const GaussianChannel swap = make_ig_channel(spec);
        const GaussianState in = thermal_state({table, Eigen::VectorXd{{1.0, 2.0}}});
        const GaussianState out = apply_channel(in, swap);
        CHECK_THAT(mean_occupation(out).per_mode(0), WithinAbs(2.0, 1e-14));
        CHECK_THAT(mean_occupation(out).per_mode(1), WithinAbs(1.0, 1e-14));
    }
}

TEST_CASE("channel validation sorts failures into verdicts", "[channels][validate]") {
    const ModeTable table({1.0}, 1);
    const int n = table.dim();

    SECTION("noiseless amplification is not completely positive") {
        const GaussianChannel amp(table, 2.0 * Eigen::MatrixXd::Identity(n, n),
                                  Eigen::MatrixXd::Zero(n, n), Eigen::VectorXd::Zero(n));
        const ChannelValidation v = validate_channel(amp);
        CHECK_FALSE(v.ok);
        CHECK(v.verdict == ChannelVerdict::not_cp);
        CHECK_THROWS_AS(apply_channel(vacuum_state(table), amp), std::invalid_argument);
    }

    SECTION("a negative noise block is not completely positive") {
        const GaussianChannel bad(table, Eigen::MatrixXd::Identity(n, n),
                                  -0.5 * Eigen::MatrixXd::Identity(n, n),
                                  Eigen::VectorXd::Zero(n));
        const ChannelValidation v = validate_channel(bad);
        CHECK_FALSE(v.ok);
        CHECK(v.verdict == ChannelVerdict::not_cp);
        REQUIRE_FALSE(v.violations.empty());
        CHECK(v.violations.front().invariant == "noise_psd");
    }

    SECTION("NaN entries are malformed, not merely non-CP") {
        Eigen::MatrixXd T = Eigen::MatrixXd::Identity(n, n);
        T(0, 0) = std::numeric_limits<double>::quiet_NaN();
        const GaussianChannel bad(table, T, Eigen::MatrixXd::Zero(n, n),
                                  Eigen::VectorXd::Zero(n));
        const ChannelValidation v = validate_channel(bad);
        CHECK(v.verdict == ChannelVerdict::malformed);
    }

    SECTION("pure loss passes") {
        IGChannelSpec spec(table);
        spec.t(0) = 0.6;
        spec.w(0) = 0.64;
        CHECK(validate_channel(make_ig_channel(spec)).ok);
    }
}

TEST_CASE("composition matches sequential application", "[channels][compose]") {
    std::mt19937_64 rng = testutil::engine(53);
    for (int trial = 0; trial < 20; ++trial) {
        const ModeTable table = testutil::random_table(rng, 2, 2);
        const GaussianChannel first = make_ig_channel(random_ig_spec(table, rng));
        const GaussianChannel second = make_ig_channel(random_ig_spec(table, rng));
        const GaussianState s = random_state(table, rng);
        const GaussianState chained = apply_channel(apply_channel(s, first), second);
        const GaussianState fused = apply_channel(s, compose(second, first));
        const double scale = 1.0 + chained.V.cwiseAbs().maxCoeff();
        CHECK((chained.V - fused.V).cwiseAbs().maxCoeff() < 1e-12 * scale);
        CHECK((chained.d - fused.d).cwiseAbs().maxCoeff() < 1e-12 * scale);
    }
}

TEST_CASE("global-noise channels come out completely positive", "[channels][gn]") {
    SECTION("an empty environment reduces to the passive unitary") {
        const ModeTable system({1.0}, 2);
        std::mt19937_64 rng = testutil::engine(54);
        const std::vector<int> none{0};
        const PassiveUnitary joint = random_passive(gn_joint_table(system, none), rng);
        const GaussianChannel ch =
            make_gn_channel(system, joint, Eigen::VectorXd{{0.7}}, none);
        CHECK(ch.N.cwiseAbs().maxCoeff() == 0.0);
        CHECK((ch.T - joint.O).cwiseAbs().maxCoeff() == 0.0);
        CHECK(validate_channel(ch).ok);
    }

    SECTION("a balanced splitter into one ancilla fixes the matching thermal state") {
        const ModeTable system({1.0}, 1);
        const ModeTable joint_table = gn_joint_table(system);
        const double delta = 1.3;
        const SymplecticMatrix bs = make_beam_splitter(joint_table, 0, 1, 0.0);
        const PassiveUnitary joint = passive_from_unitary(unitary_from_real(bs.S), joint_table);
        const GaussianChannel ch = make_gn_channel(system, joint, Eigen::VectorXd{{delta}});
        const GaussianState tau = thermal_state(system, delta);
        const GaussianState out = apply_channel(tau, ch);
        CHECK((out.V - tau.V).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(out.d.cwiseAbs().maxCoeff() == 0.0);
        CHECK(is_uniformity_preserving(ch, {system, Eigen::VectorXd{{delta}}}));
    }

    SECTION("random instances validate, fix uniform states, and never raise nonuniformity") {
        std::mt19937_64 rng = testutil::engine(55);
        std::uniform_real_distribution<double> occ(0.0, 2.0);
        for (int trial = 0; trial < 50; ++trial) {
            const ModeTable system = testutil::random_table(rng, 2, 2);
            const GaussianState s = random_state(system, rng);
            const OccupationProfile profile = mean_occupation(s);
            Eigen::VectorXd delta(system.frequency_count());
            Eigen::VectorXd budget(system.frequency_count());
            for (int f = 0; f < system.frequency_count(); ++f) {
                delta(f) = profile.per_frequency(f) / system.spatial_count(f);
                budget(f) = profile.per_frequency(f);
            }
            const GaussianChannel ch = random_gn_channel(system, delta, rng);
            CHECK(validate_channel(ch).ok);
            CHECK(is_uniformity_preserving(ch, {system, budget}));
            const double before = nonuniformity_rel(s);
            const double after = nonuniformity_rel(apply_channel(s, ch));
            CHECK(after <= before + 1e-8 * (1.0 + before));
        }
    }
}

TEST_CASE("uniformity preservation is a fixed-point statement", "[channels][uniformity]") {
    const ModeTable table({1.0}, 2);
    const int n = table.dim();
    const UniformSpec spec{table, Eigen::VectorXd{{2.0}}};

    SECTION("displacements break it") {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
        v(0) = 0.3;
        const GaussianChannel shift(table, Eigen::MatrixXd::Identity(n, n),
                                    Eigen::MatrixXd::Zero(n, n), v);
        CHECK(validate_channel(shift).ok);
        CHECK_FALSE(is_uniformity_preserving(shift, spec));
    }

    SECTION("squeezing breaks it") {
        const GaussianChannel squeeze(table, make_squeezer(table, 0, 0.4).S,
                                      Eigen::MatrixXd::Zero(n, n), Eigen::VectorXd::Zero(n));
        CHECK(validate_channel(squeeze).ok);
        CHECK_FALSE(is_uniformity_preserving(squeeze, spec));
    }

    SECTION("the identity trivially keeps it") {
        const GaussianChannel id(table, Eigen::MatrixXd::Identity(n, n),
                                 Eigen::MatrixXd::Zero(n, n), Eigen::VectorXd::Zero(n));
        CHECK(is_uniformity_preserving(id, spec));
    }

    SECTION("register mismatch is an error") {
        const GaussianChannel id(table, Eigen::MatrixXd::Identity(n, n),
                                 Eigen::MatrixXd::Zero(n, n), Eigen::VectorXd::Zero(n));
        CHECK_THROWS_AS(is_uniformity_preserving(id, {ModeTable({1.0}, 3), Eigen::VectorXd{{2.0}}}),
                        std::invalid_argument);
    }
}

TEST_CASE("channels keep states physical", "[channels][physicality]") {
    std::mt19937_64 rng = testutil::engine(56);
    for (int trial = 0; trial < 30; ++trial) {
        const ModeTable table = testutil::random_table(rng, 2, 2);
        const GaussianState s = random_state(table, rng);
        const GaussianState via_ig = apply_channel(s, make_ig_channel(random_ig_spec(table, rng)));
        CHECK(symplectic_eigenvalues(via_ig).minCoeff() >= 1.0 - 1e-8);
        const GaussianChannel gn =
            random_gn_channel(table, Eigen::VectorXd::Constant(table.frequency_count(), 0.5), rng);
        const GaussianState via_gn = apply_channel(s, gn);
        CHECK(symplectic_eigenvalues(via_gn).minCoeff() >= 1.0 - 1e-8);
    }
}
