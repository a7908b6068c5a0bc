#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "helpers.hpp"

using namespace gaussres;
using Catch::Matchers::WithinAbs;

namespace {

namespace fs = std::filesystem;

fs::path work_dir() {
    const fs::path dir = fs::temp_directory_path() / "gaussres_io_tests";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

int run_cli(const std::string& args) {
    const std::string command =
        std::string(GAUSSRES_CLI_PATH) + " " + args + " > /dev/null 2> /dev/null";
    const int status = std::system(command.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

std::vector<std::string> data_rows(const std::string& csv) {
    std::vector<std::string> rows;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line.front() != '#') rows.push_back(line);
    return rows;
}

std::vector<std::string> split_fields(const std::string& row) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(row);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!row.empty() && row.back() == ',') fields.emplace_back();
    return fields;
}

}  // namespace

TEST_CASE("state files round trip without losing a bit", "[io][state]") {
    std::mt19937_64 rng = testutil::engine(81);
    const ModeTable table({1.0, 2.0}, {2, 1});
    const GaussianState s = random_state(table, rng);
    const json j = state_to_json(s, {{"note", "round trip"}});
    const GaussianState back = state_from_json(j);
    CHECK(back.modes == s.modes);
    CHECK((back.d.array() == s.d.array()).all());
    CHECK((back.V.array() == s.V.array()).all());
    CHECK(state_to_json(back).dump() == state_to_json(s).dump());

    SECTION("serialized text reparses to the same document") {
        const std::string text = j.dump(2);
        CHECK(json::parse(text).dump(2) == text);
    }

    SECTION("a foreign quadrature ordering is refused") {
        json tampered = j;
        tampered["ordering"] = "qqpp";
        CHECK_THROWS_AS(state_from_json(tampered), std::invalid_argument);
    }

    SECTION("ragged registers persist their per-frequency counts") {
        REQUIRE(j.contains("spatial_counts"));
        CHECK_FALSE(j.contains("spatial_modes"));
        const ModeTable uniform_table({1.5}, 3);
        const json uj = state_to_json(vacuum_state(uniform_table));
        CHECK(uj.contains("spatial_modes"));
    }
}

TEST_CASE("channel and symplectic files round trip", "[io][channel]") {
    const ModeTable table({1.0}, 2);
    IGChannelSpec spec(table);
    spec.t = Eigen::VectorXd{{0.7, 1.1}};
    spec.w = Eigen::VectorXd{{0.51, 0.3}};
    const GaussianChannel ch = make_ig_channel(spec);
    const GaussianChannel back = channel_from_json(channel_to_json(ch));
    CHECK(back.modes == ch.modes);
    CHECK((back.T.array() == ch.T.array()).all());
    CHECK((back.N.array() == ch.N.array()).all());
    CHECK((back.v.array() == ch.v.array()).all());

    std::mt19937_64 rng = testutil::engine(82);
    const SymplecticMatrix S = random_symplectic(table, rng);
    const SymplecticMatrix s_back = symplectic_from_json(symplectic_to_json(S));
    CHECK((s_back.S.array() == S.S.array()).all());
}

TEST_CASE("sweeps are deterministic to the byte", "[sweep]") {
    SweepConfig cfg(ModeTable({1.0, 2.0}, 2));
    cfg.samples = 24;
    cfg.seed = 9;

    SECTION("repeat runs and thread counts cannot move a byte") {
        cfg.threads = 1;
        const SweepResult serial = run_sweep(cfg);
        const SweepResult serial_again = run_sweep(cfg);
        CHECK(serial.csv == serial_again.csv);
        cfg.threads = 4;
        const SweepResult parallel = run_sweep(cfg);
        CHECK(serial.csv == parallel.csv);
        CHECK(serial.ok);
    }

    SECTION("the CSV carries its header and well-formed rows") {
        const SweepResult result = run_sweep(cfg);
        std::istringstream in(result.csv);
        std::string line;
        REQUIRE(std::getline(in, line));
        CHECK(line == "# gaussres sweep csv v1");
        REQUIRE(std::getline(in, line));
        CHECK(line == "# columns: sample,P,C,C_max,D,E,hierarchy_ok,p_minus_cmax");
        REQUIRE(std::getline(in, line));
        CHECK(line.rfind("# config: samples=24 seed=9", 0) == 0);

        const std::vector<std::string> rows = data_rows(result.csv);
        REQUIRE(static_cast<int>(rows.size()) == cfg.samples);
        for (int i = 0; i < cfg.samples; ++i) {
            const std::vector<std::string> fields = split_fields(rows[static_cast<std::size_t>(i)]);
            REQUIRE(fields.size() == 8);
            CHECK(std::stoi(fields[0]) == i);
            CHECK(fields[6] == "1");
            if (i % 4 == 3)
                CHECK_FALSE(fields[5].empty());
            else
                CHECK(fields[5].empty());
            CHECK(std::abs(std::stod(fields[7])) <= 1e-8 * (1.0 + std::stod(fields[3])));
        }
    }
}

TEST_CASE("command line round trips agree with the library", "[cli]") {
    const fs::path dir = work_dir();

    SECTION("random-state, validate, report") {
        const fs::path state_path = dir / "cli_state.json";
        const fs::path report_path = dir / "cli_report.json";
        REQUIRE(run_cli("random-state --modes 2x2 --seed 123 --out " + state_path.string()) == 0);
        CHECK(run_cli("validate " + state_path.string()) == 0);
        REQUIRE(run_cli("report " + state_path.string() + " --out " + report_path.string()) == 0);

        const GaussianState s = load_state(state_path.string());
        const ResourceReport rep = hierarchy_report(s);
        const fs::path expected_path = dir / "expected_report.json";
        save_json(expected_path.string(), report_to_json(rep));
        CHECK(slurp(report_path) == slurp(expected_path));
    }

    SECTION("validate flags the unphysical fixture with exit code 2") {
        const std::string fixture = std::string(GAUSSRES_FIXTURE_DIR) + "/bad_state.json";
        CHECK(run_cli("validate " + fixture) == 2);
    }

    SECTION("report on the two-mode squeezed fixture") {
        const std::string fixture = std::string(GAUSSRES_FIXTURE_DIR) + "/tmsv.json";
        const fs::path report_path = dir / "tmsv_report.json";
        REQUIRE(run_cli("report " + fixture + " --bipartition 0 --out " +
                        report_path.string()) == 0);
        const json rep = load_json(report_path.string());
        CHECK_THAT(rep.at("nonuniformity").get<double>(),
                   WithinAbs(testutil::kFourLn2, 1e-8));
        CHECK_THAT(rep.at("coherence").get<double>(), WithinAbs(testutil::kFourLn2, 1e-8));
        CHECK_THAT(rep.at("discord").get<double>(), WithinAbs(testutil::kFourLn2, 1e-8));
        CHECK_THAT(rep.at("entanglement").at("value").get<double>(),
                   WithinAbs(testutil::kTwoLn2, 1e-8));
        CHECK_FALSE(rep.at("entanglement").at("bound_only").get<bool>());
        CHECK(rep.at("hierarchy_ok").get<bool>());
    }

    SECTION("sweep output is byte-stable and the seed is mandatory") {
        const fs::path a = dir / "sweep_a.csv";
        const fs::path b = dir / "sweep_b.csv";
        const std::string args = "sweep --samples 50 --seed 7 --modes 2x2 --out ";
        REQUIRE(run_cli(args + a.string()) == 0);
        REQUIRE(run_cli(args + b.string()) == 0);
        CHECK(slurp(a) == slurp(b));
        CHECK(run_cli("sweep --samples 5 --modes 1x2 --out " + (dir / "no.csv").string()) == 1);
    }

    SECTION("maximize reaches a non-negative gap") {
        const fs::path state_path = dir / "max_state.json";
        const fs::path out_path = dir / "max_out.json";
        REQUIRE(run_cli("random-state --modes 1x3 --seed 5 --out " + state_path.string()) == 0);
        REQUIRE(run_cli("maximize " + state_path.string() +
                        " --objective coherence --samples 60 --seed 4 --out " +
                        out_path.string()) == 0);
        const json out = load_json(out_path.string());
        CHECK(out.at("gap").get<double>() >= -1e-8);
        CHECK(out.at("method").get<std::string>() == "passive_search+refine");
        const GaussianState moved = state_from_json(out.at("transformed_state"));
        CHECK(validate_state(moved).ok);
    }

    SECTION("bloch-messiah factors a stored symplectic matrix") {
        std::mt19937_64 rng = testutil::engine(83);
        const SymplecticMatrix S = random_symplectic(ModeTable({1.0}, 2), rng);
        const fs::path matrix_path = dir / "symplectic.json";
        save_json(matrix_path.string(), symplectic_to_json(S));
        const fs::path out_path = dir / "bm.json";
        REQUIRE(run_cli("bloch-messiah " + matrix_path.string() + " --out " +
                        out_path.string()) == 0);
        const json out = load_json(out_path.string());
        CHECK(out.at("reconstruction_residual").get<double>() <= 1e-10);
        CHECK(out.contains("O1"));
        CHECK(out.contains("O2"));
        CHECK(out.contains("r"));
    }

    SECTION("channel-apply separates bad input from physics failures") {
        const ModeTable one({1.0}, 1);
        const fs::path state_path = dir / "vac.json";
        save_state(state_path.string(), vacuum_state(one));

        IGChannelSpec loss(one);
        loss.t(0) = 0.6;
        loss.w(0) = 0.64;
        const fs::path good_channel = dir / "loss.json";
        save_channel(good_channel.string(), make_ig_channel(loss));
        const fs::path out_path = dir / "chan_out.json";
        CHECK(run_cli("channel-apply " + good_channel.string() + " " + state_path.string() +
                      " --out " + out_path.string()) == 0);
        CHECK(validate_state(load_state(out_path.string())).ok);

        const GaussianChannel amp(one, 2.0 * Eigen::MatrixXd::Identity(2, 2),
                                  Eigen::MatrixXd::Zero(2, 2), Eigen::VectorXd::Zero(2));
        const fs::path bad_channel = dir / "amp.json";
        save_channel(bad_channel.string(), amp);
        CHECK(run_cli("channel-apply " + bad_channel.string() + " " + state_path.string()) == 2);

        const fs::path garbage = dir / "garbage.json";
        std::ofstream(garbage) << "this is not json\n";
        CHECK(run_cli("channel-apply " + garbage.string() + " " + state_path.string()) == 1);
    }
}
