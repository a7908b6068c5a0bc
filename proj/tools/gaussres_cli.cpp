#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <gaussres/gaussres.hpp>

namespace {

using gaussres::json;

constexpr int kExitBadInput = 1;
constexpr int kExitPhysicality = 2;
constexpr int kExitTolerance = 3;

int fail(int code, const std::string& kind, const std::string& message,
         json extra = json::object()) {
    json err{{"error", {{"code", code}, {"kind", kind}, {"message", message}}}};
    for (auto& [key, value] : extra.items()) err["error"][key] = value;
    std::cerr << err.dump() << '\n';
    return code;
}

void emit_json(const json& j, const std::string& out_path) {
    if (out_path.empty())
        std::cout << j.dump(2) << '\n';
    else
        gaussres::save_json(out_path, j);
}

void emit_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out)
            throw std::runtime_error("cannot open file for writing: " + out_path);
        out << text;
    }
}

std::optional<gaussres::ModeTable> parse_register(const std::string& modes_spec,
                                                  const std::string& omegas_csv,
                                                  std::string& error) {
    int mf = 0;
    int ms = 0;
    if (std::sscanf(modes_spec.c_str(), "%dx%d", &mf, &ms) != 2 || mf < 1 || ms < 1) {
        error = "--modes expects <frequencies>x<spatial modes>, e.g. 2x3";
        return std::nullopt;
    }
    std::vector<double> omegas;
    if (omegas_csv.empty()) {
        for (int f = 0; f < mf; ++f) omegas.push_back(static_cast<double>(f + 1));
    } else {
        std::stringstream ss(omegas_csv);
        std::string item;
        while (std::getline(ss, item, ',')) omegas.push_back(std::stod(item));
        if (static_cast<int>(omegas.size()) != mf) {
            error = "--omegas must list exactly " + std::to_string(mf) + " frequencies";
            return std::nullopt;
        }
    }
    try {
        return gaussres::ModeTable(std::move(omegas), ms);
    } catch (const std::exception& e) {
        error = e.what();
        return std::nullopt;
    }
}

std::vector<int> parse_int_csv(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    return out;
}

std::optional<gaussres::GaussianState> load_state_stage(const std::string& path, int& rc) {
    try {
        return gaussres::load_state(path);
    } catch (const std::exception& e) {
        rc = fail(kExitBadInput, "invalid_input", std::string("cannot load state file: ") + e.what(),
                  {{"file", path}});
        return std::nullopt;
    }
}

bool validate_state_stage(const gaussres::GaussianState& s, double tol, int& rc) {
    const gaussres::StateValidation check = gaussres::validate_state(s, tol);
    if (check.ok)
        return true;
    rc = fail(kExitPhysicality, "physicality", "state fails physicality",
              {{"validation", gaussres::validation_to_json(check)}});
    return false;
}

int run_validate(const std::string& path, double tol) {
    int rc = 0;
    auto state = load_state_stage(path, rc);
    if (!state)
        return rc;
    const gaussres::StateValidation check = gaussres::validate_state(*state, tol);
    std::cout << gaussres::validation_to_json(check).dump(2) << '\n';
    if (check.ok)
        return 0;
    return fail(kExitPhysicality, "physicality", "state fails physicality",
                {{"violations", static_cast<int>(check.violations.size())}});
}

int run_report(const std::string& path, double tol, const std::string& base_name,
               const std::string& bipartition_csv, const std::string& out_path) {
    int rc = 0;
    auto state = load_state_stage(path, rc);
    if (!state)
        return rc;
    if (!validate_state_stage(*state, 1e-9, rc))
        return rc;
    const gaussres::LogBase base =
        base_name == "2" ? gaussres::LogBase::two : gaussres::LogBase::natural;
    std::optional<std::vector<int>> bipartition;
    if (!bipartition_csv.empty())
        bipartition = parse_int_csv(bipartition_csv);
    try {
        const gaussres::ResourceReport rep =
            gaussres::hierarchy_report(*state, bipartition, base, tol);
        emit_json(gaussres::report_to_json(rep), out_path);
        return 0;
    } catch (const std::exception& e) {
        return fail(kExitTolerance, "internal", e.what());
    }
}

int run_williamson(const std::string& path, double tol, const std::string& out_path) {
    int rc = 0;
    auto state = load_state_stage(path, rc);
    if (!state)
        return rc;
    if (!validate_state_stage(*state, 1e-9, rc))
        return rc;
    try {
        emit_json(gaussres::williamson_to_json(gaussres::williamson(*state, tol)), out_path);
        return 0;
    } catch (const std::exception& e) {
        return fail(kExitTolerance, "decomposition_residual", e.what());
    }
}

int run_bloch_messiah(const std::string& path, double tol, const std::string& out_path) {
    gaussres::SymplecticMatrix input{gaussres::ModeTable({1.0}, 1), Eigen::MatrixXd::Identity(2, 2)};
    try {
        input = gaussres::symplectic_from_json(gaussres::load_json(path));
    } catch (const std::exception& e) {
        return fail(kExitBadInput, "invalid_input",
                    std::string("cannot load symplectic matrix file: ") + e.what(),
                    {{"file", path}});
    }
    const double s_residual = gaussres::symplectic_residual(input.S);
    if (s_residual > 1e-8)
        return fail(kExitPhysicality, "not_symplectic",
                    "input matrix is not symplectic (residual " + std::to_string(s_residual) + ")");
    try {
        emit_json(gaussres::bloch_messiah_to_json(gaussres::bloch_messiah(input, tol)), out_path);
        return 0;
    } catch (const std::exception& e) {
        return fail(kExitTolerance, "decomposition_residual", e.what());
    }
}

int run_maximize(const std::string& path, const std::string& objective_name,
                 const std::string& bipartition_csv, int samples, std::uint64_t seed,
                 const std::string& out_path) {
    int rc = 0;
    auto state = load_state_stage(path, rc);
    if (!state)
        return rc;
    if (!validate_state_stage(*state, 1e-9, rc))
        return rc;

    gaussres::PassiveSearchOptions opt;
    opt.budget = samples;
    opt.seed = seed;
    opt.refine = true;
    if (objective_name == "coherence") {
        opt.objective = gaussres::SearchObjective::coherence;
    } else if (objective_name == "discord") {
        opt.objective = gaussres::SearchObjective::discord;
    } else if (objective_name == "entanglement") {
        if (bipartition_csv.empty())
            return fail(kExitBadInput, "invalid_arguments",
                        "--objective entanglement requires --bipartition");
        opt.objective = gaussres::SearchObjective::entanglement_pure;
        opt.bipartition = parse_int_csv(bipartition_csv);
    } else {
        return fail(kExitBadInput, "invalid_arguments",
                    "--objective must be one of coherence, discord, entanglement");
    }
    try {
        emit_json(gaussres::outcome_to_json(gaussres::passive_search(*state, opt)), out_path);
        return 0;
    } catch (const std::domain_error& e) {
        return fail(kExitPhysicality, "precondition", e.what());
    } catch (const std::invalid_argument& e) {
        return fail(kExitBadInput, "invalid_arguments", e.what());
    } catch (const std::exception& e) {
        return fail(kExitTolerance, "internal", e.what());
    }
}

int run_channel_apply(const std::string& channel_path, const std::string& state_path,
                      double tol, const std::string& out_path) {
    std::optional<gaussres::GaussianChannel> channel;
    try {
        channel = gaussres::load_channel(channel_path);
    } catch (const std::exception& e) {
        return fail(kExitBadInput, "invalid_input",
                    std::string("cannot load channel file: ") + e.what(),
                    {{"file", channel_path}});
    }
    int rc = 0;
    auto state = load_state_stage(state_path, rc);
    if (!state)
        return rc;
    const gaussres::ChannelValidation cp = gaussres::validate_channel(*channel, tol);
    if (!cp.ok)
        return fail(kExitPhysicality, "cp_violation", "channel is not completely positive",
                    {{"validation", gaussres::validation_to_json(cp)}});
    if (!validate_state_stage(*state, 1e-9, rc))
        return rc;
    try {
        const gaussres::GaussianState out = gaussres::apply_channel(*state, *channel, tol);
        emit_json(gaussres::state_to_json(out), out_path);
        return 0;
    } catch (const std::exception& e) {
        return fail(kExitTolerance, "internal", e.what());
    }
}

int run_sweep_cmd(const std::string& modes_spec, const std::string& omegas_csv, int samples,
                  std::uint64_t seed, double r_max, double nbar_max, double tol,
                  const std::string& base_name, const std::string& out_path) {
    std::string register_error;
    auto modes = parse_register(modes_spec, omegas_csv, register_error);
    if (!modes)
        return fail(kExitBadInput, "invalid_arguments", register_error);
    gaussres::SweepConfig cfg(*modes);
    cfg.samples = samples;
    cfg.seed = seed;
    cfg.r_max = r_max;
    cfg.nbar_max = nbar_max;
    cfg.tol = tol;
    cfg.base = base_name == "2" ? gaussres::LogBase::two : gaussres::LogBase::natural;
    try {
        const gaussres::SweepResult result = gaussres::run_sweep(cfg);
        if (!result.ok)
            return fail(kExitTolerance, "hierarchy_violation", result.message,
                        {{"sample", result.violation_sample}, {"seed", cfg.seed}});
        emit_text(result.csv, out_path);
        return 0;
    } catch (const std::exception& e) {
        return fail(kExitTolerance, "internal", e.what());
    }
}

int run_random_state(const std::string& modes_spec, const std::string& omegas_csv,
                     std::uint64_t seed, double r_max, double nbar_max,
                     const std::string& out_path) {
    std::string register_error;
    auto modes = parse_register(modes_spec, omegas_csv, register_error);
    if (!modes)
        return fail(kExitBadInput, "invalid_arguments", register_error);
    auto rng = gaussres::detail::candidate_engine(seed, 0);
    gaussres::RandomStateParams params;
    params.r_max = r_max;
    params.nbar_max = nbar_max;
    const gaussres::GaussianState s = gaussres::random_state(*modes, rng, params);
    emit_json(gaussres::state_to_json(s, {{"generator", "random-state"}, {"seed", seed}}),
              out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gaussres: numerical toolkit for multimode Gaussian quantum states"};
    app.require_subcommand(1);

    int rc = 0;
    std::string in_path;
    std::string channel_path;
    std::string out_path;
    std::string modes_spec = "2x2";
    std::string omegas_csv;
    std::string base_name = "e";
    std::string objective_name = "coherence";
    std::string bipartition_csv;
    double tol = 0.0;
    double r_max = 2.0;
    double nbar_max = 3.0;
    int samples = 0;
    std::uint64_t seed = 0;

    auto* validate = app.add_subcommand("validate", "check a state file for physicality");
    validate->add_option("file", in_path, "state JSON file")->required();
    validate->add_option("--tol", tol, "physicality tolerance")->default_val(1e-9);
    validate->callback([&]() { rc = run_validate(in_path, tol); });

    auto* report = app.add_subcommand("report", "compute all resource quantifiers");
    report->add_option("file", in_path, "state JSON file")->required();
    report->add_option("--tol", tol, "hierarchy check tolerance")->default_val(1e-8);
    report->add_option("--log-base", base_name, "logarithm base: e or 2")
        ->check(CLI::IsMember({"e", "2"}));
    report->add_option("--bipartition", bipartition_csv,
                       "comma-separated mode indices of one side (enables exact E on pure states)");
    report->add_option("--out", out_path, "write JSON here instead of stdout");
    report->callback([&]() { rc = run_report(in_path, tol, base_name, bipartition_csv, out_path); });

    auto* wil = app.add_subcommand("williamson", "normal-mode decomposition of a state file");
    wil->add_option("file", in_path, "state JSON file")->required();
    wil->add_option("--tol", tol, "reconstruction residual bound")->default_val(1e-10);
    wil->add_option("--out", out_path, "write JSON here instead of stdout");
    wil->callback([&]() { rc = run_williamson(in_path, tol, out_path); });

    auto* bm = app.add_subcommand("bloch-messiah", "factor a symplectic matrix file");
    bm->add_option("file", in_path, "symplectic matrix JSON file")->required();
    bm->add_option("--tol", tol, "reconstruction residual bound")->default_val(1e-10);
    bm->add_option("--out", out_path, "write JSON here instead of stdout");
    bm->callback([&]() { rc = run_bloch_messiah(in_path, tol, out_path); });

    auto* maximize = app.add_subcommand("maximize", "search passive unitaries for a quantifier");
    maximize->add_option("file", in_path, "state JSON file")->required();
    maximize->add_option("--objective", objective_name, "coherence, discord, or entanglement")
        ->check(CLI::IsMember({"coherence", "discord", "entanglement"}));
    maximize->add_option("--bipartition", bipartition_csv,
                         "comma-separated mode indices (entanglement objective)");
    maximize->add_option("--samples", samples, "search budget")->default_val(500);
    maximize->add_option("--seed", seed, "search seed")->default_val(0);
    maximize->add_option("--out", out_path, "write JSON here instead of stdout");
    maximize->callback([&]() {
        rc = run_maximize(in_path, objective_name, bipartition_csv, samples, seed, out_path);
    });

    auto* chan = app.add_subcommand("channel-apply", "push a state file through a channel file");
    chan->add_option("channel", channel_path, "channel JSON file")->required();
    chan->add_option("state", in_path, "state JSON file")->required();
    chan->add_option("--tol", tol, "complete-positivity tolerance")->default_val(1e-9);
    chan->add_option("--out", out_path, "write JSON here instead of stdout");
    chan->callback([&]() { rc = run_channel_apply(channel_path, in_path, tol, out_path); });

    auto* sweep = app.add_subcommand("sweep", "Monte-Carlo hierarchy sweep, CSV output");
    sweep->add_option("--samples", samples, "number of sampled states")->default_val(100);
    sweep->add_option("--seed", seed, "sweep seed (required: no wall-clock default)")->required();
    sweep->add_option("--modes", modes_spec, "register as <frequencies>x<spatial modes>");
    sweep->add_option("--omegas", omegas_csv, "comma-separated frequencies");
    sweep->add_option("--r-max", r_max, "max squeezing per sample")->default_val(2.0);
    sweep->add_option("--nbar-max", nbar_max, "max thermal occupation per normal mode")
        ->default_val(3.0);
    sweep->add_option("--tol", tol, "hierarchy tolerance")->default_val(1e-8);
    sweep->add_option("--log-base", base_name, "logarithm base: e or 2")
        ->check(CLI::IsMember({"e", "2"}));
    sweep->add_option("--out", out_path, "write CSV here instead of stdout");
    sweep->callback([&]() {
        rc = run_sweep_cmd(modes_spec, omegas_csv, samples, seed, r_max, nbar_max, tol, base_name,
                           out_path);
    });

    auto* rnd = app.add_subcommand("random-state", "emit a seeded random state file");
    rnd->add_option("--modes", modes_spec, "register as <frequencies>x<spatial modes>");
    rnd->add_option("--omegas", omegas_csv, "comma-separated frequencies");
    rnd->add_option("--seed", seed, "generator seed")->default_val(0);
    rnd->add_option("--r-max", r_max, "max squeezing")->default_val(2.0);
    rnd->add_option("--nbar-max", nbar_max, "max thermal occupation per normal mode")
        ->default_val(3.0);
    rnd->add_option("--out", out_path, "write JSON here instead of stdout");
    rnd->callback([&]() {
        rc = run_random_state(modes_spec, omegas_csv, seed, r_max, nbar_max, out_path);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e);
        return fail(kExitBadInput, "cli_parse", e.what());
    }
    return rc;
}
