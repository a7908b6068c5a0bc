#pragma once

#include <json.hpp>

#include <complex>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gaussres/channel.hpp"
#include "gaussres/maximize.hpp"
#include "gaussres/quantifiers.hpp"
#include "gaussres/state.hpp"
#include "gaussres/symplectic.hpp"

namespace gaussres {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kOrdering = "qpqp";

namespace detail {

[[nodiscard]] inline json matrix_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

[[nodiscard]] inline json vector_to_json(const Eigen::VectorXd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

[[nodiscard]] inline Eigen::MatrixXd matrix_from_json(const json& j, const char* field) {
    if (!j.is_array() || j.empty())
        throw std::invalid_argument(std::string(field) + ": expected a non-empty 2D array");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j.at(0).size());
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const json& row = j.at(static_cast<std::size_t>(r));
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            throw std::invalid_argument(std::string(field) + ": ragged matrix rows");
        for (Eigen::Index c = 0; c < cols; ++c)
            m(r, c) = row.at(static_cast<std::size_t>(c)).get<double>();
    }
    return m;
}

[[nodiscard]] inline Eigen::VectorXd vector_from_json(const json& j, const char* field) {
    if (!j.is_array())
        throw std::invalid_argument(std::string(field) + ": expected an array");
    Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i)
        v(i) = j.at(static_cast<std::size_t>(i)).get<double>();
    return v;
}

inline void write_register(json& j, const ModeTable& modes) {
    json omegas = json::array();
    for (double w : modes.omegas()) omegas.push_back(w);
    j["omegas"] = std::move(omegas);
    if (modes.uniform())
        j["spatial_modes"] = modes.uniform_spatial_count();
    else
        j["spatial_counts"] = modes.spatial_counts();
    j["ordering"] = kOrdering;
    j["schema_version"] = kSchemaVersion;
}

[[nodiscard]] inline ModeTable read_register(const json& j) {
    if (j.value("ordering", std::string()) != kOrdering)
        throw std::invalid_argument("file ordering must be \"" + std::string(kOrdering) + "\"");
    std::vector<double> omegas;
    for (const json& w : j.at("omegas")) omegas.push_back(w.get<double>());
    if (j.contains("spatial_counts"))
        return ModeTable(std::move(omegas), j.at("spatial_counts").get<std::vector<int>>());
    return ModeTable(std::move(omegas), j.at("spatial_modes").get<int>());
}

}  // namespace detail

// ---------------------------------------------------------------------------
// state files
// ---------------------------------------------------------------------------

[[nodiscard]] inline json state_to_json(const GaussianState& s, json metadata = json()) {
    json j;
    detail::write_register(j, s.modes);
    j["displacement"] = detail::vector_to_json(s.d);
    j["covariance"] = detail::matrix_to_json(s.V);
    if (!metadata.is_null())
        j["metadata"] = std::move(metadata);
    return j;
}

// Structural parsing only; physicality is the caller's check so that parse
// errors and unphysical states stay distinguishable.
[[nodiscard]] inline GaussianState state_from_json(const json& j) {
    ModeTable modes = detail::read_register(j);
    Eigen::VectorXd d = detail::vector_from_json(j.at("displacement"), "displacement");
    Eigen::MatrixXd V = detail::matrix_from_json(j.at("covariance"), "covariance");
    return GaussianState(std::move(modes), std::move(d), std::move(V));
}

// ---------------------------------------------------------------------------
// channel files
// ---------------------------------------------------------------------------

[[nodiscard]] inline json channel_to_json(const GaussianChannel& ch) {
    json j;
    detail::write_register(j, ch.modes);
    j["T"] = detail::matrix_to_json(ch.T);
    j["N"] = detail::matrix_to_json(ch.N);
    j["v"] = detail::vector_to_json(ch.v);
    return j;
}

[[nodiscard]] inline GaussianChannel channel_from_json(const json& j) {
    ModeTable modes = detail::read_register(j);
    Eigen::MatrixXd T = detail::matrix_from_json(j.at("T"), "T");
    Eigen::MatrixXd N = detail::matrix_from_json(j.at("N"), "N");
    Eigen::VectorXd v = detail::vector_from_json(j.at("v"), "v");
    return GaussianChannel(std::move(modes), std::move(T), std::move(N), std::move(v));
}

// ---------------------------------------------------------------------------
// symplectic matrix files
// ---------------------------------------------------------------------------

[[nodiscard]] inline json symplectic_to_json(const SymplecticMatrix& s) {
    json j;
    detail::write_register(j, s.modes);
    j["matrix"] = detail::matrix_to_json(s.S);
    return j;
}

[[nodiscard]] inline SymplecticMatrix symplectic_from_json(const json& j) {
    ModeTable modes = detail::read_register(j);
    Eigen::MatrixXd S = detail::matrix_from_json(j.at("matrix"), "matrix");
    if (S.rows() != modes.dim() || S.cols() != modes.dim())
        throw std::invalid_argument("matrix: dimensions do not match the mode register");
    return {std::move(modes), std::move(S)};
}

// ---------------------------------------------------------------------------
// result serialization
// ---------------------------------------------------------------------------

[[nodiscard]] inline json validation_to_json(const StateValidation& v) {
    json violations = json::array();
    for (const auto& item : v.violations)
        violations.push_back(
            {{"invariant", item.invariant}, {"residual", item.residual}, {"detail", item.detail}});
    return {{"schema_version", kSchemaVersion}, {"ok", v.ok}, {"violations", std::move(violations)}};
}

[[nodiscard]] inline json validation_to_json(const ChannelValidation& v) {
    json violations = json::array();
    for (const auto& item : v.violations)
        violations.push_back(
            {{"invariant", item.invariant}, {"residual", item.residual}, {"detail", item.detail}});
    return {{"schema_version", kSchemaVersion}, {"ok", v.ok}, {"violations", std::move(violations)}};
}

[[nodiscard]] inline json report_to_json(const ResourceReport& rep) {
    return {{"schema_version", kSchemaVersion},
            {"log_base", rep.base == LogBase::two ? "2" : "e"},
            {"tol", rep.tol},
            {"entropy", rep.entropy},
            {"coherence", rep.coherence},
            {"coherence_max", rep.coherence_max},
            {"nonuniformity", rep.nonuniformity},
            {"discord", rep.discord},
            {"entanglement", {{"value", rep.entanglement}, {"bound_only", rep.entanglement_bound_only}}},
            {"hierarchy_ok", rep.hierarchy_ok}};
}

[[nodiscard]] inline json williamson_to_json(const WilliamsonResult& w) {
    return {{"schema_version", kSchemaVersion},
            {"nu", detail::vector_to_json(w.nu)},
            {"S", detail::matrix_to_json(w.S.S)},
            {"reconstruction_residual", w.reconstruction_residual},
            {"symplectic_residual", w.symplectic_residual}};
}

[[nodiscard]] inline json bloch_messiah_to_json(const BlochMessiahResult& bm) {
    return {{"schema_version", kSchemaVersion},
            {"O1", detail::matrix_to_json(bm.O1)},
            {"O2", detail::matrix_to_json(bm.O2)},
            {"r", detail::vector_to_json(bm.r)},
            {"reconstruction_residual", bm.reconstruction_residual}};
}

[[nodiscard]] inline json passive_to_json(const PassiveUnitary& u) {
    json blocks = json::array();
    for (int f = 0; f < u.modes.frequency_count(); ++f) {
        const int base = u.modes.first_mode(f);
        const int ms = u.modes.spatial_count(f);
        json block = json::array();
        for (int r = 0; r < ms; ++r) {
            json row = json::array();
            for (int c = 0; c < ms; ++c) {
                const std::complex<double> z = u.U(base + r, base + c);
                row.push_back({z.real(), z.imag()});
            }
            block.push_back(std::move(row));
        }
        blocks.push_back(std::move(block));
    }
    json j;
    detail::write_register(j, u.modes);
    j["unitary_blocks"] = std::move(blocks);
    j["O"] = detail::matrix_to_json(u.O);
    return j;
}

[[nodiscard]] inline json outcome_to_json(const MaximizerOutcome& out) {
    return {{"schema_version", kSchemaVersion},
            {"objective", out.objective},
            {"method", out.method},
            {"achieved", out.achieved},
            {"target", out.target},
            {"gap", out.gap},
            {"transform", passive_to_json(out.transform)},
            {"transformed_state", state_to_json(out.transformed)}};
}

// ---------------------------------------------------------------------------
// file helpers
// ---------------------------------------------------------------------------

[[nodiscard]] inline json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open file: " + path);
    return json::parse(in);
}

inline void save_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open file for writing: " + path);
    out << j.dump(2) << '\n';
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

[[nodiscard]] inline GaussianState load_state(const std::string& path) {
    return state_from_json(load_json(path));
}

inline void save_state(const std::string& path, const GaussianState& s, json metadata = json()) {
    save_json(path, state_to_json(s, std::move(metadata)));
}

[[nodiscard]] inline GaussianChannel load_channel(const std::string& path) {
    return channel_from_json(load_json(path));
}

inline void save_channel(const std::string& path, const GaussianChannel& ch) {
    save_json(path, channel_to_json(ch));
}

}  // namespace gaussres
