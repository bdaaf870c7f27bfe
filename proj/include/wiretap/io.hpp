#pragma once
// JSON channel-file parsing and report serialization, plus the CSV sweep
// writer. Numbers round-trip bit-exactly (shortest decimal form that
// re-reads to the same double); infinities are carried as the string "inf".
//
// Channel file formats:
//   complex matrix   {"rows": r, "cols": c, "entries": [[[re, im], ...], ...]}
//   hermitian (alt)  {"eigenvalues": [...], "eigenvectors": <entries>}
//   finite channel   {"matrix": [[p, ...], ...]}          (rows = inputs)
//   wiretap family   {"states": [{"legit": ch, "eaves": ch}, ...]}

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "wiretap/dmc.hpp"
#include "wiretap/matops.hpp"
#include "wiretap/secrecy.hpp"
#include "wiretap/verify.hpp"

namespace wiretap::io {

using nlohmann::json;

/// Malformed input file or JSON payload.
class parse_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline json real_to_json(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

inline double real_from_json(const json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        throw parse_error("expected a number or \"inf\", got \"" + s + "\"");
    }
    return j.get<double>();
}

inline json matrix_to_json(const mat::ComplexMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j)
            row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

inline mat::ComplexMatrix matrix_from_json(const json& j) {
    if (!j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
        throw parse_error("matrix object needs \"rows\", \"cols\" and \"entries\"");
    const int rows = j.at("rows").get<int>();
    const int cols = j.at("cols").get<int>();
    if (rows < 1 || cols < 1) throw parse_error("matrix dimensions must be at least 1x1");
    const json& e = j.at("entries");
    if (!e.is_array() || static_cast<int>(e.size()) != rows)
        throw parse_error("\"entries\" must hold " + std::to_string(rows) + " rows");
    mat::ComplexMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const json& row = e.at(static_cast<std::size_t>(i));
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw parse_error("entries row " + std::to_string(i) + " must hold " +
                              std::to_string(cols) + " [re, im] pairs");
        for (int c = 0; c < cols; ++c) {
            const json& cell = row.at(static_cast<std::size_t>(c));
            if (cell.is_number()) {
                m(i, c) = cell.get<double>();
            } else if (cell.is_array() && cell.size() == 2) {
                m(i, c) = mat::cplx{cell.at(0).get<double>(), cell.at(1).get<double>()};
            } else {
                throw parse_error("entry (" + std::to_string(i) + ", " + std::to_string(c) +
                                  ") must be a number or an [re, im] pair");
            }
        }
    }
    if (!m.all_finite()) throw parse_error("matrix has non-finite entries");
    return m;
}

/// Hermitian PSD from either the plain matrix form or the eigensystem form.
inline mat::HermitianPSD psd_from_json(const json& j) {
    if (j.contains("eigenvalues")) {
        if (!j.contains("eigenvectors"))
            throw parse_error("eigensystem form needs \"eigenvectors\" next to \"eigenvalues\"");
        std::vector<double> eigs;
        for (const json& v : j.at("eigenvalues")) eigs.push_back(v.get<double>());
        const mat::ComplexMatrix basis = matrix_from_json(j.at("eigenvectors"));
        if (mat::max_abs_diff(basis.adjoint() * basis, mat::ComplexMatrix::identity(basis.cols())) >
            1e-10)
            throw parse_error("\"eigenvectors\" is not unitary within 1e-10");
        for (double g : eigs)
            if (g < 0.0) throw parse_error("eigensystem form requires nonnegative eigenvalues");
        return mat::HermitianPSD::from_eigensystem(basis, eigs);
    }
    const mat::ComplexMatrix m = matrix_from_json(j);
    try {
        return mat::HermitianPSD::from_matrix(m);
    } catch (const validation_error& err) {
        throw parse_error(std::string("not a Hermitian PSD matrix: ") + err.what());
    }
}

inline dmc::FiniteChannel channel_from_json(const json& j) {
    if (!j.contains("matrix")) throw parse_error("finite channel object needs \"matrix\"");
    const json& rows = j.at("matrix");
    if (!rows.is_array() || rows.empty()) throw parse_error("channel \"matrix\" must be a nonempty array");
    const int in_size = static_cast<int>(rows.size());
    const int out_size = static_cast<int>(rows.at(0).size());
    std::vector<double> p;
    p.reserve(static_cast<std::size_t>(in_size) * out_size);
    for (int x = 0; x < in_size; ++x) {
        const json& row = rows.at(static_cast<std::size_t>(x));
        if (static_cast<int>(row.size()) != out_size)
            throw parse_error("channel row " + std::to_string(x) + " has inconsistent length");
        for (const json& v : row) p.push_back(v.get<double>());
    }
    try {
        return dmc::FiniteChannel(in_size, out_size, std::move(p));
    } catch (const validation_error& err) {
        throw parse_error(std::string("invalid finite channel: ") + err.what());
    }
}

inline json channel_to_json(const dmc::FiniteChannel& ch) {
    json rows = json::array();
    for (int x = 0; x < ch.in_size(); ++x) {
        json row = json::array();
        for (int y = 0; y < ch.out_size(); ++y) row.push_back(ch(x, y));
        rows.push_back(std::move(row));
    }
    return json{{"matrix", std::move(rows)}};
}

inline dmc::CompoundDMCFamily family_from_json(const json& j) {
    if (!j.contains("states")) throw parse_error("family object needs \"states\"");
    dmc::CompoundDMCFamily fam;
    for (const json& s : j.at("states")) {
        if (!s.contains("legit") || !s.contains("eaves"))
            throw parse_error("each family state needs \"legit\" and \"eaves\" channels");
        fam.states.push_back({channel_from_json(s.at("legit")), channel_from_json(s.at("eaves"))});
    }
    try {
        fam.validate();
    } catch (const validation_error& err) {
        throw parse_error(err.what());
    }
    return fam;
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open file: " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw parse_error(std::string("JSON parse failure in ") + path + ": " + e.what());
    }
}

using ParsedChannelFile =
    std::variant<mat::ComplexMatrix, mat::HermitianPSD, dmc::CompoundDMCFamily>;

/// Sniffs the file's object shape: a "states" key yields a wiretap family,
/// an "eigenvalues" key the Hermitian convenience form, anything else a
/// plain complex matrix.
inline ParsedChannelFile parse_channel_file(const std::string& path) {
    const json j = load_json_file(path);
    if (j.contains("states")) return family_from_json(j);
    if (j.contains("eigenvalues")) return psd_from_json(j);
    return matrix_from_json(j);
}

inline json allocation_to_json(const secrecy::PowerAllocation& a) {
    json powers = json::array();
    for (double p : a.powers) powers.push_back(p);
    return json{{"powers", std::move(powers)},
                {"water_level", real_to_json(a.water_level)},
                {"active_set", a.active_set},
                {"total", a.total}};
}

inline json capacity_report_to_json(const secrecy::CapacityReport& r, bool bits) {
    const double scale = bits ? 1.0 / std::log(2.0) : 1.0;
    json j{{"units", bits ? "bits" : "nats"},
           {"capacity", real_to_json(r.capacity * scale)},
           {"capacity_nats", real_to_json(r.capacity)},
           {"high_snr_asymptote_nats", real_to_json(r.high_snr_asymptote)},
           {"active_modes", r.active_count},
           {"allocation", allocation_to_json(r.allocation)},
           {"optimal_covariance", matrix_to_json(r.optimal_covariance.matrix())},
           {"worst_eaves", matrix_to_json(r.worst_eaves.matrix())}};
    if (r.worst_legit_gram) j["worst_legit_gram"] = matrix_to_json(r.worst_legit_gram->matrix());
    if (r.worst_eaves_channel) j["worst_eaves_channel"] = matrix_to_json(*r.worst_eaves_channel);
    return j;
}

inline json saddle_report_to_json(const verify::SaddleReport& r) {
    return json{{"scenario", verify::scenario_name(r.scenario)},
                {"samples", r.samples},
                {"seed", r.seed},
                {"capacity_nats", real_to_json(r.capacity)},
                {"max_left_violation", real_to_json(r.max_left_violation)},
                {"max_right_violation", real_to_json(r.max_right_violation)},
                {"equality_perturbation_sampled", r.equality_perturbation_sampled},
                {"pass", r.pass()},
                // a validated saddle point carries the worst-case capacity over
                // to the compound setting under both leakage criteria, so the
                // weak and strong secrecy capacities coincide
                {"weak_equals_strong_secrecy", r.pass()}};
}

/// One sweep row; the CSV schema is
/// p_total,epsilon,capacity_nats,active_modes,water_level.
struct SweepRow {
    double p_total = 0.0;
    double epsilon = 0.0;
    double capacity_nats = 0.0;
    int active_modes = 0;
    double water_level = 0.0;
};

inline std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "p_total,epsilon,capacity_nats,active_modes,water_level\n";
    for (const SweepRow& r : rows)
        out << format_real(r.p_total) << ',' << format_real(r.epsilon) << ','
            << format_real(r.capacity_nats) << ',' << r.active_modes << ','
            << format_real(r.water_level) << '\n';
    return out.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw parse_error("cannot open output file: " + path);
    out << content;
}

}  // namespace wiretap::io
