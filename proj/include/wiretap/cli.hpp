#pragma once
// Command orchestration behind the command-line tool. `run` executes one
// validated JobConfig against the library and writes a JSON report (or a
// CSV sweep), returning the process exit code:
//   0 success, 2 parse failure, 3 validation/precondition failure,
//   4 numerical non-convergence.
// Stochastic commands demand an explicit seed and are byte-reproducible.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "wiretap/io.hpp"
#include "wiretap/uncertainty.hpp"

namespace wiretap::cli {

enum class Command { capacity, worst_case, verify_saddle, sweep, dmc_rate, dmc_quantize, dmc_order };

inline const char* command_name(Command c) {
    switch (c) {
        case Command::capacity: return "capacity";
        case Command::worst_case: return "worst-case";
        case Command::verify_saddle: return "verify-saddle";
        case Command::sweep: return "sweep";
        case Command::dmc_rate: return "dmc-rate";
        case Command::dmc_quantize: return "dmc-quantize";
        case Command::dmc_order: return "dmc-order";
    }
    return "?";
}

inline std::optional<Command> command_from_name(const std::string& s) {
    for (Command c : {Command::capacity, Command::worst_case, Command::verify_saddle, Command::sweep,
                      Command::dmc_rate, Command::dmc_quantize, Command::dmc_order})
        if (s == command_name(c)) return c;
    return std::nullopt;
}

struct JobConfig {
    Command command = Command::capacity;
    std::string channel_path;
    std::vector<double> eaves_bounds;        // --eaves-bound (sweep accepts several)
    std::string eaves_bound_kind;            // "power" | "voltage"; mandatory with a bound
    std::optional<double> legit_bound;       // --legit-bound (epsilon1, voltage gain)
    std::optional<double> power;             // --power
    std::optional<std::string> power_range;  // --power-range lo:hi:npoints (log-spaced)
    std::optional<int> rank_bound;           // --rank-bound
    long samples = 100;                      // --samples
    std::optional<std::uint64_t> seed;       // --seed
    double grid_step = 1e-3;                 // --grid-step
    long levels = 0;                         // --levels
    double order_tol = 1e-9;                 // degradedness feasibility tolerance
    std::string out_path;                    // --out; empty writes to stdout
    bool bits = false;                       // --bits
};

namespace detail {

inline void emit(const JobConfig& cfg, const std::string& content) {
    if (cfg.out_path.empty())
        std::cout << content;
    else
        io::write_text_file(cfg.out_path, content);
}

inline void emit_json(const JobConfig& cfg, io::json j) {
    j["command"] = command_name(cfg.command);
    emit(cfg, j.dump(2) + "\n");
}

inline double require_power(const JobConfig& cfg) {
    if (!cfg.power) throw validation_error("--power is required for this command");
    if (*cfg.power < 0.0) throw validation_error("--power must be nonnegative");
    return *cfg.power;
}

inline std::uint64_t require_seed(const JobConfig& cfg) {
    if (!cfg.seed) throw validation_error("--seed is required for stochastic commands");
    return *cfg.seed;
}

/// Converts the user-facing bound to the internal power-gain convention.
inline double eps_power_of(const JobConfig& cfg, double bound) {
    if (bound < 0.0) throw validation_error("--eaves-bound must be nonnegative");
    if (cfg.eaves_bound_kind == "power") return bound;
    if (cfg.eaves_bound_kind == "voltage") return bound * bound;
    throw validation_error("--eaves-bound-kind must be given as 'power' or 'voltage' whenever "
                           "--eaves-bound is supplied");
}

inline double single_eps_power(const JobConfig& cfg) {
    if (cfg.eaves_bounds.size() != 1)
        throw validation_error("this command needs exactly one --eaves-bound");
    return eps_power_of(cfg, cfg.eaves_bounds.front());
}

/// Channel file as the legitimate Gram matrix W1: Hermitian PSD files are
/// taken directly, anything else is treated as a channel matrix H and
/// converted to H^+ H.
inline mat::HermitianPSD load_w1(const std::string& path) {
    io::ParsedChannelFile parsed = io::parse_channel_file(path);
    if (std::holds_alternative<dmc::CompoundDMCFamily>(parsed))
        throw validation_error("this command needs a matrix channel file, not a DMC family");
    if (std::holds_alternative<mat::HermitianPSD>(parsed))
        return std::get<mat::HermitianPSD>(parsed);
    const mat::ComplexMatrix m = std::get<mat::ComplexMatrix>(parsed);
    if (m.rows() == m.cols() && mat::hermitian_deviation(m) <= mat::kHermitianTol) {
        try {
            return mat::HermitianPSD::from_matrix(m);
        } catch (const validation_error&) {
            // Hermitian but indefinite: fall through and treat as a channel matrix
        }
    }
    return mat::HermitianPSD::gram(m);
}

/// Channel file as the nominal channel matrix H0 (double-sided commands).
inline mat::ComplexMatrix load_h0(const std::string& path) {
    io::ParsedChannelFile parsed = io::parse_channel_file(path);
    if (std::holds_alternative<dmc::CompoundDMCFamily>(parsed))
        throw validation_error("this command needs a matrix channel file, not a DMC family");
    if (std::holds_alternative<mat::HermitianPSD>(parsed))
        return std::get<mat::HermitianPSD>(parsed).matrix();
    return std::get<mat::ComplexMatrix>(parsed);
}

inline dmc::CompoundDMCFamily load_family(const std::string& path) {
    io::ParsedChannelFile parsed = io::parse_channel_file(path);
    if (!std::holds_alternative<dmc::CompoundDMCFamily>(parsed))
        throw validation_error("this command needs a DMC family file with a \"states\" array");
    return std::get<dmc::CompoundDMCFamily>(parsed);
}

inline secrecy::CapacityReport compute_capacity(const JobConfig& cfg) {
    const double eps_power = single_eps_power(cfg);
    const double p_total = require_power(cfg);
    if (cfg.legit_bound && *cfg.legit_bound < 0.0)
        throw validation_error("--legit-bound must be nonnegative");

    if (cfg.legit_bound) {
        const uncertainty::LegitimateUncertainty legit{load_h0(cfg.channel_path), *cfg.legit_bound};
        if (cfg.rank_bound) {
            RngStream rng(require_seed(cfg));
            return uncertainty::capacity_double_rank(
                legit, uncertainty::EavesdropperUncertainty::power_gain(eps_power, cfg.rank_bound),
                p_total, rng);
        }
        return uncertainty::capacity_double_sided(
            legit, uncertainty::EavesdropperUncertainty::power_gain(eps_power), p_total);
    }
    const mat::HermitianPSD w1 = load_w1(cfg.channel_path);
    if (cfg.rank_bound)
        return uncertainty::capacity_rank_constrained(
            w1, uncertainty::EavesdropperUncertainty::power_gain(eps_power, cfg.rank_bound), p_total);
    return secrecy::capacity_isotropic(w1, eps_power, p_total);
}

inline void run_capacity(const JobConfig& cfg) {
    emit_json(cfg, io::capacity_report_to_json(compute_capacity(cfg), cfg.bits));
}

inline void run_verify_saddle(const JobConfig& cfg) {
    const double eps_power = single_eps_power(cfg);
    const double p_total = require_power(cfg);
    if (cfg.samples < 0) throw validation_error("--samples must be nonnegative");
    const std::uint64_t seed = require_seed(cfg);

    verify::ScenarioConfig scenario = [&] {
        if (cfg.legit_bound) {
            if (*cfg.legit_bound < 0.0) throw validation_error("--legit-bound must be nonnegative");
            const mat::ComplexMatrix h0 = load_h0(cfg.channel_path);
            return cfg.rank_bound ? verify::ScenarioConfig::double_rank(h0, *cfg.legit_bound,
                                                                        eps_power, *cfg.rank_bound)
                                  : verify::ScenarioConfig::double_sided(h0, *cfg.legit_bound,
                                                                         eps_power);
        }
        const mat::HermitianPSD w1 = load_w1(cfg.channel_path);
        return cfg.rank_bound
                   ? verify::ScenarioConfig::rank_constrained(w1, eps_power, *cfg.rank_bound)
                   : verify::ScenarioConfig::isotropic(w1, eps_power);
    }();
    emit_json(cfg, io::saddle_report_to_json(verify::verify_saddle(scenario, p_total, cfg.samples, seed)));
}

inline std::vector<double> parse_power_range(const std::string& range) {
    double lo = 0.0, hi = 0.0;
    long n = 0;
    char extra = '\0';
    if (std::sscanf(range.c_str(), "%lf:%lf:%ld%c", &lo, &hi, &n, &extra) != 3)
        throw validation_error("--power-range must look like lo:hi:npoints");
    if (!(lo > 0.0) || !(hi > lo) || n < 2)
        throw validation_error("--power-range needs 0 < lo < hi and npoints >= 2");
    std::vector<double> out(static_cast<std::size_t>(n));
    const double ratio = hi / lo;
    for (long k = 0; k < n; ++k)
        out[static_cast<std::size_t>(k)] =
            lo * std::pow(ratio, static_cast<double>(k) / static_cast<double>(n - 1));
    return out;
}

inline void run_sweep(const JobConfig& cfg) {
    if (cfg.eaves_bounds.empty()) throw validation_error("sweep needs at least one --eaves-bound");
    if (!cfg.power_range) throw validation_error("sweep needs --power-range lo:hi:npoints");
    const std::vector<double> powers = parse_power_range(*cfg.power_range);
    std::vector<double> eps_powers;
    for (double b : cfg.eaves_bounds) eps_powers.push_back(eps_power_of(cfg, b));
    std::sort(eps_powers.begin(), eps_powers.end());

    const mat::HermitianPSD w1 = load_w1(cfg.channel_path);
    const secrecy::LegitimateSpectrum spectrum = secrecy::spectrum_of(w1);
    std::vector<io::SweepRow> rows;
    rows.reserve(eps_powers.size() * powers.size());
    for (double eps : eps_powers)
        for (double p : powers) {
            const secrecy::CapacityReport rep = secrecy::capacity_for_spectrum(spectrum, eps, p);
            rows.push_back({p, eps, rep.capacity, rep.active_count, rep.allocation.water_level});
        }
    detail::emit(cfg, io::sweep_to_csv(rows));
}

inline void run_dmc_rate(const JobConfig& cfg) {
    const dmc::CompoundDMCFamily family = load_family(cfg.channel_path);
    const auto [rate, argmax] = dmc::compound_rate_lower_bound(family, cfg.grid_step);
    const double scale = cfg.bits ? 1.0 / std::log(2.0) : 1.0;
    emit_json(cfg, io::json{{"units", cfg.bits ? "bits" : "nats"},
                            {"rate", rate * scale},
                            {"rate_nats", rate},
                            {"grid_step", cfg.grid_step},
                            {"argmax_input", argmax.probs()}});
}

inline io::json bound_check_to_json(const dmc::BoundCheck& b) {
    return io::json{{"holds", b.holds}, {"margin", b.margin}};
}

inline void run_dmc_quantize(const JobConfig& cfg) {
    const dmc::CompoundDMCFamily family = load_family(cfg.channel_path);
    if (cfg.levels < 2) throw validation_error("--levels is required (L >= 2 |Y|^2 |Z|^2)");
    if (cfg.samples < 0) throw validation_error("--samples must be nonnegative");
    const std::uint64_t seed = require_seed(cfg);

    io::json states = io::json::array();
    for (std::size_t s = 0; s < family.states.size(); ++s) {
        const dmc::WiretapPair& pair = family.states[s];
        const int z = pair.eaves.out_size();
        const int y = pair.legit.out_size();
        const dmc::FiniteChannel legit_q = dmc::quantize_channel(pair.legit, cfg.levels, z);
        const dmc::FiniteChannel eaves_q = dmc::quantize_channel(pair.eaves, cfg.levels, y);
        const dmc::QuantizationReport rep = dmc::quantization_check(
            pair.legit, pair.eaves, legit_q, eaves_q, cfg.levels, cfg.samples,
            derive_seed(seed, s));
        io::json violations = io::json::array();
        for (const auto* list : {&rep.mult_violations_legit, &rep.mult_violations_eaves})
            for (const dmc::MultiplicativeViolation& v : *list)
                violations.push_back(io::json{{"x", v.state_x},
                                              {"y", v.state_y},
                                              {"original", v.original},
                                              {"quantized", v.quantized}});
        states.push_back(io::json{{"state", s},
                                  {"legit_quantized", io::channel_to_json(legit_q)},
                                  {"eaves_quantized", io::channel_to_json(eaves_q)},
                                  {"additive_legit", bound_check_to_json(rep.additive_legit)},
                                  {"additive_eaves", bound_check_to_json(rep.additive_eaves)},
                                  {"multiplicative_legit", bound_check_to_json(rep.mult_legit)},
                                  {"multiplicative_eaves", bound_check_to_json(rep.mult_eaves)},
                                  {"mi_legit", bound_check_to_json(rep.mi_legit)},
                                  {"mi_eaves", bound_check_to_json(rep.mi_eaves)},
                                  {"additive_limit", rep.additive_limit},
                                  {"mi_limit", rep.mi_limit},
                                  {"multiplicative_violations", std::move(violations)}});
    }
    emit_json(cfg, io::json{{"levels", cfg.levels}, {"seed", seed}, {"states", std::move(states)}});
}

inline void run_dmc_order(const JobConfig& cfg) {
    const dmc::CompoundDMCFamily family = load_family(cfg.channel_path);
    if (cfg.samples < 0) throw validation_error("--samples must be nonnegative");
    if (cfg.order_tol <= 0.0) throw validation_error("--tol must be positive");
    const std::uint64_t seed = require_seed(cfg);

    io::json states = io::json::array();
    for (std::size_t s = 0; s < family.states.size(); ++s) {
        const dmc::WiretapPair& pair = family.states[s];
        const bool degr = dmc::is_degraded(pair.legit, pair.eaves, cfg.order_tol);
        const dmc::OrderingCertificate cap =
            dmc::is_less_capable(pair.legit, pair.eaves, cfg.samples, derive_seed(seed, 2 * s));
        const dmc::OrderingCertificate nois = dmc::is_noisier_concavity(
            pair.legit, pair.eaves, cfg.samples, derive_seed(seed, 2 * s + 1));
        io::json jc{{"holds", cap.holds}, {"sampled", cap.sampled}, {"samples", cap.samples_checked}};
        if (cap.witness) jc["witness"] = cap.witness->probs();
        io::json jn{{"holds", nois.holds}, {"sampled", nois.sampled}, {"samples", nois.samples_checked}};
        if (nois.witness_pair)
            jn["witness_pair"] =
                io::json::array({nois.witness_pair->first.probs(), nois.witness_pair->second.probs()});
        states.push_back(io::json{{"state", s},
                                  {"degraded", degr},
                                  {"less_capable", std::move(jc)},
                                  {"noisier_concavity", std::move(jn)}});
    }
    emit_json(cfg, io::json{{"seed", seed}, {"tolerance", cfg.order_tol}, {"states", std::move(states)}});
}

}  // namespace detail

/// Runs one job; returns the process exit code and prints a machine-readable
/// error object to stderr on failure.
inline int run(const JobConfig& cfg) {
    const auto fail = [](int code, const char* kind, const std::string& msg) {
        std::cerr << io::json{{"error", {{"exit_code", code}, {"kind", kind}, {"message", msg}}}}.dump()
                  << "\n";
        return code;
    };
    try {
        switch (cfg.command) {
            case Command::capacity:
            case Command::worst_case:
                detail::run_capacity(cfg);
                break;
            case Command::verify_saddle:
                detail::run_verify_saddle(cfg);
                break;
            case Command::sweep:
                detail::run_sweep(cfg);
                break;
            case Command::dmc_rate:
                detail::run_dmc_rate(cfg);
                break;
            case Command::dmc_quantize:
                detail::run_dmc_quantize(cfg);
                break;
            case Command::dmc_order:
                detail::run_dmc_order(cfg);
                break;
        }
        return 0;
    } catch (const io::parse_error& e) {
        return fail(2, "parse", e.what());
    } catch (const io::json::exception& e) {
        return fail(2, "parse", e.what());
    } catch (const validation_error& e) {
        return fail(3, "validation", e.what());
    } catch (const convergence_error& e) {
        return fail(4, "convergence", e.what());
    }
}

}  // namespace wiretap::cli
