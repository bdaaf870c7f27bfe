// Command-line front end: parses argv into a JobConfig and hands off to
// cli::run. See README.md for the file formats and exit codes.

#include <CLI11.hpp>

#include "wiretap/cli.hpp"

int main(int argc, char** argv) {
    using wiretap::cli::Command;
    using wiretap::cli::JobConfig;

    CLI::App app{"Compound Gaussian MIMO wiretap capacities, worst-case channels and "
                 "finite-alphabet verification tools"};
    app.require_subcommand(1);

    JobConfig cfg;
    std::string power_range;
    std::uint64_t seed = 0;
    double power = 0.0, legit_bound = 0.0;
    int rank_bound = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--channel", cfg.channel_path, "input channel file (JSON)")->required();
        sub->add_option("--out", cfg.out_path, "output path (default: stdout)");
        return sub;
    };
    auto add_eaves = [&](CLI::App* sub, bool multi) {
        if (multi)
            sub->add_option("--eaves-bound", cfg.eaves_bounds, "eavesdropper gain bound(s)")
                ->required();
        else
            sub->add_option("--eaves-bound", cfg.eaves_bounds, "eavesdropper gain bound")
                ->expected(1)
                ->required();
        sub->add_option("--eaves-bound-kind", cfg.eaves_bound_kind,
                        "convention for the bound: 'power' (on lambda_1(W2)) or 'voltage' (on "
                        "sigma_1(H2))")
            ->required();
    };
    auto add_mimo = [&](CLI::App* sub) {
        sub->add_option("--power", power, "total transmit power P_T");
        sub->add_option("--legit-bound", legit_bound,
                        "legitimate-channel perturbation bound epsilon_1 (voltage gain; switches to "
                        "the double-sided model, channel file is the nominal H0)");
        sub->add_option("--rank-bound", rank_bound, "eavesdropper rank bound r2");
        sub->add_option("--seed", seed, "RNG seed (required for the double-sided rank scenario)");
        sub->add_flag("--bits", cfg.bits, "report rates in bits instead of nats");
    };

    CLI::App* cap = add_common(app.add_subcommand("capacity", "compound secrecy capacity"));
    add_eaves(cap, false);
    add_mimo(cap);

    CLI::App* wc = add_common(app.add_subcommand("worst-case", "worst-case channels and capacity"));
    add_eaves(wc, false);
    add_mimo(wc);

    CLI::App* vs = add_common(
        app.add_subcommand("verify-saddle", "Monte-Carlo check of the saddle-point inequalities"));
    add_eaves(vs, false);
    add_mimo(vs);  // includes --seed
    vs->add_option("--samples", cfg.samples, "draws per side");

    CLI::App* sw =
        add_common(app.add_subcommand("sweep", "capacity-vs-power CSV over one or more bounds"));
    add_eaves(sw, true);
    sw->add_option("--power-range", power_range, "lo:hi:npoints, log-spaced")->required();
    sw->add_flag("--bits", cfg.bits, "unused for CSV (columns are always nats)");

    CLI::App* dr = add_common(
        app.add_subcommand("dmc-rate", "compound achievable-rate lower bound on a DMC family"));
    dr->add_option("--grid-step", cfg.grid_step, "input-simplex grid step");
    dr->add_flag("--bits", cfg.bits, "report the rate in bits");

    CLI::App* dq = add_common(
        app.add_subcommand("dmc-quantize", "quantize a DMC family and check the grid bounds"));
    dq->add_option("--levels", cfg.levels, "quantization levels L")->required();
    dq->add_option("--samples", cfg.samples, "random input distributions for the MI bounds");
    dq->add_option("--seed", seed, "RNG seed");

    CLI::App* dord = add_common(
        app.add_subcommand("dmc-order", "degraded / less-capable / noisier orderings per state"));
    dord->add_option("--samples", cfg.samples, "sampled inputs / pairs per certificate");
    dord->add_option("--seed", seed, "RNG seed");
    dord->add_option("--tol", cfg.order_tol, "degradedness feasibility tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    cfg.command = *wiretap::cli::command_from_name(sub->get_name());
    const auto set = [&](const std::string& name) {
        const CLI::Option* opt = sub->get_option_no_throw(name);
        return opt != nullptr && opt->count() > 0;
    };
    if (set("--power")) cfg.power = power;
    if (set("--power-range")) cfg.power_range = power_range;
    if (set("--legit-bound")) cfg.legit_bound = legit_bound;
    if (set("--rank-bound")) cfg.rank_bound = rank_bound;
    if (set("--seed")) cfg.seed = seed;

    return wiretap::cli::run(cfg);
}
