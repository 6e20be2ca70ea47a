#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "kb/commands.hpp"
#include "kb/config.hpp"
#include "kb/oracle.hpp"

// kbsolve: spectrum / verify / wavefunction / fit for the anharmonic radial
// potential a r^2 + b r - c/r. Exit codes: 0 success (reported
// discrepancies between closed form and oracle are data, not failures),
// 2 usage or configuration error, 3 internal numerical failure.

namespace {

struct CommonOptions {
    std::string config_path;
    std::string format;
    std::string out_path;
    std::optional<long long> seed;
    std::optional<int> grid_steps;
    std::optional<double> r_max;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--config", opts.config_path, "config file (key=value lines)")
        ->required();
    cmd->add_option("--format", opts.format, "table|csv|json-lines");
    cmd->add_option("--out", opts.out_path, "output path (default stdout)");
    cmd->add_option("--seed", opts.seed, "seed for the fitting multi-start");
    cmd->add_option("--grid-steps", opts.grid_steps, "interior grid points");
    cmd->add_option("--rmax", opts.r_max, "grid extent override");
}

kb::cli::RunConfig load_config(const CommonOptions& opts) {
    kb::cli::RunConfig config = kb::cli::parse_config_file(opts.config_path);
    if (!opts.format.empty()) {
        const auto parsed = kb::cli::parse_format(opts.format);
        if (!parsed) throw kb::cli::ConfigError("unknown format: " + opts.format);
        config.format = *parsed;
    }
    if (opts.seed) config.seed = static_cast<std::uint64_t>(*opts.seed);
    if (opts.grid_steps) config.grid_steps = *opts.grid_steps;
    if (opts.r_max) config.r_max = *opts.r_max;
    return config;
}

int run_to_stream(const CommonOptions& opts,
                  const std::function<int(std::ostream&)>& action) {
    if (opts.out_path.empty()) return action(std::cout);
    std::ofstream file(opts.out_path);
    if (!file) throw kb::cli::ConfigError("cannot open output file: " + opts.out_path);
    return action(file);
}

std::pair<int, int> parse_channel_option(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw kb::cli::ConfigError("--channel needs the form n,l");
    try {
        return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw kb::cli::ConfigError("--channel needs integer n,l");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"closed-form vs numerical solver for V(r) = a r^2 + b r - c/r"};
    app.require_subcommand(1);

    CommonOptions spectrum_opts, verify_opts, wave_opts, fit_opts;
    auto* spectrum = app.add_subcommand("spectrum", "closed-form vs oracle energies");
    add_common(spectrum, spectrum_opts);
    auto* verify = app.add_subcommand("verify", "full per-channel check battery");
    add_common(verify, verify_opts);

    auto* wavefunction =
        app.add_subcommand("wavefunction", "sampled closed-form vs oracle state");
    add_common(wavefunction, wave_opts);
    std::string channel_text;
    double r_from = 0.0, r_to = 0.0;
    int points = 101;
    wavefunction->add_option("--channel", channel_text, "channel as n,l")->required();
    wavefunction->add_option("--r-from", r_from, "sampling range start");
    wavefunction->add_option("--r-to", r_to, "sampling range end (default grid edge)");
    wavefunction->add_option("--points", points, "number of sample rows");

    auto* fit = app.add_subcommand("fit", "least-squares fit to observed masses");
    add_common(fit, fit_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        if (err.get_exit_code() == 0) return app.exit(err);  // --help
        app.exit(err);
        return 2;
    }

    try {
        if (spectrum->parsed()) {
            const auto config = load_config(spectrum_opts);
            return run_to_stream(spectrum_opts, [&](std::ostream& out) {
                return kb::cli::cmd_spectrum(config, out);
            });
        }
        if (verify->parsed()) {
            const auto config = load_config(verify_opts);
            return run_to_stream(verify_opts, [&](std::ostream& out) {
                return kb::cli::cmd_verify(config, out);
            });
        }
        if (wavefunction->parsed()) {
            const auto config = load_config(wave_opts);
            const auto [n, l] = parse_channel_option(channel_text);
            kb::Channel channel(n, l, config.dim);
            const auto grid = kb::oracle::default_grid(
                kb::cli::potential_from(config), channel, config.grid_steps,
                config.r_max);
            kb::cli::WavefunctionRange range{r_from, r_to, points};
            if (range.r_from <= 0.0) range.r_from = grid.point(0);
            if (range.r_to <= 0.0) range.r_to = grid.r_max;
            return run_to_stream(wave_opts, [&](std::ostream& out) {
                return kb::cli::cmd_wavefunction(config, channel, range, out);
            });
        }
        if (fit->parsed()) {
            const auto config = load_config(fit_opts);
            return run_to_stream(fit_opts, [&](std::ostream& out) {
                return kb::cli::cmd_fit(config, out);
            });
        }
    } catch (const kb::cli::ConfigError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "numerical failure: " << err.what() << "\n";
        return 3;
    }
    return 2;
}
