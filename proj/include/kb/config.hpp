#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "kb/format.hpp"
#include "kb/model.hpp"
#include "kb/quarkonium.hpp"

// Run configuration: flat key=value text, one entry per line, '#' comments.
// Channel lists are written "channels = n,l;n,l;..." and mass observations
// "observations = n,l,mass;n,l,mass;...".

namespace kb::cli {

// configuration/usage problems; mapped to exit code 2 by the CLI driver
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::optional<double> a, b, c, mu;
    std::optional<double> m1, m2;
    std::string label = "qqbar";
    int dim = 3;
    std::vector<std::pair<int, int>> channels;  // (n, l)
    OutputFormat format = OutputFormat::table;
    std::uint64_t seed = 1;
    int grid_steps = 4000;
    std::optional<double> r_max;
    std::vector<std::tuple<int, int, double>> observations;  // (n, l, mass GeV)
    bool fit_a = true, fit_b = true, fit_c = false;
    std::optional<quarkonium::Bounds> bound_a, bound_b, bound_c;
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// required-key validation; mu falls back to the reduced mass of (m1, m2)
PotentialParams potential_from(const RunConfig& config);
std::vector<Channel> channels_from(const RunConfig& config);

}  // namespace kb::cli
