#include "kb/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace kb::cli {

namespace {

std::string trim(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = text.find_last_not_of(" \t\r");
    return text.substr(first, last - first + 1);
}

double parse_double(const std::string& value, const std::string& key) {
    const std::string token = trim(value);
    double parsed = 0.0;
    const auto result =
        std::from_chars(token.data(), token.data() + token.size(), parsed);
    if (result.ec != std::errc{} || result.ptr != token.data() + token.size())
        throw ConfigError("invalid number for '" + key + "': " + value);
    return parsed;
}

long long parse_integer(const std::string& value, const std::string& key) {
    const std::string token = trim(value);
    long long parsed = 0;
    const auto result =
        std::from_chars(token.data(), token.data() + token.size(), parsed);
    if (result.ec != std::errc{} || result.ptr != token.data() + token.size())
        throw ConfigError("invalid integer for '" + key + "': " + value);
    return parsed;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string current;
    std::istringstream stream(text);
    while (std::getline(stream, current, sep)) parts.push_back(current);
    return parts;
}

bool parse_flag(const std::string& value, const std::string& key) {
    const std::string token = trim(value);
    if (token == "true" || token == "1") return true;
    if (token == "false" || token == "0") return false;
    throw ConfigError("invalid boolean for '" + key + "': " + value);
}

quarkonium::Bounds parse_bounds(const std::string& value, const std::string& key) {
    const auto parts = split(value, ',');
    if (parts.size() != 2)
        throw ConfigError("bounds for '" + key + "' need the form lo,hi");
    return {parse_double(parts[0], key), parse_double(parts[1], key)};
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
    RunConfig config;
    std::istringstream stream(text);
    std::string line;
    int line_number = 0;
    while (std::getline(stream, line)) {
        ++line_number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_number) +
                              ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(line_number) +
                              ": empty key or value");

        if (key == "a") config.a = parse_double(value, key);
        else if (key == "b") config.b = parse_double(value, key);
        else if (key == "c") config.c = parse_double(value, key);
        else if (key == "mu") config.mu = parse_double(value, key);
        else if (key == "m1") config.m1 = parse_double(value, key);
        else if (key == "m2") config.m2 = parse_double(value, key);
        else if (key == "label") config.label = value;
        else if (key == "dim") config.dim = static_cast<int>(parse_integer(value, key));
        else if (key == "seed")
            config.seed = static_cast<std::uint64_t>(parse_integer(value, key));
        else if (key == "grid_steps")
            config.grid_steps = static_cast<int>(parse_integer(value, key));
        else if (key == "rmax") config.r_max = parse_double(value, key);
        else if (key == "format") {
            const auto parsed = parse_format(value);
            if (!parsed) throw ConfigError("unknown format: " + value);
            config.format = *parsed;
        } else if (key == "channels") {
            for (const std::string& item : split(value, ';')) {
                const auto parts = split(item, ',');
                if (parts.size() != 2)
                    throw ConfigError("channel entries need the form n,l");
                config.channels.emplace_back(
                    static_cast<int>(parse_integer(parts[0], key)),
                    static_cast<int>(parse_integer(parts[1], key)));
            }
        } else if (key == "observations") {
            for (const std::string& item : split(value, ';')) {
                const auto parts = split(item, ',');
                if (parts.size() != 3)
                    throw ConfigError("observation entries need the form n,l,mass");
                config.observations.emplace_back(
                    static_cast<int>(parse_integer(parts[0], key)),
                    static_cast<int>(parse_integer(parts[1], key)),
                    parse_double(parts[2], key));
            }
        } else if (key == "fit_free") {
            config.fit_a = config.fit_b = config.fit_c = false;
            for (const std::string& item : split(value, ',')) {
                const std::string name = trim(item);
                if (name == "a") config.fit_a = true;
                else if (name == "b") config.fit_b = true;
                else if (name == "c") config.fit_c = true;
                else throw ConfigError("unknown fit parameter: " + name);
            }
        } else if (key == "bound_a") config.bound_a = parse_bounds(value, key);
        else if (key == "bound_b") config.bound_b = parse_bounds(value, key);
        else if (key == "bound_c") config.bound_c = parse_bounds(value, key);
        else if (key == "fit_a") config.fit_a = parse_flag(value, key);
        else if (key == "fit_b") config.fit_b = parse_flag(value, key);
        else if (key == "fit_c") config.fit_c = parse_flag(value, key);
        else
            throw ConfigError("unknown config key: " + key);
    }
    return config;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return parse_config_text(buffer.str());
}

PotentialParams potential_from(const RunConfig& config) {
    if (!config.a || !config.b || !config.c)
        throw ConfigError("config must set a, b and c");
    double mu = 0.0;
    if (config.mu) {
        mu = *config.mu;
    } else if (config.m1 && config.m2) {
        mu = *config.m1 * *config.m2 / (*config.m1 + *config.m2);
    } else {
        throw ConfigError("config must set mu (or both m1 and m2)");
    }
    try {
        return PotentialParams(*config.a, *config.b, *config.c, mu);
    } catch (const std::invalid_argument& err) {
        throw ConfigError(err.what());
    }
}

std::vector<Channel> channels_from(const RunConfig& config) {
    if (config.channels.empty())
        throw ConfigError("config must list at least one channel");
    std::vector<Channel> out;
    out.reserve(config.channels.size());
    try {
        for (const auto& [n, l] : config.channels) out.emplace_back(n, l, config.dim);
    } catch (const std::invalid_argument& err) {
        throw ConfigError(err.what());
    }
    return out;
}

}  // namespace kb::cli
