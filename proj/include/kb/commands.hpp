#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "kb/config.hpp"
#include "kb/model.hpp"

// Command implementations behind the CLI subcommands. Channels are computed
// concurrently and emitted in config order, so output is deterministic given
// config + seed. Reported discrepancies between closed form and oracle are
// data, not failures: every command returns 0 unless the configuration is
// unusable.

namespace kb::cli {

struct VerificationCheck {
    std::string name;
    double value;
    bool has_threshold;
    double threshold;
    bool pass;         // meaningful only when has_threshold
    std::string note;  // snake_case token, possibly empty
};

struct ChannelVerification {
    Channel channel;
    double energy_closed;
    double energy_oracle;
    std::vector<VerificationCheck> checks;
};

struct VerificationReport {
    std::vector<ChannelVerification> channels;
};

struct WavefunctionRange {
    double r_from;
    double r_to;
    int points;
};

// one row per channel: closed-form energy, oracle energy (ground state of
// the l+n angular channel, after Richardson extrapolation), |delta|, and the
// three identity residuals
int cmd_spectrum(const RunConfig& config, std::ostream& out);

VerificationReport verify_channels(const RunConfig& config);
int cmd_verify(const RunConfig& config, std::ostream& out);

// sampled closed-form wavefunction next to the oracle's (n+1)-th
// eigenfunction at the same l, mapped back through R = r^{-(N-1)/2} u and
// rescaled to the closed-form norm; a trailing summary records the node
// counts on both sides
int cmd_wavefunction(const RunConfig& config, const Channel& channel,
                     const WavefunctionRange& range, std::ostream& out);

int cmd_fit(const RunConfig& config, std::ostream& out);

}  // namespace kb::cli
