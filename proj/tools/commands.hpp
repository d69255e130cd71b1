#pragma once

#include <optional>
#include <string>

#include "cusp/geometry.hpp"
#include "emit.hpp"
#include "run_config.hpp"

namespace cusp::cli {

enum ExitCode : int {
    kOk = 0,
    kConfigError = 2,
    kNumericFailure = 3,
    kRangeWarning = 4,
};

class Context {
public:
    Context(RunConfig cfg, bool quiet);

    const RunConfig& cfg() const { return cfg_; }
    OutputSet& out() { return out_; }

    /// The separatrix and its profiles, computed on first use.
    const Trajectory& S();
    const MetricProfile& profile();

    void say(const std::string& line) const;
    /// Prints to stderr and downgrades the exit status to a warning.
    void warn(const std::string& line);
    int status() const { return status_; }

private:
    RunConfig cfg_;
    OutputSet out_;
    bool quiet_;
    int status_ = kOk;
    std::optional<Trajectory> S_;
    std::optional<MetricProfile> profile_;
};

void cmd_separatrix(Context& ctx);
void cmd_curvature(Context& ctx);
void cmd_asymptotics(Context& ctx);
void cmd_evolve(Context& ctx);
void cmd_blowup(Context& ctx);

}  // namespace cusp::cli
