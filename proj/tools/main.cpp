#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "cusp/blowup.hpp"
#include "cusp/dop853.hpp"

using namespace cusp::cli;

namespace {

void write_manifest(Context& ctx, const std::string& command, double wall) {
    nlohmann::json cfg = nlohmann::json::object();
    for (const auto& [k, v] : ctx.cfg().snapshot()) cfg[k] = v;
    nlohmann::json files = nlohmann::json::array();
    for (const auto& e : ctx.out().entries()) files.push_back({{"path", e.name}, {"bytes", e.bytes}, {"sha256", e.sha256}});
    nlohmann::json m{{"command", command},
                     {"version", CUSP_VERSION},
                     {"config", cfg},
                     {"wall_time_s", wall},
                     {"exit_status", ctx.status()},
                     {"files", files}};
    ctx.out().write_json("manifest.json", m);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Expanding cusp soliton: separatrix, curvature, asymptotics, curvature evolution, blow-ups at infinity"};
    app.set_version_flag("--version", std::string(CUSP_VERSION));
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.set_config("--config", "", "flat key = value file; keys are the long option names");
    app.fallthrough();
    app.require_subcommand(1);

    RunConfig cfg;
    register_options(app, cfg);
    std::string out_dir;
    std::vector<double> ts;
    bool quiet = false;
    app.add_option("--out", out_dir, "output directory (overrides output_dir and $" + std::string(kOutDirEnv) + ")");
    app.add_option("--t", ts, "time to analyse; repeatable, replaces t_grid");
    app.add_flag("--quiet,-q", quiet, "no progress output");

    using Cmd = std::function<void(Context&)>;
    const std::vector<std::pair<std::string, std::pair<std::string, Cmd>>> cmds{
        {"separatrix", {"separatrix samples, isoclines and barrier checks", cmd_separatrix}},
        {"curvature", {"curvature table and soliton residuals", cmd_curvature}},
        {"asymptotics", {"end asymptotics of h, f, H, F", cmd_asymptotics}},
        {"evolve", {"crossings of dR/dt = 0 with the orbit, Psi scans, thresholds, pointwise histories", cmd_evolve}},
        {"blowup", {"exact blow-up sequences at infinity", cmd_blowup}},
        {"all", {"every command into one directory", nullptr}},
    };
    for (const auto& [name, desc] : cmds) app.add_subcommand(name, desc.first);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfigError;
    }

    if (const char* env = std::getenv(kOutDirEnv); env && *env) cfg.output_dir = env;
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (!ts.empty()) cfg.t_grid = ts;

    std::string command;
    for (const auto& [name, desc] : cmds) {
        if (app.got_subcommand(name)) command = name;
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        cfg.validate();
        Context ctx(cfg, quiet);
        for (const auto& [name, desc] : cmds) {
            if (desc.second && (command == "all" || command == name)) desc.second(ctx);
        }
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        write_manifest(ctx, command, wall);
        ctx.say("wrote " + std::to_string(ctx.out().entries().size()) + " files to " + ctx.out().dir().string());
        return ctx.status();
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const cusp::IntegrationError& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return kNumericFailure;
    } catch (const cusp::BlowupError& e) {
        std::cerr << "blow-up failure: " << e.what() << '\n';
        return kNumericFailure;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << '\n';
        return kNumericFailure;
    }
}
