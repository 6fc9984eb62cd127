// emoact: run, replay, validate and export story sessions, or serve them
// over TCP.

#include <csignal>
#include <iostream>

#include <CLI11.hpp>

#include "emoact/commands.hpp"
#include "emoact/server.hpp"

namespace {

emoact::SessionServer* g_server = nullptr;

void on_signal(int) {
    if (g_server) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
    using namespace emoact;

    CLI::App app{"Affect-control emotion engine for collaborative storytelling"};
    app.require_subcommand(1);

    std::string config_path;

    cli::RunOptions run;
    std::string run_story, run_script, run_policy, run_out = run.out.string();
    std::uint64_t run_seed = 0;
    auto* run_cmd = app.add_subcommand("run", "Play a story from a script (or interactively) and write a trace");
    run_cmd->add_option("--config", config_path, "Engine configuration file (default: $EMOACT_CONFIG)");
    run_cmd->add_option("--story", run_story, "Story id or path to a story file");
    run_cmd->add_option("--script", run_script, "Event script in wire-protocol records");
    run_cmd->add_flag("--interactive", run.interactive, "Prompt for choices on the terminal");
    auto* seed_opt = run_cmd->add_option("--seed", run_seed, "Animation draw seed");
    run_cmd->add_option("--policy", run_policy, "Display policy")->check(CLI::IsMember({"low", "high"}));
    run_cmd->add_option("--out", run_out, "Trace output path");

    std::string replay_trace;
    auto* replay_cmd = app.add_subcommand("replay", "Re-execute a trace and report the first divergence");
    replay_cmd->add_option("trace", replay_trace, "Trace file")->required();

    cli::ValidateOptions validate;
    std::string validate_story;
    auto* validate_cmd = app.add_subcommand("validate", "Validate a story file and its emotion coverage");
    validate_cmd->add_option("--config", config_path, "Engine configuration file (default: $EMOACT_CONFIG)");
    validate_cmd->add_option("story", validate_story, "Story file")->required();

    cli::ExportOptions exp;
    std::string export_trace, export_out;
    auto* export_cmd = app.add_subcommand("export", "Export per-event EPA trajectories from a trace");
    export_cmd->add_option("trace", export_trace, "Trace file")->required();
    export_cmd->add_option("--format", exp.format, "Output format")->check(CLI::IsMember({"csv", "jsonl"}));
    export_cmd->add_option("--out", export_out, "Output file (default: stdout)");

    std::uint16_t port = 7878;
    std::string bind = "127.0.0.1";
    std::string trace_dir;
    auto* serve_cmd = app.add_subcommand("serve", "Serve sessions over the line protocol");
    serve_cmd->add_option("--config", config_path, "Engine configuration file (default: $EMOACT_CONFIG)");
    serve_cmd->add_option("--port", port, "TCP port");
    serve_cmd->add_option("--bind", bind, "Bind address");
    serve_cmd->add_option("--trace-dir", trace_dir, "Write one trace per finished session here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? cli::kOk : cli::kMalformed;
    }

    cli::CommonOptions common;
    if (!config_path.empty()) common.config = config_path;

    if (*run_cmd) {
        run.common = common;
        if (!run_story.empty()) run.story = run_story;
        if (!run_script.empty()) run.script = run_script;
        if (!run_policy.empty()) run.policy = run_policy;
        if (*seed_opt) run.seed = run_seed;
        run.out = run_out;
        return cli::cmd_run(run, std::cin, std::cout, std::cerr);
    }
    if (*replay_cmd) return cli::cmd_replay(replay_trace, std::cout, std::cerr);
    if (*validate_cmd) {
        validate.common = common;
        validate.story = validate_story;
        return cli::cmd_validate(validate, std::cout, std::cerr);
    }
    if (*export_cmd) {
        exp.trace = export_trace;
        if (!export_out.empty()) exp.out = export_out;
        return cli::cmd_export(exp, std::cout, std::cerr);
    }

    SessionConfig config;
    try {
        config = cli::resolve_config(common);
    } catch (const cli::CommandFailure& f) {
        std::cerr << "error: " << f.message << "\n";
        return f.code;
    }
    ServerOptions options;
    options.bind_address = bind;
    options.port = port;
    if (!trace_dir.empty()) options.trace_dir = trace_dir;
    SessionServer server(config, directory_resolver(config.stories_dir), options);
    g_server = &server;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    std::uint16_t bound = 0;
    try {
        bound = server.start();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kUnwritable;
    }
    std::cout << "emoact listening on " << bind << ":" << bound << std::endl;
    server.wait();
    return cli::kOk;
}
