#pragma once
// The emoact command-line tool's commands, callable from tests.
//
// Exit codes:
//   0  success
//   1  check failed (story violations, replay divergence, rejected script event)
//   2  input not found (config, story, script or trace)
//   3  malformed input (bad config, story schema, script line, corrupt trace)
//   4  output not writable

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "emoact/config.hpp"

namespace emoact::cli {

enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,
    kNotFound = 2,
    kMalformed = 3,
    kUnwritable = 4,
};

// Carries the exit code a command should end with.
struct CommandFailure : std::runtime_error {
    CommandFailure(int c, const std::string& m) : std::runtime_error(m), code(c), message(m) {}
    int code;
    std::string message;
};

struct CommonOptions {
    std::optional<std::filesystem::path> config;  // falls back to $EMOACT_CONFIG, then built-in defaults
};

struct RunOptions {
    CommonOptions common;
    std::optional<std::string> story;  // id (looked up in stories_dir) or a file path
    std::optional<std::filesystem::path> script;
    bool interactive = false;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> policy;  // "low" | "high"
    std::filesystem::path out = "session.emoact-trace";
};

struct ExportOptions {
    std::filesystem::path trace;
    std::string format = "csv";  // csv | jsonl
    std::optional<std::filesystem::path> out;  // stdout when absent
};

struct ValidateOptions {
    CommonOptions common;
    std::filesystem::path story;
};

int cmd_run(const RunOptions& opts, std::istream& in, std::ostream& out, std::ostream& err);
int cmd_replay(const std::filesystem::path& trace, std::ostream& out, std::ostream& err);
int cmd_validate(const ValidateOptions& opts, std::ostream& out, std::ostream& err);
int cmd_export(const ExportOptions& opts, std::ostream& out, std::ostream& err);

// Shared by the commands and the server entry point; throws CommandFailure.
SessionConfig resolve_config(const CommonOptions& opts);

}  // namespace emoact::cli
