#pragma once
// Session traces (.emoact-trace): a header line with the configuration and
// story, then one line per accepted event with its outputs and the
// post-event snapshot. Replaying the events must regenerate every line.

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "emoact/session.hpp"

namespace emoact {

inline constexpr const char* kTraceSchema = "emoact-trace/1";

class TraceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

nlohmann::json snapshot_json(const SessionState& state);

struct TraceRecord {
    protocol::ClientMessage event;
    nlohmann::json outputs;   // array of server messages
    nlohmann::json snapshot;
};

struct Trace {
    nlohmann::json config;
    std::string story_source;
    std::vector<TraceRecord> records;
};

// Records accepted events of a live session.
class TraceRecorder {
public:
    explicit TraceRecorder(const Session& session);

    void record(const protocol::ClientMessage& event, const HandleResult& result, const Session& session);
    const Trace& trace() const { return trace_; }

private:
    Trace trace_;
};

std::string header_line(const Trace& trace);
std::string record_line(const TraceRecord& record);
void write_trace(std::ostream& out, const Trace& trace);
void write_trace_file(const std::filesystem::path& path, const Trace& trace);

// Throws TraceError on schema mismatch or a corrupt line.
Trace read_trace(std::istream& in);
Trace read_trace_file(const std::filesystem::path& path);

struct Divergence {
    std::int64_t seq = 0;
    std::string field;  // e.g. "snapshot.emotion[1]" or "outputs[2].eye_color"
    std::string expected;
    std::string actual;
};

struct ReplayReport {
    std::size_t events = 0;
    std::optional<Divergence> divergence;
    bool ok() const { return !divergence; }
    std::string to_text() const;
};

// Rebuilds a session from the header and re-executes every event.
ReplayReport replay(const Trace& trace);

// First differing leaf between two JSON values, as a dotted path.
std::optional<std::string> first_difference(const nlohmann::json& expected, const nlohmann::json& actual,
                                            const std::string& prefix);

}  // namespace emoact
