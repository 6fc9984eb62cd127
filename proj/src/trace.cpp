#include "emoact/trace.hpp"

#include <fstream>
#include <sstream>

namespace emoact {

using nlohmann::json;

namespace {

json epa(const EpaVector& v) { return json::array({v.e, v.p, v.a}); }

template <typename T>
json opt(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

}  // namespace

json snapshot_json(const SessionState& s) {
    return {
        {"impression",
         {{"value", epa(s.impression.value)},
          {"last_valence", opt(s.impression.last_valence)},
          {"last_distance_m", opt(s.impression.last_distance_m)},
          {"gaze_on_agent", opt(s.impression.gaze_on_agent)}}},
        {"emotion", epa(s.emotion)},
        {"label", to_string(s.label.label)},
        {"similarity", opt(s.label.similarity)},
        {"cursor", s.cursor},
        {"sentence", s.sentence},
        {"phase", to_string(s.phase)},
        {"last_animation_ms", opt(s.expression.last_animation_ms)},
    };
}

TraceRecorder::TraceRecorder(const Session& session) {
    trace_.config = config_to_json(session.config());
    trace_.story_source = session.story().source();
}

void TraceRecorder::record(const protocol::ClientMessage& event, const HandleResult& result,
                           const Session& session) {
    if (!result.accepted) return;
    json outputs = json::array();
    for (const auto& m : result.outputs) outputs.push_back(protocol::to_json(m));
    trace_.records.push_back({event, std::move(outputs), snapshot_json(session.state())});
}

std::string header_line(const Trace& trace) {
    json h = {{"v", protocol::kVersion},
              {"type", "trace_header"},
              {"schema", kTraceSchema},
              {"config", trace.config},
              {"story", json::parse(trace.story_source)}};
    return h.dump();
}

std::string record_line(const TraceRecord& r) {
    json j = {{"v", protocol::kVersion},
              {"type", "trace_event"},
              {"seq", r.event.seq},
              {"event", protocol::to_json(r.event)},
              {"outputs", r.outputs},
              {"snapshot", r.snapshot}};
    return j.dump();
}

void write_trace(std::ostream& out, const Trace& trace) {
    out << header_line(trace) << '\n';
    for (const auto& r : trace.records) out << record_line(r) << '\n';
}

void write_trace_file(const std::filesystem::path& path, const Trace& trace) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw TraceError("cannot write trace to " + path.string());
    write_trace(out, trace);
    if (!out) throw TraceError("failed writing trace to " + path.string());
}

Trace read_trace(std::istream& in) {
    Trace trace;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error&) {
            throw TraceError("corrupt record at line " + std::to_string(line_no));
        }
        try {
            if (!have_header) {
                if (j.value("type", "") != "trace_header") throw TraceError("trace does not start with a header");
                if (j.value("schema", "") != kTraceSchema) {
                    throw TraceError("unsupported trace schema " + j.value("schema", std::string("<none>")));
                }
                trace.config = j.at("config");
                trace.story_source = j.at("story").dump();
                have_header = true;
                continue;
            }
            if (j.value("type", "") != "trace_event") {
                throw TraceError("unexpected record type at line " + std::to_string(line_no));
            }
            trace.records.push_back(
                {protocol::client_from_json(j.at("event")), j.at("outputs"), j.at("snapshot")});
        } catch (const json::exception& e) {
            throw TraceError("corrupt record at line " + std::to_string(line_no) + ": " + e.what());
        } catch (const protocol::ProtocolError& e) {
            throw TraceError("corrupt record at line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (!have_header) throw TraceError("empty trace");
    return trace;
}

Trace read_trace_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw TraceError("trace not found: " + path.string());
    return read_trace(in);
}

std::optional<std::string> first_difference(const json& expected, const json& actual, const std::string& prefix) {
    if (expected.type() != actual.type()) {
        // integral and floating encodings of the same number are equal
        if (expected.is_number() && actual.is_number() && expected.get<double>() == actual.get<double>()) {
            return std::nullopt;
        }
        return prefix;
    }
    if (expected.is_object()) {
        for (const auto& [key, value] : expected.items()) {
            const std::string path = prefix.empty() ? key : prefix + "." + key;
            if (!actual.contains(key)) return path;
            if (auto d = first_difference(value, actual.at(key), path)) return d;
        }
        for (const auto& [key, value] : actual.items()) {
            if (!expected.contains(key)) return prefix.empty() ? key : prefix + "." + key;
        }
        return std::nullopt;
    }
    if (expected.is_array()) {
        const std::size_t n = std::min(expected.size(), actual.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (auto d = first_difference(expected[i], actual[i], prefix + "[" + std::to_string(i) + "]")) return d;
        }
        if (expected.size() != actual.size()) return prefix + "[" + std::to_string(n) + "]";
        return std::nullopt;
    }
    if (expected != actual) return prefix;
    return std::nullopt;
}

namespace {

const json& at_path(const json& root, const std::string& path) {
    // resolves the paths produced by first_difference; falls back to root
    const json* node = &root;
    std::size_t i = 0;
    while (i < path.size()) {
        if (path[i] == '.') {
            ++i;
            continue;
        }
        if (path[i] == '[') {
            const auto close = path.find(']', i);
            const auto idx = std::stoul(path.substr(i + 1, close - i - 1));
            if (!node->is_array() || idx >= node->size()) return *node;
            node = &(*node)[idx];
            i = close + 1;
            continue;
        }
        auto end = path.find_first_of(".[", i);
        if (end == std::string::npos) end = path.size();
        const auto key = path.substr(i, end - i);
        if (!node->is_object() || !node->contains(key)) return *node;
        node = &node->at(key);
        i = end;
    }
    return *node;
}

std::string describe(const json& root, const std::string& path) {
    const json& leaf = at_path(root, path);
    return leaf.dump();
}

}  // namespace

ReplayReport replay(const Trace& trace) {
    SessionConfig config;
    try {
        config = config_from_json(trace.config);
    } catch (const ConfigError& e) {
        throw TraceError(std::string("trace header config: ") + e.what());
    }
    std::shared_ptr<const StoryGraph> story;
    try {
        story = std::make_shared<const StoryGraph>(load_story(trace.story_source));
    } catch (const StoryError& e) {
        throw TraceError(std::string("trace header story: ") + e.what());
    }

    Session session(std::move(config), story);
    ReplayReport report;
    for (const auto& record : trace.records) {
        const HandleResult result = session.handle(record.event);
        json outputs = json::array();
        for (const auto& m : result.outputs) outputs.push_back(protocol::to_json(m));
        const json snapshot = snapshot_json(session.state());
        ++report.events;

        const json expected = {{"accepted", true}, {"outputs", record.outputs}, {"snapshot", record.snapshot}};
        const json actual = {{"accepted", result.accepted}, {"outputs", outputs}, {"snapshot", snapshot}};
        if (auto field = first_difference(expected, actual, "")) {
            report.divergence =
                Divergence{record.event.seq, *field, describe(expected, *field), describe(actual, *field)};
            return report;
        }
    }
    return report;
}

std::string ReplayReport::to_text() const {
    std::ostringstream os;
    if (ok()) {
        os << "replay ok: " << events << " events, 0 divergences\n";
    } else {
        os << "replay diverged at seq " << divergence->seq << ", field " << divergence->field << "\n"
           << "  recorded: " << divergence->expected << "\n"
           << "  replayed: " << divergence->actual << "\n";
    }
    return os.str();
}

}  // namespace emoact
