#include "emoact/commands.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "emoact/protocol.hpp"
#include "emoact/session.hpp"
#include "emoact/story.hpp"
#include "emoact/trace.hpp"

namespace emoact::cli {

using nlohmann::json;
namespace proto = protocol;

namespace {

std::shared_ptr<const StoryGraph> resolve_story(const std::string& story, const SessionConfig& config) {
    std::filesystem::path path = story;
    if (!std::filesystem::is_regular_file(path)) path = config.stories_dir / (story + ".json");
    if (!std::filesystem::is_regular_file(path)) throw CommandFailure{kNotFound, "story not found: " + story};
    try {
        return std::make_shared<const StoryGraph>(load_story_file(path));
    } catch (const StoryError& e) {
        throw CommandFailure{kMalformed, e.what()};
    }
}

std::string format_similarity(const std::optional<double>& s) {
    if (!s) return "-";
    std::ostringstream os;
    os << std::fixed << std::setprecision(3) << *s;
    return os.str();
}

// One timeline row per impression change worth reporting.
class Timeline {
public:
    explicit Timeline(std::ostream& out) : out_(out) {
        out_ << std::left << std::setw(6) << "seq" << std::setw(9) << "t_ms" << std::setw(34) << "step"
             << std::setw(11) << "label" << "similarity\n";
    }

    void observe(const proto::ClientMessage& event, const HandleResult& result) {
        std::string choice;
        if (const auto* c = std::get_if<proto::Choice>(&event.payload)) choice = c->option;
        for (const auto& m : result.outputs) {
            if (const auto* cue = std::get_if<proto::Cue>(&m.payload)) {
                ++cues_;
                if (cue->cue.animation) ++animations_;
                continue;
            }
            const auto* s = std::get_if<proto::StateUpdate>(&m.payload);
            if (!s) continue;
            std::string step;
            if (s->cause == "start") step = "start";
            else if (s->cause == "option") step = "choice " + last_decision_ + ":" + choice;
            else if (s->cause == "forced") step = "forced " + s->cursor;
            else if (s->cause == "perception") step = "perception";
            else continue;
            out_ << std::left << std::setw(6) << m.seq << std::setw(9) << m.t << std::setw(34) << step
                 << std::setw(11) << to_string(s->label) << format_similarity(s->similarity) << "\n";
        }
        for (const auto& m : result.outputs) {
            if (const auto* d = std::get_if<proto::DecisionRequest>(&m.payload)) last_decision_ = d->node;
        }
    }

    void summary() const { out_ << "cues: " << cues_ << " (" << animations_ << " with animation)\n"; }

private:
    std::ostream& out_;
    std::string last_decision_;
    std::size_t cues_ = 0;
    std::size_t animations_ = 0;
};

std::vector<proto::ClientMessage> read_script(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw CommandFailure{kNotFound, "script not found: " + path.string()};
    std::vector<proto::ClientMessage> events;
    std::string line;
    std::size_t line_no = 0;
    std::int64_t last_t = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        proto::ClientMessage msg;
        try {
            msg = proto::parse_client_line(line, true);
        } catch (const proto::ProtocolError& e) {
            throw CommandFailure{kMalformed, path.string() + ":" + std::to_string(line_no) + ": " + e.what()};
        }
        if (msg.seq < 0) msg.seq = static_cast<std::int64_t>(events.size());
        if (msg.t < 0) msg.t = last_t;
        last_t = msg.t;
        events.push_back(std::move(msg));
    }
    if (events.empty() || !std::holds_alternative<proto::StartSession>(events.front().payload)) {
        // scripts may leave the start implicit
        for (auto& e : events) e.seq += 1;
        events.insert(events.begin(), proto::ClientMessage{0, 0, proto::StartSession{}});
    }
    return events;
}

int fail(std::ostream& err, const CommandFailure& f) {
    err << "error: " << f.message << "\n";
    return f.code;
}

void print_outputs(std::ostream& out, const HandleResult& result) {
    for (const auto& m : result.outputs) {
        if (const auto* n = std::get_if<proto::Narration>(&m.payload)) {
            out << "  " << n->text << "\n";
        } else if (const auto* d = std::get_if<proto::DecisionRequest>(&m.payload)) {
            out << "\n" << d->prompt << "\n";
            for (std::size_t i = 0; i < d->options.size(); ++i) {
                out << "  [" << i + 1 << "] " << d->options[i].text << "  (" << d->options[i].id << ")\n";
            }
        } else if (const auto* c = std::get_if<proto::Cue>(&m.payload)) {
            out << "  <eyes " << c->cue.eye_color;
            if (c->cue.animation) out << ", plays " << *c->cue.animation;
            out << ">\n";
        }
    }
}

}  // namespace

SessionConfig resolve_config(const CommonOptions& opts) {
    std::optional<std::filesystem::path> path = opts.config;
    if (!path) {
        if (const char* env = std::getenv("EMOACT_CONFIG"); env && *env) path = env;
    }
    if (!path) return SessionConfig{};
    if (!std::filesystem::is_regular_file(*path)) {
        throw CommandFailure{kNotFound, "config not found: " + path->string()};
    }
    try {
        return load_config_file(*path);
    } catch (const ConfigError& e) {
        throw CommandFailure{kMalformed, e.what()};
    }
}

int cmd_run(const RunOptions& opts, std::istream& in, std::ostream& out, std::ostream& err) {
    try {
        SessionConfig config = resolve_config(opts.common);
        if (opts.seed) config.seed = *opts.seed;
        if (opts.policy) {
            auto mode = parse_display_mode(*opts.policy);
            if (!mode) throw CommandFailure{kMalformed, "policy must be 'low' or 'high'"};
            config.policy.mode = *mode;
        }
        if (!opts.script && !opts.interactive) {
            throw CommandFailure{kMalformed, "either --script or --interactive is required"};
        }
        auto story = resolve_story(opts.story.value_or(config.story_id), config);
        config.story_id = story->id();

        auto events = opts.script ? read_script(*opts.script) : std::vector<proto::ClientMessage>{};
        Session session(config, story);
        TraceRecorder recorder(session);
        Timeline timeline(out);
        int status = kOk;

        auto dispatch = [&](const proto::ClientMessage& msg) {
            HandleResult result = session.handle(msg);
            recorder.record(msg, result, session);
            if (!result.accepted) {
                const auto& e = std::get<proto::Error>(result.outputs.front().payload);
                err << "error: event seq " << msg.seq << " rejected: " << e.code << ": " << e.message << "\n";
                status = kCheckFailed;
                return result;
            }
            if (opts.interactive) print_outputs(out, result);
            timeline.observe(msg, result);
            return result;
        };

        if (opts.script) {
            for (const auto& msg : events) {
                dispatch(msg);
                if (status != kOk) break;
            }
        } else {
            std::int64_t t = 0;
            dispatch({0, t, proto::StartSession{}});
            while (status == kOk && session.state().phase != Phase::Finished) {
                t += 5000;
                if (session.state().phase == Phase::AwaitingChoice) {
                    out << "> " << std::flush;
                    std::string answer;
                    if (!std::getline(in, answer)) {
                        err << "error: input ended before the story finished\n";
                        status = kCheckFailed;
                        break;
                    }
                    const auto& options = story->node(session.state().cursor).decision()->options;
                    if (answer == "1" || answer == "2") answer = options[answer == "1" ? 0 : 1].id;
                    dispatch({session.state().next_seq, t, proto::Choice{answer}});
                    status = kOk;  // a mistyped option just asks again
                } else {
                    dispatch({session.state().next_seq, t, proto::Tick{}});
                }
            }
        }
        timeline.summary();

        try {
            write_trace_file(opts.out, recorder.trace());
        } catch (const TraceError& e) {
            throw CommandFailure{kUnwritable, e.what()};
        }
        out << "trace written to " << opts.out.string() << "\n";
        return status;
    } catch (const CommandFailure& f) {
        return fail(err, f);
    }
}

int cmd_replay(const std::filesystem::path& trace_path, std::ostream& out, std::ostream& err) {
    if (!std::filesystem::is_regular_file(trace_path)) {
        return fail(err, {kNotFound, "trace not found: " + trace_path.string()});
    }
    try {
        const Trace trace = read_trace_file(trace_path);
        const ReplayReport report = replay(trace);
        out << report.to_text();
        return report.ok() ? kOk : kCheckFailed;
    } catch (const TraceError& e) {
        return fail(err, {kMalformed, e.what()});
    }
}

int cmd_validate(const ValidateOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        const SessionConfig config = resolve_config(opts.common);
        if (!std::filesystem::is_regular_file(opts.story)) {
            throw CommandFailure{kNotFound, "story not found: " + opts.story.string()};
        }
        StoryGraph graph;
        try {
            graph = load_story_file(opts.story);
        } catch (const StoryError& e) {
            out << e.what() << "\n";
            return kCheckFailed;
        }

        const StoryAnalysis analysis = analyze_story(graph, config.model);
        out << "story " << graph.id() << ": " << analysis.paths.size() << " paths\n";
        for (std::size_t i = 0; i < analysis.paths.size(); ++i) {
            const auto& pa = analysis.paths[i];
            out << std::right << std::setw(3) << i + 1 << "  ";
            for (std::size_t k = 0; k < pa.outcomes.size(); ++k) {
                const auto& o = pa.outcomes[k];
                if (k) out << " | ";
                out << (o.step.option ? *o.step.option : "(" + o.step.node + ")") << "="
                    << to_string(o.step.expected_emotion) << "/" << to_string(o.on_path.label);
            }
            out << "\n";
        }
        std::set<EmotionLabel> covered;
        for (const auto& pa : analysis.paths)
            for (const auto& o : pa.outcomes) covered.insert(o.step.expected_emotion);
        out << "emotions covered:";
        for (EmotionLabel l : covered) out << " " << to_string(l);
        out << "\n";

        if (!analysis.violations.empty()) {
            for (const auto& v : analysis.violations) out << "violation [" << v.code << "] " << v.message << "\n";
            return kCheckFailed;
        }
        out << "ok\n";
        return kOk;
    } catch (const CommandFailure& f) {
        return fail(err, f);
    }
}

int cmd_export(const ExportOptions& opts, std::ostream& out, std::ostream& err) {
    if (opts.format != "csv" && opts.format != "jsonl") {
        return fail(err, {kMalformed, "format must be csv or jsonl"});
    }
    if (!std::filesystem::is_regular_file(opts.trace)) {
        return fail(err, {kNotFound, "trace not found: " + opts.trace.string()});
    }
    Trace trace;
    try {
        trace = read_trace_file(opts.trace);
    } catch (const TraceError& e) {
        return fail(err, {kMalformed, e.what()});
    }

    std::ofstream file;
    std::ostream* sink = &out;
    if (opts.out) {
        file.open(*opts.out, std::ios::binary);
        if (!file) return fail(err, {kUnwritable, "cannot write " + opts.out->string()});
        sink = &file;
    }

    const bool csv = opts.format == "csv";
    if (csv) {
        *sink << "seq,t_ms,imp_e,imp_p,imp_a,emo_e,emo_p,emo_a,label,similarity,cue_color,cue_animation\n";
    }
    for (const auto& r : trace.records) {
        const json& snap = r.snapshot;
        const json& imp = snap.at("impression").at("value");
        const json& emo = snap.at("emotion");
        std::string cue_color;
        std::string cue_animation;
        for (const auto& m : r.outputs) {
            if (m.value("type", "") == "expression_cue") {
                cue_color = m.at("eye_color").get<std::string>();
                cue_animation = m.at("animation").is_null() ? "" : m.at("animation").get<std::string>();
            }
        }
        if (csv) {
            *sink << r.event.seq << "," << r.event.t;
            for (const auto* v : {&imp, &emo})
                for (std::size_t i = 0; i < 3; ++i) *sink << "," << (*v)[i].dump();
            *sink << "," << snap.at("label").get<std::string>() << ","
                  << (snap.at("similarity").is_null() ? "" : snap.at("similarity").dump()) << "," << cue_color
                  << "," << cue_animation << "\n";
        } else {
            json row = {{"seq", r.event.seq}, {"t_ms", r.event.t},   {"impression", imp},
                        {"emotion", emo},     {"label", snap.at("label")}, {"similarity", snap.at("similarity")},
                        {"cue_color", cue_color.empty() ? json(nullptr) : json(cue_color)},
                        {"cue_animation", cue_animation.empty() ? json(nullptr) : json(cue_animation)}};
            *sink << row.dump() << "\n";
        }
    }
    if (!*sink) return fail(err, {kUnwritable, "failed writing export"});
    return kOk;
}

}  // namespace emoact::cli
