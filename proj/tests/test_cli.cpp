#include <doctest.h>

#include <fstream>
#include <sstream>

#include "emoact/commands.hpp"
#include "emoact/trace.hpp"

using namespace emoact;
namespace cli = emoact::cli;

namespace {

const std::filesystem::path kRoot = EMOACT_SOURCE_DIR;

struct TempDir {
    std::filesystem::path path;
    TempDir() : path(std::filesystem::temp_directory_path() / "emoact_cli_test") {
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

cli::RunOptions wizard_run(const std::filesystem::path& out) {
    cli::RunOptions o;
    o.common.config = kRoot / "config" / "engine.json";
    o.story = "wizard";
    o.script = kRoot / "tests" / "fixtures" / "wizard_positive.script";
    o.out = out;
    return o;
}

int validate(const std::filesystem::path& story, std::string& text) {
    std::ostringstream out, err;
    cli::ValidateOptions o;
    o.story = story;
    int rc = cli::cmd_validate(o, out, err);
    text = out.str() + err.str();
    return rc;
}

}  // namespace

TEST_CASE("run: all-positive wizard script") {
    TempDir tmp;
    std::istringstream in;
    std::ostringstream out, err;
    REQUIRE(cli::cmd_run(wizard_run(tmp.path / "a.emoact-trace"), in, out, err) == cli::kOk);
    const std::string timeline = out.str();
    CHECK(timeline.find("choice hs1:adventure              Happiness") != std::string::npos);
    CHECK(timeline.find("choice hs2:robot_scans            Happiness") != std::string::npos);
    CHECK(timeline.find("forced bargain_fail               Anger") != std::string::npos);
    CHECK(timeline.find("forced greenhouse_detour          Fear") != std::string::npos);

    std::ostringstream out2;
    REQUIRE(cli::cmd_run(wizard_run(tmp.path / "b.emoact-trace"), in, out2, err) == cli::kOk);
    CHECK(slurp(tmp.path / "a.emoact-trace") == slurp(tmp.path / "b.emoact-trace"));

    std::ostringstream r1, r2;
    CHECK(cli::cmd_replay(tmp.path / "a.emoact-trace", r1, err) == cli::kOk);
    CHECK(cli::cmd_replay(tmp.path / "a.emoact-trace", r2, err) == cli::kOk);
    CHECK(r1.str() == r2.str());
    CHECK(r1.str().find("0 divergences") != std::string::npos);
}

TEST_CASE("run: error exits") {
    TempDir tmp;
    std::istringstream in;
    std::ostringstream out, err;

    auto missing = wizard_run(tmp.path / "x.emoact-trace");
    missing.story = (kRoot / "stories" / "nope.json").string();
    CHECK(cli::cmd_run(missing, in, out, err) == cli::kNotFound);
    CHECK(err.str().find("story not found") != std::string::npos);

    auto bad_policy = wizard_run(tmp.path / "x.emoact-trace");
    bad_policy.policy = "sometimes";
    CHECK(cli::cmd_run(bad_policy, in, out, err) == cli::kMalformed);

    auto unwritable = wizard_run(tmp.path / "no" / "such" / "dir" / "x.emoact-trace");
    CHECK(cli::cmd_run(unwritable, in, out, err) == cli::kUnwritable);

    auto no_config = wizard_run(tmp.path / "x.emoact-trace");
    no_config.common.config = tmp.path / "missing.json";
    CHECK(cli::cmd_run(no_config, in, out, err) == cli::kNotFound);
}

TEST_CASE("replay: tampered and missing traces") {
    TempDir tmp;
    std::istringstream in;
    std::ostringstream out, err;
    REQUIRE(cli::cmd_run(wizard_run(tmp.path / "a.emoact-trace"), in, out, err) == cli::kOk);
    Trace trace = read_trace_file(tmp.path / "a.emoact-trace");
    trace.records[3].snapshot["impression"]["value"][0] = -2.0;
    write_trace_file(tmp.path / "bad.emoact-trace", trace);
    std::ostringstream report;
    CHECK(cli::cmd_replay(tmp.path / "bad.emoact-trace", report, err) == cli::kCheckFailed);
    CHECK(report.str().find("replay diverged at seq " + std::to_string(trace.records[3].event.seq)) == 0);
    CHECK(cli::cmd_replay(tmp.path / "none.emoact-trace", report, err) == cli::kNotFound);
    std::ofstream(tmp.path / "junk.emoact-trace") << "junk\n";
    CHECK(cli::cmd_replay(tmp.path / "junk.emoact-trace", report, err) == cli::kMalformed);
}

TEST_CASE("validate") {
    std::string text;
    CHECK(validate(kRoot / "stories" / "detective.json", text) == cli::kOk);
    CHECK(text.find("16 paths") != std::string::npos);
    CHECK(text.find("emotions covered: Anger Fear Happiness Sadness") != std::string::npos);

    CHECK(validate(kRoot / "tests" / "fixtures" / "no_fear.json", text) == cli::kCheckFailed);
    CHECK(text.find("fear unreachable on path") != std::string::npos);

    CHECK(validate(kRoot / "tests" / "fixtures" / "cyclic.json", text) == cli::kCheckFailed);
    CHECK(text.find("cycle") != std::string::npos);

    CHECK(validate(kRoot / "tests" / "fixtures" / "missing.json", text) == cli::kNotFound);
}

TEST_CASE("export") {
    TempDir tmp;
    std::istringstream in;
    std::ostringstream out, err;
    REQUIRE(cli::cmd_run(wizard_run(tmp.path / "a.emoact-trace"), in, out, err) == cli::kOk);
    const Trace trace = read_trace_file(tmp.path / "a.emoact-trace");

    SUBCASE("csv rows mirror the snapshots") {
        cli::ExportOptions o;
        o.trace = tmp.path / "a.emoact-trace";
        std::ostringstream csv;
        REQUIRE(cli::cmd_export(o, csv, err) == cli::kOk);
        std::istringstream rows(csv.str());
        std::string line;
        std::getline(rows, line);
        CHECK(line.rfind("seq,t_ms,imp_e", 0) == 0);
        std::size_t k = 0;
        while (std::getline(rows, line)) {
            REQUIRE(k < trace.records.size());
            std::istringstream cells(line);
            std::string seq, t, e;
            std::getline(cells, seq, ',');
            std::getline(cells, t, ',');
            std::getline(cells, e, ',');
            CHECK(std::stoll(seq) == trace.records[k].event.seq);
            CHECK(std::stod(e) == trace.records[k].snapshot["impression"]["value"][0].get<double>());
            ++k;
        }
        CHECK(k == trace.records.size());
    }
    SUBCASE("first ten events give ten rows; an empty trace gives only the header") {
        Trace ten = trace;
        ten.records.resize(10);
        write_trace_file(tmp.path / "ten.emoact-trace", ten);
        Trace none = trace;
        none.records.clear();
        write_trace_file(tmp.path / "none.emoact-trace", none);

        cli::ExportOptions o;
        o.trace = tmp.path / "ten.emoact-trace";
        o.format = "jsonl";
        o.out = tmp.path / "ten.jsonl";
        REQUIRE(cli::cmd_export(o, out, err) == cli::kOk);
        std::istringstream lines(slurp(*o.out));
        std::size_t n = 0;
        for (std::string l; std::getline(lines, l);) ++n;
        CHECK(n == 10);

        o.trace = tmp.path / "none.emoact-trace";
        o.format = "csv";
        o.out.reset();
        std::ostringstream csv;
        REQUIRE(cli::cmd_export(o, csv, err) == cli::kOk);
        const std::string text = csv.str();
        CHECK(std::count(text.begin(), text.end(), '\n') == 1);

        o.out = tmp.path / "missing" / "out.csv";
        CHECK(cli::cmd_export(o, out, err) == cli::kUnwritable);
        o.format = "xml";
        CHECK(cli::cmd_export(o, out, err) == cli::kMalformed);
    }
}
