#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "mubkit/errors.hpp"
#include "mubkit/serialize.hpp"

using namespace mubkit;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;  // stdout and stderr interleaved
};

RunResult run_cli(const std::string &args) {
    const std::string cmd = std::string(MUBKIT_CLI_PATH) + " " + args + " 2>&1";
    FILE *pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t n = 0;
    while ((n = std::fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    if (WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
    return r;
}

void write_file(const std::string &path, const std::string &content) {
    std::ofstream out(path);
    REQUIRE(out.good());
    out << content;
}

const std::vector<Field> &all_fields() {
    static const std::vector<Field> fields = {Field(2, 1), Field(3, 1), Field(2, 2),
                                              Field(5, 1), Field(7, 1), Field(2, 3),
                                              Field(3, 2)};
    return fields;
}

}  // namespace

TEST_CASE("state sets survive a JSON round trip byte for byte") {
    for (const Field &f : all_fields()) {
        CAPTURE(f.q());
        const StateSet mub = canonical_mub(f);
        const std::string first = to_json(mub).dump();
        const StateSet parsed = state_set_from_json(json::parse(first));
        CHECK(to_json(parsed).dump() == first);
        CHECK(parsed.q == mub.q);
        CHECK(parsed.states.size() == mub.states.size());
        CHECK(parsed.groups == mub.groups);
        CHECK(parsed.labels == mub.labels);
        REQUIRE(parsed.field.has_value());
        CHECK(*parsed.field == f);
        for (std::size_t i = 0; i < mub.states.size(); ++i)
            CHECK((parsed.states[i] - mub.states[i]).norm() == 0.0);
    }

    const StateSet sic = hesse_sic();
    const std::string dumped = to_json(sic).dump();
    CHECK(to_json(state_set_from_json(json::parse(dumped))).dump() == dumped);
}

TEST_CASE("field descriptors round trip") {
    for (const Field &f : all_fields()) {
        const Field g = field_from_json(to_json(f));
        CHECK(g == f);
        CHECK(g.q() == f.q());
    }
}

TEST_CASE("malformed documents are rejected with a parse error") {
    // Missing required key.
    CHECK_THROWS_AS(state_set_from_json(json{{"kind", "state_set"}, {"q", 2}}), ParseError);

    // Ragged state table.
    json ragged = {{"kind", "state_set"},
                   {"q", 2},
                   {"states", json::array({json::array({json::array({1.0, 0.0}),
                                                        json::array({0.0, 0.0})}),
                                           json::array({json::array({1.0, 0.0})})})}};
    CHECK_THROWS_AS(state_set_from_json(ragged), ParseError);

    // A complex entry that is not an [re, im] pair.
    json bad_complex = {{"kind", "state_set"},
                        {"q", 2},
                        {"states", json::array({json::array(
                                       {json::array({1.0}), json::array({0.0, 0.0})})})}};
    CHECK_THROWS_AS(state_set_from_json(bad_complex), ParseError);

    // Group index out of range.
    json base = to_json(canonical_mub(Field(2, 1)));
    json bad_group = base;
    bad_group["groups"][0][0] = 99;
    CHECK_THROWS_AS(state_set_from_json(bad_group), ParseError);

    // Label count mismatch.
    json bad_labels = base;
    bad_labels["labels"] = json::array({"only-one"});
    CHECK_THROWS_AS(state_set_from_json(bad_labels), ParseError);

    // Files: missing and syntactically broken.
    CHECK_THROWS_AS(load_json_file("no_such_file_mubkit.json"), ParseError);
    write_file("mubkit_broken.json", "{ not json !");
    CHECK_THROWS_AS(load_json_file("mubkit_broken.json"), ParseError);
    std::remove("mubkit_broken.json");
}

TEST_CASE("group statistics document") {
    const json stats = group_stats_json(enumerate_group(Field(2, 1)));
    CHECK(stats.at("kind") == "group_stats");
    CHECK(stats.at("q") == 2);
    CHECK(stats.at("order") == 24);
    CHECK(stats.at("expected_order") == 24);
    CHECK(stats.at("order_matches") == true);
    CHECK(stats.at("distinct_symplectic_labels") == 6);
}

TEST_CASE("cli generates sets that its own checks certify") {
    const std::string path = "mubkit_cli_mub3.json";
    const RunResult gen = run_cli("gen mub --q 3 --out " + path);
    CHECK(gen.exit_code == 0);

    const RunResult check = run_cli("check --in " + path + " --tests mub,design2,frame");
    CHECK(check.exit_code == 0);
    const json report = json::parse(check.out);
    CHECK(report.at("all_pass") == true);
    CHECK(report.at("reports").size() == 3);

    // The same file seeds an orbit run.
    const RunResult orb = run_cli("orbit --q 3 --seed-state file:" + path);
    CHECK(orb.exit_code == 0);
    CHECK(json::parse(orb.out).at("size") == 12);
    std::remove(path.c_str());
}

TEST_CASE("cli fiducial output matches the pinned vector") {
    const RunResult r = run_cli("gen sic --q 3");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    const StateSet sic = state_set_from_json(doc);
    REQUIRE(sic.states.size() == 9);
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(sic.states[0](0)) == 0.0);
    CHECK(std::abs(sic.states[0](1) - s) < 1e-15);
    CHECK(std::abs(sic.states[0](2) + s) < 1e-15);
}

TEST_CASE("cli usage and input errors exit with code 2") {
    const RunResult bad_q = run_cli("gen mub --q 6");
    CHECK(bad_q.exit_code == 2);
    CHECK(bad_q.out.find("error:") != std::string::npos);

    const RunResult bad_sub = run_cli("frobnicate");
    CHECK(bad_sub.exit_code == 2);

    const RunResult missing = run_cli("check --in does_not_exist.json");
    CHECK(missing.exit_code == 2);
    CHECK(missing.out.find("error:") != std::string::npos);

    const RunResult sic_q = run_cli("gen sic --q 5");
    CHECK(sic_q.exit_code == 2);

    const RunResult help = run_cli("--help");
    CHECK(help.exit_code == 0);
}

TEST_CASE("cli reports a failing certification with exit code 1") {
    // Two orthogonal states are nowhere near a projective 2-design.
    StateSet pair;
    pair.q = 2;
    Eigen::VectorXcd e0(2), e1(2);
    e0 << 1.0, 0.0;
    e1 << 0.0, 1.0;
    pair.states = {e0, e1};
    const std::string path = "mubkit_cli_pair.json";
    write_file(path, to_json(pair).dump());

    const RunResult r = run_cli("check --in " + path + " --tests design2");
    CHECK(r.exit_code == 1);
    const json report = json::parse(r.out);
    CHECK(report.at("all_pass") == false);
    std::remove(path.c_str());
}

TEST_CASE("cli output is byte-deterministic across runs") {
    const RunResult a = run_cli("gen mub --q 4");
    const RunResult b = run_cli("gen mub --q 4");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);

    const RunResult v1 = run_cli("verify-theorem1 --q 2 --samples 3 --rng-seed 7");
    const RunResult v2 = run_cli("verify-theorem1 --q 2 --samples 3 --rng-seed 7");
    CHECK(v1.exit_code == 0);
    CHECK(v1.out == v2.out);
    CHECK(json::parse(v1.out).at("pass") == true);
}

TEST_CASE("cli orbit subcommand reproduces the known fiducial orbit") {
    const RunResult r = run_cli("orbit --q 3 --seed-state hesse");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc.at("kind") == "orbit");
    CHECK(doc.at("size") == 9);
    CHECK(doc.at("design2").at("pass") == true);

    const RunResult mismatch = run_cli("orbit --q 5 --seed-state hesse");
    CHECK(mismatch.exit_code == 2);
}
