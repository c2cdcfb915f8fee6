#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

using json = nlohmann::json;

std::string cli_path() {
    const char* path = std::getenv("GSPDOM_CLI");
    REQUIRE_MESSAGE(path != nullptr, "GSPDOM_CLI must point at the gspdom binary");
    return path;
}

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = cli_path() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    int status = pclose(pipe);
    return RunResult{WEXITSTATUS(status), out};
}

std::string write_temp(const std::string& name, const std::string& content) {
    auto dir = std::filesystem::temp_directory_path() / "gspdom_cli_tests";
    std::filesystem::create_directories(dir);
    std::string path = (dir / name).string();
    std::ofstream out(path);
    out << content;
    return path;
}

} // namespace

TEST_CASE("solve on an expression file") {
    std::string path = write_temp("p3.expr", "s(e(a,b),e(b,c))\n");
    auto r = run("solve " + path + " --variant one2 --witness");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("value: 1") != std::string::npos);
    CHECK(r.out.find("witness: b") != std::string::npos);

    auto rj = run("solve " + path + " --json --witness");
    CHECK(rj.exit_code == 0);
    json report = json::parse(rj.out);
    CHECK(report["variant"] == "one2");
    CHECK(report["n"] == 3);
    CHECK(report["m"] == 2);
    CHECK(report["value"] == 1);
    CHECK(report["feasible"] == true);
    CHECK(report["parse_tree_nodes"] == 3);
    CHECK(report["witness"].size() == 1);
    CHECK(report.contains("elapsed_ms"));
}

TEST_CASE("solve edge lists through recognition") {
    std::string path = write_temp("p4.edges", "a b\nb c\nc d\n");
    auto r = run("solve " + path + " --format edges --json");
    CHECK(r.exit_code == 0);
    json report = json::parse(r.out);
    CHECK(report["value"] == 2);

    std::string spider = write_temp(
        "spider.edges", "c a1\na1 b1\nc a2\na2 b2\nc a3\na3 b3\n");
    auto rt = run("solve " + spider + " --format edges --variant total12 --json");
    CHECK(rt.exit_code == 0);
    json total = json::parse(rt.out);
    CHECK(total["feasible"] == false);
    CHECK(total["value"].is_null());
    CHECK(!total.contains("witness"));
}

TEST_CASE("solve flags K4 as not GSP with exit 2") {
    std::string path = write_temp("k4.edges", "a b\na c\na d\nb c\nb d\nc d\n");
    auto r = run("solve " + path + " --format edges");
    CHECK(r.exit_code == 2);
}

TEST_CASE("solve rejects malformed input with exit 1") {
    std::string path = write_temp("bad.expr", "s(e(a,b)\n");
    CHECK(run("solve " + path).exit_code == 1);
    CHECK(run("solve does_not_exist.expr").exit_code == 1);
}

TEST_CASE("check validates sets") {
    std::string path = write_temp("p3.edges", "a b\nb c\n");
    CHECK(run("check " + path + " --set b --variant one2").exit_code == 0);
    auto bad = run("check " + path + " --set a --variant one2");
    CHECK(bad.exit_code == 3);
    CHECK(bad.out.find("'c'") != std::string::npos);
    CHECK(bad.out.find("0 dominators") != std::string::npos);
    CHECK(run("check " + path + " --set nosuch").exit_code == 1);

    std::string k2 = write_temp("k2.edges", "a b\n");
    CHECK(run("check " + k2 + " --set a,b --variant total12").exit_code == 0);
    CHECK(run("check " + k2 + " --set a --variant total12").exit_code == 3);
}

TEST_CASE("gen is deterministic and feeds solve") {
    auto a = run("gen --seed 1 --leaves 1");
    CHECK(a.exit_code == 0);
    CHECK(a.out == "e(v0,v1)\n");
    auto b = run("gen --seed 9 --leaves 50");
    CHECK(b.exit_code == 0);
    CHECK(run("gen --seed 9 --leaves 50").out == b.out);

    std::string path = write_temp("gen50.expr", b.out);
    auto solved = run("solve " + path + " --json --witness");
    CHECK(solved.exit_code == 0);
    json report = json::parse(solved.out);
    CHECK(report["m"] == 50);
    CHECK(report["feasible"] == true);

    CHECK(run("gen --seed 1 --leaves 3 --weights 1,0").exit_code == 1);
}

TEST_CASE("oracle agrees with solve on small inputs") {
    std::string path = write_temp("p3b.edges", "a b\nb c\n");
    auto r = run("oracle " + path + " --variant one2 --json");
    CHECK(r.exit_code == 0);
    json report = json::parse(r.out);
    CHECK(report["value"] == 1);
    CHECK(report["parse_tree_nodes"] == 0);

    std::string spider = write_temp(
        "spider2.edges", "c a1\na1 b1\nc a2\na2 b2\nc a3\na3 b3\n");
    auto rt = run("oracle " + spider + " --variant total12 --json");
    CHECK(rt.exit_code == 0);
    CHECK(json::parse(rt.out)["feasible"] == false);

    // beyond the guard -> error exit
    std::string big;
    for (int i = 0; i + 1 < 30; ++i) {
        big += "v" + std::to_string(i) + " v" + std::to_string(i + 1) + "\n";
    }
    std::string bigpath = write_temp("big.edges", big);
    CHECK(run("oracle " + bigpath).exit_code == 1);
}

TEST_CASE("solve and oracle agree end to end") {
    for (int seed : {11, 12, 13, 14}) {
        auto gen = run("gen --seed " + std::to_string(seed) + " --leaves 6");
        REQUIRE(gen.exit_code == 0);
        std::string path = write_temp("agree" + std::to_string(seed) + ".expr", gen.out);
        for (const char* variant : {"one2", "total12"}) {
            auto solved = run("solve " + path + " --variant " + variant + " --json");
            auto truth =
                run("oracle " + path + " --format expr --variant " + variant + " --json");
            REQUIRE(solved.exit_code == 0);
            REQUIRE(truth.exit_code == 0);
            json a = json::parse(solved.out);
            json b = json::parse(truth.out);
            CHECK(a["feasible"] == b["feasible"]);
            CHECK(a["value"] == b["value"]);
        }
    }
}

namespace {

// instance-shape fields only; timings differ between runs
std::string strip_timings(const std::string& bench_out) {
    std::string kept;
    std::istringstream lines(bench_out);
    std::string line;
    while (std::getline(lines, line)) {
        auto cut = line.find(" gen_ms=");
        if (cut != std::string::npos) kept += line.substr(0, cut) + "\n";
    }
    return kept;
}

} // namespace

TEST_CASE("bench reuses the same instance stream for a fixed seed") {
    auto a = run("bench --sizes 32,64 --repeats 2 --seed 77");
    auto b = run("bench --sizes 32,64 --repeats 2 --seed 77");
    CHECK(a.exit_code == 0);
    CHECK(strip_timings(a.out) == strip_timings(b.out));
    CHECK(!strip_timings(a.out).empty());
}

TEST_CASE("bench emits rows and a fitted slope") {
    auto r = run("bench --sizes 64,128,256 --repeats 2 --seed 5");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("leaves=64") != std::string::npos);
    CHECK(r.out.find("leaves=256") != std::string::npos);
    CHECK(r.out.find("median_solve_ms=") != std::string::npos);
    CHECK(r.out.find("loglog_slope=") != std::string::npos);
    CHECK(r.out.find("top_doubling_ratio=") != std::string::npos);
    CHECK(run("bench --sizes 128,64").exit_code == 1);  // not ascending
}
