#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "manna/cli.hpp"
#include "manna/io.hpp"

namespace fs = std::filesystem;
using manna::io::Json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = manna::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch() {
    const fs::path dir = fs::temp_directory_path() / ("manna_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir;
}

std::string write(const fs::path& path, const std::string& text) {
    std::ofstream(path) << text;
    return path.string();
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

const char* kExample = R"({"weights":["1","1"],"valuations":[["5","5","1","1"],["3","3","1","1"]]})";

}  // namespace

TEST_CASE("check exit codes") {
    const fs::path dir = scratch();
    const auto inst = write(dir / "inst.json", kExample);
    const auto fair = write(dir / "fair.json", R"({"bundles":[[1],[0,2,3]]})");
    const auto unfair = write(dir / "unfair.json", R"({"bundles":[[0,1],[2,3]]})");

    auto r = run({"check", "--instance", inst, "--allocation", fair, "--notion", "wef1"});
    CHECK(r.code == 0);
    CHECK(r.out == "WEF1: pass\n");

    r = run({"check", "--instance", inst, "--allocation", unfair, "--notion", "wef1"});
    CHECK(r.code == 1);
    CHECK(r.out.find("agent 2 WEF1-envies agent 1") != std::string::npos);

    r = run({"--json", "check", "--instance", inst, "--allocation", unfair});
    CHECK(r.code == 1);
    const Json doc = Json::parse(r.out);
    CHECK(doc["version"] == "0.1.0");
    CHECK(doc["report"]["overall"] == false);

    r = run({"check", "--instance", (dir / "missing.json").string(), "--allocation", fair});
    CHECK(r.code == 2);
    r = run({"check", "--instance", inst, "--allocation", fair, "--notion", "ef7"});
    CHECK(r.code == 2);
    r = run({"--json", "check", "--instance", inst});
    CHECK(r.code == 2);
    CHECK(Json::parse(r.err)["exit_code"] == 2);
    r = run({});
    CHECK(r.code == 2);
}

TEST_CASE("solve subcommands") {
    const fs::path dir = scratch();
    const auto inst = write(dir / "inst.json", kExample);
    auto r = run({"solve", "wef1t", "--instance", inst});
    CHECK(r.code == 0);
    CHECK(r.out.find("WEF1T: pass") != std::string::npos);

    const auto trace = (dir / "trace.json").string();
    r = run({"--json", "solve", "market2", "--instance", inst, "--trace", trace});
    CHECK(r.code == 0);
    CHECK(Json::parse(r.out)["iterations"] == 3);
    CHECK(Json::parse(slurp(trace))["trace"]["iterations"].size() == 3);

    const auto start = write(dir / "start.json", R"({"bundles":[[0,1],[2,3]],"prices":["5","5","1","1"]})");
    r = run({"--json", "solve", "market2", "--instance", inst, "--start", start});
    CHECK(r.code == 0);
    CHECK(Json::parse(r.out)["iterations"] == 1);

    const auto bad = write(dir / "bad.json", R"({"bundles":[[],[0,1,2,3]],"prices":["5","5","1","1"]})");
    CHECK(run({"solve", "market2", "--instance", inst, "--start", bad}).code == 2);

    const auto three = write(dir / "three.json", R"({"weights":["1","1","1"],"valuations":[["1"],["1"],["1"]]})");
    CHECK(run({"solve", "market2", "--instance", three}).code == 2);
}

TEST_CASE("search exit codes and cap") {
    const fs::path dir = scratch();
    const auto inst = write(dir / "inst.json", kExample);
    auto r = run({"--json", "search", "--instance", inst, "--notion", "wef1", "--first"});
    CHECK(r.code == 0);
    CHECK(Json::parse(r.out)["search"]["satisfying_count"] == 1);
    r = run({"search", "--instance", inst, "--notion", "wef", "--po"});
    CHECK((r.code == 0 || r.code == 1));
    CHECK(run({"search", "--instance", inst, "--cap", "4"}).code == 2);
}

TEST_CASE("repro subcommands") {
    auto r = run({"repro", "twophase", "--eps", "1/10"});
    CHECK(r.code == 0);
    r = run({"repro", "thm3", "--eps", "1/10", "--weights", "2,3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("intersection empty") != std::string::npos);
    r = run({"repro", "thm3", "--eps", "1/8"});
    CHECK(r.code == 1);
    CHECK(run({"repro", "thm3", "--eps", "1/2"}).code == 2);
    CHECK(run({"repro", "thm3", "--eps", "abc"}).code == 2);
    CHECK(run({"repro", "thm3", "--eps", "1/8", "--weights", "1"}).code == 2);
}

TEST_CASE("gen is deterministic and byte-identical") {
    const fs::path dir = scratch();
    const auto a = (dir / "a.json").string(), b = (dir / "b.json").string();
    CHECK(run({"gen", "--agents", "2", "--items", "6", "--seed", "42", "--out", a}).code == 0);
    CHECK(run({"gen", "--agents", "2", "--items", "6", "--seed", "42", "--out", b}).code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(run({"gen", "--agents", "2", "--items", "6", "--seed", "42"}).out == slurp(a));
    CHECK(run({"gen", "--agents", "2", "--items", "3", "--seed", "1", "--values", "3:1"}).code == 2);
    const auto c = run({"gen", "--agents", "3", "--items", "4", "--seed", "9", "--chores", "1"});
    CHECK(c.code == 0);
    const auto inst = manna::io::parse_instance(c.out);
    for (std::size_t j = 0; j < inst.items(); ++j) CHECK(manna::classify_item(inst, j).is_chore());
}
