// Drives the installed command-line binary end to end.
#include <catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(SPARSESPEC_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string config_path(const std::string& name) { return std::string(SPARSESPEC_SOURCE_DIR) + "/configs/" + name; }

const fs::path& scratch_dir() {
    static const struct Dir {
        fs::path path = fs::temp_directory_path() / ("sparsespec_cli_test_" + std::to_string(::getpid()));
        Dir() { fs::create_directories(path); }
        ~Dir() {
            std::error_code ec;
            fs::remove_all(path, ec);
        }
    } dir;
    return dir.path;
}

fs::path scratch(const std::string& name) { return scratch_dir() / name; }

fs::path write(const std::string& name, const std::string& text) {
    const auto p = scratch(name);
    std::ofstream(p) << text;
    return p;
}

std::string read(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("classify on the shipped configs") {
    const auto quarter = run("classify --config " + config_path("factorial_quarter_delta.json"));
    CHECK(quarter.code == 0);
    CHECK(quarter.out.find("\"case\": \"case_ii\"") != std::string::npos);
    CHECK(quarter.out.find("\"sc_contains\": \"[0,inf)\"") != std::string::npos);

    const auto half = run("classify --config " + config_path("factorial_half_delta.json"));
    CHECK(half.code == 0);
    CHECK(half.out.find("\"case\": \"case_i_delta\"") != std::string::npos);
}

TEST_CASE("configuration errors exit with 2 and leave no output") {
    const auto bad = write("bad.json", R"({"system": {"kind": "deltx", "positions": {"type": "factorial"},
                                          "strengths": {"type": "constant"}}})");
    const auto out = scratch("never.json");
    const auto r = run("classify --config " + bad.string() + " --out " + out.string());
    CHECK(r.code == 2);
    CHECK_FALSE(fs::exists(out));
    CHECK(run("classify --config /nonexistent/config.json").code == 2);
    CHECK(run("classify").code == 2);
    CHECK(run("frobnicate --config " + bad.string()).code == 2);
    CHECK(run("growth --format xml --config " + config_path("factorial_half_delta.json")).code == 2);

    const auto empty_range = write("empty.json", R"({"system": {"kind": "delta", "positions": {"type": "explicit", "points": [0, 3]},
        "strengths": {"type": "constant"}}, "params": {"N": 1, "lambda_min": 4, "lambda_max": 4}})");
    CHECK(run("eigs --config " + empty_range.string()).code == 2);
}

TEST_CASE("numerical failures exit with 3 under --strict") {
    const auto overflow = write("overflow.json", R"({"system": {"kind": "delta", "positions": {"type": "factorial"},
        "strengths": {"type": "power"}}, "params": {"N": 400}})");
    const auto lenient = run("propagate --config " + overflow.string());
    CHECK(lenient.code == 0);
    CHECK(lenient.out.find("#overflow at n=") != std::string::npos);
    CHECK(run("propagate --strict --config " + overflow.string()).code == 3);

    const auto coarse = write("coarse.json", R"({"system": {"kind": "delta", "positions": {"type": "explicit", "points": [0, 10]},
        "strengths": {"type": "constant"}}, "params": {"N": 1, "grid_intervals": 3}})");
    CHECK(run("eigs --config " + coarse.string()).code == 0);
    CHECK(run("eigs --strict --config " + coarse.string()).code == 3);
}

TEST_CASE("output files are written atomically and deterministically") {
    const auto a = scratch("a.csv");
    const auto b = scratch("b.csv");
    const std::string cfg = config_path("factorial_half_delta.json");
    REQUIRE(run("growth --config " + cfg + " --out " + a.string()).code == 0);
    REQUIRE(run("growth --config " + cfg + " --out " + b.string()).code == 0);
    CHECK(read(a) == read(b));
    CHECK(read(a).rfind("n,log_gap,log_A_n,dalembert_ratio,series_term\n", 0) == 0);
    for (const auto& entry : fs::directory_iterator(a.parent_path()))
        CHECK(entry.path().string().find(".tmp.") == std::string::npos);

    const auto via_config = scratch("from_config.json");
    const auto cfg_with_path = write("with_path.json", R"({"system": {"kind": "delta", "positions": {"type": "factorial"},
        "strengths": {"type": "power"}}, "output": {"format": "json", "path": ")" + via_config.string() + R"("}})");
    REQUIRE(run("avalue --config " + cfg_with_path.string()).code == 0);
    CHECK(read(via_config).front() == '{');
}

TEST_CASE("format flag overrides the default") {
    const std::string cfg = config_path("factorial_half_delta.json");
    CHECK(run("classify --format csv --config " + cfg).out.rfind("field,value\n", 0) == 0);
    CHECK(run("eigs --format json --config " + config_path("free_pi.json")).out.front() == '{');
    const auto eigs = run("eigs --config " + config_path("free_pi.json"));
    CHECK(eigs.out.find("\n1,1.0000000000") != std::string::npos);
}

TEST_CASE("help exits cleanly") { CHECK(run("--help").code == 0); }
