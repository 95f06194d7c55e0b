#include "medusa/cli.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

using namespace medusa;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    args.insert(args.begin(), "medusa-sim");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) v.push_back(l);
    return v;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("medusa_cli_test_" + name);
}

}  // namespace

TEST_CASE("validate reports PASS") {
    const auto r = run({"validate", "--w-line", "512", "--w-acc", "16", "--seed", "7", "--cycles", "5000"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.rfind("PASS\n", 0) == 0);
}

TEST_CASE("cost CSV rows") {
    const auto r = run({"cost", "--w-line", "512", "--w-acc", "16", "--burst", "32"});
    CHECK(r.code == kExitOk);
    const auto rows = lines_of(r.out);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0] == "design,direction,w_line,w_acc,n,burst,mux2,bram18");
    CHECK(rows[1] == "baseline,read,512,16,32,32,15872,480");
    CHECK(rows[3] == "medusa,read,512,16,32,32,2560,32");

    const auto grid = run({"cost", "--grid", "--w-acc", "16"});
    CHECK(grid.code == kExitOk);
    const auto grid_rows = lines_of(grid.out);
    CHECK(grid_rows.size() == 1 + 15 * 4);
    CHECK(grid_rows[1].rfind("baseline,read,128,16,8,", 0) == 0);
    CHECK(grid_rows.back().rfind("medusa,write,1024,16,64,", 0) == 0);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run({"simulate", "--config", "/nonexistent/medusa.cfg"}).code == kExitUsage);
    CHECK(run({"simulate", "--bogus"}).code == kExitUsage);
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"simulate", "--w-line", "96"}).code == kExitUsage);
    CHECK(run({"simulate", "--set", "no_such_key=1"}).code == kExitUsage);
    CHECK(run({"simulate", "--set", "novalue"}).code == kExitUsage);
    CHECK(run({"simulate", "--network", "ring"}).code == kExitUsage);
    CHECK(run({"simulate", "--trace", "/nonexistent/trace.txt"}).code == kExitUsage);
    CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("simulate output is deterministic and carries the latency delta") {
    const std::vector<std::string> args{"simulate", "--w-line", "128", "--w-acc", "16", "--cycles", "3000",
                                        "--pattern", "random", "--seed", "5"};
    const auto a = run(args);
    const auto b = run(args);
    REQUIRE(a.code == kExitOk);
    CHECK(a.out == b.out);
    const auto rows = lines_of(a.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[1].find(",baseline,") != std::string::npos);
    CHECK(rows[2].find(",medusa,") != std::string::npos);

    const auto other_seed = run({"simulate", "--w-line", "128", "--w-acc", "16", "--cycles", "3000", "--pattern",
                                 "random", "--seed", "6"});
    CHECK(other_seed.out != a.out);
}

TEST_CASE("seed precedence: flag over --set over environment") {
    const std::vector<std::string> base{"simulate", "--w-line", "64", "--w-acc", "16", "--cycles", "2000",
                                        "--pattern", "random", "--network", "medusa"};
    auto with = [&](std::vector<std::string> extra) {
        auto args = base;
        args.insert(args.end(), extra.begin(), extra.end());
        return run(args).out;
    };
    ::setenv("MEDUSA_SIM_SEED", "11", 1);
    const std::string env11 = with({});
    const std::string flag11 = with({"--seed", "11"});
    const std::string set12 = with({"--set", "rng_seed=12"});
    const std::string flag11_set12 = with({"--seed", "11", "--set", "rng_seed=12"});
    ::unsetenv("MEDUSA_SIM_SEED");
    CHECK(env11 == flag11);
    CHECK(set12 != env11);
    CHECK(flag11_set12 == flag11);
    CHECK(set12 == with({"--seed", "12"}));
}

TEST_CASE("config file with flag overrides") {
    const auto path = temp_file("cfg.txt");
    {
        std::ofstream f(path);
        f << "w_line = 64\nw_acc = 16\nsim_cycles = 1500\nn_read_ports_active = 2\n";
    }
    const auto from_file = run({"simulate", "--config", path.string(), "--network", "medusa"});
    CHECK(from_file.code == kExitOk);
    CHECK(lines_of(from_file.out)[1].rfind("l64_a16_r2_w4_", 0) == 0);
    const auto overridden = run({"simulate", "--config", path.string(), "--read-ports", "3", "--network", "medusa"});
    CHECK(lines_of(overridden.out)[1].rfind("l64_a16_r3_w4_", 0) == 0);
    std::filesystem::remove(path);
}

TEST_CASE("JSON output") {
    const auto r = run({"simulate", "--w-line", "64", "--w-acc", "16", "--cycles", "1000", "--json"});
    REQUIRE(r.code == kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["runs"].size() == 2);
    CHECK(j["runs"][0]["network"] == "baseline");
    CHECK(j["runs"][1]["network"] == "medusa");

    const auto csv_path = temp_file("out.csv");
    const auto to_file = run({"simulate", "--w-line", "64", "--w-acc", "16", "--cycles", "1000", "--json", "--out",
                              csv_path.string()});
    CHECK(to_file.code == kExitOk);
    CHECK(to_file.out.empty());
    CHECK(std::filesystem::exists(csv_path));
    std::ifstream js(csv_path.string() + ".json");
    CHECK(nlohmann::json::parse(js)["runs"].size() == 2);
    std::filesystem::remove(csv_path);
    std::filesystem::remove(csv_path.string() + ".json");
}

TEST_CASE("trace-driven simulate") {
    const auto path = temp_file("trace.txt");
    {
        std::ofstream f(path);
        f << "# cycle port dir addr burst\n0 0 R 100 4\n3 1 R 200 2\n";
    }
    const auto r = run({"simulate", "--w-line", "64", "--w-acc", "16", "--cycles", "200", "--trace", path.string(),
                        "--network", "medusa", "--json"});
    CHECK(r.code == kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["runs"][0]["words_delivered"] == 6 * 4);
    {
        std::ofstream f(path);
        f << "0 0 X 100 4\n";
    }
    CHECK(run({"simulate", "--w-line", "64", "--w-acc", "16", "--trace", path.string()}).code == kExitUsage);
    std::filesystem::remove(path);
}

TEST_CASE("sweep rows follow grid order regardless of thread count") {
    const std::vector<std::string> base{"sweep", "--w-acc", "16", "--cycles", "600", "--burst", "4"};
    auto serial = base;
    serial.insert(serial.end(), {"--jobs", "1"});
    auto parallel = base;
    parallel.insert(parallel.end(), {"--jobs", "8"});
    const auto a = run(serial);
    const auto b = run(parallel);
    REQUIRE(a.code == kExitOk);
    CHECK(a.out == b.out);
    const auto rows = lines_of(a.out);
    REQUIRE(rows.size() == 1 + 15 * 2);
    CHECK(rows[1].rfind("l128_a16_r8_w8_", 0) == 0);
    CHECK(rows[1].find(",baseline,") != std::string::npos);
    CHECK(rows[2].find(",medusa,") != std::string::npos);
    CHECK(rows.back().rfind("l1024_a16_r64_w64_", 0) == 0);
}

#ifdef MEDUSA_SIM_EXE
TEST_CASE("installed binary exit codes") {
    const std::string exe = MEDUSA_SIM_EXE;
    CHECK(std::system((exe + " cost > /dev/null").c_str()) == 0);
    const int missing = std::system((exe + " simulate --config /nonexistent/x.cfg 2> /dev/null").c_str());
    CHECK(WEXITSTATUS(missing) == kExitUsage);
}
#endif
