// Copyright 2026 The v2xemu Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Result {
    int code = -1;
    std::string output;
};

Result cli(const std::string& args) {
    const std::string cmd = std::string("\"") + V2XEMU_CLI_PATH + "\" " + args + " 2>&1";
    Result r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    char buf[4096];
    while (std::fgets(buf, sizeof buf, p)) {
        r.output += buf;
    }
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// A fresh working directory with a small generated city.
struct Workspace {
    fs::path dir;

    Workspace() {
        dir = fs::temp_directory_path() / ("v2xemu_cli_" + std::to_string(::getpid()));
        fs::remove_all(dir);
        fs::create_directories(dir);
        const Result r = cli("gen-scenario --out \"" + (dir / "city").string() +
                             "\" --blocks 3 --lots-x 2 --vehicles 40 --duration 2 --seed 4");
        REQUIRE(r.code == 0);
    }
    ~Workspace() { fs::remove_all(dir); }

    std::string path(const std::string& rel) const { return "\"" + (dir / rel).string() + "\""; }
    std::string inputs() const { return "--trace " + path("city/trace.jsonl") + " --buildings " + path("city/buildings.json"); }
};

}  // namespace

TEST_CASE("run writes every output file") {
    Workspace w;
    const Result r = cli("run " + w.inputs() + " --out " + w.path("out") + " --seed 3");
    CHECK(r.code == 0);
    for (const char* f : {"messages.jsonl", "metrics.csv", "ego_fixes.jsonl", "effective_config.json"}) {
        CAPTURE(f);
        CHECK(fs::exists(w.dir / "out" / f));
    }
    const std::string metrics = slurp(w.dir / "out" / "metrics.csv");
    CHECK(metrics.rfind("step_t,wall_delay,total_in_range,", 0) == 0);
    CHECK(std::count(metrics.begin(), metrics.end(), '\n') == 21);  // header + 20 steps
    const auto cfg = nlohmann::json::parse(slurp(w.dir / "out" / "effective_config.json"));
    CHECK(cfg["seed"] == 3);
    std::istringstream msgs(slurp(w.dir / "out" / "messages.jsonl"));
    std::string line;
    std::size_t n = 0;
    while (std::getline(msgs, line)) {
        const auto j = nlohmann::json::parse(line);
        CHECK(j["rx_power"].get<double>() >= -82.0);
        ++n;
    }
    CHECK(n > 0);
}

TEST_CASE("run is reproducible and honors overrides") {
    Workspace w;
    REQUIRE(cli("run " + w.inputs() + " --out " + w.path("a")).code == 0);
    REQUIRE(cli("run " + w.inputs() + " --out " + w.path("b") + " --workers 4").code == 0);
    REQUIRE(cli("run " + w.inputs() + " --out " + w.path("c") + " --set ranges.r_b=30 --set ranges.r_v=60").code ==
            0);
    const std::string a = slurp(w.dir / "a" / "messages.jsonl");
    CHECK(a == slurp(w.dir / "b" / "messages.jsonl"));
    CHECK(a != slurp(w.dir / "c" / "messages.jsonl"));
    const auto cfg = nlohmann::json::parse(slurp(w.dir / "c" / "effective_config.json"));
    CHECK(cfg["ranges"]["r_b"] == 30.0);
}

TEST_CASE("config file plus override") {
    Workspace w;
    {
        std::ofstream f(w.dir / "cfg.json");
        f << R"({"radio":{"shadowing_std":0},"ranges":{"r_b":300,"r_v":"inf"}})";
    }
    const Result r = cli("run " + w.inputs() + " --out " + w.path("o") + " --config " + w.path("cfg.json") +
                         " --set radio.tx_power=20");
    REQUIRE(r.code == 0);
    const auto cfg = nlohmann::json::parse(slurp(w.dir / "o" / "effective_config.json"));
    CHECK(cfg["radio"]["tx_power"] == 20.0);
    CHECK(cfg["radio"]["shadowing_std"] == 0.0);
    CHECK(cfg["ranges"]["r_v"] == "inf");
}

TEST_CASE("sweep writes one row per pair") {
    Workspace w;
    const Result r = cli("sweep " + w.inputs() + " --out " + w.path("s") + " --rb-list 50,inf --rv-list 100,inf");
    REQUIRE(r.code == 0);
    const std::string csv = slurp(w.dir / "s" / "sweep.csv");
    CHECK(csv.rfind("rb,rv,mean_delay_top50,max_delay,mean_delay_all,nlosb_missed,total_reference_nlosb,"
                    "delivered_diff\n",
                    0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}

TEST_CASE("exit codes") {
    Workspace w;
    CHECK(cli("--help").code == 0);
    CHECK(cli("run --buildings x.json --out y").code == 2);  // missing --trace
    CHECK(cli("frobnicate").code == 2);
    CHECK(cli("run " + w.inputs() + " --out " + w.path("o") + " --set ranges.r_b=-1").code == 1);
    CHECK(cli("run " + w.inputs() + " --out " + w.path("o") + " --set radio.bogus=1").code == 1);

    const Result ok = cli("validate " + w.inputs());
    CHECK(ok.code == 0);
    CHECK(ok.output.find("OK") != std::string::npos);

    {
        std::ofstream f(w.dir / "bad.json");
        f << R"([{"id":"b","vertices":[[0,0],[1,1]]}])";
    }
    const Result bad = cli("validate --buildings " + w.path("bad.json"));
    CHECK(bad.code == 1);
    CHECK(bad.output.find("error:") != std::string::npos);
    CHECK(bad.output.find("'b'") != std::string::npos);

    {
        std::ofstream f(w.dir / "back.jsonl");
        f << R"({"t":1,"ego":{"id":"e","x":0,"y":0,"speed":0,"heading":0}})" << '\n'
          << R"({"t":0.5,"ego":{"id":"e","x":0,"y":0,"speed":0,"heading":0}})" << '\n';
    }
    const Result back = cli("validate --trace " + w.path("back.jsonl"));
    CHECK(back.code == 1);
    CHECK(back.output.find("back.jsonl:2") != std::string::npos);
}

TEST_CASE("gnss-diag reports statistics") {
    const Result r = cli("gnss-diag --duration 2000 --seed 1");
    REQUIRE(r.code == 0);
    CHECK(r.output.find("rms=") != std::string::npos);
    CHECK(r.output.find("windows=3") != std::string::npos);
}

TEST_CASE("every CLI flag is documented in the README") {
    const std::string readme = slurp(V2XEMU_README_PATH);
    REQUIRE(!readme.empty());
    const std::regex flag(R"((--[a-z][a-z0-9-]+))");
    for (const char* sub : {"", "run", "sweep", "gen-scenario", "gnss-diag", "validate"}) {
        const Result help = cli(std::string(sub) + " --help");
        REQUIRE(help.code == 0);
        if (*sub) {
            CHECK(readme.find(sub) != std::string::npos);
        }
        for (auto it = std::sregex_iterator(help.output.begin(), help.output.end(), flag);
             it != std::sregex_iterator(); ++it) {
            CAPTURE(sub);
            CAPTURE(it->str());
            CHECK(readme.find(it->str()) != std::string::npos);
        }
    }
}
