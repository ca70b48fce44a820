#include "test_util.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "polyapx/json_io.hpp"

using namespace polyapx;
using testutil::q;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run cli(const std::string& args) {
    const std::string cmd = std::string(POLYAPX_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    size_t k;
    while ((k = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, k);
    const int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

fs::path scratch() {
    const fs::path d = fs::temp_directory_path() / ("polyapx_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("construct AND at 1/3 and verify it") {
    const fs::path d = scratch();
    const fs::path out = d / "and32.json";
    const Run r = cli("construct --target and --n 32 --eps 0.3333 --output " + out.string());
    REQUIRE(r.code == 0);
    const Json j = Json::parse(slurp(out));
    CHECK(j.at("target") == "spectrum");
    CHECK(j.at("n") == 32);
    CHECK(parse_rational(j.at("certified_eps").get<std::string>()) <= q(1, 3));
    CHECK(j.at("degree").get<int>() >= 1);
    CHECK(j.contains("expr"));
    const Run v = cli("verify " + out.string());
    CHECK(v.code == 0);
    CHECK(v.out.rfind("PASS", 0) == 0);
    CHECK(v.out.find("argmax") != std::string::npos);
}

TEST_CASE("surjectivity with r > n is the zero polynomial") {
    const Run r = cli("construct --target surj --n 4 --r 8");
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j.at("degree") == 0);
    CHECK(j.at("certified_eps") == "0");
    CHECK(j.at("outer").at("degree").get<int>() <= 0);
}

TEST_CASE("oracle for OR_2 at degree 1") {
    const Run r = cli("oracle --target or --n 2 --degree 1");
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j.at("eps_star") == "1/4");
    CHECK(j.at("coeffs") == Json::array({"1/4", "1/2"}));
    CHECK(j.at("active_points").size() >= 3);
}

TEST_CASE("verify(construct(x)) passes for every target") {
    const fs::path d = scratch();
    const std::vector<std::string> cases{
        "--target and --n 12 --d 4",
        "--target or --n 20 --eps 1/4",
        "--target exact --n 24 --k 2 --m 2 --eps 1/8",
        "--target symmetric --values 1,0,0,0,0,0,0,0,0,0,1 --eps 1/8",
        "--target small-support --values 1,-1/2,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0 --eps 1/8",
        "--target sampling --values 1,-1,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0 --eps 1/8",
        "--target interpolant --values 0,1/3,-1,1",
        "--target extension --values 1,1/2,0,0,0 --n 16 --delta 1/8",
        "--target surj --n 8 --r 2",
        "--target surj --n 4 --r 8",
    };
    int i = 0;
    for (const auto& c : cases) {
        const fs::path out = d / ("case" + std::to_string(i++) + ".json");
        CAPTURE(c);
        REQUIRE(cli("construct " + c + " --output " + out.string()).code == 0);
        const Run v = cli("verify " + out.string());
        CHECK(v.code == 0);
        CHECK(v.out.rfind("PASS", 0) == 0);
    }
}

TEST_CASE("tampered certificate fails verification with exit 3") {
    const fs::path d = scratch();
    const fs::path out = d / "and.json";
    REQUIRE(cli("construct --target and --n 10 --d 3 --output " + out.string()).code == 0);
    Json j = Json::parse(slurp(out));
    j["certified_eps"] = "1/1000000";
    std::ofstream(d / "bad.json") << j.dump();
    const Run v = cli("verify " + (d / "bad.json").string());
    CHECK(v.code == 3);
    CHECK(v.out.rfind("FAIL", 0) == 0);

    const fs::path s = d / "surj.json";
    REQUIRE(cli("construct --target surj --n 8 --r 2 --output " + s.string()).code == 0);
    Json js = Json::parse(slurp(s));
    js["certified_eps"] = "0";
    std::ofstream(d / "bad_surj.json") << js.dump();
    CHECK(cli("verify " + (d / "bad_surj.json").string()).code == 3);
}

TEST_CASE("invalid configurations exit 2") {
    CHECK(cli("construct --target and --n 32 --eps 0.5").code == 2);
    CHECK(cli("construct --target and --n 32 --eps 0").code == 2);
    CHECK(cli("construct --target nope --n 4").code == 2);
    CHECK(cli("construct --target and --n 0").code == 2);
    CHECK(cli("construct --target and --n 8 --precision 32").code == 2);
    CHECK(cli("construct --target exact --n 10 --k 4 --m 2").code == 2);
    CHECK(cli("oracle --target or --n 2").code == 2);
    CHECK(cli("bounds --family kdnf --n 64 --k 1 --delta 0.5").code == 2);
    CHECK(cli("bounds --family nope --n 64").code == 2);
    CHECK(cli("verify /nonexistent/file.json").code == 2);
    CHECK(cli("frobnicate").code == 2);
    CHECK(cli("").code == 2);
}

TEST_CASE("bounds row") {
    const Run r = cli("bounds --family kdnf --n 1024 --k 0 --delta 3");
    REQUIRE(r.code == 0);
    CHECK(r.out == "family,n,r,k,Delta,bound\r\nkdnf,1024,1,0,3,0\r\n");
    const Run s = cli("bounds --family surj --n 4 --r 8 --delta 2");
    REQUIRE(s.code == 0);
    CHECK(s.out.substr(s.out.rfind(',') + 1) == "0\r\n");
}

TEST_CASE("table output is CSV with a fixed header") {
    const Run r = cli("table --family kdnf");
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("family,n,r,k,Delta,bound,recurrence_value,oracle_value\r\n", 0) == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 1 + 9 * 4 * 3);
    const Run s = cli("table --family symmetric");
    REQUIRE(s.code == 0);
    std::istringstream in(s.out);
    std::string line;
    std::getline(in, line);
    int with_oracle = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string last = line.substr(line.rfind(',') + 1);
        if (last.empty()) continue;
        ++with_oracle;
        // bound column ≥ oracle column
        const size_t b1 = line.rfind(',', line.rfind(',', line.rfind(',') - 1) - 1);
        const double bound = std::stod(line.substr(b1 + 1));
        CHECK(bound >= std::stod(last));
    }
    CHECK(with_oracle > 0);
}

TEST_CASE("outputs are byte-identical across runs") {
    const fs::path d = scratch();
    for (const std::string args : {"construct --target exact --n 24 --k 2 --eps 1/8", "construct --target surj --n 12 --r 3",
                                   "oracle --target and --n 9 --degree 3", "table --family ed-range-dep"}) {
        const Run a = cli(args + " --seed 5 --output " + (d / "a").string());
        const Run b = cli(args + " --seed 5 --output " + (d / "b").string());
        CHECK(a.code == 0);
        CHECK(b.code == 0);
        CHECK(slurp(d / "a") == slurp(d / "b"));
        CHECK(!slurp(d / "a").empty());
    }
    fs::remove_all(d);
}

}
