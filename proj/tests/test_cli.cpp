#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ffell/cli.hpp"

using namespace ffell;

namespace {

std::string bin_path() {
    const char* p = std::getenv("FFELL_BIN");
    REQUIRE(p != nullptr);
    return p;
}

struct RunResult {
    int status = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = bin_path() + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    int rc = pclose(pipe);
    r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return r;
}

std::string tmp_file(const std::string& name, const std::string& content) {
    std::string path = "/tmp/ffell_test_" + std::to_string(getpid()) + "_" + name;
    std::ofstream(path) << content;
    return path;
}

const std::string kCurveF2 = "p=2\nm=1\nmodel=hyperelliptic\nh=[1]\nf=[1,1,0,1]\ngenus=1\n";

}  // namespace

TEST_CASE("curve files roundtrip through the canonical writer") {
    CurveSpec s = parse_curve_file(kCurveF2);
    CHECK(s.field->q() == 2);
    CHECK(s.genus == 1);
    std::string text = write_curve_file(s);
    CurveSpec s2 = parse_curve_file(text);
    CHECK(write_curve_file(s2) == text);
    CHECK(curve_hash(s) == curve_hash(s2));

    // extension coefficients as base-p digit lists
    std::string quartic =
        "p=2\nm=2\nmodel=hyperelliptic\nh=[[0,1]]\nf=[[1,0],[0,1],[0,0],[1,0]]\ngenus=1\n";
    CurveSpec sq = parse_curve_file(quartic);
    CHECK(sq.field->q() == 4);
    CHECK(parse_curve_file(write_curve_file(sq)).h == sq.h);
}

TEST_CASE("malformed curve files report line and column") {
    auto expect_error = [](const std::string& text, int line) {
        try {
            parse_curve_file(text);
            FAIL("no error for: ", text);
        } catch (const CurveFileError& e) {
            CHECK(e.line == line);
            CHECK(e.col >= 1);
        }
    };
    expect_error("p=2\nbogus=[1]\n", 2);                    // unknown key
    expect_error("p=2\nm=1\nh=[1]\nf=[1,5,0,1]\ngenus=1\n", 4);  // digit out of range
    expect_error("p=2\np=3\n", 2);                          // duplicate key
    expect_error("p=2\nh=[1\n", 2);                         // unterminated list
}

TEST_CASE("ell invariants match between table and json output") {
    std::string path = tmp_file("f2.curve", kCurveF2);
    RunResult table = run_cli("ell --curve " + path);
    CHECK(table.status == 0);
    CHECK(table.out.find("ell = 5") != std::string::npos);
    CHECK(table.out.find("ell2 = 1") != std::string::npos);
    CHECK(table.out.find("r = 2") != std::string::npos);

    RunResult js = run_cli("ell --curve " + path + " --json");
    CHECK(js.status == 0);
    CHECK(js.out.find("\"ell\": \"5\"") != std::string::npos);
    CHECK(js.out.find("\"ell2\": \"1\"") != std::string::npos);
    CHECK(js.out.find("\"r\": \"2\"") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("cache reuse yields byte-identical reports") {
    std::string path = tmp_file("f2c.curve", kCurveF2);
    std::string cache = "/tmp/ffell_test_cache_" + std::to_string(getpid());
    std::string prefix = "FFELL_CACHE_DIR=" + cache + " " + bin_path();
    auto run_cached = [&](const std::string& args) {
        std::string cmd = prefix + " " + args + " 2>&1";
        FILE* pipe = popen(cmd.c_str(), "r");
        REQUIRE(pipe != nullptr);
        std::string out;
        char buf[4096];
        std::size_t n;
        while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
        pclose(pipe);
        return out;
    };
    std::string cold = run_cached("lpoly --curve " + path + " --json");
    std::string warm = run_cached("lpoly --curve " + path + " --json");
    CHECK(cold == warm);
    CHECK(cold.find("\"h\": \"1\"") != std::string::npos);
    std::remove(path.c_str());
    std::string rmcmd = "rm -rf " + cache;
    CHECK(std::system(rmcmd.c_str()) == 0);
}

TEST_CASE("even-delta models exit with the parity status") {
    // plane conic x^2 + y^2 + 1 over F_3: both points at infinity are swapped,
    // delta = 2
    std::string conic = "p=3\nm=1\nmodel=plane\nc=[[1,0,1],[],[1]]\ngenus=0\n";
    std::string path = tmp_file("conic.curve", conic);
    RunResult r = run_cli("ell --curve " + path);
    CHECK(r.status == 2);
    RunResult lp = run_cli("lpoly --curve " + path);
    CHECK(lp.status == 0);  // the L-polynomial itself is fine
    std::remove(path.c_str());
}

TEST_CASE("points and stabilizer subcommands succeed on the reference curve") {
    std::string path = tmp_file("f2p.curve", kCurveF2);
    RunResult pts = run_cli("points --curve " + path + " --deg-bound 3");
    CHECK(pts.status == 0);
    CHECK(pts.out.find("covered 5/5") != std::string::npos);

    RunResult st = run_cli("stabilizer --curve " + path + " --s '[];[]' --t '[1];[]'");
    CHECK(st.status == 0);
    CHECK(st.out.find("order") != std::string::npos);

    RunResult bad = run_cli("stabilizer --curve " + path + " --s '[];[]' --t '[0,1];[]'");
    CHECK(bad.status == 1);  // x does not divide the norm of eps
    std::remove(path.c_str());
}
