#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

// Drives the installed binary end to end through a shell.
namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(LATRES_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    const int st = pclose(p);
    r.exit_code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string write_file(const std::string& name, const std::string& text) {
    std::ofstream f(name);
    f << text;
    return name;
}

const std::string kSegment = write_file("cli_segment.json", "{\"n\": 2, \"basis\": [[1, -1]]}\n");
const std::string kBad = write_file("cli_bad.json", "{\"n\": 2, \"basis\": [[1, 0]]}\n");
const std::string kTriangle =
    write_file("cli_triangle.cplx", "{\"n\": 3, \"facets\": [[1, 2], [2, 3], [1, 3]]}\n");
const std::string kBroken = write_file("cli_broken.json", "{nope\n");

}  // namespace

TEST_CASE("resolve prints the descended matrix and exits 0") {
    auto r = run_cli("resolve --field q " + kSegment);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"x1 - x2\"") != std::string::npos);
}

TEST_CASE("non-co-artinian input exits 2 and still reports the witness") {
    auto r = run_cli("lattice " + kBad);
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("\"witness\"") != std::string::npos);
}

TEST_CASE("verify exits 0 on a certified pass") {
    auto r = run_cli("verify --bound 4 --seed 3 --jobs 2 " + kSegment);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("primes on a complex file") {
    auto r = run_cli("primes --format text " + kTriangle);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("bad primes: {3}") != std::string::npos);
}

TEST_CASE("koszul honors --degree") {
    auto r = run_cli("koszul --degree 1,1 " + kSegment);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"facets\"") != std::string::npos);
    CHECK(run_cli("koszul " + kSegment).exit_code == 2);
}

TEST_CASE("bad inputs and usage errors exit 2, parse errors nonzero") {
    CHECK(run_cli("resolve " + kBroken).exit_code == 2);
    CHECK(run_cli("resolve no_such_file.json").exit_code == 2);
    CHECK(run_cli("resolve --field zz " + kSegment).exit_code == 2);
    CHECK(run_cli("resolve --jobs 0 " + kSegment).exit_code == 2);
    CHECK(run_cli("resolve --degree wat " + kSegment).exit_code == 2);
    CHECK(run_cli("frobnicate " + kSegment).exit_code != 0);
    CHECK(run_cli("").exit_code != 0);
}

TEST_CASE("uncertified output exits 1") {
    auto r = run_cli("betti --radius-cap 1 " + kSegment);
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("\"certified\": false") != std::string::npos);
}

TEST_CASE("byte-identical output across runs") {
    auto a = run_cli("resolve " + kSegment);
    auto b = run_cli("resolve " + kSegment);
    CHECK(a.out == b.out);
    auto t = run_cli("descend --format text " + kSegment);
    CHECK(t.exit_code == 0);
    CHECK(t.out.find("generators:") != std::string::npos);
}
