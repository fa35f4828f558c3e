// Exit-code contract and byte-level determinism of the CLI, driven end to
// end through the real binary (path supplied as argv[1]).

#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string g_cli;
std::filesystem::path g_dir;

int run(const std::string& args) {
    const std::string cmd = g_cli + " " + args + " >/dev/null 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

} // namespace

TEST_CASE("exit 0: passing suites and queries") {
    CHECK(run("verify-identities --trials 5 --n-max 2") == 0);
    CHECK(run("verify-norms --trials 5 --n-max 2") == 0);
    CHECK(run("matrix dump --op shift --dim 3") == 0);
    CHECK(run("matrix dump --op nth_derivative --n 5 --dim 3") == 0);
}

TEST_CASE("exit 1: mathematical violations") {
    CHECK(run("verify-identities --trials 3 --n-max 2 --self-test-corrupt") == 1);

    const auto spec = g_dir / "spec_k0.json";
    write_file(spec, R"({"n":1,"chain":[[0.0]],"inner":{}})");
    const auto ones = g_dir / "one.json";
    write_file(ones, R"({"mode":"rational","coeffs":[["1/1","0/1"]]})");
    CHECK(run("ideal check " + spec.string() + " " + ones.string()) == 1);
}

TEST_CASE("exit 2: configuration and input errors") {
    CHECK(run("verify-identities --trials 0") == 2);
    CHECK(run("verify-norms --mode rational --trials 5") == 2);
    CHECK(run("matrix dump --op frobnicate --dim 3") == 2);
    CHECK(run("no-such-subcommand") == 2);
    CHECK(run("ideal validate /nonexistent.json") == 2);

    const auto broken = g_dir / "broken.json";
    write_file(broken, "{not json");
    CHECK(run("ideal validate " + broken.string()) == 2);

    const auto bad_nesting = g_dir / "bad_nesting.json";
    write_file(bad_nesting, R"({"n":2,"chain":[[0.0],[3.141592653589793]],"inner":{}})");
    CHECK(run("ideal validate " + bad_nesting.string()) == 2);

    const auto spec = g_dir / "spec_valid.json";
    write_file(spec, R"({"n":1,"chain":[[0.0]],"inner":{}})");
    const auto empty = g_dir / "empty_cof.json";
    write_file(empty, "[]");
    CHECK(run("subspace check-invariance " + spec.string() + " " + empty.string()) == 2);
}

TEST_CASE("ideal and subspace happy paths") {
    const auto spec = g_dir / "spec_rich.json";
    write_file(spec,
               R"({"n":2,"inner":{"blaschke":[{"re":0.5,"im":0.0,"mult":1}],"atoms":[]},)"
               R"("chain":[[0.0,3.141592653589793],[0.0]],"trunc_degree":0,"tol":1e-9})");
    CHECK(run("ideal validate " + spec.string()) == 0);
    CHECK(run("ideal generate " + spec.string() + " --random 2 --seed 7") == 0);

    const auto cof = g_dir / "cof.json";
    write_file(cof, R"([{"mode":"rational","coeffs":[["1/1","0/1"]]}])");
    CHECK(run("subspace build " + spec.string() + " " + cof.string()) == 0);
    CHECK(run("subspace check-invariance " + spec.string() + " " + cof.string()) == 0);
}

TEST_CASE("same seed and config produce byte-identical reports") {
    const auto out1 = g_dir / "rep1.json";
    const auto out2 = g_dir / "rep2.json";
    const std::string base = "verify-identities --trials 10 --n-max 3 --seed 12345 --out ";
    REQUIRE(run(base + out1.string()) == 0);
    REQUIRE(run(base + out2.string()) == 0);
    const auto a = slurp(out1);
    CHECK(!a.empty());
    CHECK(a == slurp(out2));

    const std::string norms = "verify-norms --trials 10 --seed 99 --out ";
    REQUIRE(run(norms + out1.string()) == 0);
    REQUIRE(run(norms + out2.string()) == 0);
    CHECK(slurp(out1) == slurp(out2));
}

TEST_CASE("thread count does not change the report") {
    const auto out1 = g_dir / "thr1.json";
    const auto out2 = g_dir / "thr2.json";
    const std::string tail = " verify-identities --trials 12 --n-max 3 --seed 7 --out ";
    REQUIRE(std::system(("VL_THREADS=1 " + g_cli + tail + out1.string() + " >/dev/null 2>&1").c_str()) == 0);
    REQUIRE(std::system(("VL_THREADS=4 " + g_cli + tail + out2.string() + " >/dev/null 2>&1").c_str()) == 0);
    const auto a = slurp(out1);
    CHECK(!a.empty());
    CHECK(a == slurp(out2));
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli <path-to-hardylat-binary>\n");
        return 2;
    }
    g_cli = argv[1];
    g_dir = std::filesystem::temp_directory_path() / "hardylat_cli_test";
    std::filesystem::create_directories(g_dir);

    doctest::Context ctx;
    ctx.applyCommandLine(argc - 1, argv + 1);
    return ctx.run();
}
