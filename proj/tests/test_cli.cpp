#include "tensorrank/generators.hpp"
#include "tensorrank/io.hpp"

#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using namespace tensorrank;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(TENSORRANK_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path workdir() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / "tensorrank_cli_tests";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string path(const std::string& name) { return (workdir() / name).string(); }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("gen and rank queries") {
    REQUIRE(run("gen --kind prop36 --out " + path("p.tns")).code == 0);
    CHECK(io::read_tensor(path("p.tns")).bitwise_equal(gen::prop36()));
    CHECK(run("rank " + path("p.tns")).out == "max_tucker=4\n");
    CHECK(run("rank " + path("p.tns") + " --fn submax").out == "submax_tucker=3\n");
    CHECK(run("nrank " + path("p.tns")).out == "nrank=2,3,4\n");

    REQUIRE(run("gen --kind identity --m 3 --n 3 --binary --out " + path("i.tns")).code == 0);
    CHECK(slurp(path("i.tns")).rfind("TNS1", 0) == 0);
    CHECK(run("nrank " + path("i.tns")).out == "nrank=3,3,3\n");
    CHECK(run("closure " + path("i.tns") + " --fn submax").out == "closure_submax_tucker=3\n");
}

TEST_CASE("gen is deterministic under a seed") {
    const auto a = run("gen --kind random --shape 3 4 2 --seed 9");
    const auto b = run("gen --kind random --shape 3 4 2 --seed 9");
    const auto c = run("gen --kind random --shape 3 4 2 --seed 10");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out != c.out);
    CHECK(io::from_text(a.out).shape() == Shape{3, 4, 2});
}

TEST_CASE("fullrank certificate") {
    REQUIRE(run("gen --kind prop36 --out " + path("p2.tns")).code == 0);
    const auto r = run("fullrank " + path("p2.tns"));
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["mode"] == 3);
    CHECK(doc["rank"] == 4);
    const auto b = run("fullrank " + path("p2.tns") + " --brute --fn submax --subtensor-out " + path("sub.tns"));
    REQUIRE(b.code == 0);
    CHECK(nlohmann::json::parse(b.out)["rank"] == 3);
    CHECK(fs::exists(path("sub.tns")));
}

TEST_CASE("axioms writes a report with a witness file") {
    const auto r = run("axioms --fn max --out " + path("ax.json"));
    CHECK(r.code == 0);
    const auto doc = nlohmann::json::parse(slurp(path("ax.json")));
    bool seen = false;
    for (const auto& row : doc["rows"]) {
        if (row["property"] != "strongly_proper") continue;
        seen = true;
        CHECK(row["status"] == "FAIL");
        CHECK(row["witness_id"] == "thm34");
        CHECK(io::read_tensor(row["witness_file"].get<std::string>()).bitwise_equal(gen::thm34()));
    }
    CHECK(seen);
}

TEST_CASE("tucker writes a model directory") {
    REQUIRE(run("gen --kind planted-tucker --shape 8 6 5 --core 2 2 2 --snr inf --seed 3 --out " +
                path("pt.tns")).code == 0);
    const auto r = run("tucker " + path("pt.tns") + " --ranks 8 6 5 --outdir " + path("model"));
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("relative_error=", 0) == 0);
    const auto meta = nlohmann::json::parse(slurp(workdir() / "model" / "meta.json"));
    CHECK(meta["relative_error"].get<double>() < 1e-12);
    CHECK(fs::exists(workdir() / "model" / "factor_3.tns"));
}

TEST_CASE("sweep emits sorted, reproducible CSV") {
    std::ofstream(workdir() / "cfg.json") << R"({"shape":[20,5,5],"planted_core":[4,2,2],"r_values":[1,2,3],
        "mode1_caps":["r",4,8],"seed":3})";
    const auto a = run("sweep --reproducible --config " + path("cfg.json"));
    const auto b = run("sweep --reproducible --threads 2 --config " + path("cfg.json"));
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    std::istringstream in(a.out);
    std::string line;
    std::size_t rows = 0;
    std::getline(in, line);
    CHECK(line == "r,mode1_cap,method,relative_error,elapsed_ms");
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 9);
}

TEST_CASE("exit codes") {
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("rank").code == 2);
    CHECK(run("rank " + path("missing.tns")).code == 3);
    std::ofstream(workdir() / "bad.tns") << "2\n2 2\n1 2 3\n";
    CHECK(run("rank " + path("bad.tns")).code == 3);
    REQUIRE(run("gen --kind zero --shape 9 9 9 --out " + path("big.tns")).code == 0);
    CHECK(run("closure " + path("big.tns")).code == 4);
    CHECK(run("rank " + path("big.tns") + " --tol bogus").code == 2);
    CHECK(run("--help").code == 0);
}

}  // TEST_SUITE
