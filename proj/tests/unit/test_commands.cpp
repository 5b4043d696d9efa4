#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "forestsos/commands.hpp"
#include "forestsos/polynomial.hpp"

using namespace forestsos;

namespace {

std::string data(const std::string& name) { return std::string(FORESTSOS_DATA_DIR) + "/" + name; }

CommandResult run(std::initializer_list<std::string> args) { return run_command(std::vector<std::string>(args)); }

std::string field(const std::string& text, const std::string& key) {
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        if (line.rfind(key + " ", 0) == 0) return line.substr(key.size() + 1);
    return {};
}

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "forestsos_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("poly") {
    auto r = run({"poly", "--graph", data("k3.graph")});
    CHECK(r.code == kExitOk);
    CHECK(Polynomial::parse(field(r.out, "forest")).term_count() == 7);

    auto e = run({"poly", "--graph", data("empty.graph"), "--trees"});
    CHECK(e.code == kExitOk);
    CHECK(field(e.out, "forest") == "1");

    auto d = run({"poly", "--graph", data("disconnected.graph"), "--trees"});
    CHECK(d.code == kExitUsage);
    CHECK(d.err.find("disconnected") != std::string::npos);

    auto p = run({"poly", "--graph", data("duplicate.graph")});
    CHECK(p.code == kExitParse);
    CHECK(p.err.find("line 3") != std::string::npos);
    CHECK(run({"poly", "--graph", data("missing.graph")}).code == kExitParse);
}

TEST_CASE("delta and phi") {
    auto r = run({"delta", "--graph", data("k3.graph"), "--edges", "e,f"});
    CHECK(r.code == kExitOk);
    CHECK(Polynomial::parse(field(r.out, "delta")) == Polynomial::parse("y_g + y_g^2"));
    CHECK(field(r.out, "nonnegative") == "true");
    CHECK(field(r.out, "minimum") != "0");

    auto b = run({"delta", "--graph", data("path.graph"), "--edges", "e,f"});
    CHECK(field(b.out, "delta") == "0");

    CHECK(run({"delta", "--graph", data("k3.graph"), "--edges", "e,e"}).code == kExitUsage);
    CHECK(run({"delta", "--graph", data("k3.graph"), "--edges", "e,q"}).code == kExitUsage);
    CHECK(run({"delta", "--graph", data("k3.graph"), "--edges", "e"}).code == kExitUsage);
    CHECK(run({"delta", "--graph", data("k3.graph")}).code == kExitUsage);

    auto p = run({"phi", "--graph", data("k3.graph"), "--edges", "e"});
    CHECK(p.code == kExitOk);
    CHECK(Polynomial::parse(field(p.out, "phi")) == Polynomial::parse("y_f*y_g^2 + y_g*y_f^2 + y_f*y_g"));
    CHECK(field(p.out, "negative_coefficients") == "0");
}

TEST_CASE("format flag only takes text") {
    CHECK(run({"poly", "--graph", data("k3.graph"), "--format", "text"}).code == kExitOk);
    CHECK(run({"poly", "--graph", data("k3.graph"), "--format", "json"}).code == kExitUsage);
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"frobnicate"}).code == kExitUsage);
    CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("cert construct, verify and tamper") {
    const auto path = scratch("c4.cert").string();
    auto c = run({"cert", "construct", "--graph", data("c4.graph"), "--edges", "a,c", "--out", path});
    CHECK(c.code == kExitOk);
    CHECK(field(c.out, "verdict") == "verified");

    auto v = run({"cert", "verify", "--graph", data("c4.graph"), "--cert", path});
    CHECK(v.code == kExitOk);
    CHECK(field(v.out, "verdict") == "verified");

    // Drop the last entry.
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    auto last = text.rfind("entry ");
    text.erase(last);
    const auto bad = scratch("c4_tampered.cert").string();
    std::ofstream(bad) << text;
    auto t = run({"cert", "verify", "--graph", data("c4.graph"), "--cert", bad});
    CHECK(t.code == kExitVerify);
    CHECK(field(t.out, "verdict") == "rejected");
    CHECK_FALSE(field(t.out, "difference").empty());
    CHECK(field(t.out, "difference") != "0");

    auto wrong = run({"cert", "verify", "--graph", data("k3.graph"), "--cert", path});
    CHECK(wrong.code == kExitVerify);

    auto k4 = run({"cert", "construct", "--graph", data("k4.graph"), "--edges", "a,b"});
    CHECK(k4.code == kExitVerify);
    CHECK(k4.err.find("NotSeriesParallel") != std::string::npos);

    auto phi = run({"cert", "construct", "--graph", data("c4.graph"), "--edges", "a"});
    CHECK(phi.code == kExitOk);
    CHECK(phi.out.rfind("kind phi", 0) == 0);
}

TEST_CASE("cert search budget") {
    auto s = run({"cert", "search", "--graph", data("k4.graph"), "--edges", "a"});
    CHECK(s.code == kExitOk);
    CHECK(field(s.out, "status") == "Found");
    auto b = run({"cert", "search", "--graph", data("k4.graph"), "--edges", "a", "--budget", "1"});
    CHECK(b.code == kExitBudget);
    CHECK(field(b.out, "status") == "Budget");
}

TEST_CASE("survey") {
    auto a = run({"survey", "--seed", "3", "--count", "5"});
    auto b = run({"survey", "--seed", "3", "--count", "5"});
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
    CHECK(field(a.out, "verified") == "5/5");
    CHECK(run({"survey", "--count", "0"}).code == kExitUsage);
}

TEST_CASE("sp and identities") {
    auto s = run({"sp", "--graph", data("c4.graph")});
    CHECK(s.code == kExitOk);
    CHECK(s.out.find("base K3") != std::string::npos);
    auto k = run({"sp", "--graph", data("k4.graph")});
    CHECK(k.code == kExitVerify);
    auto i = run({"identities", "--graph", data("k4.graph")});
    CHECK(i.code == kExitOk);
}

TEST_CASE("binary exit codes") {
    const char* cli = std::getenv("FORESTSOS_CLI");
    if (!cli) SKIP("FORESTSOS_CLI not set");
    auto status = [&](const std::string& args) {
        int rc = std::system((std::string(cli) + " " + args + " >/dev/null 2>&1").c_str());
        return WEXITSTATUS(rc);
    };
    CHECK(status("delta --graph " + data("k3.graph") + " --edges e,f") == 0);
    CHECK(status("delta --graph " + data("k3.graph") + " --edges e,e") == 1);
    CHECK(status("poly --graph " + data("duplicate.graph")) == 2);
    CHECK(status("cert construct --graph " + data("k4.graph") + " --edges a,b") == 3);
    CHECK(status("cert search --graph " + data("k4.graph") + " --edges a --budget 1") == 4);
}
