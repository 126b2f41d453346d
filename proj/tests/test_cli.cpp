#include <sobolev/cli.hpp>
#include <sobolev/io.hpp>

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace sobolev;

namespace
{

struct Outcome
{
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name)
{
    return std::filesystem::temp_directory_path() / ("sobolev_cli_test_" + name);
}

const std::vector<std::string> kSmallScan = {"--N", "3", "--s", "2", "--K", "24", "--threads", "2",
                                             "deficit-scan", "--normal", "3", "--random", "5",
                                             "--bubbles", "2", "--eps", "0.1,0.01"};

} // namespace

TEST_CASE("constants in every format")
{
    const auto table = run({"--N", "3", "--s", "2", "constants"});
    CHECK(table.code == cli::kSuccess);
    CHECK(table.out.find("5.47790408953") != std::string::npos);

    const auto json = run({"--N", "3", "--s", "2", "constants", "--format", "json", "--kmax", "3"});
    REQUIRE(json.code == cli::kSuccess);
    const auto j = io::Json::parse(json.out);
    CHECK(j["q"].get<double>() == 6.0);
    CHECK(j["eigenvalues"].size() == 4);
    CHECK(j["eigenvalues"][1]["lambda"].get<double>() == doctest::Approx(3.75));
    CHECK(j["eigenvalues"][2]["multiplicity"].get<int>() == 9);
    CHECK(j.contains("rho"));

    const auto csv = run({"--N", "2", "--s", "1", "constants", "--format", "csv"});
    CHECK(csv.code == cli::kSuccess);
    CHECK(csv.out.rfind("quantity,value\n", 0) == 0);
    CHECK(csv.out.find("local_constant,0.4\n") != std::string::npos);
}

TEST_CASE("usage errors exit with 2")
{
    CHECK(run({"--N", "3", "--s", "3", "constants"}).code == cli::kUsage);
    CHECK(run({"--N", "3", "constants"}).code == cli::kUsage);
    CHECK(run({"--N", "3", "--s", "2"}).code == cli::kUsage);
    CHECK(run({"--N", "3", "--s", "2", "frobnicate"}).code == cli::kUsage);
    CHECK(run({"--N", "3", "--s", "2", "constants", "--format", "xml"}).code == cli::kUsage);
    CHECK(run({"--N", "3", "--s", "2", "deficit-scan", "--normal", "0", "--random", "0", "--bubbles", "0"}).code ==
          cli::kUsage);
    CHECK(run({"--N", "3", "--s", "2", "export-function"}).code == cli::kUsage);
    CHECK(run({"--N", "3", "--s", "2", "export-function", "--profile", "square:1"}).code == cli::kUsage);
    CHECK(run({"--help"}).code == cli::kSuccess);
}

TEST_CASE("seed is reported as unused by deterministic commands")
{
    const auto r = run({"--N", "3", "--s", "2", "--seed", "9", "eigenvalues"});
    CHECK(r.code == cli::kSuccess);
    CHECK(r.err.find("--seed ignored") != std::string::npos);
}

TEST_CASE("under-resolved theorem check is a numerical refusal")
{
    const auto r = run({"--N", "3", "--s", "2", "--K", "32", "verify-theorem2", "--profile", "bump:0.62,0.5"});
    CHECK(r.code == cli::kRefusal);
    CHECK(r.err.find("increase K") != std::string::npos);
}

TEST_CASE("verify-theorem2 reports every case")
{
    const auto r = run({"--N", "2", "--s", "1", "--K", "256", "verify-theorem2", "--profile", "bump:0.6,2",
                        "--profile", "cutoff-extremizer:1,0.6"});
    REQUIRE(r.code == cli::kSuccess);
    const auto j = io::Json::parse(r.out);
    REQUIRE(j["cases"].size() == 2);
    for (const auto& c : j["cases"])
        CHECK(c["margin"].get<double>() > 0.0);
}

TEST_CASE("deficit scans are byte-identical across reruns and thread counts")
{
    const auto a = run(kSmallScan);
    auto args    = kSmallScan;
    args[7]      = "1";
    const auto b = run(args);
    REQUIRE(a.code == cli::kSuccess);
    CHECK(a.out == b.out);
    std::istringstream lines(a.out);
    std::string line, last;
    int count = 0;
    while (std::getline(lines, line))
    {
        last = line;
        ++count;
    }
    CHECK(count == 3 * 2 + 5 + 2 + 1);
    const auto summary = io::Json::parse(last);
    CHECK(summary["summary"].get<bool>());
    CHECK(summary["violations"].get<int>() == 0);

    args         = kSmallScan;
    args.insert(args.begin(), {"--seed", "2"});
    CHECK(run(args).out != a.out);
}

TEST_CASE("exported functions round-trip into a scan")
{
    const auto path = temp_path("export.json");
    const auto e    = run({"--N", "3", "--s", "2", "--K", "24", "-o", path.string(), "export-function",
                           "--profile", "gaussian:0.7"});
    REQUIRE(e.code == cli::kSuccess);
    CHECK(e.out.empty());
    std::ifstream in(path);
    const auto j = io::Json::parse(in);
    CHECK(j["K"].get<int>() == 24);
    CHECK(j["coeffs"].size() == 25);

    const auto scan = run({"--N", "3", "--s", "2", "--K", "24", "deficit-scan", "--normal", "0", "--random", "0",
                           "--bubbles", "0", "--input", path.string()});
    REQUIRE(scan.code == cli::kSuccess);
    CHECK(scan.out.find("\"family\":\"custom\"") != std::string::npos);

    const auto wrong = run({"--N", "2", "--s", "1", "--K", "24", "deficit-scan", "--input", path.string()});
    CHECK(wrong.code == cli::kUsage);
    std::filesystem::remove(path);

    const auto manifold = run({"--N", "3", "--s", "2", "--K", "8", "export-function", "--manifold", "1,0"});
    REQUIRE(manifold.code == cli::kSuccess);
    const auto m = io::Json::parse(manifold.out);
    CHECK(m["coeffs"][0].get<double>() == doctest::Approx(std::sqrt(2.0) * std::numbers::pi));
}

TEST_CASE("configuration file supplies defaults that flags override")
{
    const auto path = temp_path("config.ini");
    {
        std::ofstream cfg(path);
        cfg << "N=2\ns=1\n";
    }
    const auto r = run({"--config", path.string(), "constants", "--format", "json"});
    REQUIRE(r.code == cli::kSuccess);
    CHECK(io::Json::parse(r.out)["N"].get<int>() == 2);
    const auto o = run({"--config", path.string(), "--N", "4", "constants", "--format", "json"});
    CHECK(io::Json::parse(o.out)["N"].get<int>() == 4);
    std::filesystem::remove(path);
}

TEST_CASE("alpha estimate carries its manifest")
{
    const auto r = run({"--N", "3", "--s", "2", "--K", "24", "alpha-estimate", "--normal", "3", "--random", "10",
                        "--bubbles", "3"});
    REQUIRE(r.code == cli::kSuccess);
    const auto j = io::Json::parse(r.out);
    CHECK(j["alpha_hat"].get<double>() > 0.0);
    CHECK(j["manifest"]["seed"].get<int>() == 1);
    CHECK(j["family_minimum"].contains("two-bubble"));
}

TEST_CASE("serialized numbers carry 12 significant digits")
{
    const io::Json j{{"x", 0.46026326695500003}, {"label", "eps=0.123456789012345"}, {"n", -3}, {"y", 2.0},
                     {"z", -1.2345678901234e-20}};
    CHECK(io::dump(j) == R"({"x":0.460263266955,"label":"eps=0.123456789012345","n":-3,"y":2.0,"z":-1.23456789012e-20})");
    CHECK(io::round12(1.0 / 3.0) == 0.333333333333);
}
