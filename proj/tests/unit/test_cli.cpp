#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pht/cli.hpp"

using namespace pht;
using namespace pht::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "pht");
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

fs::path scratch_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("pht-unit-" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("parse_range") {
    const auto r = parse_range("0:4:5");
    CHECK(r.start == 0.0);
    CHECK(r.stop == 4.0);
    CHECK(r.count == 5);
    CHECK(r.values() == std::vector<double>{0.0, 1.0, 2.0, 3.0, 4.0});
    CHECK(parse_range("0.5:0.5:1").values() == std::vector<double>{0.5});
    CHECK(parse_range(" -1 : 1 : 3 ").values() == std::vector<double>{-1.0, 0.0, 1.0});
    for (const char* bad : {"", "0:1", "0:1:2:3", "a:1:2", "0:1:0", "1:0:3", "0:1:-2", "0:inf:3", "0:1:2.5"}) {
        CHECK_THROWS_AS(parse_range(bad), UsageError);
    }
}

TEST_CASE("parse_sweep and parse_initial") {
    const auto s = parse_sweep("gamma=0:2:21");
    CHECK(s.name == "gamma");
    CHECK(s.range.count == 21);
    CHECK_THROWS_AS(parse_sweep("tmax=0:1:2"), UsageError);
    CHECK_THROWS_AS(parse_sweep("gamma:0:1:2"), UsageError);
    CHECK(parse_initial("ground").kind == InitialState::Kind::Ground);
    CHECK(parse_initial("up").kind == InitialState::Kind::Up);
    const auto idx = parse_initial("index:3");
    CHECK(idx.kind == InitialState::Kind::Index);
    CHECK(idx.index == 3);
    CHECK_THROWS_AS(parse_initial("index:x"), UsageError);
    CHECK_THROWS_AS(parse_initial("down"), UsageError);
}

TEST_CASE("RunConfig::with") {
    RunConfig cfg;
    CHECK(cfg.with("gamma", 0.3).gamma == 0.3);
    CHECK(cfg.with("g", -0.1).g == -0.1);
    CHECK(cfg.with("delta", 2.0).delta == 2.0);
    CHECK(cfg.with("epsilon", 0.2).epsilon == 0.2);
    CHECK_THROWS_AS(cfg.with("tmax", 1.0), UsageError);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(invoke({}).code == kUsageError);
    CHECK(invoke({"bogus"}).code == kUsageError);
    CHECK(invoke({"spectrum", "--gamma", "abc"}).code == kUsageError);
    CHECK(invoke({"spectrum", "--sweep", "gamma=1:0:3"}).code == kUsageError);
    CHECK(invoke({"spectrum", "--gamma", "-1"}).code == kUsageError);
    CHECK(invoke({"spectrum", "--model", "array", "--m", "13"}).code == kUsageError);
    CHECK(invoke({"response", "--initial", "index:9"}).code == kUsageError);
    CHECK(invoke({"phase-diagram"}).code == kUsageError);
    CHECK(invoke({"spectrum", "--config", "/nonexistent/pht.cfg"}).code == kUsageError);
    CHECK(invoke({"--help"}).code == kSuccess);
}

TEST_CASE("spectrum JSON record") {
    const auto r = invoke({"spectrum", "--gamma", "0.5"});
    REQUIRE(r.code == kSuccess);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.contains("schema"));
    REQUIRE(j["eigenvalues"].size() == 2);
    CHECK(j["eigenvalues"][0][0].get<double>() == doctest::Approx(-0.8660254037844386));
    CHECK(j.contains("eta"));
}

TEST_CASE("spectrum sweep CSV") {
    const auto r = invoke({"spectrum", "--sweep", "gamma=0:2:5"});
    REQUIRE(r.code == kSuccess);
    CHECK(first_line(r.out).starts_with("# pht-spectrum v1"));
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    std::getline(lines, line);
    CHECK(line == "sweep_value,re_E1,re_E2,im_E1,im_E2");
    std::vector<std::string> rows;
    while (std::getline(lines, line)) rows.push_back(line);
    REQUIRE(rows.size() == 5);
    // gamma = 1 is the exceptional point and is reported as a NaN row.
    CHECK(rows[2] == "1,nan,nan,nan,nan");
    CHECK(r.err.find("gamma = 1") != std::string::npos);
}

TEST_CASE("spectrum exits 3 when every point fails") {
    CHECK(invoke({"spectrum", "--sweep", "gamma=1:1:1"}).code == kNumericalFailure);
    CHECK(invoke({"chi-omega", "--gamma", "2", "--initial", "index:1"}).code == kNumericalFailure);
}

TEST_CASE("output is deterministic") {
    const std::vector<std::string> args{"phase-diagram", "--model", "array", "--sweep", "gamma=0:0.5:6",
                                        "--sweep", "g=-0.5:0.5:5", "--threads", "3"};
    const auto a = invoke(args);
    auto wider = args;
    wider.back() = "1";
    const auto b = invoke(wider);
    REQUIRE(a.code == kSuccess);
    CHECK(a.out == b.out);
    CHECK(invoke({"response", "--gamma", "0.4", "--tsteps", "101"}).out ==
          invoke({"response", "--gamma", "0.4", "--tsteps", "101"}).out);
}

TEST_CASE("config file with flag override") {
    const auto dir = scratch_dir("config");
    const auto cfg_path = dir / "run.cfg";
    {
        std::ofstream f(cfg_path);
        f << "# single qubit response\n"
             "gamma = 0.3\n"
             "tsteps = 11\n"
             "tmax = 1\n";
    }
    const auto from_file = invoke({"response", "--config", cfg_path.string()});
    REQUIRE(from_file.code == kSuccess);
    CHECK(first_line(from_file.out).find("gamma=0.3") != std::string::npos);
    const auto overridden = invoke({"response", "--config", cfg_path.string(), "--gamma", "0.6"});
    REQUIRE(overridden.code == kSuccess);
    CHECK(first_line(overridden.out).find("gamma=0.6") != std::string::npos);
    std::istringstream lines(overridden.out);
    std::string line;
    int rows = -2;
    while (std::getline(lines, line)) ++rows;
    CHECK(rows == 11);

    {
        std::ofstream f(cfg_path);
        f << "gama = 0.3\n";
    }
    CHECK(invoke({"response", "--config", cfg_path.string()}).code == kUsageError);
    fs::remove_all(dir);
}

TEST_CASE("phase-diagram files") {
    const auto dir = scratch_dir("pd");
    const auto out = dir / "pd.csv";
    const auto svg = dir / "pd.svg";
    const auto r = invoke({"phase-diagram", "--sweep", "gamma=0.1:2:20", "--out", out.string(), "--svg", svg.string()});
    REQUIRE(r.code == kSuccess);
    const auto points = slurp(out);
    CHECK(first_line(points).starts_with("# pht-phase-points v1"));
    const auto boundary = slurp(dir / "pd_boundary.csv");
    CHECK(boundary.find("polyline_id,gamma,g,bracket_width") != std::string::npos);
    CHECK(slurp(svg).starts_with("<svg") == true);

    const auto explicit_path = dir / "edges.csv";
    REQUIRE(invoke({"phase-diagram", "--sweep", "gamma=0.1:2:20", "--out", out.string(), "--boundary-out",
                    explicit_path.string()})
                .code == kSuccess);
    CHECK(fs::exists(explicit_path));
    fs::remove_all(dir);
}

TEST_CASE("chi-omega CSV") {
    const auto r = invoke({"chi-omega", "--gamma", "0.5", "--omega", "0:3:7"});
    REQUIRE(r.code == kSuccess);
    CHECK(first_line(r.out).starts_with("# pht-chi-omega v1"));
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    std::getline(lines, line);
    CHECK(line == "omega,re_chi,im_chi,abs_chi");
}
