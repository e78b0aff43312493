#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rdvswarm/cli.hpp"
#include "rdvswarm/nar_net.hpp"
#include "rdvswarm/series_io.hpp"

using namespace rdvswarm;

namespace {

namespace fs = std::filesystem;

/// Redirects std::cout and std::cerr for the lifetime of one command.
class CaptureStreams {
public:
    CaptureStreams()
        : old_out_(std::cout.rdbuf(out_.rdbuf())),
          old_err_(std::cerr.rdbuf(err_.rdbuf())) {}
    ~CaptureStreams() {
        std::cout.rdbuf(old_out_);
        std::cerr.rdbuf(old_err_);
    }

    std::string out() const { return out_.str(); }
    std::string err() const { return err_.str(); }

private:
    std::ostringstream out_;
    std::ostringstream err_;
    std::streambuf* old_out_;
    std::streambuf* old_err_;
};

struct TempDir {
    fs::path path;

    explicit TempDir(const std::string& name) {
        path = fs::temp_directory_path() / name;
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

/// Runs one command with captured output.
struct CommandResult {
    int code = 0;
    std::string out;
    std::string err;
};

CommandResult run_cli(const std::vector<std::string>& args) {
    CaptureStreams capture;
    CommandResult result;
    result.code = cli::dispatch(args);
    result.out = capture.out();
    result.err = capture.err();
    return result;
}

/// Writes a trending seasonal series of n months starting 2009-03.
fs::path write_series(const fs::path& dir, const std::string& name, int n) {
    std::ofstream out(dir / name);
    out << "month,value\n";
    YearMonth ym{2009, 3};
    for (int t = 0; t < n; ++t) {
        const double v =
            100.0 + 1.5 * t + 10.0 * std::sin(2.0 * 3.141592653589793 * t / 12.0);
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.6f", v);
        out << format_month(ym) << ',' << buf << '\n';
        ym = next_month(ym);
    }
    return dir / name;
}

fs::path write_constant_series(const fs::path& dir, const std::string& name, int n) {
    std::ofstream out(dir / name);
    out << "month,value\n";
    YearMonth ym{2020, 1};
    for (int t = 0; t < n; ++t) {
        out << format_month(ym) << ",5.0\n";
        ym = next_month(ym);
    }
    return dir / name;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int count_lines(const std::string& text) {
    int n = 0;
    for (char c : text) {
        if (c == '\n') {
            ++n;
        }
    }
    return n;
}

}  // namespace

TEST_CASE("grids expand inclusively and snap cleanly") {
    CHECK(cli::parse_grid("0.5") == std::vector<double>{0.5});

    const std::vector<double> alpha = cli::parse_grid("0.1:1.0:0.1");
    CHECK(alpha ==
          std::vector<double>{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0});

    const std::vector<double> dump = cli::parse_grid("0.5:0.95:0.05");
    CHECK(dump ==
          std::vector<double>{0.5, 0.55, 0.6, 0.65, 0.7, 0.75, 0.8, 0.85, 0.9, 0.95});

    // The stop value is included only when the step lands on it.
    CHECK(cli::parse_grid("0.1:0.25:0.1") == std::vector<double>{0.1, 0.2});

    CHECK_THROWS_AS(cli::parse_grid("0.5:0.1:0.1"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_grid("0.1:0.5:0"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_grid("0.1:0.5"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_grid("abc"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_grid(""), std::invalid_argument);
}

TEST_CASE("train writes the model, trace, and report it reports on stdout") {
    TempDir dir("rdvswarm_cli_train");
    const fs::path data = write_series(dir.path, "series.csv", 40);
    const std::string prefix = (dir.path / "fit").string();

    const CommandResult r = run_cli({"train", "--data", data.string(), "--lags", "4",
                                     "--hidden", "3", "--swarm", "8", "--iters", "15",
                                     "--seed", "11", "--out", prefix});
    REQUIRE(r.code == 0);

    const fs::path model_path = prefix + ".model.json";
    const fs::path trace_path = prefix + ".trace.csv";
    const fs::path report_path = prefix + ".report.json";
    REQUIRE(fs::exists(model_path));
    REQUIRE(fs::exists(trace_path));
    REQUIRE(fs::exists(report_path));

    const SavedModel model = load_model(model_path);
    CHECK(model.net.lags == 4);
    CHECK(model.net.hidden_sizes == std::vector<int>{3});

    const std::string trace = read_file(trace_path);
    CHECK(trace.rfind("iteration,best_fitness,mean_abs_velocity,inertia_weight\n", 0) == 0);
    CHECK(count_lines(trace) == 16);  // header plus one row per iteration

    const nlohmann::json doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("command") == "train");
    CHECK(doc.at("n") == 40);
    CHECK(doc.at("iw").at("iw") == "rdv");
    CHECK(doc.at("metrics").at("test").at("raw").contains("nrmse"));
    CHECK(doc.at("metrics").at("test").at("raw").at("n") == 6);
    CHECK(doc.at("convergence").at("final_pe_scaled").is_number());
    CHECK_FALSE(doc.at("metrics").at("val").at("raw").contains("nmse"));

    // The report artifact holds the same document that went to stdout.
    CHECK(nlohmann::json::parse(read_file(report_path)) == doc);

    // Same seed, same bytes.
    const std::string prefix2 = (dir.path / "fit2").string();
    const CommandResult r2 = run_cli({"train", "--data", data.string(), "--lags", "4",
                                      "--hidden", "3", "--swarm", "8", "--iters", "15",
                                      "--seed", "11", "--out", prefix2});
    REQUIRE(r2.code == 0);
    CHECK(read_file(prefix2 + ".model.json") == read_file(model_path));
    CHECK(read_file(prefix2 + ".trace.csv") == trace);
}

TEST_CASE("train can report the unrooted accuracy variant") {
    TempDir dir("rdvswarm_cli_nmse");
    const fs::path data = write_series(dir.path, "series.csv", 30);
    const CommandResult r =
        run_cli({"train", "--data", data.string(), "--lags", "3", "--hidden", "2",
                 "--swarm", "6", "--iters", "10", "--nmse"});
    REQUIRE(r.code == 0);
    const nlohmann::json doc = nlohmann::json::parse(r.out);
    const auto& raw = doc.at("metrics").at("test").at("raw");
    REQUIRE(raw.contains("nmse"));
    const double nrmse = raw.at("nrmse").get<double>();
    CHECK(raw.at("nmse").get<double>() ==
          doctest::Approx(nrmse * nrmse).epsilon(1e-7));
}

TEST_CASE("forecast continues the calendar past the history") {
    TempDir dir("rdvswarm_cli_forecast");
    const fs::path data = write_series(dir.path, "series.csv", 40);
    const std::string prefix = (dir.path / "fit").string();
    REQUIRE(run_cli({"train", "--data", data.string(), "--lags", "4", "--hidden", "3",
                     "--swarm", "6", "--iters", "10", "--out", prefix})
                .code == 0);

    const CommandResult r = run_cli({"forecast", "--model", prefix + ".model.json",
                                     "--data", data.string(), "--horizon", "3"});
    REQUIRE(r.code == 0);
    // 40 months from 2009-03 end at 2012-06; the forecast picks up there.
    CHECK(r.out.rfind("month,value\n", 0) == 0);
    CHECK(r.out.find("2012-07,") != std::string::npos);
    CHECK(r.out.find("2012-08,") != std::string::npos);
    CHECK(r.out.find("2012-09,") != std::string::npos);
    CHECK(count_lines(r.out) == 4);

    // Too little history for the lag window is a data error.
    const fs::path tiny = write_series(dir.path, "tiny.csv", 2);
    CHECK(run_cli({"forecast", "--model", prefix + ".model.json", "--data",
                   tiny.string()})
              .code == 3);
}

TEST_CASE("sweep renders its grid as CSV") {
    const CommandResult r =
        run_cli({"sweep", "--function", "sphere", "--dim", "2", "--alpha-grid",
                 "0.3:0.6:0.3", "--dump-grid", "0.8", "--runs", "1", "--swarm", "5",
                 "--iters", "5", "--seed", "2"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("alpha,alpha_dump,mean_pe,best_pe,runs\n", 0) == 0);
    CHECK(count_lines(r.out) == 3);
    CHECK(r.out.find("\n0.3,0.8,") != std::string::npos);
    CHECK(r.out.find("\n0.6,0.8,") != std::string::npos);
}

TEST_CASE("sweep with --out leaves a summary line on stdout") {
    TempDir dir("rdvswarm_cli_sweep");
    const fs::path csv = dir.path / "sweep.csv";
    const CommandResult r =
        run_cli({"sweep", "--function", "sphere", "--dim", "2", "--alpha-grid", "0.4",
                 "--dump-grid", "0.9", "--swarm", "5", "--iters", "5", "--out",
                 csv.string()});
    REQUIRE(r.code == 0);
    REQUIRE(fs::exists(csv));
    CHECK(read_file(csv).rfind("alpha,alpha_dump,", 0) == 0);
    const nlohmann::json line = nlohmann::json::parse(r.out);
    CHECK(line.at("cells") == 1);
    CHECK(line.at("best").at("alpha") == 0.4);
}

TEST_CASE("sweep requires exactly one objective source") {
    TempDir dir("rdvswarm_cli_sweep_src");
    const fs::path data = write_series(dir.path, "series.csv", 30);

    CHECK(run_cli({"sweep", "--alpha-grid", "0.4", "--dump-grid", "0.9"}).code == 2);
    CHECK(run_cli({"sweep", "--function", "sphere", "--data", data.string()}).code == 2);

    // Data-driven sweeps accept the full architecture bundle.
    const CommandResult r =
        run_cli({"sweep", "--data", data.string(), "--lags", "3", "--hidden", "2",
                 "--alpha-grid", "0.4", "--dump-grid", "0.9", "--swarm", "5", "--iters",
                 "5"});
    CHECK(r.code == 0);
    CHECK(count_lines(r.out) == 2);
}

TEST_CASE("compare emits the paired comparison document") {
    TempDir dir("rdvswarm_cli_compare");
    const fs::path data = write_series(dir.path, "series.csv", 36);
    const CommandResult r = run_cli(
        {"compare", "--data", data.string(), "--lags", "4", "--hidden", "2", "--swarm",
         "5", "--iters", "8", "--runs", "2", "--seed", "3", "--variant", "rdv",
         "--variant", "vanilla=constant:1"});
    REQUIRE(r.code == 0);
    const nlohmann::json doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("command") == "compare");
    CHECK(doc.at("trials") == 2);
    CHECK(doc.at("tail") == "one_tailed");
    REQUIRE(doc.at("variants").size() == 2);
    CHECK(doc.at("variants")[0].at("name") == "rdv");
    CHECK(doc.at("variants")[1].at("name") == "vanilla");
    CHECK(doc.at("variants")[1].at("iw").at("w") == 1.0);
    CHECK(doc.at("accuracy").size() == 5);
    CHECK(doc.at("convergence").size() == 4);

    // Paired trials share seeds across variants.
    CHECK(doc.at("variants")[0].at("trials")[0].at("seed") ==
          doc.at("variants")[1].at("trials")[0].at("seed"));

    CHECK(run_cli({"compare", "--data", data.string(), "--variant", "rdv"}).code == 2);
    CHECK(run_cli({"compare", "--data", data.string(), "--runs", "2", "--variant",
                   "rdv:2", "--variant", "constant"})
              .code == 2);
}

TEST_CASE("bench runs a single optimizer job") {
    const CommandResult r = run_cli({"bench", "--function", "sphere", "--dim", "3",
                                     "--swarm", "8", "--iters", "10", "--seed", "5"});
    REQUIRE(r.code == 0);
    const nlohmann::json doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("command") == "bench");
    CHECK(doc.at("result").at("gbest_fitness").get<double>() >= 0.0);
    CHECK(doc.at("result").at("iterations") == 10);
}

TEST_CASE("the base seed can come from the environment") {
    setenv("RDV_SWARM_SEED", "123", 1);
    const CommandResult r = run_cli(
        {"bench", "--function", "sphere", "--dim", "2", "--swarm", "4", "--iters", "3"});
    unsetenv("RDV_SWARM_SEED");
    REQUIRE(r.code == 0);
    const nlohmann::json doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("pso").at("seed") == 123);

    // An explicit flag outranks the environment.
    setenv("RDV_SWARM_SEED", "123", 1);
    const CommandResult flag = run_cli({"bench", "--function", "sphere", "--dim", "2",
                                        "--swarm", "4", "--iters", "3", "--seed", "9"});
    unsetenv("RDV_SWARM_SEED");
    REQUIRE(flag.code == 0);
    CHECK(nlohmann::json::parse(flag.out).at("pso").at("seed") == 9);
}

TEST_CASE("exit codes sort errors by kind") {
    TempDir dir("rdvswarm_cli_codes");

    // Usage errors: no subcommand, unknown subcommand, unknown flag, missing
    // required option.
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"frobnicate"}).code == 2);
    CHECK(run_cli({"train"}).code == 2);
    const fs::path data = write_series(dir.path, "series.csv", 30);
    CHECK(run_cli({"train", "--data", data.string(), "--no-such-flag"}).code == 2);

    // Bad argument values caught past parsing.
    CHECK(run_cli({"train", "--data", data.string(), "--lags", "3", "--hidden", "2",
                   "--swarm", "4", "--iters", "3", "--split", "0.5,0.2,0.2"})
              .code == 2);

    // Unreadable or malformed data.
    CHECK(run_cli({"train", "--data", (dir.path / "missing.csv").string()}).code == 3);

    // Degenerate statistics: a constant series cannot be scaled.
    const fs::path flat = write_constant_series(dir.path, "flat.csv", 12);
    CHECK(run_cli({"train", "--data", flat.string(), "--lags", "3", "--hidden", "2",
                   "--swarm", "4", "--iters", "3"})
              .code == 4);

    // Help and version end successfully.
    CHECK(run_cli({"--help"}).code == 0);
    CHECK(run_cli({"train", "--help"}).code == 0);
    const CommandResult version = run_cli({"--version"});
    CHECK(version.code == 0);
    CHECK(version.out.find("0.1.0") != std::string::npos);
}
