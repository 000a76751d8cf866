#include "tourcast_app/commands.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using tourcast::app::run_cli;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "tourcast");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        root_ = fs::temp_directory_path() /
                ("tourcast_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(root_);
        fs::create_directories(root_);
        ASSERT_EQ(run({"synth", "--seed", "7", "--months", "96", "--out", data_dir()}).code, 0);
    }
    void TearDown() override { fs::remove_all(root_); }

    std::string data_dir() const { return (root_ / "data").string(); }
    std::string data() const { return (root_ / "data" / "visitors.csv").string(); }
    std::string out(const std::string& name) const { return (root_ / name).string(); }

    fs::path root_;
};

}  // namespace

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, 1);
    EXPECT_EQ(run({"bogus"}).code, 1);
    EXPECT_EQ(run({"compare", "--no-such-flag"}).code, 1);
    EXPECT_EQ(run({"compare", "--n-test", "0"}).code, 1);
    EXPECT_EQ(run({"compare", "--set", "novalue"}).code, 1);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, MissingDataIsDataError) {
    const auto r = run({"evaluate", "--data", "/nonexistent/visitors.csv", "--exog", "none"});
    EXPECT_EQ(r.code, 2);
    EXPECT_FALSE(r.err.empty());
}

TEST_F(CliTest, SynthWritesBothFiles) {
    EXPECT_TRUE(fs::exists(root_ / "data" / "visitors.csv"));
    EXPECT_TRUE(fs::exists(root_ / "data" / "google_trend.csv"));
}

TEST_F(CliTest, CompareWritesFiveRowsDeterministically) {
    const std::vector<std::string> common{"--data", data(), "--set", "hybrid.epochs=30"};
    auto a = common;
    a.insert(a.begin(), {"compare", "--out", out("a")});
    auto b = common;
    b.insert(b.begin(), {"compare", "--out", out("b")});
    ASSERT_EQ(run(a).code, 0);
    ASSERT_EQ(run(b).code, 0);
    const auto metrics = slurp(root_ / "a" / "metrics.csv");
    EXPECT_EQ(metrics, slurp(root_ / "b" / "metrics.csv"));
    EXPECT_EQ(std::count(metrics.begin(), metrics.end(), '\n'), 6);
    EXPECT_TRUE(metrics.starts_with("model,rmse\n"));
    for (const char* m : {"arima", "sarima", "sarimax", "svr", "hybrid"}) {
        const std::string f = std::string("forecast_") + m + ".csv";
        EXPECT_EQ(slurp(root_ / "a" / f), slurp(root_ / "b" / f)) << f;
        EXPECT_TRUE(fs::exists(root_ / "a" / (std::string("overlay_") + m + ".svg")));
    }
    EXPECT_NE(slurp(root_ / "a" / "run_config.txt").find("hybrid.epochs = 30"), std::string::npos);
}

TEST_F(CliTest, FlagBeatsSetBeatsConfigFile) {
    const auto cfg = root_ / "run.cfg";
    std::ofstream(cfg) << "n_test = 6\nmodel = arima\n";
    ASSERT_EQ(run({"evaluate", "--data", data(), "--config", cfg.string(), "--out", out("c1")}).code, 0);
    EXPECT_NE(slurp(root_ / "c1" / "run_config.txt").find("n_test = 6"), std::string::npos);
    const auto forecast = slurp(root_ / "c1" / "forecast_arima.csv");
    EXPECT_EQ(std::count(forecast.begin(), forecast.end(), '\n'), 7);

    ASSERT_EQ(run({"evaluate", "--data", data(), "--config", cfg.string(), "--set", "n_test=4", "--out", out("c2")})
                  .code,
              0);
    EXPECT_NE(slurp(root_ / "c2" / "run_config.txt").find("n_test = 4"), std::string::npos);

    ASSERT_EQ(run({"evaluate", "--data", data(), "--config", cfg.string(), "--set", "n_test=4", "--n-test", "3",
                   "--out", out("c3")})
                  .code,
              0);
    EXPECT_NE(slurp(root_ / "c3" / "run_config.txt").find("n_test = 3"), std::string::npos);
}

TEST_F(CliTest, SplitTooLargeIsDataError) {
    const auto r = run({"evaluate", "--data", data(), "--model", "arima", "--n-test", "96", "--out", out("x")});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("SplitTooLarge"), std::string::npos);
}

TEST_F(CliTest, ForecastAndFitAndComponents) {
    ASSERT_EQ(run({"forecast", "--data", data(), "--model", "sarima", "--horizon", "5", "--out", out("f")}).code, 0);
    const auto h = slurp(root_ / "f" / "horizon_sarima.csv");
    EXPECT_EQ(std::count(h.begin(), h.end(), '\n'), 6);
    ASSERT_EQ(run({"fit", "--data", data(), "--model", "svr", "--out", out("f")}).code, 0);
    EXPECT_TRUE(fs::exists(root_ / "f" / "fit_svr.txt"));
    ASSERT_EQ(run({"components", "--data", data(), "--set", "hybrid.epochs=20", "--out", out("f")}).code, 0);
    EXPECT_TRUE(fs::exists(root_ / "f" / "components.csv"));
    EXPECT_TRUE(fs::exists(root_ / "f" / "relevance.csv"));
    EXPECT_TRUE(fs::exists(root_ / "f" / "components.svg"));
}

TEST_F(CliTest, UnknownModelIsUsageError) {
    EXPECT_EQ(run({"evaluate", "--data", data(), "--model", "lstm", "--out", out("u")}).code, 1);
}
