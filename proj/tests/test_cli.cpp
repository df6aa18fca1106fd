#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ctsc/cli.hpp"
#include "ctsc/export.hpp"
#include "ctsc/features.hpp"

using namespace ctsc;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args) {
    args.insert(args.begin(), "ctsc");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch() {
    auto d = std::filesystem::temp_directory_path() / "ctsc_cli_test";
    std::filesystem::create_directories(d);
    return d;
}

std::string write_cfg(const std::string& name, const std::string& body) {
    const auto p = scratch() / name;
    std::ofstream(p) << body;
    return p.string();
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

const std::string kSmall = "n_symbols = 2\nn_subcarriers = 16\ntrials = 5\nschemes = ssdt, iterative, no_transfer\n";

}  // namespace

TEST(Cli, VerifyDefaultPasses) {
    const CliRun r = run({"verify", "--config", std::string(CTSC_SOURCE_DIR) + "/config/default.cfg"});
    EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, MissingConfigIsIoError) {
    EXPECT_EQ(run({"verify", "--config", "/nonexistent/none.cfg"}).code, kExitIo);
}

TEST(Cli, UsageErrors) {
    const std::string cfg = write_cfg("usage.cfg", kSmall);
    EXPECT_EQ(run({"sweep", "--config", cfg, "--param", "bandwidth", "--from", "0", "--to", "1", "--step", "1"}).code,
              kExitUsage);
    EXPECT_EQ(run({}).code, kExitUsage);
    EXPECT_EQ(run({"simulate"}).code, kExitUsage);
    EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
    EXPECT_EQ(run({"sweep", "--config", cfg, "--param", "snr1_db", "--from", "5", "--to", "1", "--step", "1"}).code,
              kExitUsage);
    EXPECT_EQ(run({"bench", "--config", cfg, "--schemes", "ssdt,magic"}).code, kExitUsage);
    const std::string bad = write_cfg("bad.cfg", "colour = blue\n");
    EXPECT_EQ(run({"verify", "--config", bad}).code, kExitUsage);
}

TEST(Cli, HelpListsConfigKeys) {
    const CliRun r = run({"--help"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("power_convention"), std::string::npos);
}

TEST(Cli, SimulateToStdoutAndFiles) {
    const std::string cfg = write_cfg("sim.cfg", kSmall);
    const CliRun r = run({"simulate", "--config", cfg});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const SweepResult parsed = parse_results_csv(r.out);
    EXPECT_EQ(parsed.rows.size(), 3u);

    const auto csv = scratch() / "sim.csv";
    ASSERT_EQ(run({"simulate", "--config", cfg, "--out", csv.string()}).code, kExitOk);
    EXPECT_EQ(slurp(csv), r.out);

    const auto json = scratch() / "sim.json";
    ASSERT_EQ(run({"simulate", "--config", cfg, "--out", json.string()}).code, kExitOk);
    EXPECT_EQ(slurp(json).front(), '[');

    EXPECT_EQ(run({"simulate", "--config", cfg, "--out", "/nonexistent/dir/x.csv"}).code, kExitIo);
}

TEST(Cli, SimulateIsByteIdentical) {
    const std::string cfg = write_cfg("det.cfg", kSmall);
    EXPECT_EQ(run({"simulate", "--config", cfg}).out, run({"simulate", "--config", cfg}).out);
}

TEST(Cli, SweepPoints) {
    const std::string cfg = write_cfg("sweep.cfg", "n_symbols = 1\nn_subcarriers = 8\ntrials = 3\n");
    const CliRun r = run({"sweep", "--config", cfg, "--param", "sigma_f_db", "--from", "1", "--to", "10", "--step", "1"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const SweepResult s = parse_results_csv(r.out);
    ASSERT_EQ(s.rows.size(), 10u);
    EXPECT_EQ(s.rows.back().axis_value, 10.0);
    EXPECT_EQ(s.axis, SweepAxis::SigmaFDb);

    const CliRun u = run({"sweep", "--config", cfg, "--param", "n_users", "--from", "1", "--to", "3", "--step", "1"});
    ASSERT_EQ(u.code, kExitOk) << u.err;
    EXPECT_EQ(parse_results_csv(u.out).rows.size(), 3u);
}

TEST(Cli, BenchReportsBothSchemes) {
    const std::string cfg = write_cfg("bench.cfg", kSmall);
    const CliRun r = run({"bench", "--config", cfg, "--schemes", "ssdt,iterative"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("\nssdt,5,"), std::string::npos);
    EXPECT_NE(r.out.find("\niterative,5,"), std::string::npos);
    EXPECT_NE(r.out.find("runtime ratio"), std::string::npos);
}

TEST(Cli, GenFeaturesThenSimulateFromFile) {
    const auto feat = scratch() / "gen.ctsf";
    const std::string cfg = write_cfg("gen.cfg", "n_symbols = 2\nn_subcarriers = 16\ntrials = 3\n");
    ASSERT_EQ(run({"gen-features", "--mode", "gaussian", "--config", cfg, "--out", feat.string()}).code, kExitOk);
    const auto blocks = read_features(feat);
    ASSERT_EQ(blocks.size(), 2u);
    EXPECT_EQ(blocks[0].data.rows(), 2u);
    EXPECT_EQ(blocks[0].data.cols(), 16u);

    // relative path resolved against the config's directory
    const std::string with_file = write_cfg("file.cfg",
        "n_symbols = 2\nn_subcarriers = 16\ntrials = 3\nfeatures = gen.ctsf\n");
    EXPECT_EQ(run({"simulate", "--config", with_file}).code, kExitOk);

    const std::string wrong_shape = write_cfg("wrong.cfg",
        "n_symbols = 4\nn_subcarriers = 16\ntrials = 3\nfeatures = gen.ctsf\n");
    EXPECT_NE(run({"simulate", "--config", wrong_shape}).code, kExitOk);

    std::ofstream(scratch() / "junk.ctsf") << "JUNKJUNKJUNKJUNKJUNKJUNK";
    const std::string junk = write_cfg("junk.cfg", "n_symbols = 2\nn_subcarriers = 16\nfeatures = junk.ctsf\n");
    EXPECT_EQ(run({"simulate", "--config", junk}).code, kExitIo);
    EXPECT_EQ(run({"gen-features", "--mode", "pixels", "--config", cfg, "--out", feat.string()}).code, kExitUsage);
}
