#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ctsc/error.hpp"
#include "ctsc/export.hpp"
#include "json.hpp"

using namespace ctsc;

namespace {

SweepResult one_row() {
    SweepResult r;
    r.axis = SweepAxis::SigmaFDb;
    r.axis_values = {3.0};
    r.trials = 10;
    r.seed = 42;
    SweepRow row;
    row.scheme = Scheme::Iterative;
    row.axis_value = 3.0;
    row.alpha_mean = 0.1234567890123456789;
    row.d2_mean = 1.0 / 3.0;
    row.d2_se = 1e-17;
    row.d1_mean = 12345.678;
    row.d1_se = 0.1;
    row.noise_floor_mean = 2.5;
    row.zf_residual_max = 3.3e-16;
    row.power_violation_max = 0.0;
    row.runtime_ms_mean = 1.5;
    row.fade_floor_hits = 2;
    row.trials = 10;
    r.rows.push_back(row);
    return r;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Export, ColumnsExactly) {
    EXPECT_EQ(kResultColumns,
              "scheme,axis_name,axis_value,alpha_mean,d2_mean,d2_se,d1_mean,d1_se,"
              "noise_floor_mean,zf_residual_max,power_violation_max,runtime_ms_mean,"
              "fade_floor_hits,trials,seed");
}

TEST(Export, EmptySweepIsHeaderOnly) {
    SweepResult r;
    EXPECT_EQ(format_results_csv(r), std::string(kResultColumns) + "\n");
}

TEST(Export, OneRow) {
    const std::string csv = format_results_csv(one_row());
    std::istringstream is(csv);
    std::string header, row, extra;
    std::getline(is, header);
    std::getline(is, row);
    EXPECT_FALSE(std::getline(is, extra));
    EXPECT_EQ(header, kResultColumns);
    EXPECT_EQ(row.substr(0, 26), "iterative,sigma_f_db,3,0.1");
    EXPECT_EQ(std::count(row.begin(), row.end(), ','), 14);
}

TEST(Export, CsvRoundTrip) {
    const SweepResult a = one_row();
    const SweepResult b = parse_results_csv(format_results_csv(a));
    ASSERT_EQ(b.rows.size(), 1u);
    const SweepRow& x = a.rows[0];
    const SweepRow& y = b.rows[0];
    EXPECT_EQ(b.axis, a.axis);
    EXPECT_EQ(b.seed, 42u);
    EXPECT_EQ(b.trials, 10u);
    EXPECT_EQ(y.scheme, x.scheme);
    EXPECT_EQ(y.alpha_mean, x.alpha_mean);
    EXPECT_EQ(y.d2_mean, x.d2_mean);
    EXPECT_EQ(y.d2_se, x.d2_se);
    EXPECT_EQ(y.d1_mean, x.d1_mean);
    EXPECT_EQ(y.zf_residual_max, x.zf_residual_max);
    EXPECT_EQ(y.runtime_ms_mean, x.runtime_ms_mean);
    EXPECT_EQ(y.fade_floor_hits, 2u);
}

TEST(Export, RejectsForeignCsv) {
    EXPECT_THROW(parse_results_csv("a,b,c\n1,2,3\n"), Error);
    EXPECT_THROW(parse_results_csv(""), Error);
    EXPECT_THROW(parse_results_csv(std::string(kResultColumns) + "\nssdt,snr1_db,1\n"), Error);
}

TEST(Export, JsonMirrorsCsv) {
    const auto j = nlohmann::ordered_json::parse(format_results_json(one_row()));
    ASSERT_TRUE(j.is_array());
    ASSERT_EQ(j.size(), 1u);
    std::vector<std::string> keys;
    for (auto it = j[0].begin(); it != j[0].end(); ++it) {
        keys.push_back(it.key());
    }
    std::string joined;
    for (const auto& k : keys) {
        joined += (joined.empty() ? "" : ",") + k;
    }
    EXPECT_EQ(joined, kResultColumns);
    EXPECT_EQ(j[0]["scheme"], "iterative");
    EXPECT_EQ(j[0]["axis_name"], "sigma_f_db");
    EXPECT_EQ(j[0]["d2_mean"].get<double>(), 1.0 / 3.0);
    EXPECT_EQ(j[0]["seed"].get<std::uint64_t>(), 42u);
}

TEST(Export, FilesAndIoFailure) {
    const auto dir = std::filesystem::temp_directory_path();
    export_results(one_row(), dir / "ctsc_export.csv", ExportFormat::Csv);
    EXPECT_EQ(slurp(dir / "ctsc_export.csv"), format_results_csv(one_row()));
    export_results(one_row(), dir / "ctsc_export.json", ExportFormat::Json);
    EXPECT_EQ(slurp(dir / "ctsc_export.json"), format_results_json(one_row()));
    try {
        export_results(one_row(), "/nonexistent/dir/out.csv", ExportFormat::Csv);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::IoFailure);
    }
}
