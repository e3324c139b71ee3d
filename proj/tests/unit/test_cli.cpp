#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "heisen_commands.hpp"

using namespace heisen;

namespace {

const std::string kSets = std::string(HEISEN_SOURCE_DIR) + "/demos/sets/";

struct Run {
    int code;
    std::string out, err;
    nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "heisen_cli");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string temp(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("heisen_cli_" + name)).string();
}

std::string write_temp(const std::string& name, const std::string& text) {
    const auto p = temp(name);
    std::ofstream(p) << text;
    return p;
}

}  // namespace

TEST(Cli, SetCheck) {
    const auto ok = run({"set-check", "--set", kSets + "shannon.json"});
    EXPECT_EQ(ok.code, 0) << ok.err;
    const auto j = ok.json();
    EXPECT_TRUE(j["wavelet_set"]);
    EXPECT_TRUE(j["translation"]["congruent"]);
    EXPECT_EQ(j["dilation"]["pieces"].size(), 2u);
    EXPECT_EQ(j["config_hash"].get<std::string>().size(), 16u);

    const auto folded = run({"set-check", "--set", kSets + "three_eighths.json"});
    EXPECT_EQ(folded.code, 1);
    const auto f = folded.json();
    EXPECT_FALSE(f["translation"]["congruent"]);
    EXPECT_TRUE(f["dilation"]["congruent"]);
    EXPECT_EQ(f["translation"]["overlap"], nlohmann::json::parse(R"([["3/8","5/8"]])"));

    const auto bad = run({"set-check", "--set", write_temp("bad.json", R"({"intervals": [["1/0", "1"]]})")});
    EXPECT_EQ(bad.code, 2);
    EXPECT_NE(bad.err.find("intervals[0][0]"), std::string::npos) << bad.err;
    EXPECT_EQ(run({"set-check"}).code, 2);
    EXPECT_EQ(run({"no-such-command"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, BuildVerifyAdmissibilityExport) {
    const auto field = temp("i0.json");
    const auto b = run({"build-indicator", "--set", kSets + "shannon.json", "--resolution", "1/4", "--out", field});
    ASSERT_EQ(b.code, 0) << b.err;
    EXPECT_NEAR(b.json()["norm2"].get<double>(), 0.75, 1e-15);
    const auto loaded = load_field(field);
    EXPECT_EQ(loaded.cells().size(), 4u);

    const auto csv = temp("ratios.csv"), sweep = temp("sweep.csv");
    const auto v = run({"verify", "translation", "--field", field, "--bank-size", "3", "--tol", "0.06", "--csv", csv, "--sweep", sweep});
    EXPECT_EQ(v.code, 0) << v.out << v.err;
    EXPECT_EQ(v.json()["tests"].size(), 3u);
    {
        std::ifstream in(csv);
        std::string header;
        std::getline(in, header);
        EXPECT_EQ(header, "test_id,norm2,frame_sum,ratio");
    }
    {
        std::ifstream in(sweep);
        std::string line;
        std::getline(in, line);
        std::vector<double> means;
        while (std::getline(in, line)) means.push_back(std::stod(line.substr(line.rfind(',') + 1)));
        ASSERT_EQ(means.size(), 5u);  // 1, 2, 4, 8, 16
        for (std::size_t i = 1; i < means.size(); ++i) EXPECT_GE(means[i], means[i - 1]);
    }
    // same inputs, same report
    const auto again = run({"verify", "translation", "--field", field, "--bank-size", "3", "--tol", "0.06"});
    EXPECT_EQ(again.json()["config_hash"], v.json()["config_hash"]);
    EXPECT_EQ(again.json()["tests"], v.json()["tests"]);

    const auto w = run({"verify", "wavelet", "--field", field, "--jmin", "-1", "--jmax", "1", "--bank-size", "3", "--tol", "0.08"});
    EXPECT_EQ(w.code, 0) << w.out << w.err;
    EXPECT_EQ(w.json()["per_j"].size(), 3u);

    const auto gab = run({"verify", "gabor", "--field", field, "--bank-size", "4", "--tol", "0.02"});
    EXPECT_EQ(gab.code, 0) << gab.out << gab.err;
    EXPECT_EQ(run({"verify", "fourier", "--field", field}).code, 2);
    EXPECT_EQ(run({"verify", "translation", "--field", field, "--tol", "0"}).code, 2);

    const auto adm = run({"admissibility", "--field", field});
    EXPECT_EQ(adm.code, 0) << adm.err;
    EXPECT_NEAR(adm.json()["integral_pos"].get<double>(), std::numbers::ln2, 1e-12);
    EXPECT_EQ(run({"admissibility", "--field", field, "-A", "1.2", "-B", "2"}).code, 1);
    EXPECT_EQ(run({"admissibility", "--field", temp("missing.json")}).code, 2);

    const auto e = run({"export-csv", "--field", field});
    EXPECT_EQ(e.code, 0);
    EXPECT_EQ(e.out.rfind("lambda_lo,lambda_hi,t_lo,t_hi,abs2\n", 0), 0u);
    std::filesystem::remove(field);
}

TEST(Cli, BandViolationExitsNonzero) {
    const auto r = run({"build-indicator", "--set", kSets + "shannon.json", "--alpha", "2", "--out", temp("x.json")});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("OutsideBand"), std::string::npos);
}

TEST(Cli, Counterexample) {
    const auto csv = temp("scan.csv");
    const auto r = run({"counterexample", "--set", kSets + "three_eighths.json", "--e", kSets + "e_piece.json",
                        "--resolution", "1/256", "--kmax", "4", "--lmax", "4", "--mmax", "4", "--tol", "1e-4",
                        "--csv", csv});
    EXPECT_EQ(r.code, 0) << r.err;
    const auto j = r.json();
    EXPECT_EQ(j["verdict"], "not a frame");
    EXPECT_GT(j["eta_norm2"].get<double>(), 0);
    std::ifstream in(csv);
    std::string line;
    int rows = -1;
    while (std::getline(in, line)) ++rows;
    EXPECT_EQ(rows, 9 * 9 * 9);

    const auto bad = run({"counterexample", "--set", kSets + "three_eighths.json", "--e", kSets + "half_only.json"});
    EXPECT_EQ(bad.code, 2);
    EXPECT_NE(bad.err.find("BadE"), std::string::npos);
}
