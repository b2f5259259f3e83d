#include "cli.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cyclesim/state_io.h"
#include "gtest/gtest.h"

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(const std::vector<std::string> &args) {
    std::ostringstream out;
    std::ostringstream err;
    int code = cyclesim::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string &name, const std::string &contents) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << contents;
    return path;
}

std::string slurp(const std::filesystem::path &path) {
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST(cli, build_summary) {
    CliRun r = run({"build", "--n", "5"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "n=5 terms=12 levels_ok=true");
    EXPECT_NE(r.out.find("m=4 p=2/3"), std::string::npos);

    CliRun three = run({"build", "--n", "3"});
    EXPECT_EQ(three.code, 0);
    EXPECT_EQ(three.out.substr(0, three.out.find('\n')), "n=3 terms=1 levels_ok=true");
}

TEST(cli, build_json_and_files) {
    auto state_path = std::filesystem::temp_directory_path() / "cyclesim_cli_state.json";
    CliRun r = run({"build", "--n", "5", "--format", "json", "--out", state_path.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    cyclesim::Json summary = cyclesim::Json::parse(r.out);
    EXPECT_EQ(summary["terms"], 12);
    EXPECT_EQ(summary["ledger"][1]["p"], "2/3");

    cyclesim::Json state = cyclesim::Json::parse(slurp(state_path));
    EXPECT_EQ(state["terms"].size(), 12u);
    EXPECT_EQ(state["norm_sq"], 12);
    auto ledger_path = state_path;
    ledger_path.replace_extension(".ledger.json");
    cyclesim::Json ledger = cyclesim::Json::parse(slurp(ledger_path));
    EXPECT_EQ(ledger.size(), 2u);
    EXPECT_EQ(ledger[0]["p"], "1");

    // Identical invocations produce byte-identical files.
    std::string first = slurp(state_path);
    ASSERT_EQ(run({"build", "--n", "5", "--format", "json", "--out", state_path.string()}).out, r.out);
    EXPECT_EQ(slurp(state_path), first);
    std::filesystem::remove(state_path);
    std::filesystem::remove(ledger_path);
}

TEST(cli, build_retain_reports_total_ancilla_bits) {
    CliRun r = run({"build", "--n", "7", "--ancilla", "retain", "--format", "json"});
    ASSERT_EQ(r.code, 0);
    cyclesim::Json j = cyclesim::Json::parse(r.out);
    EXPECT_EQ(j["ancilla_bits"], 3 + 6 + 10 + 15);
    EXPECT_EQ(j["sub_ops"], 3 + 6 + 10 + 15);
}

TEST(cli, build_capacity_and_usage_errors) {
    EXPECT_EQ(run({"build", "--n", "12"}).code, 2);
    EXPECT_EQ(run({"build", "--n", "8", "--budget", "100"}).code, 2);
    EXPECT_EQ(run({"build", "--n", "2"}).code, 1);
    EXPECT_EQ(run({"build"}).code, 1);
    EXPECT_EQ(run({"build", "--n", "5", "--variant", "bogus"}).code, 1);
    EXPECT_EQ(run({}).code, 1);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(cli, verify) {
    CliRun r4 = run({"verify", "--n", "4"});
    EXPECT_EQ(r4.code, 0) << r4.out;
    EXPECT_NE(r4.out.find("PASS example_3_to_4_bit_exact"), std::string::npos);
    EXPECT_EQ(r4.out.find("FAIL"), std::string::npos);

    CliRun r8 = run({"verify", "--n", "8", "--format", "json"});
    EXPECT_EQ(r8.code, 0);
    cyclesim::Json j = cyclesim::Json::parse(r8.out);
    EXPECT_TRUE(j["pass"].get<bool>());
    EXPECT_EQ(j["checks"][0]["detail"], "state masks=2520 oracle masks=2520");

    EXPECT_EQ(run({"verify", "--n", "2"}).code, 1);
    EXPECT_EQ(run({"verify", "--n", "9"}).code, 1);
}

TEST(cli, solve) {
    auto csv = temp_file("cyclesim_cli_w4.csv", "0,1,5,2\n1,0,3,9\n5,3,0,1\n2,9,1,0\n");
    CliRun r = run({"solve", "--weights", csv.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    // Tours: (1,2,3,4)=1+3+1+2=7, (1,2,4,3)=1+9+1+5=16, (1,3,2,4)=5+3+9+2=19.
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "tour=1 2 3 4 weight=7 mask=1 01 101");
    EXPECT_NE(r.out.find("agree=true"), std::string::npos);

    EXPECT_EQ(run({"solve", "--weights", csv.string(), "--n", "5"}).code, 1);

    auto asym = temp_file("cyclesim_cli_asym.csv", "0,1,5\n1,0,3\n5,4,0\n");
    CliRun bad = run({"solve", "--weights", asym.string()});
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.err.find("line 2, column 3"), std::string::npos) << bad.err;

    EXPECT_EQ(run({"solve", "--weights", "/nonexistent/w.csv"}).code, 1);
    std::filesystem::remove(csv);
    std::filesystem::remove(asym);
}

TEST(cli, solve_random_instances_cross_check) {
    std::mt19937_64 rng(77);
    auto path = std::filesystem::temp_directory_path() / "cyclesim_cli_rand.json";
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 7;
        std::vector<std::vector<int>> w(n, std::vector<int>(n, 0));
        for (int i = 0; i < n; ++i) {
            for (int k = i + 1; k < n; ++k) {
                w[i][k] = w[k][i] = static_cast<int>(rng() % 30);
            }
        }
        std::ofstream(path) << cyclesim::Json{{"n", n}, {"weights", w}}.dump();
        CliRun r = run({"solve", "--weights", path.string(), "--format", "json"});
        ASSERT_EQ(r.code, 0) << r.err;
        ASSERT_TRUE(cyclesim::Json::parse(r.out)["agree"].get<bool>());
    }
    std::filesystem::remove(path);
}

TEST(cli, trace) {
    CliRun r = run({"trace", "--n", "5", "--level", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("U[4,1]: break=(2,1) new=(7,8) fired=2"), std::string::npos);
    EXPECT_NE(r.out.find("good=2/3 residual=1/3"), std::string::npos);
    EXPECT_NE(r.out.find("fired_total=12"), std::string::npos);

    CliRun r3 = run({"trace", "--n", "4", "--level", "3"});
    EXPECT_NE(r3.out.find("residual=0 "), std::string::npos) << r3.out;

    CliRun sampled = run({"trace", "--n", "6", "--sample", "2000", "--seed", "9", "--format", "json"});
    ASSERT_EQ(sampled.code, 0);
    cyclesim::Json j = cyclesim::Json::parse(sampled.out);
    EXPECT_EQ(j["samples"].size(), 3u);
    EXPECT_EQ(j["samples"][2]["expected"], "2");
    EXPECT_EQ(run({"trace", "--n", "6", "--sample", "2000", "--seed", "9", "--format", "json"}).out, sampled.out);

    EXPECT_EQ(run({"trace", "--n", "5", "--level", "5"}).code, 1);
    EXPECT_EQ(run({"trace", "--n", "5", "--level", "2"}).code, 1);
}

TEST(cli, reverse) {
    CliRun r = run({"reverse", "--n", "5"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "n=5 level=4 terms=12 path_masks=3 marginal_uniform=true round_trip=true\n");

    CliRun lower = run({"reverse", "--n", "6", "--level", "3", "--format", "json"});
    ASSERT_EQ(lower.code, 0) << lower.err;
    cyclesim::Json j = cyclesim::Json::parse(lower.out);
    EXPECT_EQ(j["terms"], 3);
    EXPECT_EQ(j["state"]["terms"][0]["path"], "111000000000000");

    EXPECT_EQ(run({"reverse", "--n", "3"}).code, 1);
}
