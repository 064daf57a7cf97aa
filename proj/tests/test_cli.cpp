#include <covsolve/cli.hpp>
#include "support/properties.hpp"
#include <gtest/gtest.h>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace covsolve;

namespace {

std::string  problem_path(std::string const&  name)
{
    return std::string(COVSOLVE_PROBLEMS_DIR) + "/" + name;
}

struct  captured
{
    int  code;
    std::string  out;
    std::string  err;
};

captured  run(std::vector<std::string> const&  args)
{
    std::vector<char const*>  argv{ "covsolve" };
    for (std::string const&  a : args)
        argv.push_back(a.c_str());
    std::ostringstream  out;
    std::ostringstream  err;
    int const  code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return { code, out.str(), err.str() };
}

std::filesystem::path  scratch_dir(std::string const&  name)
{
    std::filesystem::path const  dir = std::filesystem::temp_directory_path() / ("covsolve_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}


TEST(cmd_solve, solves_bundled_problems)
{
    for (char const*  name : { "equal_then_bound.prob", "independent_prefix.prob", "le_then_eq.prob", "le_eq_eq.prob" })
    {
        captured const  c = run({ "solve", problem_path(name) });
        EXPECT_EQ(c.code, 0) << name << "\n" << c.out << c.err;
        EXPECT_NE(c.out.find("SOLVED"), std::string::npos) << name;
    }
}


TEST(cmd_solve, json_report)
{
    captured const  c = run({ "solve", problem_path("independent_prefix.prob"), "--json" });
    ASSERT_EQ(c.code, 0) << c.err;
    nlohmann::ordered_json const  j = nlohmann::ordered_json::parse(c.out);
    std::vector<std::string>  keys;
    for (auto const&  item : j.items())
        keys.push_back(item.key());
    EXPECT_EQ(keys, (std::vector<std::string>{ "status", "solution", "iterations", "evaluations", "trace", "problem",
                                               "dropped_abes", "wall_time_s" }));
    EXPECT_EQ(j["status"], "SOLVED");
    EXPECT_EQ(j["dropped_abes"], nlohmann::ordered_json::array({ 1 }));
    EXPECT_EQ(j["solution"]["x3"]["type"], "f64");
    EXPECT_GE(j["solution"]["x3"]["value"].get<double>(), 10.0);
    EXPECT_EQ(j["solution"]["x1"]["value"].get<double>(), j["solution"]["x2"]["value"].get<double>());
    ASSERT_FALSE(j["trace"].empty());
    EXPECT_EQ(j["trace"][0]["iteration"], 1);
}


TEST(cmd_solve, input_errors_exit_two)
{
    captured const  missing = run({ "solve", problem_path("no_such_file.prob") });
    EXPECT_EQ(missing.code, 2);
    EXPECT_FALSE(missing.err.empty());

    std::filesystem::path const  dir = scratch_dir("errors");
    std::ofstream(dir / "bad.prob") << "var x : f64\ninit x = 0\nabe y == 0\n";
    captured const  bad = run({ "solve", (dir / "bad.prob").string() });
    EXPECT_EQ(bad.code, 2);
    EXPECT_NE(bad.err.find("3"), std::string::npos) << bad.err;

    std::ofstream(dir / "true_last.prob") << "var x : f64\ninit x = 20\nabe x - 10 >= 0\n";
    captured const  solved = run({ "solve", (dir / "true_last.prob").string() });
    EXPECT_EQ(solved.code, 2);
    EXPECT_NE(solved.err.find("true_last.prob:3:"), std::string::npos) << solved.err;

    EXPECT_NE(run({ "frobnicate" }).code, 0);
    EXPECT_NE(run({ "solve" }).code, 0);
}


TEST(cmd_solve, prefix_option)
{
    captured const  c = run({ "solve", problem_path("le_eq_eq.prob"), "--prefix", "2", "--json" });
    ASSERT_EQ(c.code, 0) << c.err;
    nlohmann::ordered_json const  j = nlohmann::ordered_json::parse(c.out);
    EXPECT_EQ(j["status"], "SOLVED");
    // The second ABE becomes x1 - 1 != 0.
    EXPECT_NE(j["solution"]["x1"]["value"].get<double>(), 1.0);
    EXPECT_EQ(j["dropped_abes"], nlohmann::ordered_json::array());
}


TEST(cmd_solve, budget_failure_exits_one)
{
    captured const  c = run({ "solve", problem_path("equal_then_bound.prob"), "--max-evals", "1" });
    EXPECT_EQ(c.code, 1);
    EXPECT_NE(c.out.find("FAILED_BUDGET"), std::string::npos) << c.out;
}


TEST(cmd_bench, empty_directory)
{
    std::filesystem::path const  dir = scratch_dir("empty");
    captured const  c = run({ "bench", dir.string(), "--json" });
    EXPECT_EQ(c.code, 0) << c.err;
    EXPECT_EQ(run({ "bench", (dir / "missing").string() }).code, 2);
}


TEST(cmd_bench, counts_broken_files)
{
    std::filesystem::path const  dir = scratch_dir("mixed");
    std::filesystem::copy_file(problem_path("equal_then_bound.prob"), dir / "a.prob");
    std::ofstream(dir / "b.prob") << "var x : f64\n";
    std::ofstream(dir / "ignored.txt") << "not a problem\n";
    run_options  options;
    suite_report const  rep = run_suite(dir.string(), options);
    ASSERT_EQ(rep.entries.size(), 2U);
    EXPECT_EQ(rep.solved, 1U);
    EXPECT_TRUE(rep.entries[0].report.has_value());
    EXPECT_FALSE(rep.entries[1].report.has_value());
    EXPECT_FALSE(rep.entries[1].error.empty());
}


TEST(cli_property, deterministic_json)
{
    std::vector<std::string> const  files{ problem_path("equal_then_bound.prob"), problem_path("le_eq_eq.prob"),
                                           problem_path("bench/quad_disc.prob"), problem_path("bench/chain_d3_k4_i32.prob") };
    covsolve::testing::check_result const  res = covsolve::testing::cmd_solve_determinism(files, { 0U, 1U, 12345U });
    EXPECT_TRUE(res.passed) << res.detail;
}
