#ifndef COVSOLVE_CLI_HPP_INCLUDED
#   define COVSOLVE_CLI_HPP_INCLUDED

#   include <covsolve/probelang.hpp>
#   include <covsolve/solver.hpp>
#   include <json.hpp>
#   include <iosfwd>
#   include <optional>
#   include <string>
#   include <vector>

namespace  covsolve {


struct  run_options
{
    solver_config  solver;
    /// Solve the coverage problem of the first `prefix` ABEs instead.
    std::optional<std::size_t>  prefix;
    bool  json{ false };
    bool  verbose{ false };
};


struct  run_report
{
    std::string  problem;
    solver_status  status{ solver_status::FAILED_NO_PROGRESS };
    std::vector<variable_decl>  variables;
    /// Solution over the variables of the original problem.
    std::optional<valuation>  solution;
    std::size_t  iterations{ 0U };
    std::size_t  evaluations{ 0U };
    double  wall_seconds{ 0.0 };
    std::vector<iteration_record>  trace;
    /// 0-based indices of ABEs removed by the reduction.
    std::vector<std::size_t>  dropped_abes;
    std::size_t  num_abes{ 0U };

    bool  solved() const { return status == solver_status::SOLVED && solution.has_value(); }
};


struct  suite_entry
{
    std::string  problem;
    std::optional<run_report>  report;
    /// Set when the problem could not be loaded or compiled.
    std::string  error;
};


struct  suite_report
{
    std::vector<suite_entry>  entries;
    std::size_t  solved{ 0U };
    double  mean_iterations_solved{ 0.0 };
    double  wall_seconds{ 0.0 };
};


/// Reads and parses a .prob file. Throws error (parse_error for syntax).
problem_spec  load_problem(std::string const&  path);

/// compile, reduce, solve, extend and re-verify on the original problem. A
/// solution failing the re-verification is reported as a failure.
run_report  run_problem(problem_spec const&  spec, std::string const&  name, run_options const&  options);

suite_report  run_suite(std::string const&  dir, run_options const&  options);

/// Keys in a fixed order. Wall time is written only when `with_wall_time`.
nlohmann::ordered_json  to_json(run_report const&  report, bool  with_wall_time = true);
nlohmann::ordered_json  to_json(suite_report const&  report, bool  with_wall_time = true);

/// Exit code 0 when solved, 1 on solver failure, 2 on input errors.
int  cmd_solve(std::string const&  path, run_options const&  options, std::ostream&  out, std::ostream&  err);
/// Exit code 0 unless the directory cannot be read (2).
int  cmd_bench(std::string const&  dir, run_options const&  options, std::ostream&  out, std::ostream&  err);

/// Entry point of the command-line tool.
int  run_cli(int  argc, char const* const*  argv, std::ostream&  out, std::ostream&  err);


}

#endif
