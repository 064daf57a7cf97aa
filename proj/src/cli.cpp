#include <covsolve/cli.hpp>
#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace  covsolve {
namespace  {


nlohmann::ordered_json  value_json(scalar_value const&  v)
{
    switch (v.type().kind)
    {
        case scalar_kind::SIGNED_INT: return v.as_signed();
        case scalar_kind::UNSIGNED_INT: return v.as_unsigned();
        case scalar_kind::FLOAT: return v.as_float();
    }
    return nullptr;
}


std::string  format_seconds(double const  s)
{
    char  buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.3f", s);
    return buffer;
}


std::string  solution_text(run_report const&  report)
{
    std::string  text;
    for (std::size_t  i = 0U; i != report.variables.size(); ++i)
    {
        if (i != 0U)
            text += ", ";
        text += report.variables[i].name + " = " + (*report.solution)[i].to_string();
    }
    return text;
}


void  print_report(run_report const&  report, bool const  verbose, std::ostream&  out)
{
    out << "problem: " << report.problem << '\n';
    if (verbose)
        for (iteration_record const&  r : report.trace)
            out << "  iteration " << r.iteration << ": " << to_string(r.source) << " candidate "
                << r.candidate_index + 1U << '/' << r.num_candidates << ", F_n = " << r.f_value << '\n';
    out << "status: " << to_string(report.status) << '\n';
    if (!report.dropped_abes.empty())
    {
        out << "dropped ABEs:";
        for (std::size_t const  i : report.dropped_abes)
            out << ' ' << i + 1U;
        out << '\n';
    }
    if (report.solution.has_value())
        out << "solution: " << solution_text(report) << '\n';
    out << "iterations: " << report.iterations << '\n'
        << "evaluations: " << report.evaluations << '\n'
        << "wall time: " << format_seconds(report.wall_seconds) << " s\n";
}


void  print_suite(suite_report const&  suite, std::ostream&  out)
{
    std::size_t  width = 7U;
    for (suite_entry const&  e : suite.entries)
        width = std::max(width, e.problem.size());
    out << std::left << std::setw((int)width + 2) << "problem" << std::setw(20) << "status" << std::right
        << std::setw(8) << "iters" << std::setw(10) << "evals" << std::setw(10) << "time[s]" << '\n';
    for (suite_entry const&  e : suite.entries)
    {
        out << std::left << std::setw((int)width + 2) << e.problem;
        if (!e.report.has_value())
        {
            out << "ERROR " << e.error << '\n';
            continue;
        }
        run_report const&  r = *e.report;
        out << std::setw(20) << to_string(r.status) << std::right << std::setw(8) << r.iterations << std::setw(10)
            << r.evaluations << std::setw(10) << format_seconds(r.wall_seconds) << '\n';
    }
    out << "solved " << suite.solved << '/' << suite.entries.size() << ", mean iterations (solved) "
        << suite.mean_iterations_solved << ", total time " << format_seconds(suite.wall_seconds) << " s\n";
}


void  print_input_error(std::string const&  path, std::exception const&  e, std::ostream&  err)
{
    err << path << ": " << e.what() << '\n';
}


}


problem_spec  load_problem(std::string const&  path)
{
    std::ifstream  in(path, std::ios::binary);
    if (!in)
        throw error("cannot open '" + path + "'");
    std::ostringstream  text;
    text << in.rdbuf();
    return parse_problem(text.str());
}


run_report  run_problem(problem_spec const&  spec, std::string const&  name, run_options const&  options)
{
    auto const  start = std::chrono::steady_clock::now();
    problem_spec const  target = options.prefix.has_value() ? prefix_spec(spec, *options.prefix) : spec;
    coverage_problem const  original = compile(target);
    reduction const  reduced = reduce(original);
    solver_result const  result = solve(reduced.problem, options.solver);

    run_report  report;
    report.problem = name;
    report.status = result.status;
    report.variables = target.variables;
    report.iterations = result.iterations_used;
    report.evaluations = result.evaluations_used;
    report.trace = result.log;
    report.dropped_abes = reduced.extension.dropped_abes();
    report.num_abes = original.size();
    if (result.solution.has_value())
    {
        valuation const  extended = reduced.extension.extend(*result.solution);
        if (is_solution(original, extended))
            report.solution = extended;
        else
            report.status = solver_status::FAILED_NO_PROGRESS;
    }
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}


suite_report  run_suite(std::string const&  dir, run_options const&  options)
{
    namespace  fs = std::filesystem;
    auto const  start = std::chrono::steady_clock::now();
    std::vector<fs::path>  files;
    for (fs::directory_entry const&  entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".prob")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    suite_report  suite;
    std::size_t  solved_iterations = 0U;
    for (fs::path const&  file : files)
    {
        suite_entry  entry;
        entry.problem = file.stem().string();
        try
        {
            entry.report = run_problem(load_problem(file.string()), entry.problem, options);
            if (entry.report->solved())
            {
                ++suite.solved;
                solved_iterations += entry.report->iterations;
            }
        }
        catch (error const&  e)
        {
            entry.error = e.what();
        }
        suite.entries.push_back(std::move(entry));
    }
    if (suite.solved != 0U)
        suite.mean_iterations_solved = static_cast<double>(solved_iterations) / static_cast<double>(suite.solved);
    suite.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return suite;
}


nlohmann::ordered_json  to_json(run_report const&  report, bool const  with_wall_time)
{
    nlohmann::ordered_json  j;
    j["status"] = std::string(to_string(report.status));
    if (report.solution.has_value())
    {
        nlohmann::ordered_json  solution = nlohmann::ordered_json::object();
        for (std::size_t  i = 0U; i != report.variables.size(); ++i)
            solution[report.variables[i].name] = { { "type", to_string(report.variables[i].type) },
                                                   { "value", value_json((*report.solution)[i]) } };
        j["solution"] = std::move(solution);
    }
    else
        j["solution"] = nullptr;
    j["iterations"] = report.iterations;
    j["evaluations"] = report.evaluations;
    nlohmann::ordered_json  trace = nlohmann::ordered_json::array();
    for (iteration_record const&  r : report.trace)
        trace.push_back({ { "iteration", r.iteration },
                          { "source", std::string(to_string(r.source)) },
                          { "candidate", r.candidate_index },
                          { "candidates", r.num_candidates },
                          { "f_value", r.f_value } });
    j["trace"] = std::move(trace);
    j["problem"] = report.problem;
    nlohmann::ordered_json  dropped = nlohmann::ordered_json::array();
    for (std::size_t const  i : report.dropped_abes)
        dropped.push_back(i + 1U);
    j["dropped_abes"] = std::move(dropped);
    if (with_wall_time)
        j["wall_time_s"] = report.wall_seconds;
    return j;
}


nlohmann::ordered_json  to_json(suite_report const&  report, bool const  with_wall_time)
{
    nlohmann::ordered_json  j;
    nlohmann::ordered_json  problems = nlohmann::ordered_json::array();
    for (suite_entry const&  e : report.entries)
    {
        if (e.report.has_value())
            problems.push_back(to_json(*e.report, with_wall_time));
        else
            problems.push_back({ { "status", "ERROR" }, { "problem", e.problem }, { "error", e.error } });
    }
    j["problems"] = std::move(problems);
    j["count"] = report.entries.size();
    j["solved"] = report.solved;
    j["mean_iterations_solved"] = report.mean_iterations_solved;
    if (with_wall_time)
        j["wall_time_s"] = report.wall_seconds;
    return j;
}


int  cmd_solve(std::string const&  path, run_options const&  options, std::ostream&  out, std::ostream&  err)
{
    problem_spec  spec;
    try
    {
        spec = load_problem(path);
    }
    catch (error const&  e)
    {
        print_input_error(path, e, err);
        return 2;
    }

    run_report  report;
    try
    {
        report = run_problem(spec, std::filesystem::path(path).stem().string(), options);
    }
    catch (problem_error const&  e)
    {
        problem_spec const  target = options.prefix.has_value() ? prefix_spec(spec, *options.prefix) : spec;
        err << path << ':';
        if (e.index.has_value() && *e.index < target.abes.size() && target.abes[*e.index].line != 0U)
            err << target.abes[*e.index].line << ':';
        err << ' ' << e.what() << '\n';
        return 2;
    }
    catch (error const&  e)
    {
        print_input_error(path, e, err);
        return 2;
    }

    if (options.json)
        out << to_json(report).dump(2) << '\n';
    else
        print_report(report, options.verbose, out);
    return report.solved() ? 0 : 1;
}


int  cmd_bench(std::string const&  dir, run_options const&  options, std::ostream&  out, std::ostream&  err)
{
    suite_report  suite;
    try
    {
        suite = run_suite(dir, options);
    }
    catch (std::filesystem::filesystem_error const&  e)
    {
        print_input_error(dir, e, err);
        return 2;
    }
    if (options.json)
        out << to_json(suite).dump(2) << '\n';
    else
        print_suite(suite, out);
    return 0;
}


int  run_cli(int const  argc, char const* const*  argv, std::ostream&  out, std::ostream&  err)
{
    CLI::App  app{ "Input generation for coverage problems built from program traces" };
    app.require_subcommand(1);

    run_options  options;
    std::size_t  prefix = 0U;
    std::string  path;
    bool  no_tangent = false;

    auto const  add_common = [&](CLI::App*  cmd) {
        cmd->add_option("--seed", options.solver.rng_seed, "Random seed");
        cmd->add_option("--max-iterations", options.solver.max_iterations, "Iteration bound")->check(CLI::PositiveNumber);
        cmd->add_option("--max-evals", options.solver.max_evaluations, "Black-box call budget")->check(CLI::PositiveNumber);
        cmd->add_flag("--json", options.json, "Print a JSON report");
        cmd->add_flag("--no-tangent-projection", no_tangent, "Project along constraint normals only");
        cmd->add_flag("--verbose", options.verbose, "Print accepted candidates per iteration");
    };

    CLI::App* const  solve_cmd = app.add_subcommand("solve", "Solve the coverage problem of a .prob file");
    solve_cmd->add_option("file", path, "Problem file")->required();
    solve_cmd->add_option("--prefix", prefix, "Use the coverage problem of the first k ABEs")->check(CLI::PositiveNumber);
    add_common(solve_cmd);

    CLI::App* const  bench_cmd = app.add_subcommand("bench", "Solve every .prob file of a directory");
    bench_cmd->add_option("dir", path, "Problem directory")->required();
    add_common(bench_cmd);

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const&  e)
    {
        int const  code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    options.solver.tangent_projection = !no_tangent;
    if (solve_cmd->parsed())
    {
        if (prefix != 0U)
            options.prefix = prefix;
        return cmd_solve(path, options, out, err);
    }
    return cmd_bench(path, options, out, err);
}


}
