#include <covsolve/probelang.hpp>
#include <gtest/gtest.h>
#include <cmath>
#include <random>

using namespace covsolve;

namespace {

scalar_type const  f64 = make_scalar_type(scalar_kind::FLOAT, 64U);
scalar_type const  i32 = make_scalar_type(scalar_kind::SIGNED_INT, 32U);

std::vector<std::string> const  xy{ "x1", "x2" };

valuation  doubles(std::initializer_list<double>  xs)
{
    std::vector<scalar_value>  values;
    for (double const  x : xs)
        values.push_back(scalar_value::of_float(f64, x));
    return valuation{ values };
}

std::size_t  error_line(std::string const&  text)
{
    try
    {
        parse_problem(text);
    }
    catch (parse_error const&  e)
    {
        return e.line;
    }
    return 0U;
}

dist_expr  random_expr(std::mt19937_64&  rng, std::size_t const  vars, int const  depth)
{
    if (depth == 0 || rng() % 4U == 0U)
    {
        if (rng() % 2U == 0U)
            return dist_expr::variable(rng() % vars);
        std::uniform_real_distribution<double>  value(-1000.0, 1000.0);
        double const  x = rng() % 2U == 0U ? std::round(value(rng)) : value(rng);
        return dist_expr::literal(x);
    }
    switch (rng() % 9U)
    {
        case 0U: return dist_expr::unary(expr_kind::NEGATE, random_expr(rng, vars, depth - 1));
        case 1U: return dist_expr::unary(expr_kind::ABS, random_expr(rng, vars, depth - 1));
        case 2U: return dist_expr::cast(i32, random_expr(rng, vars, depth - 1));
        case 3U: return dist_expr::binary(expr_kind::SUB, random_expr(rng, vars, depth - 1), random_expr(rng, vars, depth - 1));
        case 4U: return dist_expr::binary(expr_kind::MUL, random_expr(rng, vars, depth - 1), random_expr(rng, vars, depth - 1));
        case 5U: return dist_expr::binary(expr_kind::DIV, random_expr(rng, vars, depth - 1), random_expr(rng, vars, depth - 1));
        case 6U: return dist_expr::binary(expr_kind::MIN, random_expr(rng, vars, depth - 1), random_expr(rng, vars, depth - 1));
        case 7U: return dist_expr::binary(expr_kind::MAX, random_expr(rng, vars, depth - 1), random_expr(rng, vars, depth - 1));
        default: return dist_expr::binary(expr_kind::ADD, random_expr(rng, vars, depth - 1), random_expr(rng, vars, depth - 1));
    }
}

}


TEST(eval_expr, examples)
{
    EXPECT_EQ(eval_expr(parse_expr("x1 - x2", xy), doubles({ 2.0, -3.0 })), 5.0);
    EXPECT_FALSE(eval_expr(parse_expr("x1 / x2", xy), doubles({ 1.0, 0.0 })).has_value());
    EXPECT_EQ(eval_expr(parse_expr("x1 - 10", xy), doubles({ 0.0, 0.0 })), -10.0);
    EXPECT_EQ(eval_expr(parse_expr("abs(x1) + min(x1, x2) * max(1, 2)", xy), doubles({ -2.0, 3.0 })), 2.0 - 4.0);
    EXPECT_EQ(eval_expr(parse_expr("i8(x1)", xy), doubles({ -3.7, 0.0 })), -3.0);
    EXPECT_FALSE(eval_expr(parse_expr("i8(x1)", xy), doubles({ 300.0, 0.0 })).has_value());
    EXPECT_FALSE(eval_expr(parse_expr("x1 * x1 * x1", xy), doubles({ 1e200, 0.0 })).has_value());
}


TEST(parse_expr, precedence_and_unary)
{
    EXPECT_EQ(eval_expr(parse_expr("1 + 2 * 3", xy), doubles({ 0.0, 0.0 })), 7.0);
    EXPECT_EQ(eval_expr(parse_expr("(1 + 2) * 3", xy), doubles({ 0.0, 0.0 })), 9.0);
    EXPECT_EQ(eval_expr(parse_expr("8 / 4 / 2", xy), doubles({ 0.0, 0.0 })), 1.0);
    EXPECT_EQ(eval_expr(parse_expr("1 - 2 - 3", xy), doubles({ 0.0, 0.0 })), -4.0);
    EXPECT_EQ(eval_expr(parse_expr("-x1 - -2", xy), doubles({ 5.0, 0.0 })), -3.0);
    EXPECT_EQ(referenced_variables(parse_expr("x2 * 2 + x2", xy)), (std::set<std::size_t>{ 1U }));
}


TEST(parse_expr, errors)
{
    EXPECT_THROW(parse_expr("x3 + 1", xy), parse_error);
    EXPECT_THROW(parse_expr("x1 +", xy), parse_error);
    EXPECT_THROW(parse_expr("sqrt(x1)", xy), parse_error);
    EXPECT_THROW(parse_expr("min(x1)", xy), parse_error);
    EXPECT_THROW(parse_expr("x1 $ 2", xy), parse_error);
    try
    {
        parse_expr("(x1", xy, 7U);
        FAIL();
    }
    catch (parse_error const&  e)
    {
        EXPECT_EQ(e.line, 7U);
    }
}


TEST(parse_problem, reads_declarations)
{
    problem_spec const  spec = parse_problem(
            "# comment\n"
            "var a : i32\n"
            "var b : f64\n"
            "init a = -7\n"
            "init b = 0.5\n"
            "\n"
            "abe a - b < 0   # trailing\n"
            "abe b >= 0\n");
    ASSERT_EQ(spec.variables.size(), 2U);
    EXPECT_EQ(spec.variables[0], (variable_decl{ "a", i32 }));
    EXPECT_EQ(spec.init[0].as_signed(), -7);
    EXPECT_EQ(spec.init[1].as_float(), 0.5);
    ASSERT_EQ(spec.abes.size(), 2U);
    EXPECT_EQ(spec.abes[0].comp, comparator::LT);
    EXPECT_EQ(spec.abes[0].line, 7U);
    EXPECT_EQ(spec.abes[1].comp, comparator::GE);
}


TEST(parse_problem, error_lines)
{
    EXPECT_EQ(error_line("var x : i32\ninit x = 0\nabe y == 0\n"), 3U);
    EXPECT_EQ(error_line("var x : q32\n"), 1U);
    EXPECT_EQ(error_line("var x : i32\nvar x : i32\n"), 2U);
    EXPECT_EQ(error_line("var x : i32\ninit x = 1.5\nabe x == 0\n"), 2U);
    EXPECT_EQ(error_line("var x : u8\ninit x = 256\nabe x == 0\n"), 2U);
    EXPECT_EQ(error_line("var x : i32\ninit x = 0\nabe x == 1\n"), 3U);
    EXPECT_EQ(error_line("var x : i32\ninit x = 0\nfrobnicate\n"), 3U);
    EXPECT_NE(error_line("var x : i32\nabe x == 0\n"), 0U);
    EXPECT_NE(error_line("var x : i32\ninit x = 0\n"), 0U);
}


TEST(parse_problem, exact_integer_init)
{
    problem_spec const  spec = parse_problem("var x : i64\ninit x = 9007199254740993\nabe x == 0\n");
    EXPECT_EQ(spec.init[0].as_signed(), 9007199254740993LL);
}


TEST(compile, builds_coverage_problem)
{
    problem_spec const  spec = parse_problem("var x1 : f64\nvar x2 : f64\ninit x1 = 0\ninit x2 = 0\nabe x1 - x2 == 0\nabe x1 - 10 >= 0\n");
    coverage_problem const  s = compile(spec);
    EXPECT_EQ(s.size(), 2U);
    EXPECT_EQ(s.fns()[0].params, (std::vector<std::size_t>{ 0U, 1U }));
    EXPECT_EQ(s.fns()[1].params, (std::vector<std::size_t>{ 0U }));
    EXPECT_EQ(s.fns()[1](doubles({ 3.0, 0.0 })), -7.0);
    EXPECT_TRUE(is_solution(s, doubles({ 10.0, 10.0 })));
    EXPECT_EQ(s.variable_names(), xy);
}


TEST(compile, rejects_non_problem)
{
    problem_spec const  spec = parse_problem("var x : f64\ninit x = 20\nabe x - 10 >= 0\n");
    try
    {
        compile(spec);
        FAIL();
    }
    catch (problem_error const&  e)
    {
        ASSERT_TRUE(e.index.has_value());
        EXPECT_EQ(*e.index, 0U);
    }
}


TEST(prefix_spec, flips_new_last)
{
    problem_spec const  spec = parse_problem("var x : f64\ninit x = 0\nabe x <= 0\nabe x - 1 == 0\n");
    problem_spec const  head = prefix_spec(spec, 1U);
    ASSERT_EQ(head.abes.size(), 1U);
    EXPECT_EQ(head.abes[0].comp, comparator::GT);
    EXPECT_EQ(prefix_spec(spec, 2U), spec);
    EXPECT_THROW(prefix_spec(spec, 0U), error);
    EXPECT_THROW(prefix_spec(spec, 3U), error);
}


TEST(print_expr, minimal_parentheses)
{
    EXPECT_EQ(print_expr(parse_expr("(x1 - x2) - 3", xy), xy), "x1 - x2 - 3");
    EXPECT_EQ(print_expr(parse_expr("x1 - (x2 - 3)", xy), xy), "x1 - (x2 - 3)");
    EXPECT_EQ(print_expr(parse_expr("(x1 + x2) * 2", xy), xy), "(x1 + x2) * 2");
}


TEST(probelang_property, print_parse_round_trip)
{
    std::mt19937_64  rng(47U);
    scalar_type const  types[] = { i32, f64, make_scalar_type(scalar_kind::UNSIGNED_INT, 8U), make_scalar_type(scalar_kind::FLOAT, 32U) };
    for (int  trial = 0; trial != 500; ++trial)
    {
        problem_spec  spec;
        std::size_t const  vars = 1U + rng() % 4U;
        std::vector<scalar_value>  init;
        for (std::size_t  v = 0U; v != vars; ++v)
        {
            scalar_type const  t = types[rng() % 4U];
            spec.variables.push_back({ "v" + std::to_string(v), t });
            init.push_back(scalar_value::nearest(t, static_cast<double>(rng() % 200U) - (t.kind == scalar_kind::UNSIGNED_INT ? 0.0 : 100.0) + (t.is_integer() ? 0.0 : 0.25)));
        }
        spec.init = valuation{ init };
        std::size_t const  abes = 1U + rng() % 4U;
        for (std::size_t  a = 0U; a != abes; ++a)
            spec.abes.push_back({ random_expr(rng, vars, 4), static_cast<comparator>(rng() % 6U), 0U });
        std::string const  text = print_problem(spec);
        problem_spec const  back = parse_problem(text);
        EXPECT_EQ(back, spec) << text;
        EXPECT_EQ(print_problem(back), text);
    }
}
