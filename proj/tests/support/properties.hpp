#ifndef COVSOLVE_TESTS_PROPERTIES_HPP_INCLUDED
#   define COVSOLVE_TESTS_PROPERTIES_HPP_INCLUDED

#   include <covsolve/problem.hpp>
#   include <covsolve/vecspace.hpp>
#   include <cstdint>
#   include <random>
#   include <string>
#   include <vector>

namespace  covsolve::testing {


struct  check_result
{
    bool  passed{ false };
    std::string  detail;
};


/// Random orthonormal k columns in dimension n (QR of a Gaussian matrix).
real_matrix  random_orthonormal(std::size_t  n, std::size_t  k, std::mt19937_64&  rng);

/// Largest deviation from orthonormality of the columns of m.
double  orthonormality_error(real_matrix const&  m);

/// Linear black box sum(coeffs[j] * x_{params[j]}) + offset.
black_box_fn  linear_fn(std::vector<std::size_t>  params, std::vector<double>  coeffs, double  offset);


check_result  orthonormal_chains(std::size_t  chains, std::uint64_t  seed);
check_result  clip_satisfaction(std::size_t  trials, std::uint64_t  seed, double  required_fraction);
check_result  single_constraint_clip(std::size_t  trials, std::uint64_t  seed);
check_result  epsilon_from_value_sweep(std::size_t  count, std::uint64_t  seed);
check_result  line_epsilon_changes_extract(std::size_t  trials, std::uint64_t  seed);
check_result  bit_mutation_gradient_vs_fd(std::size_t  instances, std::uint64_t  seed);
check_result  reduction_oracle(std::size_t  problems, std::uint64_t  seed);

/// Runs the solver on every .prob file of `dir` and on random linear problems
/// and checks that each log strictly improves the last function's value.
check_result  monotone_improvement(std::string const&  dir, std::size_t  random_problems, std::uint64_t  seed);

/// Two cmd_solve --json runs per file and seed must print the same report
/// apart from wall time.
check_result  cmd_solve_determinism(std::vector<std::string> const&  files, std::vector<std::uint64_t> const&  seeds);


}

#endif
