#ifndef COVSOLVE_SOLVER_HPP_INCLUDED
#   define COVSOLVE_SOLVER_HPP_INCLUDED

#   include <covsolve/constraints.hpp>
#   include <covsolve/localspace.hpp>
#   include <covsolve/problem.hpp>
#   include <covsolve/vecspace.hpp>
#   include <cstdint>
#   include <limits>
#   include <optional>
#   include <random>
#   include <string_view>
#   include <vector>

namespace  covsolve {


struct  solver_config
{
    std::size_t  max_iterations{ 100U };
    std::size_t  max_evaluations{ 100000U };
    std::uint64_t  rng_seed{ 0U };
    std::size_t  clip_limit{ default_clip_rounds };
    std::size_t  bit_mut_steps{ 10U };
    std::size_t  samples_per_cube{ 100U };
    double  alpha{ 0.01 };
    double  cube_scale{ 100.0 };
    bool  tangent_projection{ true };

    /// Throws `error` when a count is zero or alpha is outside (0,1).
    void  validate() const;

    clip_options  clipping() const { return { clip_limit, tangent_projection }; }
};


/// Counts black-box calls against a budget. Calls beyond the budget throw
/// `budget_exhausted` instead of reaching the function.
class  evaluator
{
public:
    struct  budget_exhausted {};

    explicit evaluator(coverage_problem const&  problem, std::size_t  max_evaluations = std::numeric_limits<std::size_t>::max());

    /// eval_prefix over the whole problem.
    prefix_eval_record  evaluate(valuation const&  val);

    /// Single call of fns[index] at `val`, empty when the call fails. Used by
    /// gradient probes, which do not run the prefix.
    std::optional<double>  value_at(valuation const&  val, std::size_t  index);

    std::size_t  evaluations() const { return evaluations_; }

private:
    std::optional<double>  call(std::size_t  index, valuation const&  val);

    coverage_problem const*  problem_;
    std::size_t  max_evaluations_;
    std::size_t  evaluations_{ 0U };
};


struct  iteration_state
{
    valuation  current;
    real_vector  current_vector;
    signature  types;
    basis_chain  chain{ 1U };
    /// csets[i] holds the constraints of level i + 1.
    std::vector<constraint_set>  csets;
    /// F_1..F_n at `current`.
    std::vector<double>  values;
    /// Gradient of the last function in the top local space.
    real_vector  grad_n;
    double  f_n{ 0.0 };
    comparator  comp_n{ comparator::EQ };
    /// Parameters of the last function, root indices.
    std::vector<std::size_t>  params_n;

    local_basis const&  basis() const { return chain.top(); }
    constraint_set const&  constraints() const { return csets.back(); }
    std::size_t  dim() const { return chain.top().dim(); }
};


/// Local spaces and constraints at `current`. Throws problem_error when
/// `current` does not form a coverage problem with the problem's functions.
iteration_state  build_spaces(coverage_problem const&  problem, valuation const&  current, solver_config const&  cfg, evaluator&  ev);
iteration_state  build_spaces(coverage_problem const&  problem, valuation const&  current, solver_config const&  cfg);


enum struct  candidate_source
{
    GRADIENT_STEP,
    BIT_MUTATION,
    RANDOM
};

std::string_view  to_string(candidate_source  source);


struct  candidate
{
    real_vector  vector;
    candidate_source  source;
};


std::vector<real_vector>  grad_step_candidates(iteration_state const&  st, solver_config const&  cfg);
std::vector<real_vector>  bit_mutation_candidates(iteration_state const&  st, solver_config const&  cfg);
std::vector<real_vector>  random_candidates(iteration_state const&  st, solver_config const&  cfg, std::mt19937_64&  rng);


/// Descent used by the bit mutations: finds u in the top local space whose lift
/// moves root coordinate `variable` by exactly `shift` while staying as close
/// as possible to shift * e_variable. Empty when no basis vector has a
/// component along that coordinate.
std::optional<real_vector>  bit_mutation_vector(real_matrix const&  lifted, std::size_t  variable, double  shift, std::size_t  steps);

/// Index of the basis vector with the largest |lifted(variable, k)|, if any
/// exceeds the zero threshold.
std::optional<std::size_t>  bit_mutation_pivot(real_matrix const&  lifted, std::size_t  variable);

/// Gradient of |lifted * u - shift * e_variable|^2 with u[pivot] re-derived
/// from the other coordinates so that the lift stays on the target plane.
real_vector  bit_mutation_gradient(real_matrix const&  lifted, std::size_t  variable, std::size_t  pivot, real_vector const&  u);

/// Recomputes u[pivot] so that (lifted * u)[variable] == shift.
void  bit_mutation_pin(real_matrix const&  lifted, std::size_t  variable, std::size_t  pivot, double  shift, real_vector&  u);


/// Whether `new_val` is closer than `old_val` to satisfying `cmp(., 0)`.
bool  improves(comparator  cmp, double  old_val, double  new_val);


enum struct  solver_status
{
    SOLVED,
    FAILED_NO_PROGRESS,
    FAILED_BUDGET
};

std::string_view  to_string(solver_status  status);


struct  iteration_record
{
    std::size_t  iteration{ 0U };
    candidate_source  source{ candidate_source::GRADIENT_STEP };
    std::size_t  candidate_index{ 0U };
    std::size_t  num_candidates{ 0U };
    /// Value of the last function at the accepted valuation.
    double  f_value{ 0.0 };
};


struct  solver_result
{
    solver_status  status{ solver_status::FAILED_NO_PROGRESS };
    std::optional<valuation>  solution;
    std::size_t  iterations_used{ 0U };
    std::size_t  evaluations_used{ 0U };
    /// Last function's value at the initial valuation.
    double  initial_f_value{ 0.0 };
    std::vector<iteration_record>  log;
};


/// Searches for a valuation satisfying all predicates. `problem` should be
/// reduced. Throws problem_error when it is not a coverage problem.
solver_result  solve(coverage_problem const&  problem, solver_config const&  cfg = {});


}

#endif
