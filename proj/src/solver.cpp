#include <covsolve/solver.hpp>
#include <covsolve/numerics.hpp>
#include <algorithm>
#include <cmath>

namespace  covsolve {
namespace  {


std::vector<double>  step_parameters(comparator const  comp, double const  t, double const  eps)
{
    switch (comp)
    {
        case comparator::EQ: return { t };
        case comparator::NEQ: return { t - eps, t + eps };
        case comparator::LT: return { t - eps };
        case comparator::LE: return { t - eps, t };
        case comparator::GT: return { t + eps };
        case comparator::GE: return { t, t + eps };
    }
    throw std::logic_error("unreachable comparator");
}


/// Candidates p * direction for the step parameters p of the last comparator.
void  append_directional_steps(
        iteration_state const&  st,
        solver_config const&  cfg,
        real_vector const&  direction,
        std::vector<real_vector>&  output
        )
{
    double const  dd = direction.squaredNorm();
    double const  t = -st.f_n / dd;
    real_vector const  lifted_direction = st.chain.lifted_top() * direction;
    real_vector const  target = st.current_vector + t * lifted_direction;
    if (!target.allFinite())
        return;
    double const  z = (1.0 - cfg.alpha) * target.cwiseAbs().maxCoeff() + cfg.alpha * std::fabs(st.f_n);
    double const  initial_eps = epsilon_from_value(z);
    double const  eps = std::fabs(epsilon_along_line(target, lifted_direction, initial_eps, st.types).value_or(initial_eps));
    for (double const  p : step_parameters(st.comp_n, t, eps))
        output.push_back(clip(p * direction, st.constraints(), &st.grad_n, cfg.clipping()));
}


}


void  solver_config::validate() const
{
    if (max_iterations == 0U || max_evaluations == 0U || clip_limit == 0U || bit_mut_steps == 0U || samples_per_cube == 0U)
        throw error("solver configuration counts must be positive");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw error("solver configuration alpha must lie in (0,1)");
    if (!(cube_scale >= 0.0) || !std::isfinite(cube_scale))
        throw error("solver configuration cube scale must be finite and non-negative");
}


evaluator::evaluator(coverage_problem const&  problem, std::size_t const  max_evaluations)
    : problem_(&problem)
    , max_evaluations_(max_evaluations)
{}


std::optional<double>  evaluator::call(std::size_t const  index, valuation const&  val)
{
    if (evaluations_ >= max_evaluations_)
        throw budget_exhausted{};
    ++evaluations_;
    return problem_->fns()[index](val);
}


prefix_eval_record  evaluator::evaluate(valuation const&  val)
{
    auto const&  comps = problem_->comps();
    std::size_t const  n = problem_->size();
    prefix_eval_record  record;
    for (std::size_t  i = 0U; i != n; ++i)
    {
        ++record.reached;
        std::optional<double> const  value = call(i, val);
        if (!value.has_value())
        {
            record.diverged_at = i;
            record.call_failed = true;
            return record;
        }
        record.values.push_back(*value);
        bool const  truth = holds(comps[i], *value);
        if (i + 1U == n)
        {
            record.outcome = truth ? prefix_outcome::FULL_TRUE : prefix_outcome::LAST_FALSE;
            return record;
        }
        if (!truth)
        {
            record.diverged_at = i;
            return record;
        }
    }
    return record;
}


std::optional<double>  evaluator::value_at(valuation const&  val, std::size_t const  index)
{
    if (index >= problem_->size())
        throw error("evaluator::value_at: index out of range");
    return call(index, val);
}


iteration_state  build_spaces(
        coverage_problem const&  problem,
        valuation const&  current,
        solver_config const&  cfg,
        evaluator&  ev
        )
{
    (void)cfg;
    iteration_state  st;
    st.current = current;
    st.current_vector = embed(current);
    st.types = current.types();
    st.comp_n = problem.last_comp();
    st.params_n = problem.last_fn().params;
    std::sort(st.params_n.begin(), st.params_n.end());
    st.params_n.erase(std::unique(st.params_n.begin(), st.params_n.end()), st.params_n.end());

    prefix_eval_record const  record = ev.evaluate(current);
    if (record.outcome != prefix_outcome::LAST_FALSE)
        throw problem_error("build_spaces: the valuation does not form a coverage problem");
    st.values = record.values;
    st.f_n = st.values.back();

    st.chain = basis_chain(current.size());
    st.csets = { constraint_set{ 1U, {} } };

    double const  eps_seed = st.current_vector.size() == 0 ? 0.0 : st.current_vector.cwiseAbs().maxCoeff();
    auto const  gradient_of = [&](std::size_t const  index) {
        root_function const  fn = [&ev, &st, index](real_vector const&  point) {
            return ev.value_at(extract(point, st.types), index);
        };
        return finite_diff_gradient(fn, st.current_vector, st.values[index], st.chain.lifted_top(), eps_seed, st.types);
    };

    auto const&  comps = problem.comps();
    for (std::size_t  i = 0U; i + 1U < problem.size() && st.dim() != 0U; ++i)
    {
        real_vector const  grad = gradient_of(i);
        local_basis  next = next_basis(grad, comps[i] != comparator::EQ);

        constraint_set  cs{ st.csets.size() + 1U, {} };
        if (auto  c = make_constraint(comps[i], st.values[i], grad.norm(), next.dim()))
            cs.items.push_back(std::move(*c));
        if (next.dim() != 0U)
            for (constraint const&  c : st.csets.back().items)
                if (auto  transformed = transform_constraint(c, next))
                    cs.items.push_back(std::move(*transformed));

        st.chain.push(std::move(next));
        st.csets.push_back(std::move(cs));
    }

    st.grad_n = st.dim() == 0U ? real_vector() : gradient_of(problem.size() - 1U);
    return st;
}


iteration_state  build_spaces(coverage_problem const&  problem, valuation const&  current, solver_config const&  cfg)
{
    evaluator  ev(problem);
    return build_spaces(problem, current, cfg, ev);
}


std::string_view  to_string(candidate_source const  source)
{
    switch (source)
    {
        case candidate_source::GRADIENT_STEP: return "grad-step";
        case candidate_source::BIT_MUTATION: return "bit-mut";
        case candidate_source::RANDOM: return "random";
    }
    throw std::logic_error("unreachable candidate source");
}


std::vector<real_vector>  grad_step_candidates(iteration_state const&  st, solver_config const&  cfg)
{
    std::vector<real_vector>  output;
    if (st.dim() == 0U || !(st.grad_n.squaredNorm() > 0.0))
        return output;
    append_directional_steps(st, cfg, st.grad_n, output);
    for (Eigen::Index  j = 0; j != st.grad_n.size(); ++j)
        if (st.grad_n(j) != 0.0)
            append_directional_steps(st, cfg, st.grad_n(j) * real_vector::Unit(st.grad_n.size(), j), output);
    return output;
}


std::optional<std::size_t>  bit_mutation_pivot(real_matrix const&  lifted, std::size_t const  variable)
{
    Eigen::Index const  row = static_cast<Eigen::Index>(variable);
    std::optional<std::size_t>  pivot;
    double  best = basis_zero_threshold;
    for (Eigen::Index  k = 0; k != lifted.cols(); ++k)
    {
        double const  magnitude = std::fabs(lifted(row, k));
        if (magnitude > best || (!pivot.has_value() && magnitude >= best))
        {
            best = magnitude;
            pivot = static_cast<std::size_t>(k);
        }
    }
    return pivot;
}


void  bit_mutation_pin(
        real_matrix const&  lifted,
        std::size_t const  variable,
        std::size_t const  pivot,
        double const  shift,
        real_vector&  u
        )
{
    Eigen::Index const  row = static_cast<Eigen::Index>(variable);
    Eigen::Index const  p = static_cast<Eigen::Index>(pivot);
    double  rest = 0.0;
    for (Eigen::Index  k = 0; k != u.size(); ++k)
        if (k != p)
            rest += u(k) * lifted(row, k);
    u(p) = (shift - rest) / lifted(row, p);
}


real_vector  bit_mutation_gradient(
        real_matrix const&  lifted,
        std::size_t const  variable,
        std::size_t const  pivot,
        real_vector const&  u
        )
{
    Eigen::Index const  row = static_cast<Eigen::Index>(variable);
    Eigen::Index const  p = static_cast<Eigen::Index>(pivot);
    real_vector  grad = real_vector::Zero(u.size());
    for (Eigen::Index  k = 0; k != u.size(); ++k)
        if (k != p)
            grad(k) = 2.0 * (u(k) - u(p) * lifted(row, k) / lifted(row, p));
    return grad;
}


std::optional<real_vector>  bit_mutation_vector(
        real_matrix const&  lifted,
        std::size_t const  variable,
        double const  shift,
        std::size_t const  steps
        )
{
    std::optional<std::size_t> const  pivot = bit_mutation_pivot(lifted, variable);
    if (!pivot.has_value())
        return std::nullopt;
    real_vector const  target = shift * real_vector::Unit(lifted.rows(), static_cast<Eigen::Index>(variable));
    real_vector  u = shift * real_vector::Unit(lifted.cols(), static_cast<Eigen::Index>(*pivot));
    for (std::size_t  step = 0U; step != steps; ++step)
    {
        real_vector const  grad = bit_mutation_gradient(lifted, variable, *pivot, u);
        double const  gg = grad.squaredNorm();
        if (gg > 0.0)
            u += (-(lifted * u - target).squaredNorm() / gg) * grad;
        bit_mutation_pin(lifted, variable, *pivot, shift, u);
        if (!(gg > 0.0))
            break;
    }
    return u;
}


std::vector<real_vector>  bit_mutation_candidates(iteration_state const&  st, solver_config const&  cfg)
{
    std::vector<real_vector>  output;
    if (st.dim() == 0U)
        return output;
    real_matrix const&  lifted = st.chain.lifted_top();
    for (std::size_t const  var : st.params_n)
    {
        scalar_value const&  value = st.current[var];
        // Adding +-2^(j-1) flips bit j only in integer arithmetic.
        if (!value.type().is_integer())
            continue;
        std::uint64_t const  bits = value.bits();
        for (unsigned  j = 0U; j != value.type().bit_width; ++j)
        {
            double const  shift = ((bits >> j) & 1U) != 0U ? -std::ldexp(1.0, (int)j) : std::ldexp(1.0, (int)j);
            if (auto  u = bit_mutation_vector(lifted, var, shift, cfg.bit_mut_steps))
                if (u->allFinite())
                    output.push_back(std::move(*u));
        }
    }
    return output;
}


std::vector<real_vector>  random_candidates(iteration_state const&  st, solver_config const&  cfg, std::mt19937_64&  rng)
{
    std::vector<real_vector>  output;
    Eigen::Index const  dim = static_cast<Eigen::Index>(st.dim());
    if (dim == 0)
        return output;

    std::vector<real_vector>  centers{ real_vector::Zero(dim) };
    double const  gg = st.grad_n.squaredNorm();
    if (gg > 0.0)
    {
        real_vector  g = -(st.f_n / gg) * st.grad_n;
        if (g.allFinite())
            centers.push_back(std::move(g));
    }

    double const  half_edge = cfg.cube_scale * std::log(std::fabs(st.f_n) + 1.0);
    std::uniform_real_distribution<double>  unit(-1.0, 1.0);
    for (real_vector const&  center : centers)
        for (std::size_t  s = 0U; s != cfg.samples_per_cube; ++s)
        {
            real_vector  u = center;
            for (Eigen::Index  k = 0; k != dim; ++k)
                u(k) += half_edge * unit(rng);
            output.push_back(clip(u, st.constraints(), &st.grad_n, cfg.clipping()));
            output.push_back(std::move(u));
        }
    return output;
}


bool  improves(comparator const  cmp, double const  old_val, double const  new_val)
{
    switch (cmp)
    {
        case comparator::EQ: return std::fabs(new_val) < std::fabs(old_val);
        case comparator::NEQ: return std::fabs(new_val) > std::fabs(old_val);
        case comparator::LT:
        case comparator::LE: return new_val < old_val;
        case comparator::GT:
        case comparator::GE: return new_val > old_val;
    }
    throw std::logic_error("unreachable comparator");
}


std::string_view  to_string(solver_status const  status)
{
    switch (status)
    {
        case solver_status::SOLVED: return "SOLVED";
        case solver_status::FAILED_NO_PROGRESS: return "FAILED_NO_PROGRESS";
        case solver_status::FAILED_BUDGET: return "FAILED_BUDGET";
    }
    throw std::logic_error("unreachable solver status");
}


solver_result  solve(coverage_problem const&  problem, solver_config const&  cfg)
{
    cfg.validate();
    if (!validate(problem.fns(), problem.comps(), problem.init()))
        throw problem_error("solve: not a coverage problem");

    solver_result  result;
    evaluator  ev(problem, cfg.max_evaluations);
    std::mt19937_64  rng(cfg.rng_seed);
    valuation  current = problem.init();
    signature const  types = current.types();

    try
    {
        for (std::size_t  iteration = 0U; iteration != cfg.max_iterations; ++iteration)
        {
            ++result.iterations_used;
            iteration_state const  st = build_spaces(problem, current, cfg, ev);
            if (iteration == 0U)
                result.initial_f_value = st.f_n;

            std::vector<candidate>  candidates;
            for (real_vector&  u : grad_step_candidates(st, cfg))
                candidates.push_back({ std::move(u), candidate_source::GRADIENT_STEP });
            for (real_vector&  u : bit_mutation_candidates(st, cfg))
                candidates.push_back({ std::move(u), candidate_source::BIT_MUTATION });
            for (real_vector&  u : random_candidates(st, cfg, rng))
                candidates.push_back({ std::move(u), candidate_source::RANDOM });

            bool  accepted = false;
            for (std::size_t  idx = 0U; idx != candidates.size() && !accepted; ++idx)
            {
                real_vector const  point = st.current_vector + st.chain.lifted_top() * candidates[idx].vector;
                if (!point.allFinite())
                    continue;
                valuation  next = extract(point, types);
                if (next == current)
                    continue;
                prefix_eval_record const  record = ev.evaluate(next);
                if (record.outcome == prefix_outcome::DIVERGED)
                    continue;
                double const  f_value = record.values.back();
                bool const  solved = record.outcome == prefix_outcome::FULL_TRUE;
                if (!solved && !improves(st.comp_n, st.f_n, f_value))
                    continue;

                result.log.push_back({ iteration + 1U, candidates[idx].source, idx, candidates.size(), f_value });
                current = std::move(next);
                accepted = true;
                if (solved)
                {
                    result.status = solver_status::SOLVED;
                    result.solution = current;
                    result.evaluations_used = ev.evaluations();
                    return result;
                }
            }
            if (!accepted)
            {
                result.status = solver_status::FAILED_NO_PROGRESS;
                result.evaluations_used = ev.evaluations();
                return result;
            }
        }
        result.status = solver_status::FAILED_BUDGET;
    }
    catch (evaluator::budget_exhausted const&)
    {
        result.status = solver_status::FAILED_BUDGET;
    }
    result.evaluations_used = ev.evaluations();
    return result;
}


}
