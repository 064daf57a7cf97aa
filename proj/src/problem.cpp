#include <covsolve/problem.hpp>
#include <algorithm>
#include <cmath>
#include <memory>

namespace  covsolve {
namespace  {


std::vector<std::string>  default_names(std::size_t const  count)
{
    std::vector<std::string>  names;
    for (std::size_t  i = 0U; i != count; ++i)
        names.push_back("x" + std::to_string(i + 1U));
    return names;
}


bool  intersects(std::set<std::size_t> const&  set, std::vector<std::size_t> const&  items)
{
    return std::any_of(items.begin(), items.end(), [&set](std::size_t const  x) { return set.count(x) != 0U; });
}


bool  contains_all(std::set<std::size_t> const&  set, std::vector<std::size_t> const&  items)
{
    return std::all_of(items.begin(), items.end(), [&set](std::size_t const  x) { return set.count(x) != 0U; });
}


}


std::optional<double>  black_box_fn::operator()(valuation const&  val) const
{
    std::optional<double> const  result = eval(val);
    if (!result.has_value() || !std::isfinite(*result))
        return std::nullopt;
    return result;
}


prefix_eval_record  eval_prefix(
        std::vector<black_box_fn> const&  fns,
        std::vector<comparator> const&  comps,
        valuation const&  val
        )
{
    prefix_eval_record  record;
    std::size_t const  n = fns.size();
    for (std::size_t  i = 0U; i != n; ++i)
    {
        ++record.reached;
        std::optional<double> const  value = fns[i](val);
        if (!value.has_value())
        {
            record.outcome = prefix_outcome::DIVERGED;
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
            record.outcome = prefix_outcome::DIVERGED;
            record.diverged_at = i;
            return record;
        }
    }
    return record;
}


valuation  extension_map::extend(valuation const&  reduced) const
{
    if (reduced.size() != kept_variables.size())
        throw error("extend: valuation size does not match the reduced problem");
    valuation  result = base;
    for (std::size_t  i = 0U; i != kept_variables.size(); ++i)
        result[kept_variables[i]] = reduced[i];
    return result;
}


valuation  extension_map::restrict(valuation const&  original) const
{
    std::vector<scalar_value>  values;
    for (std::size_t const  idx : kept_variables)
        values.push_back(original[idx]);
    return valuation{ std::move(values) };
}


std::vector<std::size_t>  extension_map::dropped_abes() const
{
    std::vector<std::size_t>  dropped;
    std::size_t const  total = kept_abes.empty() ? 0U : kept_abes.back() + 1U;
    for (std::size_t  i = 0U; i != total; ++i)
        if (std::find(kept_abes.begin(), kept_abes.end(), i) == kept_abes.end())
            dropped.push_back(i);
    return dropped;
}


bool  validate(std::vector<black_box_fn> const&  fns, std::vector<comparator> const&  comps, valuation const&  init)
{
    if (fns.empty())
        throw problem_error("a coverage problem needs at least one ABE");
    if (fns.size() != comps.size())
        throw problem_error("number of functions and comparators differ");
    if (fns.back().params.empty())
        return false;
    return eval_prefix(fns, comps, init).outcome == prefix_outcome::LAST_FALSE;
}


coverage_problem::coverage_problem(
        std::vector<black_box_fn>  fns,
        std::vector<comparator>  comps,
        valuation  init,
        std::vector<std::string>  variable_names
        )
    : fns_(std::move(fns))
    , comps_(std::move(comps))
    , init_(std::move(init))
    , names_(variable_names.empty() ? default_names(init_.size()) : std::move(variable_names))
    , extension_()
{
    if (fns_.empty())
        throw problem_error("a coverage problem needs at least one ABE");
    if (fns_.size() != comps_.size())
        throw problem_error("number of functions and comparators differ");
    if (names_.size() != init_.size())
        throw problem_error("number of variable names and initial values differ");
    for (std::size_t  i = 0U; i != fns_.size(); ++i)
    {
        if (!fns_[i].eval)
            throw problem_error("ABE " + std::to_string(i + 1U) + " has no function", i);
        for (std::size_t const  p : fns_[i].params)
            if (p >= init_.size())
                throw problem_error("ABE " + std::to_string(i + 1U) + " references an unknown variable", i);
    }
    if (fns_.back().params.empty())
        throw problem_error("the last ABE has no parameters", fns_.size() - 1U);

    prefix_eval_record const  record = eval_prefix(fns_, comps_, init_);
    switch (record.outcome)
    {
        case prefix_outcome::LAST_FALSE:
            break;
        case prefix_outcome::FULL_TRUE:
            throw problem_error("not a coverage problem: the last ABE already holds at the initial valuation",
                                fns_.size() - 1U);
        case prefix_outcome::DIVERGED:
            throw problem_error("not a coverage problem: ABE " + std::to_string(record.diverged_at + 1U)
                                    + (record.call_failed ? " fails to evaluate" : " does not hold")
                                    + " at the initial valuation",
                                record.diverged_at);
    }
}


bool  is_solution(coverage_problem const&  problem, valuation const&  val)
{
    return eval_prefix(problem.fns(), problem.comps(), val).outcome == prefix_outcome::FULL_TRUE;
}


std::set<std::size_t>  dependency_closure(coverage_problem const&  problem)
{
    auto const&  fns = problem.fns();
    std::set<std::size_t>  closure(fns.back().params.begin(), fns.back().params.end());
    for (bool  changed = true; changed; )
    {
        changed = false;
        for (std::size_t  i = 0U; i + 1U < fns.size(); ++i)
            if (intersects(closure, fns[i].params) && !contains_all(closure, fns[i].params))
            {
                closure.insert(fns[i].params.begin(), fns[i].params.end());
                changed = true;
            }
    }
    return closure;
}


reduction  reduce(coverage_problem const&  problem)
{
    std::set<std::size_t> const  closure = dependency_closure(problem);
    auto const&  fns = problem.fns();

    extension_map  ext;
    ext.kept_variables.assign(closure.begin(), closure.end());
    ext.base = problem.init();
    for (std::size_t  i = 0U; i != fns.size(); ++i)
        if (i + 1U == fns.size() || intersects(closure, fns[i].params))
            ext.kept_abes.push_back(i);

    if (ext.kept_abes.size() == fns.size() && ext.kept_variables.size() == problem.num_variables())
    {
        coverage_problem  same = problem;
        same.extension_ = ext;
        return { std::move(same), std::move(ext) };
    }

    std::vector<std::size_t>  new_index(problem.num_variables(), problem.num_variables());
    for (std::size_t  i = 0U; i != ext.kept_variables.size(); ++i)
        new_index[ext.kept_variables[i]] = i;

    auto const  shared_ext = std::make_shared<extension_map const>(ext);
    std::vector<black_box_fn>  reduced_fns;
    std::vector<comparator>  reduced_comps;
    for (std::size_t const  i : ext.kept_abes)
    {
        black_box_fn  fn;
        for (std::size_t const  p : fns[i].params)
            fn.params.push_back(new_index[p]);
        fn.eval = [original = fns[i].eval, shared_ext](valuation const&  val) {
            return original(shared_ext->extend(val));
        };
        reduced_fns.push_back(std::move(fn));
        reduced_comps.push_back(problem.comps()[i]);
    }
    std::vector<std::string>  names;
    for (std::size_t const  v : ext.kept_variables)
        names.push_back(problem.variable_names()[v]);

    coverage_problem  reduced(std::move(reduced_fns), std::move(reduced_comps), ext.restrict(problem.init()), std::move(names));
    reduced.extension_ = ext;
    return { std::move(reduced), std::move(ext) };
}


coverage_problem  problem_from_trace(
        std::vector<executed_abe> const&  trace,
        valuation  init,
        std::vector<std::string>  variable_names
        )
{
    std::vector<black_box_fn>  fns;
    std::vector<comparator>  comps;
    for (std::size_t  i = 0U; i != trace.size(); ++i)
    {
        bool const  last = i + 1U == trace.size();
        bool const  flip = last ? trace[i].outcome : !trace[i].outcome;
        fns.push_back(trace[i].fn);
        comps.push_back(flip ? opposite(trace[i].cmp) : trace[i].cmp);
    }
    return coverage_problem(std::move(fns), std::move(comps), std::move(init), std::move(variable_names));
}


}
