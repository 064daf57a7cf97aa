#ifndef COVSOLVE_PROBLEM_HPP_INCLUDED
#   define COVSOLVE_PROBLEM_HPP_INCLUDED

#   include <covsolve/vecspace.hpp>
#   include <functional>
#   include <optional>
#   include <set>
#   include <string>
#   include <vector>

namespace  covsolve {


/// Signed distance of one atomic Boolean expression. The callable receives the
/// whole valuation but must depend only on the variables listed in `params`.
/// An empty optional models a failed call (the valuation lies outside the
/// function's domain).
struct  black_box_fn
{
    using  callable = std::function<std::optional<double>(valuation const&)>;

    std::vector<std::size_t>  params;
    callable  eval;

    /// Calls `eval`; NaN and infinite results are reported as failures.
    std::optional<double>  operator()(valuation const&  val) const;
};


/// Thrown when the inputs do not form a coverage problem. `index` is the
/// offending ABE (0-based) when one can be named.
struct  problem_error : error
{
    problem_error(std::string const&  message, std::optional<std::size_t>  index_ = std::nullopt)
        : error(message), index(index_)
    {}

    std::optional<std::size_t>  index;
};


enum struct  prefix_outcome
{
    FULL_TRUE,
    DIVERGED,
    LAST_FALSE
};


struct  prefix_eval_record
{
    /// Number of black-box calls made; the last call was to F_reached.
    std::size_t  reached{ 0U };
    /// Values obtained by successful calls, in call order.
    std::vector<double>  values;
    prefix_outcome  outcome{ prefix_outcome::DIVERGED };
    /// 0-based index of the diverging ABE when outcome is DIVERGED.
    std::size_t  diverged_at{ 0U };
    bool  call_failed{ false };
};


/// Calls fns[0], fns[1], ... in order and stops at the first failed call or
/// false predicate before the last one.
prefix_eval_record  eval_prefix(
        std::vector<black_box_fn> const&  fns,
        std::vector<comparator> const&  comps,
        valuation const&  val
        );


/// Maps a solution of a reduced problem back to the variables of the problem
/// it was reduced from.
struct  extension_map
{
    /// Original index of each variable of the reduced problem.
    std::vector<std::size_t>  kept_variables;
    /// Original index of each ABE of the reduced problem.
    std::vector<std::size_t>  kept_abes;
    /// Original initial valuation; supplies values of dropped variables.
    valuation  base;

    valuation  extend(valuation const&  reduced) const;
    valuation  restrict(valuation const&  original) const;
    std::vector<std::size_t>  dropped_abes() const;
};


struct  reduction;
class  coverage_problem;
reduction  reduce(coverage_problem const&  problem);


class  coverage_problem
{
public:
    /// Throws problem_error unless (fns, comps, init) is a coverage problem.
    coverage_problem(
            std::vector<black_box_fn>  fns,
            std::vector<comparator>  comps,
            valuation  init,
            std::vector<std::string>  variable_names = {}
            );

    std::size_t  size() const { return fns_.size(); }
    std::size_t  num_variables() const { return init_.size(); }

    std::vector<black_box_fn> const&  fns() const { return fns_; }
    std::vector<comparator> const&  comps() const { return comps_; }
    valuation const&  init() const { return init_; }
    signature  types() const { return init_.types(); }
    std::vector<std::string> const&  variable_names() const { return names_; }

    /// Present when this problem was produced by `reduce`.
    std::optional<extension_map> const&  extension() const { return extension_; }

    black_box_fn const&  last_fn() const { return fns_.back(); }
    comparator  last_comp() const { return comps_.back(); }

private:
    friend reduction  reduce(coverage_problem const&  problem);

    std::vector<black_box_fn>  fns_;
    std::vector<comparator>  comps_;
    valuation  init_;
    std::vector<std::string>  names_;
    std::optional<extension_map>  extension_;
};


/// True iff eval_prefix yields LAST_FALSE at `init` and the last function has
/// at least one parameter. Throws problem_error on size mismatch.
bool  validate(std::vector<black_box_fn> const&  fns, std::vector<comparator> const&  comps, valuation const&  init);

bool  is_solution(coverage_problem const&  problem, valuation const&  val);

std::set<std::size_t>  dependency_closure(coverage_problem const&  problem);


struct  reduction
{
    coverage_problem  problem;
    extension_map  extension;
};

reduction  reduce(coverage_problem const&  problem);


/// One ABE as it was executed: its signed distance, the comparator as written
/// in the program, and the Boolean value it evaluated to.
struct  executed_abe
{
    black_box_fn  fn;
    comparator  cmp;
    bool  outcome;
};

/// Builds the coverage problem targeting the last executed ABE: prefix ABEs that
/// evaluated to false and a last ABE that evaluated to true get the opposite
/// comparator.
coverage_problem  problem_from_trace(
        std::vector<executed_abe> const&  trace,
        valuation  init,
        std::vector<std::string>  variable_names = {}
        );


}

#endif
