#ifndef COVSOLVE_PROBELANG_HPP_INCLUDED
#   define COVSOLVE_PROBELANG_HPP_INCLUDED

#   include <covsolve/problem.hpp>
#   include <covsolve/vecspace.hpp>
#   include <memory>
#   include <optional>
#   include <set>
#   include <string>
#   include <string_view>
#   include <vector>

namespace  covsolve {


struct  parse_error : error
{
    parse_error(std::size_t const  line_, std::string const&  message)
        : error("line " + std::to_string(line_) + ": " + message), line(line_)
    {}

    std::size_t  line;
};


enum struct  expr_kind
{
    LITERAL,
    VARIABLE,
    NEGATE,
    ADD,
    SUB,
    MUL,
    DIV,
    ABS,
    MIN,
    MAX,
    CAST
};


/// Immutable signed-distance expression tree.
class  dist_expr
{
public:
    static dist_expr  literal(double  value);
    static dist_expr  variable(std::size_t  index);
    static dist_expr  unary(expr_kind  kind, dist_expr  operand);
    static dist_expr  binary(expr_kind  kind, dist_expr  lhs, dist_expr  rhs);
    static dist_expr  cast(scalar_type  type, dist_expr  operand);

    expr_kind  kind() const { return node_->kind; }
    double  literal_value() const { return node_->value; }
    std::size_t  variable_index() const { return node_->index; }
    scalar_type  cast_type() const { return node_->type; }
    dist_expr const&  operand(std::size_t  i) const { return node_->operands.at(i); }
    std::size_t  arity() const { return node_->operands.size(); }

    friend bool  operator==(dist_expr const&  lhs, dist_expr const&  rhs);

private:
    struct  node
    {
        expr_kind  kind{ expr_kind::LITERAL };
        double  value{ 0.0 };
        std::size_t  index{ 0U };
        scalar_type  type{};
        std::vector<dist_expr>  operands;
    };

    explicit dist_expr(std::shared_ptr<node const>  n) : node_(std::move(n)) {}

    std::shared_ptr<node const>  node_;
};


/// 64-bit float evaluation with integer variables widened. Division by zero
/// and any non-finite intermediate make the call fail.
std::optional<double>  eval_expr(dist_expr const&  e, valuation const&  val);

std::set<std::size_t>  referenced_variables(dist_expr const&  e);

/// Throws parse_error (reported at `line`) on malformed input.
dist_expr  parse_expr(std::string_view  text, std::vector<std::string> const&  names, std::size_t  line = 1U);
std::string  print_expr(dist_expr const&  e, std::vector<std::string> const&  names);


struct  variable_decl
{
    std::string  name;
    scalar_type  type;

    friend bool  operator==(variable_decl const&, variable_decl const&) = default;
};


struct  abe_spec
{
    dist_expr  expr;
    comparator  comp;
    /// Source line, 0 when not parsed from text.
    std::size_t  line{ 0U };
};


/// Textual description of a trace: declarations, ABEs in trace order (the last
/// one is the branch to flip) and the initial valuation.
struct  problem_spec
{
    std::vector<variable_decl>  variables;
    std::vector<abe_spec>  abes;
    valuation  init;

    std::vector<std::string>  names() const;

    /// Structural equality; source lines are ignored.
    friend bool  operator==(problem_spec const&  lhs, problem_spec const&  rhs);
};


problem_spec  parse_problem(std::string_view  text);
std::string  print_problem(problem_spec const&  spec);

/// The first `count` ABEs, with the comparator of the new last ABE negated:
/// it held along the executed path, so flipping it is the coverage target.
problem_spec  prefix_spec(problem_spec const&  spec, std::size_t  count);

/// Throws problem_error (with the offending ABE index) when the spec does not
/// describe a coverage problem.
coverage_problem  compile(problem_spec const&  spec);


}

#endif
