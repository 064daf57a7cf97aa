#include <covsolve/probelang.hpp>
#include <charconv>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>

namespace  covsolve {
namespace  {


enum struct  token_kind
{
    NUMBER,
    IDENT,
    SYMBOL,
    END
};


struct  token
{
    token_kind  kind{ token_kind::END };
    std::string  text;
    double  number{ 0.0 };
};


std::vector<token>  tokenize(std::string_view const  text, std::size_t const  line)
{
    std::vector<token>  tokens;
    std::size_t  i = 0U;
    while (i < text.size())
    {
        char const  c = text[i];
        if (std::isspace(static_cast<unsigned char>(c)))
        {
            ++i;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
        {
            std::size_t  j = i + 1U;
            while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            tokens.push_back({ token_kind::IDENT, std::string(text.substr(i, j - i)), 0.0 });
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
        {
            double  value = 0.0;
            auto const  result = std::from_chars(text.data() + i, text.data() + text.size(), value);
            if (result.ec != std::errc{} || !std::isfinite(value))
                throw parse_error(line, "malformed number near '" + std::string(text.substr(i)) + "'");
            std::size_t const  j = static_cast<std::size_t>(result.ptr - text.data());
            if (j < text.size() && (std::isalpha(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                throw parse_error(line, "malformed number near '" + std::string(text.substr(i)) + "'");
            tokens.push_back({ token_kind::NUMBER, std::string(text.substr(i, j - i)), value });
            i = j;
            continue;
        }
        static constexpr std::string_view  two_char[] = { "==", "!=", "<=", ">=" };
        bool  matched = false;
        for (std::string_view const  sym : two_char)
            if (text.substr(i, 2U) == sym)
            {
                tokens.push_back({ token_kind::SYMBOL, std::string(sym), 0.0 });
                i += 2U;
                matched = true;
                break;
            }
        if (matched)
            continue;
        if (std::string_view("+-*/(),<>:=").find(c) != std::string_view::npos)
        {
            tokens.push_back({ token_kind::SYMBOL, std::string(1U, c), 0.0 });
            ++i;
            continue;
        }
        throw parse_error(line, std::string("unexpected character '") + c + "'");
    }
    tokens.push_back({ token_kind::END, "", 0.0 });
    return tokens;
}


std::optional<scalar_type>  type_name(std::string const&  name)
{
    try
    {
        return parse_scalar_type(name);
    }
    catch (error const&)
    {
        return std::nullopt;
    }
}


class  expr_parser
{
public:
    expr_parser(std::vector<token>  tokens, std::vector<std::string> const&  names, std::size_t const  line)
        : tokens_(std::move(tokens)), names_(names), line_(line)
    {}

    dist_expr  expression()
    {
        dist_expr  lhs = term();
        while (peek_symbol("+") || peek_symbol("-"))
        {
            expr_kind const  kind = next().text == "+" ? expr_kind::ADD : expr_kind::SUB;
            lhs = dist_expr::binary(kind, lhs, term());
        }
        return lhs;
    }

    token const&  peek() const { return tokens_[pos_]; }
    token const&  next() { return tokens_[pos_++]; }
    bool  at_end() const { return peek().kind == token_kind::END; }

    bool  peek_symbol(std::string_view const  sym) const
    {
        return peek().kind == token_kind::SYMBOL && peek().text == sym;
    }

    void  expect_symbol(std::string_view const  sym)
    {
        if (!peek_symbol(sym))
            fail("expected '" + std::string(sym) + "'");
        ++pos_;
    }

    [[noreturn]] void  fail(std::string const&  message) const
    {
        std::string const  found = at_end() ? "end of line" : "'" + peek().text + "'";
        throw parse_error(line_, message + ", found " + found);
    }

private:
    dist_expr  term()
    {
        dist_expr  lhs = unary();
        while (peek_symbol("*") || peek_symbol("/"))
        {
            expr_kind const  kind = next().text == "*" ? expr_kind::MUL : expr_kind::DIV;
            lhs = dist_expr::binary(kind, lhs, unary());
        }
        return lhs;
    }

    dist_expr  unary()
    {
        if (peek_symbol("-"))
        {
            ++pos_;
            if (peek().kind == token_kind::NUMBER)
                return dist_expr::literal(-next().number);
            return dist_expr::unary(expr_kind::NEGATE, unary());
        }
        return primary();
    }

    dist_expr  primary()
    {
        token const  t = peek();
        if (t.kind == token_kind::NUMBER)
        {
            ++pos_;
            return dist_expr::literal(t.number);
        }
        if (peek_symbol("("))
        {
            ++pos_;
            dist_expr  inner = expression();
            expect_symbol(")");
            return inner;
        }
        if (t.kind != token_kind::IDENT)
            fail("expected an expression");
        ++pos_;
        if (peek_symbol("("))
        {
            ++pos_;
            std::vector<dist_expr>  args{ expression() };
            while (peek_symbol(","))
            {
                ++pos_;
                args.push_back(expression());
            }
            expect_symbol(")");
            return call(t.text, std::move(args));
        }
        for (std::size_t  i = 0U; i != names_.size(); ++i)
            if (names_[i] == t.text)
                return dist_expr::variable(i);
        throw parse_error(line_, "unknown variable '" + t.text + "'");
    }

    dist_expr  call(std::string const&  name, std::vector<dist_expr>  args)
    {
        auto const  check_arity = [&](std::size_t const  n) {
            if (args.size() != n)
                throw parse_error(line_, "'" + name + "' takes " + std::to_string(n) + " argument(s)");
        };
        if (name == "abs")
        {
            check_arity(1U);
            return dist_expr::unary(expr_kind::ABS, args[0]);
        }
        if (name == "min" || name == "max")
        {
            check_arity(2U);
            return dist_expr::binary(name == "min" ? expr_kind::MIN : expr_kind::MAX, args[0], args[1]);
        }
        if (auto const  type = type_name(name))
        {
            check_arity(1U);
            return dist_expr::cast(*type, args[0]);
        }
        throw parse_error(line_, "unknown function '" + name + "'");
    }

    std::vector<token>  tokens_;
    std::vector<std::string> const&  names_;
    std::size_t  line_;
    std::size_t  pos_{ 0U };
};


std::string  number_text(double const  value)
{
    char  buffer[64];
    auto const  result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    std::string  text(buffer, result.ptr);
    if (text == "-0")
        return "-0.0";
    return text;
}


int  precedence(expr_kind const  kind)
{
    switch (kind)
    {
        case expr_kind::ADD:
        case expr_kind::SUB: return 1;
        case expr_kind::MUL:
        case expr_kind::DIV: return 2;
        case expr_kind::NEGATE: return 3;
        default: return 4;
    }
}


std::string  print_node(dist_expr const&  e, std::vector<std::string> const&  names)
{
    switch (e.kind())
    {
        case expr_kind::LITERAL: return number_text(e.literal_value());
        case expr_kind::VARIABLE: return names.at(e.variable_index());
        case expr_kind::NEGATE:
        {
            dist_expr const&  operand = e.operand(0U);
            std::string const  inner = print_node(operand, names);
            bool const  wrap = operand.kind() == expr_kind::LITERAL || precedence(operand.kind()) < 3;
            return "-" + (wrap ? "(" + inner + ")" : inner);
        }
        case expr_kind::ADD:
        case expr_kind::SUB:
        case expr_kind::MUL:
        case expr_kind::DIV:
        {
            int const  prec = precedence(e.kind());
            std::string  lhs = print_node(e.operand(0U), names);
            std::string  rhs = print_node(e.operand(1U), names);
            if (precedence(e.operand(0U).kind()) < prec)
                lhs = "(" + lhs + ")";
            if (precedence(e.operand(1U).kind()) <= prec)
                rhs = "(" + rhs + ")";
            char const  op = e.kind() == expr_kind::ADD ? '+' : e.kind() == expr_kind::SUB ? '-' : e.kind() == expr_kind::MUL ? '*' : '/';
            return lhs + " " + op + " " + rhs;
        }
        case expr_kind::ABS: return "abs(" + print_node(e.operand(0U), names) + ")";
        case expr_kind::MIN:
        case expr_kind::MAX:
            return std::string(e.kind() == expr_kind::MIN ? "min(" : "max(") + print_node(e.operand(0U), names) + ", "
                   + print_node(e.operand(1U), names) + ")";
        case expr_kind::CAST: return to_string(e.cast_type()) + "(" + print_node(e.operand(0U), names) + ")";
    }
    throw std::logic_error("unreachable expression kind");
}


std::optional<double>  apply_cast(scalar_type const  type, double const  x)
{
    if (type.kind == scalar_kind::FLOAT)
    {
        if (type.bit_width == 64U)
            return x;
        if (std::fabs(x) > static_cast<double>(std::numeric_limits<float>::max()))
            return std::nullopt;
        return static_cast<double>(static_cast<float>(x));
    }
    double const  truncated = std::trunc(x);
    double const  lo = type.kind == scalar_kind::SIGNED_INT ? -std::ldexp(1.0, (int)type.bit_width - 1) : 0.0;
    double const  hi = type.kind == scalar_kind::SIGNED_INT ? std::ldexp(1.0, (int)type.bit_width - 1)
                                                            : std::ldexp(1.0, (int)type.bit_width);
    if (truncated < lo || truncated >= hi)
        return std::nullopt;
    return truncated + 0.0;
}


std::optional<double>  eval_node(dist_expr const&  e, valuation const&  val)
{
    auto const  finite = [](double const  x) -> std::optional<double> {
        if (!std::isfinite(x))
            return std::nullopt;
        return x;
    };
    switch (e.kind())
    {
        case expr_kind::LITERAL: return finite(e.literal_value());
        case expr_kind::VARIABLE: return finite(val[e.variable_index()].as_real());
        case expr_kind::NEGATE:
        case expr_kind::ABS:
        case expr_kind::CAST:
        {
            std::optional<double> const  a = eval_node(e.operand(0U), val);
            if (!a.has_value())
                return std::nullopt;
            if (e.kind() == expr_kind::NEGATE)
                return -*a;
            if (e.kind() == expr_kind::ABS)
                return std::fabs(*a);
            return apply_cast(e.cast_type(), *a);
        }
        default:
            break;
    }
    std::optional<double> const  a = eval_node(e.operand(0U), val);
    if (!a.has_value())
        return std::nullopt;
    std::optional<double> const  b = eval_node(e.operand(1U), val);
    if (!b.has_value())
        return std::nullopt;
    switch (e.kind())
    {
        case expr_kind::ADD: return finite(*a + *b);
        case expr_kind::SUB: return finite(*a - *b);
        case expr_kind::MUL: return finite(*a * *b);
        case expr_kind::DIV:
            if (*b == 0.0)
                return std::nullopt;
            return finite(*a / *b);
        case expr_kind::MIN: return std::min(*a, *b);
        case expr_kind::MAX: return std::max(*a, *b);
        default: break;
    }
    throw std::logic_error("unreachable expression kind");
}


void  collect_variables(dist_expr const&  e, std::set<std::size_t>&  vars)
{
    if (e.kind() == expr_kind::VARIABLE)
        vars.insert(e.variable_index());
    for (std::size_t  i = 0U; i != e.arity(); ++i)
        collect_variables(e.operand(i), vars);
}


scalar_value  parse_init_value(scalar_type const  type, std::string_view  text, std::size_t const  line)
{
    auto const  bad = [&]() {
        return parse_error(line, "'" + std::string(text) + "' is not a valid " + to_string(type) + " value");
    };
    if (type.kind == scalar_kind::FLOAT)
    {
        double  value = 0.0;
        auto const  result = std::from_chars(text.data(), text.data() + text.size(), value);
        if (result.ec != std::errc{} || result.ptr != text.data() + text.size() || !std::isfinite(value))
            throw bad();
        return scalar_value::nearest(type, value);
    }
    try
    {
        if (type.kind == scalar_kind::SIGNED_INT)
        {
            std::int64_t  value = 0;
            auto const  result = std::from_chars(text.data(), text.data() + text.size(), value);
            if (result.ec != std::errc{} || result.ptr != text.data() + text.size())
                throw bad();
            return scalar_value::of_signed(type, value);
        }
        std::uint64_t  value = 0U;
        auto const  result = std::from_chars(text.data(), text.data() + text.size(), value);
        if (result.ec != std::errc{} || result.ptr != text.data() + text.size())
            throw bad();
        return scalar_value::of_unsigned(type, value);
    }
    catch (parse_error const&)
    {
        throw;
    }
    catch (error const&)
    {
        throw bad();
    }
}


std::string_view  trim(std::string_view  s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1U);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1U);
    return s;
}


bool  is_identifier(std::string_view const  s)
{
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s.front())) || s.front() == '_'))
        return false;
    for (char const  c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
            return false;
    return true;
}


bool  is_reserved(std::string_view const  s)
{
    return s == "abs" || s == "min" || s == "max" || s == "var" || s == "init" || s == "abe"
           || type_name(std::string(s)).has_value();
}


}


dist_expr  dist_expr::literal(double const  value)
{
    auto  n = std::make_shared<node>();
    n->kind = expr_kind::LITERAL;
    n->value = value;
    return dist_expr(std::move(n));
}


dist_expr  dist_expr::variable(std::size_t const  index)
{
    auto  n = std::make_shared<node>();
    n->kind = expr_kind::VARIABLE;
    n->index = index;
    return dist_expr(std::move(n));
}


dist_expr  dist_expr::unary(expr_kind const  kind, dist_expr  operand)
{
    if (kind != expr_kind::NEGATE && kind != expr_kind::ABS)
        throw error("dist_expr::unary: not a unary operator");
    auto  n = std::make_shared<node>();
    n->kind = kind;
    n->operands.push_back(std::move(operand));
    return dist_expr(std::move(n));
}


dist_expr  dist_expr::binary(expr_kind const  kind, dist_expr  lhs, dist_expr  rhs)
{
    switch (kind)
    {
        case expr_kind::ADD:
        case expr_kind::SUB:
        case expr_kind::MUL:
        case expr_kind::DIV:
        case expr_kind::MIN:
        case expr_kind::MAX:
            break;
        default:
            throw error("dist_expr::binary: not a binary operator");
    }
    auto  n = std::make_shared<node>();
    n->kind = kind;
    n->operands.push_back(std::move(lhs));
    n->operands.push_back(std::move(rhs));
    return dist_expr(std::move(n));
}


dist_expr  dist_expr::cast(scalar_type const  type, dist_expr  operand)
{
    auto  n = std::make_shared<node>();
    n->kind = expr_kind::CAST;
    n->type = type;
    n->operands.push_back(std::move(operand));
    return dist_expr(std::move(n));
}


bool  operator==(dist_expr const&  lhs, dist_expr const&  rhs)
{
    if (lhs.node_ == rhs.node_)
        return true;
    if (lhs.kind() != rhs.kind() || lhs.arity() != rhs.arity())
        return false;
    switch (lhs.kind())
    {
        case expr_kind::LITERAL:
            return std::signbit(lhs.literal_value()) == std::signbit(rhs.literal_value())
                   && lhs.literal_value() == rhs.literal_value();
        case expr_kind::VARIABLE: return lhs.variable_index() == rhs.variable_index();
        case expr_kind::CAST:
            if (!(lhs.cast_type() == rhs.cast_type()))
                return false;
            break;
        default: break;
    }
    for (std::size_t  i = 0U; i != lhs.arity(); ++i)
        if (!(lhs.operand(i) == rhs.operand(i)))
            return false;
    return true;
}


std::optional<double>  eval_expr(dist_expr const&  e, valuation const&  val)
{
    return eval_node(e, val);
}


std::set<std::size_t>  referenced_variables(dist_expr const&  e)
{
    std::set<std::size_t>  vars;
    collect_variables(e, vars);
    return vars;
}


dist_expr  parse_expr(std::string_view const  text, std::vector<std::string> const&  names, std::size_t const  line)
{
    expr_parser  parser(tokenize(text, line), names, line);
    dist_expr  e = parser.expression();
    if (!parser.at_end())
        parser.fail("unexpected trailing input");
    return e;
}


std::string  print_expr(dist_expr const&  e, std::vector<std::string> const&  names)
{
    return print_node(e, names);
}


std::vector<std::string>  problem_spec::names() const
{
    std::vector<std::string>  result;
    for (variable_decl const&  v : variables)
        result.push_back(v.name);
    return result;
}


bool  operator==(problem_spec const&  lhs, problem_spec const&  rhs)
{
    if (lhs.variables != rhs.variables || lhs.abes.size() != rhs.abes.size() || !(lhs.init == rhs.init))
        return false;
    for (std::size_t  i = 0U; i != lhs.abes.size(); ++i)
        if (lhs.abes[i].comp != rhs.abes[i].comp || !(lhs.abes[i].expr == rhs.abes[i].expr))
            return false;
    return true;
}


problem_spec  parse_problem(std::string_view const  text)
{
    problem_spec  spec;
    std::vector<std::optional<scalar_value>>  init;
    std::map<std::string, std::size_t, std::less<>>  index_of;
    std::size_t  line_no = 0U;
    std::size_t  start = 0U;
    while (start <= text.size())
    {
        std::size_t  end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view  line = text.substr(start, end - start);
        start = end + 1U;
        ++line_no;

        if (std::size_t const  hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0U, hash);
        line = trim(line);
        if (line.empty())
            continue;

        std::size_t const  space = line.find_first_of(" \t");
        std::string_view const  keyword = line.substr(0U, space);
        std::string_view const  rest = space == std::string_view::npos ? std::string_view{} : trim(line.substr(space));

        if (keyword == "var")
        {
            std::size_t const  colon = rest.find(':');
            if (colon == std::string_view::npos)
                throw parse_error(line_no, "expected 'var <id> : <type>'");
            std::string const  name(trim(rest.substr(0U, colon)));
            std::string const  type_text(trim(rest.substr(colon + 1U)));
            if (!is_identifier(name) || is_reserved(name))
                throw parse_error(line_no, "invalid variable name '" + name + "'");
            if (index_of.count(name) != 0U)
                throw parse_error(line_no, "variable '" + name + "' declared twice");
            std::optional<scalar_type> const  type = type_name(type_text);
            if (!type.has_value())
                throw parse_error(line_no, "unknown type '" + type_text + "'");
            index_of.emplace(name, spec.variables.size());
            spec.variables.push_back({ name, *type });
            init.emplace_back();
        }
        else if (keyword == "init")
        {
            std::size_t const  eq = rest.find('=');
            if (eq == std::string_view::npos)
                throw parse_error(line_no, "expected 'init <id> = <literal>'");
            std::string_view const  name = trim(rest.substr(0U, eq));
            std::string_view const  literal = trim(rest.substr(eq + 1U));
            auto const  it = index_of.find(name);
            if (it == index_of.end())
                throw parse_error(line_no, "unknown variable '" + std::string(name) + "'");
            if (init[it->second].has_value())
                throw parse_error(line_no, "variable '" + std::string(name) + "' initialized twice");
            init[it->second] = parse_init_value(spec.variables[it->second].type, literal, line_no);
        }
        else if (keyword == "abe")
        {
            std::vector<std::string> const  names = spec.names();
            expr_parser  parser(tokenize(rest, line_no), names, line_no);
            dist_expr  e = parser.expression();
            token const  cmp = parser.next();
            comparator  comp;
            try
            {
                if (cmp.kind != token_kind::SYMBOL)
                    throw error("");
                comp = parse_comparator(cmp.text);
            }
            catch (error const&)
            {
                throw parse_error(line_no, "expected a comparator after the expression, found '" + cmp.text + "'");
            }
            token const  zero = parser.next();
            if (zero.kind != token_kind::NUMBER || zero.number != 0.0 || !parser.at_end())
                throw parse_error(line_no, "an ABE must compare against 0");
            spec.abes.push_back({ std::move(e), comp, line_no });
        }
        else
            throw parse_error(line_no, "unknown declaration '" + std::string(keyword) + "'");
    }

    if (spec.abes.empty())
        throw parse_error(line_no, "no ABE declared");
    std::vector<scalar_value>  values;
    for (std::size_t  i = 0U; i != init.size(); ++i)
    {
        if (!init[i].has_value())
            throw parse_error(line_no, "variable '" + spec.variables[i].name + "' has no initial value");
        values.push_back(*init[i]);
    }
    spec.init = valuation{ std::move(values) };
    return spec;
}


std::string  print_problem(problem_spec const&  spec)
{
    std::vector<std::string> const  names = spec.names();
    std::string  text;
    for (variable_decl const&  v : spec.variables)
        text += "var " + v.name + " : " + to_string(v.type) + "\n";
    for (std::size_t  i = 0U; i != spec.variables.size(); ++i)
        text += "init " + spec.variables[i].name + " = " + spec.init[i].to_string() + "\n";
    for (abe_spec const&  abe : spec.abes)
        text += "abe " + print_expr(abe.expr, names) + " " + std::string(to_string(abe.comp)) + " 0\n";
    return text;
}


problem_spec  prefix_spec(problem_spec const&  spec, std::size_t const  count)
{
    if (count == 0U || count > spec.abes.size())
        throw error("prefix length must be between 1 and " + std::to_string(spec.abes.size()));
    problem_spec  result = spec;
    if (count == spec.abes.size())
        return result;
    result.abes.erase(result.abes.begin() + static_cast<std::ptrdiff_t>(count), result.abes.end());
    result.abes.back().comp = opposite(result.abes.back().comp);
    return result;
}


coverage_problem  compile(problem_spec const&  spec)
{
    std::vector<black_box_fn>  fns;
    std::vector<comparator>  comps;
    for (abe_spec const&  abe : spec.abes)
    {
        std::set<std::size_t> const  vars = referenced_variables(abe.expr);
        black_box_fn  fn;
        fn.params.assign(vars.begin(), vars.end());
        fn.eval = [e = abe.expr](valuation const&  val) { return eval_expr(e, val); };
        fns.push_back(std::move(fn));
        comps.push_back(abe.comp);
    }
    return coverage_problem(std::move(fns), std::move(comps), spec.init, spec.names());
}


}
