#include <covsolve/vecspace.hpp>
#include <charconv>
#include <cmath>
#include <limits>

namespace  covsolve {
namespace  {


double  signed_min(unsigned  width) { return -std::ldexp(1.0, (int)width - 1); }
double  signed_max(unsigned  width) { return std::ldexp(1.0, (int)width - 1) - 1.0; }
double  unsigned_max(unsigned  width) { return std::ldexp(1.0, (int)width) - 1.0; }

std::int64_t  signed_min_int(unsigned  width)
{
    return width == 64U ? std::numeric_limits<std::int64_t>::min() : -(std::int64_t{ 1 } << (width - 1U));
}

std::int64_t  signed_max_int(unsigned  width)
{
    return width == 64U ? std::numeric_limits<std::int64_t>::max() : (std::int64_t{ 1 } << (width - 1U)) - 1;
}

std::uint64_t  unsigned_max_int(unsigned  width)
{
    return width == 64U ? std::numeric_limits<std::uint64_t>::max() : (std::uint64_t{ 1 } << width) - 1U;
}


float  nearest_float(double  x)
{
    constexpr double  max_float = std::numeric_limits<float>::max();
    if (x >= max_float)
        return std::numeric_limits<float>::max();
    if (x <= -max_float)
        return std::numeric_limits<float>::lowest();
    float const  f = static_cast<float>(x);
    if (static_cast<double>(f) == x)
        return f;
    // The conversion rounds half to even; re-break exact ties away from zero.
    float const  other = std::nextafter(f, x > static_cast<double>(f) ? std::numeric_limits<float>::infinity()
                                                                    : -std::numeric_limits<float>::infinity());
    if (std::isfinite(other) && std::fabs(x - static_cast<double>(other)) == std::fabs(x - static_cast<double>(f)))
        return std::fabs(other) > std::fabs(f) ? other : f;
    return f;
}


template <typename T>
std::string  number_to_string(T  value)
{
    char  buffer[64];
    auto const  result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}


}


bool  scalar_type::is_valid() const
{
    if (kind == scalar_kind::FLOAT)
        return bit_width == 32U || bit_width == 64U;
    return bit_width == 8U || bit_width == 16U || bit_width == 32U || bit_width == 64U;
}


scalar_type  make_scalar_type(scalar_kind const  kind, unsigned const  bit_width)
{
    scalar_type const  type{ kind, bit_width };
    if (!type.is_valid())
        throw error("invalid scalar type bit width " + std::to_string(bit_width));
    return type;
}


scalar_type  parse_scalar_type(std::string_view const  name)
{
    if (name.size() < 2U)
        throw error("unknown type '" + std::string(name) + "'");
    scalar_kind  kind;
    switch (name.front())
    {
        case 'i': kind = scalar_kind::SIGNED_INT; break;
        case 'u': kind = scalar_kind::UNSIGNED_INT; break;
        case 'f': kind = scalar_kind::FLOAT; break;
        default: throw error("unknown type '" + std::string(name) + "'");
    }
    unsigned  width = 0U;
    auto const  digits = name.substr(1U);
    auto const  result = std::from_chars(digits.data(), digits.data() + digits.size(), width);
    if (result.ec != std::errc{} || result.ptr != digits.data() + digits.size())
        throw error("unknown type '" + std::string(name) + "'");
    scalar_type const  type{ kind, width };
    if (!type.is_valid())
        throw error("unknown type '" + std::string(name) + "'");
    return type;
}


std::string  to_string(scalar_type const  type)
{
    char const  prefix = type.kind == scalar_kind::SIGNED_INT ? 'i' : type.kind == scalar_kind::UNSIGNED_INT ? 'u' : 'f';
    return prefix + std::to_string(type.bit_width);
}


comparator  opposite(comparator const  cmp)
{
    switch (cmp)
    {
        case comparator::EQ: return comparator::NEQ;
        case comparator::NEQ: return comparator::EQ;
        case comparator::LT: return comparator::GE;
        case comparator::LE: return comparator::GT;
        case comparator::GT: return comparator::LE;
        case comparator::GE: return comparator::LT;
    }
    throw std::logic_error("unreachable comparator");
}


bool  holds(comparator const  cmp, double const  a)
{
    if (!std::isfinite(a))
        throw std::invalid_argument("comparator applied to a non-finite value");
    switch (cmp)
    {
        case comparator::EQ: return a == 0.0;
        case comparator::NEQ: return a != 0.0;
        case comparator::LT: return a < 0.0;
        case comparator::LE: return a <= 0.0;
        case comparator::GT: return a > 0.0;
        case comparator::GE: return a >= 0.0;
    }
    throw std::logic_error("unreachable comparator");
}


std::string_view  to_string(comparator const  cmp)
{
    switch (cmp)
    {
        case comparator::EQ: return "==";
        case comparator::NEQ: return "!=";
        case comparator::LT: return "<";
        case comparator::LE: return "<=";
        case comparator::GT: return ">";
        case comparator::GE: return ">=";
    }
    throw std::logic_error("unreachable comparator");
}


comparator  parse_comparator(std::string_view const  text)
{
    if (text == "==") return comparator::EQ;
    if (text == "!=") return comparator::NEQ;
    if (text == "<") return comparator::LT;
    if (text == "<=") return comparator::LE;
    if (text == ">") return comparator::GT;
    if (text == ">=") return comparator::GE;
    throw error("unknown comparator '" + std::string(text) + "'");
}


scalar_value  scalar_value::of_signed(scalar_type const  type, std::int64_t const  value)
{
    if (type.kind != scalar_kind::SIGNED_INT || !type.is_valid())
        throw error("of_signed: not a signed integer type");
    if (value < signed_min_int(type.bit_width) || value > signed_max_int(type.bit_width))
        throw error("value " + std::to_string(value) + " out of range of " + covsolve::to_string(type));
    scalar_value  result;
    result.type_ = type;
    result.value_ = value;
    return result;
}


scalar_value  scalar_value::of_unsigned(scalar_type const  type, std::uint64_t const  value)
{
    if (type.kind != scalar_kind::UNSIGNED_INT || !type.is_valid())
        throw error("of_unsigned: not an unsigned integer type");
    if (value > unsigned_max_int(type.bit_width))
        throw error("value " + std::to_string(value) + " out of range of " + covsolve::to_string(type));
    scalar_value  result;
    result.type_ = type;
    result.value_ = value;
    return result;
}


scalar_value  scalar_value::of_float(scalar_type const  type, double const  value)
{
    if (type.kind != scalar_kind::FLOAT || !type.is_valid())
        throw error("of_float: not a floating point type");
    if (!std::isfinite(value))
        throw error("non-finite floating point value");
    if (type.bit_width == 32U && static_cast<double>(static_cast<float>(value)) != value)
        throw error("value is not representable as f32");
    scalar_value  result;
    result.type_ = type;
    result.value_ = value;
    return result;
}


scalar_value  scalar_value::nearest(scalar_type const  type, double const  x)
{
    if (!std::isfinite(x))
        throw error("cannot extract a value from a non-finite coordinate");
    switch (type.kind)
    {
        case scalar_kind::SIGNED_INT:
        {
            if (x <= signed_min(type.bit_width))
                return of_signed(type, signed_min_int(type.bit_width));
            if (x >= signed_max(type.bit_width))
                return of_signed(type, signed_max_int(type.bit_width));
            double const  r = std::round(x);
            if (r >= signed_max(type.bit_width))
                return of_signed(type, signed_max_int(type.bit_width));
            return of_signed(type, static_cast<std::int64_t>(r));
        }
        case scalar_kind::UNSIGNED_INT:
        {
            if (x <= 0.0)
                return of_unsigned(type, 0U);
            if (x >= unsigned_max(type.bit_width))
                return of_unsigned(type, unsigned_max_int(type.bit_width));
            double const  r = std::round(x);
            if (r >= unsigned_max(type.bit_width))
                return of_unsigned(type, unsigned_max_int(type.bit_width));
            return of_unsigned(type, static_cast<std::uint64_t>(r));
        }
        case scalar_kind::FLOAT:
            if (type.bit_width == 32U)
                return of_float(type, static_cast<double>(nearest_float(x)));
            return of_float(type, x);
    }
    throw std::logic_error("unreachable scalar kind");
}


double  scalar_value::as_real() const
{
    return std::visit([](auto const  v) { return static_cast<double>(v); }, value_);
}


std::uint64_t  scalar_value::bits() const
{
    std::uint64_t const  mask = type_.bit_width == 64U ? ~std::uint64_t{ 0 } : (std::uint64_t{ 1 } << type_.bit_width) - 1U;
    switch (type_.kind)
    {
        case scalar_kind::SIGNED_INT: return static_cast<std::uint64_t>(as_signed()) & mask;
        case scalar_kind::UNSIGNED_INT: return as_unsigned();
        case scalar_kind::FLOAT: break;
    }
    throw error("bits() of a floating point value");
}


std::string  scalar_value::to_string() const
{
    switch (type_.kind)
    {
        case scalar_kind::SIGNED_INT: return std::to_string(as_signed());
        case scalar_kind::UNSIGNED_INT: return std::to_string(as_unsigned());
        case scalar_kind::FLOAT:
            if (type_.bit_width == 32U)
                return number_to_string(static_cast<float>(as_float()));
            return number_to_string(as_float());
    }
    throw std::logic_error("unreachable scalar kind");
}


double  next_representable(scalar_type const  type, double const  value, double const  sign)
{
    if (sign == 0.0)
        return value;
    double const  inf = sign > 0.0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
    if (type.kind == scalar_kind::FLOAT)
    {
        if (type.bit_width == 32U)
        {
            float const  next = std::nextafter(static_cast<float>(value), static_cast<float>(inf));
            return std::isfinite(next) ? static_cast<double>(next) : value;
        }
        double const  next = std::nextafter(value, inf);
        return std::isfinite(next) ? next : value;
    }
    double  next = value + (sign > 0.0 ? 1.0 : -1.0);
    if (next == value)
        next = std::nextafter(value, inf);
    double const  lo = type.kind == scalar_kind::SIGNED_INT ? signed_min(type.bit_width) : 0.0;
    double const  hi = type.kind == scalar_kind::SIGNED_INT ? signed_max(type.bit_width) : unsigned_max(type.bit_width);
    if (next < lo || next > hi)
        return value;
    return next;
}


signature  valuation::types() const
{
    signature  sig;
    sig.reserve(values_.size());
    for (auto const&  v : values_)
        sig.push_back(v.type());
    return sig;
}


real_vector  embed(valuation const&  val)
{
    real_vector  v(static_cast<Eigen::Index>(val.size()));
    for (std::size_t  i = 0U; i != val.size(); ++i)
        v(static_cast<Eigen::Index>(i)) = val[i].as_real();
    return v;
}


valuation  extract(real_vector const&  v, signature const&  sig)
{
    if (static_cast<std::size_t>(v.size()) != sig.size())
        throw error("extract: dimension does not match the signature");
    std::vector<scalar_value>  values;
    values.reserve(sig.size());
    for (std::size_t  i = 0U; i != sig.size(); ++i)
        values.push_back(scalar_value::nearest(sig[i], v(static_cast<Eigen::Index>(i))));
    return valuation{ std::move(values) };
}


real_vector  round_to_types(real_vector const&  v, signature const&  sig)
{
    return embed(extract(v, sig));
}


}
