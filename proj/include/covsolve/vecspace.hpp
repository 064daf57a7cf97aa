#ifndef COVSOLVE_VECSPACE_HPP_INCLUDED
#   define COVSOLVE_VECSPACE_HPP_INCLUDED

#   include <Eigen/Dense>
#   include <cstdint>
#   include <stdexcept>
#   include <string>
#   include <string_view>
#   include <variant>
#   include <vector>

namespace  covsolve {


using  real_vector = Eigen::VectorXd;
using  real_matrix = Eigen::MatrixXd;


struct  error : std::runtime_error
{
    using std::runtime_error::runtime_error;
};


enum struct  scalar_kind
{
    SIGNED_INT,
    UNSIGNED_INT,
    FLOAT
};


/// Numeric type of an input variable. Booleans are modelled as unsigned 8-bit
/// integers restricted to {0,1}.
struct  scalar_type
{
    scalar_kind  kind{ scalar_kind::SIGNED_INT };
    unsigned  bit_width{ 32U };

    bool  is_integer() const { return kind != scalar_kind::FLOAT; }
    bool  is_valid() const;

    friend bool  operator==(scalar_type const&, scalar_type const&) = default;
};

scalar_type  make_scalar_type(scalar_kind  kind, unsigned  bit_width);

/// Parses the short names i8..i64, u8..u64, f32, f64.
scalar_type  parse_scalar_type(std::string_view  name);
std::string  to_string(scalar_type  type);


enum struct  comparator
{
    EQ,
    NEQ,
    LT,
    LE,
    GT,
    GE
};

comparator  opposite(comparator  cmp);

/// Truth of `a cmp 0`. Throws std::invalid_argument for non-finite `a`.
bool  holds(comparator  cmp, double  a);

std::string_view  to_string(comparator  cmp);
comparator  parse_comparator(std::string_view  text);


/// A concrete value stored exactly in the range of its declared type.
class  scalar_value
{
public:
    scalar_value() = default;

    static scalar_value  of_signed(scalar_type  type, std::int64_t  value);
    static scalar_value  of_unsigned(scalar_type  type, std::uint64_t  value);
    static scalar_value  of_float(scalar_type  type, double  value);

    /// The member of `type` nearest to `x`, ties away from zero, out of range
    /// values clamp to the type's extremes. Throws `error` for non-finite x.
    static scalar_value  nearest(scalar_type  type, double  x);

    scalar_type  type() const { return type_; }
    double  as_real() const;

    /// Two's complement bit pattern, zero-extended to 64 bits. Integers only.
    std::uint64_t  bits() const;

    std::int64_t  as_signed() const { return std::get<std::int64_t>(value_); }
    std::uint64_t  as_unsigned() const { return std::get<std::uint64_t>(value_); }
    double  as_float() const { return std::get<double>(value_); }

    std::string  to_string() const;

    friend bool  operator==(scalar_value const&, scalar_value const&) = default;

private:
    scalar_type  type_{};
    std::variant<std::int64_t, std::uint64_t, double>  value_{ std::int64_t{ 0 } };
};

/// Next member of `type` after `value` in the direction of `sign` (> 0 up,
/// < 0 down); returns `value` itself when no such member exists.
double  next_representable(scalar_type  type, double  value, double  sign);


using  signature = std::vector<scalar_type>;


/// Assignment of values to the variables x_1..x_k, indexed by position.
class  valuation
{
public:
    valuation() = default;
    explicit valuation(std::vector<scalar_value>  values) : values_(std::move(values)) {}

    std::size_t  size() const { return values_.size(); }
    bool  empty() const { return values_.empty(); }

    scalar_value const&  operator[](std::size_t  i) const { return values_.at(i); }
    scalar_value&  operator[](std::size_t  i) { return values_.at(i); }

    std::vector<scalar_value> const&  values() const { return values_; }
    signature  types() const;

    friend bool  operator==(valuation const&, valuation const&) = default;

private:
    std::vector<scalar_value>  values_;
};


real_vector  embed(valuation const&  val);

/// Nearest valuation of signature `sig`. Throws `error` on a non-finite
/// coordinate or a dimension mismatch.
valuation  extract(real_vector const&  v, signature const&  sig);

/// Componentwise rounding to the types of `sig`, kept as reals.
real_vector  round_to_types(real_vector const&  v, signature const&  sig);


}

#endif
