#ifndef COVSOLVE_NUMERICS_HPP_INCLUDED
#   define COVSOLVE_NUMERICS_HPP_INCLUDED

#   include <covsolve/vecspace.hpp>
#   include <functional>
#   include <optional>
#   include <vector>

namespace  covsolve {


/// Significand digits of a 64-bit float.
inline constexpr int  float64_digits = 53;


/// Writing a = m * 2^n with 0.5 < |m| <= 1, returns 2^(n - floor(53/2)).
/// Zero uses n = 0. The result never underflows to zero, so a + result != a.
double  epsilon_from_value(double  a);


/// One point sampled on the line origin + eps * direction.
struct  line_sample
{
    double  epsilon{ 0.0 };
    real_vector  point;
    real_vector  rounded;
    double  step_length{ 0.0 };
    double  line_distance{ 0.0 };
};


/// Samples 2 * dim points on the line, starting at origin + initial_eps *
/// direction and advancing each time to the nearest next representable value
/// of some coordinate. Returns the samples in generation order.
std::vector<line_sample>  sample_line(
        real_vector const&  origin,
        real_vector const&  direction,
        double  initial_eps,
        signature const&  sig
        );

/// Among the samples whose rounding differs from the rounded origin, the epsilon
/// of the one minimizing max(step length, distance of its rounding from the
/// line). Empty when no sample changes the rounded origin.
std::optional<double>  epsilon_along_line(
        real_vector const&  origin,
        real_vector const&  direction,
        double  initial_eps,
        signature const&  sig
        );


/// Black-box function evaluated at a point of the root space.
using  root_function = std::function<std::optional<double>(real_vector const&)>;

/// Forward differences of `fn` at `origin` along each column of `axes` (the
/// local axes lifted to the root space). A failing forward step is retried
/// backwards; if that fails too the partial is zero.
real_vector  finite_diff_gradient(
        root_function const&  fn,
        real_vector const&  origin,
        double  origin_value,
        real_matrix const&  axes,
        double  eps_seed,
        signature const&  sig
        );


}

#endif
