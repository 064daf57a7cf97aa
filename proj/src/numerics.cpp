#include <covsolve/numerics.hpp>
#include <cmath>
#include <limits>

namespace  covsolve {


double  epsilon_from_value(double const  a)
{
    int  exponent = 0;
    if (a != 0.0)
    {
        double const  mantissa = std::frexp(a, &exponent);
        // frexp normalizes to 0.5 <= |m| < 1; shift exact powers of two to m = +-1.
        if (std::fabs(mantissa) == 0.5)
            --exponent;
    }
    double const  eps = std::ldexp(1.0, exponent - float64_digits / 2);
    return eps > 0.0 ? eps : std::numeric_limits<double>::denorm_min();
}


std::vector<line_sample>  sample_line(
        real_vector const&  origin,
        real_vector const&  direction,
        double const  initial_eps,
        signature const&  sig
        )
{
    double const  dd = direction.squaredNorm();
    std::size_t const  count = 2U * static_cast<std::size_t>(origin.size());
    std::vector<line_sample>  samples;
    if (dd == 0.0 || !std::isfinite(dd))
        return samples;

    real_vector  point = origin + initial_eps * direction;
    for (std::size_t  k = 0U; k != count; ++k)
    {
        if (!point.allFinite())
            break;

        line_sample  s;
        s.point = point;
        s.rounded = round_to_types(point, sig);
        s.epsilon = (point - origin).dot(direction) / dd;
        s.step_length = std::fabs(s.epsilon) * std::sqrt(dd);
        double const  t = (s.rounded - origin).dot(direction) / dd;
        s.line_distance = (s.rounded - (origin + t * direction)).norm();
        samples.push_back(s);

        double  step = std::numeric_limits<double>::infinity();
        for (Eigen::Index  j = 0; j != direction.size(); ++j)
        {
            double const  gj = direction(j);
            if (gj == 0.0)
                continue;
            double const  next = next_representable(sig[static_cast<std::size_t>(j)], s.rounded(j), gj);
            if (next == s.rounded(j))
                continue;
            double const  candidate = (next - point(j)) / gj;
            if (candidate > 0.0 && candidate < step)
                step = candidate;
        }
        if (!(step > 0.0) || !std::isfinite(step))
            break;
        real_vector  next_point = point + step * direction;
        if (next_point == point)
            break;
        point = std::move(next_point);
    }
    return samples;
}


std::optional<double>  epsilon_along_line(
        real_vector const&  origin,
        real_vector const&  direction,
        double const  initial_eps,
        signature const&  sig
        )
{
    real_vector const  rounded_origin = round_to_types(origin, sig);
    std::optional<double>  best_eps;
    double  best_score = std::numeric_limits<double>::infinity();
    for (line_sample const&  s : sample_line(origin, direction, initial_eps, sig))
    {
        if (s.rounded == rounded_origin)
            continue;
        double const  score = std::max(s.step_length, s.line_distance);
        if (score < best_score)
        {
            best_score = score;
            best_eps = s.epsilon;
        }
    }
    return best_eps;
}


real_vector  finite_diff_gradient(
        root_function const&  fn,
        real_vector const&  origin,
        double const  origin_value,
        real_matrix const&  axes,
        double const  eps_seed,
        signature const&  sig
        )
{
    real_vector  gradient = real_vector::Zero(axes.cols());
    double const  initial_eps = epsilon_from_value(eps_seed);
    for (Eigen::Index  j = 0; j != axes.cols(); ++j)
    {
        real_vector const  axis = axes.col(j);
        std::optional<double> const  eps = epsilon_along_line(origin, axis, initial_eps, sig);
        if (!eps.has_value() || *eps == 0.0)
            continue;
        for (double const  step : { *eps, -*eps })
        {
            real_vector const  point = origin + step * axis;
            if (!point.allFinite())
                continue;
            std::optional<double> const  value = fn(point);
            if (value.has_value())
            {
                gradient(j) = (*value - origin_value) / step;
                break;
            }
        }
    }
    return gradient;
}


}
