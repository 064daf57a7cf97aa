#include <covsolve/constraints.hpp>
#include <covsolve/numerics.hpp>
#include <cmath>

namespace  covsolve {
namespace  {


double  shift(comparator const  comp, double const  eps)
{
    switch (comp)
    {
        case comparator::NEQ: return eps;
        case comparator::LT: return -eps;
        case comparator::LE: return 0.0;
        case comparator::GT: return eps;
        case comparator::GE: return 0.0;
        case comparator::EQ: break;
    }
    throw error("clip: EQ constraints are not supported");
}


}


double  constraint::residual(real_vector const&  u) const
{
    return normal.dot(u) - offset * normal.squaredNorm();
}


bool  satisfies(real_vector const&  u, constraint const&  c)
{
    if (u.size() != c.normal.size())
        throw error("satisfies: dimension mismatch");
    double const  r = c.residual(u);
    return std::isfinite(r) && holds(c.comp, r);
}


bool  satisfies(real_vector const&  u, constraint_set const&  cs)
{
    for (constraint const&  c : cs.items)
        if (!satisfies(u, c))
            return false;
    return true;
}


std::optional<constraint>  make_constraint(
        comparator const  comp,
        double const  f_val,
        double const  grad_norm,
        std::size_t const  new_dim
        )
{
    if (comp == comparator::EQ || !(grad_norm > 0.0) || new_dim == 0U)
        return std::nullopt;
    Eigen::Index const  dim = static_cast<Eigen::Index>(new_dim);
    return constraint{ real_vector::Unit(dim, dim - 1), -f_val / grad_norm, comp };
}


std::optional<constraint>  transform_constraint(constraint const&  c, local_basis const&  basis)
{
    real_vector const  m = project_to_level(c.normal, basis);
    real_vector const  back = basis.vectors * m;
    double const  nn_back = c.normal.dot(back);
    if (nn_back == 0.0)
        return std::nullopt;
    return constraint{ m, c.offset * c.normal.squaredNorm() / nn_back, c.comp };
}


clip_result  clip_detailed(
        real_vector const&  u,
        constraint_set const&  cs,
        real_vector const*  grad,
        clip_options const&  options
        )
{
    for (constraint const&  c : cs.items)
    {
        if (c.comp == comparator::EQ)
            throw error("clip: EQ constraints are not supported");
        if (c.normal.size() != u.size())
            throw error("clip: dimension mismatch");
    }

    bool const  use_tangent = options.tangent_projection && grad != nullptr && grad->squaredNorm() > 0.0;
    clip_result  result{ u, 0U, false };
    real_vector&  v = result.vector;
    for (std::size_t  round = 0U; round != options.max_rounds; ++round)
    {
        if (satisfies(v, cs))
        {
            result.satisfied = true;
            return result;
        }
        ++result.rounds;
        for (constraint const&  c : cs.items)
        {
            if (satisfies(v, c))
                continue;
            double const  nn = c.normal.squaredNorm();
            real_vector  direction;
            double  scale;
            double  coord;
            if (round == 0U && use_tangent)
            {
                direction = c.normal - (c.normal.dot(*grad) / grad->squaredNorm()) * (*grad);
                double const  nm = c.normal.dot(direction);
                if (std::fabs(nm) < projection_zero_threshold)
                    continue;
                coord = v.dot(c.normal) / nm;
                scale = c.offset * nn / nm;
            }
            else
            {
                if (nn < projection_zero_threshold)
                    continue;
                direction = c.normal;
                coord = v.dot(c.normal) / nn;
                scale = c.offset;
            }
            double const  eps = epsilon_from_value(coord);
            real_vector  projected = v + (scale - coord + shift(c.comp, eps)) * direction;
            // Rounding may leave a non-strict projection just outside the half-space.
            if (!satisfies(projected, c) && (c.comp == comparator::LE || c.comp == comparator::GE))
                projected = v + (scale - coord + shift(c.comp == comparator::LE ? comparator::LT : comparator::GT, eps)) * direction;
            v = std::move(projected);
        }
    }
    result.satisfied = satisfies(v, cs);
    return result;
}


real_vector  clip(
        real_vector const&  u,
        constraint_set const&  cs,
        real_vector const*  grad,
        clip_options const&  options
        )
{
    return clip_detailed(u, cs, grad, options).vector;
}


}
