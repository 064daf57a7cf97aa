#ifndef COVSOLVE_CONSTRAINTS_HPP_INCLUDED
#   define COVSOLVE_CONSTRAINTS_HPP_INCLUDED

#   include <covsolve/localspace.hpp>
#   include <covsolve/vecspace.hpp>
#   include <optional>
#   include <vector>

namespace  covsolve {


/// Denominators below this skip a projection.
inline constexpr double  projection_zero_threshold = 1e-12;

inline constexpr std::size_t  default_clip_rounds = 10U;


/// Set of vectors u with `comp(normal . (u - offset * normal), 0)`.
struct  constraint
{
    real_vector  normal;
    double  offset{ 0.0 };
    comparator  comp{ comparator::LE };

    /// normal . (u - offset * normal)
    double  residual(real_vector const&  u) const;
};


struct  constraint_set
{
    std::size_t  level{ 1U };
    std::vector<constraint>  items;
};


bool  satisfies(real_vector const&  u, constraint const&  c);
bool  satisfies(real_vector const&  u, constraint_set const&  cs);

/// Half-space kept by a non-EQ prefix predicate whose function has value
/// `f_val` and gradient norm `grad_norm`; the normal is the last axis of a
/// space of dimension `new_dim`. None for EQ or a zero gradient.
std::optional<constraint>  make_constraint(comparator  comp, double  f_val, double  grad_norm, std::size_t  new_dim);

/// Re-expresses `c` in the space spanned by `basis`. None when the normal is
/// orthogonal to that space.
std::optional<constraint>  transform_constraint(constraint const&  c, local_basis const&  basis);


struct  clip_options
{
    std::size_t  max_rounds{ default_clip_rounds };
    /// Project along the part of the normal orthogonal to the gradient in the
    /// first round.
    bool  tangent_projection{ true };
};

struct  clip_result
{
    real_vector  vector;
    std::size_t  rounds{ 0U };
    bool  satisfied{ false };
};

/// Iterated projection of `u` into the constraint half-spaces. May return a
/// still violating vector when `max_rounds` is exhausted. Throws `error` on an
/// EQ constraint.
clip_result  clip_detailed(
        real_vector const&  u,
        constraint_set const&  cs,
        real_vector const*  grad = nullptr,
        clip_options const&  options = {}
        );

real_vector  clip(
        real_vector const&  u,
        constraint_set const&  cs,
        real_vector const*  grad = nullptr,
        clip_options const&  options = {}
        );


}

#endif
