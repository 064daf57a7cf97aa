#include <covsolve/localspace.hpp>
#include <cmath>

namespace  covsolve {
namespace  {


/// Components are rounded to multiples of 2^-40 so that coordinates equal in
/// exact arithmetic stay bitwise equal after rounding noise.
void  snap(real_matrix&  m)
{
    double const  grid = std::ldexp(1.0, -40);
    m = m.unaryExpr([grid](double const  x) { return std::round(x / grid) * grid; });
}


}


local_basis  root_basis(std::size_t const  dim)
{
    if (dim == 0U)
        throw error("root_basis: dimension must be positive");
    return { 1U, real_matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)) };
}


local_basis  next_basis(real_vector const&  grad, bool const  keep_gradient_axis, std::size_t const  level)
{
    Eigen::Index const  dim = grad.size();
    double const  grad_norm = grad.norm();
    if (grad_norm == 0.0)
        return { level, real_matrix::Identity(dim, dim) };

    real_vector const  unit_grad = grad / grad_norm;
    std::vector<real_vector>  emitted;
    for (Eigen::Index  j = 0; j != dim && static_cast<Eigen::Index>(emitted.size()) + 1 < dim; ++j)
    {
        real_vector  w = real_vector::Unit(dim, j);
        // Two passes: classical Gram-Schmidt loses orthogonality in one.
        for (int  pass = 0; pass != 2; ++pass)
        {
            w -= w.dot(unit_grad) * unit_grad;
            for (real_vector const&  v : emitted)
                w -= w.dot(v) * v;
        }
        double const  norm = w.norm();
        if (norm >= basis_zero_threshold)
            emitted.push_back(w / norm);
    }
    if (keep_gradient_axis)
        emitted.push_back(unit_grad);

    local_basis  basis{ level, real_matrix(dim, static_cast<Eigen::Index>(emitted.size())) };
    for (std::size_t  k = 0U; k != emitted.size(); ++k)
        basis.vectors.col(static_cast<Eigen::Index>(k)) = emitted[k];
    snap(basis.vectors);
    return basis;
}


real_vector  project_to_level(real_vector const&  w, local_basis const&  basis)
{
    if (w.size() != basis.vectors.rows())
        throw error("project_to_level: dimension mismatch");
    return basis.vectors.transpose() * w;
}


basis_chain::basis_chain(std::size_t const  root_dim)
    : bases_{ root_basis(root_dim) }
    , lifted_{ bases_.front().vectors }
{}


void  basis_chain::push(local_basis  basis)
{
    if (basis.parent_dim() != top().dim())
        throw error("basis_chain::push: basis does not live in the top space");
    basis.level = bases_.size() + 1U;
    real_matrix  lifted = lifted_.back() * basis.vectors;
    snap(lifted);
    lifted_.push_back(std::move(lifted));
    bases_.push_back(std::move(basis));
}


local_basis const&  basis_chain::basis(std::size_t const  level) const
{
    if (level == 0U || level > bases_.size())
        throw error("basis_chain: level out of range");
    return bases_[level - 1U];
}


real_matrix const&  basis_chain::lifted(std::size_t const  level) const
{
    if (level == 0U || level > lifted_.size())
        throw error("basis_chain: level out of range");
    return lifted_[level - 1U];
}


real_vector  basis_chain::lift(real_vector const&  u, std::size_t const  level) const
{
    real_matrix const&  m = lifted(level);
    if (u.size() != m.cols())
        throw error("basis_chain::lift: dimension mismatch");
    return m * u;
}


}
