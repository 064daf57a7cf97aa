#ifndef COVSOLVE_LOCALSPACE_HPP_INCLUDED
#   define COVSOLVE_LOCALSPACE_HPP_INCLUDED

#   include <covsolve/vecspace.hpp>
#   include <vector>

namespace  covsolve {


/// Norms below this are treated as zero when building a basis.
inline constexpr double  basis_zero_threshold = 1e-12;


/// Orthonormal basis of a local space. Column j is the j-th basis vector
/// expressed in coordinates of the previous local space.
struct  local_basis
{
    std::size_t  level{ 1U };
    real_matrix  vectors;

    std::size_t  dim() const { return static_cast<std::size_t>(vectors.cols()); }
    std::size_t  parent_dim() const { return static_cast<std::size_t>(vectors.rows()); }
};


local_basis  root_basis(std::size_t  dim);

/// Basis of the subspace orthogonal to `grad`, followed by grad/|grad| when
/// `keep_gradient_axis` is set. A zero gradient yields the axis basis.
local_basis  next_basis(real_vector const&  grad, bool  keep_gradient_axis, std::size_t  level = 2U);

/// Coordinates of `w` in the space spanned by `basis`.
real_vector  project_to_level(real_vector const&  w, local_basis const&  basis);


/// Chain of local bases B_1..B_k together with each basis lifted to root space.
class  basis_chain
{
public:
    explicit basis_chain(std::size_t  root_dim);

    void  push(local_basis  basis);

    std::size_t  depth() const { return bases_.size(); }
    std::size_t  root_dim() const { return static_cast<std::size_t>(lifted_.front().rows()); }

    local_basis const&  basis(std::size_t  level) const;
    local_basis const&  top() const { return bases_.back(); }

    /// Columns are the basis vectors of `level` in root coordinates.
    real_matrix const&  lifted(std::size_t  level) const;
    real_matrix const&  lifted_top() const { return lifted_.back(); }

    /// Expresses `u`, given in coordinates of `level`, in root coordinates.
    real_vector  lift(real_vector const&  u, std::size_t  level) const;

private:
    std::vector<local_basis>  bases_;
    std::vector<real_matrix>  lifted_;
};


}

#endif
