#ifndef HYDROGEO_ANALYTIC_REFERENCE_HPP
#define HYDROGEO_ANALYTIC_REFERENCE_HPP

#include <Eigen/Core>

namespace hydrogeo {

/**
 * @brief u_t = D u_zz - R u + F on [0, L], u(0) = boundary, u_z(L) = 0, u(z, 0) = initial.
 */
struct DiffusionReactionProblem {
    double diffusivity = 1.0;
    double reaction = 0.0;
    double source = 0.0;
    double boundary_value = 0.0;
    double initial_value = 0.0;
    double length = 1.0;
};

struct ReferenceProfile {
    Eigen::VectorXd z;
    Eigen::VectorXd u;
    /// Linear interpolation between nodes.
    double at(double zq) const;
};

/// Method-of-lines reference: second-order finite differences in z and Crank-Nicolson in time.
ReferenceProfile diffusion_reaction_reference(const DiffusionReactionProblem& p, double t, int nodes = 1001,
                                              int steps = 10000);

} // namespace hydrogeo

#endif
