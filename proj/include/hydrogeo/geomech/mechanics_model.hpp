#ifndef HYDROGEO_GEOMECH_MECHANICS_MODEL_HPP
#define HYDROGEO_GEOMECH_MECHANICS_MODEL_HPP

#include "hydrogeo/core/boundary.hpp"
#include "hydrogeo/core/grid.hpp"

#include <Eigen/Core>
#include <Eigen/Sparse>

#include <vector>

namespace hydrogeo {

/// Symmetric tensor components in the order xx, yy, zz, xy, yz, xz.
using SymTensor = Eigen::Matrix<double, 6, 1>;

/// Cell-centred elastic fields, tension positive.
struct ElasticField {
    std::vector<SymTensor> strain;
    std::vector<SymTensor> effective_stress;
    std::vector<SymTensor> total_stress;
    Eigen::VectorXd volumetric_strain;
    Eigen::VectorXd deviatoric_stress;  // von Mises magnitude of the effective stress
};

/// Solid velocity projected on face normals, as consumed by the flow and porosity blocks.
struct FaceVelocities {
    Eigen::VectorXd interior;  // left to right
    Eigen::VectorXd boundary;  // outward
};

/**
 * @brief Q1 finite elements for div(sigma) + rho g = 0 with
 * sigma = sigma' - alpha P_eff I and isotropic linear elasticity.
 *
 * 1D columns run in uniaxial strain, 2D in plane strain. Young's modulus,
 * alpha P_eff and density are constant per cell; the Poisson ratio is global.
 */
class MechanicsModel {
public:
    MechanicsModel(const StructuredGrid& grid, std::vector<MechanicsBoundaryCondition> bcs, double poisson);

    /**
     * @brief Displacement for the given cell fields at time t.
     *
     * `density` may be empty (no body force). Throws SolverError when the
     * constraints leave rigid-body modes.
     */
    Eigen::VectorXd solve(const Eigen::VectorXd& youngs, const Eigen::VectorXd& biot_pressure,
                          const Eigen::VectorXd& density, double gravity, double t);

    ElasticField recover(const Eigen::VectorXd& u, const Eigen::VectorXd& youngs,
                         const Eigen::VectorXd& biot_pressure) const;

    /// Global stiffness for the given moduli, before constraints (used for symmetry checks).
    Eigen::SparseMatrix<double> stiffness(const Eigen::VectorXd& youngs) const;

    /// Displacement-independent load: tractions, Biot term and body force.
    Eigen::VectorXd load(const Eigen::VectorXd& biot_pressure, const Eigen::VectorXd& density, double gravity,
                         double t) const;

    int dofs_per_node() const { return grid_.dimension(); }
    Index num_dofs() const { return grid_.num_nodes() * grid_.dimension(); }
    double poisson() const { return poisson_; }
    const StructuredGrid& grid() const { return grid_; }

private:
    void build_element();
    std::vector<Index> element_dofs(Index cell) const;

    const StructuredGrid& grid_;
    std::vector<MechanicsBoundaryCondition> bcs_;
    double poisson_;
    int strain_size_ = 0;
    Eigen::MatrixXd unit_stiffness_;   // element stiffness for E = 1
    Eigen::VectorXd biot_vector_;      // integral of B^T m over an element
    Eigen::MatrixXd center_gradient_;  // shape function gradients at the cell centre, dim x nodes
};

/// Backward-difference solid velocity on face normals; throws std::invalid_argument for dt <= 0.
FaceVelocities sediment_velocity(const StructuredGrid& grid, const Eigen::VectorXd& u_new, const Eigen::VectorXd& u_old,
                                 double dt);

/// Cell-averaged nodal velocity, one row per cell with `dimension` columns.
Eigen::MatrixXd cell_velocity(const StructuredGrid& grid, const Eigen::VectorXd& u_new, const Eigen::VectorXd& u_old,
                              double dt);

} // namespace hydrogeo

#endif
