#include "hydrogeo/porosity/porosity.hpp"

#include "hydrogeo/constitutive/mechanics.hpp"

#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>

namespace hydrogeo {

Eigen::VectorXd grain_excess(SolidDensityLaw law, double biot, const PorosityReference& ref,
                             const Eigen::VectorXd& pressure, const Eigen::VectorXd& volumetric_strain)
{
    const Index n = ref.porosity.size();
    Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
    if (law == SolidDensityLaw::constant)
        return z;
    for (Index c = 0; c < n; ++c) {
        const double dp = pressure[c] - ref.pressure[c];
        const double de = volumetric_strain[c] - ref.volumetric_strain[c];
        const double phi = ref.porosity[c];
        const double phi_e = ref.effective_porosity[c];
        if (law == SolidDensityLaw::poroelastic)
            z[c] = (biot - phi) * dp / ref.grain_modulus[c] - (1.0 - biot) * de * (1.0 - phi) / (1.0 - phi_e);
        else
            z[c] = (biot - phi_e) * dp / ref.grain_modulus[c] - (1.0 - biot) * de;
    }
    return z;
}

PorosityResult step_porosity(const StructuredGrid& grid, const Eigen::VectorXd& porosity_old,
                             const Eigen::VectorXd& excess_old, const Eigen::VectorXd& excess_new,
                             const FaceVelocities& velocity, double dt)
{
    const Index n = grid.num_cells();
    // Unknown: increment of the scaled soil mass m / rho_s0 = 1 - phi + Z.
    Eigen::VectorXd delta = Eigen::VectorXd::Zero(n);
    const bool moving = (velocity.interior.size() > 0 && velocity.interior.cwiseAbs().maxCoeff() > 0.0) ||
                        (velocity.boundary.size() > 0 && velocity.boundary.cwiseAbs().maxCoeff() > 0.0);
    if (moving) {
        const Eigen::VectorXd mass_old = (1.0 - porosity_old.array() + excess_old.array()).matrix();
        const double v = grid.cell_volume();
        std::vector<Eigen::Triplet<double>> entries;
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
        for (Index c = 0; c < n; ++c)
            entries.emplace_back(static_cast<int>(c), static_cast<int>(c), v / dt);
        const auto& interior = grid.interior_faces();
        for (std::size_t f = 0; f < interior.size(); ++f) {
            const double q = velocity.interior[static_cast<Index>(f)] * interior[f].area;
            const Index up = q >= 0.0 ? interior[f].left : interior[f].right;
            const int l = static_cast<int>(interior[f].left);
            const int r = static_cast<int>(interior[f].right);
            entries.emplace_back(l, static_cast<int>(up), q);
            entries.emplace_back(r, static_cast<int>(up), -q);
            rhs[l] -= q * mass_old[up];
            rhs[r] += q * mass_old[up];
        }
        const auto& boundary = grid.boundary_faces();
        for (std::size_t f = 0; f < boundary.size(); ++f) {
            const double q = velocity.boundary[static_cast<Index>(f)] * boundary[f].area;
            const int c = static_cast<int>(boundary[f].cell);
            entries.emplace_back(c, c, q);
            rhs[c] -= q * mass_old[c];
        }
        Eigen::SparseMatrix<double> a(n, n);
        a.setFromTriplets(entries.begin(), entries.end());
        a.makeCompressed();
        Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(a);
        delta = lu.solve(rhs);
    }

    PorosityResult out;
    out.porosity = porosity_old + (excess_new - excess_old) - delta;
    for (Index c = 0; c < n; ++c) {
        if (!(out.porosity[c] > 0.0 && out.porosity[c] < 1.0)) {
            out.porosity[c] = std::clamp(out.porosity[c], 1e-6, 1.0 - 1e-6);
            ++out.clamped;
        }
    }
    return out;
}

double effective_porosity_rate(double stress_rate, double pressure_rate, double advective_divergence,
                               double hydrate_rate, double grain_modulus, double effective_porosity,
                               double composite_density)
{
    return stress_rate / grain_modulus - effective_porosity * pressure_rate / grain_modulus + advective_divergence -
           hydrate_rate / composite_density;
}

Eigen::VectorXd grain_moduli(const MechanicalParameters& m, const Eigen::VectorXd& youngs)
{
    Eigen::VectorXd b(youngs.size());
    for (Index c = 0; c < b.size(); ++c) {
        b[c] = std::isfinite(m.grain_modulus) ? m.grain_modulus
                                              : drained_bulk_modulus(youngs[c], m.poisson_ratio) / (1.0 - m.biot);
    }
    return b;
}

} // namespace hydrogeo
