#include "hydrogeo/constitutive/mechanics.hpp"
#include "hydrogeo/core/errors.hpp"
#include "hydrogeo/geomech/mechanics_model.hpp"

#include <doctest.h>

#include <cmath>

using namespace hydrogeo;
using doctest::Approx;

namespace {

MechanicsBoundaryCondition bc(Side side, MechanicsBcType type, int component, double value)
{
    MechanicsBoundaryCondition b;
    b.faces.side = side;
    b.type = type;
    b.component = component;
    b.value = value;
    return b;
}

std::vector<MechanicsBoundaryCondition> rollers(int dim)
{
    std::vector<MechanicsBoundaryCondition> out;
    for (int a = 0; a < dim; ++a) {
        out.push_back(bc(static_cast<Side>(2 * a), MechanicsBcType::displacement, a, 0.0));
        out.push_back(bc(static_cast<Side>(2 * a + 1), MechanicsBcType::displacement, a, 0.0));
    }
    return out;
}

// Nodal field u(x) = F x for a 3 x 3 gradient F, truncated to the grid dimension.
Eigen::VectorXd linear_field(const StructuredGrid& g, const Eigen::Matrix3d& grad)
{
    const int d = g.dimension();
    Eigen::VectorXd u(g.num_nodes() * d);
    for (Index n = 0; n < g.num_nodes(); ++n) {
        const Eigen::Vector3d v = grad * g.node_coordinate(n);
        for (int a = 0; a < d; ++a)
            u[n * d + a] = v[a];
    }
    return u;
}

} // namespace

TEST_CASE("stiffness is symmetric and annihilates rigid translations")
{
    for (int dim : {1, 2, 3}) {
        CAPTURE(dim);
        const StructuredGrid g = build_grid(dim, {3, 2, 2}, {1.5, 1.0, 2.0});
        MechanicsModel m(g, rollers(dim), 0.2);
        Eigen::VectorXd youngs(g.num_cells());
        for (Index c = 0; c < youngs.size(); ++c)
            youngs[c] = 1e9 * (1.0 + 0.1 * static_cast<double>(c));
        const Eigen::SparseMatrix<double> k = m.stiffness(youngs);
        const Eigen::SparseMatrix<double> kt = k.transpose();
        CHECK((k - kt).norm() <= 1e-12 * k.norm());

        Eigen::VectorXd shift = Eigen::VectorXd::Zero(m.num_dofs());
        for (Index n = 0; n < g.num_nodes(); ++n)
            shift[n * dim] = 1e-3;
        CHECK((k * shift).cwiseAbs().maxCoeff() <= 1e-12 * k.norm() * 1e-3);

        const ElasticField f = m.recover(shift, youngs, Eigen::VectorXd::Zero(g.num_cells()));
        for (const SymTensor& s : f.effective_stress)
            CHECK(s.cwiseAbs().maxCoeff() <= 1e-6);
    }
}

TEST_CASE("recovered stresses of hand-evaluated fields")
{
    const StructuredGrid g = build_grid(3, {2, 2, 2}, {1.0, 1.0, 1.0});
    MechanicsModel m(g, rollers(3), 0.2);
    const Eigen::VectorXd youngs = Eigen::VectorXd::Constant(g.num_cells(), 1e9);
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(g.num_cells());
    const auto lame = lame_parameters(1e9, 0.2);
    const double a = 1e-4;

    Eigen::Matrix3d stretch = Eigen::Matrix3d::Zero();
    stretch(0, 0) = a;
    const ElasticField f = m.recover(linear_field(g, stretch), youngs, zero);
    for (std::size_t c = 0; c < f.effective_stress.size(); ++c) {
        CHECK(f.strain[c][0] == Approx(a).epsilon(1e-12));
        CHECK(f.effective_stress[c][0] == Approx((2.0 * lame.shear + lame.lambda) * a).epsilon(1e-12));
        CHECK(f.effective_stress[c][1] == Approx(lame.lambda * a).epsilon(1e-12));
        CHECK(f.effective_stress[c][2] == Approx(lame.lambda * a).epsilon(1e-12));
        CHECK(f.volumetric_strain[static_cast<Index>(c)] == Approx(a).epsilon(1e-12));
    }

    Eigen::Matrix3d shear = Eigen::Matrix3d::Zero();
    shear(0, 1) = a;
    const Eigen::VectorXd pore = Eigen::VectorXd::Constant(g.num_cells(), 2e5);
    const ElasticField s = m.recover(linear_field(g, shear), youngs, pore);
    for (std::size_t c = 0; c < s.effective_stress.size(); ++c) {
        CHECK(s.effective_stress[c][3] == Approx(lame.shear * a).epsilon(1e-12));
        CHECK(std::abs(s.effective_stress[c][0]) <= 1e-6);
        // sigma = sigma' - alpha P I
        CHECK(s.total_stress[c][0] == Approx(-2e5).epsilon(1e-12));
        CHECK(s.total_stress[c][3] == Approx(lame.shear * a).epsilon(1e-12));
    }
}

TEST_CASE("uniform pore load in a fully confined box does not move it")
{
    const StructuredGrid g = build_grid(2, {3, 3, 1}, {1.0, 1.0, 1.0});
    MechanicsModel m(g, rollers(2), 0.25);
    const Eigen::VectorXd u = m.solve(Eigen::VectorXd::Constant(g.num_cells(), 1e9),
                                      Eigen::VectorXd::Constant(g.num_cells(), 1e6), {}, 0.0, 0.0);
    CHECK(u.cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("column under its own weight")
{
    // u(x) = -rho g (L x - x^2 / 2) / M with the base at x = 0 and a free top
    const double length = 10.0, rho = 2000.0, grav = 9.81, e = 1e8, nu = 0.3;
    const StructuredGrid g = build_grid(1, {40, 1, 1}, {length, 1.0, 1.0});
    MechanicsModel m(g, {bc(Side::xmin, MechanicsBcType::displacement, 0, 0.0)}, nu);
    const Eigen::VectorXd u = m.solve(Eigen::VectorXd::Constant(g.num_cells(), e), Eigen::VectorXd::Zero(g.num_cells()),
                                      Eigen::VectorXd::Constant(g.num_cells(), rho), grav, 0.0);
    const double modulus = constrained_modulus(e, nu);
    for (Index n = 0; n < g.num_nodes(); ++n) {
        const double x = g.node_coordinate(n)[0];
        CHECK(u[n] == Approx(-rho * grav * (length * x - 0.5 * x * x) / modulus).epsilon(1e-10).scale(1e-6));
    }
}

TEST_CASE("floating body is rejected")
{
    const StructuredGrid g = build_grid(2, {2, 2, 1}, {1.0, 1.0, 1.0});
    MechanicsModel m(g, {bc(Side::xmin, MechanicsBcType::displacement, 0, 0.0)}, 0.2);
    CHECK_THROWS_AS(m.solve(Eigen::VectorXd::Constant(4, 1e9), Eigen::VectorXd::Zero(4), {}, 0.0, 0.0), SolverError);
    CHECK_THROWS_AS(MechanicsModel(g, {bc(Side::xmin, MechanicsBcType::displacement, 2, 0.0)}, 0.2), ConfigError);
}

TEST_CASE("traction ramps to its limit")
{
    MechanicsBoundaryCondition b = bc(Side::xmax, MechanicsBcType::traction, 0, 0.0);
    b.rate = -1e4;
    b.limit = -1e7;
    CHECK(b.value_at(0.0) == 0.0);
    CHECK(b.value_at(100.0) == Approx(-1e6));
    CHECK(b.value_at(5000.0) == Approx(-1e7));
}

TEST_CASE("sediment velocity")
{
    const StructuredGrid g = build_grid(3, {2, 2, 2}, {1.0, 1.0, 1.0});
    const Eigen::VectorXd u0 = Eigen::VectorXd::Zero(g.num_nodes() * 3);
    Eigen::VectorXd u1 = u0;
    for (Index n = 0; n < g.num_nodes(); ++n)
        u1[3 * n + 2] = -1e-4;

    const Eigen::MatrixXd v = cell_velocity(g, u1, u0, 200.0);
    for (Index c = 0; c < g.num_cells(); ++c) {
        CHECK(v(c, 2) == Approx(-5e-7).epsilon(1e-12));
        CHECK(v(c, 0) == 0.0);
    }
    const FaceVelocities fv = sediment_velocity(g, u1, u0, 200.0);
    for (std::size_t k = 0; k < g.boundary_faces().size(); ++k) {
        const BoundaryFace& f = g.boundary_faces()[k];
        const double expected = f.axis == 2 ? -5e-7 * f.sign : 0.0;
        CHECK(fv.boundary[static_cast<Index>(k)] == Approx(expected).scale(1e-9));
    }

    const FaceVelocities still = sediment_velocity(g, u0, u0, 10.0);
    CHECK(still.interior.cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(sediment_velocity(g, u1, u0, 0.0), std::invalid_argument);
}
