#include "hydrogeo/core/errors.hpp"
#include "hydrogeo/core/grid.hpp"
#include "hydrogeo/core/saturation.hpp"
#include "hydrogeo/core/state.hpp"
#include "hydrogeo/core/units.hpp"

#include <doctest.h>

#include <random>

using namespace hydrogeo;
using doctest::Approx;

TEST_CASE("build_grid sizes and spacing")
{
    const StructuredGrid column = build_grid(1, {100, 1, 1}, {0.5, 1.0, 1.0});
    CHECK(column.num_cells() == 100);
    CHECK(column.spacing(0) == Approx(5e-3).epsilon(1e-14));

    const StructuredGrid single = build_grid(1, {1, 1, 1}, {1.0, 1.0, 1.0});
    CHECK(single.num_cells() == 1);
    CHECK(single.total_volume() == Approx(1.0).epsilon(1e-14));

    const StructuredGrid box = build_grid(3, {30, 30, 15}, {10.0, 10.0, 5.0});
    CHECK(box.num_cells() == 13500);
    for (int a = 0; a < 3; ++a)
        CHECK(box.spacing(a) == Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("build_grid rejects bad counts and extents")
{
    CHECK_THROWS_AS(build_grid(1, {0, 1, 1}, {1.0, 1.0, 1.0}), ConfigError);
    CHECK_THROWS_AS(build_grid(2, {4, -1, 1}, {1.0, 1.0, 1.0}), ConfigError);
    CHECK_THROWS_AS(build_grid(3, {2, 2, 2}, {1.0, 0.0, 1.0}), ConfigError);
    CHECK_THROWS_AS(build_grid(4, {2, 2, 2}, {1.0, 1.0, 1.0}), ConfigError);
}

TEST_CASE("grid volume and face areas match the box")
{
    const double a = 10.0, b = 4.0, c = 5.0;
    const StructuredGrid g = build_grid(3, {7, 3, 5}, {a, b, c});
    CHECK(g.total_volume() == Approx(a * b * c).epsilon(1e-12));

    double boundary = 0.0;
    for (const auto& f : g.boundary_faces())
        boundary += f.area;
    CHECK(boundary == Approx(2.0 * (a * b + b * c + a * c)).epsilon(1e-12));

    // each interior plane perpendicular to an axis has the full cross-section
    std::array<double, 3> interior{};
    for (const auto& f : g.interior_faces())
        interior[static_cast<std::size_t>(f.axis)] += f.area;
    CHECK(interior[0] == Approx(6 * b * c).epsilon(1e-12));
    CHECK(interior[1] == Approx(2 * a * c).epsilon(1e-12));
    CHECK(interior[2] == Approx(4 * a * b).epsilon(1e-12));
}

TEST_CASE("cell adjacency is consistent")
{
    const StructuredGrid g = build_grid(2, {4, 3, 1}, {1.0, 1.0, 1.0}, 0.1);
    for (Index c = 0; c < g.num_cells(); ++c) {
        int boundary = 0;
        for (const CellFace& cf : g.faces_of(c)) {
            if (cf.boundary) {
                ++boundary;
                CHECK(g.boundary_faces()[static_cast<std::size_t>(cf.face)].cell == c);
                continue;
            }
            const InteriorFace& f = g.interior_faces()[static_cast<std::size_t>(cf.face)];
            CHECK((cf.sign == 1 ? f.left : f.right) == c);
        }
        CHECK(g.faces_of(c).size() == 4);
        const auto ijk = g.cell_ijk(c);
        const int expected = (ijk[0] == 0) + (ijk[0] == 3) + (ijk[1] == 0) + (ijk[1] == 2);
        CHECK(boundary == expected);
    }
    CHECK(g.locate(Eigen::Vector3d(0.99, 0.01, 0.0)) == g.cell_index(3, 0, 0));
}

TEST_CASE("partition and assembly round trip")
{
    const StructuredGrid pair = build_grid(1, {2, 1, 1}, {1.0, 1.0, 1.0});
    CHECK(make_state(pair).flow.size() == 8);

    const StructuredGrid box = build_grid(3, {30, 30, 15}, {10.0, 10.0, 5.0});
    CHECK(make_state(box).porosity.size() == 13500);

    const StructuredGrid g = build_grid(2, {3, 2, 1}, {1.0, 1.0, 1.0});
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    SimulationState s = make_state(g);
    for (Index c = 0; c < g.num_cells(); ++c) {
        const double sh = 0.5 * u(rng);
        s.flow.segment<4>(kFlowVars * c) << 1e6 + 1e6 * u(rng), (1.0 - sh) * u(rng), sh, 275.0 + 10.0 * u(rng);
        s.porosity[c] = 0.2 + 0.2 * u(rng);
    }
    for (Index i = 0; i < s.displacement.size(); ++i)
        s.displacement[i] = 1e-3 * (u(rng) - 0.5);

    const Eigen::VectorXd x = assemble_unknowns(s);
    const SimulationState back = partition_unknowns(x, g, 12.0);
    CHECK(back.flow == s.flow);
    CHECK(back.displacement == s.displacement);
    CHECK(back.porosity == s.porosity);
    CHECK(back.time == 12.0);
    CHECK(assemble_unknowns(back) == x);

    CHECK_THROWS_AS(partition_unknowns(Eigen::VectorXd::Zero(x.size() - 1), g), std::invalid_argument);
}

TEST_CASE("admissibility check")
{
    const StructuredGrid g = build_grid(1, {2, 1, 1}, {1.0, 1.0, 1.0});
    SimulationState s = make_state(g);
    for (Index c = 0; c < 2; ++c) {
        s.flow.segment<4>(kFlowVars * c) << 1e6, 0.5, 0.3, 280.0;
        s.porosity[c] = 0.3;
    }
    CHECK_NOTHROW(check_admissible(s, g));
    s.flow[kFlowVars + var_water_saturation] = 0.8;
    CHECK_THROWS_AS(check_admissible(s, g), DegenerateStateError);
}

TEST_CASE("derived saturations")
{
    const auto full = derived_saturations(1.0, 0.0);
    CHECK(full.gas == Approx(0.0));
    CHECK(full.effective_water == Approx(1.0).epsilon(1e-6));

    const auto mixed = derived_saturations(0.3, 0.4);
    CHECK(mixed.water_e == Approx(0.5).epsilon(1e-14));
    CHECK(mixed.gas_e == Approx(0.5).epsilon(1e-14));
    CHECK(mixed.water_e + mixed.gas_e == Approx(1.0).epsilon(1e-15));

    CHECK(derived_saturations(0.29, 0.22).gas == Approx(0.49).epsilon(1e-14));

    CHECK_THROWS_AS(derived_saturations(0.0, 1.0, 0.0, 0.0, 1e-6, false), DegenerateStateError);
    CHECK_NOTHROW(derived_saturations(0.0, 1.0));

    // both residuals are removed from the numerator and the mobile space
    CHECK(derived_saturations(0.5, 0.0, 0.1, 0.1).effective_water == Approx(0.3 / 0.8).epsilon(1e-14));
}

TEST_CASE("quantities convert to SI")
{
    CHECK(parse_quantity("3.535 MPa", Dimension::pressure) == Approx(3.535e6));
    CHECK(parse_quantity("1.54 degC", Dimension::temperature) == Approx(274.69).epsilon(1e-14));
    CHECK(parse_quantity("300 mD", Dimension::area) == Approx(300 * constants::millidarcy));
    CHECK(parse_quantity("40 min", Dimension::time) == Approx(2400.0));
    CHECK(parse_quantity("29.61 %", Dimension::dimensionless) == Approx(0.2961));
    CHECK(parse_quantity("997.05 kg/m3", Dimension::density) == Approx(997.05));
    CHECK(parse_quantity("0.01 MPa/s", Dimension::stress_rate) == Approx(1e4));
    CHECK(parse_quantity("2.5", Dimension::length) == Approx(2.5));

    CHECK_THROWS_AS(parse_quantity("3 furlongs", Dimension::length), ConfigError);
    CHECK_THROWS_AS(parse_quantity("3 MPa", Dimension::temperature), ConfigError);
    CHECK_THROWS_AS(parse_quantity("MPa", Dimension::pressure), ConfigError);
    CHECK(lookup_unit("mD").factor == constants::millidarcy);
}
