#include "hydrogeo/geomech/mechanics_model.hpp"

#include "hydrogeo/constitutive/mechanics.hpp"
#include "hydrogeo/core/errors.hpp"

#include <Eigen/SparseCholesky>

#include <cmath>
#include <map>
#include <stdexcept>

namespace hydrogeo {

namespace {

// Voigt rows of the engineering strain for each dimension; pairs are (i, j) gradient indices.
struct StrainRow {
    int i;
    int j;
};

std::vector<StrainRow> strain_rows(int dim)
{
    if (dim == 1)
        return {{0, 0}};
    if (dim == 2)
        return {{0, 0}, {1, 1}, {0, 1}};
    return {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 2}, {0, 2}};
}

Eigen::MatrixXd elasticity_matrix(int dim, double poisson)
{
    const LameParameters<double> l = lame_parameters(1.0, poisson);
    const double lambda = l.lambda;
    const double shear = l.shear;
    const int n = static_cast<int>(strain_rows(dim).size());
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (int a = 0; a < dim; ++a) {
        for (int b = 0; b < dim; ++b)
            d(a, b) = lambda;
        d(a, a) = lambda + 2.0 * shear;
    }
    for (int s = dim; s < n; ++s)
        d(s, s) = shear;
    return d;
}

// Shape function gradients at reference point xi for a cell with spacing h.
Eigen::MatrixXd shape_gradients(int dim, const double* xi, const double* h)
{
    const int nodes = 1 << dim;
    Eigen::MatrixXd g(dim, nodes);
    for (int a = 0; a < nodes; ++a) {
        for (int k = 0; k < dim; ++k) {
            double v = 1.0;
            for (int j = 0; j < dim; ++j) {
                const double s = ((a >> j) & 1) ? 1.0 : -1.0;
                v *= (j == k) ? 0.5 * s : 0.5 * (1.0 + s * xi[j]);
            }
            g(k, a) = v * 2.0 / h[k];
        }
    }
    return g;
}

Eigen::MatrixXd strain_matrix(int dim, const Eigen::MatrixXd& grad)
{
    const auto rows = strain_rows(dim);
    const int nodes = static_cast<int>(grad.cols());
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(static_cast<Index>(rows.size()), dim * nodes);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const int i = rows[r].i;
        const int j = rows[r].j;
        for (int a = 0; a < nodes; ++a) {
            if (i == j) {
                b(static_cast<Index>(r), dim * a + i) = grad(i, a);
            } else {
                b(static_cast<Index>(r), dim * a + i) = grad(j, a);
                b(static_cast<Index>(r), dim * a + j) = grad(i, a);
            }
        }
    }
    return b;
}

} // namespace

MechanicsModel::MechanicsModel(const StructuredGrid& grid, std::vector<MechanicsBoundaryCondition> bcs,
                               double poisson)
    : grid_(grid), bcs_(std::move(bcs)), poisson_(poisson)
{
    for (const auto& bc : bcs_) {
        if (bc.component < 0 || bc.component >= grid_.dimension())
            throw ConfigError("mechanics condition '" + bc.name + "' acts on a component outside the grid dimension");
    }
    build_element();
}

void MechanicsModel::build_element()
{
    const int dim = grid_.dimension();
    const int nodes = 1 << dim;
    double h[3];
    for (int k = 0; k < 3; ++k)
        h[k] = grid_.spacing(k);
    double weight = grid_.transverse();
    for (int k = 0; k < dim; ++k)
        weight *= 0.5 * h[k];

    const Eigen::MatrixXd d = elasticity_matrix(dim, poisson_);
    strain_size_ = static_cast<int>(d.rows());
    Eigen::VectorXd m = Eigen::VectorXd::Zero(strain_size_);
    m.head(dim).setOnes();

    unit_stiffness_ = Eigen::MatrixXd::Zero(dim * nodes, dim * nodes);
    biot_vector_ = Eigen::VectorXd::Zero(dim * nodes);
    const double g = 1.0 / std::sqrt(3.0);
    for (int p = 0; p < nodes; ++p) {
        double xi[3] = {0.0, 0.0, 0.0};
        for (int k = 0; k < dim; ++k)
            xi[k] = ((p >> k) & 1) ? g : -g;
        const Eigen::MatrixXd b = strain_matrix(dim, shape_gradients(dim, xi, h));
        unit_stiffness_ += weight * b.transpose() * d * b;
        biot_vector_ += weight * b.transpose() * m;
    }
    const double centre[3] = {0.0, 0.0, 0.0};
    center_gradient_ = shape_gradients(dim, centre, h);
}

std::vector<Index> MechanicsModel::element_dofs(Index cell) const
{
    const int dim = grid_.dimension();
    const auto nodes = grid_.cell_nodes(cell);
    std::vector<Index> dofs;
    dofs.reserve(static_cast<std::size_t>(dim * grid_.nodes_per_cell()));
    for (int a = 0; a < grid_.nodes_per_cell(); ++a)
        for (int k = 0; k < dim; ++k)
            dofs.push_back(nodes[static_cast<std::size_t>(a)] * dim + k);
    return dofs;
}

Eigen::SparseMatrix<double> MechanicsModel::stiffness(const Eigen::VectorXd& youngs) const
{
    const Index n = num_dofs();
    std::vector<Eigen::Triplet<double>> entries;
    const Index ne = unit_stiffness_.rows();
    entries.reserve(static_cast<std::size_t>(grid_.num_cells() * ne * ne));
    for (Index c = 0; c < grid_.num_cells(); ++c) {
        const std::vector<Index> dofs = element_dofs(c);
        for (Index i = 0; i < ne; ++i)
            for (Index j = 0; j < ne; ++j)
                entries.emplace_back(static_cast<int>(dofs[static_cast<std::size_t>(i)]),
                                     static_cast<int>(dofs[static_cast<std::size_t>(j)]),
                                     youngs[c] * unit_stiffness_(i, j));
    }
    Eigen::SparseMatrix<double> k(n, n);
    k.setFromTriplets(entries.begin(), entries.end());
    return k;
}

Eigen::VectorXd MechanicsModel::load(const Eigen::VectorXd& biot_pressure, const Eigen::VectorXd& density,
                                     double gravity, double t) const
{
    const int dim = grid_.dimension();
    Eigen::VectorXd f = Eigen::VectorXd::Zero(num_dofs());
    const bool body = density.size() == grid_.num_cells() && gravity != 0.0;
    const double share = grid_.cell_volume() / grid_.nodes_per_cell();
    for (Index c = 0; c < grid_.num_cells(); ++c) {
        const std::vector<Index> dofs = element_dofs(c);
        for (std::size_t i = 0; i < dofs.size(); ++i)
            f[dofs[i]] += biot_pressure[c] * biot_vector_[static_cast<Index>(i)];
        if (body) {
            const auto nodes = grid_.cell_nodes(c);
            for (int a = 0; a < grid_.nodes_per_cell(); ++a)
                f[nodes[static_cast<std::size_t>(a)] * dim + (dim - 1)] -= density[c] * gravity * share;
        }
    }
    for (const BoundaryFace& face : grid_.boundary_faces()) {
        for (const auto& bc : bcs_) {
            if (bc.type != MechanicsBcType::traction || !bc.faces.matches(face))
                continue;
            const double force = bc.value_at(t) * face.area / face.node_count;
            for (int a = 0; a < face.node_count; ++a)
                f[face.nodes[static_cast<std::size_t>(a)] * dim + bc.component] += force;
        }
    }
    return f;
}

Eigen::VectorXd MechanicsModel::solve(const Eigen::VectorXd& youngs, const Eigen::VectorXd& biot_pressure,
                                      const Eigen::VectorXd& density, double gravity, double t)
{
    const int dim = grid_.dimension();
    const Index n = num_dofs();

    // Prescribed values; later conditions override earlier ones on shared nodes.
    std::map<Index, double> fixed;
    for (const BoundaryFace& face : grid_.boundary_faces()) {
        for (const auto& bc : bcs_) {
            if (bc.type != MechanicsBcType::displacement || !bc.faces.matches(face))
                continue;
            for (int a = 0; a < face.node_count; ++a)
                fixed[face.nodes[static_cast<std::size_t>(a)] * dim + bc.component] = bc.value_at(t);
        }
    }

    std::vector<Index> free_index(static_cast<std::size_t>(n), -1);
    Index nfree = 0;
    Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
    for (Index i = 0; i < n; ++i) {
        const auto it = fixed.find(i);
        if (it == fixed.end())
            free_index[static_cast<std::size_t>(i)] = nfree++;
        else
            u[i] = it->second;
    }

    const Eigen::SparseMatrix<double> k = stiffness(youngs);
    Eigen::VectorXd rhs_full = load(biot_pressure, density, gravity, t) - k * u;
    Eigen::VectorXd rhs(nfree);
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(static_cast<std::size_t>(k.nonZeros()));
    for (Index col = 0; col < k.outerSize(); ++col) {
        const Index fc = free_index[static_cast<std::size_t>(col)];
        if (fc < 0)
            continue;
        for (Eigen::SparseMatrix<double>::InnerIterator it(k, col); it; ++it) {
            const Index fr = free_index[static_cast<std::size_t>(it.row())];
            if (fr >= 0)
                entries.emplace_back(static_cast<int>(fr), static_cast<int>(fc), it.value());
        }
    }
    for (Index i = 0; i < n; ++i) {
        const Index fi = free_index[static_cast<std::size_t>(i)];
        if (fi >= 0)
            rhs[fi] = rhs_full[i];
    }
    Eigen::SparseMatrix<double> kff(nfree, nfree);
    kff.setFromTriplets(entries.begin(), entries.end());

    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(kff);
    if (ldlt.info() != Eigen::Success)
        throw SolverError("elasticity factorization failed");
    const Eigen::VectorXd diag = ldlt.vectorD();
    const double dmax = diag.cwiseAbs().maxCoeff();
    if (!(diag.minCoeff() > 1e-10 * dmax))
        throw SolverError("elasticity system is singular: displacement constraints leave rigid-body modes");
    const Eigen::VectorXd uf = ldlt.solve(rhs);
    for (Index i = 0; i < n; ++i) {
        const Index fi = free_index[static_cast<std::size_t>(i)];
        if (fi >= 0)
            u[i] = uf[fi];
    }
    return u;
}

ElasticField MechanicsModel::recover(const Eigen::VectorXd& u, const Eigen::VectorXd& youngs,
                                     const Eigen::VectorXd& biot_pressure) const
{
    const int dim = grid_.dimension();
    const Index nc = grid_.num_cells();
    ElasticField out;
    out.strain.resize(static_cast<std::size_t>(nc));
    out.effective_stress.resize(static_cast<std::size_t>(nc));
    out.total_stress.resize(static_cast<std::size_t>(nc));
    out.volumetric_strain.resize(nc);
    out.deviatoric_stress.resize(nc);
    for (Index c = 0; c < nc; ++c) {
        const auto nodes = grid_.cell_nodes(c);
        Eigen::Matrix3d grad = Eigen::Matrix3d::Zero();  // grad(i, j) = du_i / dx_j
        for (int a = 0; a < grid_.nodes_per_cell(); ++a) {
            const Index node = nodes[static_cast<std::size_t>(a)];
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j)
                    grad(i, j) += u[node * dim + i] * center_gradient_(j, a);
        }
        const Eigen::Matrix3d eps = 0.5 * (grad + grad.transpose());
        const LameParameters<double> l = lame_parameters(youngs[c], poisson_);
        const double tr = eps.trace();
        const Eigen::Matrix3d sig = l.lambda * tr * Eigen::Matrix3d::Identity() + 2.0 * l.shear * eps;
        const Eigen::Matrix3d total = sig - biot_pressure[c] * Eigen::Matrix3d::Identity();
        const auto pack = [](const Eigen::Matrix3d& m) {
            SymTensor s;
            s << m(0, 0), m(1, 1), m(2, 2), m(0, 1), m(1, 2), m(0, 2);
            return s;
        };
        out.strain[static_cast<std::size_t>(c)] = pack(eps);
        out.effective_stress[static_cast<std::size_t>(c)] = pack(sig);
        out.total_stress[static_cast<std::size_t>(c)] = pack(total);
        out.volumetric_strain[c] = tr;
        const Eigen::Matrix3d dev = sig - (sig.trace() / 3.0) * Eigen::Matrix3d::Identity();
        out.deviatoric_stress[c] = std::sqrt(1.5 * dev.cwiseProduct(dev).sum());
    }
    return out;
}

FaceVelocities sediment_velocity(const StructuredGrid& grid, const Eigen::VectorXd& u_new, const Eigen::VectorXd& u_old,
                                 double dt)
{
    if (!(dt > 0.0))
        throw std::invalid_argument("sediment velocity requires dt > 0");
    const int dim = grid.dimension();
    FaceVelocities v;
    const auto& interior = grid.interior_faces();
    const auto& boundary = grid.boundary_faces();
    v.interior.resize(static_cast<Index>(interior.size()));
    v.boundary.resize(static_cast<Index>(boundary.size()));
    for (std::size_t f = 0; f < interior.size(); ++f) {
        const InteriorFace& face = interior[f];
        double s = 0.0;
        for (int a = 0; a < face.node_count; ++a) {
            const Index d = face.nodes[static_cast<std::size_t>(a)] * dim + face.axis;
            s += u_new[d] - u_old[d];
        }
        v.interior[static_cast<Index>(f)] = s / (face.node_count * dt);
    }
    for (std::size_t f = 0; f < boundary.size(); ++f) {
        const BoundaryFace& face = boundary[f];
        double s = 0.0;
        for (int a = 0; a < face.node_count; ++a) {
            const Index d = face.nodes[static_cast<std::size_t>(a)] * dim + face.axis;
            s += u_new[d] - u_old[d];
        }
        v.boundary[static_cast<Index>(f)] = face.sign * s / (face.node_count * dt);
    }
    return v;
}

Eigen::MatrixXd cell_velocity(const StructuredGrid& grid, const Eigen::VectorXd& u_new, const Eigen::VectorXd& u_old,
                              double dt)
{
    if (!(dt > 0.0))
        throw std::invalid_argument("sediment velocity requires dt > 0");
    const int dim = grid.dimension();
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(grid.num_cells(), dim);
    const double w = 1.0 / (grid.nodes_per_cell() * dt);
    for (Index c = 0; c < grid.num_cells(); ++c) {
        const auto nodes = grid.cell_nodes(c);
        for (int a = 0; a < grid.nodes_per_cell(); ++a)
            for (int k = 0; k < dim; ++k) {
                const Index d = nodes[static_cast<std::size_t>(a)] * dim + k;
                v(c, k) += w * (u_new[d] - u_old[d]);
            }
    }
    return v;
}

} // namespace hydrogeo
