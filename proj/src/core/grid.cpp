#include "hydrogeo/core/grid.hpp"

#include "hydrogeo/core/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hydrogeo {

StructuredGrid build_grid(int dimension, const std::array<int, 3>& counts, const std::array<double, 3>& extents,
                          double transverse)
{
    if (dimension < 1 || dimension > 3)
        throw ConfigError("grid dimension must be 1, 2 or 3");
    for (int a = 0; a < dimension; ++a) {
        if (counts[a] < 1)
            throw ConfigError("cell count along axis " + std::to_string(a) + " must be >= 1");
        if (!(extents[a] > 0.0) || !std::isfinite(extents[a]))
            throw ConfigError("extent along axis " + std::to_string(a) + " must be > 0");
    }
    if (!(transverse > 0.0))
        throw ConfigError("transverse size must be > 0");
    return StructuredGrid(dimension, counts, extents, transverse);
}

StructuredGrid::StructuredGrid(int dimension, std::array<int, 3> counts, std::array<double, 3> extents,
                               double transverse)
    : dim_(dimension), transverse_(transverse)
{
    for (int a = 0; a < 3; ++a) {
        if (a < dim_) {
            counts_[a] = counts[a];
            extents_[a] = extents[a];
            spacing_[a] = extents[a] / counts[a];
        } else {
            counts_[a] = 1;
            extents_[a] = 1.0;
            spacing_[a] = 1.0;
        }
    }
    volume_ = transverse_;
    for (int a = 0; a < dim_; ++a)
        volume_ *= spacing_[a];
    for (int a = 0; a < 3; ++a)
        area_[a] = a < dim_ ? volume_ / spacing_[a] : 0.0;

    n_cells_ = Index(counts_[0]) * counts_[1] * counts_[2];
    n_nodes_ = Index(nodes_along(0)) * nodes_along(1) * nodes_along(2);
    build_faces();
}

std::array<int, 3> StructuredGrid::cell_ijk(Index c) const
{
    const int i = static_cast<int>(c % counts_[0]);
    const Index r = c / counts_[0];
    const int j = static_cast<int>(r % counts_[1]);
    const int k = static_cast<int>(r / counts_[1]);
    return {i, j, k};
}

std::array<int, 3> StructuredGrid::node_ijk(Index n) const
{
    const int i = static_cast<int>(n % nodes_along(0));
    const Index r = n / nodes_along(0);
    const int j = static_cast<int>(r % nodes_along(1));
    const int k = static_cast<int>(r / nodes_along(1));
    return {i, j, k};
}

Eigen::Vector3d StructuredGrid::cell_center(Index c) const
{
    const auto ijk = cell_ijk(c);
    Eigen::Vector3d x = Eigen::Vector3d::Zero();
    for (int a = 0; a < dim_; ++a)
        x[a] = (ijk[a] + 0.5) * spacing_[a];
    return x;
}

Eigen::Vector3d StructuredGrid::node_coordinate(Index n) const
{
    const auto ijk = node_ijk(n);
    Eigen::Vector3d x = Eigen::Vector3d::Zero();
    for (int a = 0; a < dim_; ++a)
        x[a] = ijk[a] * spacing_[a];
    return x;
}

std::array<Index, 8> StructuredGrid::cell_nodes(Index c) const
{
    const auto ijk = cell_ijk(c);
    std::array<Index, 8> nodes{};
    for (int local = 0; local < nodes_per_cell(); ++local) {
        std::array<int, 3> n = {0, 0, 0};
        for (int a = 0; a < dim_; ++a)
            n[a] = ijk[a] + ((local >> a) & 1);
        nodes[static_cast<std::size_t>(local)] = node_index(n[0], n[1], n[2]);
    }
    return nodes;
}

std::array<Index, 4> StructuredGrid::face_nodes(int axis, int plane, std::array<int, 3> ijk, int& count) const
{
    std::array<Index, 4> nodes{};
    int other[2];
    int n_other = 0;
    for (int a = 0; a < dim_; ++a)
        if (a != axis)
            other[n_other++] = a;
    count = 1 << n_other;
    for (int local = 0; local < count; ++local) {
        std::array<int, 3> n = {0, 0, 0};
        n[axis] = plane;
        for (int b = 0; b < n_other; ++b)
            n[other[b]] = ijk[other[b]] + ((local >> b) & 1);
        nodes[static_cast<std::size_t>(local)] = node_index(n[0], n[1], n[2]);
    }
    return nodes;
}

void StructuredGrid::build_faces()
{
    interior_.clear();
    boundary_.clear();
    cell_faces_.assign(static_cast<std::size_t>(n_cells_), {});

    for (int axis = 0; axis < dim_; ++axis) {
        for (Index c = 0; c < n_cells_; ++c) {
            const auto ijk = cell_ijk(c);
            if (ijk[axis] == 0) {
                BoundaryFace bf{};
                bf.cell = c;
                bf.side = static_cast<Side>(2 * axis);
                bf.axis = axis;
                bf.sign = -1;
                bf.area = area_[axis];
                bf.half_distance = 0.5 * spacing_[axis];
                bf.center = cell_center(c);
                bf.cell_half_width = 0.5 * Eigen::Vector3d(spacing_[0], spacing_[1], spacing_[2]);
                bf.center[axis] = 0.0;
                bf.nodes = face_nodes(axis, 0, ijk, bf.node_count);
                cell_faces_[static_cast<std::size_t>(c)].push_back({Index(boundary_.size()), true, -1});
                boundary_.push_back(bf);
            }
            if (ijk[axis] == counts_[axis] - 1) {
                BoundaryFace bf{};
                bf.cell = c;
                bf.side = static_cast<Side>(2 * axis + 1);
                bf.axis = axis;
                bf.sign = 1;
                bf.area = area_[axis];
                bf.half_distance = 0.5 * spacing_[axis];
                bf.center = cell_center(c);
                bf.cell_half_width = 0.5 * Eigen::Vector3d(spacing_[0], spacing_[1], spacing_[2]);
                bf.center[axis] = extents_[axis];
                bf.nodes = face_nodes(axis, counts_[axis], ijk, bf.node_count);
                cell_faces_[static_cast<std::size_t>(c)].push_back({Index(boundary_.size()), true, 1});
                boundary_.push_back(bf);
            } else {
                std::array<int, 3> r = ijk;
                r[axis] += 1;
                InteriorFace f{};
                f.left = c;
                f.right = cell_index(r[0], r[1], r[2]);
                f.axis = axis;
                f.area = area_[axis];
                f.distance = spacing_[axis];
                f.nodes = face_nodes(axis, ijk[axis] + 1, ijk, f.node_count);
                const Index id = Index(interior_.size());
                cell_faces_[static_cast<std::size_t>(c)].push_back({id, false, 1});
                cell_faces_[static_cast<std::size_t>(f.right)].push_back({id, false, -1});
                interior_.push_back(f);
            }
        }
    }
}

std::vector<Index> StructuredGrid::neighbours(Index c) const
{
    std::vector<Index> out;
    for (const auto& cf : faces_of(c)) {
        if (cf.boundary)
            continue;
        const auto& f = interior_[static_cast<std::size_t>(cf.face)];
        out.push_back(f.left == c ? f.right : f.left);
    }
    return out;
}

Index StructuredGrid::locate(const Eigen::Vector3d& x) const
{
    std::array<int, 3> ijk = {0, 0, 0};
    for (int a = 0; a < dim_; ++a) {
        const int i = static_cast<int>(std::floor(x[a] / spacing_[a]));
        ijk[a] = std::clamp(i, 0, counts_[a] - 1);
    }
    return cell_index(ijk[0], ijk[1], ijk[2]);
}

} // namespace hydrogeo
