#ifndef HYDROGEO_CORE_GRID_HPP
#define HYDROGEO_CORE_GRID_HPP

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <vector>

namespace hydrogeo {

using Index = Eigen::Index;

enum class Side : std::uint8_t { xmin, xmax, ymin, ymax, zmin, zmax };

inline int side_axis(Side s) { return static_cast<int>(s) / 2; }
inline int side_sign(Side s) { return (static_cast<int>(s) % 2 == 0) ? -1 : 1; }

struct InteriorFace {
    Index left;   // lower index along the axis
    Index right;
    int axis;
    double area;
    double distance;  // centre-to-centre
    std::array<Index, 4> nodes;
    int node_count;
};

struct BoundaryFace {
    Index cell;
    Side side;
    int axis;
    int sign;             // outward normal component along the axis
    double area;
    double half_distance; // cell centre to face
    Eigen::Vector3d center;
    Eigen::Vector3d cell_half_width;  // half the adjacent cell size per axis
    std::array<Index, 4> nodes;
    int node_count;
};

/// Face reference used in per-cell adjacency; sign is +1 when the cell is the "left" cell.
struct CellFace {
    Index face;
    bool boundary;
    int sign;
};

/**
 * @brief Axis-aligned tensor-product grid with uniform spacing per axis.
 *
 * Unused axes of 1D/2D grids have one cell; the transverse size (cross
 * section in 1D, thickness in 2D) scales volumes and face areas.
 */
class StructuredGrid {
public:
    StructuredGrid() = default;
    StructuredGrid(int dimension, std::array<int, 3> counts, std::array<double, 3> extents,
                   double transverse = 1.0);

    int dimension() const { return dim_; }
    int cells(int axis) const { return counts_[axis]; }
    int nodes_along(int axis) const { return axis < dim_ ? counts_[axis] + 1 : 1; }
    double extent(int axis) const { return extents_[axis]; }
    double spacing(int axis) const { return spacing_[axis]; }
    double transverse() const { return transverse_; }

    Index num_cells() const { return n_cells_; }
    Index num_nodes() const { return n_nodes_; }

    Index cell_index(int i, int j, int k) const { return i + counts_[0] * (j + Index(counts_[1]) * k); }
    std::array<int, 3> cell_ijk(Index c) const;
    Index node_index(int i, int j, int k) const
    {
        return i + nodes_along(0) * (j + Index(nodes_along(1)) * k);
    }
    std::array<int, 3> node_ijk(Index n) const;

    Eigen::Vector3d cell_center(Index c) const;
    Eigen::Vector3d node_coordinate(Index n) const;

    double cell_volume() const { return volume_; }
    double face_area(int axis) const { return area_[axis]; }
    double total_volume() const { return volume_ * static_cast<double>(n_cells_); }

    /// Nodes of a cell in lexicographic order: bit a of the local index is the offset along axis a.
    int nodes_per_cell() const { return 1 << dim_; }
    std::array<Index, 8> cell_nodes(Index c) const;

    const std::vector<InteriorFace>& interior_faces() const { return interior_; }
    const std::vector<BoundaryFace>& boundary_faces() const { return boundary_; }
    const std::vector<CellFace>& faces_of(Index c) const { return cell_faces_[static_cast<std::size_t>(c)]; }

    /// Cells sharing a face with c (excluding c).
    std::vector<Index> neighbours(Index c) const;

    /// Index of the cell containing a point (clamped to the grid).
    Index locate(const Eigen::Vector3d& x) const;

private:
    void build_faces();
    std::array<Index, 4> face_nodes(int axis, int plane, std::array<int, 3> ijk, int& count) const;

    int dim_ = 0;
    std::array<int, 3> counts_{1, 1, 1};
    std::array<double, 3> extents_{1.0, 1.0, 1.0};
    std::array<double, 3> spacing_{1.0, 1.0, 1.0};
    std::array<double, 3> area_{1.0, 1.0, 1.0};
    double transverse_ = 1.0;
    double volume_ = 1.0;
    Index n_cells_ = 0;
    Index n_nodes_ = 0;
    std::vector<InteriorFace> interior_;
    std::vector<BoundaryFace> boundary_;
    std::vector<std::vector<CellFace>> cell_faces_;
};

/// Builds a grid after validating counts and extents; throws ConfigError on bad input.
StructuredGrid build_grid(int dimension, const std::array<int, 3>& counts, const std::array<double, 3>& extents,
                          double transverse = 1.0);

} // namespace hydrogeo

#endif
