#include "hydrogeo/core/boundary.hpp"

#include "hydrogeo/core/errors.hpp"

#include <algorithm>
#include <cmath>

namespace hydrogeo {

bool FaceSelector::matches(const BoundaryFace& f) const
{
    if (f.side != side)
        return false;
    for (int a = 0; a < 3; ++a) {
        if (a == f.axis || std::isnan(anchor[a]))
            continue;
        if (std::abs(anchor[a] - f.center[a]) > f.cell_half_width[a] * (1.0 + 1e-12))
            return false;
    }
    if (!restricted)
        return true;
    for (int a = 0; a < 3; ++a) {
        if (f.center[a] < lower[a] || f.center[a] > upper[a])
            return false;
    }
    return true;
}

double MechanicsBoundaryCondition::value_at(double t) const
{
    const double v = value + rate * t;
    if (std::isfinite(limit) && std::abs(v) > std::abs(limit))
        return std::copysign(std::abs(limit), v);
    return v;
}

Side parse_side(const std::string& name)
{
    static const char* names[] = {"xmin", "xmax", "ymin", "ymax", "zmin", "zmax"};
    for (int i = 0; i < 6; ++i) {
        if (name == names[i])
            return static_cast<Side>(i);
    }
    throw ConfigError("unknown boundary side '" + name + "'");
}

std::string side_name(Side s)
{
    static const char* names[] = {"xmin", "xmax", "ymin", "ymax", "zmin", "zmax"};
    return names[static_cast<int>(s)];
}

} // namespace hydrogeo
