#ifndef HYDROGEO_CORE_SATURATION_HPP
#define HYDROGEO_CORE_SATURATION_HPP

#include "hydrogeo/core/errors.hpp"

#include <algorithm>

namespace hydrogeo {

template <typename Scalar>
struct SaturationSet {
    Scalar gas;             // S_g = 1 - S_w - S_h
    Scalar effective_water; // Brooks-Corey S_we, clamped to [eps, 1 - eps]
    Scalar water_e;         // S_w / (1 - S_h)
    Scalar gas_e;           // S_g / (1 - S_h)
};

/**
 * @brief Saturations derived from the primary pair (S_w, S_h).
 *
 * With clamping disabled a state without pore fluid (S_h = 1) throws
 * DegenerateStateError; with clamping the mobile pore space is floored at eps.
 */
template <typename Scalar>
SaturationSet<Scalar> derived_saturations(Scalar sw, Scalar sh, double swr = 0.0, double sgr = 0.0,
                                          double eps = 1e-6, bool clamp = true)
{
    using std::max;
    using std::min;
    const Scalar mobile = Scalar(1) - sh;
    if (!clamp && !(mobile > Scalar(0)))
        throw DegenerateStateError("no mobile pore space (S_h = 1)");
    const Scalar mobile_safe = max(mobile, Scalar(eps));

    SaturationSet<Scalar> out;
    out.gas = Scalar(1) - sw - sh;
    const double residual = swr + sgr;
    Scalar swe = (sw - Scalar(residual)) / max(mobile - Scalar(residual), Scalar(eps));
    out.effective_water = min(max(swe, Scalar(eps)), Scalar(1.0 - eps));
    out.water_e = sw / mobile_safe;
    out.gas_e = Scalar(1) - out.water_e;
    return out;
}

} // namespace hydrogeo

#endif
