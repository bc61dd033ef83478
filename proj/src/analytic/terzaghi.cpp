#include "hydrogeo/analytic/terzaghi.hpp"

#include <cmath>

namespace hydrogeo {

double terzaghi_storage(double porosity, double water_saturation, double water_bulk, double gas_bulk, double biot,
                        double grain_modulus, double uniaxial_modulus)
{
    const double cf = water_saturation / water_bulk + (1.0 - water_saturation) / gas_bulk;
    return porosity * cf + (biot - porosity) / grain_modulus + biot * biot / uniaxial_modulus;
}

TerzaghiCoefficients terzaghi_coefficients(double permeability, double mobility_viscosity, double biot,
                                           double uniaxial_modulus, double storage, double length,
                                           double stress_rate)
{
    TerzaghiCoefficients c{};
    c.storage = storage;
    c.uniaxial_modulus = uniaxial_modulus;
    c.diffusivity = permeability / (mobility_viscosity * storage);
    c.skempton = biot / (uniaxial_modulus * storage);
    c.amplitude = length * length / (2.0 * c.diffusivity) * c.skempton * stress_rate;
    return c;
}

double terzaghi_wavenumber(int m, double length) { return (2 * m + 1) * M_PI / (2.0 * length); }

double terzaghi_pressure(double depth, double t, const TerzaghiCoefficients& c, double length, int min_terms,
                         double tol)
{
    const double x = (length - depth) / length;
    double series = 0.0;
    for (int m = 0; m < 100000; ++m) {
        const double psi = terzaghi_wavenumber(m, length);
        const double k = 2 * m + 1;
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        const double bound = sign / (k * k * k) * std::exp(-psi * psi * c.diffusivity * t);
        series += bound * std::cos(psi * (length - depth));
        if (m + 1 >= min_terms && std::abs(bound) < tol)
            break;
    }
    return c.amplitude * (1.0 - x * x - 32.0 / (M_PI * M_PI * M_PI) * series);
}

} // namespace hydrogeo
