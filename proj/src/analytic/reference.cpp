#include "hydrogeo/analytic/reference.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace hydrogeo {

double ReferenceProfile::at(double zq) const
{
    const Eigen::Index n = z.size();
    if (zq <= z[0])
        return u[0];
    if (zq >= z[n - 1])
        return u[n - 1];
    const double h = z[1] - z[0];
    const auto i = std::min<Eigen::Index>(static_cast<Eigen::Index>(zq / h), n - 2);
    const double w = (zq - z[i]) / h;
    return (1.0 - w) * u[i] + w * u[i + 1];
}

ReferenceProfile diffusion_reaction_reference(const DiffusionReactionProblem& p, double t, int nodes, int steps)
{
    if (nodes < 3 || steps < 1)
        throw std::invalid_argument("reference solve needs >= 3 nodes and >= 1 step");
    const int n = nodes - 1;  // unknowns at nodes 1..n
    const double h = p.length / n;
    const double dt = t / steps;
    const double r = p.diffusivity / (h * h);

    // A u = D u_zz - R u on the unknown nodes, tridiagonal: sub a, diag b, super c.
    std::vector<double> a(static_cast<std::size_t>(n), r), b(static_cast<std::size_t>(n), -2.0 * r - p.reaction),
        c(static_cast<std::size_t>(n), r);
    a[0] = 0.0;
    c[static_cast<std::size_t>(n - 1)] = 0.0;
    a[static_cast<std::size_t>(n - 1)] = 2.0 * r;  // mirror node for the no-flux end
    const double boundary_term = r * p.boundary_value;

    std::vector<double> u(static_cast<std::size_t>(n), p.initial_value);
    std::vector<double> rhs(static_cast<std::size_t>(n)), cp(static_cast<std::size_t>(n)),
        dp(static_cast<std::size_t>(n));

    for (int step = 0; step < (t > 0.0 ? steps : 0); ++step) {
        for (int i = 0; i < n; ++i) {
            const auto k = static_cast<std::size_t>(i);
            double au = b[k] * u[k];
            if (i > 0)
                au += a[k] * u[k - 1];
            if (i < n - 1)
                au += c[k] * u[k + 1];
            if (i == 0)
                au += boundary_term;
            rhs[k] = u[k] + 0.5 * dt * au + dt * p.source;
            if (i == 0)
                rhs[k] += 0.5 * dt * boundary_term;
        }
        // (I - dt/2 A) u_new = rhs, Thomas algorithm.
        for (int i = 0; i < n; ++i) {
            const auto k = static_cast<std::size_t>(i);
            const double lo = -0.5 * dt * a[k];
            const double di = 1.0 - 0.5 * dt * b[k];
            const double up = -0.5 * dt * c[k];
            if (i == 0) {
                cp[k] = up / di;
                dp[k] = rhs[k] / di;
            } else {
                const double m = di - lo * cp[k - 1];
                cp[k] = up / m;
                dp[k] = (rhs[k] - lo * dp[k - 1]) / m;
            }
        }
        u[static_cast<std::size_t>(n - 1)] = dp[static_cast<std::size_t>(n - 1)];
        for (int i = n - 2; i >= 0; --i) {
            const auto k = static_cast<std::size_t>(i);
            u[k] = dp[k] - cp[k] * u[k + 1];
        }
    }

    ReferenceProfile out;
    out.z.resize(nodes);
    out.u.resize(nodes);
    for (int i = 0; i < nodes; ++i)
        out.z[i] = i * h;
    out.u[0] = p.boundary_value;
    for (int i = 0; i < n; ++i)
        out.u[i + 1] = u[static_cast<std::size_t>(i)];
    return out;
}

} // namespace hydrogeo
