#include "grimglue/conjugated.hpp"

#include "grimglue/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace grimglue {

namespace {

// C^1 cubic Hermite through (x_i, y_i) with prescribed slopes; the smooth
// inverse map matters because kinks get amplified by 1/h^2 in the stencils.
double hermite(double t, double h, double y0, double s0, double y1, double s1) {
    const double t2 = t * t, t3 = t2 * t;
    return (1 - 3 * t2 + 2 * t3) * y0 + (t - 2 * t2 + t3) * h * s0 +
           (3 * t2 - 2 * t3) * y1 + (t3 - t2) * h * s1;
}

}  // namespace

RhoMap::RhoMap(const ProfileFn& profile, double r_lo, double r_hi, int n) {
    if (!(r_lo > 0) || !(r_lo < r_hi)) throw std::invalid_argument("RhoMap: bad range");
    r_.resize(n);
    rho_.resize(n);
    slope_.resize(n);
    const double step = std::log(r_hi / r_lo) / (n - 1);
    auto integrand = [&](double r) {
        const double v = profile.v(r);
        return std::sqrt(1.0 + v * v);
    };
    for (int i = 0; i < n; ++i) {
        r_[i] = r_lo * std::exp(step * i);
        slope_[i] = integrand(r_[i]);  // d rho / d r
    }
    rho_[0] = 0.0;
    for (int i = 1; i < n; ++i) {
        const double a = r_[i - 1], b = r_[i];
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        const double q = half / std::sqrt(3.0);
        rho_[i] = rho_[i - 1] + half * (integrand(mid - q) + integrand(mid + q));
    }
}

double RhoMap::rho(double r) const {
    auto it = std::upper_bound(r_.begin(), r_.end(), r);
    std::size_t i = it == r_.begin() ? 0 : static_cast<std::size_t>(it - r_.begin()) - 1;
    if (i + 1 >= r_.size()) i = r_.size() - 2;
    const double h = r_[i + 1] - r_[i];
    return hermite((r - r_[i]) / h, h, rho_[i], slope_[i], rho_[i + 1], slope_[i + 1]);
}

double RhoMap::r_of(double rho) const {
    auto it = std::upper_bound(rho_.begin(), rho_.end(), rho);
    std::size_t i = it == rho_.begin() ? 0 : static_cast<std::size_t>(it - rho_.begin()) - 1;
    if (i + 1 >= rho_.size()) i = rho_.size() - 2;
    const double h = rho_[i + 1] - rho_[i];
    return hermite((rho - rho_[i]) / h, h, r_[i], 1.0 / slope_[i], r_[i + 1],
                   1.0 / slope_[i + 1]);
}

ConjugatedCoeffs conjugated_coeffs(const ProfileFn& profile, double gamma, double r) {
    const RevolutionCurvatures c = revolution_curvatures(profile, r);
    ConjugatedCoeffs out;
    out.mu = c.mu;
    out.circle_curvature = c.mu / r;
    out.drift = out.circle_curvature - gamma * profile.v(r) * c.mu;
    const double trace_sq = c.c_r * c.c_r + c.c_theta * c.c_theta;
    out.potential = (gamma * gamma - 1.0) / 4.0 -
                    (1.0 + gamma) * (1.0 + gamma) / 4.0 * c.mu * c.mu + trace_sq;
    return out;
}

ModeOperator conjugated_mode_operator(const ProfileFn& profile, const RhoMap& map, double gamma,
                                      int m, double rho_max, int n_nodes) {
    if (rho_max <= map.rho_lo()) throw std::invalid_argument("conjugated_mode_operator: range");
    if (rho_max > map.rho_hi())
        throw std::invalid_argument("conjugated_mode_operator: rho_max beyond the profile");
    ModeOperator op;
    op.m = m;
    op.weight = WeightSpec{WeightSpec::Kind::phi_gamma, gamma, 0.0, 0.0};
    op.x.resize(n_nodes);
    op.r.resize(n_nodes);
    op.a2.assign(n_nodes, 1.0);
    op.a1.resize(n_nodes);
    op.a0.resize(n_nodes);
    const double rho_lo = map.rho_lo();
    for (int i = 0; i < n_nodes; ++i) {
        const double rho = rho_lo + (rho_max - rho_lo) * i / (n_nodes - 1);
        const double r = map.r_of(std::max(rho, rho_lo + 1e-12));
        const ConjugatedCoeffs c = conjugated_coeffs(profile, gamma, r);
        op.x[i] = rho;
        op.r[i] = r;
        op.a1[i] = c.drift;
        op.a0[i] = c.potential - static_cast<double>(m) * m / (r * r);
    }
    op.inner = m == 0 ? BoundaryCondition{BoundaryCondition::Kind::neumann_ghost, 0.0}
                      : BoundaryCondition{BoundaryCondition::Kind::dirichlet, 0.0};
    op.outer = BoundaryCondition{BoundaryCondition::Kind::robin_ghost, 0.5};
    return op;
}

}  // namespace grimglue
