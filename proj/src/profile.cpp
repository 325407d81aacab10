#include "grimglue/profile.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace grimglue {

namespace {

// Quintic Hermite basis on [0,1] from endpoint values and first/second
// derivatives (derivatives already scaled by the segment width).
double quintic(double t, double f0, double d0, double s0, double f1, double d1, double s1) {
    const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
    const double h00 = 1 - 10 * t3 + 15 * t4 - 6 * t5;
    const double h10 = t - 6 * t3 + 8 * t4 - 3 * t5;
    const double h20 = 0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5;
    const double h01 = 10 * t3 - 15 * t4 + 6 * t5;
    const double h11 = -4 * t3 + 7 * t4 - 3 * t5;
    const double h21 = 0.5 * t3 - t4 + 0.5 * t5;
    return h00 * f0 + h10 * d0 + h20 * s0 + h01 * f1 + h11 * d1 + h21 * s1;
}

double quintic_deriv(double t, double f0, double d0, double s0, double f1, double d1,
                     double s1) {
    const double t2 = t * t, t3 = t2 * t, t4 = t3 * t;
    const double h00 = -30 * t2 + 60 * t3 - 30 * t4;
    const double h10 = 1 - 18 * t2 + 32 * t3 - 15 * t4;
    const double h20 = t - 4.5 * t2 + 6 * t3 - 2.5 * t4;
    const double h01 = 30 * t2 - 60 * t3 + 30 * t4;
    const double h11 = -12 * t2 + 28 * t3 - 15 * t4;
    const double h21 = 1.5 * t2 - 4 * t3 + 2.5 * t4;
    return h00 * f0 + h10 * d0 + h20 * s0 + h01 * f1 + h11 * d1 + h21 * s1;
}

}  // namespace

RadialProfile::RadialProfile(std::vector<double> r, std::vector<double> u, std::vector<double> v,
                             std::vector<double> dv, std::vector<double> ddv, double tol,
                             Provenance provenance)
    : r_(std::move(r)),
      u_(std::move(u)),
      v_(std::move(v)),
      dv_(std::move(dv)),
      ddv_(std::move(ddv)),
      tol_(tol),
      provenance_(provenance) {
    if (r_.size() < 2 || r_.size() != u_.size() || r_.size() != v_.size() ||
        r_.size() != dv_.size() || r_.size() != ddv_.size())
        throw std::invalid_argument("RadialProfile: inconsistent sample arrays");
    if (!std::is_sorted(r_.begin(), r_.end()))
        throw std::invalid_argument("RadialProfile: radii must increase");
}

std::size_t RadialProfile::segment(double r) const {
    if (r < r_.front() - 1e-9 * (1 + std::abs(r_.front())) ||
        r > r_.back() + 1e-9 * (1 + std::abs(r_.back())))
        throw std::out_of_range("RadialProfile: r outside sampled domain");
    auto it = std::upper_bound(r_.begin(), r_.end(), r);
    std::size_t i = static_cast<std::size_t>(std::distance(r_.begin(), it));
    if (i == 0) return 0;
    if (i >= r_.size()) return r_.size() - 2;
    return i - 1;
}

double RadialProfile::u_at(double r) const {
    const std::size_t i = segment(r);
    const double h = r_[i + 1] - r_[i];
    const double t = (r - r_[i]) / h;
    return quintic(t, u_[i], h * v_[i], h * h * dv_[i], u_[i + 1], h * v_[i + 1],
                   h * h * dv_[i + 1]);
}

double RadialProfile::v_at(double r) const {
    const std::size_t i = segment(r);
    const double h = r_[i + 1] - r_[i];
    const double t = (r - r_[i]) / h;
    return quintic(t, v_[i], h * dv_[i], h * h * ddv_[i], v_[i + 1], h * dv_[i + 1],
                   h * h * ddv_[i + 1]);
}

double RadialProfile::dv_at(double r) const {
    const std::size_t i = segment(r);
    const double h = r_[i + 1] - r_[i];
    const double t = (r - r_[i]) / h;
    return quintic_deriv(t, v_[i], h * dv_[i], h * h * ddv_[i], v_[i + 1], h * dv_[i + 1],
                         h * h * ddv_[i + 1]) /
           h;
}

double RadialProfile::ddv_at(double r) const {
    // ddv only feeds third-derivative-level terms; linear blending suffices.
    const std::size_t i = segment(r);
    const double t = (r - r_[i]) / (r_[i + 1] - r_[i]);
    return (1 - t) * ddv_[i] + t * ddv_[i + 1];
}

void RadialProfile::rebase_primitive(double u0) {
    const double shift = u0 - u_.front();
    for (auto& x : u_) x += shift;
}

ProfileFn as_fn(const RadialProfile& profile) {
    auto p = std::make_shared<RadialProfile>(profile);
    return ProfileFn{[p](double r) { return p->u_at(r); }, [p](double r) { return p->v_at(r); },
                     [p](double r) { return p->dv_at(r); },
                     [p](double r) { return p->ddv_at(r); }};
}

ProfileFn plane_profile_fn(double z0) {
    return ProfileFn{[z0](double) { return z0; }, [](double) { return 0.0; },
                     [](double) { return 0.0; }, [](double) { return 0.0; }};
}

ProfileFn catenoid_profile_fn(double c, double z0) {
    if (c == 0.0) return plane_profile_fn(z0);
    const double a = std::abs(c);
    return ProfileFn{
        [c, a, z0](double r) { return z0 + c * std::acosh(r / a); },
        [c, a](double r) { return c / std::sqrt(r * r - a * a); },
        [c, a](double r) { return -c * r / std::pow(r * r - a * a, 1.5); },
        [c, a](double r) {
            const double d = r * r - a * a;
            return c * (2.0 * r * r + a * a) / std::pow(d, 2.5);
        },
    };
}

}  // namespace grimglue
