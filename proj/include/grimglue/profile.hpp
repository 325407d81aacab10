#pragma once

#include "grimglue/params.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace grimglue {

enum class Provenance {
    grim_large_scale,
    grim_small_scale,
    paraboloid,
    contraction,
    analytic,
};

// Sampled solution of a radial profile ODE: u is the height, v = du/dr its
// derivative, dv = dv/dr and ddv = d2v/dr2 taken from the equation. Between
// nodes the profile evaluates through quintic Hermite pieces, so off-node
// values keep O(h^6) fidelity to the sampled solution.
class RadialProfile {
  public:
    RadialProfile() = default;
    RadialProfile(std::vector<double> r, std::vector<double> u, std::vector<double> v,
                  std::vector<double> dv, std::vector<double> ddv, double tol,
                  Provenance provenance);

    double r_lo() const { return r_.front(); }
    double r_hi() const { return r_.back(); }
    std::size_t size() const { return r_.size(); }
    double tol() const { return tol_; }
    Provenance provenance() const { return provenance_; }

    const std::vector<double>& r() const { return r_; }
    const std::vector<double>& u() const { return u_; }
    const std::vector<double>& v() const { return v_; }
    const std::vector<double>& dv() const { return dv_; }

    double u_at(double r) const;
    double v_at(double r) const;
    double dv_at(double r) const;
    double ddv_at(double r) const;

    // Shifts the primitive so that u(r_lo) = u0.
    void rebase_primitive(double u0);

    std::optional<GrimParameters> params;

  private:
    std::size_t segment(double r) const;
    std::vector<double> r_, u_, v_, dv_, ddv_;
    double tol_ = 0.0;
    Provenance provenance_ = Provenance::analytic;
};

// Closed-form profile: u, v = u', dv = u'', ddv = u'''.
struct ProfileFn {
    std::function<double(double)> u;
    std::function<double(double)> v;
    std::function<double(double)> dv;
    std::function<double(double)> ddv;
};

ProfileFn as_fn(const RadialProfile& profile);

// Plane at height z0.
ProfileFn plane_profile_fn(double z0);

// Catenoid end  u(r) = z0 + c * arccosh(r / |c|)  with log coefficient c; its
// expansion is (z0 + c log(2/|c|)) + c log r + O(r^{-2}).
ProfileFn catenoid_profile_fn(double c, double z0);

}  // namespace grimglue
