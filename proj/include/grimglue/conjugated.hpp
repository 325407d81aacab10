#pragma once

#include "grimglue/mode_op.hpp"
#include "grimglue/profile.hpp"

#include <vector>

namespace grimglue {

// Intrinsic distance along the surface of revolution: rho(r) by quadrature of
// sqrt(1 + v^2), with a monotone inverse.
class RhoMap {
  public:
    RhoMap(const ProfileFn& profile, double r_lo, double r_hi, int n = 4001);

    double rho(double r) const;
    double r_of(double rho) const;
    double rho_lo() const { return rho_.front(); }
    double rho_hi() const { return rho_.back(); }

  private:
    std::vector<double> r_, rho_, slope_;
};

// Radial coefficient functions of the conjugated operator
//   J_gamma f = f_rhorho + (c - gamma v mu) f_rho
//               + [ (gamma^2-1)/4 - (1+gamma)^2/4 mu^2 + Tr(A^2) ] f
//               + angular part,
// with c = mu / r the geodesic curvature of the centered circles.
struct ConjugatedCoeffs {
    double circle_curvature;  // c = mu / r
    double drift;             // c - gamma v mu
    double potential;         // zeroth-order coefficient (without -m^2/r^2)
    double mu;
};

ConjugatedCoeffs conjugated_coeffs(const ProfileFn& profile, double gamma, double r);

// Mode operator of the conjugated problem on a uniform rho-grid spanning
// [rho(r_lo), rho_max]; inner regularity and asymptotic-Robin outer condition
// f_rho + f/2 = 0 from the -1/4 potential.
ModeOperator conjugated_mode_operator(const ProfileFn& profile, const RhoMap& map, double gamma,
                                      int m, double rho_max, int n_nodes);

}  // namespace grimglue
