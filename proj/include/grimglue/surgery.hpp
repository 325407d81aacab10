#pragma once

#include "grimglue/cutoff.hpp"
#include "grimglue/geometry.hpp"
#include "grimglue/grim.hpp"
#include "grimglue/params.hpp"
#include "grimglue/profile.hpp"

#include <memory>
#include <vector>

namespace grimglue {

// Leading expansion data of an end profile: u ~ constant + c log r + q r^2,
// fitted by least squares on a gluing annulus.
struct EndFit {
    double constant = 0.0;
    double log_coeff = 0.0;
    double quad_coeff = 0.0;
};

EndFit fit_end_data(const ProfileFn& profile, double r_lo, double r_hi, int n = 200);

// Catenoid end with logarithmic coefficient c and constant term A_const:
// u = z0 + c arccosh(r/|c|) with z0 = A_const - c log(2/|c|).
ProfileFn catenoid_end_profile(double c, double A_const);

// Grim end of speed eps over [r_lo, r_hi] with logarithmic coefficient c,
// realized by rescaling the small-scale exact solution; the primitive is
// shifted so that the constant fitted on [fit_lo, fit_hi] equals A_const.
RadialProfile grim_end_profile(double c, double A_const, double epsilon, double r_lo,
                               double r_hi, double fit_lo, double fit_hi, double tol = 1e-12,
                               int n_samples = 4001, int order = 1);

// Parameters of the joining operation; `c0` is the family center.
struct GluingConfig {
    double epsilon = 1e-5;
    double R = 20.0;
    double R0 = 2.0;       // inner edge of the catenoidal core region
    double c0 = 1.0;
    double z0 = 0.0;       // catenoid vertical offset, fixed along the family
    double r_max = -1.0;   // outer radius; default 2.5 R^4
    double Delta = 10.0;
    double eta = 0.1;
    double Cbound = 2.0;
    double delta = 1.5;    // cylindrical weight for reports
    double tol = 1e-12;
    int order = 1;
    int n_samples = 4001;
    double match_tol = 5e-2;  // relative gate on fitted (c, A) agreement

    double outer_radius() const { return r_max > 0 ? r_max : 2.5 * R * R * R * R; }
};

// Catenoidal core joined to a Grim end across A(R, 2R): H = chi F + (1-chi) G,
// coinciding with F and G bitwise on the untouched regions.
struct GluedSurface {
    GluingConfig config;
    double c = 1.0;
    int end_count = 2;        // catenoid core: one joined end, one kept minimal
    int symmetry_order = 1;   // dihedral order g recorded with the surface
    ProfileFn core;
    ProfileFn end;
    std::shared_ptr<RadialProfile> end_profile;
    std::shared_ptr<CutoffFunction> chi_c;  // transition A(R, 2R)
    EndFit core_fit, end_fit;
    double r_lo = 0.0, r_hi = 0.0;

    ProfileFn joined() const;
    double residual(double r) const;  // MCFS value of the joined graph
};

GluedSurface build_glued(const GluingConfig& config, double c);

// Exact admissibility test of the construction's parameter inequalities,
// with the scale parameter A := R.
AdmissibilityReport admissible_params(double epsilon, double R, double Delta, double eta,
                                      double Cbound, double c);

// Modified normal field N-hat = sin(phi)/sin(theta) e_z + sin(theta-phi)/sin(theta) N
// with cos(phi) = (1 - chi_eps) + chi_eps cos(theta); chi_eps cuts A(1/eps, 2/eps).
struct ModifiedNormal {
    std::array<double, 3> direction;  // unit vector
    double ez_weight;                 // sin(phi)/sin(theta)
    double normal_weight;             // sin(theta-phi)/sin(theta)
};

ModifiedNormal modified_normal(const GraphChart& chart, double epsilon, double x, double y);

// Perturbed surface (x, H_{c0+l}(x)) + v e_z + f(x) N-hat_{c0+l}(x) as a
// parametric surface, with a sampled graph-condition check.
struct PerturbedSurface {
    ParametricSurface surface;
    bool graph_ok = true;
};

PerturbedSurface perturb(const GluingConfig& config, double l, double v, const ScalarField& f,
                         double fd_spacing = 1e-4);

// Radial fast path: MCFS value of the rotated parametric curve
// t -> (t + f nr(t), H(t) + v + f nz(t)).
double mcfs_residual_revolution_parametric(const std::function<double(double)>& radius,
                                           const std::function<double(double)>& height,
                                           double epsilon, double t, double h = 1e-5);

// Deficiency field with its support diagnostics: values are clamped to zero
// beyond the stated support radius after recording the pre-clamp tail sup.
struct DeficiencyField {
    std::vector<double> values;
    double interior_sup = 0.0;
    double tail_sup = 0.0;  // measured before the clamp; solver-noise level
};

// X is the c-derivative of the MCFS value of the glued family (Richardson
// differences), exactly supported in B(2R); Y is the response to a vertical
// shift of the end relative to the core, supported in B(2 R0).
DeficiencyField deficiency_X(const GluingConfig& config, double l,
                             const std::vector<double>& radii, double h = 2e-3);
std::vector<double> deficiency_Y(const GluedSurface& glued, double v,
                                 const std::vector<double>& radii, double h = 1e-4);

}  // namespace grimglue
