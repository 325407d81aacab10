#pragma once

#include "grimglue/bivariate.hpp"
#include "grimglue/params.hpp"
#include "grimglue/profile.hpp"

#include <vector>

namespace grimglue {

enum class Spacing { linear, logarithmic };

struct SampleSpec {
    int n = 2001;
    Spacing spacing = Spacing::linear;
    std::vector<double> grid(double lo, double hi) const;
};

// Unit-speed Grim ODE  r v' + (v - r)(1 + v^2) = 0  integrated from
// v(r0) = v0 across [range_lo, range_hi] (r0 inside). The primitive starts at
// u(range_lo) = 0. Blow-ups surface as OdeBlowup with the failure radius.
RadialProfile integrate_profile(double v0, double r0, double range_lo, double range_hi,
                                double tol, const SampleSpec& spec = {});

// The bowl solution defined on all of ]0, oo[, started from the exact
// polynomial expansion near the origin.
RadialProfile paraboloid_profile(double range_lo, double range_hi, double tol = 1e-12,
                                 const SampleSpec& spec = {});

// |v_n - v| at the given radii, with v the entire solution; computed in
// extended precision so the n = 2 decay rate sits above solver noise.
std::vector<double> large_scale_deviation(int n, const std::vector<double>& radii, double tol);

// Solution data of the small-scale problem on x in [0, x_max], where
// r = eps*A*e^x. w is the Jacobi field (variation of the initial value along
// the formal kernel direction), co-integrated with v.
struct SmallScaleSolution {
    GrimParameters params;
    int k = 1;
    std::vector<double> x;
    std::vector<double> v;
    std::vector<double> w;
    double tol = 0.0;

    double v_at(double x) const;
    double w_at(double x) const;
    RadialProfile to_profile() const;
};

// Exact solution of order k: v(0) = v_k(0) from the bivariate partial sum,
// then the reparametrised ODE. Inadmissible parameters throw unless
// `relaxed`; the admissibility predicate itself stays exact.
SmallScaleSolution exact_small_scale(int k, const GrimParameters& params, double tol,
                                     bool relaxed = false, int n_samples = 4001,
                                     double x_max_override = -1.0);

// Jacobi field of the logarithmic-parameter variation, co-integrated with
// the exact solution: w solves D1 w + 3 v^2 w - 2 eps A e^x v w = 0 with
// w(0) = w_k(0) from the q-weighted partial sum. By linearity and uniqueness
// it equals c * dv-hat/dc.
SmallScaleSolution jacobi_field_small_scale(int k, const GrimParameters& params, double tol,
                                            bool relaxed = false, int n_samples = 4001);

struct ContractionResult {
    SmallScaleSolution solution;
    int iterations = 0;
    double contraction_factor = 0.0;   // max ratio of successive increment norms
    double first_increment_norm = 0.0; // ||Phi(0)||_1
    std::vector<double> increment_norms;
};

// Fixed-point solver Phi(w) = w - D1^{-1} G(v_k + w) on a uniform x-grid,
// iterated until the increment norm ||.||_1 = sup|d/dx| drops below tol.
// Reports the measured contraction factor and fails if it reaches 1.
ContractionResult contraction_solve(int k, const GrimParameters& params, double T, double tol,
                                    bool relaxed = false, int n_samples = 4001);

// Cumulative integral on a uniform grid by local quartic fits; result[0] = 0.
std::vector<double> cumulative_integral(const std::vector<double>& x,
                                        const std::vector<double>& z);

// Explicit inverse of D1: (D1^{-1} g)(x) = e^{-x} int_0^x e^y g(y) dy on a
// uniform grid (quartic local quadrature).
std::vector<double> d1_inverse(const std::vector<double>& x, const std::vector<double>& g);

}  // namespace grimglue
