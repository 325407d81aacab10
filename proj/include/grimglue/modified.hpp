#pragma once

#include "grimglue/cutoff.hpp"
#include "grimglue/mode_op.hpp"
#include "grimglue/params.hpp"
#include "grimglue/profile.hpp"

#include <functional>

namespace grimglue {

// Coefficients of the modified (weight-conjugated) Jacobi operator of a
// radial graph, in two equivalent layouts:
//   as plane fields   L f = Lap f + alpha(r) x^i x^j / r^2 f_ij + beta(r) x^i f_i
//   as a mode operator L_m f = murr(r) f'' + b(r) f' - m^2/r^2 f
// with murr = 1 + alpha = mu^2 and b the collected radial first-order part.
struct RadialOperatorCoeffs {
    std::function<double(double)> second_order_factor;  // alpha(r) = -mu^2 v^2
    std::function<double(double)> first_order_factor;   // beta(r)
    std::function<double(double)> f_rr_coeff;           // mu^2
    std::function<double(double)> f_r_coeff;            // b(r), includes the 1/r of Lap
};

RadialOperatorCoeffs modified_grim_operator(const ProfileFn& profile, double epsilon);

// Mode operator of the modified Jacobi operator on the given nodes.
ModeOperator radial_graph_mode_operator(const ProfileFn& profile, double epsilon, int m,
                                        std::vector<double> nodes, BoundaryCondition inner,
                                        BoundaryCondition outer);

// The splitting  J_hat_0 = J_hat_{p,0} + D + E  over the small-scale annulus
// [eps A, 2 eps A^4], with mode-wise harmonic extension into B(eps A).
struct OperatorSplit {
    GrimParameters params;
    double r_ball = 0.0;     // eps A
    double r_outer = 0.0;    // 2 eps A^4

    // E f = e(r) x^i f_i with the exact linear extension inside the ball.
    double e_inner = 0.0;    // 2 c^2 / (eps^2 A^4)
    std::function<double(double)> e_annulus;

    // D coefficient factors on the annulus and their boundary values at eps A.
    std::function<double(double)> aD, bD;
    double aD_boundary = 0.0, bD_boundary = 0.0;

    // Pointwise fields (magnitude conventions: |a| is the matrix 2-norm of
    // the second-order deviation, |b| the vector magnitude).
    double e_field_magnitude(double r) const;
    double aD_field_magnitude(double r) const;
    double bD_field_magnitude(double r) const;
};

OperatorSplit split_DE(const RadialOperatorCoeffs& grim, const RadialOperatorCoeffs& paraboloid,
                       const GrimParameters& params);

struct CoefficientNormReport {
    double aD_sup_ball = 0, aD_sup_annulus = 0;
    double bD_sup_ball = 0, bD_sup_annulus = 0;
    double e_sup_ball = 0, e_sup_annulus = 0;
    double aD_holder_annulus = 0, bD_holder_annulus = 0;  // sampled, non-certified
};

CoefficientNormReport coefficient_norm_report(const OperatorSplit& split, double alpha = 0.05);

// L^p norm over the plane of the E coefficient field (radial quadrature).
double lp_norm_E(const OperatorSplit& split, double p);

}  // namespace grimglue
