#pragma once

#include "grimglue/profile.hpp"

#include <array>
#include <functional>

namespace grimglue {

// Height field over a planar domain with first and second derivative access.
struct HeightFn {
    std::function<double(double, double)> u;
    std::function<std::array<double, 2>(double, double)> grad;   // u_x, u_y
    std::function<std::array<double, 3>(double, double)> hess;   // u_xx, u_xy, u_yy
};

// Graph chart: a height field, the annular domain it lives over, and the
// soliton speed. `fd_spacing` is 0 for analytic derivative access and the
// step h when derivatives come from centered differences.
struct GraphChart {
    HeightFn height;
    double r_inner = 0.0;
    double r_outer = 1.0;
    double epsilon = 1.0;
    double fd_spacing = 0.0;

    bool contains(double x, double y) const;
};

// Analytic chart from closed-form height data.
GraphChart make_chart(HeightFn height, double r_inner, double r_outer, double epsilon);

// Chart whose derivatives are centered differences of the scalar height at
// spacing h (for discretization-error studies).
GraphChart make_chart_fd(std::function<double(double, double)> u, double h, double r_inner,
                         double r_outer, double epsilon);

// Radial chart built from a profile.
GraphChart make_chart_radial(const ProfileFn& profile, double r_inner, double r_outer,
                             double epsilon);

// Grim reaper graph u = log(sec(x)), a unit-speed soliton over a strip; the
// chart domain is the inscribed disk of radius `r_outer` < pi/2.
GraphChart grim_reaper_chart(double r_outer, double epsilon = 1.0);

// All pointwise metric/curvature quantities of a graph.
struct GraphPointFields {
    double u;
    std::array<double, 2> du;
    std::array<double, 3> d2u;        // u_xx, u_xy, u_yy
    double mu;                        // <N, e_z> for the upward unit normal
    std::array<std::array<double, 2>, 2> g;
    std::array<std::array<double, 2>, 2> ginv;
    std::array<std::array<std::array<double, 2>, 2>, 2> christoffel;  // [k][i][j]
    std::array<std::array<double, 2>, 2> second_fundamental;  // -mu u_ij
    std::array<std::array<double, 2>, 2> shape;               // -mu g^{ik} u_{kj}
    double mean_curvature;            // trace of the shape operator
    double trace_shape_sq;            // Tr(A^2)
    std::array<double, 2> pi_ez;      // tangential projection of e_z: mu^2 u_i
};

GraphPointFields graph_fields(const GraphChart& chart, double x, double y);

// MCFS value at a point: H + eps <N, e_z> = mu (eps - g^{ij} u_{ij}).
// Zero identifies a translating soliton of speed eps.
double mcfs_residual(const GraphChart& chart, double x, double y);

// Scalar field on a chart with derivative access.
struct ScalarField {
    std::function<double(double, double)> f;
    std::function<std::array<double, 2>(double, double)> grad;
    std::function<std::array<double, 3>(double, double)> hess;
};

ScalarField make_field_fd(std::function<double(double, double)> f, double h);

// MCFS Jacobi operator  J f = Lap^G f + Tr(A^2) f + eps <grad^G f, e_z>.
// Sign convention: the flat limit with eps = 0 is the plane Laplacian, so
// J f = -(d/dt) M(u + t f / mu) at t = 0.
double mcfs_jacobi_apply(const GraphChart& chart, const ScalarField& field, double x, double y);

// Principal curvatures and normal component of a surface of revolution:
// c_r = -u'' / W^3, c_theta = -u' / (r W), mu = 1 / W with W = sqrt(1+u'^2).
struct RevolutionCurvatures {
    double c_r;
    double c_theta;
    double mu;
};

RevolutionCurvatures revolution_curvatures(const ProfileFn& profile, double r);

// MCFS value of the surface of revolution at radius r.
double mcfs_residual_radial(const ProfileFn& profile, double epsilon, double r);

// Parametric surface R^2 -> R^3 with derivative access (for perturbed
// surfaces that need not be graphs over the chart coordinates).
struct ParametricSurface {
    std::function<std::array<double, 3>(double, double)> p;
    std::function<std::array<std::array<double, 3>, 2>(double, double)> dp;   // P_x, P_y
    std::function<std::array<std::array<double, 3>, 3>(double, double)> d2p;  // P_xx, P_xy, P_yy
};

ParametricSurface parametric_fd(std::function<std::array<double, 3>(double, double)> p, double h);

// MCFS value of a parametric surface with the upward-oriented unit normal;
// matches mcfs_residual when the surface is a graph chart.
double mcfs_residual_parametric(const ParametricSurface& surface, double epsilon, double x,
                                double y);

}  // namespace grimglue
