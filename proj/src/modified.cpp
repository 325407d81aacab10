#include "grimglue/modified.hpp"

#include "grimglue/norms.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace grimglue {

RadialOperatorCoeffs modified_grim_operator(const ProfileFn& profile, double epsilon) {
    auto mu2 = [profile](double r) {
        const double v = profile.v(r);
        return 1.0 / (1.0 + v * v);
    };
    RadialOperatorCoeffs out;
    out.f_rr_coeff = mu2;
    out.second_order_factor = [profile, mu2](double r) {
        const double v = profile.v(r);
        return -mu2(r) * v * v;
    };
    out.f_r_coeff = [profile, mu2, epsilon](double r) {
        const double v = profile.v(r);
        const double dv = profile.dv(r);
        const double m2 = mu2(r);
        return m2 / r + v * dv * m2 * (2.0 * m2 * v * v - m2 - 2.0) + epsilon * m2 * v;
    };
    out.first_order_factor = [f = out.f_r_coeff](double r) { return (f(r) - 1.0 / r) / r; };
    return out;
}

ModeOperator radial_graph_mode_operator(const ProfileFn& profile, double epsilon, int m,
                                        std::vector<double> nodes, BoundaryCondition inner,
                                        BoundaryCondition outer) {
    const RadialOperatorCoeffs coeffs = modified_grim_operator(profile, epsilon);
    ModeOperator op;
    op.m = m;
    op.weight = WeightSpec{WeightSpec::Kind::psi, 0.0, 0.0, 0.0};
    op.x = nodes;
    op.r = std::move(nodes);
    const std::size_t n = op.x.size();
    op.a2.resize(n);
    op.a1.resize(n);
    op.a0.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = op.x[i];
        op.a2[i] = coeffs.f_rr_coeff(r);
        op.a1[i] = coeffs.f_r_coeff(r);
        op.a0[i] = -static_cast<double>(m) * m / (r * r);
    }
    op.inner = inner;
    op.outer = outer;
    return op;
}

double OperatorSplit::e_field_magnitude(double r) const {
    if (r <= r_ball) return std::abs(e_inner) * r;
    return std::abs(e_annulus(r)) * r;
}

double OperatorSplit::aD_field_magnitude(double r) const {
    if (r <= r_ball) {
        // Extension matrix aD_b [ delta (1 - r^2/rho^2)/2 + x x^T / rho^2 ];
        // 2-norm attained along the radial eigenvector.
        const double t = r * r / (r_ball * r_ball);
        return std::abs(aD_boundary) * std::max(std::abs(1 - t) / 2, std::abs(1 + t) / 2);
    }
    return std::abs(aD(r));
}

double OperatorSplit::bD_field_magnitude(double r) const {
    if (r <= r_ball) return std::abs(bD_boundary) * r;
    return std::abs(bD(r)) * r;
}

OperatorSplit split_DE(const RadialOperatorCoeffs& grim, const RadialOperatorCoeffs& paraboloid,
                       const GrimParameters& params) {
    OperatorSplit split;
    split.params = params;
    split.r_ball = params.r_inner();
    split.r_outer = 2.0 * params.r_outer();
    const double c = params.c, eps = params.epsilon, A = params.A;

    auto chi = std::make_shared<CutoffFunction>(params.r_outer());
    split.e_inner = 2.0 * c * c / (eps * eps * A * A * A * A);
    split.e_annulus = [chi, c, eps](double r) {
        return (*chi)(r)*2.0 * c * c * eps * eps / (r * r * r * r);
    };
    split.aD = [grim, paraboloid](double r) {
        return grim.second_order_factor(r) - paraboloid.second_order_factor(r);
    };
    split.bD = [grim, paraboloid, e = split.e_annulus](double r) {
        return grim.first_order_factor(r) - paraboloid.first_order_factor(r) - e(r);
    };
    split.aD_boundary = split.aD(split.r_ball);
    split.bD_boundary = split.bD(split.r_ball);
    return split;
}

CoefficientNormReport coefficient_norm_report(const OperatorSplit& split, double alpha) {
    CoefficientNormReport rep;
    const int n = 400;
    std::vector<double> radii(n), aD_vals(n), bD_vals(n);
    for (int i = 0; i < n; ++i) {
        const double r =
            split.r_ball * std::pow(split.r_outer / split.r_ball, (i + 0.5) / n);
        radii[i] = r;
        aD_vals[i] = split.aD(r);
        bD_vals[i] = split.bD(r) * r;
        rep.aD_sup_annulus = std::max(rep.aD_sup_annulus, split.aD_field_magnitude(r));
        rep.bD_sup_annulus = std::max(rep.bD_sup_annulus, split.bD_field_magnitude(r));
        rep.e_sup_annulus = std::max(rep.e_sup_annulus, split.e_field_magnitude(r));
    }
    for (int i = 0; i < 100; ++i) {
        const double r = split.r_ball * (i + 0.5) / 100;
        rep.aD_sup_ball = std::max(rep.aD_sup_ball, split.aD_field_magnitude(r));
        rep.bD_sup_ball = std::max(rep.bD_sup_ball, split.bD_field_magnitude(r));
        rep.e_sup_ball = std::max(rep.e_sup_ball, split.e_field_magnitude(r));
    }
    rep.aD_holder_annulus = holder_seminorm(radii, aD_vals, alpha);
    rep.bD_holder_annulus = holder_seminorm(radii, bD_vals, alpha);
    return rep;
}

double lp_norm_E(const OperatorSplit& split, double p) {
    if (!(p >= 1)) throw std::invalid_argument("lp_norm_E: p >= 1");
    // Inside the ball |a| = e_inner r: closed-form radial integral.
    const double ball = 2.0 * M_PI * std::pow(std::abs(split.e_inner), p) *
                        std::pow(split.r_ball, p + 2) / (p + 2);
    // Annulus: log-spaced quadrature of (chi 2 c^2 eps^2 / r^3)^p r dr.
    const int n = 4000;
    double annulus = 0.0;
    const double ratio = std::pow(split.r_outer * 1.0000001 / split.r_ball, 1.0 / n);
    double r = split.r_ball;
    for (int i = 0; i < n; ++i) {
        const double r_next = r * ratio;
        const double mid = std::sqrt(r * r_next);
        annulus += std::pow(split.e_field_magnitude(mid), p) * mid * (r_next - r);
        r = r_next;
    }
    annulus *= 2.0 * M_PI;
    return std::pow(ball + annulus, 1.0 / p);
}

}  // namespace grimglue
