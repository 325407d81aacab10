#include <doctest.h>

#include "grimglue/conjugated.hpp"
#include "grimglue/cutoff.hpp"
#include "grimglue/fit.hpp"
#include "grimglue/geometry.hpp"
#include "grimglue/grim.hpp"
#include "grimglue/mode_op.hpp"
#include "grimglue/modified.hpp"
#include "grimglue/report.hpp"

#include <cmath>

using namespace grimglue;

namespace {

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = a + (b - a) * i / (n - 1);
    return out;
}

const RadialProfile& unit_paraboloid() {
    static const RadialProfile p =
        paraboloid_profile(5e-3, 40.0, 1e-12, {6001, Spacing::logarithmic});
    return p;
}

}  // namespace

TEST_CASE("cutoff template values and derivatives") {
    const CutoffFunction chi(3.0);
    CHECK(chi(3.0) == 1.0);
    CHECK(chi(6.0) == 0.0);
    CHECK(chi(0.5) == 1.0);
    CHECK(chi(100.0) == 0.0);
    double prev = 1.0;
    for (int i = 0; i <= 300; ++i) {
        const double r = 2.9 + 3.3 * i / 300;
        const double value = chi(r);
        CHECK(value <= prev + 1e-15);
        prev = value;
    }
    // Jet derivatives match finite differences of the value.
    for (double r : {3.4, 4.1, 5.2}) {
        const double h = 1e-5;
        const Jet3 j = chi.jet(r);
        const double fd1 = (chi(r + h) - chi(r - h)) / (2 * h);
        const double fd2 = (chi(r + h) - 2 * chi(r) + chi(r - h)) / (h * h);
        CHECK(j.d1 == doctest::Approx(fd1).epsilon(1e-7));
        CHECK(j.d2 == doctest::Approx(fd2).epsilon(1e-4));
    }
    // Scaling law sup|chi_a'| = template constant / a.
    const double t1 = CutoffFunction::template_derivative_sup(1);
    CHECK(chi.derivative_sup(1) == doctest::Approx(t1 / 3.0));
    const CutoffFunction wide(12.0);
    CHECK(wide.derivative_sup(1) == doctest::Approx(t1 / 12.0));
}

TEST_CASE("mode operator: identity and trivial solves") {
    ModeOperator id;
    id.m = 0;
    id.x = linspace(0.0, 1.0, 101);
    id.r = id.x;
    id.a2.assign(101, 0.0);
    id.a1.assign(101, 0.0);
    id.a0.assign(101, 1.0);
    id.inner = {BoundaryCondition::Kind::dirichlet, 0.0};
    id.outer = {BoundaryCondition::Kind::dirichlet, 0.0};
    const ModeSolver solver(id);
    Rng rng(4);
    CHECK(inverse_norm_estimate(solver, 4, rng) == doctest::Approx(1.0));
    // g = 0 -> f = 0.
    const auto zero = solver.solve(std::vector<double>(101, 0.0));
    for (double v : zero) CHECK(v == 0.0);
}

TEST_CASE("conjugated coefficients of the paraboloid") {
    const ProfileFn fn = as_fn(unit_paraboloid());
    // Circle curvature equals mu / r exactly.
    for (double r : {0.5, 2.0, 10.0}) {
        const ConjugatedCoeffs c = conjugated_coeffs(fn, 0.0, r);
        const double v = fn.v(r);
        CHECK(c.circle_curvature == doctest::Approx((1 / std::sqrt(1 + v * v)) / r));
    }
    // Potential tends to -1/4 like 1/rho; mu^2 decays like r^{-2}.
    const RhoMap map(fn, 5e-3, 40.0);
    std::vector<double> radii, well, musq, rhos;
    for (double r = 3.0; r <= 36.0; r *= 1.18) {
        const ConjugatedCoeffs c = conjugated_coeffs(fn, 0.0, r);
        radii.push_back(r);
        rhos.push_back(map.rho(r));
        well.push_back(std::abs(c.potential + 0.25));
        musq.push_back(c.mu * c.mu);
    }
    const SlopeFit well_fit = decay_exponent(rhos, well);
    CHECK(well_fit.slope <= -1.0 + 0.1);
    const SlopeFit mu_fit = decay_exponent(radii, musq);
    CHECK(std::abs(mu_fit.slope + 2.0) < 0.2);
    // rho grows like r^2 with constant 1/2 (reported, not 1).
    CHECK(map.rho(30.0) / (30.0 * 30.0) == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("discrete kernel element J_0(phi_0 mu) shrinks at O(h^2)") {
    const ProfileFn fn = as_fn(unit_paraboloid());
    const RhoMap map(fn, 5e-3, 40.0);
    std::vector<double> errs;
    for (int n : {800, 1600, 3200}) {
        const ModeOperator op = conjugated_mode_operator(fn, map, 0.0, 0, 300.0, n);
        std::vector<double> kernel(op.size());
        for (std::size_t i = 0; i < op.size(); ++i) {
            const double r = op.r[i];
            const double v = fn.v(r);
            kernel[i] = std::exp(0.5 * fn.u(r)) / std::sqrt(1 + v * v);
        }
        const auto image = op.apply(kernel);
        // Interior sup away from the ends (boundary rows see the BC slack).
        double sup = 0.0, scale = 0.0;
        for (std::size_t i = op.size() / 10; i < op.size() * 9 / 10; ++i) {
            sup = std::max(sup, std::abs(image[i]));
            scale = std::max(scale, std::abs(kernel[i]));
        }
        errs.push_back(sup / scale);
    }
    CHECK(errs[0] / errs[1] > 3.0);
    CHECK(errs[1] / errs[2] > 3.0);
}

TEST_CASE("conjugation consistency against the geometry route") {
    // J_gamma f = phi_gamma J(phi_gamma^{-1} f) with J from the chart module.
    const ProfileFn fn = as_fn(unit_paraboloid());
    const GraphChart chart = make_chart_radial(fn, 0.5, 12.0, 1.0);
    const double gamma = 0.07;
    auto f = [](double r) { return std::exp(-0.3 * (r - 4.0) * (r - 4.0)); };
    auto conjugated_apply = [&](double r) {
        // Radial: f_rhorho = mu (mu f_r)_r etc. assembled from the coefficients.
        const ConjugatedCoeffs c = conjugated_coeffs(fn, gamma, r);
        const double h = 1e-4;
        const double mu_c = c.mu;
        auto mu_at = [&](double rr) {
            const double v = fn.v(rr);
            return 1 / std::sqrt(1 + v * v);
        };
        const double f_r = (f(r + h) - f(r - h)) / (2 * h);
        const double f_rr = (f(r + h) - 2 * f(r) + f(r - h)) / (h * h);
        const double mu_r = (mu_at(r + h) - mu_at(r - h)) / (2 * h);
        // d/drho = mu d/dr; f_rhorho = mu (mu f_r)_r = mu^2 f_rr + mu mu_r f_r.
        const double f_rho = mu_c * f_r;
        const double f_rhorho = mu_c * mu_c * f_rr + mu_c * mu_r * f_r;
        return f_rhorho + c.drift * f_rho + c.potential * f(r);
    };
    auto geometry_apply = [&](double r) {
        const double u_r = fn.u(r);
        (void)u_r;
        const ScalarField field = make_field_fd(
            [&](double x, double y) {
                const double rr = std::hypot(x, y);
                return std::exp(-0.5 * (1 + gamma) * fn.u(rr)) * f(rr);
            },
            1e-4);
        const double phi = std::exp(0.5 * (1 + gamma) * fn.u(r));
        return phi * mcfs_jacobi_apply(chart, field, r, 0.0);
    };
    for (double r : {2.0, 4.0, 6.5}) {
        CHECK(conjugated_apply(r) == doctest::Approx(geometry_apply(r)).epsilon(1e-4));
    }
}

TEST_CASE("mode solves: roundtrip, decay, truncation stability") {
    const ProfileFn fn = as_fn(unit_paraboloid());
    const RhoMap map(fn, 5e-3, 40.0);
    Rng rng(17);
    for (double gamma : {0.0, 0.1, -0.1}) {
        for (int m = 0; m <= 8; m += 2) {
            const ModeOperator op = conjugated_mode_operator(fn, map, gamma, m, 160.0, 2400);
            const ModeSolver solver(op);
            const auto g = random_band_limited(op.x, 8, rng, op.x.front() + 5.0, 120.0);
            const auto sol = solver.solve(g);
            const auto back = op.apply(sol);
            double err = 0.0, sup = 0.0;
            for (std::size_t i = 0; i < g.size(); ++i) {
                err = std::max(err, std::abs(back[i] - g[i]));
                sup = std::max(sup, std::abs(g[i]));
            }
            CHECK(err <= 1e-8 * sup);
        }
    }
    // Far-field decay rate of a solve against the -1/4 potential prediction.
    {
        const ModeOperator op = conjugated_mode_operator(fn, map, 0.0, 0, 160.0, 3200);
        const ModeSolver solver(op);
        std::vector<double> g(op.size(), 0.0);
        for (std::size_t i = 0; i < op.size(); ++i)
            if (op.x[i] > 5.0 && op.x[i] < 10.0)
                g[i] = std::pow(std::sin(M_PI * (op.x[i] - 5.0) / 5.0), 2);
        const auto sol = solver.solve(g);
        std::vector<double> rho, logf;
        for (std::size_t i = 0; i < op.size(); ++i)
            if (op.x[i] > 40.0 && op.x[i] < 120.0 && std::abs(sol[i]) > 1e-280) {
                rho.push_back(op.x[i]);
                logf.push_back(std::log(std::abs(sol[i])));
            }
        const SlopeFit fit = fit_line(rho, logf);
        CHECK(fit.slope == doctest::Approx(-0.5).epsilon(0.05));
    }
    // Inverse-norm estimate moves by less than a factor two when the outer
    // truncation doubles.
    {
        Rng rng_a(5), rng_b(5);
        const ModeOperator op1 = conjugated_mode_operator(fn, map, 0.0, 0, 80.0, 1600);
        const ModeOperator op2 = conjugated_mode_operator(fn, map, 0.0, 0, 160.0, 3200);
        const double n1 = inverse_norm_estimate(ModeSolver(op1), 6, rng_a);
        const double n2 = inverse_norm_estimate(ModeSolver(op2), 6, rng_b);
        CHECK(n2 / n1 < 2.0);
        CHECK(n1 / n2 < 2.0);
    }
}

TEST_CASE("modified operator: flat limit and structural match") {
    // Flat profile: operator reduces to the Laplacian.
    const ProfileFn flat = plane_profile_fn(0.0);
    const RadialOperatorCoeffs coeffs = modified_grim_operator(flat, 0.0);
    for (double r : {0.5, 2.0}) {
        CHECK(coeffs.f_rr_coeff(r) == 1.0);
        CHECK(coeffs.f_r_coeff(r) == doctest::Approx(1.0 / r));
        CHECK(coeffs.second_order_factor(r) == 0.0);
    }
    // Grim end: main structural terms against the small-scale model, with the
    // remainder below a fitted envelope of the displayed shape.
    GrimParameters params;
    params.epsilon = 1e-6;
    params.A = 20.0;
    params.c = 1.0;
    const double xmax = 3 * std::log(params.A) + std::log(2.2);
    const auto small = exact_small_scale(1, params, 1e-13, true, 4001, xmax);
    const RadialProfile prof = small.to_profile();
    const ProfileFn grim_fn = as_fn(prof);
    const RadialOperatorCoeffs grim = modified_grim_operator(grim_fn, 1.0);
    const double eps = params.epsilon, c = params.c;
    for (double r = params.r_inner() * 1.5; r < params.r_outer(); r *= 2.7) {
        const double va = 0.5 * r + c * eps / r;
        const double model_a = -va * va;
        const double model_b = -(0.5 - 2 * c * c * eps * eps / std::pow(r, 4));
        const double shape =
            std::log(r / params.r_inner() + 2.0) * std::pow(r + eps / r, 4.0);
        // Fitted envelope constants (measured once on this configuration).
        CHECK(std::abs(grim.second_order_factor(r) - model_a) <= 1.0 * shape);
        CHECK(std::abs(grim.first_order_factor(r) - model_b) <= 2000.0 * shape / r);
    }
}

TEST_CASE("modified operator equals the weight-conjugated geometry operator") {
    // J-hat f = psi^{-1} J(psi f) with psi = mu, against the chart route.
    const ProfileFn fn = as_fn(unit_paraboloid());
    const GraphChart chart = make_chart_radial(fn, 0.05, 0.9, 1.0);
    const RadialOperatorCoeffs coeffs = modified_grim_operator(fn, 1.0);
    auto f = [](double r) { return std::cos(3.0 * r); };
    for (double r : {0.2, 0.45, 0.7}) {
        const double h = 1e-4;
        const double f_r = (f(r + h) - f(r - h)) / (2 * h);
        const double f_rr = (f(r + h) - 2 * f(r) + f(r - h)) / (h * h);
        const double direct = coeffs.f_rr_coeff(r) * f_rr + coeffs.f_r_coeff(r) * f_r;
        const ScalarField field = make_field_fd(
            [&](double x, double y) {
                const double rr = std::hypot(x, y);
                const double v = fn.v(rr);
                return f(rr) / std::sqrt(1 + v * v);
            },
            1e-4);
        const double v = fn.v(r);
        const double psi_inv = std::sqrt(1 + v * v);
        const double conjugated = psi_inv * mcfs_jacobi_apply(chart, field, r, 0.0);
        CHECK(direct == doctest::Approx(conjugated).epsilon(1e-5));
    }
}

TEST_CASE("D/E splitting") {
    GrimParameters params;
    params.epsilon = 1e-6;
    params.A = 20.0;
    params.c = 1.0;
    auto build_split = [&](const GrimParameters& p) {
        const double xmax = 3 * std::log(p.A) + std::log(2.5);
        const auto small = exact_small_scale(1, p, 1e-12, true, 3001, xmax);
        const RadialProfile gp = small.to_profile();
        const RadialProfile pp = paraboloid_profile(p.r_inner() * 0.9, 2.4 * p.r_outer(), 1e-12,
                                                    {3001, Spacing::logarithmic});
        return split_DE(modified_grim_operator(as_fn(gp), 1.0),
                        modified_grim_operator(as_fn(pp), 1.0), p);
    };
    const OperatorSplit split = build_split(params);
    // Inner-ball E coefficient is the exact closed form.
    const double eps = params.epsilon, A = params.A, c = params.c;
    CHECK(split.e_inner == 2.0 * c * c / (eps * eps * A * A * A * A));
    // Matching at the ball boundary: extension value = annulus value.
    CHECK(split.e_inner * split.r_ball ==
          doctest::Approx(split.e_annulus(split.r_ball) * split.r_ball).epsilon(1e-12));
    // c = 0 kills E identically.
    GrimParameters zero_c = params;
    zero_c.c = 0.0;
    const OperatorSplit no_e = build_split(zero_c);
    CHECK(no_e.e_inner == 0.0);
    CHECK(no_e.e_field_magnitude(split.r_ball * 3) == 0.0);

    // L^p scaling exponents in eps and A.
    const double p_exp = 1.5;
    {
        std::vector<double> le, ln;
        for (double e2 : {4e-7, 1e-6, 2.5e-6, 6e-6}) {
            GrimParameters q = params;
            q.epsilon = e2;
            le.push_back(std::log(e2));
            ln.push_back(std::log(lp_norm_E(build_split(q), p_exp)));
        }
        const SlopeFit fit = fit_line(le, ln);
        CHECK(std::abs(fit.slope - (2.0 / p_exp - 1.0)) < 0.1);
    }
    {
        std::vector<double> la, ln;
        for (double a2 : {14.0, 18.0, 23.0, 30.0}) {
            GrimParameters q = params;
            q.A = a2;
            la.push_back(std::log(a2));
            ln.push_back(std::log(lp_norm_E(build_split(q), p_exp)));
        }
        const SlopeFit fit = fit_line(la, ln);
        CHECK(std::abs(fit.slope - (2.0 / p_exp - 3.0)) < 0.1);
    }

    // D sup norms decrease monotonically along an admissible-direction sweep,
    // with a fitted decay rate in the sweep parameter reported by regression.
    double prev_a = 1e300, prev_b = 1e300;
    std::vector<double> la, lsup;
    for (double a3 : {14.0, 18.0, 23.0, 30.0}) {
        GrimParameters q = params;
        q.A = a3;
        q.epsilon = std::pow(a3, -4.5);
        const CoefficientNormReport rep = coefficient_norm_report(build_split(q));
        const double sup_a = std::max(rep.aD_sup_ball, rep.aD_sup_annulus);
        const double sup_b = std::max(rep.bD_sup_ball, rep.bD_sup_annulus);
        CHECK(sup_a < prev_a);
        CHECK(sup_b < prev_b);
        prev_a = sup_a;
        prev_b = sup_b;
        la.push_back(std::log(a3));
        lsup.push_back(std::log(sup_a));
    }
    const SlopeFit decay = fit_line(la, lsup);
    CHECK(decay.slope < -0.5);  // genuinely decaying, not flat
}

TEST_CASE("grim-end inverse norms stay bounded across an admissible sweep") {
    // Conjugated operators of the Grim end itself at fixed physical scale:
    // the probed inverse norms move by less than a factor two over the sweep.
    std::vector<double> estimates;
    for (double A : {14.0, 20.0, 28.0}) {
        GrimParameters params;
        params.A = A;
        params.epsilon = std::pow(A, -4.5);
        params.c = 1.0;
        const double x_max = std::log(18.0 / params.r_inner());
        const auto sol = exact_small_scale(1, params, 1e-12, true, 4001, x_max);
        const RadialProfile prof = sol.to_profile();
        const ProfileFn fn = as_fn(prof);
        const RhoMap map(fn, params.r_inner(), 17.5);
        const ModeOperator op = conjugated_mode_operator(fn, map, 0.0, 0, 140.0, 2000);
        Rng rng(5);
        estimates.push_back(inverse_norm_estimate(ModeSolver(op), 4, rng));
    }
    for (double e : estimates) {
        CHECK(e < 2.0 * estimates[0]);
        CHECK(e > 0.5 * estimates[0]);
    }
}
