#include "grimglue/verify.hpp"

#include "grimglue/bivariate.hpp"
#include "grimglue/conjugated.hpp"
#include "grimglue/fit.hpp"
#include "grimglue/geometry.hpp"
#include "grimglue/greens.hpp"
#include "grimglue/grim.hpp"
#include "grimglue/laurent.hpp"
#include "grimglue/modified.hpp"
#include "grimglue/norms.hpp"
#include "grimglue/surgery.hpp"

#include <chrono>
#include <cmath>
#include <functional>

namespace grimglue {

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
    bool ok = true;
    json detail = json::object();

    void require(bool condition, const std::string& label) {
        ok = ok && condition;
        detail["checks"][label] = condition;
    }
    void value(const std::string& label, double v) { detail[label] = format_double(v); }
};

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = lo * std::pow(hi / lo, double(i) / (n - 1));
    return out;
}

ModalField radial_modal(std::vector<double> r, std::vector<double> values) {
    ModalField out;
    out.r = std::move(r);
    out.modes[0] = std::move(values);
    return out;
}

// 1. Exact rational identities of the large-scale recurrence.
Check laurent_exactness() {
    Check c;
    for (int n = 0; n <= 10; ++n) {
        const LaurentSeries v = laurent_recurrence(n);
        if (n >= 1) {
            c.ok = c.ok && v.coeff(1) == rational(1) && v.coeff(-1) == rational(-1);
        }
        for (const auto& [m, coeff] : v.coeffs()) {
            c.ok = c.ok && (m % 2 != 0) && coeff != 0;
        }
        const LaurentSeries g = apply_G_laurent(v);
        c.ok = c.ok && g.order() == 1 - 2 * n && g.coeff(1 - 2 * n) != 0;
    }
    c.detail["orders_checked"] = 10;
    return c;
}

// 2. Fitted decay slopes of |v_n - v| on [10, 200].
Check large_scale_rates() {
    Check c;
    const std::vector<double> radii = log_grid(10.0, 200.0, 60);
    for (int n = 0; n <= 2; ++n) {
        const auto dev = large_scale_deviation(n, radii, 1e-12);
        const SlopeFit fit = decay_exponent(radii, dev);
        c.require(std::abs(fit.slope + (2.0 * n + 1.0)) <= 0.15,
                  "slope_n" + std::to_string(n));
        c.value("slope_n" + std::to_string(n), fit.slope);
        c.value("width_n" + std::to_string(n), fit.width);
    }
    return c;
}

// 3. Small-scale recurrence exactness through total order 7.
Check small_scale_exactness() {
    Check c;
    for (int k = 0; k <= 3; ++k) {
        const BivariateSeries v = bivariate_recurrence(k);
        c.ok = c.ok && v.term(0, 1) == XPoly::constant(1);
        c.ok = c.ok && v.term(1, 0) == XPoly::constant(rational(1, 2));
        for (const auto& [idx, poly] : v.terms()) {
            const int total = idx.first + idx.second;
            c.ok = c.ok && total % 2 == 1;
            c.ok = c.ok && 2 * poly.degree() <= total - 1;
        }
        const BivariateSeries g = apply_G_small(v, 2 * k + 3);
        c.ok = c.ok && g.vanishes_to_order(2 * k + 1);
    }
    c.detail["max_total_order"] = 7;
    return c;
}

// 4. Contraction solver against the direct integration.
Check solver_cross_validation() {
    Check c;
    GrimParameters params;
    params.epsilon = 1e-6;
    params.A = 20.0;
    params.c = 1.0;
    const double T = params.x_max();
    const auto exact = exact_small_scale(1, params, 1e-13, true, 4001);
    const auto fixed = contraction_solve(1, params, T, 1e-13, true, 4001);
    double sup = 0.0;
    for (std::size_t i = 0; i < exact.x.size(); ++i)
        sup = std::max(sup, std::abs(exact.v[i] - fixed.solution.v[i]));
    c.require(sup <= 1e-8, "sup_difference");
    c.require(fixed.contraction_factor < 0.5, "contraction_factor");
    c.value("sup_difference", sup);
    c.value("contraction_factor", fixed.contraction_factor);
    c.detail["iterations"] = fixed.iterations;
    return c;
}

// 5. Jacobi field against c-differences of the exact solution.
Check jacobi_consistency() {
    Check c;
    GrimParameters params;
    params.epsilon = 1e-6;
    params.A = 20.0;
    params.c = 1.0;
    const int k = 1;
    const auto base = exact_small_scale(k, params, 1e-14, true, 2001);
    auto diff_at = [&](double h) {
        GrimParameters up = params, dn = params;
        up.c += h;
        dn.c -= h;
        const auto vu = exact_small_scale(k, up, 1e-14, true, 2001);
        const auto vd = exact_small_scale(k, dn, 1e-14, true, 2001);
        std::vector<double> d(vu.v.size());
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = (vu.v[i] - vd.v[i]) / (2.0 * h);
        return d;
    };
    const auto d1 = diff_at(1e-3);
    const auto d2 = diff_at(5e-4);
    double err = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < base.w.size(); ++i) {
        const double extrap = (4.0 * d2[i] - d1[i]) / 3.0;
        // Normalization: w-hat = c * dv-hat/dc (the kernel variable carries
        // one factor of the logarithmic coefficient).
        err = std::max(err, std::abs(params.c * extrap - base.w[i]));
        scale = std::max(scale, std::abs(base.w[i]));
    }
    c.require(err / scale <= 1e-6, "relative_mismatch");
    c.value("relative_mismatch", err / scale);
    c.detail["normalization"] = "w_hat = c * d v_hat / dc";
    return c;
}

// 6. Zero-residual solitons and O(h^2) convergence under FD derivatives.
Check zero_residual_solitons() {
    Check c;
    const GraphChart reaper = grim_reaper_chart(1.3, 1.0);
    double reaper_sup = 0.0;
    for (double x = -1.2; x <= 1.2; x += 0.1)
        reaper_sup = std::max(reaper_sup, std::abs(mcfs_residual(reaper, x, 0.3)));
    c.require(reaper_sup <= 1e-10, "grim_reaper_analytic");
    c.value("grim_reaper_residual", reaper_sup);

    const RadialProfile prof = paraboloid_profile(0.05, 6.0, 1e-12, {2001, Spacing::linear});
    const ProfileFn fn = as_fn(prof);
    double bowl_sup = 0.0;
    for (double r = 0.2; r <= 5.5; r += 0.17)
        bowl_sup = std::max(bowl_sup, std::abs(mcfs_residual_radial(fn, 1.0, r)));
    c.require(bowl_sup <= 1e-10, "paraboloid_analytic");
    c.value("paraboloid_residual", bowl_sup);

    auto u = [](double x, double) { return -std::log(std::cos(x)); };
    std::vector<double> errs;
    for (double h : {1.0 / 50, 1.0 / 100, 1.0 / 200}) {
        const GraphChart chart = make_chart_fd(u, h, 0.0, 1.3, 1.0);
        double worst = 0.0;
        for (double x : {-1.0, -0.3, 0.5, 1.1})
            worst = std::max(worst, std::abs(mcfs_residual(chart, x, 0.0)));
        errs.push_back(worst);
    }
    c.require(errs[0] / errs[1] >= 3.0 && errs[1] / errs[2] >= 3.0, "fd_second_order");
    c.value("fd_ratio_50_100", errs[0] / errs[1]);
    c.value("fd_ratio_100_200", errs[1] / errs[2]);
    return c;
}

// 7. Potential well of the conjugated operator and its discrete kernel.
Check potential_well() {
    Check c;
    const RadialProfile prof =
        paraboloid_profile(5e-3, 40.0, 1e-12, {6001, Spacing::logarithmic});
    const ProfileFn fn = as_fn(prof);
    const RhoMap map(fn, 5e-3, 40.0);
    std::vector<double> rhos, well;
    for (double r = 3.0; r <= 36.0; r *= 1.15) {
        const ConjugatedCoeffs coeffs = conjugated_coeffs(fn, 0.0, r);
        rhos.push_back(map.rho(r));
        well.push_back(std::abs(coeffs.potential + 0.25));
    }
    const SlopeFit fit = decay_exponent(rhos, well);
    c.require(fit.slope <= -1.0 + 0.1, "well_decay_exponent");
    c.value("well_decay_exponent", fit.slope);

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
        double sup = 0.0, scale = 0.0;
        for (std::size_t i = op.size() / 10; i < op.size() * 9 / 10; ++i) {
            sup = std::max(sup, std::abs(image[i]));
            scale = std::max(scale, std::abs(kernel[i]));
        }
        errs.push_back(sup / scale);
    }
    c.require(errs[0] / errs[1] >= 3.0 && errs[1] / errs[2] >= 3.0, "kernel_h2");
    c.value("kernel_ratio_1", errs[0] / errs[1]);
    c.value("kernel_ratio_2", errs[1] / errs[2]);
    return c;
}

// 8. Mode-solver roundtrips and truncation stability.
Check mode_solver_soundness(Rng& rng) {
    Check c;
    const RadialProfile prof =
        paraboloid_profile(5e-3, 40.0, 1e-12, {6001, Spacing::logarithmic});
    const ProfileFn fn = as_fn(prof);
    const RhoMap map(fn, 5e-3, 40.0);
    double worst = 0.0;
    for (double gamma : {-0.1, 0.0, 0.1}) {
        for (int m = 0; m <= 8; ++m) {
            const ModeOperator op = conjugated_mode_operator(fn, map, gamma, m, 160.0, 2400);
            const ModeSolver solver(op);
            const auto g = random_band_limited(op.x, 8, rng, op.x.front() + 5.0, 120.0);
            const auto back = op.apply(solver.solve(g));
            double err = 0.0, sup = 0.0;
            for (std::size_t i = 0; i < g.size(); ++i) {
                err = std::max(err, std::abs(back[i] - g[i]));
                sup = std::max(sup, std::abs(g[i]));
            }
            worst = std::max(worst, err / sup);
        }
    }
    c.require(worst <= 1e-8, "roundtrip");
    c.value("worst_roundtrip", worst);

    Rng rng_a(7), rng_b(7);
    const ModeOperator op1 = conjugated_mode_operator(fn, map, 0.0, 0, 80.0, 1600);
    const ModeOperator op2 = conjugated_mode_operator(fn, map, 0.0, 0, 160.0, 3200);
    const double n1 = inverse_norm_estimate(ModeSolver(op1), 6, rng_a);
    const double n2 = inverse_norm_estimate(ModeSolver(op2), 6, rng_b);
    c.require(n2 / n1 < 2.0 && n1 / n2 < 2.0, "truncation_stability");
    c.value("inverse_norm_ratio", n2 / n1);
    return c;
}

// 9. D/E decomposition: exact inner coefficient, L^p scaling, monotone sups.
Check de_decomposition() {
    Check c;
    auto build_split = [&](const GrimParameters& p) {
        const double xmax = 3 * std::log(p.A) + std::log(2.5);
        const auto small = exact_small_scale(1, p, 1e-12, true, 3001, xmax);
        const RadialProfile gp = small.to_profile();
        const RadialProfile pp = paraboloid_profile(p.r_inner() * 0.9, 2.4 * p.r_outer(),
                                                    1e-12, {3001, Spacing::logarithmic});
        return split_DE(modified_grim_operator(as_fn(gp), 1.0),
                        modified_grim_operator(as_fn(pp), 1.0), p);
    };
    GrimParameters params;
    params.epsilon = 1e-6;
    params.A = 20.0;
    params.c = 1.0;
    const OperatorSplit split = build_split(params);
    const double eps = params.epsilon, A = params.A, cc = params.c;
    c.require(split.e_inner == 2.0 * cc * cc / (eps * eps * A * A * A * A), "inner_ball_exact");

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
        c.require(std::abs(fit.slope - (2.0 / p_exp - 1.0)) <= 0.1, "lp_eps_exponent");
        c.value("lp_eps_exponent", fit.slope);
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
        c.require(std::abs(fit.slope - (2.0 / p_exp - 3.0)) <= 0.1, "lp_A_exponent");
        c.value("lp_A_exponent", fit.slope);
    }
    {
        double prev_a = 1e300, prev_b = 1e300;
        bool monotone = true;
        for (double a3 : {14.0, 18.0, 23.0, 30.0}) {
            GrimParameters q = params;
            q.A = a3;
            q.epsilon = std::pow(a3, -4.5);
            const CoefficientNormReport rep = coefficient_norm_report(build_split(q));
            const double sup_a = std::max(rep.aD_sup_ball, rep.aD_sup_annulus);
            const double sup_b = std::max(rep.bD_sup_ball, rep.bD_sup_annulus);
            monotone = monotone && sup_a < prev_a && sup_b < prev_b;
            prev_a = sup_a;
            prev_b = sup_b;
        }
        c.require(monotone, "d_sup_monotone");
    }
    return c;
}

// 10. Weighted residual of the joined surface scales like eps.
Check glued_residual_scaling() {
    Check c;
    const double R = 20.0, delta = 1.5, alpha = 0.05;
    std::vector<double> le, ln, norms;
    const std::vector<double> eps_sweep{1e-5, 3e-5, 1e-4};
    for (double eps : eps_sweep) {
        GluingConfig config;
        config.epsilon = eps;
        config.R = R;
        config.R0 = 2.0;
        config.c0 = 1.0;
        config.order = 2;
        config.n_samples = 3001;
        const GluedSurface glued = build_glued(config, config.c0);
        const std::vector<double> mesh = log_grid(config.R0, 4.0 * R, 500);
        std::vector<double> values(mesh.size());
        for (std::size_t i = 0; i < mesh.size(); ++i) values[i] = glued.residual(mesh[i]);
        NormSpec spec{0, alpha, 2.0 + delta, NormSpec::Kind::cylindrical};
        const double norm = cyl_weighted_norm(radial_modal(mesh, values), spec, config.R0, 4 * R);
        norms.push_back(norm);
        le.push_back(std::log(eps));
        ln.push_back(std::log(norm));
    }
    const SlopeFit fit = fit_line(le, ln);
    c.require(std::abs(fit.slope - 1.0) <= 0.1, "eps_exponent");
    c.value("eps_exponent", fit.slope);
    // One sweep-wide envelope constant, pinned at the smallest-eps point.
    const double envelope_c = norms[0] / (eps_sweep[0] * std::pow(R, 2 + delta)) * 1.5;
    bool under = true;
    for (std::size_t i = 0; i < norms.size(); ++i)
        under = under && norms[i] <= envelope_c * eps_sweep[i] * std::pow(R, 2 + delta);
    c.require(under, "single_constant_envelope");
    c.value("envelope_constant", envelope_c);
    return c;
}

// 11. Deficiency operator X: exact support and weighted-norm decay in R.
Check deficiency_scaling() {
    Check c;
    const double delta = 1.5, alpha = 0.05;
    std::vector<double> rs{10.0, 20.0, 40.0}, norms;
    for (double R : rs) {
        GluingConfig config;
        config.epsilon = 10.0 * std::pow(R, -4.5);
        config.R = R;
        config.R0 = 2.0;
        config.c0 = 1.0;
        config.n_samples = 2001;
        const std::vector<double> mesh = log_grid(config.R0, 2.5 * R, 301);
        const DeficiencyField x = deficiency_X(config, 1.0, mesh);
        bool supported = true;
        for (std::size_t i = 0; i < mesh.size(); ++i)
            if (mesh[i] > 2 * R && x.values[i] != 0.0) supported = false;
        c.require(supported, "support_exact_R" + std::to_string(int(R)));
        c.require(x.tail_sup <= 5e-2 * x.interior_sup, "tail_quiet_R" + std::to_string(int(R)));
        NormSpec spec{0, alpha, 2.0 + delta, NormSpec::Kind::cylindrical};
        norms.push_back(
            cyl_weighted_norm(radial_modal(mesh, x.values), spec, config.R0, 2.5 * R));
    }
    // C is pinned by the first sweep point: the later points must sit below
    // C R^{-(2-delta)}.
    const double envelope_c = norms[0] * std::pow(rs[0], 2.0 - delta);
    bool under = true;
    for (std::size_t i = 0; i < rs.size(); ++i)
        under = under && norms[i] <= envelope_c * std::pow(rs[i], -(2.0 - delta)) * 1.0000001;
    c.require(under, "weighted_norm_decay");
    for (std::size_t i = 0; i < rs.size(); ++i)
        c.value("norm_R" + std::to_string(int(rs[i])), norms[i]);
    return c;
}

// 12. Ping-pong: contraction trend and the right-inverse identity.
Check ping_pong(Rng& rng) {
    Check c;
    double prev_ab = 1.0, prev_ba = 1.0;
    bool decreasing = true, below_one = true;
    for (double R : {8.0, 10.0, 12.0}) {
        PingPongConfig config;
        config.gluing.epsilon = 10.0 * std::pow(R, -4.5);
        config.gluing.R = R;
        config.gluing.R0 = 2.0;
        config.gluing.c0 = 1.0;
        config.gluing.order = 2;
        config.gluing.n_samples = 2001;
        config.n_nodes = 1500;
        config.m_max = 2;
        const PingPong pp(config);
        const auto est = pp.measure_contraction(2, rng);
        below_one = below_one && est.ab < 1.0 && est.ba < 1.0;
        decreasing = decreasing && est.ab < prev_ab && est.ba < prev_ba;
        prev_ab = est.ab;
        prev_ba = est.ba;
        c.value("ab_R" + std::to_string(int(R)), est.ab);
        c.value("ba_R" + std::to_string(int(R)), est.ba);
    }
    c.require(below_one, "contraction_below_one");
    c.require(decreasing, "contraction_decreasing");

    PingPongConfig config;
    config.gluing.epsilon = 2e-3;
    config.gluing.R = 10.0;
    config.gluing.R0 = 2.0;
    config.gluing.c0 = 1.0;
    config.gluing.order = 2;
    config.gluing.n_samples = 2001;
    config.n_nodes = 1800;
    config.m_max = 4;
    const PingPong pp(config);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const ModalField f = pp.random_F_field(rng);
        const RightInverse ri = pp.assemble_right_inverse(f);
        worst = std::max(worst, pp.identity_residual(f, ri));
    }
    c.require(worst <= 1e-6, "identity_residual");
    c.value("identity_residual", worst);
    return c;
}

// 13. Comparison principle on short intervals.
Check ordering(Rng& rng) {
    Check c;
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    bool monotone = true, ordered = true;
    for (int trial = 0; trial < 10; ++trial) {
        const double r0 = 0.2 + 0.8 * u01(rng);
        const double a = -1.0 + 2.0 * u01(rng);
        const double b = a + 0.05 + u01(rng);
        const SampleSpec spec{401, Spacing::linear};
        const RadialProfile pa = integrate_profile(a, r0, r0, std::sqrt(2.0), 1e-12, spec);
        const RadialProfile pb = integrate_profile(b, r0, r0, std::sqrt(2.0), 1e-12, spec);
        double prev = std::abs(pb.v()[0] - pa.v()[0]);
        for (std::size_t i = 1; i < pa.size(); ++i) {
            const double cur = std::abs(pb.v()[i] - pa.v()[i]);
            monotone = monotone && cur <= prev * (1.0 + 1e-12);
            ordered = ordered && pb.v()[i] > pa.v()[i];
            prev = cur;
        }
    }
    c.require(monotone, "difference_nonincreasing");
    c.require(ordered, "order_preserved");
    return c;
}

// 14. Admissibility predicate on the pinned tuples.
Check admissibility() {
    Check c;
    c.require(admissible_params(3e-14, 1000.0, 10.0, 0.1, 2.0, 1.0).admissible,
              "derived_tuple_admissible");
    bool any_admissible = false;
    for (double eps : {1e-16, 1e-12, 1e-8, 1e-4, 1e-2})
        for (double R : {10.0, 100.0, 1000.0, 1e5})
            any_admissible = any_admissible ||
                             admissible_params(eps, R, 2.0, 0.5, 2.0, 0.0).admissible;
    c.require(!any_admissible, "conflicting_exponents_inadmissible");
    return c;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const VerifyOptions& options) {
    Rng rng(options.seed);
    std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
        {"laurent recurrence exactness", [&] { return laurent_exactness(); }},
        {"large-scale decay rates", [&] { return large_scale_rates(); }},
        {"small-scale recurrence exactness", [&] { return small_scale_exactness(); }},
        {"solver cross-validation", [&] { return solver_cross_validation(); }},
        {"jacobi-field consistency", [&] { return jacobi_consistency(); }},
        {"zero-residual solitons", [&] { return zero_residual_solitons(); }},
        {"potential well", [&] { return potential_well(); }},
        {"mode-solver soundness", [&] { return mode_solver_soundness(rng); }},
        {"D/E decomposition", [&] { return de_decomposition(); }},
        {"glued-surface residual scaling", [&] { return glued_residual_scaling(); }},
        {"deficiency operator X", [&] { return deficiency_scaling(); }},
        {"ping-pong right inverse", [&] { return ping_pong(rng); }},
        {"ordering and comparison", [&] { return ordering(rng); }},
        {"admissibility predicate", [&] { return admissibility(); }},
    };
    std::vector<CriterionResult> results;
    int id = 1;
    for (auto& [name, fn] : criteria) {
        const auto start = Clock::now();
        CriterionResult result;
        result.id = id++;
        result.name = name;
        try {
            Check check = fn();
            result.passed = check.ok;
            result.detail = std::move(check.detail);
        } catch (const std::exception& e) {
            result.passed = false;
            result.detail["exception"] = e.what();
        }
        result.seconds =
            std::chrono::duration<double>(Clock::now() - start).count();
        results.push_back(std::move(result));
    }
    return results;
}

json acceptance_report(const std::vector<CriterionResult>& results,
                       const VerifyOptions& options) {
    json report;
    report["seed"] = options.seed;
    bool all = true;
    json rows = json::array();
    for (const auto& r : results) {
        json row;
        row["id"] = r.id;
        row["name"] = r.name;
        row["passed"] = r.passed;
        row["seconds"] = format_double(r.seconds);
        row["detail"] = r.detail;
        rows.push_back(std::move(row));
        all = all && r.passed;
    }
    report["criteria"] = rows;
    report["all_passed"] = all;
    return report;
}

}  // namespace grimglue
