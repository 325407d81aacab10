#include "grimglue/surgery.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace grimglue {

EndFit fit_end_data(const ProfileFn& profile, double r_lo, double r_hi, int n) {
    Eigen::MatrixXd basis(n, 3);
    Eigen::VectorXd values(n);
    for (int i = 0; i < n; ++i) {
        const double r = r_lo * std::pow(r_hi / r_lo, (i + 0.5) / n);
        basis(i, 0) = 1.0;
        basis(i, 1) = std::log(r);
        basis(i, 2) = r * r;
        values(i) = profile.u(r);
    }
    const Eigen::Vector3d sol = basis.colPivHouseholderQr().solve(values);
    return EndFit{sol(0), sol(1), sol(2)};
}

ProfileFn catenoid_end_profile(double c, double A_const) {
    if (c == 0.0) return plane_profile_fn(A_const);
    const double z0 = A_const - c * std::log(2.0 / std::abs(c));
    return catenoid_profile_fn(c, z0);
}

RadialProfile grim_end_profile(double c, double A_const, double epsilon, double r_lo,
                               double r_hi, double fit_lo, double fit_hi, double tol,
                               int n_samples, int order) {
    if (!(r_lo > 0) || !(r_lo < r_hi)) throw std::invalid_argument("grim_end_profile: range");
    GrimParameters unit;
    unit.epsilon = epsilon;
    unit.A = r_lo;  // the unit-picture domain starts at s = eps * r_lo
    unit.c = c;
    const double x_max = std::log(r_hi / r_lo);
    const SmallScaleSolution sol =
        exact_small_scale(order, unit, tol, /*relaxed=*/true, n_samples, x_max);

    // Big-coordinate samples r = r_lo e^x; derivatives through the chain rule
    // and the reparametrised equation.
    const std::size_t n = sol.x.size();
    std::vector<double> r(n), u(n), v(n), dv(n), ddv(n), du_dx(n);
    for (std::size_t i = 0; i < n; ++i) {
        r[i] = r_lo * std::exp(sol.x[i]);
        v[i] = sol.v[i];
        const double m = epsilon * r[i];
        const double vx = -v[i] - v[i] * v[i] * v[i] + m * (1 + v[i] * v[i]);
        const double fx = m * (1 + v[i] * v[i]);
        const double fv = -1 - 3 * v[i] * v[i] + 2 * m * v[i];
        const double vxx = fx + fv * vx;
        dv[i] = vx / r[i];
        ddv[i] = (vxx - vx) / (r[i] * r[i]);
        du_dx[i] = v[i] * r[i];
    }
    // u(x) = int v r dx on the uniform x-grid.
    std::vector<double> ux = cumulative_integral(sol.x, du_dx);
    RadialProfile profile(std::move(r), std::move(ux), std::move(v), std::move(dv),
                          std::move(ddv), tol, Provenance::grim_small_scale);
    const EndFit fit = fit_end_data(as_fn(profile), fit_lo, fit_hi);
    profile.rebase_primitive(profile.u().front() + (A_const - fit.constant));
    return profile;
}

ProfileFn GluedSurface::joined() const {
    const auto chi = chi_c;
    const ProfileFn F = core;
    const ProfileFn G = end;
    auto H = [chi, F, G](double r) {
        const Jet3 j = chi->jet(r);
        if (j.f == 1.0) return F.u(r);
        if (j.f == 0.0) return G.u(r);
        return j.f * F.u(r) + (1 - j.f) * G.u(r);
    };
    auto H1 = [chi, F, G](double r) {
        const Jet3 j = chi->jet(r);
        if (j.f == 1.0 && j.d1 == 0.0) return F.v(r);
        if (j.f == 0.0 && j.d1 == 0.0) return G.v(r);
        return j.d1 * (F.u(r) - G.u(r)) + j.f * F.v(r) + (1 - j.f) * G.v(r);
    };
    auto H2 = [chi, F, G](double r) {
        const Jet3 j = chi->jet(r);
        if (j.f == 1.0 && j.d1 == 0.0) return F.dv(r);
        if (j.f == 0.0 && j.d1 == 0.0) return G.dv(r);
        return j.d2 * (F.u(r) - G.u(r)) + 2 * j.d1 * (F.v(r) - G.v(r)) + j.f * F.dv(r) +
               (1 - j.f) * G.dv(r);
    };
    auto H3 = [chi, F, G](double r) {
        const Jet3 j = chi->jet(r);
        if (j.f == 1.0 && j.d1 == 0.0) return F.ddv(r);
        if (j.f == 0.0 && j.d1 == 0.0) return G.ddv(r);
        return j.d3 * (F.u(r) - G.u(r)) + 3 * j.d2 * (F.v(r) - G.v(r)) +
               3 * j.d1 * (F.dv(r) - G.dv(r)) + j.f * F.ddv(r) + (1 - j.f) * G.ddv(r);
    };
    return ProfileFn{H, H1, H2, H3};
}

double GluedSurface::residual(double r) const {
    return mcfs_residual_radial(joined(), config.epsilon, r);
}

GluedSurface build_glued(const GluingConfig& config, double c) {
    GluedSurface out;
    out.config = config;
    out.c = c;
    out.r_lo = config.R0;
    out.r_hi = config.outer_radius();

    // Catenoid family with fixed vertical offset: the constant term follows c.
    const double a_const =
        c == 0.0 ? config.z0 : config.z0 + c * std::log(2.0 / std::abs(c));
    out.core = catenoid_end_profile(c, a_const);
    const EndFit core_fit = fit_end_data(out.core, config.R, 2 * config.R);

    RadialProfile end = grim_end_profile(c, core_fit.constant, config.epsilon, config.R / 4,
                                         out.r_hi, config.R, 2 * config.R, config.tol,
                                         config.n_samples, config.order);
    out.end_profile = std::make_shared<RadialProfile>(std::move(end));
    out.end = as_fn(*out.end_profile);
    out.core_fit = core_fit;
    out.end_fit = fit_end_data(out.end, config.R, 2 * config.R);

    const double c_scale = std::max(std::abs(c), 0.1);
    if (std::abs(out.end_fit.log_coeff - core_fit.log_coeff) > config.match_tol * c_scale ||
        std::abs(out.end_fit.constant - core_fit.constant) >
            config.match_tol * (std::abs(core_fit.constant) + 1.0))
        throw std::runtime_error("build_glued: leading data of F and G do not match");

    out.chi_c = std::make_shared<CutoffFunction>(config.R);
    return out;
}

AdmissibilityReport admissible_params(double epsilon, double R, double Delta, double eta,
                                      double Cbound, double c) {
    GrimParameters p;
    p.epsilon = epsilon;
    p.A = R;
    p.c = c;
    p.Delta = Delta;
    p.eta = eta;
    p.Cbound = Cbound;
    return check_admissible(p);
}

ModifiedNormal modified_normal(const GraphChart& chart, double epsilon, double x, double y) {
    const GraphPointFields g = graph_fields(chart, x, y);
    const CutoffFunction chi_eps(1.0 / epsilon);
    const double t = chi_eps(std::hypot(x, y));
    const double cos_theta = g.mu;
    const double cos_phi = 1.0 - t * (1.0 - cos_theta);
    ModifiedNormal out;
    // sin(phi)/sin(theta) = sqrt(t (1 + cos phi) / (1 + cos theta)), stable as
    // theta -> 0; the second weight follows from the angle difference.
    out.ez_weight = std::sqrt(t * (1.0 + cos_phi) / (1.0 + cos_theta));
    out.normal_weight = cos_phi - cos_theta * out.ez_weight;
    const std::array<double, 3> normal = {-g.mu * g.du[0], -g.mu * g.du[1], g.mu};
    for (int i = 0; i < 3; ++i)
        out.direction[i] = out.normal_weight * normal[i] + (i == 2 ? out.ez_weight : 0.0);
    return out;
}

PerturbedSurface perturb(const GluingConfig& config, double l, double v, const ScalarField& f,
                         double fd_spacing) {
    const GluedSurface glued = build_glued(config, config.c0 + l);
    const ProfileFn H = glued.joined();
    const double r_lo = glued.r_lo, r_hi = glued.r_hi;
    const double epsilon = config.epsilon;
    const GraphChart chart = make_chart_radial(H, r_lo, r_hi, epsilon);

    auto position = [chart, H, f, v, epsilon](double x, double y) -> std::array<double, 3> {
        const ModifiedNormal n = modified_normal(chart, epsilon, x, y);
        const double value = f.f(x, y);
        return {x + value * n.direction[0], y + value * n.direction[1],
                H.u(std::hypot(x, y)) + v + value * n.direction[2]};
    };

    PerturbedSurface out;
    out.surface = parametric_fd(position, fd_spacing);
    // Graph condition: the horizontal part of the map stays orientation
    // preserving on a sampled grid.
    for (double r = r_lo * 1.1; r < std::min(r_hi, 8 * config.R); r *= 1.5) {
        const double h = fd_spacing;
        const auto p0 = position(r, 0.0), px = position(r + h, 0.0), py = position(r, h);
        const double jxx = (px[0] - p0[0]) / h, jxy = (py[0] - p0[0]) / h;
        const double jyx = (px[1] - p0[1]) / h, jyy = (py[1] - p0[1]) / h;
        if (jxx * jyy - jxy * jyx <= 0) out.graph_ok = false;
    }
    return out;
}

double mcfs_residual_revolution_parametric(const std::function<double(double)>& radius,
                                           const std::function<double(double)>& height,
                                           double epsilon, double t, double h) {
    const double r1 = (radius(t + h) - radius(t - h)) / (2 * h);
    const double r2 = (radius(t + h) - 2 * radius(t) + radius(t - h)) / (h * h);
    const double z1 = (height(t + h) - height(t - h)) / (2 * h);
    const double z2 = (height(t + h) - 2 * height(t) + height(t - h)) / (h * h);
    const double s = std::hypot(r1, z1);
    const double c_profile = (r1 * z2 - z1 * r2) / (s * s * s);
    const double c_circle = z1 / (radius(t) * s);
    return -(c_profile + c_circle) + epsilon * r1 / s;
}

DeficiencyField deficiency_X(const GluingConfig& config, double l,
                             const std::vector<double>& radii, double h) {
    auto residuals = [&](double c) {
        const GluedSurface glued = build_glued(config, c);
        std::vector<double> out(radii.size());
        for (std::size_t i = 0; i < radii.size(); ++i) out[i] = glued.residual(radii[i]);
        return out;
    };
    auto central = [&](double step) {
        const auto up = residuals(config.c0 + step);
        const auto down = residuals(config.c0 - step);
        std::vector<double> d(radii.size());
        for (std::size_t i = 0; i < radii.size(); ++i) d[i] = (up[i] - down[i]) / (2 * step);
        return d;
    };
    const auto d1 = central(h);
    const auto d2 = central(h / 2);
    DeficiencyField out;
    out.values.resize(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) {
        out.values[i] = l * (4.0 * d2[i] - d1[i]) / 3.0;
        if (radii[i] <= 2 * config.R) {
            out.interior_sup = std::max(out.interior_sup, std::abs(out.values[i]));
        } else {
            out.tail_sup = std::max(out.tail_sup, std::abs(out.values[i]));
        }
    }
    // Outside B(2R) the family is the same exact end for every c, so the
    // measured tail is solver noise; the support is enforced and the tail
    // reported for the caller's leak check.
    for (std::size_t i = 0; i < radii.size(); ++i)
        if (radii[i] > 2 * config.R) out.values[i] = 0.0;
    return out;
}

std::vector<double> deficiency_Y(const GluedSurface& glued, double v,
                                 const std::vector<double>& radii, double h) {
    const ProfileFn H = glued.joined();
    const CutoffFunction zeta_cut(glued.config.R0);
    auto shifted = [&](double t, double r) {
        // u -> u + t (1 - chi_{R0}); beyond 2 R0 this is a rigid shift.
        auto u = [&](double rr) { return H.u(rr) + t * (1.0 - zeta_cut(rr)); };
        auto vv = [&](double rr) { return H.v(rr) - t * zeta_cut.jet(rr).d1; };
        auto dv = [&](double rr) { return H.dv(rr) - t * zeta_cut.jet(rr).d2; };
        auto ddv = [&](double rr) { return H.ddv(rr) - t * zeta_cut.jet(rr).d3; };
        return mcfs_residual_radial(ProfileFn{u, vv, dv, ddv}, glued.config.epsilon, r);
    };
    std::vector<double> y(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i)
        y[i] = v * (shifted(h, radii[i]) - shifted(-h, radii[i])) / (2 * h);
    return y;
}

}  // namespace grimglue
