#include "grimglue/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace grimglue {

bool GraphChart::contains(double x, double y) const {
    const double r = std::hypot(x, y);
    return r >= r_inner - 1e-12 && r <= r_outer + 1e-12;
}

GraphChart make_chart(HeightFn height, double r_inner, double r_outer, double epsilon) {
    GraphChart chart;
    chart.height = std::move(height);
    chart.r_inner = r_inner;
    chart.r_outer = r_outer;
    chart.epsilon = epsilon;
    return chart;
}

GraphChart make_chart_fd(std::function<double(double, double)> u, double h, double r_inner,
                         double r_outer, double epsilon) {
    HeightFn height;
    height.u = u;
    height.grad = [u, h](double x, double y) {
        return std::array<double, 2>{(u(x + h, y) - u(x - h, y)) / (2 * h),
                                     (u(x, y + h) - u(x, y - h)) / (2 * h)};
    };
    height.hess = [u, h](double x, double y) {
        const double uxx = (u(x + h, y) - 2 * u(x, y) + u(x - h, y)) / (h * h);
        const double uyy = (u(x, y + h) - 2 * u(x, y) + u(x, y - h)) / (h * h);
        const double uxy =
            (u(x + h, y + h) - u(x + h, y - h) - u(x - h, y + h) + u(x - h, y - h)) /
            (4 * h * h);
        return std::array<double, 3>{uxx, uxy, uyy};
    };
    GraphChart chart = make_chart(std::move(height), r_inner, r_outer, epsilon);
    chart.fd_spacing = h;
    return chart;
}

GraphChart make_chart_radial(const ProfileFn& profile, double r_inner, double r_outer,
                             double epsilon) {
    HeightFn height;
    height.u = [profile](double x, double y) { return profile.u(std::hypot(x, y)); };
    height.grad = [profile](double x, double y) {
        const double r = std::hypot(x, y);
        const double v = profile.v(r);
        return std::array<double, 2>{v * x / r, v * y / r};
    };
    height.hess = [profile](double x, double y) {
        const double r = std::hypot(x, y);
        const double v = profile.v(r);
        const double dv = profile.dv(r);
        const double a = v / r;             // tangential part
        const double b = dv - v / r;        // radial correction
        const double cx = x / r, cy = y / r;
        return std::array<double, 3>{a + b * cx * cx, b * cx * cy, a + b * cy * cy};
    };
    return make_chart(std::move(height), r_inner, r_outer, epsilon);
}

GraphChart grim_reaper_chart(double r_outer, double epsilon) {
    if (r_outer >= M_PI / 2) throw std::invalid_argument("grim reaper: domain reaches the wall");
    HeightFn height;
    height.u = [](double x, double) { return -std::log(std::cos(x)); };
    height.grad = [](double x, double) { return std::array<double, 2>{std::tan(x), 0.0}; };
    height.hess = [](double x, double) {
        const double s = 1.0 / std::cos(x);
        return std::array<double, 3>{s * s, 0.0, 0.0};
    };
    return make_chart(std::move(height), 0.0, r_outer, epsilon);
}

GraphPointFields graph_fields(const GraphChart& chart, double x, double y) {
    if (!chart.contains(x, y)) throw std::out_of_range("graph_fields: point outside chart");
    GraphPointFields f{};
    f.u = chart.height.u(x, y);
    f.du = chart.height.grad(x, y);
    f.d2u = chart.height.hess(x, y);
    const double gsq = f.du[0] * f.du[0] + f.du[1] * f.du[1];
    f.mu = 1.0 / std::sqrt(1.0 + gsq);
    const double mu2 = f.mu * f.mu;

    const double U[2][2] = {{f.d2u[0], f.d2u[1]}, {f.d2u[1], f.d2u[2]}};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            f.g[i][j] = (i == j ? 1.0 : 0.0) + f.du[i] * f.du[j];
            f.ginv[i][j] = (i == j ? 1.0 : 0.0) - mu2 * f.du[i] * f.du[j];
            f.second_fundamental[i][j] = -f.mu * U[i][j];
        }
    }
    for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                double sum = 0.0;
                for (int p = 0; p < 2; ++p) sum += f.ginv[k][p] * U[i][j] * f.du[p];
                f.christoffel[k][i][j] = sum;
            }
    double trace = 0.0, trace_sq = 0.0;
    double a[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            double sum = 0.0;
            for (int k = 0; k < 2; ++k) sum += f.ginv[i][k] * U[k][j];
            a[i][j] = -f.mu * sum;
        }
    for (int i = 0; i < 2; ++i) {
        trace += a[i][i];
        for (int j = 0; j < 2; ++j) {
            f.shape[i][j] = a[i][j];
            trace_sq += a[i][j] * a[j][i];
        }
    }
    f.mean_curvature = trace;
    f.trace_shape_sq = trace_sq;
    f.pi_ez = {mu2 * f.du[0], mu2 * f.du[1]};
    return f;
}

double mcfs_residual(const GraphChart& chart, double x, double y) {
    const GraphPointFields f = graph_fields(chart, x, y);
    return f.mean_curvature + chart.epsilon * f.mu;
}

ScalarField make_field_fd(std::function<double(double, double)> f, double h) {
    ScalarField out;
    out.f = f;
    out.grad = [f, h](double x, double y) {
        return std::array<double, 2>{(f(x + h, y) - f(x - h, y)) / (2 * h),
                                     (f(x, y + h) - f(x, y - h)) / (2 * h)};
    };
    out.hess = [f, h](double x, double y) {
        const double fxx = (f(x + h, y) - 2 * f(x, y) + f(x - h, y)) / (h * h);
        const double fyy = (f(x, y + h) - 2 * f(x, y) + f(x, y - h)) / (h * h);
        const double fxy =
            (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h)) /
            (4 * h * h);
        return std::array<double, 3>{fxx, fxy, fyy};
    };
    return out;
}

double mcfs_jacobi_apply(const GraphChart& chart, const ScalarField& field, double x, double y) {
    const GraphPointFields g = graph_fields(chart, x, y);
    const auto df = field.grad(x, y);
    const auto d2f = field.hess(x, y);
    const double F[2][2] = {{d2f[0], d2f[1]}, {d2f[1], d2f[2]}};
    const double U[2][2] = {{g.d2u[0], g.d2u[1]}, {g.d2u[1], g.d2u[2]}};

    double laplace = 0.0, drift = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            laplace += g.ginv[i][j] * F[i][j];
            drift += g.ginv[i][j] * df[i] * g.du[j];
            for (int k = 0; k < 2; ++k)
                for (int p = 0; p < 2; ++p)
                    laplace -= g.ginv[i][j] * g.ginv[k][p] * U[i][j] * g.du[p] * df[k];
        }
    return laplace + g.trace_shape_sq * field.f(x, y) + chart.epsilon * drift;
}

RevolutionCurvatures revolution_curvatures(const ProfileFn& profile, double r) {
    const double v = profile.v(r);
    const double dv = profile.dv(r);
    const double w = std::sqrt(1.0 + v * v);
    return RevolutionCurvatures{-dv / (w * w * w), -v / (r * w), 1.0 / w};
}

double mcfs_residual_radial(const ProfileFn& profile, double epsilon, double r) {
    const RevolutionCurvatures c = revolution_curvatures(profile, r);
    return c.c_r + c.c_theta + epsilon * c.mu;
}

ParametricSurface parametric_fd(std::function<std::array<double, 3>(double, double)> p,
                                double h) {
    ParametricSurface s;
    s.p = p;
    s.dp = [p, h](double x, double y) {
        std::array<std::array<double, 3>, 2> out{};
        const auto px1 = p(x + h, y), px0 = p(x - h, y);
        const auto py1 = p(x, y + h), py0 = p(x, y - h);
        for (int k = 0; k < 3; ++k) {
            out[0][k] = (px1[k] - px0[k]) / (2 * h);
            out[1][k] = (py1[k] - py0[k]) / (2 * h);
        }
        return out;
    };
    s.d2p = [p, h](double x, double y) {
        std::array<std::array<double, 3>, 3> out{};
        const auto c = p(x, y);
        const auto px1 = p(x + h, y), px0 = p(x - h, y);
        const auto py1 = p(x, y + h), py0 = p(x, y - h);
        const auto ppp = p(x + h, y + h), ppm = p(x + h, y - h);
        const auto pmp = p(x - h, y + h), pmm = p(x - h, y - h);
        for (int k = 0; k < 3; ++k) {
            out[0][k] = (px1[k] - 2 * c[k] + px0[k]) / (h * h);
            out[2][k] = (py1[k] - 2 * c[k] + py0[k]) / (h * h);
            out[1][k] = (ppp[k] - ppm[k] - pmp[k] + pmm[k]) / (4 * h * h);
        }
        return out;
    };
    return s;
}

double mcfs_residual_parametric(const ParametricSurface& surface, double epsilon, double x,
                                double y) {
    const auto dp = surface.dp(x, y);
    const auto d2p = surface.d2p(x, y);
    const double E = dp[0][0] * dp[0][0] + dp[0][1] * dp[0][1] + dp[0][2] * dp[0][2];
    const double F = dp[0][0] * dp[1][0] + dp[0][1] * dp[1][1] + dp[0][2] * dp[1][2];
    const double G = dp[1][0] * dp[1][0] + dp[1][1] * dp[1][1] + dp[1][2] * dp[1][2];
    double n[3] = {dp[0][1] * dp[1][2] - dp[0][2] * dp[1][1],
                   dp[0][2] * dp[1][0] - dp[0][0] * dp[1][2],
                   dp[0][0] * dp[1][1] - dp[0][1] * dp[1][0]};
    const double norm = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    for (auto& c : n) c /= norm;
    // Upward orientation.
    const double flip = n[2] < 0 ? -1.0 : 1.0;
    for (auto& c : n) c *= flip;
    auto dot_n = [&](const std::array<double, 3>& v) {
        return v[0] * n[0] + v[1] * n[1] + v[2] * n[2];
    };
    const double L = dot_n(d2p[0]);
    const double M = dot_n(d2p[1]);
    const double N = dot_n(d2p[2]);
    const double det = E * G - F * F;
    // Divergence-form mean curvature with upward normal; the convention used
    // throughout is its negative (convex bowls curve negatively).
    const double h_up = (G * L - 2 * F * M + E * N) / det;
    return -h_up + epsilon * n[2];
}

}  // namespace grimglue
