#include "grimglue/grim.hpp"

#include "grimglue/laurent.hpp"
#include "grimglue/ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace grimglue {

namespace {

// r v' + (v - r)(1 + v^2) = 0 and its derivatives, in the radial variable.
long double grim_rhs(long double r, long double v) {
    return -(v - r) * (1.0L + v * v) / r;
}
long double grim_rhs_dr(long double r, long double v) { return v * (1.0L + v * v) / (r * r); }
long double grim_rhs_dv(long double r, long double v) {
    return -((1.0L + v * v) + (v - r) * 2.0L * v) / r;
}

long double eval_laurent_ld(const LaurentSeries& s, long double r) {
    long double sum = 0.0L;
    for (const auto& [m, c] : s.coeffs()) sum += static_cast<long double>(to_double(c)) * powl(r, m);
    return sum;
}

RadialProfile sample_radial(const std::vector<long double>& radii,
                            const std::vector<std::array<long double, 2>>& states, double tol,
                            Provenance provenance) {
    const std::size_t n = radii.size();
    std::vector<double> r(n), u(n), v(n), dv(n), ddv(n);
    for (std::size_t i = 0; i < n; ++i) {
        r[i] = static_cast<double>(radii[i]);
        u[i] = static_cast<double>(states[i][0]);
        v[i] = static_cast<double>(states[i][1]);
        const long double f = grim_rhs(radii[i], states[i][1]);
        dv[i] = static_cast<double>(f);
        ddv[i] = static_cast<double>(grim_rhs_dr(radii[i], states[i][1]) +
                                     grim_rhs_dv(radii[i], states[i][1]) * f);
    }
    return RadialProfile(std::move(r), std::move(u), std::move(v), std::move(dv), std::move(ddv),
                         tol, provenance);
}

}  // namespace

// Cumulative integral of samples on a uniform grid via local quartic fits;
// returns I with I[0] = 0.
std::vector<double> cumulative_integral(const std::vector<double>& x,
                                        const std::vector<double>& z) {
    const std::size_t n = x.size();
    if (n < 5) throw std::invalid_argument("cumulative_quartic: need at least 5 samples");
    const double h = x[1] - x[0];
    // Weights w[o][k]: integral over [o, o+1] of the Lagrange basis on {0..4}.
    static const double w[4][5] = {
        {251.0 / 720, 646.0 / 720, -264.0 / 720, 106.0 / 720, -19.0 / 720},
        {-19.0 / 720, 346.0 / 720, 456.0 / 720, -74.0 / 720, 11.0 / 720},
        {11.0 / 720, -74.0 / 720, 456.0 / 720, 346.0 / 720, -19.0 / 720},
        {-19.0 / 720, 106.0 / 720, -264.0 / 720, 646.0 / 720, 251.0 / 720},
    };
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        std::size_t j0 = (i >= 2) ? i - 2 : 0;
        if (j0 + 4 >= n) j0 = n - 5;
        const std::size_t o = i - j0;
        double panel = 0.0;
        for (std::size_t k = 0; k < 5; ++k) panel += w[o][k] * z[j0 + k];
        out[i + 1] = out[i] + h * panel;
    }
    return out;
}

std::vector<double> SampleSpec::grid(double lo, double hi) const {
    if (!(lo < hi)) throw std::invalid_argument("SampleSpec: empty range");
    std::vector<double> out(n);
    if (spacing == Spacing::logarithmic) {
        if (lo <= 0) throw std::invalid_argument("SampleSpec: log spacing needs lo > 0");
        const double step = std::log(hi / lo) / (n - 1);
        for (int i = 0; i < n; ++i) out[i] = lo * std::exp(step * i);
    } else {
        const double step = (hi - lo) / (n - 1);
        for (int i = 0; i < n; ++i) out[i] = lo + step * i;
    }
    out.front() = lo;
    out.back() = hi;
    return out;
}

RadialProfile integrate_profile(double v0, double r0, double range_lo, double range_hi,
                                double tol, const SampleSpec& spec) {
    if (!(range_lo > 0) || !(range_lo < range_hi))
        throw std::invalid_argument("integrate_profile: bad range");
    if (r0 < range_lo || r0 > range_hi)
        throw std::invalid_argument("integrate_profile: r0 outside range");

    AdaptiveOde<2> ode(
        [](const std::array<long double, 2>& s, std::array<long double, 2>& ds, long double r) {
            ds[0] = s[1];
            ds[1] = grim_rhs(r, s[1]);
        },
        tol, tol);

    const std::vector<double> grid = spec.grid(range_lo, range_hi);
    std::vector<long double> radii(grid.begin(), grid.end());
    const auto split =
        std::distance(radii.begin(), std::upper_bound(radii.begin(), radii.end(), r0));

    std::vector<std::array<long double, 2>> states(radii.size());
    // Downward sweep from r0 to the grid points at or below it.
    {
        std::array<long double, 2> s{0.0L, static_cast<long double>(v0)};
        long double t = r0;
        for (auto i = split; i-- > 0;) {
            ode.advance(s, t, radii[i]);
            t = radii[i];
            states[i] = s;
        }
    }
    // Upward sweep.
    {
        std::array<long double, 2> s{0.0L, static_cast<long double>(v0)};
        long double t = r0;
        for (auto i = split; i < static_cast<std::ptrdiff_t>(radii.size()); ++i) {
            ode.advance(s, t, radii[i]);
            t = radii[i];
            states[i] = s;
        }
    }
    // Primitive pinned to 0 at the inner edge.
    const long double u_lo = states.front()[0];
    for (auto& s : states) s[0] -= u_lo;
    return sample_radial(radii, states, tol, Provenance::grim_large_scale);
}

RadialProfile paraboloid_profile(double range_lo, double range_hi, double tol,
                                 const SampleSpec& spec) {
    if (!(range_lo > 0) || !(range_lo < range_hi))
        throw std::invalid_argument("paraboloid_profile: bad range");
    const LaurentSeries series = paraboloid_series(9);
    // Exact primitive of the polynomial start.
    LaurentSeries u_series;
    for (const auto& [m, c] : series.coeffs()) u_series.set_coeff(m + 1, c / (m + 1));

    const double r_switch = 1e-2;
    AdaptiveOde<2> ode(
        [](const std::array<long double, 2>& s, std::array<long double, 2>& ds, long double r) {
            ds[0] = s[1];
            ds[1] = grim_rhs(r, s[1]);
        },
        tol, tol);

    const std::vector<double> grid = spec.grid(range_lo, range_hi);
    std::vector<long double> radii(grid.begin(), grid.end());
    std::vector<std::array<long double, 2>> states(radii.size());

    std::array<long double, 2> s{eval_laurent_ld(u_series, r_switch),
                                 eval_laurent_ld(series, r_switch)};
    long double t = r_switch;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (radii[i] <= r_switch) {
            states[i] = {eval_laurent_ld(u_series, radii[i]), eval_laurent_ld(series, radii[i])};
        } else {
            ode.advance(s, t, radii[i]);
            t = radii[i];
            states[i] = s;
        }
    }
    return sample_radial(radii, states, tol, Provenance::paraboloid);
}

std::vector<double> large_scale_deviation(int n, const std::vector<double>& radii, double tol) {
    if (radii.size() < 2 || !std::is_sorted(radii.begin(), radii.end()))
        throw std::invalid_argument("large_scale_deviation: radii must increase");
    const LaurentSeries vn = laurent_recurrence(n);
    const LaurentSeries seed = laurent_recurrence(8);

    // Entering the attracting solution: any nearby value contracts onto it at
    // rate exp(-r^2/2), so a short approach run upstream of the first
    // measurement radius removes the seeding error.
    const long double r_pre = std::max(1.0, radii.front() * 0.7);
    AdaptiveOde<1> ode(
        [](const std::array<long double, 1>& s, std::array<long double, 1>& ds, long double r) {
            ds[0] = grim_rhs(r, s[0]);
        },
        tol * 1e-2, tol * 1e-2);

    std::array<long double, 1> s{eval_laurent_ld(seed, r_pre)};
    long double t = r_pre;
    std::vector<double> out;
    out.reserve(radii.size());
    for (const double r : radii) {
        ode.advance(s, t, r);
        t = r;
        out.push_back(static_cast<double>(fabsl(eval_laurent_ld(vn, r) - s[0])));
    }
    return out;
}

double SmallScaleSolution::v_at(double xq) const {
    const auto it = std::upper_bound(x.begin(), x.end(), xq);
    std::size_t i = it == x.begin() ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
    if (i + 1 >= x.size()) i = x.size() - 2;
    const double h = x[i + 1] - x[i];
    const double t = (xq - x[i]) / h;
    const double m0 = params.epsilon * params.A * std::exp(x[i]);
    const double m1 = params.epsilon * params.A * std::exp(x[i + 1]);
    const double d0 = -v[i] - v[i] * v[i] * v[i] + m0 * (1 + v[i] * v[i]);
    const double d1 = -v[i + 1] - v[i + 1] * v[i + 1] * v[i + 1] + m1 * (1 + v[i + 1] * v[i + 1]);
    const double t2 = t * t, t3 = t2 * t;
    return (1 - 3 * t2 + 2 * t3) * v[i] + (t - 2 * t2 + t3) * h * d0 +
           (3 * t2 - 2 * t3) * v[i + 1] + (t3 - t2) * h * d1;
}

double SmallScaleSolution::w_at(double xq) const {
    const auto it = std::upper_bound(x.begin(), x.end(), xq);
    std::size_t i = it == x.begin() ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
    if (i + 1 >= x.size()) i = x.size() - 2;
    const double t = (xq - x[i]) / (x[i + 1] - x[i]);
    return (1 - t) * w[i] + t * w[i + 1];
}

RadialProfile SmallScaleSolution::to_profile() const {
    const std::size_t n = x.size();
    std::vector<double> r(n), u(n), vv(n), dv(n), ddv(n), zu(n);
    for (std::size_t i = 0; i < n; ++i) {
        r[i] = params.epsilon * params.A * std::exp(x[i]);
        vv[i] = v[i];
        const double m = r[i];
        const double fx = m * (1 + v[i] * v[i]);
        const double fv = -1 - 3 * v[i] * v[i] + 2 * m * v[i];
        const double vx = -v[i] - v[i] * v[i] * v[i] + m * (1 + v[i] * v[i]);
        const double vxx = fx + fv * vx;
        dv[i] = vx / r[i];
        ddv[i] = (vxx - vx) / (r[i] * r[i]);
        zu[i] = v[i] * r[i];  // du/dx
    }
    u = cumulative_integral(x, zu);
    return RadialProfile(std::move(r), std::move(u), std::move(vv), std::move(dv),
                         std::move(ddv), tol, Provenance::grim_small_scale);
}

SmallScaleSolution exact_small_scale(int k, const GrimParameters& params, double tol,
                                     bool relaxed, int n_samples, double x_max_override) {
    const auto adm = check_admissible(params);
    if (!adm.admissible && !relaxed)
        throw std::invalid_argument("exact_small_scale: parameters not admissible");

    const BivariateSeries vk = bivariate_recurrence(k);
    const BivariateSeries wk = jacobi_series(vk);
    const double v0 = vk.eval(0.0, params);
    const double w0 = wk.eval(0.0, params);

    const double x_max = x_max_override > 0 ? x_max_override : params.x_max();
    const double eps_a = params.epsilon * params.A;
    AdaptiveOde<2> ode(
        [eps_a](const std::array<long double, 2>& s, std::array<long double, 2>& ds,
                long double x) {
            const long double m = eps_a * expl(x);
            const long double v = s[0];
            ds[0] = -v - v * v * v + m * (1.0L + v * v);
            ds[1] = -s[1] * (1.0L + 3.0L * v * v - 2.0L * m * v);
        },
        tol, tol);

    std::vector<long double> xs(n_samples);
    for (int i = 0; i < n_samples; ++i) xs[i] = x_max * i / (n_samples - 1);
    const auto states = ode.sample({v0, w0}, xs);

    SmallScaleSolution sol;
    sol.params = params;
    sol.k = k;
    sol.tol = tol;
    sol.x.resize(n_samples);
    sol.v.resize(n_samples);
    sol.w.resize(n_samples);
    for (int i = 0; i < n_samples; ++i) {
        sol.x[i] = static_cast<double>(xs[i]);
        sol.v[i] = static_cast<double>(states[i][0]);
        sol.w[i] = static_cast<double>(states[i][1]);
    }
    return sol;
}

SmallScaleSolution jacobi_field_small_scale(int k, const GrimParameters& params, double tol,
                                            bool relaxed, int n_samples) {
    return exact_small_scale(k, params, tol, relaxed, n_samples);
}

std::vector<double> d1_inverse(const std::vector<double>& x, const std::vector<double>& g) {
    std::vector<double> z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = std::exp(x[i]) * g[i];
    std::vector<double> integral = cumulative_integral(x, z);
    for (std::size_t i = 0; i < x.size(); ++i) integral[i] *= std::exp(-x[i]);
    return integral;
}

ContractionResult contraction_solve(int k, const GrimParameters& params, double T, double tol,
                                    bool relaxed, int n_samples) {
    const auto adm = check_admissible(params);
    if (!adm.admissible && !relaxed)
        throw std::invalid_argument("contraction_solve: parameters not admissible");
    if (!(T > 0) || T > params.x_max() + 1e-12)
        throw std::invalid_argument("contraction_solve: T outside [0, 3 log A]");

    std::vector<double> x(n_samples);
    for (int i = 0; i < n_samples; ++i) x[i] = T * i / (n_samples - 1);

    const BivariateSeries series = bivariate_recurrence(k);
    std::vector<double> vk(n_samples), dvk(n_samples), m(n_samples);
    for (int i = 0; i < n_samples; ++i) {
        vk[i] = series.eval(x[i], params);
        dvk[i] = series.eval_deriv(x[i], params);
        m[i] = params.epsilon * params.A * std::exp(x[i]);
    }

    // H(w) = (v_k + w)' + (v_k + w) - M + (v_k + w - M)(v_k + w)^2.
    auto apply_H = [&](const std::vector<double>& w, const std::vector<double>& dw) {
        std::vector<double> h(n_samples);
        for (int i = 0; i < n_samples; ++i) {
            const double v = vk[i] + w[i];
            h[i] = dvk[i] + dw[i] + v - m[i] + (v - m[i]) * v * v;
        }
        return h;
    };

    std::vector<double> w(n_samples, 0.0), dw(n_samples, 0.0);
    ContractionResult result;
    const int max_iter = 200;
    for (int iter = 1; iter <= max_iter; ++iter) {
        const std::vector<double> h = apply_H(w, dw);
        const std::vector<double> d1h = d1_inverse(x, h);
        // Phi(w) = w - D1^{-1} H(w);  (D1^{-1} g)' = g - D1^{-1} g.
        double increment = 0.0;
        for (int i = 0; i < n_samples; ++i) {
            const double delta_d = h[i] - d1h[i];
            increment = std::max(increment, std::abs(delta_d));
            w[i] -= d1h[i];
            dw[i] -= delta_d;
        }
        result.increment_norms.push_back(increment);
        result.iterations = iter;
        if (iter == 1) result.first_increment_norm = increment;
        if (iter >= 2) {
            const double prev = result.increment_norms[iter - 2];
            if (prev > 0) {
                const double ratio = increment / prev;
                result.contraction_factor = std::max(result.contraction_factor, ratio);
                if (ratio >= 1.0 && increment > tol)
                    throw std::runtime_error(
                        "contraction_solve: measured Lipschitz ratio >= 1 (ratio = " +
                        std::to_string(ratio) + ")");
            }
        }
        if (increment < tol) break;
    }

    SmallScaleSolution sol;
    sol.params = params;
    sol.k = k;
    sol.tol = tol;
    sol.x = x;
    sol.v.resize(n_samples);
    sol.w.assign(n_samples, 0.0);
    for (int i = 0; i < n_samples; ++i) sol.v[i] = vk[i] + w[i];
    result.solution = std::move(sol);
    return result;
}

}  // namespace grimglue
