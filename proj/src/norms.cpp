#include "grimglue/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace grimglue {

namespace {

constexpr long kPairCap = 200000;

std::vector<double> nonuniform_deriv(const std::vector<double>& x, const std::vector<double>& f) {
    const std::size_t n = x.size();
    if (n < 3) throw std::invalid_argument("nonuniform_deriv: need >= 3 nodes");
    std::vector<double> out(n);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double hm = x[i] - x[i - 1], hp = x[i + 1] - x[i];
        out[i] = (hm * hm * f[i + 1] - hp * hp * f[i - 1] + (hp * hp - hm * hm) * f[i]) /
                 (hm * hp * (hm + hp));
    }
    out[0] = (f[1] - f[0]) / (x[1] - x[0]);
    out[n - 1] = (f[n - 1] - f[n - 2]) / (x[n - 1] - x[n - 2]);
    return out;
}

// Deterministic stride so large pair sets are subsampled reproducibly.
long pair_stride(long total) { return total <= kPairCap ? 1 : total / kPairCap + 1; }

}  // namespace

double ModalField::eval_node(std::size_t i, double theta) const {
    double sum = 0.0;
    for (const auto& [m, values] : modes) sum += values[i] * std::cos(m * theta);
    return sum;
}

double ModalField::eval(double radius, double theta) const {
    auto it = std::upper_bound(r.begin(), r.end(), radius);
    std::size_t i = it == r.begin() ? 0 : static_cast<std::size_t>(it - r.begin()) - 1;
    if (i + 1 >= r.size()) i = r.size() - 2;
    const double t = std::clamp((radius - r[i]) / (r[i + 1] - r[i]), 0.0, 1.0);
    return (1 - t) * eval_node(i, theta) + t * eval_node(i + 1, theta);
}

ModalField ModalField::restricted(double r_lo, double r_hi) const {
    ModalField out;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < r.size(); ++i)
        if (r[i] >= r_lo && r[i] <= r_hi) keep.push_back(i);
    if (keep.size() < 3) throw std::invalid_argument("ModalField: restriction too thin");
    out.r.reserve(keep.size());
    for (auto i : keep) out.r.push_back(r[i]);
    for (const auto& [m, values] : modes) {
        std::vector<double> sub;
        sub.reserve(keep.size());
        for (auto i : keep) sub.push_back(values[i]);
        out.modes[m] = std::move(sub);
    }
    return out;
}

ModalField ModalField::derivative_r() const {
    ModalField out;
    out.r = r;
    for (const auto& [m, values] : modes) out.modes[m] = nonuniform_deriv(r, values);
    return out;
}

double ModalField::sup_abs() const {
    double sup = 0.0;
    const int n_theta = 48;
    for (std::size_t i = 0; i < r.size(); ++i)
        for (int j = 0; j < n_theta; ++j)
            sup = std::max(sup, std::abs(eval_node(i, 2 * M_PI * j / n_theta)));
    return sup;
}

double holder_seminorm(const std::vector<double>& x, const std::vector<double>& f, double alpha) {
    const long n = static_cast<long>(x.size());
    if (n < 2) throw std::invalid_argument("holder_seminorm: need >= 2 samples");
    const long total = n * (n - 1) / 2;
    const long stride = pair_stride(total);
    double sup = 0.0;
    long index = 0;
    for (long i = 0; i < n; ++i) {
        for (long j = i + 1; j < n; ++j) {
            if ((index++ % stride) != 0) continue;
            const double d = std::abs(x[j] - x[i]);
            if (d == 0) continue;
            sup = std::max(sup, std::abs(f[j] - f[i]) / std::pow(d, alpha));
        }
    }
    return sup;
}

double holder_seminorm_annulus(const ModalField& field, double r_lo, double r_hi, double alpha,
                               int n_theta) {
    std::vector<std::size_t> nodes;
    for (std::size_t i = 0; i < field.r.size(); ++i)
        if (field.r[i] >= r_lo && field.r[i] <= r_hi) nodes.push_back(i);
    if (nodes.size() < 2) return 0.0;
    // Decimate the radial direction so pair counts stay bounded.
    const std::size_t max_radial = 40;
    const std::size_t rstride = std::max<std::size_t>(1, nodes.size() / max_radial);
    std::vector<std::array<double, 3>> pts;  // x, y, f
    for (std::size_t k = 0; k < nodes.size(); k += rstride) {
        const std::size_t i = nodes[k];
        for (int j = 0; j < n_theta; ++j) {
            const double theta = 2 * M_PI * j / n_theta;
            pts.push_back({field.r[i] * std::cos(theta), field.r[i] * std::sin(theta),
                           field.eval_node(i, theta)});
        }
    }
    const long total = static_cast<long>(pts.size()) * (static_cast<long>(pts.size()) - 1) / 2;
    const long stride = pair_stride(total);
    double sup = 0.0;
    long index = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            if ((index++ % stride) != 0) continue;
            const double d = std::hypot(pts[j][0] - pts[i][0], pts[j][1] - pts[i][1]);
            if (d == 0) continue;
            sup = std::max(sup, std::abs(pts[j][2] - pts[i][2]) / std::pow(d, alpha));
        }
    }
    return sup;
}

double cyl_fractional_sup(const ModalField& field, double alpha, double delta, double r_lo,
                          double r_hi, int n_theta) {
    double sup = 0.0;
    const std::size_t probes = 12;
    for (std::size_t k = 0; k < probes; ++k) {
        const double rc = r_lo * std::pow(r_hi / r_lo, (k + 0.5) / probes);
        const double lo = std::max(field.r.front(), rc / 2);
        const double hi = std::min(field.r.back(), 2 * rc);
        if (lo >= hi) continue;
        const double semi = holder_seminorm_annulus(field, lo, hi, alpha, n_theta);
        sup = std::max(sup, std::pow(rc, delta) * std::pow(rc, alpha) * semi);
    }
    return sup;
}

namespace {

// sup of r^delta |D_cyl^n f| over the polar grid for n = 0, 1, 2, with
// D_cyl = r D and plane-polar derivative magnitudes.
double cyl_derivative_sup(const ModalField& field, int order, double delta, double r_lo,
                          double r_hi, int n_theta = 32) {
    const ModalField fr = field.derivative_r();
    const ModalField frr = fr.derivative_r();
    double sup = 0.0;
    for (std::size_t i = 0; i < field.r.size(); ++i) {
        const double r = field.r[i];
        if (r < r_lo || r > r_hi) continue;
        for (int j = 0; j < n_theta; ++j) {
            const double theta = 2 * M_PI * j / n_theta;
            double magnitude = 0.0;
            if (order == 0) {
                magnitude = std::abs(field.eval_node(i, theta));
            } else {
                // Angular derivatives term by term: d/dtheta cos -> -m sin.
                double f_r = fr.eval_node(i, theta);
                double f_t = 0.0, f_tt = 0.0, f_rt = 0.0;
                for (const auto& [m, values] : field.modes) {
                    f_t += -m * values[i] * std::sin(m * theta);
                    f_tt += -m * m * values[i] * std::cos(m * theta);
                }
                for (const auto& [m, values] : fr.modes)
                    f_rt += -m * values[i] * std::sin(m * theta);
                if (order == 1) {
                    magnitude = r * std::hypot(f_r, f_t / r);
                } else {
                    const double f_rr = frr.eval_node(i, theta);
                    const double mixed = f_rt / r - f_t / (r * r);
                    const double ang = f_tt / (r * r) + f_r / r;
                    magnitude = r * r *
                                std::sqrt(f_rr * f_rr + 2 * mixed * mixed + ang * ang);
                }
            }
            sup = std::max(sup, std::pow(r, delta) * magnitude);
        }
    }
    return sup;
}

}  // namespace

double cyl_weighted_norm(const ModalField& field, const NormSpec& spec, double r_lo,
                         double r_hi) {
    double norm = 0.0;
    for (int n = 0; n <= spec.m; ++n)
        norm += cyl_derivative_sup(field, n, spec.weight, r_lo, r_hi);
    // Fractional piece of the top derivative; for m = 0 this probes f itself.
    if (spec.m == 0) {
        norm += cyl_fractional_sup(field, spec.alpha, spec.weight, std::max(r_lo, field.r.front()),
                                   std::min(r_hi, field.r.back()));
    } else {
        ModalField top = field;
        for (int n = 0; n < spec.m; ++n) {
            top = top.derivative_r();
            for (auto& [m, values] : top.modes)
                for (std::size_t i = 0; i < values.size(); ++i) values[i] *= top.r[i];
        }
        norm += cyl_fractional_sup(top, spec.alpha, spec.weight, std::max(r_lo, field.r.front()),
                                   std::min(r_hi, field.r.back()));
    }
    return norm;
}

namespace {

ModalField apply_grim_weight(const ModalField& field, const ProfileFn& profile, double gamma) {
    ModalField out = field;
    for (auto& [m, values] : out.modes) {
        (void)m;
        for (std::size_t i = 0; i < values.size(); ++i)
            values[i] *= std::exp(0.5 * (1 + gamma) * profile.u(out.r[i]));
    }
    return out;
}

}  // namespace

double grim_weighted_norm(const ModalField& unit_field, const ProfileFn& unit_profile,
                          const NormSpec& spec, double s_lo, double s_hi) {
    const ModalField weighted = apply_grim_weight(unit_field, unit_profile, spec.weight);
    double norm = 0.0;
    const int n_theta = 32;
    const ModalField ds = weighted.derivative_r();
    for (std::size_t i = 0; i < weighted.r.size(); ++i) {
        const double s = weighted.r[i];
        if (s < s_lo || s > s_hi) continue;
        const double mu = 1.0 / std::sqrt(1.0 + unit_profile.v(s) * unit_profile.v(s));
        for (int j = 0; j < n_theta; ++j) {
            const double theta = 2 * M_PI * j / n_theta;
            double value = std::abs(weighted.eval_node(i, theta));
            if (spec.m >= 1) {
                double f_t = 0.0;
                for (const auto& [m, values] : weighted.modes)
                    f_t += -m * values[i] * std::sin(m * theta);
                // Intrinsic gradient: d/drho = mu d/ds along the profile.
                value += std::hypot(mu * ds.eval_node(i, theta), f_t / s);
            }
            norm = std::max(norm, value);
        }
    }
    // Fractional piece on unit balls (alpha-seminorm with unit distances).
    const ModalField part = weighted.restricted(std::max(s_lo, weighted.r.front()),
                                                std::min(s_hi, weighted.r.back()));
    norm += holder_seminorm_annulus(part, part.r.front(), part.r.back(), spec.alpha);
    return norm;
}

double grim_sobolev_norm(const ModalField& unit_field, const ProfileFn& unit_profile,
                         const NormSpec& spec, double s_lo, double s_hi) {
    const ModalField weighted = apply_grim_weight(unit_field, unit_profile, spec.weight);
    std::vector<ModalField> derivatives{weighted};
    for (int n = 0; n < spec.m; ++n) derivatives.push_back(derivatives.back().derivative_r());
    double total = 0.0;
    for (int n = 0; n <= spec.m; ++n) {
        const ModalField& g = derivatives[n];
        double integral = 0.0;
        for (std::size_t i = 0; i + 1 < g.r.size(); ++i) {
            const double s = g.r[i];
            if (s < s_lo || s > s_hi) continue;
            const double ds = g.r[i + 1] - g.r[i];
            const double v = unit_profile.v(s);
            const double measure = std::sqrt(1 + v * v) * s * ds;
            // Parseval in theta for the cosine series.
            double sq = 0.0;
            for (const auto& [m, values] : g.modes)
                sq += (m == 0 ? 2.0 * M_PI : M_PI) * values[i] * values[i];
            // Angular-derivative contribution for n >= 1.
            if (n >= 1)
                for (const auto& [m, values] : derivatives[n - 1].modes)
                    sq += M_PI * (m * m) * values[i] * values[i] / (s * s);
            integral += sq * measure;
        }
        total += std::sqrt(integral);
    }
    return total;
}

BridgeReport sobolev_first_order_bridge(const ModalField& unit_field,
                                        const ProfileFn& unit_profile, double alpha,
                                        double gamma, double s_lo, double s_hi) {
    BridgeReport rep;
    NormSpec h2{2, alpha, gamma, NormSpec::Kind::grim};
    NormSpec c2{2, alpha, gamma, NormSpec::Kind::grim};
    rep.holder_norm = grim_weighted_norm(unit_field, unit_profile, c2, s_lo, s_hi);
    const double sobolev = grim_sobolev_norm(unit_field, unit_profile, h2, s_lo, s_hi);
    if (rep.holder_norm == 0.0) return rep;
    rep.sobolev_ratio = sobolev / rep.holder_norm;

    const ModalField weighted = apply_grim_weight(unit_field, unit_profile, gamma);
    const ModalField ds = weighted.derivative_r();
    for (std::size_t i = 0; i < ds.r.size(); ++i) {
        const double s = ds.r[i];
        if (s < s_lo || s > s_hi) continue;
        const double mu = 1.0 / std::sqrt(1.0 + unit_profile.v(s) * unit_profile.v(s));
        for (int j = 0; j < 16; ++j) {
            const double theta = 2 * M_PI * j / 16;
            double f_t = 0.0;
            for (const auto& [m, values] : weighted.modes)
                f_t += -m * values[i] * std::sin(m * theta);
            rep.first_deriv_sup = std::max(
                rep.first_deriv_sup, std::hypot(mu * ds.eval_node(i, theta), f_t / s));
        }
    }
    rep.measured_constant =
        rep.first_deriv_sup / (std::pow(rep.sobolev_ratio, 1 - alpha) * rep.holder_norm);
    return rep;
}

}  // namespace grimglue
