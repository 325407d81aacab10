#include "grimglue/cutoff.hpp"

#include <cmath>
#include <stdexcept>

namespace grimglue {

namespace {

Jet3 jet_reciprocal(const Jet3& g) {
    const double inv = 1.0 / g.f;
    const double inv2 = inv * inv;
    const double d1 = -g.d1 * inv2;
    const double d2 = (2 * g.d1 * g.d1 * inv - g.d2) * inv2;
    const double d3 = (-6 * g.d1 * g.d1 * g.d1 * inv2 + 6 * g.d1 * g.d2 * inv - g.d3) * inv2;
    return {inv, d1, d2, d3};
}

// h(s) = exp(-1/s) for s > 0, identically 0 otherwise (flat to all orders).
Jet3 bump_half(const Jet3& s) {
    if (s.f <= 0) return Jet3::constant(0);
    return jet_exp(Jet3::constant(0) - jet_reciprocal(s));
}

// Unit template on [1, 2]: chi(t) = h(2 - t) / (h(2 - t) + h(t - 1)).
Jet3 template_jet(double t) {
    if (t <= 1.0) return Jet3::constant(1);
    if (t >= 2.0) return Jet3::constant(0);
    const Jet3 tj = Jet3::variable(t);
    const Jet3 up = bump_half(Jet3::constant(2) - tj);
    const Jet3 down = bump_half(tj - Jet3::constant(1));
    return up / (up + down);
}

}  // namespace

Jet3 Jet3::operator/(const Jet3& o) const { return *this * jet_reciprocal(o); }

Jet3 jet_exp(const Jet3& x) {
    const double e = std::exp(x.f);
    return {e, e * x.d1, e * (x.d2 + x.d1 * x.d1),
            e * (x.d3 + 3 * x.d1 * x.d2 + x.d1 * x.d1 * x.d1)};
}

CutoffFunction::CutoffFunction(double a) : a_(a) {
    if (!(a > 0)) throw std::invalid_argument("CutoffFunction: a must be positive");
}

Jet3 CutoffFunction::jet(double r) const {
    Jet3 j = template_jet(r / a_);
    j.d1 /= a_;
    j.d2 /= a_ * a_;
    j.d3 /= a_ * a_ * a_;
    return j;
}

double CutoffFunction::derivative_sup(int n) const {
    const double t = template_derivative_sup(n);
    return t / std::pow(a_, n);
}

double CutoffFunction::template_derivative_sup(int n) {
    if (n < 1 || n > 3) throw std::invalid_argument("template_derivative_sup: n in {1,2,3}");
    double sup = 0.0;
    for (int i = 0; i <= 4000; ++i) {
        const double t = 1.0 + i / 4000.0;
        const Jet3 j = template_jet(t);
        const double d = n == 1 ? j.d1 : (n == 2 ? j.d2 : j.d3);
        sup = std::max(sup, std::abs(d));
    }
    return sup;
}

}  // namespace grimglue
