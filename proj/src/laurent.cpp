#include "grimglue/laurent.hpp"

#include <cmath>
#include <stdexcept>

namespace grimglue {

LaurentSeries LaurentSeries::monomial(const rational& c, int degree) {
    LaurentSeries s;
    s.set_coeff(degree, c);
    return s;
}

rational LaurentSeries::coeff(int degree) const {
    auto it = coeffs_.find(degree);
    return it == coeffs_.end() ? rational(0) : it->second;
}

void LaurentSeries::set_coeff(int degree, const rational& c) {
    if (c == 0) {
        coeffs_.erase(degree);
    } else {
        coeffs_[degree] = c;
    }
}

int LaurentSeries::order() const {
    if (coeffs_.empty()) return 0;
    return coeffs_.rbegin()->first;
}

LaurentSeries LaurentSeries::operator+(const LaurentSeries& other) const {
    LaurentSeries out = *this;
    for (const auto& [m, c] : other.coeffs_) out.set_coeff(m, out.coeff(m) + c);
    return out;
}

LaurentSeries LaurentSeries::operator-(const LaurentSeries& other) const {
    LaurentSeries out = *this;
    for (const auto& [m, c] : other.coeffs_) out.set_coeff(m, out.coeff(m) - c);
    return out;
}

LaurentSeries LaurentSeries::operator*(const LaurentSeries& other) const {
    LaurentSeries out;
    for (const auto& [m, a] : coeffs_)
        for (const auto& [n, b] : other.coeffs_) out.set_coeff(m + n, out.coeff(m + n) + a * b);
    return out;
}

LaurentSeries LaurentSeries::radial_derivative() const {
    LaurentSeries out;
    for (const auto& [m, c] : coeffs_) out.set_coeff(m, c * m);
    return out;
}

LaurentSeries LaurentSeries::truncate_below(int min_degree) const {
    LaurentSeries out;
    for (const auto& [m, c] : coeffs_)
        if (m >= min_degree) out.set_coeff(m, c);
    return out;
}

double LaurentSeries::eval(double r) const {
    double sum = 0.0;
    for (const auto& [m, c] : coeffs_) sum += to_double(c) * std::pow(r, m);
    return sum;
}

void LaurentSeries::prune() {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (it->second == 0) {
            it = coeffs_.erase(it);
        } else {
            ++it;
        }
    }
}

LaurentSeries apply_G_laurent(const LaurentSeries& v) {
    const LaurentSeries r = LaurentSeries::monomial(1, 1);
    const LaurentSeries one = LaurentSeries::monomial(1, 0);
    return v.radial_derivative() + (v - r) * (one + v * v);
}

LaurentSeries laurent_recurrence(int n) {
    if (n < 0) throw std::invalid_argument("laurent_recurrence: n must be >= 0");
    // v_0 = r; each step cancels the top term of G(v), which sits two degrees
    // above the monomial that cancels it: G(v + a r^m) = G(v) + a r^{m+2} + lower.
    LaurentSeries v = LaurentSeries::monomial(1, 1);
    for (int j = 1; j <= n; ++j) {
        const LaurentSeries g = apply_G_laurent(v);
        const int top = g.order();
        v.set_coeff(top - 2, v.coeff(top - 2) - g.coeff(top));
    }
    return v;
}

LaurentSeries paraboloid_series(int max_degree) {
    // Same cancellation idea at the origin: the lowest term of G(v) at degree
    // d is removed by the monomial a r^d with a = -g_d / (d + 1).
    LaurentSeries v = LaurentSeries::monomial(rational(1, 2), 1);
    for (;;) {
        const LaurentSeries g = apply_G_laurent(v);
        int low = 0;
        bool found = false;
        for (const auto& [m, c] : g.coeffs()) {
            (void)c;
            low = m;
            found = true;
            break;
        }
        if (!found || low > max_degree) break;
        v.set_coeff(low, v.coeff(low) - g.coeff(low) / (low + 1));
    }
    return v;
}

}  // namespace grimglue
