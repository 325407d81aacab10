#include "grimglue/xpoly.hpp"

#include <stdexcept>

namespace grimglue {

XPoly::XPoly(std::vector<rational> coeffs) : coeffs_(std::move(coeffs)) { strip(); }

XPoly XPoly::constant(const rational& c) { return XPoly({c}); }

rational XPoly::coeff(std::size_t degree) const {
    return degree < coeffs_.size() ? coeffs_[degree] : rational(0);
}

XPoly XPoly::operator+(const XPoly& other) const {
    std::vector<rational> out(std::max(coeffs_.size(), other.coeffs_.size()), rational(0));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = coeff(i) + other.coeff(i);
    return XPoly(std::move(out));
}

XPoly XPoly::operator-(const XPoly& other) const {
    std::vector<rational> out(std::max(coeffs_.size(), other.coeffs_.size()), rational(0));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = coeff(i) - other.coeff(i);
    return XPoly(std::move(out));
}

XPoly XPoly::operator*(const XPoly& other) const {
    if (is_zero() || other.is_zero()) return XPoly();
    std::vector<rational> out(coeffs_.size() + other.coeffs_.size() - 1, rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < other.coeffs_.size(); ++j)
            out[i + j] += coeffs_[i] * other.coeffs_[j];
    return XPoly(std::move(out));
}

XPoly XPoly::operator*(const rational& c) const {
    std::vector<rational> out = coeffs_;
    for (auto& a : out) a *= c;
    return XPoly(std::move(out));
}

XPoly XPoly::derivative() const {
    if (coeffs_.size() <= 1) return XPoly();
    std::vector<rational> out(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) out[i - 1] = coeffs_[i] * static_cast<int>(i);
    return XPoly(std::move(out));
}

rational XPoly::eval(const rational& x) const {
    rational sum = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) sum = sum * x + *it;
    return sum;
}

double XPoly::eval(double x) const {
    double sum = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) sum = sum * x + to_double(*it);
    return sum;
}

void XPoly::strip() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

XPoly solve_poly_ode(const rational& lambda, const XPoly& rhs,
                     std::optional<rational> init_at_zero) {
    if (lambda == 0) {
        if (!init_at_zero)
            throw std::invalid_argument("solve_poly_ode: lambda = 0 needs an initial value");
        std::vector<rational> out(rhs.coeffs().size() + 1, rational(0));
        out[0] = *init_at_zero;
        for (std::size_t i = 0; i < rhs.coeffs().size(); ++i)
            out[i + 1] = rhs.coeffs()[i] / static_cast<int>(i + 1);
        return XPoly(std::move(out));
    }
    // Back-substitution from the top degree: q_j = (rhs_j - (j+1) q_{j+1}) / lambda.
    const int d = rhs.degree();
    if (d < 0) return XPoly();
    std::vector<rational> q(d + 1, rational(0));
    for (int j = d; j >= 0; --j) {
        rational upper = (j + 1 <= d) ? q[j + 1] * (j + 1) : rational(0);
        q[j] = (rhs.coeff(j) - upper) / lambda;
    }
    return XPoly(std::move(q));
}

}  // namespace grimglue
