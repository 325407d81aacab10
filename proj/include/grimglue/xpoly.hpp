#pragma once

#include "grimglue/rational.hpp"

#include <optional>
#include <vector>

namespace grimglue {

// Univariate polynomial in X with exact rational coefficients, ascending
// degree, trailing zeros stripped.
class XPoly {
  public:
    XPoly() = default;
    explicit XPoly(std::vector<rational> coeffs);
    static XPoly constant(const rational& c);

    const std::vector<rational>& coeffs() const { return coeffs_; }
    rational coeff(std::size_t degree) const;
    bool is_zero() const { return coeffs_.empty(); }
    // Degree of the zero polynomial is -1.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    XPoly operator+(const XPoly& other) const;
    XPoly operator-(const XPoly& other) const;
    XPoly operator*(const XPoly& other) const;
    XPoly operator*(const rational& c) const;
    bool operator==(const XPoly& other) const { return coeffs_ == other.coeffs_; }

    XPoly derivative() const;
    rational eval(const rational& x) const;
    double eval(double x) const;

  private:
    std::vector<rational> coeffs_;
    void strip();
};

// Unique polynomial solution of Q' + lambda Q = rhs. For lambda = 0 the
// equation only fixes Q up to a constant, so the value at 0 is required.
XPoly solve_poly_ode(const rational& lambda, const XPoly& rhs,
                     std::optional<rational> init_at_zero = std::nullopt);

}  // namespace grimglue
