#pragma once

#include "grimglue/rational.hpp"

#include <map>
#include <vector>

namespace grimglue {

// Truncated large-radius expansion sum_m V_m r^m with exact rational
// coefficients. Degrees below `floor_degree` are considered unknown (the
// series is a partial sum); degrees above `order()` are identically zero.
class LaurentSeries {
  public:
    LaurentSeries() = default;

    static LaurentSeries monomial(const rational& c, int degree);

    const std::map<int, rational>& coeffs() const { return coeffs_; }
    rational coeff(int degree) const;
    void set_coeff(int degree, const rational& c);

    // Highest degree with a nonzero coefficient; 0 for the zero series.
    int order() const;
    bool is_zero() const { return coeffs_.empty(); }

    LaurentSeries operator+(const LaurentSeries& other) const;
    LaurentSeries operator-(const LaurentSeries& other) const;
    LaurentSeries operator*(const LaurentSeries& other) const;

    // Formal r d/dr.
    LaurentSeries radial_derivative() const;

    // Drop all degrees below `min_degree`.
    LaurentSeries truncate_below(int min_degree) const;

    double eval(double r) const;

  private:
    std::map<int, rational> coeffs_;
    void prune();
};

// Gv = r v' + (v - r)(1 + v^2), applied formally.
LaurentSeries apply_G_laurent(const LaurentSeries& v);

// n-th partial sum v_n = sum_{m=1-2n}^{1} V_m r^m of the formal solution of
// Gv = 0. The coefficients are derived by repeatedly cancelling the top
// residual term of G(v) rather than by a transcribed index recurrence.
LaurentSeries laurent_recurrence(int n);

// Polynomial start of the entire solution near r = 0: v = r/2 + r^3/32 + ...
// up to the requested odd degree, derived by cancelling the lowest residual
// term of G(v).
LaurentSeries paraboloid_series(int max_degree);

}  // namespace grimglue
