#pragma once

#include "grimglue/params.hpp"
#include "grimglue/xpoly.hpp"

#include <map>
#include <utility>

namespace grimglue {

// Formal sum  V = sum_{p,q >= 0} V_{p,q}(X) M^p N^q  truncated at a total
// order in (M, N). Products truncate eagerly at `max_total_order` so the
// guaranteed-valid order never inflates silently.
class BivariateSeries {
  public:
    using Index = std::pair<int, int>;

    explicit BivariateSeries(int max_total_order = 1) : max_total_order_(max_total_order) {}

    int max_total_order() const { return max_total_order_; }
    const std::map<Index, XPoly>& terms() const { return terms_; }

    XPoly term(int p, int q) const;
    void set_term(int p, int q, const XPoly& poly);

    BivariateSeries operator+(const BivariateSeries& other) const;
    BivariateSeries operator-(const BivariateSeries& other) const;
    BivariateSeries operator*(const BivariateSeries& other) const;
    BivariateSeries operator*(const rational& c) const;

    // (D1 V)_{p,q} = (d/dX + 1 + (p - q)) V_{p,q}.
    BivariateSeries apply_D1() const;

    // N dV/dN: weights each term by q.
    BivariateSeries apply_N_dN() const;

    // True when every term of total order <= order vanishes identically.
    bool vanishes_to_order(int order) const;

    // Substitution M = eps*A*e^x, N = (c/A) e^{-x}, X = x.
    double eval(double x, const GrimParameters& params) const;

    // x-derivative of the substituted function.
    double eval_deriv(double x, const GrimParameters& params) const;

  private:
    int max_total_order_;
    std::map<Index, XPoly> terms_;
};

// GV = D1 V - M + (V - M) V^2, truncated at `truncate_order` (defaults to the
// truncation carried by v).
BivariateSeries apply_G_small(const BivariateSeries& v, int truncate_order = -1);

// Partial sum V_k = sum_{p+q <= 2k+1} V_{p,q} M^p N^q of the formal solution
// of GV = 0 with V_{0,1} = 1 and V_{p,p+1}(0) = 0 for p >= 1.
BivariateSeries bivariate_recurrence(int k);

// W = N dV/dN; solves D1 W + 3 V^2 W - 2 M V W = 0 to the order carried by V.
BivariateSeries jacobi_series(const BivariateSeries& v);

}  // namespace grimglue
