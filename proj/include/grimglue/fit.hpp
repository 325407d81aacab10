#pragma once

#include <vector>

namespace grimglue {

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double width = 0.0;  // standard error of the slope from fit residuals
    int n = 0;
};

// Least-squares line through (x, y).
SlopeFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Log-log decay fit of positive samples against the radii: slope of
// log|f| vs log r. Requires >= 8 points covering at least one decade and
// strictly positive samples.
SlopeFit decay_exponent(const std::vector<double>& r, const std::vector<double>& f);

}  // namespace grimglue
