#include "grimglue/fit.hpp"

#include <cmath>
#include <stdexcept>

namespace grimglue {

SlopeFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n != y.size() || n < 2) throw std::invalid_argument("fit_line: need paired samples");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0) throw std::invalid_argument("fit_line: degenerate abscissae");
    SlopeFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.n = static_cast<int>(n);
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double resid = y[i] - (fit.intercept + fit.slope * x[i]);
        ss += resid * resid;
    }
    fit.width = n > 2 ? std::sqrt(ss / (n - 2) / sxx) : 0.0;
    return fit;
}

SlopeFit decay_exponent(const std::vector<double>& r, const std::vector<double>& f) {
    if (r.size() != f.size()) throw std::invalid_argument("decay_exponent: size mismatch");
    if (r.size() < 8) throw std::invalid_argument("decay_exponent: need >= 8 grid points");
    double rmin = r.front(), rmax = r.front();
    for (double x : r) {
        rmin = std::min(rmin, x);
        rmax = std::max(rmax, x);
    }
    if (rmax < 10.0 * rmin)
        throw std::invalid_argument("decay_exponent: grid must span at least one decade");
    std::vector<double> lx(r.size()), ly(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (!(f[i] > 0)) throw std::invalid_argument("decay_exponent: samples must be positive");
        lx[i] = std::log(r[i]);
        ly[i] = std::log(f[i]);
    }
    return fit_line(lx, ly);
}

}  // namespace grimglue
