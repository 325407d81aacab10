#pragma once

#include "grimglue/bivariate.hpp"
#include "grimglue/laurent.hpp"
#include "grimglue/report.hpp"

namespace grimglue {

// Coefficient table of a Laurent partial sum: degree, numerator, denominator.
// The header comment row records the truncation order.
inline std::string laurent_csv(const LaurentSeries& v) {
    CsvWriter csv({"degree", "numerator", "denominator"});
    for (auto it = v.coeffs().rbegin(); it != v.coeffs().rend(); ++it)
        csv.add_row({std::to_string(it->first), numerator(it->second).str(),
                     denominator(it->second).str()});
    return "# order=" + std::to_string(v.order()) + "\n" + csv.str();
}

inline std::string bivariate_csv(const BivariateSeries& v) {
    CsvWriter csv({"p", "q", "x_degree", "numerator", "denominator"});
    for (const auto& [idx, poly] : v.terms()) {
        for (std::size_t d = 0; d < poly.coeffs().size(); ++d) {
            if (poly.coeffs()[d] == 0) continue;
            csv.add_row({std::to_string(idx.first), std::to_string(idx.second),
                         std::to_string(d), numerator(poly.coeffs()[d]).str(),
                         denominator(poly.coeffs()[d]).str()});
        }
    }
    return "# max_total_order=" + std::to_string(v.max_total_order()) + "\n" + csv.str();
}

}  // namespace grimglue
