#pragma once

#include <cmath>

namespace grimglue {

// Parameter block for the small-scale regime. The radial domain is
// [epsilon*A, epsilon*A^4], i.e. x in [0, 3 log A] after r = epsilon*A*e^x.
struct GrimParameters {
    double epsilon = 1e-6;  // soliton speed
    double A = 20.0;        // inner-radius scale
    double c = 1.0;         // logarithmic coefficient
    double Delta = 10.0;    // largeness parameter
    double eta = 0.1;       // exponent offset, in (0,1)
    double Cbound = 2.0;    // bound on |c|

    double x_max() const { return 3.0 * std::log(A); }
    double r_inner() const { return epsilon * A; }
    double r_outer() const { return epsilon * A * A * A * A; }
};

struct AdmissibilityReport {
    bool admissible = false;
    // Slack of each inequality; nonnegative slack means satisfied.
    double upper_slack = 0.0;  // 1/Delta - (eps A^{4+eta} + A^{-(1-eta)})
    double lower_slack = 0.0;  // eps A^{5-eta} - Delta
    double c_slack = 0.0;      // Cbound - |c|
};

inline AdmissibilityReport check_admissible(const GrimParameters& p) {
    AdmissibilityReport rep;
    rep.upper_slack =
        1.0 / p.Delta - (p.epsilon * std::pow(p.A, 4.0 + p.eta) + std::pow(p.A, -(1.0 - p.eta)));
    rep.lower_slack = p.epsilon * std::pow(p.A, 5.0 - p.eta) - p.Delta;
    rep.c_slack = p.Cbound - std::abs(p.c);
    rep.admissible = rep.upper_slack >= 0.0 && rep.lower_slack >= 0.0 && rep.c_slack >= 0.0;
    return rep;
}

}  // namespace grimglue
