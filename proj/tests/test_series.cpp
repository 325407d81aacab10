#include <doctest.h>

#include "grimglue/bivariate.hpp"
#include "grimglue/laurent.hpp"
#include "grimglue/report.hpp"
#include "grimglue/series_csv.hpp"

#include <random>

using namespace grimglue;

namespace {

// Independent oracle for the large-scale coefficients: extend the partial sum
// by an undetermined monomial at (top residual degree - 2) and solve for the
// value that kills the top residual term. The residual coefficient is affine
// in the new monomial coefficient, so two probes determine it.
LaurentSeries extend_by_matching(const LaurentSeries& v) {
    const LaurentSeries g = apply_G_laurent(v);
    const int top = g.order();
    auto residual_at_top = [&](const rational& a) {
        LaurentSeries trial = v;
        trial.set_coeff(top - 2, trial.coeff(top - 2) + a);
        return apply_G_laurent(trial).coeff(top);
    };
    const rational g0 = residual_at_top(0);
    const rational g1 = residual_at_top(1);
    REQUIRE(g1 != g0);
    LaurentSeries out = v;
    out.set_coeff(top - 2, out.coeff(top - 2) - g0 / (g1 - g0));
    return out;
}

}  // namespace

TEST_CASE("laurent recurrence matches the coefficient-matching oracle") {
    LaurentSeries oracle = LaurentSeries::monomial(1, 1);
    for (int n = 1; n <= 5; ++n) {
        oracle = extend_by_matching(oracle);
        CHECK(laurent_recurrence(n).coeffs() == oracle.coeffs());
    }
    // Frozen oracle outputs.
    CHECK(oracle.coeff(-1) == rational(-1));
    CHECK(oracle.coeff(-3) == rational(-2));
    CHECK(oracle.coeff(-5) == rational(-11));
}

TEST_CASE("laurent recurrence basic coefficients and parity") {
    for (int n = 0; n <= 10; ++n) {
        const LaurentSeries v = laurent_recurrence(n);
        CHECK(v.coeff(1) == rational(1));
        if (n >= 1) CHECK(v.coeff(-1) == rational(-1));
        for (const auto& [m, c] : v.coeffs()) {
            CHECK(m % 2 != 0);
            CHECK(c != 0);
            CHECK(m >= 1 - 2 * n);
            CHECK(m <= 1);
        }
    }
}

TEST_CASE("G of the partial sum has order exactly 1 - 2n") {
    for (int n = 0; n <= 10; ++n) {
        const LaurentSeries g = apply_G_laurent(laurent_recurrence(n));
        CHECK(g.order() == 1 - 2 * n);
        CHECK(g.coeff(1 - 2 * n) != 0);
    }
}

TEST_CASE("apply_G_laurent on simple inputs") {
    CHECK(apply_G_laurent(LaurentSeries()).coeffs() ==
          LaurentSeries::monomial(-1, 1).coeffs());
    CHECK(apply_G_laurent(LaurentSeries::monomial(1, 1)).coeffs() ==
          LaurentSeries::monomial(1, 1).coeffs());
}

TEST_CASE("laurent evaluation") {
    CHECK(laurent_recurrence(1).eval(2.0) == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("paraboloid series starts r/2 + r^3/32") {
    const LaurentSeries v = paraboloid_series(9);
    CHECK(v.coeff(1) == rational(1, 2));
    CHECK(v.coeff(3) == rational(1, 32));
    for (const auto& [m, c] : v.coeffs()) {
        (void)c;
        CHECK(m % 2 == 1);
        CHECK(m >= 1);
    }
    // Residual starts above the kept degrees.
    const LaurentSeries g = apply_G_laurent(v);
    for (const auto& [m, c] : g.coeffs()) {
        (void)c;
        CHECK(m > 9);
    }
}

TEST_CASE("solve_poly_ode") {
    // Constant solution.
    CHECK(solve_poly_ode(2, XPoly::constant(1)) == XPoly::constant(rational(1, 2)));
    // Pure integration with pinned value at zero.
    CHECK(solve_poly_ode(0, XPoly::constant(1), rational(0)) == XPoly(std::vector<rational>{0, 1}));
    // Back-substitution case, verified by differentiating.
    const XPoly rhs(std::vector<rational>{0, 1});  // X
    const XPoly q = solve_poly_ode(1, rhs);
    CHECK(q == XPoly(std::vector<rational>{-1, 1}));
    CHECK(q.derivative() + q == rhs);
    CHECK_THROWS(solve_poly_ode(0, XPoly::constant(1)));
}

TEST_CASE("bivariate recurrence: normalization, parity, degree bound") {
    for (int k = 0; k <= 3; ++k) {
        const BivariateSeries v = bivariate_recurrence(k);
        CHECK(v.term(0, 1) == XPoly::constant(1));
        CHECK(v.term(1, 0) == XPoly::constant(rational(1, 2)));
        CHECK(v.term(0, 0).is_zero());
        for (const auto& [idx, poly] : v.terms()) {
            const int total = idx.first + idx.second;
            CHECK(total % 2 == 1);  // even-order terms vanish identically
            CHECK(2 * poly.degree() <= total - 1);  // deg_X <= k at order 2k+1
        }
    }
}

TEST_CASE("G of the bivariate partial sum vanishes through order 2k+1") {
    for (int k = 0; k <= 3; ++k) {
        const BivariateSeries v = bivariate_recurrence(k);
        const BivariateSeries g = apply_G_small(v, 2 * k + 3);
        CHECK(g.vanishes_to_order(2 * k + 1));
        // And not beyond: the first obstruction shows up at order 2k+3.
        CHECK_FALSE(g.vanishes_to_order(2 * k + 3));
    }
}

TEST_CASE("apply_G_small on simple inputs") {
    // V = 0 -> GV = -M.
    BivariateSeries zero(3);
    const BivariateSeries g0 = apply_G_small(zero);
    CHECK(g0.term(1, 0) == XPoly::constant(-1));
    CHECK(g0.terms().size() == 1);
    // V = M: D1 M = 2M, the cubic part drops out, so GV = M.
    BivariateSeries m(3);
    m.set_term(1, 0, XPoly::constant(1));
    const BivariateSeries g1 = apply_G_small(m);
    CHECK(g1.term(1, 0) == XPoly::constant(1));
    CHECK(g1.terms().size() == 1);
}

TEST_CASE("jacobi series: q-weighting and formal residual") {
    for (int k = 0; k <= 3; ++k) {
        const BivariateSeries v = bivariate_recurrence(k);
        const BivariateSeries w = jacobi_series(v);
        CHECK(w.term(0, 1) == XPoly::constant(1));
        for (const auto& [idx, poly] : w.terms()) {
            (void)poly;
            CHECK(idx.second >= 1);  // q = 0 rows are killed
        }
        // D1 W + 3 V^2 W - 2 M V W vanishes through order 2k+1.
        const int check_order = 2 * k + 3;
        BivariateSeries vt(check_order), wt(check_order), two_m(check_order);
        for (const auto& [idx, poly] : v.terms()) vt.set_term(idx.first, idx.second, poly);
        for (const auto& [idx, poly] : w.terms()) wt.set_term(idx.first, idx.second, poly);
        two_m.set_term(1, 0, XPoly::constant(2));
        const BivariateSeries resid =
            wt.apply_D1() + vt * vt * wt * rational(3) - two_m * vt * wt;
        CHECK(resid.vanishes_to_order(2 * k + 1));
    }
}

TEST_CASE("N d/dN commutes with D1 on random truncated series") {
    Rng rng(12345);
    std::uniform_int_distribution<int> coeff(-4, 4);
    for (int trial = 0; trial < 10; ++trial) {
        BivariateSeries v(5);
        for (int p = 0; p <= 5; ++p) {
            for (int q = 0; p + q <= 5; ++q) {
                std::vector<rational> cs;
                for (int d = 0; d <= 2; ++d) cs.emplace_back(coeff(rng));
                v.set_term(p, q, XPoly(cs));
            }
        }
        const BivariateSeries lhs = v.apply_N_dN().apply_D1();
        const BivariateSeries rhs = v.apply_D1().apply_N_dN();
        CHECK((lhs - rhs).vanishes_to_order(5));
    }
}

TEST_CASE("formal evaluation") {
    GrimParameters params;
    params.epsilon = 1e-3;
    params.A = 10.0;
    params.c = 1.0;
    // Single kernel term N at x = 0 evaluates to c/A.
    BivariateSeries n(1);
    n.set_term(0, 1, XPoly::constant(1));
    CHECK(n.eval(0.0, params) == doctest::Approx(0.1).epsilon(1e-15));
    // Order-0 partial sum is M/2 + N.
    const BivariateSeries v0 = bivariate_recurrence(0);
    for (double x : {0.0, 0.7, 2.0}) {
        const double m = params.epsilon * params.A * std::exp(x);
        const double nn = params.c / params.A * std::exp(-x);
        CHECK(v0.eval(x, params) == doctest::Approx(0.5 * m + nn).epsilon(1e-15));
    }
}

TEST_CASE("coefficient CSV tables") {
    const std::string laurent = laurent_csv(laurent_recurrence(3));
    CHECK(laurent.find("# order=1") == 0);
    CHECK(laurent.find("-5,") != std::string::npos);     // V_{-5} row present
    CHECK(laurent.find("\n-2,") == std::string::npos);   // no even-degree rows
    CHECK(laurent.find("\n0,") == std::string::npos);
    const std::string biv = bivariate_csv(bivariate_recurrence(1));
    CHECK(biv.find("# max_total_order=3") == 0);
    CHECK(biv.find("0,1,0,1,1") != std::string::npos);   // V_{0,1} = 1
    CHECK(biv.find("1,0,0,1,2") != std::string::npos);   // V_{1,0} = 1/2
}
