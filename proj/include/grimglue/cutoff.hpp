#pragma once

#include <array>

namespace grimglue {

// Value and first three derivatives, with arithmetic for exact chain rules.
struct Jet3 {
    double f = 0, d1 = 0, d2 = 0, d3 = 0;

    static Jet3 variable(double x) { return {x, 1, 0, 0}; }
    static Jet3 constant(double c) { return {c, 0, 0, 0}; }

    Jet3 operator+(const Jet3& o) const { return {f + o.f, d1 + o.d1, d2 + o.d2, d3 + o.d3}; }
    Jet3 operator-(const Jet3& o) const { return {f - o.f, d1 - o.d1, d2 - o.d2, d3 - o.d3}; }
    Jet3 operator*(const Jet3& o) const {
        return {f * o.f, d1 * o.f + f * o.d1, d2 * o.f + 2 * d1 * o.d1 + f * o.d2,
                d3 * o.f + 3 * d2 * o.d1 + 3 * d1 * o.d2 + f * o.d3};
    }
    Jet3 operator/(const Jet3& o) const;
};

Jet3 jet_exp(const Jet3& x);

// Smooth nonincreasing cutoff of the transition region A(a, 2a): value 1 on
// [0, a], 0 on [2a, oo), built from the exp(-1/t) bump; derivatives up to
// order three are analytic through jet arithmetic.
class CutoffFunction {
  public:
    explicit CutoffFunction(double a);

    double a() const { return a_; }
    double operator()(double r) const { return jet(r).f; }
    Jet3 jet(double r) const;

    // sup |d^n/dr^n| over the transition region, n in {1, 2, 3} (sampled).
    double derivative_sup(int n) const;

    // sup of the n-th derivative of the unit template on [1, 2].
    static double template_derivative_sup(int n);

  private:
    double a_;
};

}  // namespace grimglue
